use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::equality::EqualityInstances;
use super::schema::{is_reflexive_eq, match_axiom_instance, show_clause, AxiomKind, SchemaError};
use super::trace::{Rule, VeritTrace};
use crate::expansion::{expand_sequent, ExpandError, ExpansionSequent, InstanceSet};
use crate::logic::{clause_disjunction, Literal, Sequent, SequentPos, Side};

/// Leaf steps of a trace, split by origin.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeafClauses {
    /// `(step id, clause)` for `input` steps.
    pub inputs: Vec<(String, Vec<Literal>)>,
    /// `(step id, kind, clause)` for equality-axiom steps.
    pub axioms: Vec<(String, AxiomKind, Vec<Literal>)>,
    /// `(step id, rule)` for premise-free steps with an unknown rule.
    pub unknown: Vec<(String, String)>,
}

/// Splits the premise-free steps by rule. Inner steps are skipped.
pub fn leaf_clauses(trace: &VeritTrace) -> LeafClauses {
    let mut out = LeafClauses::default();
    for s in &trace.steps {
        let kind = match &s.rule {
            Rule::Input => {
                out.inputs.push((s.id.clone(), s.conclusion.clone()));
                continue;
            }
            Rule::EqTransitive => AxiomKind::Transitivity,
            Rule::EqCongruent => AxiomKind::FnCongruence,
            Rule::EqCongruentPred => AxiomKind::PredCongruence,
            Rule::EqReflexive => AxiomKind::Reflexivity,
            Rule::Resolution => continue,
            Rule::Other(name) => {
                if s.premises.is_empty() {
                    out.unknown.push((s.id.clone(), name.clone()));
                }
                continue;
            }
        };
        out.axioms.push((s.id.clone(), kind, s.conclusion.clone()));
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VeritReport {
    /// Distinct instances per schema, keyed by the schema's name.
    pub schema_instances: BTreeMap<String, usize>,
    /// Equations matched with their sides swapped.
    pub flips: usize,
    pub reflexivity_terms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VeritImportError {
    #[error("the trace has no steps")]
    EmptyTrace,
    #[error("step `{id}`: unknown leaf rule `{rule}`")]
    UnknownLeafRule { id: String, rule: String },
    #[error("step `{id}`: input clause is empty")]
    EmptyInput { id: String },
    #[error("step `{id}`: {source}")]
    Axiom {
        id: String,
        #[source]
        source: SchemaError,
    },
    #[error("step `{id}`: matched substitution does not reproduce {clause}")]
    Verification { id: String, clause: String },
    #[error(transparent)]
    Expand(#[from] ExpandError),
}

/// Builds the expansion sequent of a refutation: input clauses, one tree per
/// equality schema with every instance found, a symmetry tree for swapped
/// equations and a reflexivity tree, all on the left; the right side is
/// empty.
pub fn import_verit(
    trace: &VeritTrace,
) -> Result<(ExpansionSequent, VeritReport), VeritImportError> {
    if trace.steps.is_empty() {
        return Err(VeritImportError::EmptyTrace);
    }
    let leaves = leaf_clauses(trace);
    if let Some((id, rule)) = leaves.unknown.first() {
        return Err(VeritImportError::UnknownLeafRule {
            id: id.clone(),
            rule: rule.clone(),
        });
    }
    let mut antecedent = Vec::new();
    for (id, clause) in &leaves.inputs {
        antecedent.push(
            clause_disjunction(clause)
                .ok_or_else(|| VeritImportError::EmptyInput { id: id.clone() })?,
        );
    }
    let mut found = EqualityInstances::default();
    for (id, kind, clause) in &leaves.axioms {
        let m = match_axiom_instance(*kind, clause).map_err(|source| VeritImportError::Axiom {
            id: id.clone(),
            source,
        })?;
        if !m.verify(clause) {
            return Err(VeritImportError::Verification {
                id: id.clone(),
                clause: show_clause(clause),
            });
        }
        found.record(&m);
    }

    // Reflexive equations t = t anywhere in the leaves, and every argument
    // term of every leaf atom once reflexivity is used explicitly.
    let uses_reflexivity = leaves
        .axioms
        .iter()
        .any(|(_, k, _)| *k == AxiomKind::Reflexivity);
    let leaf_lits = leaves
        .inputs
        .iter()
        .map(|(_, c)| c)
        .chain(leaves.axioms.iter().map(|(_, _, c)| c))
        .flatten();
    for l in leaf_lits {
        if is_reflexive_eq(&l.atom) {
            found.reflexive.insert(l.atom.args[0].clone());
        }
        if uses_reflexivity {
            found.reflexive.extend(l.atom.args.iter().cloned());
        }
    }

    let mut report = VeritReport {
        flips: found.flips,
        reflexivity_terms: found.reflexive.iter().map(ToString::to_string).collect(),
        ..VeritReport::default()
    };
    let mut instances = InstanceSet::new();
    for (kind, formula, sigmas) in found.into_trees(&mut BTreeSet::new()) {
        report
            .schema_instances
            .insert(kind.to_string(), sigmas.len());
        let pos = SequentPos {
            side: Side::Antecedent,
            index: antecedent.len(),
        };
        antecedent.push(formula);
        for sigma in sigmas {
            instances.insert(pos, sigma);
        }
    }
    let sequent = Sequent::new(antecedent, vec![]);
    let es = expand_sequent(&sequent, &instances)?;
    assert_eq!(
        es.shallow(),
        sequent,
        "shallow sequent differs from the imported formulas"
    );
    Ok((es, report))
}
