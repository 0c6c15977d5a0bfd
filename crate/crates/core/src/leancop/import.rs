//! Expansion sequents from connection proofs.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::dnf::{definitional_dnf, GeneratedClause, DEFAULT_DEF_THRESHOLD};
use super::matching::{match_clauses, match_equality_clause, ClauseMatch, Unmatched};
use super::skolem::{SkolemError, SkolemRegistry, DEFAULT_SKOLEM_PREFIX};
use super::trace::{ClauseOrigin, LeanCoPTrace, Role, TraceClause};
use crate::expansion::{
    expand_sequent_with, ExpandError, ExpandOptions, ExpansionSequent, InstanceSet,
};
use crate::logic::{rectify, Literal, Sequent, SequentPos, Side, Substitution, Term};
use crate::verit::{equality::EqualityInstances, AxiomMatch, SchemaError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeanCoPOptions {
    pub skolem_prefix: String,
    /// Largest clause-count product distributed without a definition.
    pub def_threshold: usize,
}

impl Default for LeanCoPOptions {
    fn default() -> Self {
        LeanCoPOptions {
            skolem_prefix: DEFAULT_SKOLEM_PREFIX.to_string(),
            def_threshold: DEFAULT_DEF_THRESHOLD,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnmatchedClause {
    pub clause: String,
    /// Closest generated clauses, as text.
    pub nearest: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeanCoPReport {
    pub matched_clauses: usize,
    pub unmatched: Vec<UnmatchedClause>,
    pub instances_per_formula: BTreeMap<String, usize>,
    pub skolem_map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LeanCoPError {
    #[error("the trace has no input formulas")]
    NoInputs,
    #[error("clause {clause}: {source}")]
    Skolem {
        clause: String,
        #[source]
        source: SkolemError,
    },
    #[error("step `{step}` uses clause {clause}, which matches no generated clause; nearest: {}", nearest.join("; "))]
    Unmatched {
        step: String,
        clause: String,
        nearest: Vec<String>,
    },
    #[error("step `{step}` uses equality clause {clause}: {source}")]
    Equality {
        step: String,
        clause: String,
        #[source]
        source: SchemaError,
    },
    #[error("step `{step}` binds `{var}`, which does not occur in clause {clause}")]
    BindingDomain {
        step: String,
        var: String,
        clause: String,
    },
    #[error(transparent)]
    Expand(#[from] ExpandError),
}

fn show(lits: &[Literal]) -> String {
    let parts: Vec<String> = lits.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// The part of an import before instances are collected: the rectified
/// sequent, the generated clauses, the trace clauses with Skolem terms
/// collapsed, and the matches between them.
#[derive(Clone, Debug)]
pub struct MatchedTrace {
    /// `axioms ⊢ conjectures`, rectified.
    pub sequent: Sequent,
    /// Sequent position of each input formula, by name.
    pub positions: BTreeMap<String, SequentPos>,
    pub generated: Vec<GeneratedClause>,
    /// Trace clauses in trace order, Skolem terms replaced by eigenvariables.
    pub collapsed: Vec<TraceClause>,
    pub matches: Vec<ClauseMatch>,
    pub unmatched: Vec<Unmatched>,
    pub registry: SkolemRegistry,
}

impl MatchedTrace {
    fn collapsed(&self, number: &str) -> &TraceClause {
        self.collapsed
            .iter()
            .find(|c| c.number == number)
            .expect("matched clause exists")
    }

    /// Whether every match reproduces its trace clause.
    pub fn verify(&self) -> bool {
        self.matches.iter().all(|m| {
            m.verify(
                &self.generated[m.generated].literals,
                &self.collapsed(&m.trace_clause).literals,
            )
        })
    }
}

pub fn match_trace(
    trace: &LeanCoPTrace,
    options: &LeanCoPOptions,
) -> Result<MatchedTrace, LeanCoPError> {
    if trace.inputs.is_empty() {
        return Err(LeanCoPError::NoInputs);
    }
    let mut positions = BTreeMap::new();
    let (mut ant, mut suc) = (Vec::new(), Vec::new());
    for input in &trace.inputs {
        let (side, list) = match input.role {
            Role::Axiom => (Side::Antecedent, &mut ant),
            Role::Conjecture => (Side::Succedent, &mut suc),
        };
        positions.insert(
            input.name.clone(),
            SequentPos {
                side,
                index: list.len(),
            },
        );
        list.push(input.formula.clone());
    }
    let (sequent, _) = rectify(&Sequent::new(ant, suc));
    let generated = definitional_dnf(
        trace
            .inputs
            .iter()
            .map(|i| (i.name.as_str(), i.role, &sequent[positions[&i.name]])),
        options.def_threshold,
    );

    let mut registry = SkolemRegistry::new(options.skolem_prefix.clone());
    let mut collapsed = Vec::with_capacity(trace.clauses.len());
    for c in &trace.clauses {
        let literals = c
            .literals
            .iter()
            .map(|l| registry.literal_to_eigen(l))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|source| LeanCoPError::Skolem {
                clause: c.number.clone(),
                source,
            })?;
        collapsed.push(TraceClause {
            literals,
            ..c.clone()
        });
    }
    let (matches, unmatched) = match_clauses(&generated, &collapsed);
    Ok(MatchedTrace {
        sequent,
        positions,
        generated,
        collapsed,
        matches,
        unmatched,
        registry,
    })
}

/// Builds the expansion sequent `axioms ⊢ conjectures` of the original,
/// unskolemized problem from the instances the proof steps use.
pub fn import_leancop(
    trace: &LeanCoPTrace,
    options: &LeanCoPOptions,
) -> Result<(ExpansionSequent, LeanCoPReport), LeanCoPError> {
    let MatchedTrace {
        sequent,
        positions,
        generated,
        collapsed,
        matches,
        unmatched,
        mut registry,
    } = match_trace(trace, options)?;
    let mut by_clause: BTreeMap<&str, &ClauseMatch> = BTreeMap::new();
    for m in &matches {
        let tc = collapsed
            .iter()
            .find(|c| c.number == m.trace_clause)
            .expect("matched clause exists");
        assert!(
            m.verify(&generated[m.generated].literals, &tc.literals),
            "clause {} does not verify against its match",
            m.trace_clause
        );
        by_clause.insert(&m.trace_clause, m);
    }
    let unmatched: Vec<UnmatchedClause> = unmatched
        .into_iter()
        .map(|u| UnmatchedClause {
            clause: u.trace_clause,
            nearest: u
                .nearest
                .into_iter()
                .map(|(g, d)| {
                    format!(
                        "{} from {} (distance {d})",
                        show(&generated[g].literals),
                        generated[g].source
                    )
                })
                .collect(),
        })
        .collect();

    let mut instances = InstanceSet::new();
    let mut equality = EqualityInstances::default();
    let mut eq_matches: BTreeMap<&str, AxiomMatch> = BTreeMap::new();
    for step in &trace.steps {
        let Some(number) = &step.clause else { continue };
        let index = trace
            .clauses
            .iter()
            .position(|c| &c.number == number)
            .expect("parser checks clause references");
        let (original, tc) = (&trace.clauses[index], &collapsed[index]);
        let clause_vars: BTreeSet<String> =
            original.literals.iter().flat_map(Literal::vars).collect();
        if let Some(var) = step.binding.domain().find(|v| !clause_vars.contains(*v)) {
            return Err(LeanCoPError::BindingDomain {
                step: step.id.clone(),
                var: var.clone(),
                clause: number.clone(),
            });
        }
        let mut compose = |t: &Term| registry.collapse_lenient(&step.binding.apply_term(t));
        match &tc.origin {
            ClauseOrigin::Input(_) => {
                let Some(m) = by_clause.get(number.as_str()) else {
                    return Err(LeanCoPError::Unmatched {
                        step: step.id.clone(),
                        clause: number.clone(),
                        nearest: unmatched
                            .iter()
                            .find(|u| &u.clause == number)
                            .map(|u| u.nearest.clone())
                            .unwrap_or_default(),
                    });
                };
                let g = &generated[m.generated];
                let vars: BTreeSet<String> = g.literals.iter().flat_map(Literal::vars).collect();
                let sigma: Substitution = vars
                    .into_iter()
                    .map(|v| {
                        let t = compose(&m.matcher.apply_term(&Term::var(v.clone())));
                        (v, t)
                    })
                    .collect();
                let pos = positions[&g.source];
                let bound = sequent[pos].bound_vars();
                let sigma = sigma.restrict(&bound);
                if !sigma.is_empty() {
                    instances.insert(pos, sigma);
                }
            }
            ClauseOrigin::Equality => {
                let m = match eq_matches.get(number.as_str()) {
                    Some(m) => m,
                    None => {
                        let m = match_equality_clause(&tc.literals).map_err(|source| {
                            LeanCoPError::Equality {
                                step: step.id.clone(),
                                clause: number.clone(),
                                source,
                            }
                        })?;
                        let negated: Vec<Literal> =
                            tc.literals.iter().map(Literal::negated).collect();
                        assert!(
                            m.verify(&negated),
                            "equality clause {number} does not verify"
                        );
                        eq_matches.entry(number.as_str()).or_insert(m)
                    }
                };
                let sigma = m
                    .schema
                    .vars
                    .iter()
                    .map(|v| {
                        (
                            v.clone(),
                            compose(&m.sigma.apply_term(&Term::var(v.clone()))),
                        )
                    })
                    .collect();
                equality.record(&AxiomMatch { sigma, ..m.clone() });
            }
        }
    }

    let mut report = LeanCoPReport {
        matched_clauses: matches.len(),
        unmatched,
        ..LeanCoPReport::default()
    };
    for input in &trace.inputs {
        let pos = positions[&input.name];
        report
            .instances_per_formula
            .insert(input.name.clone(), instances.count(pos));
    }

    let mut sequent = sequent;
    let mut avoid: BTreeSet<String> = sequent
        .iter()
        .flat_map(|(_, f)| f.all_var_names())
        .collect();
    for (_, sigmas) in instances.iter() {
        for s in sigmas {
            avoid.extend(s.range_vars());
        }
    }
    for (kind, formula, sigmas) in equality.into_trees(&mut avoid) {
        report
            .instances_per_formula
            .insert(kind.to_string(), sigmas.len());
        let pos = SequentPos {
            side: Side::Antecedent,
            index: sequent.antecedent.len(),
        };
        sequent.antecedent.push(formula);
        for s in sigmas {
            instances.insert(pos, s);
        }
    }
    report.skolem_map = registry.map();
    let es = expand_sequent_with(&sequent, &instances, ExpandOptions { fill_missing: true })?;
    assert_eq!(
        es.shallow(),
        sequent,
        "shallow sequent differs from the imported formulas"
    );
    Ok((es, report))
}
