//! Equality-axiom instances collected during an import, and their trees.

use std::collections::{BTreeMap, BTreeSet};

use super::schema::{make_schema, AxiomMatch, SchemaKind};
use crate::logic::{fresh_name, Formula, Substitution, Term};

#[derive(Debug, Default)]
pub(crate) struct EqualityInstances {
    groups: BTreeMap<SchemaKind, BTreeSet<Substitution>>,
    pub reflexive: BTreeSet<Term>,
    pub flips: usize,
}

impl EqualityInstances {
    fn add(&mut self, kind: SchemaKind, sigma: Substitution) {
        self.groups.entry(kind).or_default().insert(sigma);
    }

    /// Adds a verified match. Each swapped equation brings in a symmetry
    /// instance turning the orientation the clause supplies into the one the
    /// schema instance needs (the reverse for the conclusion); omitted
    /// reflexive premises and reflexivity matches go to the reflexive terms.
    pub fn record(&mut self, m: &AxiomMatch) {
        for (i, &flip) in m.flipped.iter().enumerate() {
            if !flip {
                continue;
            }
            let schema_lit = &m.schema.clause[i];
            let l = m.sigma.apply_term(&schema_lit.atom.args[0]);
            let r = m.sigma.apply_term(&schema_lit.atom.args[1]);
            // Negative schema literals are premises of the instance.
            let (x, y) = if schema_lit.positive { (l, r) } else { (r, l) };
            self.add(SchemaKind::Symmetry, [("X", x), ("Y", y)].into());
            self.flips += 1;
        }
        self.reflexive.extend(m.implicit_reflexive());
        if m.schema.kind == SchemaKind::Reflexivity {
            self.reflexive.extend(m.sigma.get("X").cloned());
        } else {
            self.add(m.schema.kind.clone(), m.sigma.clone());
        }
    }

    /// Schema formulas with their instances, variables renamed away from
    /// `avoid`. Reflexive terms become instances of the reflexivity schema.
    pub fn into_trees(
        mut self,
        avoid: &mut BTreeSet<String>,
    ) -> Vec<(SchemaKind, Formula, BTreeSet<Substitution>)> {
        for t in std::mem::take(&mut self.reflexive) {
            self.add(SchemaKind::Reflexivity, [("X", t)].into());
        }
        self.groups
            .into_iter()
            .map(|(kind, sigmas)| {
                let schema = make_schema(kind.clone()).expect("schema size checked when matching");
                let rename: BTreeMap<String, String> = schema
                    .vars
                    .iter()
                    .map(|v| {
                        let new = if avoid.contains(v) {
                            fresh_name(v, avoid)
                        } else {
                            v.clone()
                        };
                        avoid.insert(new.clone());
                        (v.clone(), new)
                    })
                    .collect();
                let as_terms: Substitution = rename
                    .iter()
                    .map(|(v, n)| (v.clone(), Term::var(n.clone())))
                    .collect();
                let formula = rename
                    .values()
                    .rev()
                    .fold(as_terms.apply_formula(schema.matrix()), |f, v| {
                        Formula::forall(v.clone(), f)
                    });
                let sigmas = sigmas
                    .into_iter()
                    .map(|s| {
                        s.iter()
                            .map(|(v, t)| (rename[v].clone(), t.clone()))
                            .collect()
                    })
                    .collect();
                (kind, formula, sigmas)
            })
            .collect()
    }
}
