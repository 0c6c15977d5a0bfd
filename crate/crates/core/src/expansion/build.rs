use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::tree::{ExpansionSequent, ExpansionTree, WeakInstance};
use crate::logic::{
    quantifier_strengths, Formula, Polarity, Sequent, SequentPos, Strength, Substitution, Term,
};

/// Constant used to instantiate a vacuous weak quantifier that received no
/// instances.
pub const DUMMY_CONSTANT: &str = "dummy";

/// Substitutions for the bound variables of each formula of a sequent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSet {
    sets: BTreeMap<SequentPos, BTreeSet<Substitution>>,
}

impl InstanceSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, pos: SequentPos, sigma: Substitution) {
        self.sets.entry(pos).or_default().insert(sigma);
    }

    pub fn get(&self, pos: SequentPos) -> impl Iterator<Item = &Substitution> {
        self.sets.get(&pos).into_iter().flatten()
    }

    pub fn count(&self, pos: SequentPos) -> usize {
        self.sets.get(&pos).map_or(0, BTreeSet::len)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&SequentPos, &BTreeSet<Substitution>)> {
        self.sets.iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExpandError {
    #[error("bound variables are not pairwise distinct (rectify first)")]
    NotRectified,
    #[error("strong variable `{var}` is bound to {} distinct terms: {}", terms.len(), terms.join(", "))]
    Multiplicity { var: String, terms: Vec<String> },
    #[error("weak variable `{var}` has no instance")]
    MissingInstance { var: String },
    #[error("strong variable `{var}` is bound to `{term}`, which is not an eigenvariable")]
    EigenvariableForm { var: String, term: String },
    #[error("{pos}: {source}")]
    At {
        pos: SequentPos,
        #[source]
        source: Box<ExpandError>,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExpandOptions {
    /// Give weak quantifiers without any instance a single dummy instance
    /// instead of failing.
    pub fill_missing: bool,
}

/// Builds the expansion tree of a rectified formula from a set of
/// substitutions for its bound variables.
///
/// A weak quantifier over `x` gets one child per distinct term assigned to
/// `x` (ordered by textual form); each child is built from the substitutions
/// assigning that term, plus those that leave `x` unassigned. A strong
/// quantifier gets the unique variable assigned to it, or its own name when
/// none is assigned.
pub fn expand_formula<'a>(
    formula: &Formula,
    instances: impl IntoIterator<Item = &'a Substitution>,
    polarity: Polarity,
) -> Result<ExpansionTree, ExpandError> {
    expand_formula_with(formula, instances, polarity, ExpandOptions::default())
}

pub fn expand_formula_with<'a>(
    formula: &Formula,
    instances: impl IntoIterator<Item = &'a Substitution>,
    polarity: Polarity,
    options: ExpandOptions,
) -> Result<ExpansionTree, ExpandError> {
    if !formula.is_rectified() {
        return Err(ExpandError::NotRectified);
    }
    let sigmas: Vec<&Substitution> = instances.into_iter().collect();
    let mut eigen = BTreeMap::new();
    for (var, strength) in quantifier_strengths(formula, polarity) {
        if strength != Strength::Strong {
            continue;
        }
        let terms: BTreeSet<&Term> = sigmas.iter().filter_map(|s| s.get(&var)).collect();
        let name = match terms.len() {
            0 => var.clone(),
            1 => {
                let t = *terms.iter().next().expect("one term");
                t.as_var()
                    .ok_or_else(|| ExpandError::EigenvariableForm {
                        var: var.clone(),
                        term: t.to_string(),
                    })?
                    .to_string()
            }
            _ => {
                return Err(ExpandError::Multiplicity {
                    var,
                    terms: terms.iter().map(|t| t.to_string()).collect(),
                })
            }
        };
        eigen.insert(var, name);
    }
    Builder { eigen, options }.go(formula, &sigmas, polarity)
}

struct Builder {
    eigen: BTreeMap<String, String>,
    options: ExpandOptions,
}

impl Builder {
    fn go(
        &self,
        f: &Formula,
        sigmas: &[&Substitution],
        p: Polarity,
    ) -> Result<ExpansionTree, ExpandError> {
        Ok(match f {
            Formula::Atom(a) => ExpansionTree::Atom(a.clone()),
            Formula::Neg(g) => ExpansionTree::neg(self.go(g, sigmas, p.flip())?),
            Formula::And(..) | Formula::Or(..) | Formula::Imp(..) => {
                let (c, l, r) = f.as_binary().expect("binary");
                let lp = if c == crate::logic::Connective::Imp {
                    p.flip()
                } else {
                    p
                };
                ExpansionTree::binary(c, self.go(l, sigmas, lp)?, self.go(r, sigmas, p)?)
            }
            Formula::Forall(var, body) | Formula::Exists(var, body) => {
                let (q, _, _) = f.as_quantifier().expect("quantifier");
                match Strength::of(q, p) {
                    Strength::Strong => {
                        let alpha = self.eigen.get(var).cloned().unwrap_or_else(|| var.clone());
                        let inst = Substitution::singleton(var.clone(), Term::var(alpha.clone()))
                            .apply_formula(body);
                        ExpansionTree::Strong {
                            var: var.clone(),
                            body: (**body).clone(),
                            eigenvariable: alpha,
                            child: Box::new(self.go(&inst, sigmas, p)?),
                        }
                    }
                    Strength::Weak => self.weak(var, body, sigmas, p)?,
                }
            }
        })
    }

    fn weak(
        &self,
        var: &str,
        body: &Formula,
        sigmas: &[&Substitution],
        p: Polarity,
    ) -> Result<ExpansionTree, ExpandError> {
        let mut terms: Vec<&Term> = sigmas.iter().filter_map(|s| s.get(var)).collect();
        terms.sort_by_cached_key(|t| t.to_string());
        terms.dedup();
        let dummy = Term::constant(DUMMY_CONSTANT);
        if terms.is_empty() {
            if self.options.fill_missing || !body.is_free(var) {
                terms.push(&dummy);
            } else {
                return Err(ExpandError::MissingInstance {
                    var: var.to_string(),
                });
            }
        }
        let instances = terms
            .into_iter()
            .map(|t| {
                let subset: Vec<&Substitution> = sigmas
                    .iter()
                    .copied()
                    .filter(|s| s.get(var).is_none_or(|u| u == t))
                    .collect();
                let inst = Substitution::singleton(var, t.clone()).apply_formula(body);
                Ok(WeakInstance {
                    term: t.clone(),
                    child: self.go(&inst, &subset, p)?,
                })
            })
            .collect::<Result<_, ExpandError>>()?;
        Ok(ExpansionTree::Weak {
            var: var.to_string(),
            body: body.clone(),
            instances,
        })
    }
}

fn sequent_is_rectified(s: &Sequent) -> bool {
    let mut bound = BTreeSet::new();
    let mut free = BTreeSet::new();
    for (_, f) in s.iter() {
        for b in f.bound_vars() {
            if !bound.insert(b) {
                return false;
            }
        }
        free.extend(f.free_vars());
    }
    bound.is_disjoint(&free)
}

/// Expands every formula of a rectified sequent at its side's polarity.
pub fn expand_sequent(
    sequent: &Sequent,
    instances: &InstanceSet,
) -> Result<ExpansionSequent, ExpandError> {
    expand_sequent_with(sequent, instances, ExpandOptions::default())
}

pub fn expand_sequent_with(
    sequent: &Sequent,
    instances: &InstanceSet,
    options: ExpandOptions,
) -> Result<ExpansionSequent, ExpandError> {
    if !sequent_is_rectified(sequent) {
        return Err(ExpandError::NotRectified);
    }
    let mut out = ExpansionSequent::default();
    for (pos, f) in sequent.iter() {
        let tree = expand_formula_with(f, instances.get(pos), pos.side.polarity(), options)
            .map_err(|e| ExpandError::At {
                pos,
                source: Box::new(e),
            })?;
        match pos.side {
            crate::logic::Side::Antecedent => out.antecedent.push(tree),
            crate::logic::Side::Succedent => out.succedent.push(tree),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_formula, parse_term, Side};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn sigma(pairs: &[(&str, &str)]) -> Substitution {
        pairs.iter().map(|(k, v)| (k.to_string(), t(v))).collect()
    }

    #[test]
    fn universal_in_antecedent() {
        let sigmas = [sigma(&[("X", "a")]), sigma(&[("X", "b")])];
        let tree = expand_formula(&f("![X]: p(X)"), &sigmas, Polarity::Negative).unwrap();
        let expected = ExpansionTree::weak(
            "X",
            f("p(X)"),
            vec![
                (
                    t("a"),
                    ExpansionTree::Atom(crate::logic::Atom::new("p", vec![t("a")])),
                ),
                (
                    t("b"),
                    ExpansionTree::Atom(crate::logic::Atom::new("p", vec![t("b")])),
                ),
            ],
        );
        assert_eq!(tree, expected);
    }

    #[test]
    fn propositional_with_empty_set() {
        let tree = expand_formula(&f("p(a) => p(a)"), &[], Polarity::Positive).unwrap();
        assert_eq!(tree.shallow(Polarity::Positive), f("p(a) => p(a)"));
        assert!(matches!(
            tree,
            ExpansionTree::Binary(crate::logic::Connective::Imp, ..)
        ));
    }

    #[test]
    fn nested_weak_partition() {
        let sigmas = [
            sigma(&[("X", "a"), ("Y", "t1")]),
            sigma(&[("X", "a"), ("Y", "t2")]),
            sigma(&[("X", "b"), ("Y", "t3")]),
        ];
        let formula = f("![X]: ![Y]: r(X,Y)");
        let tree = expand_formula(&formula, &sigmas, Polarity::Negative).unwrap();
        assert_eq!(tree.shallow(Polarity::Negative), formula);
        let ExpansionTree::Weak { instances, .. } = &tree else {
            panic!()
        };
        let counts: Vec<(String, usize)> = instances
            .iter()
            .map(|i| (i.term.to_string(), i.child.children().len()))
            .collect();
        assert_eq!(counts, vec![("a".into(), 2), ("b".into(), 1)]);
        assert_eq!(
            tree.deep(Polarity::Negative),
            f("(r(a,t1) & r(a,t2)) & r(b,t3)")
        );
        tree.validate(Polarity::Negative).unwrap();
    }

    #[test]
    fn strong_gets_its_eigenvariable() {
        let sigmas = [sigma(&[("X", "a"), ("Y", "Alpha")])];
        let tree = expand_formula(&f("?[X]: ![Y]: r(X,Y)"), &sigmas, Polarity::Positive).unwrap();
        let ExpansionTree::Weak { instances, .. } = &tree else {
            panic!("{tree:?}")
        };
        let ExpansionTree::Strong {
            eigenvariable,
            child,
            ..
        } = &instances[0].child
        else {
            panic!()
        };
        assert_eq!(eigenvariable, "Alpha");
        assert_eq!(child.shallow(Polarity::Positive), f("r(a,Alpha)"));
        // Without a binding the bound name doubles as the eigenvariable.
        let tree = expand_formula(&f("![Y]: p(Y)"), &[], Polarity::Positive).unwrap();
        assert_eq!(tree.deep(Polarity::Positive), f("p(Y)"));
    }

    #[test]
    fn multiplicity_error() {
        let sigmas = [sigma(&[("Y", "A")]), sigma(&[("Y", "B")])];
        let err = expand_formula(&f("![Y]: p(Y)"), &sigmas, Polarity::Positive).unwrap_err();
        assert!(
            matches!(err, ExpandError::Multiplicity { ref var, .. } if var == "Y"),
            "{err}"
        );
    }

    #[test]
    fn eigenvariable_must_be_a_variable() {
        let sigmas = [sigma(&[("Y", "a")])];
        let err = expand_formula(&f("![Y]: p(Y)"), &sigmas, Polarity::Positive).unwrap_err();
        assert!(matches!(err, ExpandError::EigenvariableForm { .. }));
    }

    #[test]
    fn missing_instance_and_vacuous_quantifier() {
        let err = expand_formula(&f("![X]: p(X)"), &[], Polarity::Negative).unwrap_err();
        assert_eq!(err, ExpandError::MissingInstance { var: "X".into() });
        let tree = expand_formula(&f("![X]: p"), &[], Polarity::Negative).unwrap();
        assert_eq!(tree.deep(Polarity::Negative), f("p"));
        let filled = expand_formula_with(
            &f("![X]: p(X)"),
            &[],
            Polarity::Negative,
            ExpandOptions { fill_missing: true },
        )
        .unwrap();
        assert_eq!(filled.deep(Polarity::Negative), f("p(dummy)"));
    }

    #[test]
    fn unrectified_input_is_rejected() {
        let err =
            expand_formula(&f("![X]: (p(X) & ![X]: q(X))"), &[], Polarity::Negative).unwrap_err();
        assert_eq!(err, ExpandError::NotRectified);
    }

    #[test]
    fn sequent_smallest_import() {
        let s = Sequent::new(vec![f("![X]: p(X)")], vec![f("p(c)")]);
        let mut inst = InstanceSet::new();
        inst.insert(
            SequentPos {
                side: Side::Antecedent,
                index: 0,
            },
            sigma(&[("X", "c")]),
        );
        let es = expand_sequent(&s, &inst).unwrap();
        assert_eq!(es.shallow(), s);
        assert_eq!(es.antecedent[0].deep(Polarity::Negative), f("p(c)"));
    }

    #[test]
    fn sequent_drinker_with_two_eigenvariables_is_rejected() {
        let s = Sequent::new(vec![], vec![f("?[X]: (p(X) => ![Y]: p(Y))")]);
        let mut inst = InstanceSet::new();
        let pos = SequentPos {
            side: Side::Succedent,
            index: 0,
        };
        inst.insert(pos, sigma(&[("X", "c"), ("Y", "Alpha")]));
        inst.insert(pos, sigma(&[("X", "Alpha"), ("Y", "Beta")]));
        let err = expand_sequent(&s, &inst).unwrap_err();
        let ExpandError::At { pos: at, source } = err else {
            panic!()
        };
        assert_eq!(at, pos);
        assert!(matches!(*source, ExpandError::Multiplicity { ref var, .. } if var == "Y"));
    }

    #[test]
    fn sequent_must_be_rectified_across_formulas() {
        let s = Sequent::new(vec![f("![X]: p(X)")], vec![f("![X]: p(X)")]);
        assert_eq!(
            expand_sequent(&s, &InstanceSet::new()).unwrap_err(),
            ExpandError::NotRectified
        );
    }
}
