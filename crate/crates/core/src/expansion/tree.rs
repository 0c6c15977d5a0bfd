use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::logic::{
    Atom, Connective, Formula, Polarity, Quantifier, Sequent, SequentPos, Side, Substitution, Term,
};

/// One instance of a weak quantifier: the term and the tree for the
/// instantiated body.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeakInstance {
    pub term: Term,
    pub child: ExpansionTree,
}

/// An expansion tree. Whether a quantifier node reads as `∀` or `∃`
/// depends on the polarity it is read at.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "super::json::NodeDto", try_from = "super::json::NodeDto")]
pub enum ExpansionTree {
    Atom(Atom),
    Neg(Box<ExpansionTree>),
    Binary(Connective, Box<ExpansionTree>, Box<ExpansionTree>),
    /// Instantiated quantifier; the instance terms are pairwise distinct.
    Weak {
        var: String,
        body: Formula,
        instances: Vec<WeakInstance>,
    },
    /// Quantifier witnessed by a single eigenvariable.
    Strong {
        var: String,
        body: Formula,
        eigenvariable: String,
        child: Box<ExpansionTree>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("weak node for `{var}` has no instances")]
    NoInstances { var: String },
    #[error("weak node for `{var}` repeats instance `{term}`")]
    DuplicateInstance { var: String, term: String },
    #[error("child of `{var}` for `{term}` reads as `{found}`, expected `{expected}`")]
    ChildMismatch {
        var: String,
        term: String,
        expected: String,
        found: String,
    },
}

impl ExpansionTree {
    pub fn atom(a: Atom) -> Self {
        ExpansionTree::Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(child: ExpansionTree) -> Self {
        ExpansionTree::Neg(Box::new(child))
    }

    pub fn binary(c: Connective, l: ExpansionTree, r: ExpansionTree) -> Self {
        ExpansionTree::Binary(c, Box::new(l), Box::new(r))
    }

    pub fn weak(
        var: impl Into<String>,
        body: Formula,
        instances: Vec<(Term, ExpansionTree)>,
    ) -> Self {
        ExpansionTree::Weak {
            var: var.into(),
            body,
            instances: instances
                .into_iter()
                .map(|(term, child)| WeakInstance { term, child })
                .collect(),
        }
    }

    pub fn strong(
        var: impl Into<String>,
        body: Formula,
        eigenvariable: impl Into<String>,
        child: ExpansionTree,
    ) -> Self {
        ExpansionTree::Strong {
            var: var.into(),
            body,
            eigenvariable: eigenvariable.into(),
            child: Box::new(child),
        }
    }

    /// Children in child-index order: instances of a weak node in their
    /// stored order, `[left, right]` for binary nodes, `[child]` otherwise.
    pub fn children(&self) -> Vec<&ExpansionTree> {
        match self {
            ExpansionTree::Atom(_) => vec![],
            ExpansionTree::Neg(c) => vec![c],
            ExpansionTree::Binary(_, l, r) => vec![l, r],
            ExpansionTree::Weak { instances, .. } => instances.iter().map(|i| &i.child).collect(),
            ExpansionTree::Strong { child, .. } => vec![child],
        }
    }

    /// Polarity at which child `index` is read.
    pub fn child_polarity(&self, index: usize, p: Polarity) -> Polarity {
        match self {
            ExpansionTree::Neg(_) => p.flip(),
            ExpansionTree::Binary(Connective::Imp, ..) if index == 0 => p.flip(),
            _ => p,
        }
    }

    /// The formula this tree expands, read at polarity `p`.
    pub fn shallow(&self, p: Polarity) -> Formula {
        match self {
            ExpansionTree::Atom(a) => Formula::Atom(a.clone()),
            ExpansionTree::Neg(c) => Formula::not(c.shallow(p.flip())),
            ExpansionTree::Binary(c, l, r) => {
                let lp = if *c == Connective::Imp { p.flip() } else { p };
                Formula::binary(*c, l.shallow(lp), r.shallow(p))
            }
            ExpansionTree::Weak { var, body, .. } => {
                let q = match p {
                    Polarity::Negative => Quantifier::Forall,
                    Polarity::Positive => Quantifier::Exists,
                };
                Formula::quantified(q, var.clone(), body.clone())
            }
            ExpansionTree::Strong { var, body, .. } => {
                let q = match p {
                    Polarity::Negative => Quantifier::Exists,
                    Polarity::Positive => Quantifier::Forall,
                };
                Formula::quantified(q, var.clone(), body.clone())
            }
        }
    }

    /// Quantifier-free formula: weak nodes become the conjunction (negative)
    /// or disjunction (positive) of their children, strong nodes are erased.
    pub fn deep(&self, p: Polarity) -> Formula {
        match self {
            ExpansionTree::Atom(a) => Formula::Atom(a.clone()),
            ExpansionTree::Neg(c) => Formula::not(c.deep(p.flip())),
            ExpansionTree::Binary(c, l, r) => {
                let lp = if *c == Connective::Imp { p.flip() } else { p };
                Formula::binary(*c, l.deep(lp), r.deep(p))
            }
            ExpansionTree::Weak { instances, .. } => {
                let parts = instances.iter().map(|i| i.child.deep(p));
                match p {
                    Polarity::Negative => Formula::conjunction(parts),
                    Polarity::Positive => Formula::disjunction(parts),
                }
                .expect("weak node without instances")
            }
            ExpansionTree::Strong { child, .. } => child.deep(p),
        }
    }

    /// Checks the structural invariants at polarity `p`: weak nodes have at
    /// least one instance, instance terms are distinct, and every child reads
    /// as the body instantiated with its term or eigenvariable.
    pub fn validate(&self, p: Polarity) -> Result<(), TreeError> {
        match self {
            ExpansionTree::Atom(_) => Ok(()),
            ExpansionTree::Weak {
                var,
                body,
                instances,
            } => {
                if instances.is_empty() {
                    return Err(TreeError::NoInstances { var: var.clone() });
                }
                let mut seen = BTreeSet::new();
                for inst in instances {
                    if !seen.insert(&inst.term) {
                        return Err(TreeError::DuplicateInstance {
                            var: var.clone(),
                            term: inst.term.to_string(),
                        });
                    }
                    check_child(var, body, &inst.term, &inst.child, p)?;
                    inst.child.validate(p)?;
                }
                Ok(())
            }
            ExpansionTree::Strong {
                var,
                body,
                eigenvariable,
                child,
            } => {
                check_child(var, body, &Term::var(eigenvariable.clone()), child, p)?;
                child.validate(p)
            }
            _ => self
                .children()
                .into_iter()
                .enumerate()
                .try_for_each(|(i, c)| c.validate(self.child_polarity(i, p))),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(ExpansionTree::size)
            .sum::<usize>()
    }
}

fn check_child(
    var: &str,
    body: &Formula,
    term: &Term,
    child: &ExpansionTree,
    p: Polarity,
) -> Result<(), TreeError> {
    let expected = Substitution::singleton(var, term.clone()).apply_formula(body);
    let found = child.shallow(p);
    if expected == found {
        Ok(())
    } else {
        Err(TreeError::ChildMismatch {
            var: var.to_string(),
            term: term.to_string(),
            expected: expected.to_string(),
            found: found.to_string(),
        })
    }
}

/// Expansion trees on both sides of a turnstile; antecedent trees are read
/// negatively, succedent trees positively.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExpansionSequent {
    pub antecedent: Vec<ExpansionTree>,
    pub succedent: Vec<ExpansionTree>,
}

impl ExpansionSequent {
    pub fn new(antecedent: Vec<ExpansionTree>, succedent: Vec<ExpansionTree>) -> Self {
        ExpansionSequent {
            antecedent,
            succedent,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (SequentPos, &ExpansionTree)> {
        let ant = self.antecedent.iter().enumerate().map(|(index, t)| {
            (
                SequentPos {
                    side: Side::Antecedent,
                    index,
                },
                t,
            )
        });
        let suc = self.succedent.iter().enumerate().map(|(index, t)| {
            (
                SequentPos {
                    side: Side::Succedent,
                    index,
                },
                t,
            )
        });
        ant.chain(suc)
    }

    pub fn shallow(&self) -> Sequent {
        Sequent::new(
            self.antecedent
                .iter()
                .map(|t| t.shallow(Polarity::Negative))
                .collect(),
            self.succedent
                .iter()
                .map(|t| t.shallow(Polarity::Positive))
                .collect(),
        )
    }

    pub fn validate(&self) -> Result<(), (SequentPos, TreeError)> {
        self.iter()
            .try_for_each(|(pos, t)| t.validate(pos.side.polarity()).map_err(|e| (pos, e)))
    }

    /// Instance terms of every weak node, grouped by bound variable in
    /// first-seen order.
    pub fn instances_by_var(&self) -> Vec<(String, Vec<Term>)> {
        fn go(t: &ExpansionTree, out: &mut Vec<(String, Vec<Term>)>) {
            if let ExpansionTree::Weak { var, instances, .. } = t {
                let idx = match out.iter().position(|(v, _)| v == var) {
                    Some(i) => i,
                    None => {
                        out.push((var.clone(), Vec::new()));
                        out.len() - 1
                    }
                };
                for i in instances {
                    if !out[idx].1.contains(&i.term) {
                        out[idx].1.push(i.term.clone());
                    }
                }
            }
            t.children().into_iter().for_each(|c| go(c, out));
        }
        let mut out = Vec::new();
        self.iter().for_each(|(_, t)| go(t, &mut out));
        out
    }
}
