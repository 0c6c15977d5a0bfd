use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::formula::Formula;
use super::term::Atom;

/// A possibly negated atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal {
            positive: true,
            atom,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal {
            positive: false,
            atom,
        }
    }

    pub fn negated(&self) -> Literal {
        Literal {
            positive: !self.positive,
            atom: self.atom.clone(),
        }
    }

    /// Same sign, equation sides swapped. Non-equations are returned as is.
    pub fn flipped(&self) -> Literal {
        Literal {
            positive: self.positive,
            atom: self.atom.flipped(),
        }
    }

    pub fn to_formula(&self) -> Formula {
        let a = Formula::Atom(self.atom.clone());
        if self.positive {
            a
        } else {
            Formula::not(a)
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.atom.vars()
    }

    /// Sign and predicate symbol with arity, used to pre-filter candidates
    /// before matching.
    pub fn signature(&self) -> (bool, &str, usize) {
        (self.positive, &self.atom.pred, self.atom.args.len())
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_formula().fmt(f)
    }
}

/// Disjunction of the literals, `None` for the empty clause.
pub fn clause_disjunction(lits: &[Literal]) -> Option<Formula> {
    Formula::disjunction(lits.iter().map(Literal::to_formula))
}

/// Conjunction of the literals, `None` for the empty clause.
pub fn clause_conjunction(lits: &[Literal]) -> Option<Formula> {
    Formula::conjunction(lits.iter().map(Literal::to_formula))
}
