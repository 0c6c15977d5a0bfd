//! One-sided first-order matching.
//!
//! Variables of the pattern may be bound; everything in the target is
//! rigid, including its variables. Binders are matched up to renaming of the
//! bound variable.

use std::collections::BTreeMap;

use super::formula::Formula;
use super::subst::Substitution;
use super::term::{Atom, Term};

/// Partial matching state. Unlike [`Substitution`] it remembers identity
/// bindings so later occurrences are checked against them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matcher {
    bindings: BTreeMap<String, Term>,
}

impl Matcher {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }

    fn bind(&mut self, var: &str, target: &Term) -> bool {
        match self.bindings.get(var) {
            Some(existing) => existing == target,
            None => {
                self.bindings.insert(var.to_string(), target.clone());
                true
            }
        }
    }

    fn term(&mut self, pattern: &Term, target: &Term, scope: &[(&str, &str)]) -> bool {
        match pattern {
            Term::Var(v) => {
                if let Some((_, tv)) = scope.iter().rev().find(|(pv, _)| pv == v) {
                    return target.as_var() == Some(*tv);
                }
                if scope.iter().any(|(_, tv)| target.contains_var(tv)) {
                    return false;
                }
                self.bind(v, target)
            }
            Term::App(f, ps) => match target {
                Term::App(g, ts) if f == g && ps.len() == ts.len() => {
                    ps.iter().zip(ts).all(|(p, t)| self.term(p, t, scope))
                }
                _ => false,
            },
        }
    }

    fn atom(&mut self, pattern: &Atom, target: &Atom, scope: &[(&str, &str)]) -> bool {
        pattern.pred == target.pred
            && pattern.args.len() == target.args.len()
            && pattern
                .args
                .iter()
                .zip(&target.args)
                .all(|(p, t)| self.term(p, t, scope))
    }

    fn formula<'a>(
        &mut self,
        pattern: &'a Formula,
        target: &'a Formula,
        scope: &mut Vec<(&'a str, &'a str)>,
    ) -> bool {
        match (pattern, target) {
            (Formula::Atom(p), Formula::Atom(t)) => self.atom(p, t, scope),
            (Formula::Neg(p), Formula::Neg(t)) => self.formula(p, t, scope),
            (Formula::And(pl, pr), Formula::And(tl, tr))
            | (Formula::Or(pl, pr), Formula::Or(tl, tr))
            | (Formula::Imp(pl, pr), Formula::Imp(tl, tr)) => {
                self.formula(pl, tl, scope) && self.formula(pr, tr, scope)
            }
            (Formula::Forall(pv, pb), Formula::Forall(tv, tb))
            | (Formula::Exists(pv, pb), Formula::Exists(tv, tb)) => {
                scope.push((pv, tv));
                let ok = self.formula(pb, tb, scope);
                scope.pop();
                ok
            }
            _ => false,
        }
    }

    /// Extends the state so that `pattern` maps onto `target`; `None` on conflict.
    pub fn extend_term(&self, pattern: &Term, target: &Term) -> Option<Matcher> {
        let mut next = self.clone();
        next.term(pattern, target, &[]).then_some(next)
    }

    pub fn extend_atom(&self, pattern: &Atom, target: &Atom) -> Option<Matcher> {
        let mut next = self.clone();
        next.atom(pattern, target, &[]).then_some(next)
    }

    pub fn extend_formula(&self, pattern: &Formula, target: &Formula) -> Option<Matcher> {
        let mut next = self.clone();
        next.formula(pattern, target, &mut Vec::new())
            .then_some(next)
    }

    pub fn into_substitution(self) -> Substitution {
        self.bindings.into_iter().collect()
    }

    pub fn to_substitution(&self) -> Substitution {
        self.bindings.clone().into_iter().collect()
    }
}

/// The unique `σ` with `σ(pattern) = target`, if any.
pub fn match_term(pattern: &Term, target: &Term) -> Option<Substitution> {
    Matcher::new()
        .extend_term(pattern, target)
        .map(Matcher::into_substitution)
}

pub fn match_atom(pattern: &Atom, target: &Atom) -> Option<Substitution> {
    Matcher::new()
        .extend_atom(pattern, target)
        .map(Matcher::into_substitution)
}

pub fn match_formula(pattern: &Formula, target: &Formula) -> Option<Substitution> {
    Matcher::new()
        .extend_formula(pattern, target)
        .map(Matcher::into_substitution)
}
