use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::formula::Formula;
use super::term::{Atom, Term};

/// A finite map from variable names to terms. Identity bindings are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Substitution {
    bindings: BTreeMap<String, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(var: impl Into<String>, term: Term) -> Self {
        let mut s = Self::new();
        s.insert(var, term);
        s
    }

    /// Adds or replaces a binding; `x ↦ x` removes any binding for `x`.
    pub fn insert(&mut self, var: impl Into<String>, term: Term) {
        let var = var.into();
        if term.as_var() == Some(var.as_str()) {
            self.bindings.remove(&var);
        } else {
            self.bindings.insert(var, term);
        }
    }

    pub fn remove(&mut self, var: &str) -> Option<Term> {
        self.bindings.remove(var)
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }

    pub fn contains(&self, var: &str) -> bool {
        self.bindings.contains_key(var)
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Term)> {
        self.bindings.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &String> {
        self.bindings.keys()
    }

    /// Variables occurring in the range.
    pub fn range_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.bindings
            .values()
            .for_each(|t| t.collect_vars(&mut out));
        out
    }

    /// Keeps only bindings for the given variables.
    pub fn restrict<'a>(&self, vars: impl IntoIterator<Item = &'a String>) -> Substitution {
        let keep: BTreeSet<&String> = vars.into_iter().collect();
        Substitution {
            bindings: self
                .bindings
                .iter()
                .filter(|(k, _)| keep.contains(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => self.bindings.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(h, args) => {
                Term::App(h.clone(), args.iter().map(|a| self.apply_term(a)).collect())
            }
        }
    }

    pub fn apply_atom(&self, a: &Atom) -> Atom {
        Atom {
            pred: a.pred.clone(),
            args: a.args.iter().map(|t| self.apply_term(t)).collect(),
        }
    }

    /// Capture-avoiding application: free occurrences are replaced, and a
    /// binder that would capture a variable of an inserted term is renamed.
    pub fn apply_formula(&self, f: &Formula) -> Formula {
        if self.is_empty() {
            return f.clone();
        }
        match f {
            Formula::Atom(a) => Formula::Atom(self.apply_atom(a)),
            Formula::Neg(g) => Formula::not(self.apply_formula(g)),
            Formula::And(l, r) => Formula::and(self.apply_formula(l), self.apply_formula(r)),
            Formula::Or(l, r) => Formula::or(self.apply_formula(l), self.apply_formula(r)),
            Formula::Imp(l, r) => Formula::imp(self.apply_formula(l), self.apply_formula(r)),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let q = f.as_quantifier().expect("quantifier").0;
                let mut inner = self.clone();
                inner.remove(v);
                // Only bindings for variables actually free in the body matter.
                let free = body.free_vars();
                inner.bindings.retain(|k, _| free.contains(k));
                if inner.is_empty() {
                    return f.clone();
                }
                if inner.range_vars().contains(v) {
                    let mut avoid = body.all_var_names();
                    avoid.extend(inner.range_vars());
                    avoid.extend(inner.domain().cloned());
                    let fresh = fresh_name(v, &avoid);
                    inner.insert(v.clone(), Term::Var(fresh.clone()));
                    Formula::quantified(q, fresh, inner.apply_formula(body))
                } else {
                    Formula::quantified(q, v.clone(), inner.apply_formula(body))
                }
            }
        }
    }

    /// Sequential composition: applying the result equals applying `self`
    /// and then `next`.
    pub fn then(&self, next: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (k, t) in &self.bindings {
            out.insert(k.clone(), next.apply_term(t));
        }
        for (k, t) in &next.bindings {
            if !self.bindings.contains_key(k) {
                out.insert(k.clone(), t.clone());
            }
        }
        out
    }
}

impl FromIterator<(String, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (String, Term)>>(iter: I) -> Self {
        let mut s = Substitution::new();
        for (k, t) in iter {
            s.insert(k, t);
        }
        s
    }
}

impl<const N: usize> From<[(&str, Term); N]> for Substitution {
    fn from(pairs: [(&str, Term); N]) -> Self {
        pairs.into_iter().map(|(k, t)| (k.to_string(), t)).collect()
    }
}

/// `base_N` for the smallest `N ≥ 1` not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    (1..)
        .map(|n| format!("{base}_{n}"))
        .find(|c| !avoid.contains(c))
        .expect("unbounded counter")
}
