//! Skolem terms back to eigenvariables.

use std::collections::BTreeMap;

use crate::logic::{Atom, Literal, Term};

pub const DEFAULT_SKOLEM_PREFIX: &str = "sk";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("Skolem symbol `{head}` occurs as `{first}` and as `{second}`")]
pub struct SkolemError {
    pub head: String,
    pub first: String,
    pub second: String,
}

/// One eigenvariable per Skolem symbol. A symbol is a Skolem symbol when it
/// is the prefix followed by at least one letter or digit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkolemRegistry {
    prefix: String,
    /// Skolem symbol to its eigenvariable and the first application seen in
    /// strict mode.
    heads: BTreeMap<String, (String, Option<Term>)>,
}

impl Default for SkolemRegistry {
    fn default() -> Self {
        SkolemRegistry::new(DEFAULT_SKOLEM_PREFIX)
    }
}

impl SkolemRegistry {
    pub fn new(prefix: impl Into<String>) -> Self {
        SkolemRegistry {
            prefix: prefix.into(),
            heads: BTreeMap::new(),
        }
    }

    pub fn is_skolem(&self, head: &str) -> bool {
        head.strip_prefix(self.prefix.as_str())
            .is_some_and(|rest| !rest.is_empty() && rest.chars().all(|c| c.is_ascii_alphanumeric()))
    }

    /// Eigenvariable name for a Skolem symbol: `V_` followed by the symbol.
    pub fn eigenvariable(head: &str) -> String {
        format!("V_{head}")
    }

    fn lookup(&mut self, t: &Term, strict: bool) -> Result<Term, SkolemError> {
        let Term::App(head, _) = t else {
            unreachable!()
        };
        let entry = self
            .heads
            .entry(head.clone())
            .or_insert_with(|| (Self::eigenvariable(head), None));
        if strict {
            match &entry.1 {
                None => entry.1 = Some(t.clone()),
                Some(first) if first != t => {
                    return Err(SkolemError {
                        head: head.clone(),
                        first: first.to_string(),
                        second: t.to_string(),
                    })
                }
                Some(_) => {}
            }
        }
        Ok(Term::var(entry.0.clone()))
    }

    fn collapse(&mut self, t: &Term, strict: bool) -> Result<Term, SkolemError> {
        match t {
            Term::Var(_) => Ok(t.clone()),
            Term::App(head, _) if self.is_skolem(head) => self.lookup(t, strict),
            Term::App(f, args) => Ok(Term::app(
                f.clone(),
                args.iter()
                    .map(|a| self.collapse(a, strict))
                    .collect::<Result<_, _>>()?,
            )),
        }
    }

    /// Replaces every Skolem application, arguments included, by the
    /// eigenvariable of its symbol. Fails if the same symbol was seen applied
    /// to different arguments before.
    pub fn skolem_to_eigen(&mut self, t: &Term) -> Result<Term, SkolemError> {
        self.collapse(t, true)
    }

    /// As [`skolem_to_eigen`](Self::skolem_to_eigen), without the argument
    /// check. Used on instantiated terms, where one Skolem symbol legitimately
    /// appears with different arguments.
    pub fn collapse_lenient(&mut self, t: &Term) -> Term {
        self.collapse(t, false)
            .expect("lenient collapse cannot fail")
    }

    pub fn literal_to_eigen(&mut self, l: &Literal) -> Result<Literal, SkolemError> {
        Ok(Literal {
            positive: l.positive,
            atom: Atom::new(
                l.atom.pred.clone(),
                l.atom
                    .args
                    .iter()
                    .map(|a| self.skolem_to_eigen(a))
                    .collect::<Result<_, _>>()?,
            ),
        })
    }

    /// Skolem symbol to eigenvariable name.
    pub fn map(&self) -> BTreeMap<String, String> {
        self.heads
            .iter()
            .map(|(h, (v, _))| (h.clone(), v.clone()))
            .collect()
    }
}
