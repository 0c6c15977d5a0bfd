use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Reserved predicate symbol for equality atoms.
pub const EQ: &str = "=";

/// A first-order term. Constants are applications with no arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(head: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(head.into(), args)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(v) => Some(v),
            Term::App(..) => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v == name,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(name)),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Visits every function symbol occurrence with its arity.
    pub(crate) fn collect_functions(&self, out: &mut Vec<(String, usize)>) {
        if let Term::App(f, args) = self {
            out.push((f.clone(), args.len()));
            args.iter().for_each(|a| a.collect_functions(out));
        }
    }

    /// Applies `f` bottom-up to every subterm.
    pub fn map_bottom_up<E>(&self, f: &mut impl FnMut(Term) -> Result<Term, E>) -> Result<Term, E> {
        let rebuilt = match self {
            Term::Var(_) => self.clone(),
            Term::App(h, args) => Term::App(
                h.clone(),
                args.iter()
                    .map(|a| a.map_bottom_up(f))
                    .collect::<Result<_, _>>()?,
            ),
        };
        f(rebuilt)
    }
}

/// An atomic formula `pred(args)`; equality is `=` with two arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            pred: pred.into(),
            args,
        }
    }

    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Atom::new(EQ, vec![lhs, rhs])
    }

    pub fn is_eq(&self) -> bool {
        self.pred == EQ && self.args.len() == 2
    }

    /// `b = a` for `a = b`; other atoms are returned unchanged.
    pub fn flipped(&self) -> Atom {
        if self.is_eq() {
            Atom::eq(self.args[1].clone(), self.args[0].clone())
        } else {
            self.clone()
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.args.iter().for_each(|a| a.collect_vars(&mut out));
        out
    }
}

/// Symbol arities observed over a problem, used to enforce one arity per symbol.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub functions: BTreeMap<String, usize>,
    pub predicates: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("symbol `{symbol}` used with arity {found} but previously with arity {expected}")]
pub struct ArityError {
    pub symbol: String,
    pub expected: usize,
    pub found: usize,
}

impl Signature {
    pub fn add_function(&mut self, f: &str, arity: usize) -> Result<(), ArityError> {
        insert_arity(&mut self.functions, f, arity)
    }

    pub fn add_predicate(&mut self, p: &str, arity: usize) -> Result<(), ArityError> {
        insert_arity(&mut self.predicates, p, arity)
    }

    pub fn add_term(&mut self, t: &Term) -> Result<(), ArityError> {
        let mut fs = Vec::new();
        t.collect_functions(&mut fs);
        fs.iter().try_for_each(|(f, n)| self.add_function(f, *n))
    }

    pub fn add_atom(&mut self, a: &Atom) -> Result<(), ArityError> {
        if !a.is_eq() {
            self.add_predicate(&a.pred, a.args.len())?;
        }
        a.args.iter().try_for_each(|t| self.add_term(t))
    }
}

fn insert_arity(
    map: &mut BTreeMap<String, usize>,
    s: &str,
    arity: usize,
) -> Result<(), ArityError> {
    match map.get(s) {
        Some(&expected) if expected != arity => Err(ArityError {
            symbol: s.to_string(),
            expected,
            found: arity,
        }),
        Some(_) => Ok(()),
        None => {
            map.insert(s.to_string(), arity);
            Ok(())
        }
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Term {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        super::parser::parse_term(&text).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Atom {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        match super::parser::parse_formula(&text).map_err(serde::de::Error::custom)? {
            super::Formula::Atom(a) => Ok(a),
            other => Err(serde::de::Error::custom(format!(
                "expected an atom, found `{other}`"
            ))),
        }
    }
}
