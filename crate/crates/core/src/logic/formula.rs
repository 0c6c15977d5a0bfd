use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::term::{Atom, Term};

/// A first-order formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Atom),
    Neg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

/// Binary connectives shared by formulas and expansion trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    And,
    Or,
    Imp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Formula {
    pub fn atom(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom(Atom::new(pred, args))
    }

    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Formula::Atom(Atom::eq(lhs, rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Self {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn forall(v: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(v.into(), Box::new(body))
    }

    pub fn exists(v: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(v.into(), Box::new(body))
    }

    pub fn binary(c: Connective, l: Formula, r: Formula) -> Self {
        match c {
            Connective::And => Formula::and(l, r),
            Connective::Or => Formula::or(l, r),
            Connective::Imp => Formula::imp(l, r),
        }
    }

    pub fn quantified(q: Quantifier, v: impl Into<String>, body: Formula) -> Self {
        match q {
            Quantifier::Forall => Formula::forall(v, body),
            Quantifier::Exists => Formula::exists(v, body),
        }
    }

    /// Left-nested conjunction; `None` for an empty iterator.
    pub fn conjunction(fs: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        fs.into_iter().reduce(Formula::and)
    }

    /// Left-nested disjunction; `None` for an empty iterator.
    pub fn disjunction(fs: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        fs.into_iter().reduce(Formula::or)
    }

    /// Immediate subformulas in child-index order.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(_) => vec![],
            Formula::Neg(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => vec![f],
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) => vec![l, r],
        }
    }

    pub fn as_quantifier(&self) -> Option<(Quantifier, &str, &Formula)> {
        match self {
            Formula::Forall(v, b) => Some((Quantifier::Forall, v, b)),
            Formula::Exists(v, b) => Some((Quantifier::Exists, v, b)),
            _ => None,
        }
    }

    pub fn as_binary(&self) -> Option<(Connective, &Formula, &Formula)> {
        match self {
            Formula::And(l, r) => Some((Connective::And, l, r)),
            Formula::Or(l, r) => Some((Connective::Or, l, r)),
            Formula::Imp(l, r) => Some((Connective::Imp, l, r)),
            _ => None,
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Forall(..) | Formula::Exists(..) => false,
            _ => self.children().into_iter().all(Formula::is_quantifier_free),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                for v in a.vars() {
                    if !bound.contains(&v.as_str()) {
                        out.insert(v);
                    }
                }
            }
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                bound.push(v);
                b.collect_free(bound, out);
                bound.pop();
            }
            _ => self
                .children()
                .into_iter()
                .for_each(|c| c.collect_free(bound, out)),
        }
    }

    pub fn is_free(&self, var: &str) -> bool {
        match self {
            Formula::Atom(a) => a.args.iter().any(|t| t.contains_var(var)),
            Formula::Forall(v, b) | Formula::Exists(v, b) => v != var && b.is_free(var),
            _ => self.children().into_iter().any(|c| c.is_free(var)),
        }
    }

    /// Binder names in pre-order, with repetitions.
    pub fn bound_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_bound(&mut out);
        out
    }

    fn collect_bound(&self, out: &mut Vec<String>) {
        if let Some((_, v, _)) = self.as_quantifier() {
            out.push(v.to_string());
        }
        self.children()
            .into_iter()
            .for_each(|c| c.collect_bound(out));
    }

    /// Every variable name that occurs, bound or free.
    pub fn all_var_names(&self) -> BTreeSet<String> {
        let mut out: BTreeSet<String> = self.bound_vars().into_iter().collect();
        self.visit_atoms(&mut |a| out.extend(a.vars()));
        out
    }

    pub fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a Atom)) {
        match self {
            Formula::Atom(a) => f(a),
            _ => self.children().into_iter().for_each(|c| c.visit_atoms(f)),
        }
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.visit_atoms(&mut |a| out.push(a));
        out
    }

    /// True when all binders are pairwise distinct and none is also free.
    pub fn is_rectified(&self) -> bool {
        let bound = self.bound_vars();
        let unique: BTreeSet<_> = bound.iter().collect();
        let free = self.free_vars();
        unique.len() == bound.len() && bound.iter().all(|b| !free.contains(b))
    }

    /// Number of connective and quantifier nodes on the longest branch.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            _ => {
                1 + self
                    .children()
                    .into_iter()
                    .map(Formula::depth)
                    .max()
                    .unwrap_or(0)
            }
        }
    }
}

impl From<Atom> for Formula {
    fn from(a: Atom) -> Self {
        Formula::Atom(a)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        super::parser::parse_formula(&text).map_err(serde::de::Error::custom)
    }
}
