//! Clausal form in the positive representation, without renaming variables.
//!
//! Axioms are negated, conjectures kept. Each formula is put into negation
//! normal form, quantifiers are dropped (bound variables are pairwise
//! distinct, so their names stay unambiguous) and the matrix is distributed
//! into a disjunction of conjunctive clauses. A conjunction whose
//! distribution would produce more clauses than the threshold gets its
//! larger side replaced by a definition atom `defN(vars)`, whose own clauses
//! are `¬defN(vars) ∧ C` for each clause `C` of that side.

use crate::logic::{Atom, Formula, Literal, Term};

use super::trace::Role;

/// Default bound on the clause count of a distributed conjunction.
pub const DEFAULT_DEF_THRESHOLD: usize = 4;

/// Prefix of introduced definition predicates.
pub const DEF_PREFIX: &str = "def";

/// A clause produced from one input formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedClause {
    /// Name of the input formula.
    pub source: String,
    /// Conjunction of literals. Variables are the bound variables of the
    /// source formula.
    pub literals: Vec<Literal>,
    /// Whether this clause defines a definition atom.
    pub definition: bool,
}

enum Nnf {
    Lit(Literal),
    And(Box<Nnf>, Box<Nnf>),
    Or(Box<Nnf>, Box<Nnf>),
}

fn nnf(f: &Formula, positive: bool) -> Nnf {
    let both = |l: &Formula, lp: bool, r: &Formula, rp: bool, conj: bool| {
        let (l, r) = (Box::new(nnf(l, lp)), Box::new(nnf(r, rp)));
        if conj {
            Nnf::And(l, r)
        } else {
            Nnf::Or(l, r)
        }
    };
    match f {
        Formula::Atom(a) => Nnf::Lit(Literal {
            positive,
            atom: a.clone(),
        }),
        Formula::Neg(g) => nnf(g, !positive),
        Formula::And(l, r) => both(l, positive, r, positive, positive),
        Formula::Or(l, r) => both(l, positive, r, positive, !positive),
        Formula::Imp(l, r) => both(l, !positive, r, positive, !positive),
        Formula::Forall(_, body) | Formula::Exists(_, body) => nnf(body, positive),
    }
}

struct Dnf<'a> {
    threshold: usize,
    counter: &'a mut usize,
    source: &'a str,
    definitions: Vec<GeneratedClause>,
}

fn vars_in_order(clauses: &[Vec<Literal>]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    fn term(t: &Term, out: &mut Vec<String>) {
        match t {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| term(a, out)),
        }
    }
    for l in clauses.iter().flatten() {
        l.atom.args.iter().for_each(|a| term(a, &mut out));
    }
    out
}

impl Dnf<'_> {
    fn define(&mut self, clauses: Vec<Vec<Literal>>) -> Vec<Vec<Literal>> {
        *self.counter += 1;
        let args = vars_in_order(&clauses).into_iter().map(Term::var).collect();
        let def = Atom::new(format!("{DEF_PREFIX}{}", self.counter), args);
        for c in clauses {
            let mut literals = vec![Literal::neg(def.clone())];
            literals.extend(c);
            self.definitions.push(GeneratedClause {
                source: self.source.to_string(),
                literals: dedup(literals),
                definition: true,
            });
        }
        vec![vec![Literal::pos(def)]]
    }

    fn go(&mut self, n: &Nnf) -> Vec<Vec<Literal>> {
        match n {
            Nnf::Lit(l) => vec![vec![l.clone()]],
            Nnf::Or(l, r) => {
                let mut out = self.go(l);
                out.extend(self.go(r));
                out
            }
            Nnf::And(l, r) => {
                let mut left = self.go(l);
                let mut right = self.go(r);
                if left.len().saturating_mul(right.len()) > self.threshold {
                    if right.len() >= left.len() {
                        right = self.define(right);
                    } else {
                        left = self.define(left);
                    }
                }
                let mut out = Vec::with_capacity(left.len() * right.len());
                for a in &left {
                    for b in &right {
                        out.push(dedup(a.iter().chain(b).cloned().collect()));
                    }
                }
                out
            }
        }
    }
}

fn dedup(lits: Vec<Literal>) -> Vec<Literal> {
    let mut out: Vec<Literal> = Vec::with_capacity(lits.len());
    for l in lits {
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

/// Clauses of each input formula, definitions after the clauses that use
/// them. `threshold` of `usize::MAX` gives the naive distribution.
pub fn definitional_dnf<'a>(
    inputs: impl IntoIterator<Item = (&'a str, Role, &'a Formula)>,
    threshold: usize,
) -> Vec<GeneratedClause> {
    let mut counter = 0;
    let mut out = Vec::new();
    for (name, role, formula) in inputs {
        let n = nnf(formula, role == Role::Conjecture);
        let mut d = Dnf {
            threshold,
            counter: &mut counter,
            source: name,
            definitions: Vec::new(),
        };
        let clauses = d.go(&n);
        let definitions = d.definitions;
        out.extend(clauses.into_iter().map(|literals| GeneratedClause {
            source: name.to_string(),
            literals,
            definition: false,
        }));
        out.extend(definitions);
    }
    out
}
