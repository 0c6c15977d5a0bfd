//! Propositional validity of quantifier-free sequents.
//!
//! Atoms are interned as propositional variables, the negated sequent is
//! put into CNF with a Tseitin encoding, and an iterative DPLL search with
//! two watched literals looks for a model. A model is a falsifying
//! assignment of the sequent.

use std::collections::{BTreeMap, HashMap};

use crate::logic::{Atom, Formula};

use super::deep::DeepSequent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Lit(u32);

impl Lit {
    fn new(var: u32, negated: bool) -> Lit {
        Lit(var << 1 | negated as u32)
    }

    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    fn negated(self) -> bool {
        self.0 & 1 == 1
    }

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Default)]
struct Encoder<'a> {
    atoms: Vec<&'a Atom>,
    atom_ids: HashMap<&'a Atom, u32>,
    gates: HashMap<&'a Formula, Lit>,
    num_vars: u32,
    clauses: Vec<Vec<Lit>>,
}

impl<'a> Encoder<'a> {
    fn fresh(&mut self) -> u32 {
        self.num_vars += 1;
        self.num_vars - 1
    }

    fn encode(&mut self, f: &'a Formula) -> Lit {
        if let Some(&l) = self.gates.get(f) {
            return l;
        }
        let lit = match f {
            Formula::Atom(a) => {
                let id = match self.atom_ids.get(a) {
                    Some(&id) => id,
                    None => {
                        let id = self.fresh();
                        self.atoms.push(a);
                        self.atom_ids.insert(a, id);
                        id
                    }
                };
                Lit::new(id, false)
            }
            Formula::Neg(g) => self.encode(g).not(),
            Formula::And(l, r) => {
                let (a, b) = (self.encode(l), self.encode(r));
                let g = Lit::new(self.fresh(), false);
                self.clauses.push(vec![g.not(), a]);
                self.clauses.push(vec![g.not(), b]);
                self.clauses.push(vec![g, a.not(), b.not()]);
                g
            }
            Formula::Or(l, r) | Formula::Imp(l, r) => {
                let a = self.encode(l);
                let a = if matches!(f, Formula::Imp(..)) {
                    a.not()
                } else {
                    a
                };
                let b = self.encode(r);
                let g = Lit::new(self.fresh(), false);
                self.clauses.push(vec![g.not(), a, b]);
                self.clauses.push(vec![g, a.not()]);
                self.clauses.push(vec![g, b.not()]);
                g
            }
            Formula::Forall(..) | Formula::Exists(..) => {
                panic!("quantifier in a deep sequent: {f}")
            }
        };
        self.gates.insert(f, lit);
        lit
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Value {
    Unassigned,
    True,
    False,
}

struct Solver {
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<usize>>,
    values: Vec<Value>,
    /// Assigned literals in order; the flag marks decisions not yet flipped.
    trail: Vec<(Lit, bool)>,
    head: usize,
}

impl Solver {
    fn value(&self, l: Lit) -> Value {
        match (self.values[l.var()], l.negated()) {
            (Value::Unassigned, _) => Value::Unassigned,
            (Value::True, false) | (Value::False, true) => Value::True,
            _ => Value::False,
        }
    }

    fn assign(&mut self, l: Lit, decision: bool) {
        self.values[l.var()] = if l.negated() {
            Value::False
        } else {
            Value::True
        };
        self.trail.push((l, decision));
    }

    /// Unit propagation; `false` on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let falsified = self.trail[self.head].0.not();
            self.head += 1;
            let watching = std::mem::take(&mut self.watches[falsified.index()]);
            let mut keep = Vec::with_capacity(watching.len());
            let mut conflict = false;
            for (k, &ci) in watching.iter().enumerate() {
                if conflict {
                    keep.extend_from_slice(&watching[k..]);
                    break;
                }
                let clause = &mut self.clauses[ci];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let other = clause[0];
                let other_value = match (self.values[other.var()], other.negated()) {
                    (Value::Unassigned, _) => Value::Unassigned,
                    (Value::True, false) | (Value::False, true) => Value::True,
                    _ => Value::False,
                };
                if other_value == Value::True {
                    keep.push(ci);
                    continue;
                }
                let replacement = (2..clause.len()).find(|&j| {
                    let l = clause[j];
                    !matches!(
                        (self.values[l.var()], l.negated()),
                        (Value::True, true) | (Value::False, false)
                    )
                });
                if let Some(j) = replacement {
                    clause.swap(1, j);
                    let new_watch = clause[1];
                    self.watches[new_watch.index()].push(ci);
                    continue;
                }
                keep.push(ci);
                match other_value {
                    Value::Unassigned => self.assign(other, false),
                    _ => conflict = true,
                }
            }
            self.watches[falsified.index()] = keep;
            if conflict {
                return false;
            }
        }
        true
    }

    /// Undoes assignments up to the most recent unflipped decision and
    /// asserts its opposite; `false` when no such decision is left.
    fn backtrack(&mut self) -> bool {
        while let Some((l, decision)) = self.trail.pop() {
            self.values[l.var()] = Value::Unassigned;
            if decision {
                self.head = self.trail.len();
                self.assign(l.not(), false);
                return true;
            }
        }
        false
    }

    fn solve(clauses: Vec<Vec<Lit>>, num_vars: usize) -> Option<Vec<bool>> {
        let mut s = Solver {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            values: vec![Value::Unassigned; num_vars],
            trail: Vec::new(),
            head: 0,
        };
        let mut units = Vec::new();
        for mut c in clauses {
            c.sort_by_key(|l| l.0);
            c.dedup();
            if c.windows(2).any(|w| w[0].var() == w[1].var()) {
                continue; // tautological clause
            }
            match c.len() {
                0 => return None,
                1 => units.push(c[0]),
                _ => {
                    let ci = s.clauses.len();
                    s.watches[c[0].index()].push(ci);
                    s.watches[c[1].index()].push(ci);
                    s.clauses.push(c);
                }
            }
        }
        for u in units {
            match s.value(u) {
                Value::True => {}
                Value::False => return None,
                Value::Unassigned => s.assign(u, false),
            }
        }
        let mut next_var = 0;
        loop {
            if !s.propagate() {
                if !s.backtrack() {
                    return None;
                }
                next_var = 0;
                continue;
            }
            while next_var < num_vars && s.values[next_var] != Value::Unassigned {
                next_var += 1;
            }
            if next_var == num_vars {
                return Some(s.values.iter().map(|v| *v == Value::True).collect());
            }
            s.assign(Lit::new(next_var as u32, true), true);
        }
    }
}

/// A truth assignment to atoms, keyed by the atom's textual form.
pub type Assignment = BTreeMap<String, bool>;

/// Whether the conjunction of the antecedent implies the disjunction of the
/// succedent, with every distinct atom treated as an independent
/// proposition. On failure, returns an assignment making every antecedent
/// formula true and every succedent formula false.
pub fn is_tautology(ds: &DeepSequent) -> (bool, Option<Assignment>) {
    let mut enc = Encoder::default();
    let mut roots = Vec::new();
    for f in &ds.antecedent {
        roots.push(enc.encode(f));
    }
    for f in &ds.succedent {
        roots.push(enc.encode(f).not());
    }
    let mut clauses = std::mem::take(&mut enc.clauses);
    clauses.extend(roots.into_iter().map(|l| vec![l]));
    match Solver::solve(clauses, enc.num_vars as usize) {
        None => (true, None),
        Some(model) => {
            let assignment = enc
                .atoms
                .iter()
                .map(|a| (a.to_string(), model[enc.atom_ids[a] as usize]))
                .collect();
            (false, Some(assignment))
        }
    }
}
