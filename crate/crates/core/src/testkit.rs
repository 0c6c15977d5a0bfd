//! Random generators and brute-force oracles for tests and benchmarks.
//!
//! The oracles here share no code with the checkers they are compared
//! against: formulas are evaluated by direct recursion and validity is
//! decided by enumerating every assignment.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::check::{DependencyGraph, NodePath, Occurrence};
use crate::logic::{
    quantifier_strengths, Atom, Connective, Formula, Polarity, Quantifier, Sequent, SequentPos,
    Side, Strength, Substitution, Term,
};

const PREDICATES: [(&str, usize); 4] = [("p", 1), ("q", 2), ("r", 0), ("s", 1)];
const CONSTANTS: [&str; 3] = ["a", "b", "c"];

fn random_term(rng: &mut impl Rng, scope: &[String], depth: usize) -> Term {
    match rng.gen_range(0..4) {
        0 | 1 if !scope.is_empty() => Term::var(scope.choose(rng).unwrap().clone()),
        2 if depth > 0 => Term::app("f", vec![random_term(rng, scope, depth - 1)]),
        _ => Term::constant(*CONSTANTS.choose(rng).unwrap()),
    }
}

fn random_atom(rng: &mut impl Rng, scope: &[String]) -> Atom {
    if rng.gen_bool(0.15) {
        return Atom::eq(random_term(rng, scope, 1), random_term(rng, scope, 1));
    }
    let (p, n) = *PREDICATES.choose(rng).unwrap();
    Atom::new(p, (0..n).map(|_| random_term(rng, scope, 1)).collect())
}

struct FormulaGen {
    counter: usize,
}

impl FormulaGen {
    fn go(&mut self, rng: &mut impl Rng, scope: &mut Vec<String>, depth: usize) -> Formula {
        if depth == 0 || rng.gen_bool(0.2) {
            return Formula::Atom(random_atom(rng, scope));
        }
        match rng.gen_range(0..6) {
            0 => Formula::not(self.go(rng, scope, depth - 1)),
            1..=3 => {
                let c = [Connective::And, Connective::Or, Connective::Imp][rng.gen_range(0..3)];
                let l = self.go(rng, scope, depth - 1);
                let r = self.go(rng, scope, depth - 1);
                Formula::binary(c, l, r)
            }
            _ => {
                let v = format!("X{}", self.counter);
                self.counter += 1;
                let q = if rng.gen_bool(0.5) {
                    Quantifier::Forall
                } else {
                    Quantifier::Exists
                };
                scope.push(v.clone());
                let body = self.go(rng, scope, depth - 1);
                scope.pop();
                Formula::quantified(q, v, body)
            }
        }
    }
}

/// A closed, rectified formula of depth at most `max_depth` with bound
/// variables `X0`, `X1`, ...
pub fn random_rectified_formula(rng: &mut impl Rng, max_depth: usize) -> Formula {
    FormulaGen { counter: 0 }.go(rng, &mut Vec::new(), max_depth)
}

/// One to three substitutions for `f` read at polarity `p` that satisfy the
/// construction's preconditions: every weak variable gets a ground term in
/// every substitution, and each strong variable is either left out or bound
/// to the same eigenvariable `E_<var>` everywhere.
pub fn random_instance_set(rng: &mut impl Rng, f: &Formula, p: Polarity) -> Vec<Substitution> {
    let strengths = quantifier_strengths(f, p);
    let bind_strong: BTreeMap<&str, bool> = strengths
        .iter()
        .filter(|(_, s)| *s == Strength::Strong)
        .map(|(v, _)| (v.as_str(), rng.gen_bool(0.7)))
        .collect();
    let count = rng.gen_range(1..4);
    (0..count)
        .map(|_| {
            let mut sigma = Substitution::new();
            for (v, s) in &strengths {
                match s {
                    Strength::Weak => sigma.insert(v.clone(), random_term(rng, &[], 2)),
                    Strength::Strong if bind_strong[v.as_str()] => {
                        sigma.insert(v.clone(), Term::var(format!("E_{v}")))
                    }
                    _ => {}
                }
            }
            sigma
        })
        .collect()
}

fn random_qf(rng: &mut impl Rng, atoms: &[Atom], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return Formula::Atom(atoms.choose(rng).unwrap().clone());
    }
    match rng.gen_range(0..4) {
        0 => Formula::not(random_qf(rng, atoms, depth - 1)),
        k => {
            let c = [Connective::And, Connective::Or, Connective::Imp][k - 1];
            Formula::binary(
                c,
                random_qf(rng, atoms, depth - 1),
                random_qf(rng, atoms, depth - 1),
            )
        }
    }
}

/// A quantifier-free sequent over at most `max_atoms` distinct atoms.
pub fn random_qf_sequent(rng: &mut impl Rng, max_atoms: usize) -> Sequent {
    let n = rng.gen_range(1..=max_atoms);
    let atoms: Vec<Atom> = (0..n)
        .map(|i| match i % 3 {
            0 => Atom::new(format!("p{i}"), vec![]),
            1 => Atom::new("q", vec![Term::constant(format!("c{i}"))]),
            _ => Atom::eq(Term::constant(format!("c{i}")), Term::constant("d")),
        })
        .collect();
    let ant = (0..rng.gen_range(0..4))
        .map(|_| random_qf(rng, &atoms, 4))
        .collect();
    let suc = (0..rng.gen_range(0..4))
        .map(|_| random_qf(rng, &atoms, 4))
        .collect();
    Sequent::new(ant, suc)
}

/// Truth value of a quantifier-free formula; atoms missing from the
/// assignment are false.
pub fn eval(f: &Formula, assignment: &BTreeMap<String, bool>) -> bool {
    match f {
        Formula::Atom(a) => assignment.get(&a.to_string()).copied().unwrap_or(false),
        Formula::Neg(g) => !eval(g, assignment),
        Formula::And(l, r) => eval(l, assignment) && eval(r, assignment),
        Formula::Or(l, r) => eval(l, assignment) || eval(r, assignment),
        Formula::Imp(l, r) => !eval(l, assignment) || eval(r, assignment),
        Formula::Forall(..) | Formula::Exists(..) => panic!("quantifier in {f}"),
    }
}

/// Whether the assignment makes every antecedent formula true and every
/// succedent formula false.
pub fn falsifies(s: &Sequent, assignment: &BTreeMap<String, bool>) -> bool {
    s.antecedent.iter().all(|f| eval(f, assignment))
        && s.succedent.iter().all(|f| !eval(f, assignment))
}

/// Validity by enumerating all assignments to the sequent's atoms.
pub fn truth_table_valid(s: &Sequent) -> bool {
    let atoms: BTreeSet<String> = s
        .iter()
        .flat_map(|(_, f)| {
            f.atoms()
                .into_iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        })
        .collect();
    let atoms: Vec<String> = atoms.into_iter().collect();
    assert!(atoms.len() < 24, "too many atoms for a truth table");
    (0u32..1 << atoms.len()).all(|bits| {
        let a = atoms
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), bits >> i & 1 == 1))
            .collect();
        !falsifies(s, &a)
    })
}

/// A dependency graph with `n` placeholder nodes and the given edges.
pub fn graph_from_edges(
    n: usize,
    edges: impl IntoIterator<Item = (usize, usize)>,
) -> DependencyGraph {
    DependencyGraph {
        nodes: (0..n)
            .map(|i| Occurrence {
                at: NodePath {
                    tree: SequentPos {
                        side: Side::Antecedent,
                        index: i,
                    },
                    path: vec![0],
                },
                term: Term::constant(format!("t{i}")),
            })
            .collect(),
        edges: edges.into_iter().collect(),
    }
}

/// Random directed graph on at most `max_nodes` nodes. Half of the graphs
/// are DAGs (edges only from lower to higher node under a random order).
pub fn random_graph(rng: &mut impl Rng, max_nodes: usize) -> (usize, BTreeSet<(usize, usize)>) {
    let n = rng.gen_range(1..=max_nodes);
    let dag = rng.gen_bool(0.5);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let density = rng.gen_range(0.05..0.4);
    let mut edges = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if (i != j || !dag) && (!dag || order[i] < order[j]) && rng.gen_bool(density) {
                edges.insert((i, j));
            }
        }
    }
    (n, edges)
}

/// Whether some node reaches itself, by enumerating simple paths from every
/// node.
pub fn brute_force_has_cycle(n: usize, edges: &BTreeSet<(usize, usize)>) -> bool {
    fn walk(
        start: usize,
        at: usize,
        edges: &BTreeSet<(usize, usize)>,
        on_path: &mut Vec<bool>,
    ) -> bool {
        for &(_, j) in edges.range((at, 0)..=(at, usize::MAX)) {
            if j == start {
                return true;
            }
            if !on_path[j] {
                on_path[j] = true;
                let found = walk(start, j, edges, on_path);
                on_path[j] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }
    (0..n).any(|s| {
        let mut on_path = vec![false; n];
        on_path[s] = true;
        walk(s, s, edges, &mut on_path)
    })
}
