//! Equality axiom schemas and matching of their quantifier-free instances.

use std::fmt;

use crate::logic::{Atom, Formula, Literal, Matcher, Substitution, Term, EQ};

/// Which axiom a leaf clause claims to instantiate, before its size is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomKind {
    Transitivity,
    FnCongruence,
    PredCongruence,
    Reflexivity,
    Symmetry,
}

/// A fully determined axiom schema.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemaKind {
    /// `x0 = x1 ∧ … ∧ x(n-1) = xn → x0 = xn`
    Transitivity(usize),
    /// `x0 = y0 ∧ … → f(x0, …) = f(y0, …)`
    FnCongruence(String, usize),
    /// `x0 = y0 ∧ … ∧ p(x0, …) → p(y0, …)`
    PredCongruence(String, usize),
    Symmetry,
    Reflexivity,
}

impl fmt::Display for SchemaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemaKind::Transitivity(n) => write!(f, "transitivity/{n}"),
            SchemaKind::FnCongruence(s, n) => write!(f, "congruence {s}/{n}"),
            SchemaKind::PredCongruence(s, n) => write!(f, "predicate congruence {s}/{n}"),
            SchemaKind::Symmetry => f.write_str("symmetry"),
            SchemaKind::Reflexivity => f.write_str("reflexivity"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSchema {
    pub kind: SchemaKind,
    /// Closed formula, universally quantified over `vars` in order.
    pub formula: Formula,
    pub vars: Vec<String>,
    /// The matrix read as a clause: negated premises followed by the
    /// conclusion.
    pub clause: Vec<Literal>,
    /// Premises `x_i = y_i` that an instance may leave out when both sides
    /// are instantiated by the same term.
    pub optional: Vec<bool>,
}

impl AxiomSchema {
    /// Quantifier-free body.
    pub fn matrix(&self) -> &Formula {
        let mut f = &self.formula;
        while let Formula::Forall(_, body) = f {
            f = body;
        }
        f
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemaError {
    #[error("transitivity needs a chain of at least 2 equations, got {0}")]
    ChainTooShort(usize),
    #[error("congruence for `{0}` needs arity at least 1")]
    ZeroArity(String),
    #[error("clause {clause} does not have the shape of a {kind:?} instance")]
    Shape { kind: AxiomKind, clause: String },
    #[error("clause {clause} is not an instance of {schema}")]
    NoMatch { schema: String, clause: String },
}

fn var(prefix: &str, i: usize) -> Term {
    Term::var(format!("{prefix}{i}"))
}

fn eq(l: Term, r: Term) -> Formula {
    Formula::eq(l, r)
}

/// Clause read of `A1 ∧ … ∧ Ak → B` (or of an atom).
fn matrix_clause(matrix: &Formula) -> Vec<Literal> {
    fn conjuncts(f: &Formula, out: &mut Vec<Literal>) {
        match f {
            Formula::And(l, r) => {
                conjuncts(l, out);
                conjuncts(r, out);
            }
            Formula::Atom(a) => out.push(Literal::neg(a.clone())),
            other => unreachable!("schema premise {other}"),
        }
    }
    match matrix {
        Formula::Imp(premises, conclusion) => {
            let Formula::Atom(b) = conclusion.as_ref() else {
                unreachable!("schema conclusion {conclusion}")
            };
            let mut out = Vec::new();
            conjuncts(premises, &mut out);
            out.push(Literal::pos(b.clone()));
            out
        }
        Formula::Atom(a) => vec![Literal::pos(a.clone())],
        other => unreachable!("schema matrix {other}"),
    }
}

pub fn make_schema(kind: SchemaKind) -> Result<AxiomSchema, SchemaError> {
    let (vars, matrix, optional_premises): (Vec<Term>, Formula, usize) = match &kind {
        SchemaKind::Transitivity(n) => {
            if *n < 2 {
                return Err(SchemaError::ChainTooShort(*n));
            }
            let xs: Vec<Term> = (0..=*n).map(|i| var("X", i)).collect();
            let chain = Formula::conjunction(xs.windows(2).map(|w| eq(w[0].clone(), w[1].clone())))
                .unwrap();
            let m = Formula::imp(chain, eq(xs[0].clone(), xs[*n].clone()));
            (xs, m, 0)
        }
        SchemaKind::FnCongruence(f, n) | SchemaKind::PredCongruence(f, n) => {
            if *n == 0 {
                return Err(SchemaError::ZeroArity(f.clone()));
            }
            let xs: Vec<Term> = (0..*n).map(|i| var("X", i)).collect();
            let ys: Vec<Term> = (0..*n).map(|i| var("Y", i)).collect();
            let mut premises: Vec<Formula> = xs
                .iter()
                .zip(&ys)
                .map(|(x, y)| eq(x.clone(), y.clone()))
                .collect();
            let conclusion = if matches!(kind, SchemaKind::FnCongruence(..)) {
                eq(
                    Term::app(f.clone(), xs.clone()),
                    Term::app(f.clone(), ys.clone()),
                )
            } else {
                premises.push(Formula::Atom(Atom::new(f.clone(), xs.clone())));
                Formula::Atom(Atom::new(f.clone(), ys.clone()))
            };
            let m = Formula::imp(Formula::conjunction(premises).unwrap(), conclusion);
            (xs.into_iter().chain(ys).collect(), m, *n)
        }
        SchemaKind::Symmetry => {
            let (x, y) = (Term::var("X"), Term::var("Y"));
            (
                vec![x.clone(), y.clone()],
                Formula::imp(eq(x.clone(), y.clone()), eq(y, x)),
                0,
            )
        }
        SchemaKind::Reflexivity => {
            let x = Term::var("X");
            (vec![x.clone()], eq(x.clone(), x), 0)
        }
    };
    let vars: Vec<String> = vars
        .iter()
        .map(|v| v.as_var().unwrap().to_string())
        .collect();
    let formula = vars
        .iter()
        .rev()
        .fold(matrix.clone(), |f, v| Formula::forall(v.clone(), f));
    let clause = matrix_clause(&matrix);
    let optional = (0..clause.len()).map(|i| i < optional_premises).collect();
    Ok(AxiomSchema {
        kind,
        formula,
        vars,
        clause,
        optional,
    })
}

/// How a clause instantiates a schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomMatch {
    pub schema: AxiomSchema,
    pub sigma: Substitution,
    /// For each schema literal, the clause literal it became, or `None` for
    /// an omitted reflexive premise.
    pub assignment: Vec<Option<usize>>,
    /// Schema literals whose equation appears with its sides swapped.
    pub flipped: Vec<bool>,
}

impl AxiomMatch {
    pub fn flip_count(&self) -> usize {
        self.flipped.iter().filter(|&&f| f).count()
    }

    /// Terms `t` for which an omitted premise `t = t` is implied.
    pub fn implicit_reflexive(&self) -> Vec<Term> {
        self.assignment
            .iter()
            .zip(&self.schema.clause)
            .filter(|(a, _)| a.is_none())
            .map(|(_, l)| self.sigma.apply_term(&l.atom.args[0]))
            .collect()
    }

    /// The instantiated schema literal `i` as it must appear in the clause.
    pub fn instance_literal(&self, i: usize) -> Literal {
        let l = &self.schema.clause[i];
        let inst = Literal {
            positive: l.positive,
            atom: self.sigma.apply_atom(&l.atom),
        };
        if self.flipped[i] {
            inst.flipped()
        } else {
            inst
        }
    }

    /// Re-applies the substitution and checks it reproduces `clause` up to
    /// the recorded permutation, flips and omitted reflexive premises.
    pub fn verify(&self, clause: &[Literal]) -> bool {
        let mut used = vec![false; clause.len()];
        for (i, a) in self.assignment.iter().enumerate() {
            let inst = self.instance_literal(i);
            match a {
                Some(j) => {
                    if *j >= clause.len() || used[*j] || clause[*j] != inst {
                        return false;
                    }
                    used[*j] = true;
                }
                None => {
                    let ok = self.schema.optional[i]
                        && !inst.positive
                        && inst.atom.is_eq()
                        && inst.atom.args[0] == inst.atom.args[1];
                    if !ok {
                        return false;
                    }
                }
            }
        }
        used.into_iter().all(|u| u)
    }
}

/// Exhaustive search is used up to this many clause literals; longer
/// clauses are matched greedily.
pub const EXHAUSTIVE_LIMIT: usize = 8;

struct Search<'a> {
    schema: &'a AxiomSchema,
    clause: &'a [Literal],
    order: Vec<usize>,
    exhaustive: bool,
    used: Vec<bool>,
    assignment: Vec<Option<usize>>,
    flipped: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, k: usize, m: Matcher) -> Option<Matcher> {
        let Some(&i) = self.order.get(k) else {
            return self.complete(&m).then_some(m);
        };
        let pat = &self.schema.clause[i];
        for j in 0..self.clause.len() {
            let target = &self.clause[j];
            if self.used[j] || target.positive != pat.positive {
                continue;
            }
            let flips: &[bool] = if pat.atom.is_eq() {
                &[false, true]
            } else {
                &[false]
            };
            for &flip in flips {
                let p = if flip {
                    pat.atom.flipped()
                } else {
                    pat.atom.clone()
                };
                let Some(next) = m.extend_atom(&p, &target.atom) else {
                    continue;
                };
                self.used[j] = true;
                self.assignment[i] = Some(j);
                self.flipped[i] = flip;
                let found = self.run(k + 1, next);
                self.used[j] = false;
                if found.is_some() || !self.exhaustive {
                    return found;
                }
            }
        }
        if self.schema.optional[i] {
            self.assignment[i] = None;
            self.flipped[i] = false;
            return self.run(k + 1, m);
        }
        None
    }

    fn complete(&self, m: &Matcher) -> bool {
        self.used.iter().all(|&u| u)
            && self.assignment.iter().enumerate().all(|(i, a)| {
                a.is_some() || {
                    let args = &self.schema.clause[i].atom.args;
                    let side = |t: &Term| t.as_var().and_then(|v| m.get(v));
                    matches!((side(&args[0]), side(&args[1])), (Some(l), Some(r)) if l == r)
                }
            })
    }
}

/// Matches `clause` against `schema`, trying literal permutations and
/// equation flips.
pub fn match_schema(schema: &AxiomSchema, clause: &[Literal]) -> Option<AxiomMatch> {
    let n = schema.clause.len();
    // Conclusion first: it binds the most variables.
    let order: Vec<usize> = std::iter::once(n - 1).chain(0..n - 1).collect();
    let mut s = Search {
        schema,
        clause,
        order,
        exhaustive: clause.len() <= EXHAUSTIVE_LIMIT,
        used: vec![false; clause.len()],
        assignment: vec![None; n],
        flipped: vec![false; n],
    };
    let m = s.run(0, Matcher::new())?;
    Some(AxiomMatch {
        schema: schema.clone(),
        sigma: m.into_substitution(),
        assignment: s.assignment,
        flipped: s.flipped,
    })
}

/// Reads the size parameters off `clause`, builds the schema and matches.
pub fn match_axiom_instance(
    kind: AxiomKind,
    clause: &[Literal],
) -> Result<AxiomMatch, SchemaError> {
    let shape = || SchemaError::Shape {
        kind,
        clause: show_clause(clause),
    };
    let positives: Vec<&Literal> = clause.iter().filter(|l| l.positive).collect();
    let [conclusion] = positives.as_slice() else {
        return Err(shape());
    };
    let schema_kind = match kind {
        AxiomKind::Transitivity => SchemaKind::Transitivity(clause.len() - 1),
        AxiomKind::FnCongruence => match conclusion.atom.args.as_slice() {
            [Term::App(f, xs), Term::App(g, ys)]
                if conclusion.atom.is_eq() && f == g && xs.len() == ys.len() =>
            {
                SchemaKind::FnCongruence(f.clone(), xs.len())
            }
            _ => return Err(shape()),
        },
        AxiomKind::PredCongruence => {
            SchemaKind::PredCongruence(conclusion.atom.pred.clone(), conclusion.atom.args.len())
        }
        AxiomKind::Reflexivity => SchemaKind::Reflexivity,
        AxiomKind::Symmetry => SchemaKind::Symmetry,
    };
    let schema = make_schema(schema_kind)?;
    if clause.len() > schema.clause.len() {
        return Err(shape());
    }
    match_schema(&schema, clause).ok_or_else(|| SchemaError::NoMatch {
        schema: schema.kind.to_string(),
        clause: show_clause(clause),
    })
}

pub(crate) fn show_clause(clause: &[Literal]) -> String {
    let lits: Vec<String> = clause.iter().map(ToString::to_string).collect();
    format!("[{}]", lits.join(", "))
}

/// Whether `a` is an equation between identical terms.
pub(crate) fn is_reflexive_eq(a: &Atom) -> bool {
    a.pred == EQ && a.args.len() == 2 && a.args[0] == a.args[1]
}
