//! Matching generated clauses to the clauses of a trace.

use std::collections::BTreeMap;

use super::dnf::GeneratedClause;
use super::trace::{ClauseOrigin, TraceClause};
use crate::logic::{Literal, Matcher, Substitution};
use crate::verit::{match_axiom_instance, AxiomKind, AxiomMatch, SchemaError};

/// A generated clause matched to a trace clause: literal `i` of the trace
/// clause is the matcher applied to literal `permutation[i]` of the
/// generated clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseMatch {
    pub generated: usize,
    pub trace_clause: String,
    pub permutation: Vec<usize>,
    pub matcher: Substitution,
}

impl ClauseMatch {
    pub fn verify(&self, generated: &[Literal], trace: &[Literal]) -> bool {
        let mut seen = vec![false; generated.len()];
        self.permutation.len() == trace.len()
            && trace.len() == generated.len()
            && self.permutation.iter().zip(trace).all(|(&j, t)| {
                j < generated.len()
                    && !std::mem::replace(&mut seen[j], true)
                    && generated[j].positive == t.positive
                    && self.matcher.apply_atom(&generated[j].atom) == t.atom
            })
    }
}

/// A trace clause with no matching generated clause, and the generated
/// clauses whose literal signatures are closest to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unmatched {
    pub trace_clause: String,
    /// `(generated clause index, signature distance)`, closest first.
    pub nearest: Vec<(usize, usize)>,
}

type Signature<'a> = BTreeMap<(bool, &'a str, usize), usize>;

fn signature(lits: &[Literal]) -> Signature<'_> {
    let mut out = BTreeMap::new();
    for l in lits {
        *out.entry(l.signature()).or_insert(0) += 1;
    }
    out
}

/// Size of the symmetric difference of two signature multisets.
fn distance(a: &Signature, b: &Signature) -> usize {
    let mut d = 0;
    for (k, &n) in a {
        d += n.abs_diff(b.get(k).copied().unwrap_or(0));
    }
    for (k, &n) in b {
        if !a.contains_key(k) {
            d += n;
        }
    }
    d
}

fn search(
    generated: &[Literal],
    trace: &[Literal],
    i: usize,
    used: &mut [bool],
    perm: &mut Vec<usize>,
    m: Matcher,
) -> Option<Matcher> {
    let Some(target) = trace.get(i) else {
        return Some(m);
    };
    for j in 0..generated.len() {
        if used[j] || generated[j].signature() != target.signature() {
            continue;
        }
        let Some(next) = m.extend_atom(&generated[j].atom, &target.atom) else {
            continue;
        };
        used[j] = true;
        perm.push(j);
        if let Some(found) = search(generated, trace, i + 1, used, perm, next) {
            return Some(found);
        }
        perm.pop();
        used[j] = false;
    }
    None
}

/// Finds a literal permutation and a matcher taking `generated` to `trace`.
pub fn match_clause(
    generated: &[Literal],
    trace: &[Literal],
) -> Option<(Vec<usize>, Substitution)> {
    if generated.len() != trace.len() || signature(generated) != signature(trace) {
        return None;
    }
    let mut perm = Vec::with_capacity(trace.len());
    let m = search(
        generated,
        trace,
        0,
        &mut vec![false; generated.len()],
        &mut perm,
        Matcher::new(),
    )?;
    Some((perm, m.into_substitution()))
}

/// Matches every trace clause that comes from an input formula against the
/// generated clauses of that formula. Equality clauses are skipped.
pub fn match_clauses(
    generated: &[GeneratedClause],
    trace: &[TraceClause],
) -> (Vec<ClauseMatch>, Vec<Unmatched>) {
    let mut matches = Vec::new();
    let mut unmatched = Vec::new();
    for tc in trace {
        let ClauseOrigin::Input(source) = &tc.origin else {
            continue;
        };
        let candidates: Vec<usize> = (0..generated.len())
            .filter(|&g| &generated[g].source == source)
            .collect();
        let found = candidates.iter().find_map(|&g| {
            match_clause(&generated[g].literals, &tc.literals).map(|(permutation, matcher)| {
                ClauseMatch {
                    generated: g,
                    trace_clause: tc.number.clone(),
                    permutation,
                    matcher,
                }
            })
        });
        match found {
            Some(m) => matches.push(m),
            None => {
                let pool = if candidates.is_empty() {
                    (0..generated.len()).collect()
                } else {
                    candidates
                };
                let sig = signature(&tc.literals);
                let mut nearest: Vec<(usize, usize)> = pool
                    .into_iter()
                    .map(|g| (g, distance(&signature(&generated[g].literals), &sig)))
                    .collect();
                nearest.sort_by_key(|&(g, d)| (d, g));
                nearest.truncate(3);
                unmatched.push(Unmatched {
                    trace_clause: tc.number.clone(),
                    nearest,
                });
            }
        }
    }
    (matches, unmatched)
}

/// Matches an equality-theory clause of the positive representation, which
/// is a negated axiom matrix, against the equality schemas. Transitivity is
/// tried before predicate congruence, which also covers `=` with omitted
/// premises.
pub fn match_equality_clause(clause: &[Literal]) -> Result<AxiomMatch, SchemaError> {
    let negated: Vec<Literal> = clause.iter().map(Literal::negated).collect();
    let kinds = [
        AxiomKind::Reflexivity,
        AxiomKind::Symmetry,
        AxiomKind::FnCongruence,
        AxiomKind::Transitivity,
        AxiomKind::PredCongruence,
    ];
    let mut last = None;
    for kind in kinds {
        match match_axiom_instance(kind, &negated) {
            Ok(m) => return Ok(m),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one kind tried"))
}
