//! Workloads for the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use exproof_core::logic::{Polarity, Sequent, Substitution};
use exproof_core::testkit::{random_instance_set, random_qf_sequent, random_rectified_formula};
use exproof_core::Formula;

/// A refutation of `c0 = c1, ..., c(n-1) = cn, ~(c0 = cn)` with one
/// transitivity leaf of length `n`.
pub fn transitivity_chain(n: usize) -> String {
    let mut out = String::new();
    for i in 0..n {
        out.push_str(&format!(
            "(set .e{i} (input :conclusion ((= c{i} c{}))))\n",
            i + 1
        ));
    }
    out.push_str(&format!(
        "(set .g (input :conclusion ((not (= c0 c{n})))))\n"
    ));
    let premises: Vec<String> = (0..n)
        .map(|i| format!("(not (= c{i} c{}))", i + 1))
        .collect();
    out.push_str(&format!(
        "(set .t (eq_transitive :conclusion ({} (= c0 c{n}))))\n",
        premises.join(" ")
    ));
    out
}

/// `![X]: (p(X) => p(f(X)))`, `p(a)` proving `p(f^n(a))` with `n` extension
/// steps.
pub fn leancop_chain(n: usize) -> String {
    let fa = |k: usize| (0..k).fold("a".to_string(), |t, _| format!("f({t})"));
    let mut out = String::from(
        "fof(step, axiom, ![X]: (p(X) => p(f(X)))).\n\
         fof(base, axiom, p(a)).\n",
    );
    out.push_str(&format!("fof(goal, conjecture, p({})).\n", fa(n)));
    out.push_str("cnf(1, plain, [p(X1), -p(f(X1))], clausify(step)).\n");
    out.push_str("cnf(2, plain, [-p(a)], clausify(base)).\n");
    out.push_str(&format!("cnf(3, plain, [p({})], clausify(goal)).\n", fa(n)));
    out.push_str("cnf(s0, plain, [], start(3)).\n");
    for k in (0..n).rev() {
        out.push_str(&format!(
            "cnf(s{}, plain, [], extension(1, bind([X1], [{}]))).\n",
            n - k,
            fa(k)
        ));
    }
    out.push_str("cnf(s_end, plain, [], extension(2)).\n");
    out
}

pub fn qf_sequents(count: usize, max_atoms: usize, seed: u64) -> Vec<Sequent> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_qf_sequent(&mut rng, max_atoms))
        .collect()
}

pub fn formulas_with_instances(count: usize, seed: u64) -> Vec<(Formula, Vec<Substitution>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let f = random_rectified_formula(&mut rng, 5);
            let sigmas = random_instance_set(&mut rng, &f, Polarity::Positive);
            (f, sigmas)
        })
        .collect()
}
