use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use exproof_bench::{formulas_with_instances, leancop_chain, qf_sequents, transitivity_chain};
use exproof_core::check::{is_tautology, DeepSequent};
use exproof_core::leancop::{import_leancop, parse_leancop, LeanCoPOptions};
use exproof_core::logic::Polarity;
use exproof_core::verit::{import_verit, parse_verit};
use exproof_core::{expand_formula, verdict};

fn tautology(c: &mut Criterion) {
    let sequents: Vec<DeepSequent> = qf_sequents(200, 12, 1)
        .into_iter()
        .map(|s| DeepSequent {
            antecedent: s.antecedent,
            succedent: s.succedent,
        })
        .collect();
    c.bench_function("is_tautology/200 sequents", |b| {
        b.iter(|| {
            sequents
                .iter()
                .filter(|s| is_tautology(black_box(s)).0)
                .count()
        })
    });
}

fn expansion(c: &mut Criterion) {
    let cases = formulas_with_instances(200, 2);
    c.bench_function("expand_formula/200 formulas", |b| {
        b.iter(|| {
            for (f, sigmas) in &cases {
                black_box(expand_formula(f, sigmas, Polarity::Positive).unwrap());
            }
        })
    });
}

fn imports(c: &mut Criterion) {
    let mut group = c.benchmark_group("import_and_check");
    for n in [4, 16, 64] {
        let text = transitivity_chain(n);
        group.bench_with_input(BenchmarkId::new("verit", n), &text, |b, text| {
            b.iter(|| {
                let (es, _) = import_verit(&parse_verit(text).unwrap()).unwrap();
                verdict(&es).is_proof
            })
        });
        let text = leancop_chain(n);
        let options = LeanCoPOptions::default();
        group.bench_with_input(BenchmarkId::new("leancop", n), &text, |b, text| {
            b.iter(|| {
                let (es, _) = import_leancop(&parse_leancop(text).unwrap(), &options).unwrap();
                verdict(&es).is_proof
            })
        });
    }
    group.finish();
}

criterion_group!(benches, tautology, expansion, imports);
criterion_main!(benches);
