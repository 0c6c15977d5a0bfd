//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use exproof_core::check::{
    deep_sequent, dependency_relation, is_acyclic, is_tautology, DeepSequent,
};
use exproof_core::leancop::{import_leancop, match_trace, parse_leancop, LeanCoPOptions};
use exproof_core::logic::{parse_formula, Polarity, Sequent, SequentPos, Side, Substitution, Term};
use exproof_core::testkit::{
    brute_force_has_cycle, falsifies, graph_from_edges, random_graph, random_instance_set,
    random_qf_sequent, random_rectified_formula, truth_table_valid,
};
use exproof_core::verit::{import_verit, parse_verit};
use exproof_core::{
    expand_formula, expand_sequent, verdict, ExpansionSequent, ExpansionTree, InstanceSet,
};

use common::{fixture, path_str, run};

const SHALLOW_CASES: usize = 500;
const SHALLOW_LIMIT: Duration = Duration::from_secs(10);
const TAUTOLOGY_CASES: usize = 1000;
const TAUTOLOGY_MAX_ATOMS: usize = 12;
const TAUTOLOGY_LIMIT: Duration = Duration::from_secs(30);
const GRAPH_CASES: usize = 200;
const GRAPH_MAX_NODES: usize = 10;
const FIXTURE_LIMIT: Duration = Duration::from_secs(1);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn read(rel: &str) -> String {
    std::fs::read_to_string(fixture(rel)).unwrap()
}

fn json(rel: &str) -> ExpansionSequent {
    serde_json::from_str(&read(rel)).unwrap()
}

fn shallow_inverse() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let start = Instant::now();
    for i in 0..SHALLOW_CASES {
        let f = random_rectified_formula(&mut rng, 5);
        let p = if i % 2 == 0 {
            Polarity::Positive
        } else {
            Polarity::Negative
        };
        let sigmas = random_instance_set(&mut rng, &f, p);
        let tree = expand_formula(&f, &sigmas, p).map_err(|e| format!("case {i}: {f}: {e}"))?;
        ensure(
            tree.shallow(p) == f,
            format!("case {i}: shallow differs for {f}"),
        )?;
    }
    let t = start.elapsed();
    ensure(
        t < SHALLOW_LIMIT,
        format!("{t:?} exceeds {SHALLOW_LIMIT:?}"),
    )?;
    Ok(format!("{SHALLOW_CASES} formulas in {t:.2?}"))
}

fn tautology_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let start = Instant::now();
    let mut valid = 0;
    for i in 0..TAUTOLOGY_CASES {
        let s = random_qf_sequent(&mut rng, TAUTOLOGY_MAX_ATOMS);
        let ds = DeepSequent {
            antecedent: s.antecedent.clone(),
            succedent: s.succedent.clone(),
        };
        let (taut, cex) = is_tautology(&ds);
        ensure(
            taut == truth_table_valid(&s),
            format!("case {i}: disagreement on {s}"),
        )?;
        match cex {
            Some(a) => ensure(
                !taut && falsifies(&s, &a),
                format!("case {i}: bad counterexample for {s}"),
            )?,
            None => ensure(taut, format!("case {i}: no counterexample for {s}"))?,
        }
        valid += taut as usize;
    }
    let t = start.elapsed();
    ensure(
        t < TAUTOLOGY_LIMIT,
        format!("{t:?} exceeds {TAUTOLOGY_LIMIT:?}"),
    )?;
    Ok(format!(
        "{TAUTOLOGY_CASES} sequents ({valid} valid), 100% agreement in {t:.2?}"
    ))
}

fn dependency() -> Outcome {
    let drinker = json("expansion/drinker.json");
    let g = dependency_relation(&drinker);
    ensure(
        g.edges.len() == 1 && is_acyclic(&g).0,
        "drinker: expected one acyclic edge",
    )?;
    ensure(verdict(&drinker).is_proof, "drinker is not a proof")?;

    let crossed = json("expansion/crossed.json");
    let (acyclic, cycle) = is_acyclic(&dependency_relation(&crossed));
    ensure(
        !acyclic && cycle.is_some_and(|c| c.len() == 2),
        "crossed: expected a 2-cycle",
    )?;
    ensure(!verdict(&crossed).is_proof, "crossed is a proof")?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut cyclic = 0;
    for i in 0..GRAPH_CASES {
        let (n, edges) = random_graph(&mut rng, GRAPH_MAX_NODES);
        let has_cycle = brute_force_has_cycle(n, &edges);
        let (acyclic, _) = is_acyclic(&graph_from_edges(n, edges.iter().copied()));
        ensure(acyclic != has_cycle, format!("graph {i}: {edges:?}"))?;
        cyclic += has_cycle as usize;
    }
    Ok(format!(
        "fixtures ok; {GRAPH_CASES} graphs ({cyclic} cyclic) agree"
    ))
}

fn verit_pipeline() -> Outcome {
    let mut slowest = Duration::ZERO;
    for name in ["transitivity", "congruence", "reflexivity"] {
        let start = Instant::now();
        let trace = parse_verit(&read(&format!("verit/{name}.proof")))
            .map_err(|e| format!("{name}: {e}"))?;
        let (es, _) = import_verit(&trace).map_err(|e| format!("{name}: {e}"))?;
        ensure(verdict(&es).is_proof, format!("{name}: not a proof"))?;
        if name == "transitivity" {
            // The last antecedent tree is the transitivity instance.
            let mut without = es.clone();
            without.antecedent.pop();
            ensure(
                !verdict(&without).tautology,
                "transitivity: still a tautology without the axiom tree",
            )?;
        }
        let t = start.elapsed();
        ensure(t < FIXTURE_LIMIT, format!("{name}: {t:?}"))?;
        slowest = slowest.max(t);
    }
    Ok(format!("3 fixtures, slowest {slowest:.2?}"))
}

/// Eigenvariables of each strong quantifier, keyed by tree and variable.
fn eigenvariables(es: &ExpansionSequent) -> BTreeMap<(SequentPos, String), BTreeSet<String>> {
    fn go(
        t: &ExpansionTree,
        pos: SequentPos,
        out: &mut BTreeMap<(SequentPos, String), BTreeSet<String>>,
    ) {
        if let ExpansionTree::Strong {
            var, eigenvariable, ..
        } = t
        {
            out.entry((pos, var.clone()))
                .or_default()
                .insert(eigenvariable.clone());
        }
        for c in t.children() {
            go(c, pos, out);
        }
    }
    let mut out = BTreeMap::new();
    for (pos, t) in es.iter() {
        go(t, pos, &mut out);
    }
    out
}

fn leancop_pipeline() -> Outcome {
    let options = LeanCoPOptions::default();
    let mut matches = 0;
    for name in ["universal", "existential", "skolem"] {
        let trace = parse_leancop(&read(&format!("leancop/{name}.p")))
            .map_err(|e| format!("{name}: {e}"))?;
        let matched = match_trace(&trace, &options).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            matched.verify(),
            format!("{name}: a clause match does not verify"),
        )?;
        matches += matched.matches.len();
        let (es, _) = import_leancop(&trace, &options).map_err(|e| format!("{name}: {e}"))?;
        ensure(verdict(&es).is_proof, format!("{name}: not a proof"))?;
        if name == "skolem" {
            let eigen = eigenvariables(&es);
            ensure(
                !eigen.is_empty() && eigen.values().all(|s| s.len() == 1),
                format!("skolem: eigenvariables {eigen:?}"),
            )?;
            let g = dependency_relation(&es);
            ensure(
                g.edges.len() == 1 && is_acyclic(&g).0,
                "skolem: expected one acyclic edge",
            )?;
        }
    }
    Ok(format!("3 fixtures, {matches} clause matches verified"))
}

struct Case {
    antecedent: &'static [&'static str],
    succedent: &'static [&'static str],
    /// Per sequent position (antecedent first), the substitutions.
    instances: &'static [&'static [&'static [(&'static str, &'static str)]]],
    valid: bool,
}

const fn case(
    antecedent: &'static [&'static str],
    succedent: &'static [&'static str],
    instances: &'static [&'static [&'static [(&'static str, &'static str)]]],
    valid: bool,
) -> Case {
    Case {
        antecedent,
        succedent,
        instances,
        valid,
    }
}

const FORALL_P: &str = "![X]: p(X)";
const IMP: &str = "![X]: (p(X) => q(X))";
const SYM: &str = "![X]: ![Y]: (r(X,Y) => r(Y,X))";
const STEP: &str = "![X]: (p(X) => p(f(X)))";
const SERIAL: &str = "![X]: ?[Y]: r(X,Y)";
const EQ_SYM: &str = "![X]: ![Y]: (X = Y => Y = X)";

const CASES: [Case; 20] = [
    case(&[FORALL_P], &["p(a)"], &[&[&[("X", "a")]], &[]], true),
    case(&[], &["?[X]: (p(X) => p(X))"], &[&[&[("X", "c")]]], true),
    case(
        &[IMP, "p(a)"],
        &["q(a)"],
        &[&[&[("X", "a")]], &[], &[]],
        true,
    ),
    case(
        &[SYM, "r(a,b)"],
        &["r(b,a)"],
        &[&[&[("X", "a"), ("Y", "b")]], &[], &[]],
        true,
    ),
    case(
        &[FORALL_P],
        &["p(a) & p(b)"],
        &[&[&[("X", "a")], &[("X", "b")]], &[]],
        true,
    ),
    case(&["p(a)"], &["?[X]: p(X)"], &[&[], &[&[("X", "a")]]], true),
    case(
        &[STEP, "p(a)"],
        &["p(f(f(a)))"],
        &[&[&[("X", "a")], &[("X", "f(a)")]], &[], &[]],
        true,
    ),
    case(
        &[SERIAL],
        &["?[Z]: r(a,Z)"],
        &[&[&[("X", "a"), ("Y", "E")]], &[&[("Z", "E")]]],
        true,
    ),
    case(
        &["a = b", EQ_SYM],
        &["b = a"],
        &[&[], &[&[("X", "a"), ("Y", "b")]], &[]],
        true,
    ),
    case(&[], &["![X]: (p(X) | ~p(X))"], &[&[&[("X", "E")]]], true),
    case(&[FORALL_P], &["p(a)"], &[&[&[("X", "b")]], &[]], false),
    case(
        &[IMP, "p(a)"],
        &["q(a)"],
        &[&[&[("X", "b")]], &[], &[]],
        false,
    ),
    case(
        &[SYM, "r(a,b)"],
        &["r(b,a)"],
        &[&[&[("X", "b"), ("Y", "a")]], &[], &[]],
        false,
    ),
    case(
        &[FORALL_P],
        &["p(a) & p(b)"],
        &[&[&[("X", "a")]], &[]],
        false,
    ),
    case(&["p(a)"], &["?[X]: p(X)"], &[&[], &[&[("X", "b")]]], false),
    case(
        &[STEP, "p(a)"],
        &["p(f(f(a)))"],
        &[&[&[("X", "a")]], &[], &[]],
        false,
    ),
    case(
        &[SERIAL],
        &["?[Z]: r(a,Z)"],
        &[&[&[("X", "a"), ("Y", "E")]], &[&[("Z", "a")]]],
        false,
    ),
    case(
        &["a = b", EQ_SYM],
        &["b = a"],
        &[&[], &[&[("X", "b"), ("Y", "a")]], &[]],
        false,
    ),
    case(&["?[X]: p(X)"], &["p(a)"], &[&[&[("X", "E")]], &[]], false),
    case(
        &[SERIAL],
        &["?[Z]: r(Z,Z)"],
        &[&[&[("X", "a"), ("Y", "E")]], &[&[("Z", "a")]]],
        false,
    ),
];

fn term(s: &str) -> Term {
    // Upper-case names are eigenvariables.
    if s.starts_with(|c: char| c.is_ascii_uppercase()) {
        Term::var(s)
    } else {
        exproof_core::logic::parse_term(s).unwrap()
    }
}

fn build(c: &Case) -> Result<ExpansionSequent, String> {
    let parse = |fs: &[&str]| {
        fs.iter()
            .map(|s| parse_formula(s).unwrap())
            .collect::<Vec<_>>()
    };
    let sequent = Sequent::new(parse(c.antecedent), parse(c.succedent));
    let mut set = InstanceSet::new();
    for (k, sigmas) in c.instances.iter().enumerate() {
        let pos = if k < c.antecedent.len() {
            SequentPos {
                side: Side::Antecedent,
                index: k,
            }
        } else {
            SequentPos {
                side: Side::Succedent,
                index: k - c.antecedent.len(),
            }
        };
        for sigma in *sigmas {
            set.insert(
                pos,
                sigma
                    .iter()
                    .map(|(v, t)| (v.to_string(), term(t)))
                    .collect::<Substitution>(),
            );
        }
    }
    expand_sequent(&sequent, &set).map_err(|e| e.to_string())
}

fn sanity_check() -> Outcome {
    let mut agree = 0;
    for (i, c) in CASES.iter().enumerate() {
        let es = build(c).map_err(|e| format!("case {i}: {e}"))?;
        let oracle = truth_table_valid(&deep_sequent(&es).to_sequent());
        ensure(
            oracle == c.valid,
            format!("case {i}: oracle says {oracle}, expected {}", c.valid),
        )?;
        ensure(
            verdict(&es).is_proof == oracle,
            format!("case {i}: verdict disagrees with oracle"),
        )?;
        agree += 1;
    }
    Ok(format!("{agree}/{} pairs agree", CASES.len()))
}

fn cli_contract() -> Outcome {
    let f = |rel: &str| path_str(&fixture(rel)).to_string();
    for (rel, want) in [
        ("verit/transitivity.proof", 0),
        ("leancop/skolem.p", 0),
        ("verit/missing_instance.proof", 1),
        ("leancop/wrong_instance.p", 1),
        ("verit/malformed.proof", 2),
        ("leancop/unknown_clause.p", 2),
    ] {
        let (code, _, _) = run(&["check", &f(rel)]);
        ensure(
            code == want,
            format!("check {rel}: exit {code}, expected {want}"),
        )?;
    }

    for rel in [
        "verit/congruence.proof",
        "leancop/skolem.p",
        "expansion/drinker.json",
    ] {
        let (code, out, err) = run(&["export", "--json", &f(rel)]);
        ensure(code == 0, format!("export {rel}: {err}"))?;
        let exported: ExpansionSequent =
            serde_json::from_str(&out).map_err(|e| format!("export {rel}: {e}"))?;
        let (_, imported, _) = run(&["import", &f(rel)]);
        let imported: serde_json::Value =
            serde_json::from_str(&imported).map_err(|e| e.to_string())?;
        let in_memory: ExpansionSequent =
            serde_json::from_value(imported["sequent"].clone()).map_err(|e| e.to_string())?;
        ensure(
            exported == in_memory,
            format!("export {rel}: round trip differs"),
        )?;
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let files = [
        ("verit/transitivity.proof", "proof"),
        ("verit/missing_instance.proof", "not-proof"),
        ("verit/malformed.proof", "error:parse"),
        ("leancop/universal.p", "proof"),
        ("leancop/wrong_instance.p", "not-proof"),
        ("expansion/crossed.json", "not-proof"),
    ];
    for (rel, _) in files {
        std::fs::copy(fixture(rel), dir.path().join(rel.replace('/', "_")))
            .map_err(|e| e.to_string())?;
    }
    let (code, out, err) = run(&["batch", "--jobs", "3", path_str(dir.path())]);
    ensure(code == 0, format!("batch: {err}"))?;
    let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let statuses: BTreeMap<String, String> = v["files"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| {
            let name = std::path::Path::new(f["path"].as_str().unwrap())
                .file_name()
                .unwrap()
                .to_string_lossy()
                .into_owned();
            (name, f["status"].as_str().unwrap().to_string())
        })
        .collect();
    for (rel, want) in files {
        let got = statuses.get(&rel.replace('/', "_")).map(String::as_str);
        ensure(
            got == Some(want),
            format!("batch {rel}: {got:?}, expected {want}"),
        )?;
    }
    let count = |s: &str| statuses.values().filter(|v| v.as_str() == s).count() as u64;
    let errors = statuses
        .values()
        .filter(|v| v.starts_with("error:"))
        .count() as u64;
    let n = |k: &str| v[k].as_u64().unwrap_or(u64::MAX);
    ensure(
        n("total") == 6
            && n("proof") == count("proof")
            && n("not_proof") == count("not-proof")
            && n("errors") == errors
            && n("imported") == count("proof") + count("not-proof")
            && n("total") == n("proof") + n("not_proof") + n("errors"),
        format!("batch counts do not match statuses: {v}"),
    )?;
    Ok("exit codes, JSON round trip and 6-file batch agree".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("AC1 shallow inverts expansion", shallow_inverse),
        ("AC2 tautology check matches truth tables", tautology_oracle),
        ("AC3 dependency relation and acyclicity", dependency),
        ("AC4 veriT pipeline", verit_pipeline),
        ("AC5 leanCoP pipeline", leancop_pipeline),
        (
            "AC6 verdict matches oracle on hand-built pairs",
            sanity_check,
        ),
        ("AC7 CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match std::panic::catch_unwind(check) {
            Ok(Ok(detail)) => println!("PASS {name}: {detail}"),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
            Err(_) => {
                failed += 1;
                println!("FAIL {name}: panicked");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
