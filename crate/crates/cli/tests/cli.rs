mod common;

use common::{exproof, fixture, path_str, run, validate};
use exproof_core::ExpansionSequent;

fn f(rel: &str) -> String {
    path_str(&fixture(rel)).to_string()
}

#[test]
fn check_exit_codes() {
    let (code, out, _) = run(&["check", &f("verit/transitivity.proof")]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["is_proof"], true);
    validate("verdict.schema.json", &v).unwrap();

    let (code, out, _) = run(&["check", &f("verit/missing_instance.proof")]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["counterexample"].is_object());
    validate("verdict.schema.json", &v).unwrap();

    let (code, out, err) = run(&["check", &f("verit/malformed.proof")]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("2:10"), "{err}");
}

#[test]
fn crossed_verdict_names_the_cycle() {
    let (code, out, _) = run(&["check", &f("expansion/crossed.json")]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v["cycle"],
        serde_json::json!(["antecedent[0]/0", "antecedent[1]/0"])
    );
    validate("verdict.schema.json", &v).unwrap();
}

#[test]
fn explicit_format_overrides_detection() {
    let (code, _, err) = run(&["check", "--format", "verit", &f("leancop/universal.p")]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = run(&["check", "--format", "leancop", &f("leancop/universal.p")]);
    assert_eq!(code, 0);
}

#[test]
fn undetectable_and_missing_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.txt");
    std::fs::write(&junk, "hello\n").unwrap();
    let (code, _, err) = run(&["check", path_str(&junk)]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot detect"), "{err}");
    let (code, _, _) = run(&["check", path_str(&dir.path().join("absent"))]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["check"]);
    assert_eq!(code, 2);
}

#[test]
fn show_shallow_and_deep() {
    let (code, out, _) = run(&["show", &f("leancop/universal.p")]);
    assert_eq!(code, 0);
    assert_eq!(out, "∀X p(X) ⊢ p(a)\ninstances: X ∈ {a}\n");
    let (_, out, _) = run(&["show", "--deep", &f("leancop/universal.p")]);
    assert_eq!(out, "p(a) ⊢ p(a)\n");
    let (_, out, _) = run(&["show", "--shallow", &f("leancop/universal.p")]);
    assert!(out.starts_with("∀X p(X) ⊢ p(a)\n"));
}

#[test]
fn refutations_end_with_the_turnstile() {
    let (_, out, _) = run(&["show", &f("verit/propositional.proof")]);
    assert_eq!(out, "p ∨ q, ¬p, ¬q ⊢\n");
    let (_, out, _) = run(&["show", "--deep", &f("verit/transitivity.proof")]);
    assert!(out.trim_end().ends_with('⊢'), "{out}");
}

#[test]
fn color_is_opt_in() {
    let plain = exproof(
        &["show", &f("leancop/universal.p")],
        &[("EXPROOF_COLOR", "0")],
    );
    assert!(!String::from_utf8(plain.stdout).unwrap().contains('\x1b'));
    let colored = exproof(
        &["show", &f("leancop/universal.p")],
        &[("EXPROOF_COLOR", "1")],
    );
    let text = String::from_utf8(colored.stdout).unwrap();
    assert!(text.contains("\x1b[1m⊢\x1b[0m"), "{text}");
}

#[test]
fn json_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for rel in [
        "verit/congruence.proof",
        "leancop/skolem.p",
        "expansion/drinker.json",
    ] {
        let out = dir.path().join("es.json");
        let (code, stdout, _) = run(&["export", "--json", "--out", path_str(&out), &f(rel)]);
        assert_eq!(code, 0);
        assert!(stdout.is_empty());
        let text = std::fs::read_to_string(&out).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        validate("expansion-sequent.schema.json", &value).unwrap();
        let back: ExpansionSequent = serde_json::from_str(&text).unwrap();
        // Re-importing the export gives the same sequent.
        let (_, again, _) = run(&["export", path_str(&out)]);
        assert_eq!(
            serde_json::from_str::<ExpansionSequent>(&again).unwrap(),
            back,
            "{rel}"
        );
    }
}

#[test]
fn import_output_validates() {
    for rel in [
        "verit/reflexivity.proof",
        "leancop/equality.p",
        "expansion/crossed.json",
    ] {
        let (code, out, _) = run(&["import", &f(rel)]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        validate("import.schema.json", &v).unwrap_or_else(|e| panic!("{rel}: {e}"));
    }
}

#[test]
fn dot_export_shapes() {
    let (code, out, _) = run(&["export", "--dot", &f("expansion/drinker.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("rankdir=TB;"));
    let weak = out.lines().find(|l| l.contains("label=\"∃X\"")).unwrap();
    let id = weak.trim().split(' ').next().unwrap();
    let out_degree = out
        .lines()
        .filter(|l| l.trim().starts_with(&format!("{id} ->")))
        .count();
    assert_eq!(out_degree, 2);
    assert!(out.contains("eigenvariable Alpha") && out.contains("eigenvariable Beta"));

    let (_, out, _) = run(&["export", "--dot", &f("verit/propositional.proof")]);
    assert_eq!(out.matches("digraph").count(), 3);
    assert!(!out.contains('∀') && !out.contains('∃'));
}

#[test]
fn unwritable_output_is_an_error() {
    let (code, _, err) = run(&[
        "export",
        "--out",
        "/nonexistent/dir/out.json",
        &f("leancop/universal.p"),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot write"), "{err}");
}

fn batch(dir: &std::path::Path, extra: &[&str]) -> serde_json::Value {
    let mut args = vec!["batch"];
    args.extend_from_slice(extra);
    args.push(path_str(dir));
    let (code, out, err) = run(&args);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    validate("batch-summary.schema.json", &v).unwrap();
    v
}

#[test]
fn batch_of_three() {
    let dir = tempfile::tempdir().unwrap();
    for rel in [
        "verit/transitivity.proof",
        "leancop/universal.p",
        "verit/malformed.proof",
    ] {
        std::fs::copy(fixture(rel), dir.path().join(rel.replace('/', "_"))).unwrap();
    }
    let v = batch(dir.path(), &["--jobs", "2"]);
    assert_eq!(
        (
            v["imported"].as_u64(),
            v["proof"].as_u64(),
            v["errors"].as_u64()
        ),
        (Some(2), Some(2), Some(1))
    );
    let formats: Vec<&str> = v["files"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["format"].as_str().unwrap())
        .collect();
    assert_eq!(formats, ["leancop", "verit", "verit"]);
}

#[test]
fn empty_batch() {
    let dir = tempfile::tempdir().unwrap();
    let v = batch(dir.path(), &[]);
    for k in ["total", "imported", "proof", "not_proof", "errors"] {
        assert_eq!(v[k], 0, "{k}");
    }
}

#[test]
fn batch_is_independent_of_job_count() {
    let strip = |mut v: serde_json::Value| {
        for f in v["files"].as_array_mut().unwrap() {
            f.as_object_mut().unwrap().remove("wall_ms");
        }
        v
    };
    let dir = common::root().join("fixtures/leancop");
    assert_eq!(
        strip(batch(&dir, &["--jobs", "1"])),
        strip(batch(&dir, &["--jobs", "4"]))
    );
}

#[test]
fn leancop_options_are_passed_through() {
    // With another prefix `sk1` is an ordinary function symbol and the
    // clause no longer matches the strong quantifier's variable.
    let (code, _, err) = run(&["check", "--skolem-prefix", "skolem", &f("leancop/skolem.p")]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = run(&["check", "--def-threshold", "1", &f("leancop/universal.p")]);
    assert_eq!(code, 0);
}

#[test]
fn schemas_reject_malformed_documents() {
    assert!(validate(
        "verdict.schema.json",
        &serde_json::json!({"is_proof": "yes", "tautology": true, "acyclic": true})
    )
    .is_err());
    let bad_tree = serde_json::json!({"antecedent": [{"kind": "weak", "var": "X", "body": "p(X)", "instances": []}], "succedent": []});
    assert!(validate("expansion-sequent.schema.json", &bad_tree).is_err());
    let bad_import = serde_json::json!({"format": "verit", "sequent": {"antecedent": [{"kind": "atom"}], "succedent": []}, "report": null});
    assert!(validate("import.schema.json", &bad_import).is_err());
}
