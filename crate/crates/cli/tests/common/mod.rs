#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixture(rel: &str) -> PathBuf {
    root().join("fixtures").join(rel)
}

pub fn exproof(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_exproof"));
    cmd.args(args).env_remove("EXPROOF_COLOR");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

pub fn run(args: &[&str]) -> (i32, String, String) {
    let out = exproof(args, &[]);
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Validates `value` against `schemas/<name>`. The import schema refers to
/// the expansion-sequent schema by file name; that reference is inlined.
pub fn validate(name: &str, value: &serde_json::Value) -> Result<(), String> {
    let load = |n: &str| -> serde_json::Value {
        serde_json::from_str(&std::fs::read_to_string(root().join("schemas").join(n)).unwrap())
            .unwrap()
    };
    let mut schema = load(name);
    if schema.pointer("/properties/sequent").is_some() {
        let mut inner = load("expansion-sequent.schema.json");
        let inner = inner.as_object_mut().unwrap();
        inner.remove("$id");
        inner.remove("$schema");
        // Embedded `#/$defs/...` refs must resolve against the root.
        let defs = inner.remove("$defs").unwrap();
        schema.as_object_mut().unwrap().insert("$defs".into(), defs);
        *schema.pointer_mut("/properties/sequent").unwrap() =
            serde_json::Value::Object(inner.clone());
    }
    let validator = jsonschema::validator_for(&schema).map_err(|e| e.to_string())?;
    let errors: Vec<String> = validator
        .iter_errors(value)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors.join("; "))
    }
}
