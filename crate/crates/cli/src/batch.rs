//! Checking every trace in a set of directories.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use exproof_core::leancop::LeanCoPOptions;
use exproof_core::verdict;

use crate::load::{load, Format};

#[derive(Clone, Debug, Serialize)]
pub struct FileResult {
    pub path: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    /// `proof`, `not-proof` or `error:<category>`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    /// Files that imported, whether or not they are proofs.
    pub imported: usize,
    pub proof: usize,
    pub not_proof: usize,
    pub errors: usize,
    pub files: Vec<FileResult>,
}

fn check_file(path: &Path, format: Format, options: &LeanCoPOptions) -> FileResult {
    let start = Instant::now();
    let (format, status, error) = match load(path, format, options) {
        Ok(l) => {
            let status = if verdict(&l.sequent).is_proof {
                "proof"
            } else {
                "not-proof"
            };
            (Some(l.format), status.to_string(), None)
        }
        Err(e) => {
            let category = serde_json::to_value(e.category).expect("category serializes");
            (
                e.format,
                format!("error:{}", category.as_str().unwrap()),
                Some(e.message),
            )
        }
    };
    FileResult {
        path: path.display().to_string(),
        format,
        status,
        error,
        wall_ms: start.elapsed().as_secs_f64() * 1000.0,
    }
}

/// Regular files directly inside each directory (or the path itself when it
/// is a file), sorted.
pub fn collect(inputs: &[PathBuf]) -> std::io::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut here = Vec::new();
            for entry in std::fs::read_dir(input)? {
                let p = entry?.path();
                if p.is_file() {
                    here.push(p);
                }
            }
            here.sort();
            files.extend(here);
        } else if input.is_file() {
            files.push(input.clone());
        } else {
            return Err(std::io::Error::new(
                std::io::ErrorKind::NotFound,
                format!("{}: no such file or directory", input.display()),
            ));
        }
    }
    Ok(files)
}

/// Checks `files` on `jobs` worker threads; results keep the input order.
pub fn run(files: &[PathBuf], format: Format, options: &LeanCoPOptions, jobs: usize) -> Summary {
    let next = AtomicUsize::new(0);
    let results = Mutex::new(vec![None; files.len()]);
    std::thread::scope(|s| {
        for _ in 0..jobs.max(1).min(files.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(path) = files.get(i) else { break };
                let r = check_file(path, format, options);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    let files: Vec<FileResult> = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(Option::unwrap)
        .collect();
    let mut summary = Summary {
        total: files.len(),
        ..Summary::default()
    };
    for f in &files {
        match f.status.as_str() {
            "proof" => summary.proof += 1,
            "not-proof" => summary.not_proof += 1,
            _ => summary.errors += 1,
        }
    }
    summary.imported = summary.proof + summary.not_proof;
    summary.files = files;
    summary
}
