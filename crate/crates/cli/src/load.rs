//! Reading a trace or expansion-sequent file into an expansion sequent.

use std::fmt;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

use exproof_core::leancop::{import_leancop, parse_leancop, LeanCoPOptions};
use exproof_core::verit::{import_verit, parse_verit};
use exproof_core::ExpansionSequent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Verit,
    Leancop,
    /// An expansion sequent in the JSON form `export --json` writes.
    Json,
    Auto,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Verit => "verit",
            Format::Leancop => "leancop",
            Format::Json => "json",
            Format::Auto => "auto",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Io,
    Format,
    Parse,
    Import,
}

#[derive(Debug)]
pub struct LoadError {
    pub category: Category,
    /// Detected format, when detection got that far.
    pub format: Option<Format>,
    pub message: String,
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for LoadError {}

pub struct Loaded {
    pub format: Format,
    pub sequent: ExpansionSequent,
    pub report: serde_json::Value,
}

/// Picks the format from the first token that is not blank or a `%`/`;`
/// comment line.
pub fn detect(text: &str) -> Option<Format> {
    let first = text
        .lines()
        .map(str::trim_start)
        .find(|l| !l.is_empty() && !l.starts_with('%') && !l.starts_with(';'))?;
    if first.starts_with("(set") {
        Some(Format::Verit)
    } else if first.starts_with("fof(") || first.starts_with("cnf(") {
        Some(Format::Leancop)
    } else if first.starts_with('{') {
        Some(Format::Json)
    } else {
        None
    }
}

pub fn load_text(
    text: &str,
    format: Format,
    options: &LeanCoPOptions,
) -> Result<Loaded, LoadError> {
    let format = match format {
        Format::Auto => detect(text).ok_or_else(|| LoadError {
            category: Category::Format,
            format: None,
            message: "cannot detect the input format".into(),
        })?,
        f => f,
    };
    let err = |category, message: String| LoadError {
        category,
        format: Some(format),
        message,
    };
    let (sequent, report) = match format {
        Format::Verit => {
            let trace = parse_verit(text).map_err(|e| err(Category::Parse, e.to_string()))?;
            let (es, report) =
                import_verit(&trace).map_err(|e| err(Category::Import, e.to_string()))?;
            (es, serde_json::to_value(report).expect("report serializes"))
        }
        Format::Leancop => {
            let trace = parse_leancop(text).map_err(|e| err(Category::Parse, e.to_string()))?;
            let (es, report) = import_leancop(&trace, options)
                .map_err(|e| err(Category::Import, e.to_string()))?;
            (es, serde_json::to_value(report).expect("report serializes"))
        }
        Format::Json => {
            let es: ExpansionSequent =
                serde_json::from_str(text).map_err(|e| err(Category::Parse, e.to_string()))?;
            es.validate()
                .map_err(|(pos, e)| err(Category::Import, format!("{pos}: {e}")))?;
            (es, serde_json::Value::Null)
        }
        Format::Auto => unreachable!(),
    };
    Ok(Loaded {
        format,
        sequent,
        report,
    })
}

pub fn load(path: &Path, format: Format, options: &LeanCoPOptions) -> Result<Loaded, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError {
        category: Category::Io,
        format: None,
        message: e.to_string(),
    })?;
    load_text(&text, format, options)
}
