use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use exproof_core::leancop::{LeanCoPOptions, DEFAULT_DEF_THRESHOLD, DEFAULT_SKOLEM_PREFIX};
use exproof_core::{verdict, ExpansionSequent};

mod batch;
mod load;
mod render;

use load::{load, Format, Loaded};

#[derive(Parser)]
#[command(
    name = "exproof",
    version,
    about = "Import proof traces as expansion sequents and check them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    #[arg(long, value_enum, default_value_t = Format::Auto)]
    format: Format,
    /// Prefix of Skolem symbols in connection proofs.
    #[arg(long, default_value = DEFAULT_SKOLEM_PREFIX)]
    skolem_prefix: String,
    /// Largest clause-count product distributed without a definition.
    #[arg(long, default_value_t = DEFAULT_DEF_THRESHOLD)]
    def_threshold: usize,
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
}

impl Input {
    fn options(&self) -> LeanCoPOptions {
        LeanCoPOptions {
            skolem_prefix: self.skolem_prefix.clone(),
            def_threshold: self.def_threshold,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the imported expansion sequent and the import report as JSON.
    Import {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the verdict as JSON; exit 0 for a proof, 1 otherwise.
    Check {
        #[command(flatten)]
        input: Input,
    },
    /// Print the shallow sequent with instances, or the deep sequent.
    Show {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "shallow")]
        deep: bool,
        #[arg(long)]
        shallow: bool,
    },
    /// Write the expansion sequent as JSON or DOT.
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every file in the given directories and print a summary.
    Batch {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct ImportOutput<'a> {
    format: Format,
    sequent: &'a ExpansionSequent,
    report: &'a serde_json::Value,
}

/// Failure that maps to exit status 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(format!("{e:#}"))
    }
}

fn load_one(path: &Path, input: &Input) -> Result<Loaded, Fatal> {
    load(path, input.format, &input.options())
        .map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Fatal> {
    match out {
        Some(p) => {
            std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?
        }
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn single<'a>(input: &'a Input, out: Option<&Path>) -> Result<&'a [PathBuf], Fatal> {
    if out.is_some() && input.inputs.len() > 1 {
        return Err(Fatal("--out takes a single input".into()));
    }
    Ok(&input.inputs)
}

fn color() -> bool {
    std::env::var("EXPROOF_COLOR").is_ok_and(|v| v == "1")
}

fn run(cli: Cli) -> Result<ExitCode, Fatal> {
    match cli.command {
        Command::Import { input, out } => {
            for path in single(&input, out.as_deref())? {
                let l = load_one(path, &input)?;
                let value = ImportOutput {
                    format: l.format,
                    sequent: &l.sequent,
                    report: &l.report,
                };
                write_output(
                    out.as_deref(),
                    &(serde_json::to_string_pretty(&value)? + "\n"),
                )?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { input } => {
            let mut all = true;
            for path in &input.inputs {
                let v = verdict(&load_one(path, &input)?.sequent);
                all &= v.is_proof;
                println!("{}", serde_json::to_string_pretty(&v)?);
            }
            Ok(if all {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Show { input, deep, .. } => {
            for path in &input.inputs {
                let es = load_one(path, &input)?.sequent;
                let text = if deep {
                    render::show_deep(&es, color())
                } else {
                    render::show_shallow(&es, color())
                };
                println!("{text}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Export {
            input, dot, out, ..
        } => {
            for path in single(&input, out.as_deref())? {
                let es = load_one(path, &input)?.sequent;
                let text = if dot {
                    render::dot(&es)
                } else {
                    serde_json::to_string_pretty(&es)? + "\n"
                };
                write_output(out.as_deref(), &text)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Batch { input, jobs, out } => {
            let files = batch::collect(&input.inputs)?;
            let jobs =
                jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let summary = batch::run(&files, input.format, &input.options(), jobs);
            write_output(
                out.as_deref(),
                &(serde_json::to_string_pretty(&summary)? + "\n"),
            )?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
