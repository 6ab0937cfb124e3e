mod commands;
mod output;

use clap::Parser;
use std::process::ExitCode;

use commands::Cli;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: starcodes::Error },
    #[error(transparent)]
    Lib(#[from] starcodes::Error),
    #[error("cannot serialize output: {0}")]
    Json(#[from] serde_json::Error),
}

/// Accepts `bounds:<name>` as a spelling of `bounds <name>`.
fn normalize_args(args: impl Iterator<Item = String>) -> Vec<String> {
    let mut out = Vec::new();
    for a in args {
        match a.strip_prefix("bounds:") {
            Some(name) => out.extend(["bounds".to_string(), name.to_string()]),
            None => out.push(a),
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(normalize_args(std::env::args())) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => match output::emit(&cli, &outcome) {
            Ok(()) => ExitCode::from(if outcome.verified == Some(false) { 1 } else { 0 }),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
