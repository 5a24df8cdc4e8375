//! Command-line pipeline: ingest, features, select, train, eval, report.
//!
//! Each stage writes its artifacts under the output directory, and later stages read
//! the corpus cache written by `ingest` when it exists. Every file is written
//! atomically, and no artifact depends on anything but the inputs and the seed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fakecue::classifiers::ClassifierKind;
use fakecue::FeatureSet;
use thiserror::Error;

mod commands;
pub mod config;

pub use commands::run;
pub use config::{DatasetConfig, RunConfig, CONFIG_KEYS};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 1,
            CliError::Data(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

fn config_key_help() -> String {
    let width = CONFIG_KEYS.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut s = String::from(
        "CONFIG KEYS (JSON; unknown keys are rejected; relative paths resolve against the config file):\n",
    );
    for (k, d) in CONFIG_KEYS {
        s.push_str(&format!("  {k:width$}  {d}\n"));
    }
    s.push_str(
        "\nPrecedence: built-in defaults < --config file < command-line flags.\n\
         Exit codes: 0 success, 1 usage or config error, 2 data error, 3 internal error.",
    );
    s
}

#[derive(Debug, Parser)]
#[command(name = "fakecue", version, about = "Linguistic-cue fake news detection pipeline", after_long_help = config_key_help())]
pub struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides `seed`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Overrides `out`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Restricts the run to a configured dataset name, or adds a labelled corpus file.
    /// Repeatable.
    #[arg(long, global = true)]
    pub dataset: Vec<String>,
    /// Restricts the run to one feature set.
    #[arg(long, global = true, value_parser = parse_fset)]
    pub fset: Option<FeatureSet>,
    /// Restricts the run to one classifier kind.
    #[arg(long, global = true, value_parser = parse_kind)]
    pub classifier: Option<ClassifierKind>,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_fset(s: &str) -> Result<FeatureSet, String> {
    s.parse()
}

fn parse_kind(s: &str) -> Result<ClassifierKind, String> {
    s.parse()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Load datasets, write canonical JSONL caches and a class summary.
    Ingest,
    /// Write train/test feature matrices per dataset and feature set.
    Features,
    /// Run feature selection on each dataset's training split.
    Select,
    /// Fit models (grid search where configured) and save them as JSON.
    Train,
    /// Run the dataset x feature set x classifier comparison and draw charts.
    Eval,
    /// Rebuild charts and a Markdown summary from saved artifacts.
    Report,
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
