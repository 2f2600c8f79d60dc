//! Command-line front end. [`run_from`] parses arguments, runs one command and
//! returns the process exit status.

pub mod args;
mod commands;
pub mod model;
mod output;

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::Parser;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

pub use args::{Cli, Command};
pub use model::Model;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "SL2C_OUT_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] crate::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(crate::Error::NoConvergence { .. }) => EXIT_NO_CONVERGENCE,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// Rows for CSV output.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// Everything a command produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub results: Value,
    pub checks: Vec<Check>,
    pub table: Table,
}

impl Outcome {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs a parsed command without writing anything.
pub fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    let mut outcome = match cmd {
        Command::CrossingScan(a) => commands::crossing_scan(a)?,
        other => {
            let args = other.args();
            let model = Model::from_args(&args.model)?;
            match other {
                Command::Potential(a) => commands::potential(&model, a)?,
                Command::Spectrum(a) => commands::spectrum(&model, a)?,
                Command::Wavefunction(a) => commands::wavefunction(&model, a)?,
                Command::Verify(a) => commands::verify(&model, a)?,
                Command::AlgebraCheck(a) => commands::algebra_check(&model, a)?,
                Command::CrossingScan(_) => unreachable!(),
            }
        }
    };
    outcome.command = cmd.name().to_string();
    Ok(outcome)
}

/// Parses `argv` (program name first), runs the command, writes its output
/// and returns the exit status.
pub fn run_from<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let code = execute(&cli.command).and_then(|outcome| {
        output::write(&outcome, &cli.command.args().out)?;
        for c in outcome.checks.iter().filter(|c| !c.pass) {
            eprintln!("check failed: {}: {}", c.name, c.detail);
        }
        Ok(if outcome.all_pass() {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        })
    });
    match code {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
