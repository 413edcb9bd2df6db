//! Batch interface over the `mubtomo` library: JSON in, JSON out.
//!
//! Exit codes: 0 success, 1 verification failure, 2 unsupported dimension,
//! 3 input or parse error, 4 invariant violation in input data.

pub mod args;
pub mod commands;
pub mod config;
pub mod doc;
pub mod error;
pub mod json;
pub mod verify;

use clap::Parser;
use mubtomo::Tolerances;

use crate::args::{Cli, Command};
use crate::commands::{execute, Context};
use crate::config::{check_tolerance, JobConfig};
use crate::error::CliError;

/// Uniform default tolerance, read when `--tol` is absent.
pub const TOLERANCE_ENV: &str = "MUBTOMO_TOLERANCE";

fn base_tolerances(flag: Option<f64>) -> Result<Tolerances, CliError> {
    if let Some(t) = flag {
        return Ok(Tolerances::uniform(check_tolerance("--tol", t)?));
    }
    match std::env::var(TOLERANCE_ENV) {
        Ok(text) => {
            let t: f64 = text.trim().parse().map_err(|_| CliError::input(format!("{TOLERANCE_ENV}={text:?} is not a number")))?;
            Ok(Tolerances::uniform(check_tolerance(TOLERANCE_ENV, t)?))
        }
        Err(_) => Ok(Tolerances::default()),
    }
}

fn dispatch(cli: &Cli, invocation: &[String]) -> Result<(), CliError> {
    let mut tol = base_tolerances(cli.tol)?;
    let cmd = match &cli.command {
        Command::Run { config } => {
            let job = JobConfig::parse(&doc::read_text(config)?)?;
            let cmd = job.to_command()?;
            tol = job.tolerance.apply(tol)?;
            cmd
        }
        other => other.clone(),
    };
    let outcome = execute(&cmd, &Context { tol, invocation })?;
    doc::write_text(&outcome.out, &outcome.text)?;
    match outcome.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Runs the tool on `argv` (program name first) and returns the exit code.
pub fn main_with_args(argv: Vec<String>) -> u8 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let invocation: Vec<String> = argv.into_iter().skip(1).collect();
    match dispatch(&cli, &invocation) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("mubtomo: {e}");
            e.exit_code()
        }
    }
}
