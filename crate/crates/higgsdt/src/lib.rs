//! Command-line front end for `higgsdt-core`.

pub mod cli;
mod commands;
pub mod emit;
mod verify;

use std::io::Write;

use anyhow::{Context, Result};
use higgsdt_core::Error;

use cli::{Cli, Command};

/// Environment variable capping the worker pool size.
pub const THREADS_VAR: &str = "HIGGSDT_THREADS";

/// Outcome of a successful run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
        }
    }
}

/// Marks errors caused by bad input rather than by the mathematics.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Status> {
    match cli.command {
        Command::Compute(args) => commands::compute(&args, out),
        Command::Verify(args) => verify::run(&args, out),
        Command::OracleP1(args) => commands::oracle(&args, out),
        Command::Specialize(args) => commands::specialize(&args, out),
    }
}

/// Exit code for a failed run: 2 for invalid input, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::InvalidParams(_)
            | Error::NotCoprime { .. }
            | Error::UnsupportedField(_)
            | Error::UnsupportedRank(_)
            | Error::InvalidZeta(_)
            | Error::TooManyVariables(_)
            | Error::InvalidPartition,
        ) => 2,
        _ => 1,
    }
}

/// Sizes the global rayon pool from `HIGGSDT_THREADS` when set.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| UsageError(format!("{THREADS_VAR} must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")?;
    Ok(())
}
