//! `overlap-lab`: closed-form bounds, exact extremal search and
//! verification suites for overlapping families.

mod bounds;
mod cache;
mod grid;
mod report;
mod search;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "overlap-lab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a closed-form formula over a grid.
    Bounds(bounds::BoundsArgs),
    /// Compute exact optima with the oracle or shifted solver.
    Search(search::SearchArgs),
    /// Run a verification suite.
    Verify(verify::VerifyArgs),
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Limit(String),
}

impl Failure {
    pub fn io(e: impl std::fmt::Display) -> Self {
        Failure::Usage(e.to_string())
    }

    pub fn from_core(e: overlap_lab::Error) -> Self {
        match e {
            overlap_lab::Error::InstanceTooLarge { .. } | overlap_lab::Error::EnumerationCap { .. } => {
                Failure::Limit(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Bounds(args) => bounds::run(args),
        Command::Search(args) => search::run(args),
        Command::Verify(args) => verify::run(args),
    };
    match result {
        Ok(summary) => ExitCode::from(summary.exit_code as u8),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("resource limit: {msg}");
            ExitCode::from(3)
        }
    }
}
