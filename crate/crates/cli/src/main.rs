//! `quarterplane`: solve quarter-plane heat and linear KdV problems, build
//! non-uniqueness witnesses, and check candidate solutions against the
//! uniqueness hypotheses.
//!
//! Exit codes: 0 success, 1 a clause failed (`verify`) or certification
//! failed (`counterexample`), 2 usage or parse error, 3 a computation
//! failed.

use std::fmt;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

mod commands;
mod output;
mod settings;
mod spec;

use settings::{CommonArgs, Config, DataArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Failed = 1,
    Usage = 2,
    Compute = 3,
}

#[derive(Debug)]
pub struct UsageError(anyhow::Error);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(e: anyhow::Error) -> anyhow::Error {
    anyhow::Error::new(UsageError(e))
}

#[derive(Debug, Parser)]
#[command(name = "quarterplane", version, about = "Quarter-plane heat and linear KdV solutions, witnesses and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the solution on a grid; writes solution.csv and manifest.json.
    Solve(SolveArgs),
    /// Generate and certify a zero-data witness; writes witness.csv,
    /// certificate.json, explain.json, explain.txt and manifest.json.
    Counterexample(CounterexampleArgs),
    /// Run the verification battery on a candidate solution.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    data: DataArgs,
    /// `default`, or X,T with axes `a`, `a:b:n` or `log:a:b:n`.
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Debug, Args)]
struct CounterexampleArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Order of the time derivative.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: Option<u32>,
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[command(flatten)]
    data: DataArgs,
    /// utm, witness:N, or an expression in x and t.
    #[arg(long)]
    candidate: Option<String>,
    /// Tolerance of utm evaluations.
    #[arg(long)]
    candidate_tol: Option<f64>,
}

fn run(cli: Cli) -> Result<Exit> {
    match cli.command {
        Command::Solve(a) => {
            let own = Config { grid: a.grid, ..a.data.config() };
            commands::solve(a.common.merged(own).map_err(usage)?)
        }
        Command::Counterexample(a) => {
            let own = Config { n: a.n, grid: a.grid, ..Config::default() };
            commands::counterexample(a.common.merged(own).map_err(usage)?)
        }
        Command::Verify(a) => {
            let own = Config { candidate: a.candidate, candidate_tol: a.candidate_tol, ..a.data.config() };
            commands::verify(a.common.merged(own).map_err(usage)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = if e.is::<UsageError>() { Exit::Usage } else { Exit::Compute };
            ExitCode::from(code as u8)
        }
    }
}
