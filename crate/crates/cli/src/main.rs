//! `gelfand-lab`: exact verification suites, Monte Carlo runs and tables for
//! random partitions under the Gelfand and Plancherel measures.

mod commands;
mod provenance;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gelfand_core::verify::Suite;
use gelfand_core::Measure;
use serde::Serialize;

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    StatisticalFailure = 1,
    ExactFailure = 2,
    Usage = 64,
    Io = 74,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gelfand_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn status(&self) -> Status {
        match self {
            CliError::Core(_) => Status::Usage,
            CliError::Io { .. } => Status::Io,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Exact,
    Algebra,
    Oracle,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Exact => Suite::Exact,
            SuiteArg::Algebra => Suite::Algebra,
            SuiteArg::Oracle => Suite::Oracle,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    Gelfand,
    Plancherel,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Measure {
        match m {
            MeasureArg::Gelfand => Measure::Gelfand,
            MeasureArg::Plancherel => Measure::Plancherel,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "gelfand-lab", version = provenance::VERSION, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        suite: SuiteArg,
        /// Largest partition size enumerated exactly.
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Sample random partitions and compare observables with their gaussian limits.
    Sample(SampleArgs),
    /// Print an exact table as CSV.
    #[command(subcommand)]
    Table(TableCommand),
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// One or both measures; with both, variance ratios are reported.
    #[arg(long, value_delimiter = ',', default_value = "gelfand")]
    measure: Vec<MeasureArg>,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 2000)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Cycle lengths of the recorded central characters.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
    k: Vec<usize>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Worker threads; defaults to the hardware parallelism.
    #[arg(long, env = "GELFAND_LAB_THREADS")]
    threads: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "csv,json,svg")]
    format: Vec<Format>,
}

#[derive(Debug, Subcommand)]
enum TableCommand {
    /// Involution counts for n = 0..=nmax.
    Involutions {
        #[arg(long, default_value_t = 10)]
        nmax: usize,
    },
    /// Exact probabilities of every partition of n.
    Measure { measure: MeasureArg, n: usize },
    /// Exact expectation of the central character of type `mu` for n = 0..=nmax.
    Expectation {
        /// Parts separated by commas, e.g. `2,1`.
        mu: String,
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        #[arg(long, value_enum, default_value = "gelfand")]
        measure: MeasureArg,
    },
}

fn run(cli: Cli) -> Result<Status, CliError> {
    match cli.command {
        Command::Verify { suite, nmax, seed } => commands::verify(suite.into(), nmax, seed),
        Command::Sample(args) => commands::sample(&args),
        Command::Table(TableCommand::Involutions { nmax }) => commands::table_involutions(nmax),
        Command::Table(TableCommand::Measure { measure, n }) => commands::table_measure(measure.into(), n),
        Command::Table(TableCommand::Expectation { mu, nmax, measure }) => {
            commands::table_expectation(&mu, nmax, measure.into())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(Status::Usage as u8) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status() as u8)
        }
    }
}
