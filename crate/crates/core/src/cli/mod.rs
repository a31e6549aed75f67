//! Configuration-driven front end behind the `svalue` binary.
//!
//! Subcommands: `analyze <config>`, `repro <id>`, `region <config> --alpha ...`
//! and `dist cdf|quantile --dof r --at x`. Exit codes: 0 success, 1 repro
//! mismatch, 2 usage or config error, 3 numerical failure.

pub mod analyze;
pub mod config;
pub mod dist;
pub mod output;
pub mod region;
pub mod repro;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::Result;

pub use analyze::run_analyze;
pub use config::AnalysisConfig;
pub use dist::{run_dist, DistOp};
pub use region::run_region;
pub use repro::{run_repro, ReproId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "svalue",
    version,
    about = "s-values, p-values and belief pairs for null hypotheses"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One evidence report per null set listed in the config.
    Analyze {
        config: PathBuf,
        /// Add the exact conservative p-value (trinomial models only).
        #[arg(long)]
        conservative: bool,
    },
    /// Recompute a published example next to its printed values.
    Repro {
        /// ex1.1, ex1.2, ex5.1, ex5.2 or table1.
        id: String,
        /// Pass/fail tolerance applied to every cell.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Boundary points of likelihood confidence regions for a 2-parameter model.
    Region {
        config: PathBuf,
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',')]
        alpha: Vec<f64>,
        #[arg(long, default_value_t = region::DEFAULT_POINTS)]
        points: usize,
    },
    /// Chi-square CDF or quantile.
    Dist {
        #[arg(value_enum)]
        op: DistOp,
        #[arg(long)]
        dof: u32,
        #[arg(long, allow_negative_numbers = true)]
        at: f64,
    },
}

/// Rendered command output and the exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
}

impl Outcome {
    pub fn ok(text: String) -> Self {
        Self { text, exit_code: 0 }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Analyze {
            config,
            conservative,
        } => {
            let cfg = AnalysisConfig::from_path(config)?;
            let format = cli.format.or(cfg.format).unwrap_or(OutputFormat::Table);
            run_analyze(&cfg, *conservative, format).map(Outcome::ok)
        }
        Command::Repro { id, tolerance } => {
            let id: ReproId = id.parse()?;
            run_repro(id, *tolerance, cli.format.unwrap_or(OutputFormat::Table))
        }
        Command::Region {
            config,
            alpha,
            points,
        } => {
            let cfg = AnalysisConfig::from_path(config)?;
            let format = cli.format.or(cfg.format).unwrap_or(OutputFormat::Csv);
            run_region(&cfg, alpha, *points, format).map(Outcome::ok)
        }
        Command::Dist { op, dof, at } => {
            run_dist(*op, *dof, *at, cli.format.unwrap_or(OutputFormat::Table)).map(Outcome::ok)
        }
    }
}

/// Parses `args`, runs the command, writes its output and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &outcome.text),
        None => std::io::stdout().lock().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return 2;
    }
    outcome.exit_code
}
