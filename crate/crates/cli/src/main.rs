//! `hodgecy` command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a verdict
//! is negative, 2 on malformed input or flags.

mod commands;
mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hodgecy::sampling::DEFAULT_SEED;

use crate::commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "hodgecy", version, about = "Exact checks for weight-three Calabi–Yau Hodge structures")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyAction {
    Check,
    Yukawa,
    Symmetry,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Potential,
    Standard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CubicsAction {
    Cartan,
    Su26,
    Match,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hodge numbers of the weight-three list and the domain table.
    Classify {
        /// Weight of the catalog (only 3 is available).
        #[arg(long)]
        weight: Option<u32>,
        /// Emit the table of Hermitian symmetric domains.
        #[arg(long)]
        table: bool,
    },
    /// Checks on the horizontal family of a cubic.
    Family {
        #[arg(value_enum)]
        action: FamilyAction,
        /// Cubic JSON file.
        #[arg(long)]
        cubic: PathBuf,
        /// Translation vector, comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        /// Second translation vector.
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
        /// Scaling factor.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Normalization for the Yukawa tensor.
        #[arg(long, value_enum, default_value_t = NormArg::Standard)]
        norm: NormArg,
    },
    /// Period-domain or unit-ball membership of a point.
    Hr {
        /// Cubic JSON file.
        #[arg(long, required_unless_present = "ball", conflicts_with = "ball")]
        cubic: Option<PathBuf>,
        /// Point JSON file.
        #[arg(long)]
        point: PathBuf,
        /// Use the unit-ball rule instead of a cubic.
        #[arg(long)]
        ball: bool,
    },
    /// Type of the degeneration `N = log T_v`.
    Lmhs {
        #[arg(long)]
        cubic: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// The Cartan cubic, the model cubic and their support isomorphism.
    Cubics {
        #[arg(value_enum)]
        action: CubicsAction,
        /// Run the full verification.
        #[arg(long)]
        verify: bool,
        /// Number of random Condition IV samples.
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Hodge star on the middle exterior power of a diagonal Hermitian form.
    Star {
        #[arg(long)]
        n: usize,
        /// Diagonal entries, comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        diag: String,
        /// The extension is `Q(√−e)`.
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        /// Height bound for the norm search.
        #[arg(long, default_value_t = hodgecy::hodgestar::DEFAULT_HEIGHT)]
        height: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            let _ = writeln!(io::stdout().lock(), "{}", output::render(&report.value, cli.format));
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}
