//! `sumrank`: command-line front end for the sumrank library.

mod commands;
mod oracle;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sumrank::Caps;

#[derive(Parser, Debug)]
#[command(name = "sumrank", version, about = "Exact computations for linear sum-rank metric codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Upper bound applied to every enumeration (codewords, subspaces,
    /// isometry group, message pairs).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: Option<u64>,
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Recompute every result by brute force and fail on disagreement.
    #[arg(long, global = true)]
    pub oracle: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Product,
    All,
    Supp,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sum-rank weight of a tuple.
    Srk { tuple: PathBuf },
    /// Minimum distance of a code.
    Dist { code: PathBuf },
    /// Dual code.
    Dual { code: PathBuf },
    /// Generalized weights.
    Gweights {
        code: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::Product)]
        variant: VariantArg,
        /// `all` or a single index.
        #[arg(long, default_value = "all")]
        r: String,
    },
    /// MSRD status and the equivalent conditions.
    Msrd { code: PathBuf },
    /// Whether a code is an optimal anticode, with its decomposition.
    Anticode { code: PathBuf },
    /// Covering number of the pivot pattern of a matrix list.
    Rho { matrices: PathBuf },
    /// 0/1 combination of a matrix list with rank at least the covering number.
    Meshulam { matrices: PathBuf },
    /// Isometry between two codes; with one code, against a seeded random
    /// image of it.
    Equiv { a: PathBuf, b: Option<PathBuf> },
    /// Leakage of a wiretap scenario and the threshold table.
    Leak { code: PathBuf, taps: PathBuf },
    /// Expansion of an extension-field code over the prime field.
    Expand { ext: PathBuf },
}

/// Failure classes, mapped to exit codes 1 and 2.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Bug(String),
}

impl From<sumrank::Error> for Failure {
    fn from(e: sumrank::Error) -> Self {
        if e.is_invariant_violation() {
            Failure::Bug(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

pub fn caps_of(cli: &Cli) -> Caps {
    let mut caps = Caps::default();
    if let Some(c) = cli.cap {
        let c = u128::from(c);
        caps.codewords = c;
        caps.subspaces = c;
        caps.group = c;
        caps.mi = c;
    }
    caps
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Bug(msg)) => {
            eprintln!("invariant violation: {msg}");
            ExitCode::from(2)
        }
    }
}
