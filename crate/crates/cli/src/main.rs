//! `cycdes`: weight distributions and t-designs of the extended primitive
//! cyclic codes C_{D_h} over GF(p^m).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cycdes_core::{Error, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "cycdes", version, about)]
pub struct RunConfig {
    /// Field characteristic (a prime).
    #[arg(long = "p", global = true)]
    pub p: Option<u64>,
    /// Extension degree; q = p^m.
    #[arg(long = "m", global = true)]
    pub m: Option<u32>,
    /// Highest Frobenius power in the generator; requires h < m.
    #[arg(long = "h", global = true)]
    pub h: Option<u32>,
    /// Largest t to verify designs for.
    #[arg(long = "t", global = true, default_value_t = 2)]
    pub t_max: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Maximum number of codewords any enumeration may visit.
    #[arg(long, global = true, env = "CYCDES_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Skip brute-force enumeration in `weights`.
    #[arg(long, global = true)]
    pub formula_only: bool,
    /// Permit --t above 3; the work grows as C(k, t) per block.
    #[arg(long, global = true)]
    pub allow_large_t: bool,
    /// Export the block set of this weight in design text format (`designs --format text`).
    #[arg(long, global = true)]
    pub weight: Option<u64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Field modulus and primitive-element check.
    FieldInfo,
    /// Weight distribution: closed form next to exhaustive enumeration.
    Weights,
    /// Block sets and t-design verdicts for every weight class.
    Designs,
    /// Exit 0 iff every applicable closed form matches exhaustive verification.
    Verify,
    /// Kernel-count, rank, minimum-weight and cyclic-shift audits.
    Audit,
}

/// Process exit statuses.
pub mod exit {
    pub const OK: u8 = 0;
    pub const BAD_PARAMETERS: u8 = 2;
    pub const MISMATCH: u8 = 3;
    pub const BUDGET: u8 = 4;
}

/// A command failure carrying its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::BruteForceTooLarge { .. } => exit::BUDGET,
            Error::NonconstantMultiplicity { .. } | Error::NonIntegerLambda { .. } => exit::MISMATCH,
            _ => exit::BAD_PARAMETERS,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit::BAD_PARAMETERS);
        }
    };
    let outcome = pool.install(|| commands::run(&cfg));
    let (output, code) = match outcome {
        Ok(out) => out,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &output),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(output.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(exit::BAD_PARAMETERS);
    }
    ExitCode::from(code)
}
