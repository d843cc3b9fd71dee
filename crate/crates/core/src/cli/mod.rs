//! The `rmt` command line: config-driven experiment runs that emit versioned
//! CSV tables and a run manifest.
//!
//! Exit codes: 0 on success, 2 on usage, config or parameter errors, 3 when a
//! rate fit has too few usable cells.

mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{CellSpec, EnsembleKind, ExperimentConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    InsufficientData(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            Self::InsufficientData(_) => 3,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::InsufficientData { .. } => Self::InsufficientData(e.to_string()),
            other => Self::Usage(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "rmt",
    version,
    about = "β-ensemble tridiagonal models and concentration experiments"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Experiment config (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Master seed; falls back to RMT_SEED, then the config, then 0.
    #[arg(long, global = true, env = "RMT_SEED")]
    pub seed: Option<u64>,
    /// Existing output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 or absent uses all cores. Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Args, serde::Serialize)]
pub struct CellArgs {
    #[arg(long, value_enum)]
    pub ensemble: Option<EnsembleKind>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Polynomial zeros as eigenvalues of the deterministic matrices.
    Zeros(CellArgs),
    /// Tail probabilities of the max deviation from the zeros, with a rate fit.
    Concentration,
    /// Jacobi moment statistics, their closed forms and scaling fits.
    Moments,
    /// Kolmogorov distance of the rescaled Jacobi spectrum to the semicircle.
    Semicircle {
        #[command(flatten)]
        cell: CellArgs,
        /// Sampled spectra to pool; 0 uses the polynomial zeros.
        #[arg(long, default_value_t = 1)]
        draws: u64,
    },
    /// Regenerate the symmetric-beta tail-bound constants.
    CalibrateBounds {
        /// Draws per (k, l) cell.
        #[arg(long)]
        draws: Option<u64>,
    },
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
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
    match dispatch(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("rmt: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Zeros(cell) => commands::zeros(&cli.global, cell),
        Command::Concentration => commands::concentration(&cli.global),
        Command::Moments => commands::moments(&cli.global),
        Command::Semicircle { cell, draws } => commands::semicircle(&cli.global, cell, *draws),
        Command::CalibrateBounds { draws } => commands::calibrate_bounds(&cli.global, *draws),
    })
}
