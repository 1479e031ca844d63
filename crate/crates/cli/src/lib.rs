//! Command-line front end for the `alpha-disk` toolkit.
//!
//! Exit codes: 0 success, 1 a verified bound failed, 2 usage, 3 numerical failure.

pub mod args;
pub mod commands;
pub mod inputs;
pub mod output;
pub mod sweeps;

use std::ffi::OsString;

use alpha_disk::{DiskError, QuadratureSpec};
use clap::Parser;

pub use args::Cli;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub const THREADS_ENV: &str = "ALPHA_DISK_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(#[from] DiskError),
    #[error("{0}")]
    Failures(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Numerical(_) | CliError::Failures(_) => EXIT_NUMERICAL,
        }
    }
}

/// Applies the quadrature overrides to the defaults.
pub fn quadrature_spec(common: &args::CommonArgs) -> Result<QuadratureSpec, CliError> {
    let mut spec = QuadratureSpec::default();
    if let Some(n) = common.circle_nodes {
        spec = spec.with_circle_nodes(n);
    }
    if let Some(n) = common.radial_nodes {
        spec = spec.with_radial_nodes(n);
    }
    if let Some(n) = common.ring_levels {
        spec = spec.with_ring_levels(n);
    }
    spec = spec.with_tolerances(
        common.abs_tol.unwrap_or(spec.abs_tol),
        common.rel_tol.unwrap_or(spec.rel_tol),
    );
    spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(spec)
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
    // a second call in the same process finds the pool already built
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match configure_threads().and_then(|_| commands::run(&cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("alpha-disk: {e}");
            e.exit_code()
        }
    }
}
