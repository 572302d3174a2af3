//! Batch front end for the clifft verifier suite.
//!
//! Each command runs a group of checks and writes `report.csv` (one row per
//! check), `summary.json` and plot data into the output directory.

pub mod bench;
pub mod config;
pub mod output;
pub mod plotdata;
pub mod run;
pub mod suite;

pub use config::{Cli, Command, ConfigError, RunConfig};
pub use run::{run, Outcome, RunError};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "CLIFFT_THREADS";

/// Size the global worker pool from [`THREADS_ENV`], if set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

/// Threads available to the data-parallel loops.
pub fn worker_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}
