//! Command-line front end: simulate datasets, fit at fixed `(N, C)`, run the
//! grid search with region selection, and print run summaries.

pub mod commands;
pub mod config;
pub mod error;
pub mod svg;

pub use error::{CliError, CliResult};

/// Caps the global worker pool at `SEGDP_THREADS` when set.
pub fn init_threads() -> CliResult<()> {
    let Ok(value) = std::env::var("SEGDP_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            CliError::Config(format!(
                "SEGDP_THREADS must be a positive integer, got {value:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Runtime(e.to_string()))
}
