//! Front end for `fcgp-core`: instance files, solver dispatch, experiment
//! sweeps and machine-readable result tables.
//!
//! Exit codes used by the `fcgp` binary:
//!
//! | code | meaning                                                    |
//! |------|------------------------------------------------------------|
//! | 0    | success                                                    |
//! | 1    | parse error, invalid input, I/O failure, resource limit    |
//! | 2    | unsupported parameter combination                          |
//! | 3    | subexponential solver: every prefix exceeded width budget  |
//! | 4    | experiment found a guarantee violation                     |

pub mod args;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod record;
pub mod solve;

pub use error::CliError;

/// Worker count: `FCGP_THREADS` if set to a positive integer, otherwise the
/// available parallelism.
pub fn thread_count() -> usize {
    std::env::var("FCGP_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `f` inside a rayon pool with exactly `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}
