//! Thread-pool selection. `MONOPOLE_DIRAC_THREADS` caps the worker count.

use rayon::ThreadPoolBuilder;

pub const THREADS_ENV: &str = "MONOPOLE_DIRAC_THREADS";

pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Runs `f` on a pool limited by [`THREADS_ENV`], or on the global pool.
pub fn install<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    match thread_cap().and_then(|n| ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}
