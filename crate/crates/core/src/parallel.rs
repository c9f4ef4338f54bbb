//! Worker pools for the exhaustive enumerations.
//!
//! Every parallel stage collects results in input order, so the output of a
//! search never depends on the worker count.

use rayon::prelude::*;

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "DM_WORKERS";

/// Worker count from `DM_WORKERS`, defaulting to the available cores.
pub fn workers_from_env() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(default_workers)
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Runs `f` inside a dedicated pool of `workers` threads.
pub fn with_workers<R, F>(workers: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
    {
        Ok(pool) => pool.install(f),
        // Thread spawning can fail in constrained sandboxes; the result is the
        // same on the calling thread.
        Err(_) => f(),
    }
}

/// `filter_map` over `items`, results in input order.
pub fn ordered_filter_map<T, R, F>(workers: usize, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    with_workers(workers, || items.par_iter().filter_map(&f).collect())
}

/// `filter_map` over the half-open code range `[start, end)`, results in order.
pub fn ordered_range_filter_map<R, F>(workers: usize, start: u64, end: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    with_workers(workers, || {
        (start..end).into_par_iter().filter_map(&f).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn results_keep_input_order() {
        let one = ordered_range_filter_map(1, 0, 10_000, |i| (i % 7 == 0).then_some(i));
        let many = ordered_range_filter_map(8, 0, 10_000, |i| (i % 7 == 0).then_some(i));
        assert_eq!(one, many);
        assert!(one.windows(2).all(|w| w[0] < w[1]));
    }
}
