//! Data-parallel kernels with a sequential fallback.
//!
//! With the `parallel` feature (on by default) the kernels run on the rayon
//! global pool; without it, or when [`Execution::Sequential`] is requested,
//! they run on the calling thread. Results are identical in both modes:
//! counts are exact, and floating-point sums are reduced over fixed-size
//! chunks in index order so the rounding pattern never depends on scheduling.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Chunk length for deterministic floating-point reductions.
const SUM_CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// True when work will actually be spread over the thread pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Number of indices in `range` satisfying `pred`.
pub fn count_matching<P>(exec: Execution, range: Range<u64>, pred: P) -> u64
where
    P: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().filter(|&i| pred(i)).count() as u64;
    }
    let _ = exec;
    range.filter(|&i| pred(i)).count() as u64
}

/// Sum of `term(i)` over `range`, chunked so the result is bit-identical
/// between sequential and parallel execution.
pub fn chunked_sum<T>(exec: Execution, range: Range<u64>, term: T) -> f64
where
    T: Fn(u64) -> f64 + Sync + Send,
{
    if range.is_empty() {
        return 0.0;
    }
    let start = range.start;
    let len = range.end - range.start;
    let chunks = len.div_ceil(SUM_CHUNK);
    let chunk_sum = |c: u64| -> f64 {
        let lo = start + c * SUM_CHUNK;
        let hi = (lo + SUM_CHUNK).min(range.end);
        // Sum the small tail terms first within each chunk.
        (lo..hi).rev().map(&term).sum()
    };

    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        let partial: Vec<f64> = (0..chunks).into_par_iter().map(chunk_sum).collect();
        return partial.iter().rev().sum();
    }
    let _ = exec;
    let partial: Vec<f64> = (0..chunks).map(chunk_sum).collect();
    partial.iter().rev().sum()
}

/// Maps `f` over `items`, preserving order.
pub fn map_ordered<I, O, F>(exec: Execution, items: &[I], f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}
