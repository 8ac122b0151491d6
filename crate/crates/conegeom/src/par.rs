//! Data-parallel map helpers.
//!
//! The crate parallelizes only embarrassingly parallel inner loops (quadrature
//! node evaluation, per-direction offset searches, Monte Carlo batches).
//! Results are always collected in index order and reduced with a fixed
//! pairwise tree, so parallel and sequential runs produce bit-identical
//! values.
//!
//! With the `parallel` feature (default) rayon is used and can be switched
//! off at runtime via [`set_parallel`]; without the feature the sequential
//! fallback is the only path.

#[cfg(feature = "parallel")]
use std::sync::atomic::{AtomicBool, Ordering};

#[cfg(feature = "parallel")]
static PARALLEL: AtomicBool = AtomicBool::new(true);

/// Enable or disable rayon at runtime. No-op without the `parallel` feature.
pub fn set_parallel(on: bool) {
    #[cfg(feature = "parallel")]
    PARALLEL.store(on, Ordering::Relaxed);
    #[cfg(not(feature = "parallel"))]
    let _ = on;
}

/// Whether work will actually run on the rayon pool.
pub fn parallel_enabled() -> bool {
    #[cfg(feature = "parallel")]
    {
        PARALLEL.load(Ordering::Relaxed)
    }
    #[cfg(not(feature = "parallel"))]
    {
        false
    }
}

/// Map `f` over `0..n`, collecting results in index order.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if parallel_enabled() && n >= 64 {
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    (0..n).map(f).collect()
}

/// Map `f` over a slice, collecting results in order.
pub fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if parallel_enabled() && items.len() >= 64 {
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Deterministic pairwise-tree sum. Summation order depends only on the
/// slice, never on thread scheduling.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}
