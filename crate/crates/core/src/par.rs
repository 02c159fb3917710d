//! Index-ordered map over a range, parallel when the `parallel` feature is on.
//! Results are collected by index, so the output is identical for any worker
//! count, including the sequential fallback.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Evaluate `f` on `0..n` and collect results in index order.
///
/// `threads`: 0 uses the default worker pool, 1 runs strictly sequentially,
/// any other value runs on a dedicated pool of that size. Without the
/// `parallel` feature every call is sequential.
pub(crate) fn map_indexed<T, F>(n: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        match threads {
            1 => (0..n).map(f).collect(),
            0 => (0..n).into_par_iter().map(f).collect(),
            k => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build()
                    .expect("failed to build worker pool");
                pool.install(|| (0..n).into_par_iter().map(f).collect())
            }
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        (0..n).map(f).collect()
    }
}
