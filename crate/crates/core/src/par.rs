//! Data-parallel map with a sequential fallback.
//!
//! Heavy verification loops (Jacobi sweeps, equivariance checks, family
//! scans) map an independent check over a list of items. With the
//! `parallel` feature enabled these run on the rayon thread pool; without
//! it they run sequentially. Both paths collect results in input order, so
//! the feature (and thread count) can never change any computed value —
//! only wall-clock time.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Sizes the global thread pool from the TWISTLAB_THREADS environment
/// variable (a positive count). Call once at process start. Affects
/// wall-clock time only — every result is collected in input order, so
/// the pool size can never change an answer. Unset, unparsable, or zero
/// values leave the default pool; without the `parallel` feature this is
/// a no-op.
pub fn configure_threads_from_env() {
    #[cfg(feature = "parallel")]
    if let Some(n) = std::env::var("TWISTLAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Applies `f` to every item and collects results in input order.
#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(|t| f(t)).collect()
}

/// Applies `f` to every item and collects results in input order.
#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(|t| f(t)).collect()
}

/// Sequential variant kept available unconditionally so benchmarks can
/// compare both code paths in a single build.
pub fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(|t| f(t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_in_order() {
        let items: Vec<u64> = (0..1000).collect();
        let a = map_collect(items.clone(), |x| x * x + 1);
        let b = map_collect_seq(items, |x| x * x + 1);
        assert_eq!(a, b);
    }
}
