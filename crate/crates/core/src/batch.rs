//! Ordered batch evaluation over many independent instances.
//!
//! A single packing run is inherently serial, but comparison sweeps,
//! property suites, and benchmarks evaluate thousands of independent
//! (instance, algorithm, seed) cells. With the `parallel` feature (on by
//! default) [`map`] fans those cells out across a rayon pool; without it the
//! same call runs sequentially. Results always come back in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to every element, in parallel when the `parallel` feature is
/// enabled. Output order matches input order either way.
#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Applies `f` to every element, in parallel when the `parallel` feature is
/// enabled. Output order matches input order either way.
#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Always-sequential variant, kept as the baseline the benches compare
/// against.
pub fn map_seq<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}
