//! Degree-parallel execution.
//!
//! Graded slices at distinct internal degrees are independent, so windowed
//! computations map over degrees with rayon when the `parallel` feature is
//! enabled. Results are collected in degree order either way, so output is
//! identical across modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for windowed (per-degree) computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    /// Data-parallel over degrees via rayon.
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
    /// Plain sequential loop.
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
}

/// Applies `f` to every degree in `lo..=hi` inclusive, in order.
pub fn map_degrees<T, F>(exec: Exec, lo: i64, hi: i64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(i64) -> T + Sync + Send,
{
    if lo > hi {
        return Vec::new();
    }
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (lo..=hi).collect::<Vec<_>>().into_par_iter().map(f).collect(),
        Exec::Sequential => (lo..=hi).map(f).collect(),
    }
}
