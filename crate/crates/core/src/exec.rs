//! Execution strategy for the data-parallel inner loops.
//!
//! With the `parallel` feature (on by default) [`Parallelism::Parallel`]
//! fans work out over the rayon pool. Without it every call runs on the
//! current thread, so results never depend on the feature: each helper
//! preserves input order.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    /// Whether work will actually be spread across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

/// Order-preserving map over a slice.
pub fn map_slice<T, R, F>(items: &[T], par: Parallelism, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = par;
    items.iter().map(f).collect()
}

/// Order-preserving map over `0..len`.
pub fn map_range<R, F>(len: usize, par: Parallelism, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = par;
    (0..len).map(f).collect()
}

/// Maps every item to a batch of outputs and concatenates them in input order.
pub fn flat_map_slice<T, R, F>(items: &[T], par: Parallelism, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Vec<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().flat_map_iter(f).collect();
    }
    let _ = par;
    items.iter().flat_map(f).collect()
}

/// Sorts and deduplicates, in parallel when allowed.
pub fn sort_dedup<T: Ord + Send>(items: &mut Vec<T>, par: Parallelism) {
    #[cfg(feature = "parallel")]
    if par.is_parallel() {
        use rayon::prelude::*;
        items.par_sort_unstable();
        items.dedup();
        return;
    }
    let _ = par;
    items.sort_unstable();
    items.dedup();
}
