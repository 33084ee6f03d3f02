//! Sequential/parallel dispatch for the data-parallel inner loops.
//!
//! With the `parallel` feature (default) the hot loops fan out over rayon;
//! without it the same call sites compile to plain iterators. The `parallel`
//! flag threaded through here lets callers force the sequential path at
//! runtime, which the benchmarks use to compare both.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn map_slice<T, U, F>(parallel: bool, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_slice<T, U, F>(_parallel: bool, items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
