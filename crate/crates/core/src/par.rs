//! Execution mode for the batch checks.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] fans work
//! out over rayon's pool. Without it, both modes run on the calling thread.
//! Results are always returned in input order so output stays deterministic.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Maps over an index range, preserving order.
    pub fn map_range<U, F>(self, lo: i64, hi: i64, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(i64) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (lo..hi).into_par_iter().map(f).collect(),
            _ => (lo..hi).map(f).collect(),
        }
    }

    /// First error by index order over `lo..hi`, or `Ok(())`.
    pub fn try_range<E, F>(self, lo: i64, hi: i64, f: F) -> Result<(), E>
    where
        E: Send,
        F: Fn(i64) -> Result<(), E> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (lo..hi)
                .into_par_iter()
                .map(f)
                .find_first(Result::is_err)
                .unwrap_or(Ok(())),
            _ => (lo..hi).try_for_each(f),
        }
    }
}
