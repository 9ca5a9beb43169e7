//! Thin switch between rayon and plain iterators.
//!
//! Built with the `parallel` feature (the default) these helpers fan work out
//! over the rayon pool; without it they run sequentially.  Both paths emit
//! results in identical order, so every consumer stays deterministic.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..len`, preserving index order.
pub fn map_range<U, F>(len: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// First `Some` produced over `0..len`, scanning in index order.
pub fn find_map_range<U, F>(len: usize, f: F) -> Option<U>
where
    U: Send,
    F: Fn(usize) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).find_map(f)
    }
}

/// Map `f` over a slice, preserving order.
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}
