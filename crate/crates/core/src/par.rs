//! Order-preserving data-parallel helpers. With the `parallel` feature off
//! everything runs on the calling thread and produces identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `f` applied to every item, results in input order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
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

/// `f` applied to `0..n`, concatenated in index order.
pub fn flat_map_range<R, F>(n: u32, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u32) -> Vec<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().flat_map_iter(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).flat_map(f).collect()
    }
}

/// Whether the crate was built with the parallel backend.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
