//! Execution policy for data-parallel inner loops.
//!
//! With the default `parallel` feature the index map fans out over rayon;
//! without it the same call is a plain sequential map. Callers are written
//! so results are a pure function of the index, which keeps output
//! bit-identical across both policies and any thread count.

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}
