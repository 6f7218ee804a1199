//! Execution strategy for grid sweeps.
//!
//! Every sampling loop in the crate (polar grids, curve sampling, batches of
//! mappings) goes through [`Exec`]. With the `parallel` feature the parallel
//! strategy runs on rayon; without it both strategies run sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
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
    /// `(0..n).map(f).collect()`, order preserved.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    /// Minimum of `f(i)` over `0..n`; `+inf` when `n == 0`.
    pub fn min<F>(self, n: usize, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n)
                .into_par_iter()
                .map(f)
                .reduce(|| f64::INFINITY, f64::min),
            _ => (0..n).map(f).fold(f64::INFINITY, f64::min),
        }
    }

    /// Maximum of `f(i)` over `0..n`; `-inf` when `n == 0`.
    pub fn max<F>(self, n: usize, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        -self.min(n, |i| -f(i))
    }

    /// Element of `0..n` minimizing `key`, with the key value.
    pub fn argmin<T, F>(self, n: usize, f: F) -> Option<(f64, T)>
    where
        T: Send,
        F: Fn(usize) -> (f64, T) + Sync + Send,
    {
        let pick = |a: (f64, T), b: (f64, T)| if b.0 < a.0 { b } else { a };
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).reduce_with(pick),
            _ => (0..n).map(f).reduce(pick),
        }
    }
}
