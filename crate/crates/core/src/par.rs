//! Thin data-parallel layer.
//!
//! With the `parallel` feature the maps run on the rayon pool; without it
//! they are ordinary iterators. Both return results in input order, and all
//! sums are folded left-to-right afterwards, so the numerical output is the
//! same bit pattern for any thread count.

use num_complex::Complex64;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n`, preserving order.
pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Map `f` over a slice, preserving order.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Send + Sync,
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

/// Left-to-right complex sum.
pub fn sum_complex(values: &[Complex64]) -> Complex64 {
    values.iter().fold(Complex64::new(0.0, 0.0), |acc, v| acc + v)
}

/// Left-to-right real sum.
pub fn sum_real(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |acc, v| acc + v)
}

/// Map then reduce in a fixed order.
pub fn map_sum_complex<F>(n: usize, f: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Send + Sync,
{
    sum_complex(&map_range(n, f))
}

/// Whether the crate was built with the rayon backend.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
