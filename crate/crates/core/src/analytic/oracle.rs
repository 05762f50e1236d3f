//! Exponentially damped Dirichlet series with Richardson extrapolation.
//!
//! Σ c(n) e^{−n/Y} = L + Σ_m c_m Y^{−m} + (exponentially small), so a
//! polynomial fit in 1/Y through several damping lengths recovers L.

use crate::{Error, Result};
use num_complex::Complex64;

/// Terms beyond this many damping lengths are below e^{−40}.
pub const DAMPING_SPAN: f64 = 40.0;

/// Neville extrapolation of the points (h_i, v_i) to h = 0.
pub fn richardson(hs: &[f64], values: &[Complex64]) -> Complex64 {
    assert_eq!(hs.len(), values.len());
    let mut p = values.to_vec();
    let n = p.len();
    for m in 1..n {
        for i in 0..n - m {
            let (hi, hj) = (hs[i], hs[i + m]);
            p[i] = (p[i] * (-hj) + p[i + 1] * hi) / (hi - hj);
        }
    }
    p[0]
}

/// Σ_{n ≤ span·Y} c(n) e^{−n/Y} with c(1) at index 0.
pub fn damped_sum(coeffs: &[Complex64], y: f64) -> Result<Complex64> {
    let len = (DAMPING_SPAN * y).ceil() as usize;
    if len > coeffs.len() {
        return Err(Error::InsufficientPrecision { needed: len, have: coeffs.len() });
    }
    Ok(coeffs[..len]
        .iter()
        .enumerate()
        .fold(Complex64::new(0.0, 0.0), |acc, (i, &c)| acc + c * (-((i + 1) as f64) / y).exp()))
}

/// Extrapolated value of the series at the damping limit.
pub fn smoothed_value(coeffs: &[Complex64], ys: &[f64]) -> Result<Complex64> {
    if ys.is_empty() {
        return Err(Error::InvalidArgument("need at least one damping length".into()));
    }
    let vals = crate::par::map_slice(ys, |&y| damped_sum(coeffs, y));
    let vals: Vec<Complex64> = vals.into_iter().collect::<Result<_>>()?;
    let hs: Vec<f64> = ys.iter().map(|y| 1.0 / y).collect();
    Ok(richardson(&hs, &vals))
}
