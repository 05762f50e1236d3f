use super::EigenvalueMultiset;
use crate::{Error, Result};
use num_complex::Complex64;

/// Trailing coefficients below this magnitude are dropped.
pub const TRIM_TOL: f64 = 1e-12;

/// Inverse local factor L_p(s)^{-1} = Σ c_i X^i with X = p^{-s} and c_0 = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerFactor {
    prime: u64,
    coeffs: Vec<Complex64>,
}

impl EulerFactor {
    /// Builds a factor, trimming negligible trailing coefficients.
    pub fn new(prime: u64, coeffs: Vec<Complex64>) -> Result<Self> {
        match coeffs.first() {
            Some(c0) if *c0 == Complex64::new(1.0, 0.0) => {}
            _ => {
                return Err(Error::InvalidArgument(
                    "Euler factor must have constant term 1".into(),
                ))
            }
        }
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().unwrap().norm() <= TRIM_TOL {
            coeffs.pop();
        }
        Ok(EulerFactor { prime, coeffs })
    }

    pub fn from_real(prime: u64, coeffs: &[f64]) -> Result<Self> {
        Self::new(prime, coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// The factor 1.
    pub fn trivial(prime: u64) -> Self {
        EulerFactor { prime, coeffs: vec![Complex64::new(1.0, 0.0)] }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Value of the polynomial at X.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
    }

    /// First `len` coefficients of 1/P(X), i.e. the local L-series c(p^e).
    pub fn inverse_series(&self, len: usize) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        if len == 0 {
            return out;
        }
        out[0] = Complex64::new(1.0, 0.0);
        for e in 1..len {
            let mut s = Complex64::new(0.0, 0.0);
            for i in 1..=self.degree().min(e) {
                s -= self.coeffs[i] * out[e - i];
            }
            out[e] = s;
        }
        out
    }

    /// Largest coefficient-wise distance to another factor (missing terms count as 0).
    pub fn max_distance(&self, other: &EulerFactor) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(zero);
                let b = other.coeffs.get(i).copied().unwrap_or(zero);
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Expands ∏ (1 − α X) over the multiset.
pub fn euler_factor_from_roots(roots: &EigenvalueMultiset, prime: u64) -> Result<EulerFactor> {
    if roots.is_empty() {
        return Err(Error::InvalidArgument("empty root multiset".into()));
    }
    if roots.values().iter().any(|v| v.norm() == 0.0) {
        return Err(Error::SingularSatake);
    }
    let mut poly = vec![Complex64::new(1.0, 0.0)];
    for &a in roots.values() {
        let mut next = poly.clone();
        next.push(Complex64::new(0.0, 0.0));
        for i in 0..poly.len() {
            next[i + 1] -= a * poly[i];
        }
        poly = next;
    }
    poly[0] = Complex64::new(1.0, 0.0);
    EulerFactor::new(prime, poly)
}
