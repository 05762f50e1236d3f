use crate::{Error, Result};
use num_complex::Complex64;
use std::cmp::Ordering;

/// Default tolerance for multiset comparison.
pub const MULTISET_TOL: f64 = 1e-9;

/// Unordered collection of nonzero Satake-type parameters at a prime.
#[derive(Clone, Debug)]
pub struct EigenvalueMultiset {
    prime: u64,
    values: Vec<Complex64>,
}

fn canonical_cmp(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Distance scaled so that large parameters are compared relatively.
fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
}

impl EigenvalueMultiset {
    pub fn new(prime: u64, values: Vec<Complex64>) -> Result<Self> {
        if values.iter().any(|v| !(v.norm() > 0.0)) {
            return Err(Error::SingularSatake);
        }
        Ok(EigenvalueMultiset { prime, values })
    }

    /// Skips the nonzero check; for callers constructing known-good data.
    pub fn new_unchecked(prime: u64, values: Vec<Complex64>) -> Self {
        EigenvalueMultiset { prime, values }
    }

    pub fn from_real(prime: u64, values: &[f64]) -> Result<Self> {
        Self::new(prime, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Copy sorted by real part, then imaginary part.
    pub fn canonical(&self) -> Vec<Complex64> {
        let mut v = self.values.clone();
        v.sort_by(canonical_cmp);
        v
    }

    /// Multiset equality up to `tol`.
    ///
    /// Sorted element-wise comparison first; when floating-point noise
    /// reorders near-ties (typically conjugate pairs with tiny real parts),
    /// falls back to greedy nearest matching.
    pub fn approx_eq(&self, other: &EigenvalueMultiset, tol: f64) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let a = self.canonical();
        let b = other.canonical();
        if a.iter().zip(&b).all(|(x, y)| close(*x, *y, tol)) {
            return true;
        }
        let mut used = vec![false; b.len()];
        for x in &a {
            let best = b
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .min_by(|(_, y1), (_, y2)| (*x - **y1).norm().total_cmp(&(*x - **y2).norm()));
            match best {
                Some((i, y)) if close(*x, *y, tol) => used[i] = true,
                _ => return false,
            }
        }
        true
    }

    /// Number of entries within `tol` of `target`.
    pub fn multiplicity(&self, target: Complex64, tol: f64) -> usize {
        self.values.iter().filter(|v| close(**v, target, tol)).count()
    }

    /// Removes one entry close to `target`, if any.
    pub fn remove_one(&self, target: Complex64, tol: f64) -> Option<EigenvalueMultiset> {
        let idx = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| close(**v, target, tol))
            .min_by(|(_, a), (_, b)| (**a - target).norm().total_cmp(&(**b - target).norm()))?
            .0;
        let mut values = self.values.clone();
        values.remove(idx);
        Some(EigenvalueMultiset { prime: self.prime, values })
    }

    pub fn union(&self, other: &EigenvalueMultiset) -> EigenvalueMultiset {
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        EigenvalueMultiset { prime: self.prime, values }
    }

    pub fn scale(&self, c: Complex64) -> EigenvalueMultiset {
        EigenvalueMultiset { prime: self.prime, values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn inverses(&self) -> EigenvalueMultiset {
        EigenvalueMultiset { prime: self.prime, values: self.values.iter().map(|v| v.inv()).collect() }
    }

    pub fn product(&self) -> Complex64 {
        self.values.iter().fold(Complex64::new(1.0, 0.0), |acc, v| acc * v)
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().fold(Complex64::new(0.0, 0.0), |acc, v| acc + v)
    }

    /// Closed under v ↦ 1/v up to `tol`.
    pub fn is_inversion_closed(&self, tol: f64) -> bool {
        self.approx_eq(&self.inverses(), tol)
    }
}
