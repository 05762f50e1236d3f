//! Level-one elliptic eigenforms in the one-dimensional cusp spaces.

mod qexp;

pub use qexp::{
    delta_qexp, eisenstein_qexp, monomial_exponents, prime_eigenvalues, prime_eigenvalues_many, QExpansion,
};

use crate::numeric::{CoefficientSeries, EigenvalueMultiset, EulerFactor};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};

/// Default q-expansion precision.
pub const DEFAULT_PRECISION: usize = 10_000;

/// Weights w with dim S_w(SL₂(ℤ)) = 1.
pub const ONE_DIM_WEIGHTS: [u32; 6] = [12, 16, 18, 20, 22, 26];

/// Normalised Hecke eigenform of level one, a(1) = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticEigenform {
    weight: u32,
    qexp: QExpansion,
}

impl EllipticEigenform {
    /// Wraps an expansion; it must be a cusp form with a(1) = 1.
    pub fn from_qexp(qexp: QExpansion) -> Result<Self> {
        if qexp.precision() < 1 || !qexp.coeff(0).eq(&BigInt::from(0)) || !qexp.coeff(1).is_one()
        {
            return Err(Error::Data("eigenform must have a(0) = 0 and a(1) = 1".into()));
        }
        Ok(EllipticEigenform { weight: qexp.weight(), qexp })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn precision(&self) -> usize {
        self.qexp.precision()
    }

    pub fn qexp(&self) -> &QExpansion {
        &self.qexp
    }

    /// Exact a(n).
    pub fn coefficient(&self, n: usize) -> Result<&BigInt> {
        if n > self.precision() {
            return Err(Error::BeyondPrecision { p: n as u64, precision: self.precision() });
        }
        Ok(self.qexp.coeff(n))
    }

    /// a(n)/n^{(w−1)/2}.
    pub fn normalized_coefficient(&self, n: usize) -> Result<f64> {
        let a = self.coefficient(n)?;
        Ok(big_to_f64(a) / (n as f64).powf((self.weight as f64 - 1.0) / 2.0))
    }

    /// Series of normalised coefficients λ̂(1..=N).
    pub fn normalized_series(&self, n: usize) -> Result<CoefficientSeries> {
        if n > self.precision() {
            return Err(Error::SeriesTooShort { needed: n, have: self.precision() });
        }
        let half = (self.weight as f64 - 1.0) / 2.0;
        let c = (1..=n)
            .map(|m| Complex64::new(big_to_f64(self.qexp.coeff(m)) / (m as f64).powf(half), 0.0))
            .collect();
        Ok(CoefficientSeries::new(c, true))
    }
}

pub(crate) fn big_to_f64(a: &BigInt) -> f64 {
    a.to_f64().unwrap_or(f64::NAN)
}

/// The unique normalised eigenform of weight w, built as Δ·E₄^a·E₆^b.
pub fn eigenform_one_dim(weight: u32, n: usize) -> Result<EllipticEigenform> {
    monomial_exponents(weight)?;
    let coeffs = qexp::cusp_form_exact(weight, n.max(1))?;
    EllipticEigenform::from_qexp(QExpansion::new(weight, coeffs))
}

/// λ̂_f(p) = a_f(p)/p^{(w−1)/2}.
pub fn normalized_eigenvalue(f: &EllipticEigenform, p: u64) -> Result<f64> {
    if p as usize > f.precision() {
        return Err(Error::BeyondPrecision { p, precision: f.precision() });
    }
    f.normalized_coefficient(p as usize)
}

/// {γ, γ⁻¹} with γ + γ⁻¹ = λ̂ and |γ| = 1.
pub fn satake_from_normalized(lambda: f64, p: u64) -> Result<EigenvalueMultiset> {
    if lambda.abs() > 2.0 + 1e-9 {
        return Err(Error::RamanujanViolation { p, value: lambda.abs() });
    }
    let im = (4.0 - lambda * lambda).max(0.0).sqrt();
    let g = Complex64::new(lambda / 2.0, im / 2.0);
    // Project onto the unit circle to absorb the clamp above.
    let g = g / g.norm();
    EigenvalueMultiset::new(p, vec![g, g.conj()])
}

/// Satake parameters of f at p.
pub fn satake_gl2(f: &EllipticEigenform, p: u64) -> Result<EigenvalueMultiset> {
    satake_from_normalized(normalized_eigenvalue(f, p)?, p)
}

/// 1 − λ̂χ(p)X + χ(p)²X², or 1 when χ(p) = 0.
pub fn gl2_euler_factor(f: &EllipticEigenform, p: u64, chi: Complex64) -> Result<EulerFactor> {
    let lam = normalized_eigenvalue(f, p)?;
    gl2_factor_from_normalized(lam, p, chi)
}

pub fn gl2_factor_from_normalized(lam: f64, p: u64, chi: Complex64) -> Result<EulerFactor> {
    if chi.norm() == 0.0 {
        return Ok(EulerFactor::trivial(p));
    }
    EulerFactor::new(p, vec![Complex64::new(1.0, 0.0), -lam * chi, chi * chi])
}
