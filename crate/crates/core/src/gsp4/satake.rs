//! Spin Satake parameters, Hecke eigenvalues and local spinor/standard factors.

use crate::numeric::{euler_factor_from_roots, exterior_square, EigenvalueMultiset, EulerFactor};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

/// Analytically normalised spin parameters {α, α⁻¹, β, β⁻¹} at p.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinSatake {
    pub prime: u64,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl SpinSatake {
    pub fn new(prime: u64, alpha: Complex64, beta: Complex64) -> Result<Self> {
        if !(alpha.norm() > 0.0 && beta.norm() > 0.0) {
            return Err(Error::SingularSatake);
        }
        Ok(SpinSatake { prime, alpha, beta })
    }

    pub fn multiset(&self) -> EigenvalueMultiset {
        EigenvalueMultiset::new_unchecked(
            self.prime,
            vec![self.alpha, self.alpha.inv(), self.beta, self.beta.inv()],
        )
    }

    /// A = α + α⁻¹ and B = β + β⁻¹.
    pub fn traces(&self) -> (Complex64, Complex64) {
        (self.alpha + self.alpha.inv(), self.beta + self.beta.inv())
    }
}

fn pow_half(p: u64, e: f64) -> f64 {
    (p as f64).powf(e)
}

/// Root of x + x⁻¹ = t, principal branch.
fn split_trace(t: Complex64) -> Complex64 {
    (t + (t * t - 4.0).sqrt()) / 2.0
}

/// Solves for the balanced multiset from λ_F(p), λ_F(p²).
pub fn satake_from_hecke(lp: f64, lp2: f64, k: u32, p: u64) -> SpinSatake {
    satake_from_hecke_complex(Complex64::new(lp, 0.0), Complex64::new(lp2, 0.0), k, p)
}

pub fn satake_from_hecke_complex(lp: Complex64, lp2: Complex64, k: u32, p: u64) -> SpinSatake {
    let kf = k as f64;
    let s = lp / pow_half(p, kf - 1.5);
    let t = lp2 / pow_half(p, 2.0 * kf - 3.0) + 2.0 + 1.0 / p as f64;
    // A, B are the roots of z² − s z + (s² − t).
    let disc = (4.0 * t - 3.0 * s * s).sqrt();
    let a = (s + disc) / 2.0;
    let b = (s - disc) / 2.0;
    SpinSatake { prime: p, alpha: split_trace(a), beta: split_trace(b) }
}

/// (λ_F(p), λ_F(p²)) as complex numbers; real for inversion-closed input.
pub fn hecke_from_satake_complex(sp: &SpinSatake, k: u32) -> (Complex64, Complex64) {
    let kf = k as f64;
    let p = sp.prime;
    let (a, b) = sp.traces();
    let lp = pow_half(p, kf - 1.5) * (a + b);
    let lp2 = pow_half(p, 2.0 * kf - 3.0) * (a * a + a * b + b * b - 2.0 - 1.0 / p as f64);
    (lp, lp2)
}

pub fn hecke_from_satake(sp: &SpinSatake, k: u32) -> (f64, f64) {
    let (a, b) = hecke_from_satake_complex(sp, k);
    (a.re, b.re)
}

/// Degree-4 factor with the normalised spin parameters as roots.
pub fn spin_factor_satake(sp: &SpinSatake) -> EulerFactor {
    euler_factor_from_roots(&sp.multiset(), sp.prime).expect("nonzero parameters")
}

/// Spin factor written in Hecke eigenvalues, shifted to the analytic normalisation.
pub fn spin_factor_hecke(lp: f64, lp2: f64, k: u32, p: u64) -> EulerFactor {
    let kf = k as f64;
    let pf = p as f64;
    let raw = [
        1.0,
        -lp,
        lp * lp - lp2 - pf.powf(2.0 * kf - 4.0),
        -lp * pf.powf(2.0 * kf - 3.0),
        pf.powf(4.0 * kf - 6.0),
    ];
    normalise(&raw, k, p)
}

/// As [`spin_factor_hecke`] with exact integer eigenvalues; the integer
/// coefficients are formed exactly and divided once.
pub fn spin_factor_hecke_exact(lp: &BigInt, lp2: &BigInt, k: u32, p: u64) -> EulerFactor {
    let pb = BigInt::from(p);
    let c2 = lp * lp - lp2 - pb.pow(2 * k - 4);
    let c3 = -(lp * pb.pow(2 * k - 3));
    let c4 = pb.pow(4 * k - 6);
    let big = |x: &BigInt| crate::gl2::big_to_f64(x);
    let raw = [1.0, -big(lp), big(&c2), big(&c3), big(&c4)];
    normalise(&raw, k, p)
}

fn normalise(raw: &[f64; 5], k: u32, p: u64) -> EulerFactor {
    let shift = k as f64 - 1.5;
    let coeffs = raw
        .iter()
        .enumerate()
        .map(|(i, c)| Complex64::new(if i == 0 { 1.0 } else { c / (p as f64).powf(i as f64 * shift) }, 0.0))
        .collect();
    EulerFactor::new(p, coeffs).expect("constant term is 1")
}

/// Standard factor from exact integer Hecke data.
///
/// With A = α + α⁻¹, B = β + β⁻¹ the quartic part has roots αβ, 1/(αβ),
/// α/β, β/α and equals 1 − e X + (A² + B² − 2) X² − e X³ + X⁴ with e = AB.
/// Both AB and A² + B² are rational in λ_F(p), λ_F(p²), so the result is
/// exact up to one final rounding per coefficient.
pub fn std_factor_hecke_exact(lp: &BigInt, lp2: &BigInt, k: u32, p: u64) -> EulerFactor {
    let pb = BigInt::from(p);
    let one = BigRational::from_integer(BigInt::from(1));
    let denom = pb.pow(2 * k - 3);
    let s2 = BigRational::new(lp * lp, denom.clone());
    let ab = BigRational::new(lp * lp - lp2, denom) - BigRational::from_integer(BigInt::from(2))
        - BigRational::new(BigInt::from(1), pb);
    let a2b2 = &s2 - &ab * BigRational::from_integer(BigInt::from(2));
    let quartic = [
        one.clone(),
        -ab.clone(),
        &a2b2 - BigRational::from_integer(BigInt::from(2)),
        -ab.clone(),
        one.clone(),
    ];
    // multiply by (1 − X)
    let mut c: Vec<BigRational> = vec![BigRational::from_integer(BigInt::from(0)); 6];
    for i in 0..5 {
        c[i] += &quartic[i];
        c[i + 1] -= &quartic[i];
    }
    let coeffs = c.iter().map(|x| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0)).collect();
    EulerFactor::new(p, coeffs).expect("constant term is 1")
}

/// Λ² of the spin multiset with one copy of 1 removed:
/// {1, β/α, α/β, αβ, 1/(αβ)}.
pub fn std_multiset(sp: &SpinSatake) -> Result<EigenvalueMultiset> {
    std_from_multiset(&sp.multiset())
}

/// Same construction for an arbitrary 4-element multiset.
pub fn std_from_multiset(ms: &EigenvalueMultiset) -> Result<EigenvalueMultiset> {
    exterior_square(ms)
        .remove_one(Complex64::new(1.0, 0.0), 1e-9)
        .ok_or(Error::NotSymplectic)
}

/// Degree-5 standard factor.
pub fn std_factor(sp: &SpinSatake) -> Result<EulerFactor> {
    euler_factor_from_roots(&std_multiset(sp)?, sp.prime)
}
