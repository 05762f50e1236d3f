use super::{euler_factor_from_roots, EigenvalueMultiset, EulerFactor};
use crate::{Error, Result};
use num_complex::Complex64;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// {α_i α_j : i < j}.
pub fn exterior_square(ms: &EigenvalueMultiset) -> EigenvalueMultiset {
    let v = ms.values();
    let mut out = Vec::with_capacity(v.len() * v.len().saturating_sub(1) / 2);
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            out.push(v[i] * v[j]);
        }
    }
    EigenvalueMultiset::new_unchecked(ms.prime(), out)
}

/// {α_i α_j : i ≤ j}.
pub fn symmetric_square(ms: &EigenvalueMultiset) -> EigenvalueMultiset {
    let v = ms.values();
    let mut out = Vec::with_capacity(v.len() * (v.len() + 1) / 2);
    for i in 0..v.len() {
        for j in i..v.len() {
            out.push(v[i] * v[j]);
        }
    }
    EigenvalueMultiset::new_unchecked(ms.prime(), out)
}

/// {α β : α ∈ a, β ∈ b}.
pub fn tensor_product(a: &EigenvalueMultiset, b: &EigenvalueMultiset) -> EigenvalueMultiset {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a.values() {
        for y in b.values() {
            out.push(x * y);
        }
    }
    EigenvalueMultiset::new_unchecked(a.prime(), out)
}

/// Σ α_i^ℓ.
pub fn power_sum(ms: &EigenvalueMultiset, ell: u32) -> Complex64 {
    ms.values().iter().fold(zero(), |acc, v| acc + v.powu(ell))
}

/// Elementary symmetric values e_0..e_n.
pub fn elementary_symmetric(values: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![zero(); values.len() + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (k, &v) in values.iter().enumerate() {
        for i in (1..=k + 1).rev() {
            let prev = e[i - 1];
            e[i] += v * prev;
        }
    }
    e
}

/// Complete homogeneous values h_0..h_n.
pub fn complete_homogeneous(values: &[Complex64], n: usize) -> Vec<Complex64> {
    let e = elementary_symmetric(values);
    let mut h = vec![zero(); n + 1];
    h[0] = Complex64::new(1.0, 0.0);
    for k in 1..=n {
        let mut s = zero();
        for i in 1..=k.min(values.len()) {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            s += sign * e[i] * h[k - i];
        }
        h[k] = s;
    }
    h
}

/// Power sums p_1..p_n from complete homogeneous values h_1..h_n via
/// n·h_n = Σ_{i=1}^{n} p_i h_{n−i}.
pub fn newton_power_from_h(h: &[Complex64]) -> Result<Vec<Complex64>> {
    if h.is_empty() {
        return Err(Error::InvalidArgument("empty input".into()));
    }
    let hh = |i: usize| if i == 0 { Complex64::new(1.0, 0.0) } else { h[i - 1] };
    let mut p: Vec<Complex64> = Vec::with_capacity(h.len());
    for n in 1..=h.len() {
        let mut v = n as f64 * hh(n);
        for i in 1..n {
            v -= p[i - 1] * hh(n - i);
        }
        p.push(v);
    }
    Ok(p)
}

/// Coefficients c(p^ℓ), 1 ≤ ℓ ≤ ell_max, of log L_p.
///
/// The power sums of the roots come straight from the coefficients through
/// Newton's identities, so no root finding is involved. The constant term
/// is 1 by construction of [`EulerFactor`].
pub fn log_coefficients(f: &EulerFactor, ell_max: usize) -> Vec<Complex64> {
    let c = f.coefficients();
    let ci = |i: usize| c.get(i).copied().unwrap_or_else(zero);
    let mut p = Vec::with_capacity(ell_max);
    for ell in 1..=ell_max {
        let mut v = -(ell as f64) * ci(ell);
        for i in 1..ell {
            v -= ci(i) * p[ell - i - 1];
        }
        p.push(v);
    }
    p.iter().enumerate().map(|(i, v)| v / (i + 1) as f64).collect()
}

/// Local Rankin–Selberg factor with roots {α_i β_j}.
pub fn rankin_selberg_factor(
    a: &EigenvalueMultiset,
    b: &EigenvalueMultiset,
    prime: u64,
) -> Result<EulerFactor> {
    if a.prime() != b.prime() {
        return Err(Error::PrimeMismatch(a.prime(), b.prime()));
    }
    if a.prime() != prime {
        return Err(Error::PrimeMismatch(a.prime(), prime));
    }
    euler_factor_from_roots(&tensor_product(a, b), prime)
}

/// Both sides of the inequality Σ|z_i| ≤ 2|Σ z_i²|^{1/2} + 2|Σ z_i| + 15.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZBound {
    pub lhs: f64,
    pub rhs: f64,
}

impl ZBound {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

/// Evaluates the bound for a balanced 5-tuple: |z_1| ≥ … ≥ |z_5| and
/// z_i z_{6−i} = 1.
pub fn lemma_z_bound(z: &[Complex64; 5]) -> Result<ZBound> {
    const TOL: f64 = 1e-9;
    for i in 0..4 {
        if z[i].norm() + TOL * z[i].norm().max(1.0) < z[i + 1].norm() {
            return Err(Error::NotBalanced);
        }
    }
    for i in 0..5 {
        let prod = z[i] * z[4 - i];
        if (prod - 1.0).norm() > TOL {
            return Err(Error::NotBalanced);
        }
    }
    let lhs = z.iter().map(|v| v.norm()).sum();
    let s2: Complex64 = z.iter().map(|v| v * v).sum();
    let s1: Complex64 = z.iter().sum();
    Ok(ZBound { lhs, rhs: 2.0 * s2.norm().sqrt() + 2.0 * s1.norm() + 15.0 })
}
