//! Exact q-expansions of Δ, E₄, E₆ and their products.
//!
//! Everything is computed modulo several NTT primes and lifted back to
//! integers by Chinese remaindering; the magnitude bound comes from
//! Deligne's estimate |a(n)| ≤ d(n) n^{(w−1)/2}.

use crate::ntt::{CrtBasis, Modulus};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// Exact integer coefficients a(0..=N) of a modular form.
#[derive(Clone, Debug, PartialEq)]
pub struct QExpansion {
    weight: u32,
    coeffs: Vec<BigInt>,
}

impl QExpansion {
    pub fn new(weight: u32, coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty());
        QExpansion { weight, coeffs }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Precision N: coefficients a(0..=N) are known.
    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact product, truncated to the smaller precision.
    pub fn multiply(&self, other: &QExpansion) -> Result<QExpansion> {
        let len = self.coeffs.len().min(other.coeffs.len());
        let c = crate::ntt::multiply_exact(&self.coeffs, &other.coeffs, len)?;
        Ok(QExpansion::new(self.weight + other.weight, c))
    }
}

/// σ_k(n) for 0 ≤ n < len (σ_k(0) = 0), exact for k ≤ 5 and len ≤ 10^7.
pub(crate) fn divisor_powers(k: u32, len: usize) -> Vec<u128> {
    let mut s = vec![0u128; len];
    for d in 1..len {
        let dk = (d as u128).pow(k);
        let mut m = d;
        while m < len {
            s[m] += dk;
            m += d;
        }
    }
    s
}

fn eisenstein_constant(weight: u32) -> Result<i64> {
    match weight {
        4 => Ok(240),
        6 => Ok(-504),
        w => Err(Error::UnsupportedWeight(w)),
    }
}

/// E₄ = 1 + 240 Σ σ₃(n) qⁿ or E₆ = 1 − 504 Σ σ₅(n) qⁿ to precision N.
pub fn eisenstein_qexp(weight: u32, n: usize) -> Result<QExpansion> {
    let c = eisenstein_constant(weight)?;
    let sig = divisor_powers(weight - 1, n + 1);
    let mut coeffs: Vec<BigInt> = sig.iter().map(|&s| BigInt::from(s) * c).collect();
    coeffs[0] = BigInt::one();
    Ok(QExpansion::new(weight, coeffs))
}

/// Exponents (a, b) with 12 + 4a + 6b = weight for the one-dimensional cusp spaces.
pub fn monomial_exponents(weight: u32) -> Result<(u32, u32)> {
    match weight {
        12 => Ok((0, 0)),
        16 => Ok((1, 0)),
        18 => Ok((0, 1)),
        20 => Ok((2, 0)),
        22 => Ok((1, 1)),
        26 => Ok((2, 1)),
        w if w < 12 || w == 14 || w % 2 == 1 => Err(Error::NoCuspForms(w)),
        _ => Err(Error::NotOneDimensional),
    }
}

/// Δ(q)/q = ∏(1 − qⁿ)²⁴ to `len` terms modulo one prime, in Montgomery form.
fn delta_residues(m: &Modulus, len: usize) -> Vec<u32> {
    // ∏(1 − qⁿ)³ = Σ (−1)^k (2k+1) q^{k(k+1)/2}
    let mut f = vec![0u32; len];
    let mut k = 0usize;
    while k * (k + 1) / 2 < len {
        let v = (2 * k + 1) as i128 * if k % 2 == 0 { 1 } else { -1 };
        f[k * (k + 1) / 2] = m.from_i128(v);
        k += 1;
    }
    for _ in 0..3 {
        f = m.square(&f, len);
    }
    f
}

/// Residues of a(1..=len) of Δ·E₄^a·E₆^b given the residues of Δ, in normal form.
fn residues_from_delta(
    m: &Modulus,
    delta: &[u32],
    exps: (u32, u32),
    s3: &[u128],
    s5: &[u128],
) -> Vec<u32> {
    let len = delta.len();
    let p = m.p as u128;
    let eis = |sig: &[u128], c: i128| -> Vec<u32> {
        let mut e: Vec<u32> = sig[..len]
            .iter()
            .map(|&s| m.from_i128((s % p) as i128 * c))
            .collect();
        e[0] = m.to_mont(1);
        e
    };
    let mut f = delta.to_vec();
    if exps.0 > 0 {
        let e4 = eis(s3, 240);
        for _ in 0..exps.0 {
            f = m.multiply(&f, &e4, len);
        }
    }
    if exps.1 > 0 {
        let e6 = eis(s5, -504);
        for _ in 0..exps.1 {
            f = m.multiply(&f, &e6, len);
        }
    }
    f.into_iter().map(|x| m.from_mont(x)).collect()
}

/// Modular images of the eigenforms of the given weights, one matrix per
/// weight with a row per modulus of `basis` followed by the check modulus.
fn residue_rows_many(weights: &[u32], len: usize, basis: &CrtBasis) -> Result<Vec<Vec<Vec<u32>>>> {
    let exps: Vec<(u32, u32)> = weights.iter().map(|&w| monomial_exponents(w)).collect::<Result<_>>()?;
    let s3 = if exps.iter().any(|e| e.0 > 0) { divisor_powers(3, len) } else { Vec::new() };
    let s5 = if exps.iter().any(|e| e.1 > 0) { divisor_powers(5, len) } else { Vec::new() };
    let mut primes = basis.moduli();
    primes.push(basis.check_modulus());
    let per_prime = crate::par::map_slice(&primes, |&p| {
        let m = Modulus::new(p);
        let delta = delta_residues(&m, len);
        exps.iter().map(|&e| residues_from_delta(&m, &delta, e, &s3, &s5)).collect::<Vec<_>>()
    });
    // transpose to weight-major
    let mut out: Vec<Vec<Vec<u32>>> = vec![Vec::with_capacity(primes.len()); weights.len()];
    for rows in per_prime {
        for (w, r) in rows.into_iter().enumerate() {
            out[w].push(r);
        }
    }
    Ok(out)
}

fn residue_rows(weight: u32, len: usize, basis: &CrtBasis) -> Result<Vec<Vec<u32>>> {
    Ok(residue_rows_many(&[weight], len, basis)?.remove(0))
}

fn deligne_bits(weight: u32, len: usize) -> f64 {
    let l = (len.max(2) as f64).log2();
    1.0 + 0.5 * l + (weight as f64 - 1.0) / 2.0 * l
}

/// Exact coefficients a(0..=N) of the normalised cusp form spanning S_w.
pub(crate) fn cusp_form_exact(weight: u32, n: usize) -> Result<Vec<BigInt>> {
    let basis = CrtBasis::for_bits(deligne_bits(weight, n))?;
    let rows = residue_rows(weight, n, &basis)?;
    let k = rows.len() - 1;
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::zero());
    let mut col = vec![0u32; k];
    for i in 0..n {
        for j in 0..k {
            col[j] = rows[j][i];
        }
        out.push(basis.reconstruct(&col, rows[k][i]).ok_or(Error::Reconstruction(i + 1))?);
    }
    Ok(out)
}

/// Normalised Hecke eigenvalues a(p)/p^{(w−1)/2} at all primes p ≤ x.
///
/// Uses the same modular expansion but lifts only the prime-indexed
/// coefficients, which keeps x = 10⁶ within a few seconds.
pub fn prime_eigenvalues(weight: u32, x: usize) -> Result<Vec<(u64, f64)>> {
    Ok(prime_eigenvalues_many(&[weight], x)?.remove(0))
}

/// [`prime_eigenvalues`] for several weights sharing one expansion of Δ.
pub fn prime_eigenvalues_many(weights: &[u32], x: usize) -> Result<Vec<Vec<(u64, f64)>>> {
    let w_max = weights.iter().copied().max().unwrap_or(12);
    let basis = CrtBasis::for_bits(deligne_bits(w_max, x))?;
    let all = residue_rows_many(weights, x, &basis)?;
    let primes = crate::arith::primes_up_to(x as u64);
    weights
        .iter()
        .zip(all)
        .map(|(&weight, rows)| {
            let k = rows.len() - 1;
            let half = (weight as f64 - 1.0) / 2.0;
            let vals = crate::par::map_slice(&primes, |&p| {
                let i = p as usize - 1;
                let col: Vec<u32> = (0..k).map(|j| rows[j][i]).collect();
                basis
                    .reconstruct(&col, rows[k][i])
                    .map(|v| v.to_f64().unwrap() / (p as f64).powf(half))
                    .ok_or(Error::Reconstruction(p as usize))
            });
            primes.iter().zip(vals).map(|(&p, v)| v.map(|v| (p, v))).collect()
        })
        .collect()
}

/// Δ = q ∏ (1 − qⁿ)²⁴ to precision N.
pub fn delta_qexp(n: usize) -> QExpansion {
    QExpansion::new(12, cusp_form_exact(12, n.max(1)).expect("Δ fits the modular basis"))
}
