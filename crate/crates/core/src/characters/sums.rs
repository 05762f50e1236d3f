//! Gauss and Kloosterman sums, twisting and the exact character-sum identities.

use super::{characters_mod, DirichletCharacter};
use crate::arith::{divisors, euler_phi, gcd, gcd_i, inv_mod, is_prime, mobius, rem};
use crate::numeric::CoefficientSeries;
use crate::special::e_frac;
use crate::{Error, Result};
use num_complex::Complex64;

/// τ(χ, n) = Σ_{a mod q} χ(a) e(an/q), evaluated with the phase reduced exactly.
pub fn gauss_sum_twisted(chi: &DirichletCharacter, n: i64) -> Complex64 {
    let q = chi.modulus();
    let lam = chi.group_exponent();
    let big = (lam as u128) * (q as u128);
    let terms = crate::par::map_range(q as usize, |a| match chi.exponent_of(a as i64) {
        None => Complex64::new(0.0, 0.0),
        Some(m) => {
            let an = rem_u128(a as i128 * n as i128, q as u128);
            let phase = (m as u128 * q as u128 + an * lam as u128) % big;
            crate::special::e(phase as f64 / big as f64)
        }
    });
    crate::par::sum_complex(&terms)
}

fn rem_u128(a: i128, m: u128) -> u128 {
    a.rem_euclid(m as i128) as u128
}

/// τ(χ).
pub fn gauss_sum(chi: &DirichletCharacter) -> Complex64 {
    gauss_sum_twisted(chi, 1)
}

/// S(a, b; c) = Σ_{x mod c, (x,c)=1} e((ax + b x̄)/c).
pub fn kloosterman(a: i64, b: i64, c: u64) -> Complex64 {
    assert!(c >= 1, "Kloosterman modulus must be positive");
    let ar = rem(a, c) as u128;
    let br = rem(b, c) as u128;
    let terms = crate::par::map_range(c as usize, |x| {
        let x = x as u64;
        if gcd(x, c) != 1 {
            return Complex64::new(0.0, 0.0);
        }
        let xbar = inv_mod(x, c).unwrap_or(0) as u128;
        let r = (ar * x as u128 + br * xbar) % c as u128;
        e_frac(r as i64, c)
    });
    crate::par::sum_complex(&terms)
}

/// c'(n) = c(n)χ(n).
pub fn twist_series(s: &CoefficientSeries, chi: &DirichletCharacter) -> CoefficientSeries {
    s.map(|n, c| c * chi.value(n as i64), s.is_multiplicative())
}

/// Both sides of Σ*_{χ mod q} χ(m)χ̄(n) = Σ_{d | q, d | m−n} φ(d)μ(q/d).
pub fn primitive_orthogonality_sum(q: u64, m: i64, n: i64) -> Result<(Complex64, Complex64)> {
    if q == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if gcd_i(m, q as i64) != 1 || gcd_i(n, q as i64) != 1 {
        return Err(Error::NotCoprime(format!("gcd({m}·{n}, {q}) > 1")));
    }
    let chars = characters_mod(q)?;
    let lhs = chars
        .iter()
        .filter(|c| c.is_primitive())
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc + c.value(m) * c.conj_value(n));
    let diff = m as i128 - n as i128;
    let rhs: i64 = divisors(q)
        .into_iter()
        .filter(|&d| diff % d as i128 == 0)
        .map(|d| euler_phi(d) as i64 * mobius(q / d))
        .sum();
    Ok((lhs, Complex64::new(rhs as f64, 0.0)))
}

/// Both sides of the odd-character Gauss-sum identity at a prime modulus:
/// Σ*_{χ odd} χ̄(n)χ̄(p)τ(χ)² = ½ Σ_{d|q} φ(d)μ(q/d)[S(q²/d², np; d) − S(q²/d², −np; d)].
pub fn odd_twisted_gauss_identity(q: u64, n: i64, p: i64) -> Result<(Complex64, Complex64)> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if gcd_i(n, q as i64) != 1 || gcd_i(p, q as i64) != 1 {
        return Err(Error::NotCoprime(format!("gcd({n}·{p}, {q}) > 1")));
    }
    let chars = characters_mod(q)?;
    let lhs = chars
        .iter()
        .filter(|c| c.is_primitive() && c.is_odd())
        .fold(Complex64::new(0.0, 0.0), |acc, c| {
            let t = gauss_sum(c);
            acc + c.conj_value(n) * c.conj_value(p) * t * t
        });
    let np = rem(n, q) as i64 * rem(p, q) as i64;
    let rhs = divisors(q).into_iter().fold(Complex64::new(0.0, 0.0), |acc, d| {
        let a = ((q / d) * (q / d)) as i64;
        let w = euler_phi(d) as f64 * mobius(q / d) as f64;
        acc + 0.5 * w * (kloosterman(a, np, d) - kloosterman(a, -np, d))
    });
    Ok((lhs, rhs))
}
