//! Prime sums: Selberg orthogonality, power-sum moments and sums in progressions.

use crate::arith::{gcd_i, primes_up_to};
use crate::numeric::{power_sum, EigenvalueMultiset};
use crate::{Error, Result};
use num_complex::Complex64;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SelbergSum {
    pub value: f64,
    pub loglog: f64,
    pub primes: usize,
}

/// Σ_{p ≤ x, p ∉ S} λ₁(p)λ₂(p)/p alongside log log x.
pub fn selberg_sum(
    lambda1: &BTreeMap<u64, f64>,
    lambda2: &BTreeMap<u64, f64>,
    x: f64,
    exclude: &BTreeSet<u64>,
) -> Result<SelbergSum> {
    if !(x >= 10.0) {
        return Err(Error::InvalidArgument(format!("Selberg sums need x ≥ 10, got {x}")));
    }
    let primes: Vec<u64> =
        primes_up_to(x.floor() as u64).into_iter().filter(|p| !exclude.contains(p)).collect();
    let mut terms = Vec::with_capacity(primes.len());
    for &p in &primes {
        let a = lambda1.get(&p).ok_or(Error::MissingPrime(p))?;
        let b = lambda2.get(&p).ok_or(Error::MissingPrime(p))?;
        terms.push(a * b / p as f64);
    }
    Ok(SelbergSum { value: crate::par::sum_real(&terms), loglog: x.ln().ln(), primes: primes.len() })
}

/// Σ_{p ≤ x} |p_ℓ(ms_p)|² log²p / p^ℓ over the primes present in `ms`.
pub fn hypothesis_h_sum(ms: &BTreeMap<u64, EigenvalueMultiset>, ell: u32, x: f64) -> Result<f64> {
    if ell < 2 {
        return Err(Error::InvalidArgument(format!("power index must be at least 2, got {ell}")));
    }
    let items: Vec<(&u64, &EigenvalueMultiset)> = ms.range(..=x.floor().max(0.0) as u64).collect();
    let terms = crate::par::map_slice(&items, |&(&p, m)| {
        let pf = p as f64;
        power_sum(m, ell).norm_sqr() * pf.ln().powi(2) / pf.powi(ell as i32)
    });
    Ok(crate::par::sum_real(&terms))
}

/// Σ_{p ≤ x, p ≡ a (q)} α(p) p^{it} over the primes present in `alpha`.
pub fn siegel_walfisz_sum(
    alpha: &BTreeMap<u64, Complex64>,
    x: f64,
    q: u64,
    a: i64,
    t: f64,
) -> Result<Complex64> {
    if q == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if gcd_i(a, q as i64) != 1 {
        return Err(Error::NotCoprime(format!("gcd({a}, {q}) > 1")));
    }
    let r = crate::arith::rem(a, q);
    let terms: Vec<Complex64> = alpha
        .range(..=x.floor().max(0.0) as u64)
        .filter(|(&p, _)| p % q == r)
        .map(|(&p, &v)| v * Complex64::from_polar(1.0, t * (p as f64).ln()))
        .collect();
    Ok(crate::par::sum_complex(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(x: u64) -> BTreeMap<u64, f64> {
        primes_up_to(x).into_iter().map(|p| (p, 1.0)).collect()
    }

    #[test]
    fn selberg_examples() {
        let s = selberg_sum(&ones(100), &ones(100), 100.0, &BTreeSet::new()).unwrap();
        assert!((s.value - 1.80281).abs() < 1e-5);
        assert!((s.loglog - 1.52718).abs() < 1e-5);
        let zero: BTreeMap<u64, f64> = ones(100).keys().map(|&p| (p, 0.0)).collect();
        assert_eq!(selberg_sum(&ones(100), &zero, 100.0, &BTreeSet::new()).unwrap().value, 0.0);
        assert!(selberg_sum(&ones(100), &ones(100), 9.0, &BTreeSet::new()).is_err());
        assert_eq!(
            selberg_sum(&ones(50), &ones(100), 100.0, &BTreeSet::new()),
            Err(Error::MissingPrime(53))
        );
        let ex: BTreeSet<u64> = [2, 3].into_iter().collect();
        let s2 = selberg_sum(&ones(100), &ones(100), 100.0, &ex).unwrap();
        assert!((s.value - s2.value - (0.5 + 1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn hypothesis_h_examples() {
        let ms: BTreeMap<u64, EigenvalueMultiset> = primes_up_to(100)
            .into_iter()
            .map(|p| (p, EigenvalueMultiset::from_real(p, &[1.0]).unwrap()))
            .collect();
        // Σ_{p ≤ 100} log²p/p² by direct summation
        assert!((hypothesis_h_sum(&ms, 2, 100.0).unwrap() - 0.686_362_845_504_302_6).abs() < 1e-12);
        assert_eq!(hypothesis_h_sum(&BTreeMap::new(), 2, 100.0).unwrap(), 0.0);
        assert!(hypothesis_h_sum(&ms, 1, 100.0).is_err());
    }

    #[test]
    fn progression_examples() {
        let alpha: BTreeMap<u64, Complex64> =
            primes_up_to(100).into_iter().map(|p| (p, Complex64::new(1.0, 0.0))).collect();
        assert!((siegel_walfisz_sum(&alpha, 100.0, 4, 1, 0.0).unwrap() - 11.0).norm() < 1e-12);
        assert!((siegel_walfisz_sum(&alpha, 100.0, 1, 0, 0.0).unwrap() - 25.0).norm() < 1e-12);
        assert!(siegel_walfisz_sum(&alpha, 100.0, 4, 2, 0.0).is_err());
    }
}
