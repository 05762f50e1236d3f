use super::EulerFactor;
use crate::arith::smallest_prime_factors;
use crate::{Error, Result};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Dirichlet coefficients c(1..=N).
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSeries {
    coeffs: Vec<Complex64>,
    multiplicative: bool,
}

impl CoefficientSeries {
    /// `coeffs[i]` is c(i + 1).
    pub fn new(coeffs: Vec<Complex64>, multiplicative: bool) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least c(1)");
        CoefficientSeries { coeffs, multiplicative }
    }

    pub fn from_real(coeffs: &[f64], multiplicative: bool) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(), multiplicative)
    }

    /// Series with c(n) = 1 for all n ≤ len.
    pub fn ones(len: usize) -> Self {
        Self::new(vec![Complex64::new(1.0, 0.0); len], true)
    }

    /// Unit for Dirichlet convolution.
    pub fn delta(len: usize) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); len];
        v[0] = Complex64::new(1.0, 0.0);
        Self::new(v, true)
    }

    /// c(n) = n^{-shift}.
    pub fn power(len: usize, shift: f64) -> Self {
        Self::new((1..=len).map(|n| Complex64::new((n as f64).powf(-shift), 0.0)).collect(), true)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// c(n) for 1 ≤ n ≤ len.
    pub fn get(&self, n: usize) -> Complex64 {
        self.coeffs[n - 1]
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_multiplicative(&self) -> bool {
        self.multiplicative
    }

    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n > self.len() {
            return Err(Error::SeriesTooShort { needed: n, have: self.len() });
        }
        Ok(Self::new(self.coeffs[..n].to_vec(), self.multiplicative))
    }

    pub fn map(&self, f: impl Fn(usize, Complex64) -> Complex64, multiplicative: bool) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().map(|(i, &c)| f(i + 1, c)).collect(),
            multiplicative,
        )
    }

    /// First coprime pair (m, n) with |c(mn) − c(m)c(n)| > tol, if any.
    pub fn multiplicativity_defect(&self, tol: f64) -> Option<(usize, usize)> {
        let n = self.len();
        for a in 2..=n {
            for b in 2..=(n / a) {
                if a < b || crate::arith::gcd(a as u64, b as u64) != 1 {
                    continue;
                }
                let lhs = self.get(a * b);
                let rhs = self.get(a) * self.get(b);
                if (lhs - rhs).norm() > tol * 1f64.max(rhs.norm()) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn max_distance(&self, other: &CoefficientSeries, upto: usize) -> f64 {
        (1..=upto).map(|n| (self.get(n) - other.get(n)).norm()).fold(0.0, f64::max)
    }
}

/// Multiplicative expansion of local factors supplied by a callback.
pub fn dirichlet_expand_with<F>(n: usize, mut factor: F) -> Result<CoefficientSeries>
where
    F: FnMut(u64) -> Result<EulerFactor>,
{
    if n == 0 {
        return Err(Error::InvalidArgument("series length must be positive".into()));
    }
    let spf = smallest_prime_factors(n);
    let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
    c[1] = Complex64::new(1.0, 0.0);
    for m in 2..=n {
        if spf[m] as usize == m {
            let p = m as u64;
            let mut e_max = 0;
            let mut pe = 1usize;
            while pe <= n / m {
                pe *= m;
                e_max += 1;
            }
            let f = factor(p)?;
            if f.prime() != p {
                return Err(Error::PrimeMismatch(f.prime(), p));
            }
            let s = f.inverse_series(e_max + 1);
            let mut pk = 1usize;
            for value in s.iter().skip(1) {
                pk *= m;
                c[pk] = *value;
            }
        }
    }
    for m in 2..=n {
        let p = spf[m] as usize;
        let mut pe = p;
        let mut rest = m / p;
        while rest % p == 0 {
            rest /= p;
            pe *= p;
        }
        if rest != 1 {
            c[m] = c[pe] * c[rest];
        }
    }
    c.remove(0);
    Ok(CoefficientSeries::new(c, true))
}

/// Multiplicative expansion of a family of local factors to length N.
pub fn dirichlet_expand(factors: &BTreeMap<u64, EulerFactor>, n: usize) -> Result<CoefficientSeries> {
    dirichlet_expand_with(n, |p| factors.get(&p).cloned().ok_or(Error::MissingPrime(p)))
}

/// Dirichlet convolution c(n) = Σ_{de=n} a(d) b(e) for n ≤ N.
pub fn dirichlet_convolve(
    a: &CoefficientSeries,
    b: &CoefficientSeries,
    n: usize,
) -> Result<CoefficientSeries> {
    for s in [a, b] {
        if s.len() < n {
            return Err(Error::SeriesTooShort { needed: n, have: s.len() });
        }
    }
    let mut c = vec![Complex64::new(0.0, 0.0); n];
    for d in 1..=n {
        let ad = a.get(d);
        if ad == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut m = d;
        let mut e = 1;
        while m <= n {
            c[m - 1] += ad * b.get(e);
            m += d;
            e += 1;
        }
    }
    Ok(CoefficientSeries::new(c, a.is_multiplicative() && b.is_multiplicative()))
}
