//! Character families, first moments and the dual-path average at prime moduli.

use super::afe::{AfeConfig, Gl2Afe, Gsp4Afe};
use crate::arith::{divisors, euler_phi, factorize, gcd, is_prime, is_squarefree, mobius, primes_up_to};
use crate::characters::{kloosterman, primitive_characters};
use crate::gl2::EllipticEigenform;
use crate::gsp4::ParamodularEigenform;
use crate::{Error, Result};
use num_complex::Complex64;

/// Explicit family thresholds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyOverrides {
    pub p1: f64,
    pub p2: f64,
    pub min_prime_factor: f64,
    pub max_distinct_factors: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyParams {
    pub q: f64,
    pub kappa: f64,
    pub nu: f64,
    pub delta: f64,
    pub overrides: Option<FamilyOverrides>,
}

impl FamilyParams {
    pub fn new(q: f64, kappa: f64, nu: f64, delta: f64) -> Self {
        FamilyParams { q, kappa, nu, delta, overrides: None }
    }

    pub fn with_overrides(mut self, o: FamilyOverrides) -> Self {
        self.overrides = Some(o);
        self
    }

    /// The thresholds in force; defaults are (log Q)^{κν}, (log Q)^{10000},
    /// (log Q)^{20000} and δ log log Q + 10.
    pub fn resolved(&self) -> FamilyOverrides {
        match self.overrides {
            Some(o) => o,
            None => {
                let l = self.q.ln();
                FamilyOverrides {
                    p1: l.powf(self.kappa * self.nu),
                    p2: l.powf(10000.0),
                    min_prime_factor: l.powf(20000.0),
                    max_distinct_factors: self.delta * l.ln() + 10.0,
                }
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        if !(self.kappa > 0.0) {
            return bad("kappa must be positive");
        }
        if !(self.nu > 0.0 && self.nu < 1.0) {
            return bad("nu must lie in (0, 1)");
        }
        if !(self.delta > 0.0 && self.delta < self.nu) {
            return bad("delta must lie in (0, nu)");
        }
        match self.overrides {
            None if !(self.q >= 1e3) => bad("Q must be at least 1000 under the default thresholds"),
            Some(_) if !(self.q > 1.0) => bad("Q must exceed 1"),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    pub members: Vec<u64>,
    pub thresholds: FamilyOverrides,
    pub from_defaults: bool,
    /// Set when the family is empty, with the reason.
    pub note: Option<String>,
}

/// Cap on the enumeration ranges.
const ENUM_LIMIT: f64 = 1e8;

fn dyadic(a: f64) -> (u64, u64) {
    // integers in [A, 2A)
    let lo = a.ceil().max(1.0) as u64;
    let hi = (2.0 * a).ceil() as u64;
    (lo, hi.max(lo))
}

/// Moduli q = p₁p₂m in [Q/16, 16Q] with p₁ ~ P₁, p₂ ~ P₂ prime and m ~ Q/(P₁P₂)
/// squarefree with few, large prime factors; a ~ A means a ∈ [A, 2A).
pub fn family_q(params: &FamilyParams) -> Result<Family> {
    params.validate()?;
    let t = params.resolved();
    let from_defaults = params.overrides.is_none();
    let qq = params.q;
    let empty = |note: String| Family { members: Vec::new(), thresholds: t, from_defaults, note: Some(note) };
    if t.p1 * t.p2 > 16.0 * qq || !t.p2.is_finite() {
        let why = if from_defaults { "family empty under defaults" } else { "family empty" };
        return Ok(empty(format!("{why}: P1·P2 exceeds 16Q")));
    }
    let m0 = qq / (t.p1 * t.p2);
    if 2.0 * t.p1 > ENUM_LIMIT || 2.0 * t.p2 > ENUM_LIMIT || 2.0 * m0 > ENUM_LIMIT {
        return Err(Error::InvalidArgument("family ranges too large to enumerate".into()));
    }
    let (a1, b1) = dyadic(t.p1);
    let (a2, b2) = dyadic(t.p2);
    let (am, bm) = dyadic(m0);
    let p1s: Vec<u64> = primes_up_to(b1.saturating_sub(1)).into_iter().filter(|&p| p >= a1).collect();
    let p2s: Vec<u64> = primes_up_to(b2.saturating_sub(1)).into_iter().filter(|&p| p >= a2).collect();
    let ms: Vec<u64> = (am..bm)
        .filter(|&m| is_squarefree(m))
        .filter(|&m| {
            let f = factorize(m);
            (f.len() as f64) <= t.max_distinct_factors
                && f.iter().all(|&(p, _)| p as f64 > t.min_prime_factor)
        })
        .collect();
    let (lo, hi) = (qq / 16.0, 16.0 * qq);
    let mut members = Vec::new();
    for &p1 in &p1s {
        for &p2 in &p2s {
            if p1 == p2 {
                continue;
            }
            for &m in &ms {
                if gcd(p1 * p2, m) != 1 {
                    continue;
                }
                let q = p1 * p2 * m;
                if (q as f64) >= lo && (q as f64) <= hi {
                    members.push(q);
                }
            }
        }
    }
    members.sort_unstable();
    members.dedup();
    let note = members.is_empty().then(|| {
        if from_defaults { "family empty under defaults".to_string() } else { "family empty".to_string() }
    });
    Ok(Family { members, thresholds: t, from_defaults, note })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FirstMoment {
    pub total: Complex64,
    pub per_modulus: Vec<(u64, Complex64)>,
}

/// Σ_{q} Σ*_{χ mod q} L(1/2, F × χ) χ̄(p) by exact enumeration.
pub fn first_moment(
    f: &ParamodularEigenform,
    family: &[u64],
    p: u64,
    x: f64,
    config: &AfeConfig,
) -> Result<FirstMoment> {
    if let Some(&q) = family.iter().find(|&&q| gcd(q, p) != 1) {
        return Err(Error::NotCoprime(format!("prime {p} divides modulus {q}")));
    }
    let mut per_modulus = Vec::with_capacity(family.len());
    for &q in family {
        per_modulus.push((q, moment_at(f, q, p, x, config)?));
    }
    let total = per_modulus.iter().fold(Complex64::new(0.0, 0.0), |acc, (_, v)| acc + v);
    Ok(FirstMoment { total, per_modulus })
}

/// Per-character terms L(1/2, F × χ) χ̄(p) for the primitive χ mod q.
pub fn moment_terms(
    f: &ParamodularEigenform,
    q: u64,
    p: u64,
    x: f64,
    config: &AfeConfig,
) -> Result<Vec<(usize, Complex64)>> {
    let chars = primitive_characters(q)?;
    if chars.is_empty() {
        return Ok(Vec::new());
    }
    let afe = Gsp4Afe::new(f, q, x, config)?;
    let vals = crate::par::map_slice(&chars, |c| afe.central(c).map(|v| (c.index(), v.value * c.conj_value(p as i64))));
    vals.into_iter().collect()
}

fn moment_at(f: &ParamodularEigenform, q: u64, p: u64, x: f64, config: &AfeConfig) -> Result<Complex64> {
    let terms = moment_terms(f, q, p, x, config)?;
    Ok(terms.iter().fold(Complex64::new(0.0, 0.0), |acc, (_, v)| acc + v))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SkAverage {
    pub direct: Complex64,
    pub decomposed: Complex64,
    pub first: Complex64,
    pub second: Complex64,
    pub main_term: Complex64,
}

/// Σ over odd primitive χ mod q of L(1/2, f × χ) χ̄(p), computed per character
/// and again through character orthogonality with Gauss and Kloosterman sums.
pub fn sk_average(f: &EllipticEigenform, q: u64, p: u64, x: f64, config: &AfeConfig) -> Result<SkAverage> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if q <= p {
        return Err(Error::InvalidArgument(format!("modulus {q} must exceed the prime {p}")));
    }
    let afe = Gl2Afe::new(f, q, x, config)?;
    let odd: Vec<_> = primitive_characters(q)?.into_iter().filter(|c| c.is_odd()).collect();
    let direct_terms =
        crate::par::map_slice(&odd, |c| afe.central(c).map(|v| v.value * c.conj_value(p as i64)));
    let direct = direct_terms
        .into_iter()
        .try_fold(Complex64::new(0.0, 0.0), |acc, v| v.map(|v| acc + v))?;

    let divs: Vec<(u64, f64)> =
        divisors(q).into_iter().map(|d| (d, euler_phi(d) as f64 * mobius(q / d) as f64)).collect();
    let (pi, qi) = (p as i64, q as i64);
    let first_terms = crate::par::map_range(afe.first.len(), |i| {
        let n = (i + 1) as i64;
        if gcd(n as u64, q) != 1 {
            return Complex64::new(0.0, 0.0);
        }
        let w: f64 = divs
            .iter()
            .map(|&(d, c)| {
                let d = d as i64;
                let a = ((n - pi) % d == 0) as i32 - ((n + pi) % d == 0) as i32;
                c * a as f64
            })
            .sum();
        afe.coeffs[i] * afe.first[i] * (0.5 * w)
    });
    let second_terms = crate::par::map_range(afe.second.len(), |i| {
        let n = (i + 1) as i64;
        if gcd(n as u64, q) != 1 {
            return Complex64::new(0.0, 0.0);
        }
        let np = (n % qi) * pi % qi;
        let k = divs.iter().fold(Complex64::new(0.0, 0.0), |acc, &(d, c)| {
            let a = ((q / d) * (q / d)) as i64;
            acc + c * (kloosterman(a, np, d) - kloosterman(a, -np, d))
        });
        afe.coeffs[i] * afe.second[i] * (0.5 / q as f64) * k
    });
    let first = crate::par::sum_complex(&first_terms);
    let second = crate::par::sum_complex(&second_terms);
    let decomposed = first - afe.sign() * second;

    let divisor_sum: f64 = divs.iter().map(|&(_, c)| c).sum();
    let pu = p as usize;
    let u = afe.first.get(pu - 1).copied().unwrap_or(0.0);
    let lam = afe.coeffs.get(pu - 1).copied().unwrap_or_default();
    let main_term = 0.5 * lam * u * divisor_sum;
    Ok(SkAverage { direct, decomposed, first, second, main_term })
}
