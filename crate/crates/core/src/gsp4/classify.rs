//! Packet classification from spin eigenvalues.

use crate::{Error, Result};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    P,
    G,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::P => "P",
            Verdict::G => "G",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassifyOptions {
    /// Verdict P when the fraction of primes above ½p^{1/2} reaches this.
    pub tau_p: f64,
    /// Verdict G requires the fraction above ½p^{1/2} below this.
    pub tau_g: f64,
    pub min_primes: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { tau_p: 0.25, tau_g: 0.05, min_primes: 25 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimeMargin {
    pub p: u64,
    pub value: f64,
    /// |a| − ½p^{1/2}
    pub p_margin: f64,
    /// 4p^{1/2−1/17} − |a|
    pub g_margin: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassifyReport {
    pub verdict: Verdict,
    pub primes: usize,
    pub rho_p: f64,
    pub rho_g: f64,
    pub g_violations: usize,
    pub margins: Vec<PrimeMargin>,
}

/// ½p^{1/2}: eventually exceeded by every Saito–Kurokawa spin eigenvalue.
pub fn p_bound(p: u64) -> f64 {
    0.5 * (p as f64).sqrt()
}

/// 4p^{1/2−1/17}: the bound for type-G spin eigenvalues.
pub fn g_bound(p: u64) -> f64 {
    4.0 * (p as f64).powf(0.5 - 1.0 / 17.0)
}

/// 5p^{1/2−1/26}: the bound for standard eigenvalues.
pub fn std_bound(p: u64) -> f64 {
    5.0 * (p as f64).powf(0.5 - 1.0 / 26.0)
}

pub fn classify_packet(a: &BTreeMap<u64, f64>, opts: &ClassifyOptions) -> Result<ClassifyReport> {
    if a.len() < opts.min_primes.max(1) {
        return Err(Error::InsufficientData(format!(
            "{} primes supplied, at least {} needed",
            a.len(),
            opts.min_primes
        )));
    }
    let margins: Vec<PrimeMargin> = a
        .iter()
        .map(|(&p, &v)| PrimeMargin {
            p,
            value: v,
            p_margin: v.abs() - p_bound(p),
            g_margin: g_bound(p) - v.abs(),
        })
        .collect();
    let n = margins.len() as f64;
    let above = margins.iter().filter(|m| m.p_margin >= 0.0).count();
    let within = margins.iter().filter(|m| m.g_margin >= 0.0).count();
    let rho_p = above as f64 / n;
    let rho_g = within as f64 / n;
    let g_violations = margins.len() - within;
    let verdict = if rho_p >= opts.tau_p {
        Verdict::P
    } else if rho_p < opts.tau_g && g_violations == 0 {
        Verdict::G
    } else {
        Verdict::Inconclusive
    };
    Ok(ClassifyReport { verdict, primes: margins.len(), rho_p, rho_g, g_violations, margins })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub primes: usize,
    pub violations: Vec<u64>,
}

/// Primes where |b(p)| exceeds 5p^{1/2−1/26}.
pub fn check_std_bound(b: &BTreeMap<u64, f64>) -> BoundReport {
    BoundReport {
        primes: b.len(),
        violations: b.iter().filter(|(&p, v)| v.abs() > std_bound(p)).map(|(&p, _)| p).collect(),
    }
}
