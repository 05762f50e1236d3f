//! Prime-by-prime comparison of two paramodular eigenforms.

use crate::arith::primes_up_to;
use crate::gsp4::ParamodularEigenform;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComparisonKind {
    Spin,
    Std,
    Hecke,
}

impl ComparisonKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ComparisonKind::Spin => "spin",
            ComparisonKind::Std => "std",
            ComparisonKind::Hecke => "hecke",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "spin" => Ok(ComparisonKind::Spin),
            "std" => Ok(ComparisonKind::Std),
            "hecke" => Ok(ComparisonKind::Hecke),
            _ => Err(Error::InvalidArgument(format!("unknown comparison kind {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComparisonVerdict {
    ConsistentWithEqual,
    Distinct,
    Insufficient,
}

impl ComparisonVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            ComparisonVerdict::ConsistentWithEqual => "consistent-with-equal",
            ComparisonVerdict::Distinct => "distinct",
            ComparisonVerdict::Insufficient => "insufficient",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompareOptions {
    /// Relative tolerance for float data.
    pub tol: f64,
    /// Densities below 1 − threshold are reported as distinct.
    pub threshold: f64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions { tol: 1e-6, threshold: 0.0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport {
    pub kind: ComparisonKind,
    pub primes_compared: usize,
    pub agreements: usize,
    pub density: f64,
    pub first_disagreement: Option<u64>,
    pub verdict: ComparisonVerdict,
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

fn agree(a: &ParamodularEigenform, b: &ParamodularEigenform, p: u64, kind: ComparisonKind, tol: f64) -> Result<bool> {
    match kind {
        ComparisonKind::Spin => Ok(close(a.spin_eigenvalue(p)?, b.spin_eigenvalue(p)?, tol)),
        ComparisonKind::Std => Ok(close(a.std_eigenvalue(p)?, b.std_eigenvalue(p)?, tol)),
        ComparisonKind::Hecke => {
            let (da, db) = (&a.hecke()[&p], &b.hecke()[&p]);
            if let (Some(x), Some(y)) = (&da.exact, &db.exact) {
                return Ok(x == y);
            }
            Ok(close(da.lambda, db.lambda, tol) && close(da.lambda2, db.lambda2, tol))
        }
    }
}

/// Compare at unramified primes p ≤ x where both forms carry data.
pub fn compare_eigenforms(
    a: &ParamodularEigenform,
    b: &ParamodularEigenform,
    x: u64,
    kind: ComparisonKind,
    opts: &CompareOptions,
) -> Result<ComparisonReport> {
    let primes: Vec<u64> = primes_up_to(x)
        .into_iter()
        .filter(|&p| !a.is_ramified(p) && !b.is_ramified(p))
        .filter(|p| a.hecke().contains_key(p) && b.hecke().contains_key(p))
        .collect();
    if primes.is_empty() {
        return Err(Error::InsufficientData("no common primes to compare".into()));
    }
    let flags = crate::par::map_slice(&primes, |&p| agree(a, b, p, kind, opts.tol));
    let flags: Vec<bool> = flags.into_iter().collect::<Result<_>>()?;
    let agreements = flags.iter().filter(|&&f| f).count();
    let first_disagreement = primes.iter().zip(&flags).find(|(_, &f)| !f).map(|(&p, _)| p);
    let density = agreements as f64 / primes.len() as f64;
    let verdict = if agreements == primes.len() {
        ComparisonVerdict::ConsistentWithEqual
    } else if density < 1.0 - opts.threshold {
        ComparisonVerdict::Distinct
    } else {
        ComparisonVerdict::Insufficient
    };
    Ok(ComparisonReport { kind, primes_compared: primes.len(), agreements, density, first_disagreement, verdict })
}
