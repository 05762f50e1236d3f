//! Paramodular eigenform data and the objects built from it.

mod classify;
mod group;
mod lift;
mod satake;

pub use classify::{
    check_std_bound, classify_packet, g_bound, p_bound, std_bound, BoundReport, ClassifyOptions,
    ClassifyReport, PrimeMargin, Verdict,
};
pub use group::{
    eta_kj_action, homogeneous_degree, identity, in_paramodular_lattice, is_symplectic, mat_mul,
    paramodular_membership, polynomial_distance, rational_matrix, Polynomial, RationalMatrix,
    SymplecticForm,
};
pub use lift::{sk_hecke_exact, sk_lift, sk_spin_eigenvalue, sk_std_eigenvalue_exact};
pub use satake::{
    hecke_from_satake, hecke_from_satake_complex, satake_from_hecke, satake_from_hecke_complex,
    spin_factor_hecke, spin_factor_hecke_exact, spin_factor_satake, std_factor, std_factor_hecke_exact,
    std_from_multiset,
    std_multiset, SpinSatake,
};

use crate::numeric::{dirichlet_expand, CoefficientSeries, EulerFactor};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Packet {
    /// General type, transferring to a cuspidal representation of GL₄.
    G,
    /// Saito–Kurokawa type.
    P,
}

impl Packet {
    pub fn as_str(self) -> &'static str {
        match self {
            Packet::G => "G",
            Packet::P => "P",
        }
    }
}

/// Hecke eigenvalues at p and p²; `exact` carries integer values when known.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeDatum {
    pub lambda: f64,
    pub lambda2: f64,
    pub exact: Option<(BigInt, BigInt)>,
}

impl HeckeDatum {
    pub fn new(lambda: f64, lambda2: f64) -> Self {
        HeckeDatum { lambda, lambda2, exact: None }
    }

    pub fn exact(lambda: BigInt, lambda2: BigInt) -> Self {
        HeckeDatum {
            lambda: crate::gl2::big_to_f64(&lambda),
            lambda2: crate::gl2::big_to_f64(&lambda2),
            exact: Some((lambda, lambda2)),
        }
    }
}

/// Elliptic form a Saito–Kurokawa lift comes from.
#[derive(Clone, Debug, PartialEq)]
pub struct SkSource {
    pub weight: u32,
    pub reference: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParamodularEigenform {
    k: u32,
    j: u32,
    level: u64,
    packet: Packet,
    hecke: BTreeMap<u64, HeckeDatum>,
    sk_source: Option<SkSource>,
    ramified_spin: BTreeMap<u64, EulerFactor>,
    ramified_std: BTreeMap<u64, EulerFactor>,
    good: bool,
}

impl ParamodularEigenform {
    pub fn new(
        k: u32,
        j: u32,
        level: u64,
        packet: Packet,
        hecke: BTreeMap<u64, HeckeDatum>,
        sk_source: Option<SkSource>,
    ) -> Result<Self> {
        if k < 1 || level < 1 {
            return Err(Error::InvalidArgument("need k ≥ 1 and level ≥ 1".into()));
        }
        if j > 0 && packet != Packet::G {
            return Err(Error::InvalidArgument("vector-valued forms (j > 0) are of type G".into()));
        }
        if packet == Packet::P {
            match &sk_source {
                Some(s) if s.weight == 2 * k - 2 => {}
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "type P needs an elliptic source of weight {}",
                        2 * k - 2
                    )))
                }
            }
        }
        if let Some(p) = hecke.keys().find(|&&p| level % p == 0) {
            return Err(Error::InvalidArgument(format!("Hecke datum at ramified prime {p}")));
        }
        Ok(ParamodularEigenform {
            k,
            j,
            level,
            packet,
            hecke,
            sk_source,
            ramified_spin: BTreeMap::new(),
            ramified_std: BTreeMap::new(),
            good: false,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn j(&self) -> u32 {
        self.j
    }
    pub fn level(&self) -> u64 {
        self.level
    }
    pub fn packet(&self) -> Packet {
        self.packet
    }
    pub fn hecke(&self) -> &BTreeMap<u64, HeckeDatum> {
        &self.hecke
    }
    pub fn sk_source(&self) -> Option<&SkSource> {
        self.sk_source.as_ref()
    }
    /// User-asserted local hypothesis at 2 and 3; never inferred.
    pub fn is_good(&self) -> bool {
        self.good
    }
    pub fn ramified_spin(&self) -> &BTreeMap<u64, EulerFactor> {
        &self.ramified_spin
    }
    pub fn ramified_std(&self) -> &BTreeMap<u64, EulerFactor> {
        &self.ramified_std
    }

    pub fn with_good(mut self, good: bool) -> Self {
        self.good = good;
        self
    }

    pub fn with_sk_reference(mut self, reference: impl Into<String>) -> Self {
        if let Some(s) = self.sk_source.as_mut() {
            s.reference = Some(reference.into());
        }
        self
    }

    /// Supplies the spin factor at a prime dividing the level.
    pub fn with_ramified_spin(mut self, f: EulerFactor) -> Result<Self> {
        self.check_ramified(&f, 4)?;
        self.ramified_spin.insert(f.prime(), f);
        Ok(self)
    }

    /// Supplies the standard factor at a prime dividing the level.
    pub fn with_ramified_std(mut self, f: EulerFactor) -> Result<Self> {
        self.check_ramified(&f, 5)?;
        self.ramified_std.insert(f.prime(), f);
        Ok(self)
    }

    fn check_ramified(&self, f: &EulerFactor, max_degree: usize) -> Result<()> {
        if self.level % f.prime() != 0 || f.degree() > max_degree {
            return Err(Error::InvalidArgument(format!(
                "ramified factor at {} must divide the level and have degree ≤ {max_degree}",
                f.prime()
            )));
        }
        Ok(())
    }

    /// Primes dividing the level (the exceptional set of partial L-functions).
    pub fn exceptional_set(&self) -> Vec<u64> {
        crate::arith::factorize(self.level).into_iter().map(|(p, _)| p).collect()
    }

    pub fn is_ramified(&self, p: u64) -> bool {
        self.level % p == 0
    }

    fn datum(&self, p: u64) -> Result<&HeckeDatum> {
        self.hecke.get(&p).ok_or(Error::MissingHecke(p))
    }

    pub fn satake(&self, p: u64) -> Result<SpinSatake> {
        let d = self.datum(p)?;
        Ok(satake_from_hecke(d.lambda, d.lambda2, self.k, p))
    }

    /// Normalised spin factor at p (user-supplied or trivial at ramified p).
    pub fn spin_factor(&self, p: u64) -> Result<EulerFactor> {
        if self.is_ramified(p) {
            return Ok(self.ramified_spin.get(&p).cloned().unwrap_or_else(|| EulerFactor::trivial(p)));
        }
        let d = self.datum(p)?;
        Ok(match &d.exact {
            Some((l1, l2)) => spin_factor_hecke_exact(l1, l2, self.k, p),
            None => spin_factor_hecke(d.lambda, d.lambda2, self.k, p),
        })
    }

    /// Standard factor at p (user-supplied or trivial at ramified p).
    pub fn std_factor(&self, p: u64) -> Result<EulerFactor> {
        if self.is_ramified(p) {
            return Ok(self.ramified_std.get(&p).cloned().unwrap_or_else(|| EulerFactor::trivial(p)));
        }
        match &self.datum(p)?.exact {
            Some((l1, l2)) => Ok(std_factor_hecke_exact(l1, l2, self.k, p)),
            None => std_factor(&self.satake(p)?),
        }
    }

    /// a_F(p) = λ_F(p)/p^{k−3/2}.
    pub fn spin_eigenvalue(&self, p: u64) -> Result<f64> {
        Ok(-self.spin_factor(p)?.coefficients().get(1).map(|c| c.re).unwrap_or(0.0))
    }

    /// b_F(p), the sum of the standard parameters.
    pub fn std_eigenvalue(&self, p: u64) -> Result<f64> {
        Ok(-self.std_factor(p)?.coefficients().get(1).map(|c| c.re).unwrap_or(0.0))
    }

    /// Largest prime with Hecke data.
    pub fn prime_bound(&self) -> u64 {
        self.hecke.keys().next_back().copied().unwrap_or(1)
    }

    /// p ↦ a_F(p) for unramified p ≤ x.
    pub fn spin_eigenvalues(&self, x: u64) -> Result<BTreeMap<u64, f64>> {
        self.prime_map(x, |p| self.spin_eigenvalue(p))
    }

    /// p ↦ b_F(p) for unramified p ≤ x.
    pub fn std_eigenvalues(&self, x: u64) -> Result<BTreeMap<u64, f64>> {
        self.prime_map(x, |p| self.std_eigenvalue(p))
    }

    fn prime_map<F>(&self, x: u64, f: F) -> Result<BTreeMap<u64, f64>>
    where
        F: Fn(u64) -> Result<f64> + Sync + Send,
    {
        let primes: Vec<u64> =
            crate::arith::primes_up_to(x).into_iter().filter(|&p| !self.is_ramified(p)).collect();
        let vals = crate::par::map_slice(&primes, |&p| f(p));
        primes.into_iter().zip(vals).map(|(p, v)| v.map(|v| (p, v))).collect()
    }

    fn factor_map<F>(&self, n: usize, f: F) -> Result<BTreeMap<u64, EulerFactor>>
    where
        F: Fn(u64) -> Result<EulerFactor> + Sync + Send,
    {
        let primes = crate::arith::primes_up_to(n as u64);
        let vals = crate::par::map_slice(&primes, |&p| f(p));
        primes.into_iter().zip(vals).map(|(p, v)| v.map(|v| (p, v))).collect()
    }
}

/// Dirichlet coefficients a_F(1..=N) of the partial spinor L-function.
pub fn spin_coeffs(f: &ParamodularEigenform, n: usize) -> Result<CoefficientSeries> {
    let factors = f.factor_map(n, |p| f.spin_factor(p))?;
    dirichlet_expand(&factors, n)
}

/// Dirichlet coefficients b_F(1..=N) of the partial standard L-function.
pub fn std_coeffs(f: &ParamodularEigenform, n: usize) -> Result<CoefficientSeries> {
    let factors = f.factor_map(n, |p| f.std_factor(p))?;
    dirichlet_expand(&factors, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HodgeTate {
    pub weights: [i64; 4],
    pub distinct: bool,
    /// Set when k < 3, outside the regular range.
    pub warning: bool,
}

/// {0, k−2, k+j−1, 2k+j−3}.
pub fn hodge_tate_weights(k: u32, j: u32) -> HodgeTate {
    let (k, j) = (k as i64, j as i64);
    let weights = [0, k - 2, k + j - 1, 2 * k + j - 3];
    let mut s = weights.to_vec();
    s.sort_unstable();
    s.dedup();
    HodgeTate { weights, distinct: s.len() == 4, warning: k < 3 }
}

/// Deterministic type-G stand-in with unit-circle spin parameters at every p ≤ x.
pub fn synthesize_g_form(seed: u64, k: u32, x: u64) -> Result<ParamodularEigenform> {
    if k < 3 {
        return Err(Error::InvalidArgument("synthesised forms need k ≥ 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hecke = BTreeMap::new();
    for p in crate::arith::primes_up_to(x) {
        let theta: f64 = rng.gen::<f64>() * PI;
        let phi: f64 = rng.gen::<f64>() * PI;
        let sp = SpinSatake::new(p, Complex64::from_polar(1.0, theta), Complex64::from_polar(1.0, phi))?;
        let (l1, l2) = hecke_from_satake(&sp, k);
        hecke.insert(p, HeckeDatum::new(l1, l2));
    }
    ParamodularEigenform::new(k, 0, 1, Packet::G, hecke, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hodge_tate_examples() {
        assert_eq!(hodge_tate_weights(3, 0).weights, [0, 1, 2, 3]);
        assert_eq!(hodge_tate_weights(10, 0).weights, [0, 8, 9, 17]);
        let h = hodge_tate_weights(3, 1);
        assert_eq!(h.weights, [0, 1, 3, 4]);
        assert!(h.distinct && !h.warning);
        let h = hodge_tate_weights(2, 0);
        assert!(h.warning && !h.distinct);
    }

    #[test]
    fn synthesized_forms_are_deterministic_and_tempered() {
        let a = synthesize_g_form(7, 5, 100).unwrap();
        let b = synthesize_g_form(7, 5, 100).unwrap();
        assert_eq!(a, b);
        let c = synthesize_g_form(8, 5, 100).unwrap();
        assert!(a.spin_eigenvalue(2).unwrap() != c.spin_eigenvalue(2).unwrap());
        for p in crate::arith::primes_up_to(100) {
            assert!(a.spin_eigenvalue(p).unwrap().abs() <= 4.0 + 1e-12);
        }
    }

    #[test]
    fn invariants_enforced() {
        let h = BTreeMap::new();
        assert!(ParamodularEigenform::new(5, 2, 1, Packet::P, h.clone(), None).is_err());
        assert!(ParamodularEigenform::new(10, 0, 1, Packet::P, h.clone(), None).is_err());
        let src = SkSource { weight: 18, reference: None };
        assert!(ParamodularEigenform::new(10, 0, 1, Packet::P, h, Some(src)).is_ok());
        let mut h = BTreeMap::new();
        h.insert(3, HeckeDatum::new(1.0, 1.0));
        assert!(ParamodularEigenform::new(5, 0, 6, Packet::G, h, None).is_err());
    }

    #[test]
    fn ramified_primes_use_supplied_factors() {
        let g = synthesize_g_form(1, 4, 50).unwrap();
        let mut hecke = g.hecke().clone();
        hecke.remove(&5);
        let f = ParamodularEigenform::new(4, 0, 5, Packet::G, hecke, None).unwrap();
        assert_eq!(f.exceptional_set(), vec![5]);
        assert_eq!(f.spin_factor(5).unwrap().degree(), 0);
        let f = f.with_ramified_spin(EulerFactor::from_real(5, &[1.0, -0.5]).unwrap()).unwrap();
        let s = spin_coeffs(&f, 25).unwrap();
        assert!((s.get(5).re - 0.5).abs() < 1e-15);
        assert!((s.get(25).re - 0.25).abs() < 1e-15);
        assert!(f.clone().with_ramified_spin(EulerFactor::trivial(7)).is_err());
        assert!(matches!(spin_coeffs(&f, 60), Err(Error::MissingHecke(53))));
    }
}
