//! Approximate functional equations at the central point.

use super::mellin::{CutoffU, GammaFactor, MellinWeight, Quadrature, TestFunction};
use crate::characters::{gauss_sum, DirichletCharacter};
use crate::gl2::EllipticEigenform;
use crate::gsp4::{spin_coeffs, Packet, ParamodularEigenform};
use crate::{Error, Result};
use num_complex::Complex64;

/// Archimedean sign used in a functional equation.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum RootSign {
    /// Derived from the gamma factor.
    #[default]
    Auto,
    Value(Complex64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AfeConfig {
    pub test_function: TestFunction,
    pub quadrature: Quadrature,
    /// Terms with cutoff weight below this are dropped.
    pub cutoff: f64,
    pub sign: RootSign,
}

impl Default for AfeConfig {
    fn default() -> Self {
        AfeConfig {
            test_function: TestFunction::One,
            quadrature: Quadrature::default(),
            cutoff: 1e-12,
            sign: RootSign::Auto,
        }
    }
}

impl AfeConfig {
    pub fn with_sign(mut self, sign: RootSign) -> Self {
        self.sign = sign;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CentralValue {
    pub value: Complex64,
    /// ε with L = Σ₁ + ε Σ₂.
    pub root_number: Complex64,
    pub length1: usize,
    pub length2: usize,
    /// Vanishing forced by a pole of the gamma factor.
    pub trivial_zero: bool,
}

/// ε(π, χ) = c · τ(χ)⁴ / q².
pub fn epsilon_factor(chi: &DirichletCharacter, c_pi: Complex64) -> Result<Complex64> {
    if !chi.is_primitive() {
        return Err(Error::Imprimitive);
    }
    let t2 = gauss_sum(chi).powu(2);
    let q = chi.modulus() as f64;
    Ok(c_pi * t2 * t2 / (q * q))
}

fn i_pow(n: i64) -> Complex64 {
    match n.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// W(n/scale) for n = 1..=len, len set by the decay point of W.
fn weight_table(w: &MellinWeight, scale: f64, cutoff: f64) -> Vec<f64> {
    let ycut = w.decay_point(cutoff);
    let len = (ycut * scale).floor() as usize;
    crate::par::map_range(len, |i| w.eval((i + 1) as f64 / scale))
}

fn check_character(chi: &DirichletCharacter, q: u64) -> Result<()> {
    if chi.modulus() != q {
        return Err(Error::InvalidArgument(format!(
            "character modulus {} does not match {q}",
            chi.modulus()
        )));
    }
    if !chi.is_primitive() {
        return Err(Error::Imprimitive);
    }
    Ok(())
}

fn twisted_sum(coeffs: &[Complex64], table: &[f64], chi: &DirichletCharacter, conj: bool) -> Complex64 {
    table.iter().enumerate().fold(Complex64::new(0.0, 0.0), |acc, (i, &w)| {
        let n = (i + 1) as i64;
        let c = if conj { chi.conj_value(n) } else { chi.value(n) };
        acc + coeffs[i] * c * w
    })
}

/// Tables for central values of L(s, f × χ) with χ mod a fixed q.
#[derive(Clone, Debug)]
pub struct Gl2Afe {
    pub(crate) weight: u32,
    pub(crate) q: u64,
    /// λ̂(n) n^{−1/2}
    pub(crate) coeffs: Vec<Complex64>,
    pub(crate) first: Vec<f64>,
    pub(crate) second: Vec<f64>,
    pub(crate) w_f: Complex64,
}

impl Gl2Afe {
    pub fn new(f: &EllipticEigenform, q: u64, x: f64, config: &AfeConfig) -> Result<Self> {
        if !(x >= 1.0) {
            return Err(Error::InvalidArgument(format!("balance parameter X must be ≥ 1, got {x}")));
        }
        if q == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let profile = CutoffU {
            k: f.weight() as f64 / 2.0 + 1.0,
            g: config.test_function,
            quadrature: config.quadrature,
        }
        .profile()?;
        let qf = q as f64;
        let first = weight_table(&profile, qf * x, config.cutoff);
        let second = weight_table(&profile, qf / x, config.cutoff);
        let needed = first.len().max(second.len());
        if needed > f.precision() {
            return Err(Error::InsufficientPrecision { needed, have: f.precision() });
        }
        let series = f.normalized_series(needed)?;
        let coeffs = (1..=needed).map(|n| series.get(n) / (n as f64).sqrt()).collect();
        let w_f = match config.sign {
            RootSign::Auto => -i_pow(f.weight() as i64),
            RootSign::Value(v) => v,
        };
        Ok(Gl2Afe { weight: f.weight(), q, coeffs, first, second, w_f })
    }

    pub fn sign(&self) -> Complex64 {
        self.w_f
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn central(&self, chi: &DirichletCharacter) -> Result<CentralValue> {
        check_character(chi, self.q)?;
        let t = gauss_sum(chi);
        let eps = -(t * t / self.q as f64) * self.w_f;
        let s1 = twisted_sum(&self.coeffs, &self.first, chi, false);
        let s2 = twisted_sum(&self.coeffs, &self.second, chi, true);
        Ok(CentralValue {
            value: s1 + eps * s2,
            root_number: eps,
            length1: self.first.len(),
            length2: self.second.len(),
            trivial_zero: false,
        })
    }
}

/// L(1/2, f × χ) with the default configuration (sign derived from the weight).
pub fn afe_gl2_central(f: &EllipticEigenform, chi: &DirichletCharacter, x: f64) -> Result<CentralValue> {
    afe_gl2_central_with(f, chi, x, &AfeConfig::default())
}

pub fn afe_gl2_central_with(
    f: &EllipticEigenform,
    chi: &DirichletCharacter,
    x: f64,
    config: &AfeConfig,
) -> Result<CentralValue> {
    if !chi.is_primitive() {
        return Err(Error::Imprimitive);
    }
    Gl2Afe::new(f, chi.modulus(), x, config)?.central(chi)
}

#[derive(Clone, Debug)]
struct ParityTables {
    first: Vec<f64>,
    second: Vec<f64>,
}

/// Tables for central values of the twisted spin L-function with χ mod a fixed q.
#[derive(Clone, Debug)]
pub struct Gsp4Afe {
    q: u64,
    level: u64,
    /// a_F(n) n^{−1/2}
    coeffs: Vec<Complex64>,
    even: Option<ParityTables>,
    odd: Option<ParityTables>,
    /// c_π for even and odd χ
    c_pi: [Complex64; 2],
}

/// Archimedean gamma factor of the twisted spin L-function.
pub fn spin_gamma(f: &ParamodularEigenform, odd: bool) -> GammaFactor {
    match f.packet() {
        Packet::P => GammaFactor::sk_spin(f.k(), odd),
        Packet::G => GammaFactor::generic_spin(f.k(), f.j()),
    }
}

/// Default c_π: the sign of the archimedean factor, (−1)^{a+k−1} for type P
/// and (−1)^{k+j} for type G.
pub fn auto_c_pi(f: &ParamodularEigenform, odd: bool) -> Complex64 {
    let a = odd as i64;
    let e = match f.packet() {
        Packet::P => a + f.k() as i64 - 1,
        Packet::G => f.k() as i64 + f.j() as i64,
    };
    Complex64::new(if e % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
}

impl Gsp4Afe {
    pub fn new(f: &ParamodularEigenform, q: u64, x: f64, config: &AfeConfig) -> Result<Self> {
        if !(x >= 1.0) {
            return Err(Error::InvalidArgument(format!("balance parameter X must be ≥ 1, got {x}")));
        }
        if q == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        if crate::arith::gcd(q, f.level()) != 1 {
            return Err(Error::NotCoprime(format!("modulus {q} and level {}", f.level())));
        }
        if q == 1 && f.packet() == Packet::P {
            return Err(Error::Pole("untwisted spin L-function of type P".into()));
        }
        let root = (q * q) as f64 * (f.level() as f64).sqrt();
        let build = |odd: bool| -> Result<Option<ParityTables>> {
            let gamma = spin_gamma(f, odd);
            if gamma.has_pole_at(0.5) {
                return Ok(None);
            }
            let w = MellinWeight::new(&gamma, 0.5, config.test_function, &config.quadrature)?;
            Ok(Some(ParityTables {
                first: weight_table(&w, root * x, config.cutoff),
                second: weight_table(&w, root / x, config.cutoff),
            }))
        };
        let even = if q > 2 || q == 1 { build(false)? } else { None };
        let odd = if q > 2 { build(true)? } else { None };
        let needed = [&even, &odd]
            .iter()
            .filter_map(|t| t.as_ref())
            .map(|t| t.first.len().max(t.second.len()))
            .max()
            .unwrap_or(0);
        let have = f.prime_bound() as usize;
        if needed > have && crate::arith::primes_up_to(needed as u64).iter().any(|&p| {
            !f.is_ramified(p) && !f.hecke().contains_key(&p)
        }) {
            return Err(Error::InsufficientPrecision { needed, have });
        }
        let series = spin_coeffs(f, needed.max(1))?;
        let coeffs = (1..=needed).map(|n| series.get(n) / (n as f64).sqrt()).collect();
        let c_pi = [false, true].map(|odd| match config.sign {
            RootSign::Auto => auto_c_pi(f, odd),
            RootSign::Value(v) => v,
        });
        Ok(Gsp4Afe { q, level: f.level(), coeffs, even, odd, c_pi })
    }

    /// Coefficient length used by the widest table.
    pub fn length(&self) -> usize {
        self.coeffs.len()
    }

    pub fn central(&self, chi: &DirichletCharacter) -> Result<CentralValue> {
        check_character(chi, self.q)?;
        let tables = if chi.is_odd() { &self.odd } else { &self.even };
        let eps = epsilon_factor(chi, self.c_pi[chi.is_odd() as usize])? * chi.value(self.level as i64);
        let Some(t) = tables else {
            return Ok(CentralValue {
                value: Complex64::new(0.0, 0.0),
                root_number: eps,
                length1: 0,
                length2: 0,
                trivial_zero: true,
            });
        };
        let s1 = twisted_sum(&self.coeffs, &t.first, chi, false);
        let s2 = twisted_sum(&self.coeffs, &t.second, chi, true);
        Ok(CentralValue {
            value: s1 + eps * s2,
            root_number: eps,
            length1: t.first.len(),
            length2: t.second.len(),
            trivial_zero: false,
        })
    }
}

/// L(1/2, F × χ) for the spin L-function.
pub fn afe_gsp4_central(
    f: &ParamodularEigenform,
    chi: &DirichletCharacter,
    x: f64,
    c_pi: RootSign,
) -> Result<CentralValue> {
    afe_gsp4_central_with(f, chi, x, &AfeConfig::default().with_sign(c_pi))
}

pub fn afe_gsp4_central_with(
    f: &ParamodularEigenform,
    chi: &DirichletCharacter,
    x: f64,
    config: &AfeConfig,
) -> Result<CentralValue> {
    if !chi.is_primitive() {
        return Err(Error::Imprimitive);
    }
    Gsp4Afe::new(f, chi.modulus(), x, config)?.central(chi)
}
