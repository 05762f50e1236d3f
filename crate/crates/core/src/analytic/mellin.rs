//! Archimedean factors, smooth cutoffs and the dyadic partition of unity.

use crate::special::ln_gamma;
use crate::{Error, Result};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Product of Γ_R(s + μ) over `real` shifts and Γ_C(s + ν) over `complex` shifts.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaFactor {
    pub real: Vec<f64>,
    pub complex: Vec<f64>,
}

fn ln_gamma_r(s: Complex64) -> Complex64 {
    -s / 2.0 * PI.ln() + ln_gamma(s / 2.0)
}

fn ln_gamma_c(s: Complex64) -> Complex64 {
    Complex64::new(2f64.ln(), 0.0) - s * (2.0 * PI).ln() + ln_gamma(s)
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 1e-12 && (x - x.round()).abs() < 1e-12
}

impl GammaFactor {
    /// Γ_C(s + (w−1)/2) for a level-one weight-w eigenform.
    pub fn gl2(weight: u32) -> Self {
        GammaFactor { real: Vec::new(), complex: vec![(weight as f64 - 1.0) / 2.0] }
    }

    /// Spin factor of a Saito–Kurokawa form of weight k twisted by a character
    /// of parity `odd`.
    pub fn sk_spin(k: u32, odd: bool) -> Self {
        let a = if odd { 1.0 } else { 0.0 };
        GammaFactor { real: vec![0.5 + a, -0.5 + a], complex: vec![k as f64 - 1.5] }
    }

    /// Spin factor of a tempered weight-(k, j) form.
    pub fn generic_spin(k: u32, j: u32) -> Self {
        let (k, j) = (k as f64, j as f64);
        GammaFactor { real: Vec::new(), complex: vec![(2.0 * k + j - 3.0) / 2.0, (j + 1.0) / 2.0] }
    }

    pub fn degree(&self) -> usize {
        self.real.len() + 2 * self.complex.len()
    }

    pub fn ln_value(&self, s: Complex64) -> Complex64 {
        let r: Complex64 = self.real.iter().map(|&mu| ln_gamma_r(s + mu)).sum();
        let c: Complex64 = self.complex.iter().map(|&nu| ln_gamma_c(s + nu)).sum();
        r + c
    }

    /// Whether γ has a pole at the real point s.
    pub fn has_pole_at(&self, s: f64) -> bool {
        self.real.iter().any(|&mu| is_nonpositive_integer((s + mu) / 2.0))
            || self.complex.iter().any(|&nu| is_nonpositive_integer(s + nu))
    }
}

/// Even test function G in the Mellin weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TestFunction {
    /// G ≡ 1.
    #[default]
    One,
    /// G(u) = exp(u²).
    ExpSquare,
}

impl TestFunction {
    pub fn eval(self, u: Complex64) -> Complex64 {
        match self {
            TestFunction::One => Complex64::new(1.0, 0.0),
            TestFunction::ExpSquare => (u * u).exp(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TestFunction::One => "one",
            TestFunction::ExpSquare => "exp-square",
        }
    }
}

/// Trapezoid rule on the vertical line Re u = `abscissa`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub abscissa: f64,
    pub step: f64,
    /// Hard cap on the truncation height; None means adaptive only.
    pub max_height: Option<f64>,
    /// Relative size below which the integrand is dropped.
    pub tail: f64,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature { abscissa: 2.0, step: 0.2, max_height: None, tail: 1e-18 }
    }
}

/// W(y) = (1/2πi) ∫ γ(s+u)/γ(s) G(u) y^{−u} du/u, tabulated on its nodes.
///
/// Small y are evaluated on a second line left of u = 0 (plus the residue 1
/// there); on the right line the y^{−c} factor amplifies rounding.
#[derive(Clone, Debug)]
pub struct MellinWeight {
    abscissa: f64,
    /// (t_j, weight_j) with the symmetric multiplicity folded in
    nodes: Vec<(f64, Complex64)>,
    left: Option<(f64, Vec<(f64, Complex64)>)>,
}

const HARD_HEIGHT: f64 = 2000.0;

impl MellinWeight {
    pub fn new(gamma: &GammaFactor, s: f64, g: TestFunction, quad: &Quadrature) -> Result<Self> {
        if gamma.has_pole_at(s) {
            return Err(Error::Pole(format!("archimedean factor at s = {s}")));
        }
        // nearest pole of γ(s+u) on the real axis, as a distance left of 0
        let gap = gamma
            .real
            .iter()
            .map(|&mu| s + mu)
            .chain(gamma.complex.iter().map(|&nu| s + nu))
            .fold(f64::INFINITY, f64::min);
        let left = if gap > 0.0 { Some(gap) } else { None };
        Self::build(|u| gamma.ln_value(u + s) - gamma.ln_value(Complex64::new(s, 0.0)), g, quad, left)
    }

    /// Build from ln of the ratio u ↦ γ(s+u)/γ(s). Only the right line is used.
    pub fn from_kernel(
        ln_ratio: impl Fn(Complex64) -> Complex64,
        g: TestFunction,
        quad: &Quadrature,
    ) -> Result<Self> {
        Self::build(ln_ratio, g, quad, None)
    }

    /// `left_gap`: the kernel is holomorphic on −left_gap < Re u < 0.
    pub(crate) fn build(
        ln_ratio: impl Fn(Complex64) -> Complex64,
        g: TestFunction,
        quad: &Quadrature,
        left_gap: Option<f64>,
    ) -> Result<Self> {
        if !(quad.step > 0.0) || !(quad.abscissa > 0.0) {
            return Err(Error::InvalidArgument("quadrature step and abscissa must be positive".into()));
        }
        let nodes = line_nodes(&ln_ratio, g, quad, quad.abscissa, quad.step);
        let left = left_gap.map(|gap| {
            let c = -(0.5 * gap).min(1.0);
            // trapezoid aliasing decays like e^{−2π d/h}, d the distance to the nearest pole
            let d = (-c).min(gap + c);
            (c, line_nodes(&ln_ratio, g, quad, c, quad.step * (d / quad.abscissa).min(1.0)))
        });
        Ok(MellinWeight { abscissa: quad.abscissa, nodes, left })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn height(&self) -> f64 {
        self.nodes.last().map_or(0.0, |n| n.0)
    }

    /// W(y) for y > 0.
    pub fn eval(&self, y: f64) -> f64 {
        match &self.left {
            Some((c, nodes)) if y < 1.0 => 1.0 + line_sum(*c, nodes, y),
            _ => line_sum(self.abscissa, &self.nodes, y),
        }
    }

    /// Smallest y on a dyadic-then-bisected search beyond which |W| < tol.
    pub fn decay_point(&self, tol: f64) -> f64 {
        let mut hi = 1.0;
        while self.eval(hi).abs() >= tol {
            hi *= 2.0;
            if hi > 1e12 {
                return hi;
            }
        }
        let mut lo = hi / 2.0;
        if self.eval(lo).abs() < tol {
            // already small below 1; search downward
            lo = hi;
            while lo > 1e-12 && self.eval(lo / 2.0).abs() < tol {
                lo /= 2.0;
            }
            return lo;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.eval(mid).abs() < tol {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }
}

fn line_nodes(
    ln_ratio: &impl Fn(Complex64) -> Complex64,
    g: TestFunction,
    quad: &Quadrature,
    c: f64,
    h: f64,
) -> Vec<(f64, Complex64)> {
    let cap = quad.max_height.unwrap_or(HARD_HEIGHT);
    let mut nodes = Vec::new();
    let mut peak = 0f64;
    let mut small_run = 0;
    let mut j = 0usize;
    loop {
        let t = j as f64 * h;
        if t > cap {
            break;
        }
        let u = Complex64::new(c, t);
        let mut w = (ln_ratio(u)).exp() * g.eval(u) / u * (h / (2.0 * PI));
        if j > 0 {
            w *= 2.0;
        }
        let size = w.norm();
        peak = peak.max(size);
        nodes.push((t, w));
        if size < quad.tail * peak {
            small_run += 1;
            if small_run >= 8 {
                break;
            }
        } else {
            small_run = 0;
        }
        j += 1;
    }
    nodes
}

fn line_sum(c: f64, nodes: &[(f64, Complex64)], y: f64) -> f64 {
    let ly = y.ln();
    let scale = (-c * ly).exp();
    let s = nodes.iter().fold(0.0, |acc, &(t, w)| {
        let (sn, cs) = (t * ly).sin_cos();
        // Re(w · e^{−i t ln y})
        acc + w.re * cs + w.im * sn
    });
    s * scale
}

/// Cutoff profile U(y) = (1/2πi)∫_{(2)} Γ(u+k−1)/Γ(k−1) G(u)(2πy)^{−u} du/u.
#[derive(Clone, Debug, PartialEq)]
pub struct CutoffU {
    pub k: f64,
    pub g: TestFunction,
    pub quadrature: Quadrature,
}

impl CutoffU {
    pub fn new(k: f64) -> Self {
        CutoffU { k, g: TestFunction::One, quadrature: Quadrature::default() }
    }

    /// The profile attached to a weight-w elliptic form (k − 1 = w/2).
    pub fn for_weight(weight: u32) -> Self {
        Self::new(weight as f64 / 2.0 + 1.0)
    }

    pub fn with_test_function(mut self, g: TestFunction) -> Self {
        self.g = g;
        self
    }

    pub fn profile(&self) -> Result<MellinWeight> {
        if !(self.k > 1.0) {
            return Err(Error::InvalidArgument(format!("cutoff weight parameter k = {} must exceed 1", self.k)));
        }
        let a = self.k - 1.0;
        let base = ln_gamma(Complex64::new(a, 0.0));
        let l2pi = (2.0 * PI).ln();
        MellinWeight::build(|u| ln_gamma(u + a) - base - u * l2pi, self.g, &self.quadrature, Some(a))
    }
}

pub fn cutoff_u(y: f64, params: &CutoffU) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::InvalidArgument(format!("cutoff argument must be positive, got {y}")));
    }
    Ok(params.profile()?.eval(y))
}

/// Smooth step: 0 for t ≤ 0, 1 for t ≥ 1.
fn smooth_step(t: f64) -> f64 {
    let f = |x: f64| if x > 0.0 { (-1.0 / x).exp() } else { 0.0 };
    let (a, b) = (f(t), f(1.0 - t));
    if a + b == 0.0 {
        return if t >= 1.0 { 1.0 } else { 0.0 };
    }
    a / (a + b)
}

/// Bump V supported in (1/4, 4) with Σ_{N = 2^j} V(x/N) = 1.
pub fn bump_v(t: f64) -> f64 {
    if !(t > 0.0) {
        return 0.0;
    }
    let u = t.log2();
    let h = |v: f64| smooth_step((v + 1.5) / 3.0);
    h(u + 0.5) - h(u - 0.5)
}

/// Weights V(x/N) keyed by the exponent j of N = 2^j, nonzero entries only.
pub fn partition_v(x: f64) -> Result<BTreeMap<i32, f64>> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!("partition argument must be positive, got {x}")));
    }
    let centre = x.log2().round() as i32;
    let mut out = BTreeMap::new();
    for j in centre - 3..=centre + 3 {
        let w = bump_v(x / 2f64.powi(j));
        if w > 0.0 {
            out.insert(j, w);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutoff_limits() {
        let u = CutoffU::new(10.0);
        let prof = u.profile().unwrap();
        assert!((prof.eval(1e-3) - 1.0).abs() < 1e-3);
        assert!(prof.eval(100.0).abs() < 1e-6);
        for y in [10.0, 20.0, 50.0] {
            assert!(prof.eval(y).abs() <= y.powi(-5));
        }
        let mut prev = f64::INFINITY;
        for i in 0..50 {
            let y = 0.1 * 100f64.powf(i as f64 / 49.0);
            let v = prof.eval(y);
            assert!(v < prev);
            prev = v;
        }
        assert!(cutoff_u(0.0, &u).is_err());
    }

    #[test]
    fn closed_form_for_integer_k() {
        // Γ(a, x)/Γ(a) = e^{−x} Σ_{j<a} x^j / j! for integer a
        let prof = CutoffU::new(7.0).profile().unwrap();
        for y in [0.05, 0.3, 1.0, 2.5, 6.0] {
            let x = 2.0 * PI * y;
            let mut term = 1.0;
            let mut q = 0.0;
            for j in 0..6 {
                if j > 0 {
                    term *= x / j as f64;
                }
                q += term;
            }
            q *= (-x).exp();
            assert!((prof.eval(y) - q).abs() < 1e-12, "y={y}");
        }
    }

    #[test]
    fn gamma_factor_weight_matches_cutoff() {
        let w = MellinWeight::new(&GammaFactor::gl2(18), 0.5, TestFunction::One, &Quadrature::default())
            .unwrap();
        let u = CutoffU::for_weight(18).profile().unwrap();
        for y in [0.01, 0.2, 1.0, 3.0] {
            assert!((w.eval(y) - u.eval(y)).abs() < 1e-12);
        }
    }

    #[test]
    fn poles_detected() {
        assert!(GammaFactor::sk_spin(10, false).has_pole_at(0.5));
        assert!(!GammaFactor::sk_spin(10, true).has_pole_at(0.5));
        assert!(!GammaFactor::generic_spin(10, 0).has_pole_at(0.5));
    }

    #[test]
    fn partition_examples() {
        let w = partition_v(1.0).unwrap();
        assert!((w.values().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(w.len() <= 4);
        let w = partition_v(2f64.powi(40)).unwrap();
        assert!(w.keys().all(|&j| (38..=42).contains(&j)));
        assert!((w.values().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(bump_v(8.0), 0.0);
        assert_eq!(bump_v(0.25), 0.0);
        assert!(partition_v(-1.0).is_err());
    }
}
