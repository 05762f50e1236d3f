//! Complex special functions used by the analytic layer.

use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal branch of log Gamma for complex argument.
///
/// Lanczos approximation, with reflection for Re z < 1/2 and Stirling's
/// series for |z| > 15. The imaginary part is only determined modulo 2π;
/// callers exponentiate.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // log Γ(z) = log π − log sin(πz) − log Γ(1 − z)
        let s = (Complex64::new(PI, 0.0) * z).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    // Asymptotic series is more accurate far from the origin.
    if z.norm() > 15.0 {
        return ln_gamma_stirling(z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Complex64::new(0.5 * (2.0 * PI).ln(), 0.0) + (z + 0.5) * t.ln() - t + x.ln()
}

fn ln_gamma_stirling(z: Complex64) -> Complex64 {
    // Bernoulli coefficients B_{2n} / (2n(2n-1)).
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
    ];
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut term = inv;
    let mut corr = Complex64::new(0.0, 0.0);
    for c in C {
        corr += term * c;
        term *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + corr
}

/// Γ(z) for complex z.
pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

/// e(x) = exp(2πi x) with reduction of x modulo 1 first.
pub fn e(x: f64) -> Complex64 {
    let r = x - x.floor();
    let (s, c) = (2.0 * PI * r).sin_cos();
    Complex64::new(c, s)
}

/// e(a/m) with the reduction carried out in exact integer arithmetic.
pub fn e_frac(a: i64, m: u64) -> Complex64 {
    let r = crate::arith::rem(a, m);
    e(r as f64 / m as f64)
}
