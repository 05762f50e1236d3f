//! L(0, χ) and L(1, χ) in closed form.

use super::{gauss_sum, DirichletCharacter};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// L(s, χ) at s ∈ {0, 1} for primitive χ.
///
/// L(0, χ) is the Bernoulli sum −(1/q)Σ χ(a)a for odd χ and 0 for even
/// nontrivial χ. For odd χ, L(1, χ) = πτ(χ)L(0, χ̄)/(iq). For even χ the
/// functional equation only links L(1, χ) to L'(0, χ̄), so the finite formula
/// −(τ(χ)/q) Σ χ̄(a) log|1 − e(a/q)| is used instead.
pub fn dirichlet_l_special(chi: &DirichletCharacter, s: u32) -> Result<Complex64> {
    if !chi.is_primitive() {
        return Err(Error::Imprimitive);
    }
    let q = chi.modulus();
    let trivial = q == 1;
    match s {
        0 => {
            if trivial {
                Ok(Complex64::new(-0.5, 0.0))
            } else if chi.is_odd() {
                Ok(bernoulli_sum(chi, false))
            } else {
                Ok(Complex64::new(0.0, 0.0))
            }
        }
        1 => {
            if trivial {
                return Err(Error::Pole("L(s, χ) for trivial χ at s = 1".into()));
            }
            let tau = gauss_sum(chi);
            if chi.is_odd() {
                let l0_conj = bernoulli_sum(chi, true);
                Ok(PI * tau * l0_conj / (Complex64::i() * q as f64))
            } else {
                let s = (1..q).fold(Complex64::new(0.0, 0.0), |acc, a| {
                    let x = (PI * a as f64 / q as f64).sin() * 2.0;
                    acc + chi.conj_value(a as i64) * x.ln()
                });
                Ok(-tau * s / q as f64)
            }
        }
        _ => Err(Error::InvalidArgument(format!("special point must be 0 or 1, got {s}"))),
    }
}

fn bernoulli_sum(chi: &DirichletCharacter, conj: bool) -> Complex64 {
    let q = chi.modulus();
    let s = (1..q).fold(Complex64::new(0.0, 0.0), |acc, a| {
        let v = if conj { chi.conj_value(a as i64) } else { chi.value(a as i64) };
        acc + v * a as f64
    });
    -s / q as f64
}
