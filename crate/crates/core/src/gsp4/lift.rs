//! Saito–Kurokawa lifts of level-one elliptic eigenforms.

use super::{HeckeDatum, Packet, ParamodularEigenform, SkSource};
use crate::gl2::{normalized_eigenvalue, EllipticEigenform};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;

/// (λ_F(p), λ_F(p²)) of the lift, from a_f(p), exactly.
///
/// λ_F(p) = p^{k−1} + p^{k−2} + a(p) and
/// λ_F(p²) = p^{2k−2} + a(p)(p + 1)p^{k−2} + a(p)².
pub fn sk_hecke_exact(a_p: &BigInt, p: u64, k: u32) -> (BigInt, BigInt) {
    let pb = BigInt::from(p);
    let l1 = pb.pow(k - 1) + pb.pow(k - 2) + a_p;
    let l2 = pb.pow(2 * k - 2) + a_p * (&pb + 1u32) * pb.pow(k - 2) + a_p * a_p;
    (l1, l2)
}

/// b_F(p) = 1 + a(p)(p + 1)/p^{k−1}, i.e. 1 + λ̂(p)(p^{1/2} + p^{−1/2}).
pub fn sk_std_eigenvalue_exact(a_p: &BigInt, p: u64, k: u32) -> BigRational {
    let pb = BigInt::from(p);
    BigRational::from_integer(BigInt::from(1))
        + BigRational::new(a_p * (&pb + 1u32), pb.pow(k - 1))
}

/// a_F(p) = p^{1/2} + p^{−1/2} + λ̂_f(p).
pub fn sk_spin_eigenvalue(f: &EllipticEigenform, p: u64) -> Result<f64> {
    let s = (p as f64).sqrt();
    Ok(s + 1.0 / s + normalized_eigenvalue(f, p)?)
}

/// Lift of weight (k, 0), level 1, with k = (w + 2)/2.
///
/// Hecke data is produced at every prime within the precision of `f`.
/// Level-one lifts exist only for k even, i.e. w ≡ 2 (mod 4).
pub fn sk_lift(f: &EllipticEigenform) -> Result<ParamodularEigenform> {
    let w = f.weight();
    if w % 2 == 1 {
        return Err(Error::InvalidArgument(format!("odd weight {w}")));
    }
    let k = (w + 2) / 2;
    if k < 10 {
        return Err(Error::InvalidArgument(format!("weight {w} too small for a lift (need w ≥ 18)")));
    }
    if k % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "weight {w}: level-one lifts need w ≡ 2 (mod 4)"
        )));
    }
    let mut hecke = BTreeMap::new();
    for p in crate::arith::primes_up_to(f.precision() as u64) {
        let a = f.coefficient(p as usize)?;
        let (l1, l2) = sk_hecke_exact(a, p, k);
        hecke.insert(p, HeckeDatum::exact(l1, l2));
    }
    ParamodularEigenform::new(k, 0, 1, Packet::P, hecke, Some(SkSource { weight: w, reference: None }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2::eigenform_one_dim;

    #[test]
    fn weight_18_lift_at_two() {
        let f = eigenform_one_dim(18, 50).unwrap();
        let lift = sk_lift(&f).unwrap();
        let d = &lift.hecke()[&2];
        let (l1, l2) = d.exact.clone().unwrap();
        assert_eq!(l1, BigInt::from(240));
        assert_eq!(l2, BigInt::from(135424));
        let b = sk_std_eigenvalue_exact(&BigInt::from(-528), 2, 10);
        assert_eq!(b, BigRational::new(BigInt::from(-67), BigInt::from(32)));
        assert_eq!(lift.std_eigenvalue(2).unwrap(), -2.09375);
        assert!((lift.spin_eigenvalue(2).unwrap() - sk_spin_eigenvalue(&f, 2).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn weight_restrictions() {
        let f = eigenform_one_dim(16, 20).unwrap();
        assert!(sk_lift(&f).is_err());
        let f = eigenform_one_dim(20, 20).unwrap();
        assert!(sk_lift(&f).is_err());
        let f = eigenform_one_dim(22, 20).unwrap();
        assert_eq!(sk_lift(&f).unwrap().k(), 12);
    }
}
