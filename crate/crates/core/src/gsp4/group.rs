//! The paramodular group and the η_{k,j} action on homogeneous polynomials.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Symplectic form used for the Sp₄ condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SymplecticForm {
    /// J with J₁₄ = J₂₃ = 1 and J₃₂ = J₄₁ = −1.
    #[default]
    Antidiagonal,
    /// J = [[0, 1₂], [−1₂, 0]].
    Block,
}

impl SymplecticForm {
    pub fn matrix(self) -> [[i64; 4]; 4] {
        match self {
            SymplecticForm::Antidiagonal => {
                [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]
            }
            SymplecticForm::Block => [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]],
        }
    }
}

pub type RationalMatrix = [[BigRational; 4]; 4];

/// Exponent of N allowed at each position: 0 for ℤ, 1 for Nℤ, −1 for N⁻¹ℤ.
const LATTICE: [[i32; 4]; 4] = [[0, 1, 0, 0], [0, 0, 0, -1], [0, 1, 0, 0], [1, 1, 1, 0]];

pub fn rational_matrix(entries: [[(i64, i64); 4]; 4]) -> RationalMatrix {
    entries.map(|row| row.map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d))))
}

pub fn identity() -> RationalMatrix {
    let mut m = zero_matrix();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    m
}

fn zero_matrix() -> RationalMatrix {
    std::array::from_fn(|_| std::array::from_fn(|_| BigRational::zero()))
}

pub fn mat_mul(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let mut c = zero_matrix();
    for i in 0..4 {
        for j in 0..4 {
            let mut s = BigRational::zero();
            for k in 0..4 {
                s += &a[i][k] * &b[k][j];
            }
            c[i][j] = s;
        }
    }
    c
}

fn transpose(a: &RationalMatrix) -> RationalMatrix {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

/// True when gᵀJg = J, i.e. g ∈ Sp₄ with multiplier 1.
pub fn is_symplectic(g: &RationalMatrix, form: SymplecticForm) -> bool {
    let j = form.matrix().map(|r| r.map(|x| BigRational::from_integer(BigInt::from(x))));
    mat_mul(&mat_mul(&transpose(g), &j), g) == j
}

/// Entry-wise lattice condition of level N.
pub fn in_paramodular_lattice(g: &RationalMatrix, n: u64) -> bool {
    let n = BigInt::from(n);
    for i in 0..4 {
        for j in 0..4 {
            let x = &g[i][j];
            let ok = match LATTICE[i][j] {
                0 => x.is_integer(),
                1 => x.is_integer() && x.to_integer().is_multiple_of(&n),
                _ => (x * BigRational::from_integer(n.clone())).is_integer(),
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Membership in K(N) under the chosen symplectic form.
pub fn paramodular_membership(g: &RationalMatrix, n: u64, form: SymplecticForm) -> bool {
    n >= 1 && in_paramodular_lattice(g, n) && is_symplectic(g, form)
}

/// Homogeneous polynomial in S, T stored as (deg_S, deg_T) → coefficient.
pub type Polynomial = BTreeMap<(u32, u32), Complex64>;

/// Total degree if homogeneous (zero terms ignored).
pub fn homogeneous_degree(p: &Polynomial) -> Option<Option<u32>> {
    let mut deg = None;
    for (&(i, l), c) in p {
        if c.norm() == 0.0 {
            continue;
        }
        match deg {
            None => deg = Some(i + l),
            Some(d) if d != i + l => return None,
            _ => {}
        }
    }
    Some(deg)
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// η_{k,j}(h)P = det(h)^k · P((S, T)h).
///
/// With h = [[a, b], [c, d]], (S, T)h = (aS + cT, bS + dT).
pub fn eta_kj_action(k: i32, j: u32, h: [[Complex64; 2]; 2], p: &Polynomial) -> Result<Polynomial> {
    match homogeneous_degree(p) {
        None => return Err(Error::Inhomogeneous),
        Some(Some(d)) if d != j => return Err(Error::Inhomogeneous),
        _ => {}
    }
    let [[a, b], [c, d]] = h;
    let det = a * d - b * c;
    let scale = det.powi(k);
    let mut out = Polynomial::new();
    for (&(i, l), &coef) in p {
        if coef.norm() == 0.0 {
            continue;
        }
        // (aS + cT)^i (bS + dT)^l
        for r in 0..=i {
            let t1 = coef * binomial(i, r) * a.powu(r) * c.powu(i - r);
            for s in 0..=l {
                let t2 = t1 * binomial(l, s) * b.powu(s) * d.powu(l - s);
                *out.entry((r + s, (i - r) + (l - s))).or_insert(Complex64::new(0.0, 0.0)) +=
                    t2 * scale;
            }
        }
    }
    out.retain(|_, v| v.norm() != 0.0);
    Ok(out)
}

/// Largest coefficient difference between two polynomials.
pub fn polynomial_distance(a: &Polynomial, b: &Polynomial) -> f64 {
    let zero = Complex64::new(0.0, 0.0);
    a.keys()
        .chain(b.keys())
        .map(|k| (a.get(k).copied().unwrap_or(zero) - b.get(k).copied().unwrap_or(zero)).norm())
        .fold(0.0, f64::max)
}
