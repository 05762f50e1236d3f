//! Dirichlet characters modulo q with exact exponent tables.

mod lvalues;
mod sums;

pub use lvalues::dirichlet_l_special;
pub use sums::{
    gauss_sum, gauss_sum_twisted, kloosterman, odd_twisted_gauss_identity,
    primitive_orthogonality_sum, twist_series,
};

use crate::arith::{factorize, gcd, lcm, primitive_root_prime_power};
use crate::{Error, Result};
use num_complex::Complex64;
use std::sync::Arc;

/// Largest modulus accepted for full value tables.
pub const MAX_MODULUS: u64 = 1_000_000;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Clone, Debug)]
enum ComponentKind {
    /// Cyclic group mod p^e with a primitive root.
    Odd { p: u64 },
    /// The ±1 factor of (ℤ/2^e)^×.
    Sign,
    /// The ⟨5⟩ factor of (ℤ/2^e)^×, e ≥ 3.
    Five,
}

#[derive(Clone, Debug)]
struct Component {
    kind: ComponentKind,
    /// p^e for this prime
    modulus: u64,
    order: u64,
    /// discrete log of each residue mod `modulus` (NONE when not a unit)
    log: Vec<u32>,
}

/// (ℤ/q)^× split into cyclic factors, with per-residue discrete logs.
#[derive(Clone, Debug)]
pub struct CharacterGroup {
    modulus: u64,
    components: Vec<Component>,
    exponent: u64,
    roots: Arc<Vec<Complex64>>,
    /// public index -> raw mixed-radix index, sorted by (order, raw)
    ordering: Vec<usize>,
}

/// A Dirichlet character mod q, stored as exponents m(a) with χ(a) = e(m(a)/λ).
#[derive(Clone, Debug)]
pub struct DirichletCharacter {
    modulus: u64,
    index: usize,
    exponent: u64,
    exps: Arc<Vec<u32>>,
    roots: Arc<Vec<Complex64>>,
    conductor: u64,
    parity: Parity,
    order: u64,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.index == other.index
    }
}

fn odd_component(p: u64, e: u32) -> Component {
    let m = p.pow(e);
    let g = primitive_root_prime_power(p, e);
    let order = m / p * (p - 1);
    let mut log = vec![NONE; m as usize];
    let mut x = 1u64;
    for j in 0..order {
        log[x as usize] = j as u32;
        x = x * g % m;
    }
    Component { kind: ComponentKind::Odd { p }, modulus: m, order, log }
}

fn two_components(e: u32) -> Vec<Component> {
    let m = 1u64 << e;
    match e {
        0 | 1 => Vec::new(),
        2 => {
            let mut log = vec![NONE; 4];
            log[1] = 0;
            log[3] = 1;
            vec![Component { kind: ComponentKind::Sign, modulus: 4, order: 2, log }]
        }
        _ => {
            let order5 = m / 4;
            let mut sign = vec![NONE; m as usize];
            let mut five = vec![NONE; m as usize];
            let mut x = 1u64;
            for t in 0..order5 {
                sign[x as usize] = 0;
                five[x as usize] = t as u32;
                let y = (m - x) % m;
                sign[y as usize] = 1;
                five[y as usize] = t as u32;
                x = x * 5 % m;
            }
            vec![
                Component { kind: ComponentKind::Sign, modulus: m, order: 2, log: sign },
                Component { kind: ComponentKind::Five, modulus: m, order: order5, log: five },
            ]
        }
    }
}

impl CharacterGroup {
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 || q > MAX_MODULUS {
            return Err(Error::InvalidArgument(format!("modulus {q} outside 1..=10^6")));
        }
        let mut components = Vec::new();
        for (p, e) in factorize(q) {
            if p == 2 {
                components.extend(two_components(e));
            } else {
                components.push(odd_component(p, e));
            }
        }
        let exponent = components.iter().fold(1, |acc, c| lcm(acc, c.order));
        let roots =
            (0..exponent).map(|m| crate::special::e_frac(m as i64, exponent)).collect::<Vec<_>>();
        let mut group =
            CharacterGroup { modulus: q, components, exponent, roots: Arc::new(roots), ordering: Vec::new() };
        let mut keyed: Vec<(u64, usize)> =
            (0..group.size()).map(|raw| (group.raw_order(raw), raw)).collect();
        keyed.sort_unstable();
        group.ordering = keyed.into_iter().map(|(_, raw)| raw).collect();
        Ok(group)
    }

    fn raw_order(&self, raw: usize) -> u64 {
        self.components
            .iter()
            .zip(self.digits(raw))
            .fold(1, |acc, (c, k)| lcm(acc, c.order / gcd(k, c.order)))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// φ(q).
    pub fn size(&self) -> usize {
        self.components.iter().map(|c| c.order as usize).product()
    }

    /// Mixed-radix digits of an index, first component least significant.
    fn digits(&self, mut index: usize) -> Vec<u64> {
        self.components
            .iter()
            .map(|c| {
                let d = index as u64 % c.order;
                index /= c.order as usize;
                d
            })
            .collect()
    }

    pub fn character(&self, index: usize) -> Result<DirichletCharacter> {
        if index >= self.size() {
            return Err(Error::InvalidArgument(format!(
                "character index {index} out of range for modulus {}",
                self.modulus
            )));
        }
        let digits = self.digits(self.ordering[index]);
        let lam = self.exponent;
        let q = self.modulus as usize;
        let mut exps = vec![NONE; q];
        for (a, slot) in exps.iter_mut().enumerate() {
            if gcd(a as u64, self.modulus) != 1 {
                continue;
            }
            let mut m = 0u64;
            for (c, &k) in self.components.iter().zip(&digits) {
                let l = c.log[a % c.modulus as usize] as u64;
                m = (m + k * l % c.order * (lam / c.order)) % lam;
            }
            *slot = m as u32;
        }
        if q == 1 {
            exps[0] = 0;
        }
        let mut conductor = 1u64;
        let mut order = 1u64;
        let mut two_sign = false;
        let mut two_five = 1u64;
        for (c, &k) in self.components.iter().zip(&digits) {
            let d = c.order / gcd(k, c.order);
            order = lcm(order, d);
            match c.kind {
                ComponentKind::Odd { p } => {
                    if d > 1 {
                        let mut f = 1u32;
                        let mut dd = d;
                        while dd % p == 0 {
                            dd /= p;
                            f += 1;
                        }
                        conductor *= p.pow(f);
                    }
                }
                ComponentKind::Sign => two_sign = d > 1,
                ComponentKind::Five => two_five = d,
            }
        }
        if two_five > 1 {
            conductor *= 4 * two_five;
        } else if two_sign {
            conductor *= 4;
        }
        let minus_one = exps[(self.modulus - 1) as usize];
        let parity = if minus_one == 0 || q == 1 { Parity::Even } else { Parity::Odd };
        Ok(DirichletCharacter {
            modulus: self.modulus,
            index,
            exponent: lam,
            exps: Arc::new(exps),
            roots: Arc::clone(&self.roots),
            conductor,
            parity,
            order,
        })
    }

    /// All φ(q) characters in index order: sorted by order, then by the
    /// mixed-radix exponent vector. Index 0 is principal.
    pub fn characters(&self) -> Vec<DirichletCharacter> {
        crate::par::map_range(self.size(), |i| self.character(i).expect("index in range"))
    }
}

/// All characters mod q in the deterministic enumeration order.
pub fn characters_mod(q: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(CharacterGroup::new(q)?.characters())
}

/// Characters with χ⁴ principal.
pub fn quartic_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(characters_mod(q)?.into_iter().filter(|c| 4 % c.order() == 0).collect())
}

/// Primitive characters mod q.
pub fn primitive_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(characters_mod(q)?.into_iter().filter(|c| c.is_primitive()).collect())
}

/// Parses "q:index".
pub fn parse_address(s: &str) -> Result<(u64, usize)> {
    let (q, i) = s
        .split_once(':')
        .ok_or_else(|| Error::InvalidArgument(format!("character address {s:?} is not q:index")))?;
    let q = q.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad modulus in {s:?}")))?;
    let i = i.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad index in {s:?}")))?;
    Ok((q, i))
}

pub fn character_by_address(s: &str) -> Result<DirichletCharacter> {
    let (q, i) = parse_address(s)?;
    CharacterGroup::new(q)?.character(i)
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }
    pub fn index(&self) -> usize {
        self.index
    }
    pub fn conductor(&self) -> u64 {
        self.conductor
    }
    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }
    pub fn parity(&self) -> Parity {
        self.parity
    }
    pub fn is_odd(&self) -> bool {
        self.parity == Parity::Odd
    }
    pub fn order(&self) -> u64 {
        self.order
    }
    pub fn is_principal(&self) -> bool {
        self.index == 0
    }
    pub fn address(&self) -> String {
        format!("{}:{}", self.modulus, self.index)
    }

    /// χ(a), zero when gcd(a, q) > 1.
    pub fn value(&self, a: i64) -> Complex64 {
        let r = crate::arith::rem(a, self.modulus) as usize;
        match self.exps[r] {
            NONE => Complex64::new(0.0, 0.0),
            m => self.roots[m as usize],
        }
    }

    /// Exponent m with χ(a) = e(m/λ), or None off the unit group.
    pub fn exponent_of(&self, a: i64) -> Option<u64> {
        let r = crate::arith::rem(a, self.modulus) as usize;
        match self.exps[r] {
            NONE => None,
            m => Some(m as u64),
        }
    }

    /// λ, the exponent of the unit group.
    pub fn group_exponent(&self) -> u64 {
        self.exponent
    }

    pub fn conj_value(&self, a: i64) -> Complex64 {
        self.value(a).conj()
    }

    /// JSON export record.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "modulus": self.modulus,
            "index": self.index,
            "conductor": self.conductor,
            "parity": self.parity.as_str(),
            "order": self.order,
        })
    }
}
