//! Number-theoretic transforms over word-sized primes and Chinese
//! remaindering into exact integers.
//!
//! Each prime is of the form c·2^e + 1 with e ≥ 22, so transforms of length
//! up to 2^22 exist for every modulus. Arithmetic uses 32-bit Montgomery
//! representation.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// NTT-friendly primes below 2^31, each admitting a 2^22-th root of unity.
pub const NTT_PRIMES: [u32; 12] = [
    2013265921, 1811939329, 2113929217, 1711276033, 1107296257, 1224736769, 998244353,
    985661441, 943718401, 754974721, 469762049, 167772161,
];

/// Largest supported transform length.
pub const MAX_LOG_LEN: u32 = 22;

#[derive(Clone, Debug)]
pub struct Modulus {
    pub p: u32,
    n_prime: u32,
    r2: u32,
    generator: u32,
}

impl Modulus {
    pub fn new(p: u32) -> Self {
        assert!(p % 2 == 1 && p < (1 << 31));
        // Newton iteration for p^{-1} mod 2^32.
        let mut inv: u32 = 1;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u32.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r2 = (((1u128 << 64) % p as u128) as u64) as u32;
        let generator = find_generator(p as u64) as u32;
        Modulus { p, n_prime: inv.wrapping_neg(), r2, generator }
    }

    #[inline(always)]
    fn reduce(&self, t: u64) -> u32 {
        let m = (t as u32).wrapping_mul(self.n_prime);
        let u = (t.wrapping_add((m as u64).wrapping_mul(self.p as u64)) >> 32) as u32;
        if u >= self.p {
            u.wrapping_sub(self.p)
        } else {
            u
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce((a as u64).wrapping_mul(b as u64))
    }

    #[inline(always)]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a.wrapping_add(b);
        if s >= self.p {
            s.wrapping_sub(self.p)
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a.wrapping_sub(b)
        } else {
            a.wrapping_add(self.p).wrapping_sub(b)
        }
    }

    pub fn to_mont(&self, a: u32) -> u32 {
        self.mul(a % self.p, self.r2)
    }

    pub fn from_mont(&self, a: u32) -> u32 {
        self.reduce(a as u64)
    }

    /// Signed integer into Montgomery form.
    pub fn from_i128(&self, a: i128) -> u32 {
        self.to_mont(a.rem_euclid(self.p as i128) as u32)
    }

    pub fn pow(&self, mut b: u32, mut e: u64) -> u32 {
        let mut r = self.to_mont(1);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// In-place transform of Montgomery-form data; length a power of two.
    pub fn transform(&self, a: &mut [u32], inverse: bool) {
        let n = a.len();
        assert!(n.is_power_of_two() && n.trailing_zeros() <= MAX_LOG_LEN);
        if n == 1 {
            return;
        }
        let bits = n.trailing_zeros();
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if i < j {
                a.swap(i, j);
            }
        }
        // twiddles of every stage, stage with half-length h at offset h − 1
        let g = self.to_mont(self.generator);
        let mut tw = vec![0u32; n - 1];
        let mut half = 1;
        while half < n {
            let mut w = self.pow(g, (self.p as u64 - 1) / (2 * half) as u64);
            if inverse {
                w = self.pow(w, self.p as u64 - 2);
            }
            let stage = &mut tw[half - 1..2 * half - 1];
            stage[0] = self.to_mont(1);
            for j in 1..half {
                stage[j] = self.mul(stage[j - 1], w);
            }
            half <<= 1;
        }
        let mut half = 1;
        while half < n {
            let stage = &tw[half - 1..2 * half - 1];
            for chunk in a.chunks_exact_mut(2 * half) {
                let (lo, hi) = chunk.split_at_mut(half);
                for ((x, y), &t) in lo.iter_mut().zip(hi.iter_mut()).zip(stage) {
                    let u = *x;
                    let v = self.mul(*y, t);
                    *x = self.add(u, v);
                    *y = self.sub(u, v);
                }
            }
            half <<= 1;
        }
        if inverse {
            let n_inv = self.pow(self.to_mont(n as u32), self.p as u64 - 2);
            for x in a.iter_mut() {
                *x = self.mul(*x, n_inv);
            }
        }
    }

    /// Product of two Montgomery-form sequences, truncated to `len` terms.
    pub fn multiply(&self, a: &[u32], b: &[u32], len: usize) -> Vec<u32> {
        let a = &a[..a.len().min(len)];
        let b = &b[..b.len().min(len)];
        if a.is_empty() || b.is_empty() {
            return vec![0; len];
        }
        let full = a.len() + b.len() - 1;
        if a.len().min(b.len()) <= 32 {
            return self.multiply_naive(a, b, len);
        }
        let size = full.next_power_of_two();
        let mut fa = a.to_vec();
        fa.resize(size, 0);
        let mut fb = b.to_vec();
        fb.resize(size, 0);
        self.transform(&mut fa, false);
        self.transform(&mut fb, false);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x = self.mul(*x, *y);
        }
        self.transform(&mut fa, true);
        fa.resize(len, 0);
        fa
    }

    pub fn square(&self, a: &[u32], len: usize) -> Vec<u32> {
        let a = &a[..a.len().min(len)];
        if a.len() <= 32 {
            return self.multiply_naive(a, a, len);
        }
        let size = (2 * a.len() - 1).next_power_of_two();
        let mut fa = a.to_vec();
        fa.resize(size, 0);
        self.transform(&mut fa, false);
        for x in fa.iter_mut() {
            *x = self.mul(*x, *x);
        }
        self.transform(&mut fa, true);
        fa.resize(len, 0);
        fa
    }

    fn multiply_naive(&self, a: &[u32], b: &[u32], len: usize) -> Vec<u32> {
        let mut out = vec![0u32; len];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        out
    }
}

fn find_generator(p: u64) -> u64 {
    let fs: Vec<u64> = crate::arith::factorize(p - 1).into_iter().map(|(q, _)| q).collect();
    (2..p)
        .find(|&g| fs.iter().all(|&q| crate::arith::pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime field has a generator")
}

/// Chinese-remainder basis for signed integers with a bounded magnitude,
/// plus one spare modulus used purely as a consistency check.
#[derive(Clone, Debug)]
pub struct CrtBasis {
    moduli: Vec<u64>,
    check: u64,
    // inv[i] = (m_0 … m_{i-1})^{-1} mod m_i
    inv: Vec<u64>,
    half_digits: Vec<u64>,
    product: BigInt,
}

impl CrtBasis {
    /// Smallest basis from [`NTT_PRIMES`] representing every integer of
    /// absolute value below 2^bits.
    pub fn for_bits(bits: f64) -> Result<Self> {
        let mut acc = 0.0;
        let mut count = 0;
        while acc < bits + 2.0 {
            if count >= NTT_PRIMES.len() - 1 {
                return Err(Error::InvalidArgument(format!(
                    "coefficient bound of {bits:.0} bits exceeds the modular basis"
                )));
            }
            acc += (NTT_PRIMES[count] as f64).log2();
            count += 1;
        }
        Ok(Self::from_primes(&NTT_PRIMES[..count], NTT_PRIMES[count]))
    }

    pub fn from_primes(primes: &[u32], check: u32) -> Self {
        let moduli: Vec<u64> = primes.iter().map(|&p| p as u64).collect();
        let mut inv = Vec::with_capacity(moduli.len());
        for (i, &m) in moduli.iter().enumerate() {
            let prefix = moduli[..i].iter().fold(1u64, |acc, &x| acc * (x % m) % m);
            inv.push(crate::arith::inv_mod(prefix, m).expect("distinct primes"));
        }
        let product: BigInt = moduli.iter().fold(BigInt::one(), |acc, &m| acc * m);
        let half: BigInt = (&product - 1) / 2;
        let mut half_digits = Vec::with_capacity(moduli.len());
        let mut h = half;
        for &m in &moduli {
            let d = (&h % m).to_u64().unwrap();
            half_digits.push(d);
            h /= m;
        }
        CrtBasis { moduli, check: check as u64, inv, half_digits, product }
    }

    /// Moduli used for reconstruction.
    pub fn moduli(&self) -> Vec<u32> {
        self.moduli.iter().map(|&m| m as u32).collect()
    }

    /// The spare verification modulus.
    pub fn check_modulus(&self) -> u32 {
        self.check as u32
    }

    fn digits(&self, residues: &[u32]) -> Vec<u64> {
        let k = self.moduli.len();
        let mut d = vec![0u64; k];
        for i in 0..k {
            let m = self.moduli[i];
            // value of the partial reconstruction modulo m_i
            let mut acc = 0u64;
            let mut scale = 1u64;
            for j in 0..i {
                acc = (acc + d[j] * scale) % m;
                scale = scale * (self.moduli[j] % m) % m;
            }
            let r = residues[i] as u64 % m;
            d[i] = (r + m - acc) % m * self.inv[i] % m;
        }
        d
    }

    fn is_negative(&self, digits: &[u64]) -> bool {
        for i in (0..digits.len()).rev() {
            if digits[i] != self.half_digits[i] {
                return digits[i] > self.half_digits[i];
            }
        }
        false
    }

    /// Residue of the reconstructed signed value modulo `m`.
    fn value_mod(&self, digits: &[u64], m: u64) -> u64 {
        let mut acc = 0u64;
        for i in (0..digits.len()).rev() {
            acc = (acc * (self.moduli[i] % m) + digits[i] % m) % m;
        }
        if self.is_negative(digits) {
            let pm = self.moduli.iter().fold(1u64, |a, &x| a * (x % m) % m);
            acc = (acc + m - pm) % m;
        }
        acc
    }

    /// Reconstruct, confirming the result against the spare residue.
    pub fn reconstruct(&self, residues: &[u32], check_residue: u32) -> Option<BigInt> {
        let digits = self.digits(residues);
        if self.value_mod(&digits, self.check) != check_residue as u64 {
            return None;
        }
        let mut x = BigInt::zero();
        for i in (0..digits.len()).rev() {
            x = x * self.moduli[i] + digits[i];
        }
        if self.is_negative(&digits) {
            x -= &self.product;
        }
        Some(x)
    }

    /// Check only; cheaper than full reconstruction.
    pub fn consistent(&self, residues: &[u32], check_residue: u32) -> bool {
        let digits = self.digits(residues);
        self.value_mod(&digits, self.check) == check_residue as u64
    }
}

/// Exact product of two integer sequences, truncated to `len` terms.
pub fn multiply_exact(a: &[BigInt], b: &[BigInt], len: usize) -> Result<Vec<BigInt>> {
    let bound = |v: &[BigInt]| v.iter().map(|x| x.abs().bits()).max().unwrap_or(0) as f64;
    let terms = a.len().min(b.len()).max(1) as f64;
    let bits = bound(a) + bound(b) + terms.log2() + 1.0;
    let basis = CrtBasis::for_bits(bits)?;
    let mut all = basis.moduli();
    all.push(basis.check_modulus());
    let rows: Vec<Vec<u32>> = crate::par::map_slice(&all, |&p| {
        let m = Modulus::new(p);
        let conv = |v: &[BigInt]| -> Vec<u32> {
            v.iter()
                .map(|x| {
                    let r = x % p;
                    let r = r.to_i64().unwrap();
                    m.from_i128(r as i128)
                })
                .collect()
        };
        let prod = m.multiply(&conv(a), &conv(b), len);
        prod.into_iter().map(|x| m.from_mont(x)).collect()
    });
    let k = all.len() - 1;
    (0..len)
        .map(|n| {
            let res: Vec<u32> = (0..k).map(|i| rows[i][n]).collect();
            basis.reconstruct(&res, rows[k][n]).ok_or(Error::Reconstruction(n))
        })
        .collect()
}
