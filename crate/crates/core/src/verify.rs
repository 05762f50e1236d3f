//! Self-check suites runnable from the command line.

use crate::analytic::{
    afe_gl2_central, partition_v, selberg_sum, sk_average, smoothed_value, AfeConfig, CutoffU, Gsp4Afe,
    DAMPING_SPAN,
};
use crate::arith::{gcd_i, primes_up_to};
use crate::characters::{
    characters_mod, dirichlet_l_special, gauss_sum, kloosterman, odd_twisted_gauss_identity,
    primitive_characters, primitive_orthogonality_sum,
};
use crate::gl2::{eigenform_one_dim, prime_eigenvalues_many};
use crate::gsp4::{
    hecke_from_satake, sk_lift, spin_factor_hecke, spin_factor_satake, std_multiset, SpinSatake,
};
use crate::numeric::{
    complete_homogeneous, exterior_square, lemma_z_bound, newton_power_from_h,
    symmetric_square, tensor_product, EigenvalueMultiset,
};
use crate::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    FiveTerm,
    Orthogonality,
    Afe,
    Selberg,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "identities" => Suite::Identities,
            "lemma34" | "five-term" => Suite::FiveTerm,
            "orthogonality" => Suite::Orthogonality,
            "afe" => Suite::Afe,
            "selberg" => Suite::Selberg,
            "all" => Suite::All,
            _ => return Err(Error::InvalidArgument(format!("unknown suite {s:?}"))),
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::FiveTerm => "lemma34",
            Suite::Orthogonality => "orthogonality",
            Suite::Afe => "afe",
            Suite::Selberg => "selberg",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Worst observed deviation (or count of violations).
    pub observed: f64,
    pub tolerance: f64,
}

impl Check {
    fn within(name: &str, observed: f64, tolerance: f64) -> Self {
        Check { name: name.into(), passed: observed <= tolerance, observed, tolerance }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "suite": self.suite.as_str(),
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "observed": c.observed,
                "tolerance": c.tolerance,
            })).collect::<Vec<_>>(),
        })
    }
}

const SEED: u64 = 0x5eed_2d4f;

pub fn run(suite: Suite) -> Result<Vec<SuiteReport>> {
    let one = |s: Suite, checks: Result<Vec<Check>>| checks.map(|c| SuiteReport { suite: s, checks: c });
    Ok(match suite {
        Suite::Identities => vec![one(suite, identities())?],
        Suite::FiveTerm => vec![one(suite, five_term())?],
        Suite::Orthogonality => vec![one(suite, orthogonality())?],
        Suite::Afe => vec![one(suite, afe())?],
        Suite::Selberg => vec![one(suite, selberg())?],
        Suite::All => {
            let mut out = Vec::new();
            for s in [Suite::Identities, Suite::FiveTerm, Suite::Orthogonality, Suite::Afe, Suite::Selberg] {
                out.extend(run(s)?);
            }
            out
        }
    })
}

fn unit(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen::<f64>() * 2.0 * PI)
}

fn random_satake(rng: &mut ChaCha8Rng, p: u64) -> Result<SpinSatake> {
    // mostly tempered, sometimes the non-tempered shape of a lift
    let alpha = if rng.gen_bool(0.25) { Complex64::new((p as f64).sqrt(), 0.0) } else { unit(rng) };
    SpinSatake::new(p, alpha, unit(rng))
}

fn multiset_gap(a: &EigenvalueMultiset, b: &EigenvalueMultiset) -> f64 {
    if a.approx_eq(b, 1e-9) {
        0.0
    } else {
        1.0
    }
}

fn identities() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut euler = 0f64;
    let mut ext = 0f64;
    let mut sym = 0f64;
    let mut case2 = 0f64;
    for _ in 0..1000 {
        let k = rng.gen_range(3..=20u32);
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let sp = random_satake(&mut rng, p)?;
        let (l1, l2) = hecke_from_satake(&sp, k);
        let a = spin_factor_satake(&sp);
        let b = spin_factor_hecke(l1, l2, k, p);
        euler = euler.max(a.max_distance(&b));

        let spin = sp.multiset();
        let std = std_multiset(&sp)?;
        let one = EigenvalueMultiset::from_real(p, &[1.0])?;
        ext += multiset_gap(&exterior_square(&spin), &one.union(&std));
        sym += multiset_gap(&symmetric_square(&spin), &exterior_square(&std));

        let s = EigenvalueMultiset::new(p, vec![unit(&mut rng), unit(&mut rng)])?;
        let t = EigenvalueMultiset::new(p, vec![unit(&mut rng), unit(&mut rng), unit(&mut rng)])?;
        let det_s = EigenvalueMultiset::new(p, vec![s.product()])?;
        let lhs = exterior_square(&s.union(&t));
        let rhs = det_s.union(&tensor_product(&s, &t)).union(&exterior_square(&t));
        case2 += multiset_gap(&lhs, &rhs);
        case2 += multiset_gap(&exterior_square(&t), &t.inverses().scale(t.product()));
    }
    let mut newton = 0f64;
    for _ in 0..2000 {
        let n = rng.gen_range(1..=6usize);
        let v: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
        let h = complete_homogeneous(&v, n);
        let p = newton_power_from_h(&h[1..])?;
        for (l, pl) in p.iter().enumerate() {
            let brute: Complex64 = v.iter().map(|x| x.powu(l as u32 + 1)).sum();
            newton = newton.max((pl - brute).norm() / brute.norm().max(1.0));
        }
    }
    Ok(vec![
        Check::within("spin factor from Satake = from Hecke", euler, 1e-9),
        Check::within("exterior square of spin = 1 + std (failures)", ext, 0.0),
        Check::within("symmetric square of spin = exterior square of std (failures)", sym, 0.0),
        Check::within("case II exterior-square decomposition (failures)", case2, 0.0),
        Check::within("Newton power sums from complete homogeneous", newton, 1e-10),
    ])
}

fn five_term() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 34);
    let mut violations = 0f64;
    for _ in 0..100_000 {
        let mut r = [1000f64.powf(rng.gen::<f64>()), 1000f64.powf(rng.gen::<f64>())];
        r.sort_by(|a, b| b.total_cmp(a));
        let z1 = Complex64::from_polar(r[0], rng.gen::<f64>() * 2.0 * PI);
        let z2 = Complex64::from_polar(r[1], rng.gen::<f64>() * 2.0 * PI);
        let z3 = Complex64::new(if rng.gen_bool(0.5) { 1.0 } else { -1.0 }, 0.0);
        let b = lemma_z_bound(&[z1, z2, z3, z2.inv(), z1.inv()])?;
        if !b.holds() {
            violations += 1.0;
        }
    }
    Ok(vec![Check::within("balanced 5-tuple inequality violations", violations, 0.0)])
}

fn orthogonality() -> Result<Vec<Check>> {
    let mut prim = 0f64;
    let mut odd = 0f64;
    for q in [5u64, 7, 11, 13] {
        for n in 1..=10i64 {
            for p in 1..=10i64 {
                if gcd_i(n * p, q as i64) != 1 {
                    continue;
                }
                let (l, r) = primitive_orthogonality_sum(q, n, p)?;
                prim = prim.max((l - r).norm());
                let (l, r) = odd_twisted_gauss_identity(q, n, p)?;
                odd = odd.max((l - r).norm());
            }
        }
    }
    let mut gauss = 0f64;
    for q in 1..=200u64 {
        for c in primitive_characters(q)? {
            gauss = gauss.max((gauss_sum(&c).norm() - (q as f64).sqrt()).abs());
        }
    }
    let mut weil = 0f64;
    for p in primes_up_to(500) {
        let s = kloosterman(1, 1, p).norm();
        weil = weil.max(s - 2.0 * (p as f64).sqrt());
    }
    let mut full = 0f64;
    for q in 1..=30u64 {
        let chars = characters_mod(q)?;
        for m in 1..=q as i64 {
            for n in 1..=q as i64 {
                if gcd_i(m * n, q as i64) != 1 {
                    continue;
                }
                let s: Complex64 = chars.iter().map(|c| c.value(m) * c.conj_value(n)).sum();
                let want = if m == n { chars.len() as f64 } else { 0.0 };
                full = full.max((s - want).norm());
            }
        }
    }
    Ok(vec![
        Check::within("primitive orthogonality identity", prim, 1e-8),
        Check::within("odd Gauss/Kloosterman identity", odd, 1e-8),
        Check::within("|τ(χ)| = √q for primitive χ, q ≤ 200", gauss, 1e-9),
        Check::within("Weil bound excess at primes ≤ 500", weil.max(0.0), 0.0),
        Check::within("full orthogonality, q ≤ 30", full, 1e-9),
    ])
}

fn afe() -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let mut pou = 0f64;
    for _ in 0..1000 {
        let x = 1e6f64.powf(rng.gen::<f64>());
        pou = pou.max((partition_v(x)?.values().sum::<f64>() - 1.0).abs());
    }
    let u = CutoffU::new(10.0).profile()?;
    let delta = eigenform_one_dim(12, (DAMPING_SPAN * 3200.0) as usize)?;
    let mut balance = 0f64;
    let mut oracle = 0f64;
    for q in [4u64, 5] {
        for chi in primitive_characters(q)?.into_iter().filter(|c| c.is_odd()) {
            let v1 = afe_gl2_central(&delta, &chi, 1.0)?.value;
            let v2 = afe_gl2_central(&delta, &chi, 2.0)?.value;
            balance = balance.max((v1 - v2).norm());
            let len = (DAMPING_SPAN * 3200.0) as usize;
            let s = delta.normalized_series(len)?;
            let c: Vec<Complex64> =
                (1..=len).map(|n| s.get(n) * chi.value(n as i64) / (n as f64).sqrt()).collect();
            let o = smoothed_value(&c, &[200.0, 400.0, 800.0, 1600.0, 3200.0])?;
            oracle = oracle.max((v1 - o).norm());
        }
    }
    let f18 = eigenform_one_dim(18, 12_000)?;
    let lift = sk_lift(&f18)?;
    let mut rel = 0f64;
    let mut even = 0f64;
    for q in 3..=13u64 {
        let chars = primitive_characters(q)?;
        if chars.is_empty() {
            continue;
        }
        let afe = Gsp4Afe::new(&lift, q, 1.0, &AfeConfig::default())?;
        for chi in chars {
            let v = afe.central(&chi)?.value;
            if chi.is_odd() {
                let w = dirichlet_l_special(&chi, 0)?
                    * dirichlet_l_special(&chi, 1)?
                    * afe_gl2_central(&f18, &chi, 1.0)?.value;
                rel = rel.max((v - w).norm() / w.norm());
            } else {
                even = even.max(v.norm());
            }
        }
    }
    let mut dual = 0f64;
    for q in [11u64, 13, 17] {
        for p in [2u64, 3, 5] {
            let r = sk_average(&delta, q, p, (q as f64).sqrt(), &AfeConfig::default())?;
            dual = dual.max((r.direct - r.decomposed).norm());
        }
    }
    Ok(vec![
        Check::within("partition of unity", pou, 1e-12),
        Check::within("|U(10^-3) - 1|, k = 10", (u.eval(1e-3) - 1.0).abs(), 1e-3),
        Check::within("|U(100)|, k = 10", u.eval(100.0).abs(), 1e-6),
        Check::within("GL2 balance X = 1 vs 2", balance, 1e-6),
        Check::within("GL2 vs smoothed series", oracle, 1e-4),
        Check::within("GSp4 vs factorization (relative, odd χ)", rel, 1e-3),
        Check::within("GSp4 even χ vanishing", even, 1e-4),
        Check::within("first-moment dual path", dual, 1e-6),
    ])
}

fn selberg() -> Result<Vec<Check>> {
    let x_max = 1_000_000usize;
    let maps: Vec<BTreeMap<u64, f64>> = prime_eigenvalues_many(&[12, 16, 18], x_max)?
        .into_iter()
        .map(|v| v.into_iter().collect())
        .collect();
    let none = BTreeSet::new();
    let mut diag = 0f64;
    let mut off = 0f64;
    let mut x = 1000f64;
    while x <= x_max as f64 {
        for m in &maps {
            let s = selberg_sum(m, m, x, &none)?;
            diag = diag.max((s.value - s.loglog).abs());
        }
        off = off.max(selberg_sum(&maps[0], &maps[1], x, &none)?.value.abs());
        x *= 2.0;
    }
    Ok(vec![
        Check::within("|diagonal Selberg sum - log log x|", diag, 2.0),
        Check::within("|off-diagonal Selberg sum|", off, 2.0),
    ])
}
