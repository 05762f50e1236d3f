//! Acceptance run: one PASS/FAIL line per criterion, with timing.
//!
//! Each check recomputes its reference values here, independently of the
//! library path it is checking (brute-force symmetric expansions, naive
//! q-products, exact rationals, characters built from a primitive root).

use gsp4lfun::analytic::{
    afe_gl2_central, cutoff_u, partition_v, selberg_sum, sk_average, smoothed_value, AfeConfig, CutoffU, Gsp4Afe,
    DAMPING_SPAN,
};
use gsp4lfun::characters::{
    dirichlet_l_special, gauss_sum, kloosterman, odd_twisted_gauss_identity, primitive_characters,
    primitive_orthogonality_sum, DirichletCharacter,
};
use gsp4lfun::gl2::{eigenform_one_dim, prime_eigenvalues_many};
use gsp4lfun::gsp4::{
    classify_packet, hecke_from_satake, satake_from_hecke, sk_lift, sk_std_eigenvalue_exact, spin_coeffs,
    spin_factor_hecke, spin_factor_satake, std_multiset, synthesize_g_form, ClassifyOptions, SpinSatake, Verdict,
};
use gsp4lfun::numeric::{
    complete_homogeneous, elementary_symmetric, exterior_square, lemma_z_bound, newton_power_from_h, power_sum,
    symmetric_square, tensor_product, EigenvalueMultiset,
};
use gsp4lfun::Complex64;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xacce_97 ^ tag)
}

fn unit(r: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, r.gen::<f64>() * 2.0 * PI)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ms(p: u64, v: Vec<Complex64>) -> EigenvalueMultiset {
    EigenvalueMultiset::new_unchecked(p, v)
}

/// Greedy nearest matching; returns the worst distance.
fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|u, v| u.1.total_cmp(&v.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

fn pairs(v: &[Complex64], diagonal: bool) -> Vec<Complex64> {
    let mut out = Vec::new();
    for i in 0..v.len() {
        for j in i..v.len() {
            if i != j || diagonal {
                out.push(v[i] * v[j]);
            }
        }
    }
    out
}

/// ∏(1 − r X) expanded naively.
fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut f = vec![c(1.0, 0.0)];
    for r in roots {
        let mut g = vec![c(0.0, 0.0); f.len() + 1];
        for (i, a) in f.iter().enumerate() {
            g[i] += a;
            g[i + 1] -= a * r;
        }
        f = g;
    }
    f
}

fn coeff_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let n = a.len().max(b.len());
    let get = |v: &[Complex64], i: usize| v.get(i).copied().unwrap_or(c(0.0, 0.0));
    (0..n).map(|i| (get(a, i) - get(b, i)).norm()).fold(0.0, f64::max)
}

fn random_spin(r: &mut ChaCha8Rng, p: u64) -> SpinSatake {
    let alpha = if r.gen_bool(0.3) { c((p as f64).sqrt(), 0.0) } else { unit(r) };
    SpinSatake::new(p, alpha, unit(r)).unwrap()
}

fn euler_equivalence() -> Outcome {
    let mut r = rng(1);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let k = r.gen_range(3..=20u32);
        let p = [2u64, 3, 5, 7][r.gen_range(0..4)];
        let sp = random_spin(&mut r, p);
        let (lp, lp2) = hecke_from_satake(&sp, k);
        // Hecke form of the factor, written out and normalised here
        let (pf, kf) = (p as f64, k as f64);
        let raw = [1.0, -lp, lp * lp - lp2 - pf.powf(2.0 * kf - 4.0), -lp * pf.powf(2.0 * kf - 3.0), pf.powf(4.0 * kf - 6.0)];
        let hecke_oracle: Vec<Complex64> =
            raw.iter().enumerate().map(|(i, &v)| c(v / pf.powf(i as f64 * (kf - 1.5)), 0.0)).collect();
        let root_oracle = poly_from_roots(&[sp.alpha, sp.alpha.inv(), sp.beta, sp.beta.inv()]);
        let via_hecke = spin_factor_hecke(lp, lp2, k, p);
        let via_satake = spin_factor_satake(&satake_from_hecke(lp, lp2, k, p));
        for d in [
            coeff_distance(via_hecke.coefficients(), via_satake.coefficients()),
            coeff_distance(via_hecke.coefficients(), &hecke_oracle),
            coeff_distance(via_satake.coefficients(), &root_oracle),
        ] {
            worst = worst.max(d);
        }
    }
    ensure(worst <= 1e-9, || format!("max coefficient gap {worst:.3e}"))?;
    Ok(format!("max coefficient gap {worst:.2e}"))
}

fn representation_identities() -> Outcome {
    let mut r = rng(2);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let p = [2u64, 3, 5, 7, 11][r.gen_range(0..5)];
        let sp = random_spin(&mut r, p);
        let spin = sp.multiset();
        let std = std_multiset(&sp).map_err(|e| e.to_string())?;
        let (a, b) = (sp.alpha, sp.beta);
        let std_oracle = [c(1.0, 0.0), a * b, a / b, b / a, (a * b).inv()];
        let l2 = exterior_square(&spin);
        let mut with_one = std_oracle.to_vec();
        with_one.push(c(1.0, 0.0));
        worst = worst.max(multiset_distance(l2.values(), &pairs(spin.values(), false)));
        worst = worst.max(multiset_distance(l2.values(), &with_one));
        worst = worst.max(multiset_distance(std.values(), &std_oracle));
        if l2.multiplicity(c(1.0, 0.0), 1e-9) < 2 {
            return Err(format!("Λ² of {spin:?} lacks a double 1"));
        }
        let s2 = symmetric_square(&spin);
        worst = worst.max(multiset_distance(s2.values(), &pairs(spin.values(), true)));
        worst = worst.max(multiset_distance(s2.values(), &pairs(&std_oracle, false)));
        worst = worst.max(multiset_distance(s2.values(), exterior_square(&std).values()));

        let s = vec![unit(&mut r) * r.gen_range(0.5..2.0), unit(&mut r) * r.gen_range(0.5..2.0)];
        let t: Vec<Complex64> = (0..3).map(|_| unit(&mut r) * r.gen_range(0.5..2.0)).collect();
        let (sm, tm) = (ms(p, s.clone()), ms(p, t.clone()));
        let lhs = exterior_square(&sm.union(&tm));
        let mut rhs = vec![s[0] * s[1]];
        rhs.extend(s.iter().flat_map(|x| t.iter().map(move |y| x * y)));
        rhs.extend(pairs(&t, false));
        worst = worst.max(multiset_distance(lhs.values(), &rhs));
        let st: Vec<Complex64> = s.iter().flat_map(|x| t.iter().map(move |y| x * y)).collect();
        worst = worst.max(multiset_distance(tensor_product(&sm, &tm).values(), &st));
        let det_t = t[0] * t[1] * t[2];
        let inv: Vec<Complex64> = t.iter().map(|x| det_t / x).collect();
        worst = worst.max(multiset_distance(exterior_square(&tm).values(), &inv));
    }
    ensure(worst <= 1e-9, || format!("max multiset gap {worst:.3e}"))?;
    Ok(format!("max multiset gap {worst:.2e}"))
}

/// a(1..=n) of Δ·E₄^a·E₆^b by naive products in i128.
fn naive_cusp_form(weight: u32, n: usize) -> Vec<i128> {
    let mut f = vec![0i128; n];
    f[0] = 1;
    for m in 1..n {
        for _ in 0..24 {
            for i in (m..n).rev() {
                f[i] -= f[i - m];
            }
        }
    }
    let sigma = |k: u32, m: usize| (1..=m).filter(|d| m % d == 0).map(|d| (d as i128).pow(k)).sum::<i128>();
    let mut mul = |g: Vec<i128>| {
        let mut out = vec![0i128; n];
        for i in 0..n {
            for j in 0..=i {
                out[i] += f[j] * g[i - j];
            }
        }
        f = out;
    };
    let (a, b) = match weight {
        12 => (0, 0),
        16 => (1, 0),
        18 => (0, 1),
        22 => (1, 1),
        _ => unreachable!(),
    };
    for _ in 0..a {
        mul((0..n).map(|m| if m == 0 { 1 } else { 240 * sigma(3, m) }).collect());
    }
    for _ in 0..b {
        mul((0..n).map(|m| if m == 0 { 1 } else { -504 * sigma(5, m) }).collect());
    }
    // f[i] is a(i + 1)
    f
}

fn sk_exactness() -> Outcome {
    let f = eigenform_one_dim(18, 10_000).map_err(|e| e.to_string())?;
    let naive = naive_cusp_form(18, 40);
    for n in 1..=40 {
        ensure(f.coefficient(n).unwrap() == &BigInt::from(naive[n - 1]), || format!("a({n}) differs from the naive product"))?;
    }
    let lift = sk_lift(&f).map_err(|e| e.to_string())?;
    let k = lift.k() as i32;
    // Hecke eigenvalues from the Satake traces, in exact rationals:
    // A√p = p + 1 and B·p^{k−3/2} = a(p).
    let oracle = |p: i64| {
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        let pw = |e: i32| q(p).pow(e);
        let a = q(naive[p as usize - 1] as i64);
        let a_sqrt_p = q(p + 1);
        let l1 = pw(k - 2) * &a_sqrt_p + &a;
        let l2 = pw(2 * k - 4) * &a_sqrt_p * &a_sqrt_p + pw(k - 2) * &a_sqrt_p * &a + &a * &a
            - q(2) * pw(2 * k - 3)
            - pw(2 * k - 4);
        (l1, l2)
    };
    let (l1, l2) = oracle(2);
    let d2 = lift.hecke()[&2].exact.clone().ok_or("no exact data at 2")?;
    ensure(l1 == BigRational::from_integer(BigInt::from(240)) && l2 == BigRational::from_integer(BigInt::from(135424)), || {
        format!("oracle gives ({l1}, {l2})")
    })?;
    ensure(d2.0 == BigInt::from(240) && d2.1 == BigInt::from(135424), || format!("lift gives ({}, {})", d2.0, d2.1))?;
    for p in [3i64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let (l1, l2) = oracle(p);
        let d = lift.hecke()[&(p as u64)].exact.clone().unwrap();
        ensure(BigRational::from_integer(d.0.clone()) == l1 && BigRational::from_integer(d.1.clone()) == l2, || {
            format!("Hecke data at {p} differ from the rational oracle")
        })?;
    }

    // ζ(s − 1/2) ζ(s + 1/2) L(s, f) by direct convolution
    let n = 10_000usize;
    let half = 8.5f64;
    let lam: Vec<f64> = (1..=n).map(|m| f.coefficient(m).unwrap().to_string().parse::<f64>().unwrap() / (m as f64).powf(half)).collect();
    let mut zz = vec![0.0f64; n + 1];
    for d in 1..=n {
        for e in 1..=n / d {
            zz[d * e] += (d as f64).sqrt() / (e as f64).sqrt();
        }
    }
    let mut want = vec![0.0f64; n + 1];
    for d in 1..=n {
        for m in 1..=n / d {
            want[d * m] += zz[d] * lam[m - 1];
        }
    }
    let got = spin_coeffs(&lift, n).map_err(|e| e.to_string())?;
    let worst = (1..=n).map(|m| (got.get(m) - want[m]).norm()).fold(0.0, f64::max);
    ensure(worst <= 1e-9, || format!("spin coefficients off by {worst:.3e}"))?;

    let b2 = sk_std_eigenvalue_exact(&BigInt::from(naive[1]), 2, lift.k());
    let want_b = BigRational::new(BigInt::from(-67), BigInt::from(32));
    ensure(b2 == want_b, || format!("b_F(2) = {b2}"))?;
    let b_oracle = BigRational::from_integer(BigInt::from(1)) + BigRational::new(BigInt::from(naive[1] * 3), BigInt::from(512));
    ensure(b_oracle == want_b, || format!("oracle b_F(2) = {b_oracle}"))?;
    let b_float = lift.std_eigenvalue(2).map_err(|e| e.to_string())?;
    ensure(b_float == -2.09375, || format!("float b_F(2) = {b_float}"))?;
    Ok(format!("λ(2)=240, λ(4)=135424, b(2)=-67/32, spin gap {worst:.2e}"))
}

fn newton_relations() -> Outcome {
    let mut r = rng(4);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let m = r.gen_range(1..=6usize);
        let v: Vec<Complex64> = (0..m).map(|_| unit(&mut r) * r.gen_range(0.3..1.5)).collect();
        let n = 6usize;
        // brute force: e_k over subsets, h_k over multisets of indices
        let mut e = vec![c(0.0, 0.0); m + 1];
        for mask in 0u32..(1 << m) {
            let prod = (0..m).filter(|i| mask >> i & 1 == 1).fold(c(1.0, 0.0), |acc, i| acc * v[i]);
            e[mask.count_ones() as usize] += prod;
        }
        let mut h = vec![c(0.0, 0.0); n + 1];
        h[0] = c(1.0, 0.0);
        fn walk(v: &[Complex64], start: usize, left: usize, acc: Complex64, out: &mut Complex64) {
            if left == 0 {
                *out += acc;
                return;
            }
            for i in start..v.len() {
                walk(v, i, left - 1, acc * v[i], out);
            }
        }
        for (k, hk) in h.iter_mut().enumerate().skip(1) {
            walk(&v, 0, k, c(1.0, 0.0), hk);
        }
        let p: Vec<Complex64> = (1..=n).map(|k| v.iter().map(|x| x.powu(k as u32)).sum()).collect();

        let lib_e = elementary_symmetric(&v);
        let lib_h = complete_homogeneous(&v, n);
        let lib_p = newton_power_from_h(&h[1..]).map_err(|e| e.to_string())?;
        let set = ms(2, v.clone());
        for k in 0..=m {
            worst = worst.max((lib_e[k] - e[k]).norm());
        }
        for k in 0..=n {
            worst = worst.max((lib_h[k] - h[k]).norm());
        }
        for k in 0..n {
            worst = worst.max((lib_p[k] - p[k]).norm());
            worst = worst.max((power_sum(&set, k as u32 + 1) - p[k]).norm());
        }
        // p₂ = 2h₂ − h₁², p₃ = 3h₃ − h₂p₁ − h₁p₂
        worst = worst.max((2.0 * h[2] - h[1] * h[1] - p[1]).norm());
        worst = worst.max((3.0 * h[3] - h[2] * p[0] - h[1] * p[1] - lib_p[2]).norm());
    }
    ensure(worst <= 1e-10, || format!("max gap {worst:.3e}"))?;
    Ok(format!("max gap {worst:.2e}"))
}

fn lemma_inequality() -> Outcome {
    let mut r = rng(5);
    let mut violations = 0usize;
    let mut tightest = f64::INFINITY;
    for _ in 0..100_000 {
        let mut radii = [10f64.powf(r.gen_range(0.0..3.0)), 10f64.powf(r.gen_range(0.0..3.0))];
        radii.sort_by(|a, b| b.total_cmp(a));
        let z1 = unit(&mut r) * radii[0];
        let z2 = unit(&mut r) * radii[1];
        let z3 = if r.gen_bool(0.5) { c(1.0, 0.0) } else { c(-1.0, 0.0) };
        let z = [z1, z2, z3, z2.inv(), z1.inv()];
        let b = lemma_z_bound(&z).map_err(|e| e.to_string())?;
        let lhs: f64 = z.iter().map(|x| x.norm()).sum();
        let s2: Complex64 = z.iter().map(|x| x * x).sum();
        let s1: Complex64 = z.iter().sum();
        let rhs = 2.0 * s2.norm().sqrt() + 2.0 * s1.norm() + 15.0;
        if (b.lhs - lhs).abs() > 1e-9 * lhs || (b.rhs - rhs).abs() > 1e-9 * rhs {
            return Err("library bound differs from direct evaluation".into());
        }
        if lhs > rhs {
            violations += 1;
        }
        tightest = tightest.min(rhs - lhs);
    }
    ensure(violations == 0, || format!("{violations} violations"))?;
    Ok(format!("0 violations, min slack {tightest:.3}"))
}

fn classifier() -> Outcome {
    let f = eigenform_one_dim(18, 10_000).map_err(|e| e.to_string())?;
    let lift = sk_lift(&f).map_err(|e| e.to_string())?;
    let opts = ClassifyOptions::default();
    let a = lift.spin_eigenvalues(10_000).map_err(|e| e.to_string())?;
    let rp = classify_packet(&a, &opts).map_err(|e| e.to_string())?;
    // every SK spin eigenvalue exceeds ½√p once λ̂ is bounded by 2
    let above = a.iter().filter(|(&p, v)| v.abs() > 0.5 * (p as f64).sqrt()).count();
    ensure(rp.verdict == Verdict::P, || format!("lift classified {}", rp.verdict.as_str()))?;
    let g = synthesize_g_form(17, 10, 10_000).map_err(|e| e.to_string())?;
    let b = g.spin_eigenvalues(10_000).map_err(|e| e.to_string())?;
    let rg = classify_packet(&b, &opts).map_err(|e| e.to_string())?;
    let over = b.iter().filter(|(&p, v)| v.abs() > 4.0 * (p as f64).powf(0.5 - 1.0 / 17.0)).count();
    ensure(rg.verdict == Verdict::G && over == 0, || {
        format!("synthetic form classified {} ({over} over the G bound)", rg.verdict.as_str())
    })?;
    Ok(format!("P: {above}/{} above ½√p; G: ρ_P = {:.4}", a.len(), rg.rho_p))
}

/// Characters of prime modulus q from a primitive root: χ_j(g^t) = e(jt/(q−1)).
struct PrimeChars {
    q: u64,
    log: Vec<usize>,
}

impl PrimeChars {
    fn new(q: u64) -> Self {
        let g = (2..q).find(|&g| (1..q - 1).all(|t| pow_mod(g, t, q) != 1)).unwrap();
        let mut log = vec![0usize; q as usize];
        let mut x = 1u64;
        for t in 0..q - 1 {
            log[x as usize] = t as usize;
            x = x * g % q;
        }
        PrimeChars { q, log }
    }

    fn value(&self, j: usize, a: i64) -> Complex64 {
        let a = a.rem_euclid(self.q as i64) as usize;
        if a == 0 {
            return c(0.0, 0.0);
        }
        let t = (j * self.log[a]) % (self.q as usize - 1);
        Complex64::from_polar(1.0, 2.0 * PI * t as f64 / (self.q - 1) as f64)
    }

    fn gauss(&self, j: usize) -> Complex64 {
        (1..self.q as i64).map(|a| self.value(j, a) * Complex64::from_polar(1.0, 2.0 * PI * a as f64 / self.q as f64)).sum()
    }
}

fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    (0..e).fold(1, |acc, _| acc * b % m)
}

fn naive_kloosterman(a: i64, b: i64, m: u64) -> Complex64 {
    let mut s = c(0.0, 0.0);
    for x in 1..m as i64 {
        if let Some(y) = (1..m as i64).find(|y| (x * y) % m as i64 == 1) {
            let arg = ((a * x + b * y).rem_euclid(m as i64)) as f64 / m as f64;
            s += Complex64::from_polar(1.0, 2.0 * PI * arg);
        }
    }
    if m == 1 {
        s = c(1.0, 0.0);
    }
    s
}

fn character_identities() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut cases = 0usize;
    for q in [5u64, 7, 11, 13] {
        let pc = PrimeChars::new(q);
        let qi = q as i64;
        for m in 1..=10i64 {
            for n in 1..=10i64 {
                if m % qi == 0 || n % qi == 0 {
                    continue;
                }
                let (lhs, rhs) = primitive_orthogonality_sum(q, m, n).map_err(|e| e.to_string())?;
                // primitive mod prime q means j ≠ 0
                let brute: Complex64 = (1..q as usize - 1).map(|j| pc.value(j, m) * pc.value(j, n).conj()).sum();
                let closed = if (m - n) % qi == 0 { q as f64 - 2.0 } else { -1.0 };
                for d in [(lhs - rhs).norm(), (lhs - brute).norm(), (rhs - closed).norm()] {
                    worst = worst.max(d);
                }
                cases += 1;
            }
        }
        for n in 1..=10i64 {
            for p in [2i64, 3, 5, 7] {
                if n % qi == 0 || p % qi == 0 {
                    continue;
                }
                let (lhs, rhs) = odd_twisted_gauss_identity(q, n, p).map_err(|e| e.to_string())?;
                let brute: Complex64 = (1..q as usize - 1)
                    .filter(|j| j % 2 == 1)
                    .map(|j| {
                        let t = pc.gauss(j);
                        pc.value(j, n).conj() * pc.value(j, p).conj() * t * t
                    })
                    .sum();
                // divisors of a prime: d = 1 (μ(q) = −1) and d = q
                let np = n * p;
                let k_rhs = 0.5
                    * ((q - 1) as f64 * (naive_kloosterman(1, np, q) - naive_kloosterman(1, -np, q))
                        - (naive_kloosterman(0, np, 1) - naive_kloosterman(0, -np, 1)));
                for d in [(lhs - rhs).norm(), (lhs - brute).norm(), (rhs - k_rhs).norm()] {
                    worst = worst.max(d);
                }
                cases += 1;
            }
        }
    }
    ensure(worst <= 1e-8, || format!("max gap {worst:.3e}"))?;
    Ok(format!("{cases} cases, max gap {worst:.2e}"))
}

fn gauss_kloosterman_sanity() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0usize;
    for q in 1..=200u64 {
        for chi in primitive_characters(q).map_err(|e| e.to_string())? {
            worst = worst.max((gauss_sum(&chi).norm() - (q as f64).sqrt()).abs());
            count += 1;
        }
    }
    ensure(worst <= 1e-9, || format!("||τ| − √q| up to {worst:.3e}"))?;
    let mut weil_ratio: f64 = 0.0;
    let mut sums = 0usize;
    for p in (2..=500u64).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)) {
        // S(a, b; p) depends on ab mod p when p ∤ a
        for b in 1..p as i64 {
            let s = kloosterman(1, b, p);
            weil_ratio = weil_ratio.max(s.norm() / (2.0 * (p as f64).sqrt()));
            sums += 1;
        }
        let ramanujan = kloosterman(1, 0, p);
        ensure((ramanujan + 1.0).norm() < 1e-9, || format!("S(1, 0; {p}) = {ramanujan}"))?;
        if p < 60 {
            for b in [1i64, 2, p as i64 - 1] {
                let d = (kloosterman(3, b, p) - naive_kloosterman(3, b, p)).norm();
                ensure(d < 1e-9, || format!("S(3, {b}; {p}) off by {d:.3e}"))?;
            }
        }
    }
    ensure(weil_ratio <= 1.0 + 1e-9, || format!("Weil ratio {weil_ratio}"))?;
    Ok(format!("{count} Gauss sums (gap {worst:.1e}); {sums} Kloosterman sums, max |S|/2√p = {weil_ratio:.4}"))
}

fn odd(q: u64) -> Vec<DirichletCharacter> {
    primitive_characters(q).unwrap().into_iter().filter(|c| c.is_odd()).collect()
}

fn analytic_toolkit() -> Outcome {
    let mut r = rng(9);
    let mut pu: f64 = 0.0;
    for _ in 0..1000 {
        let x = 10f64.powf(r.gen_range(0.0..6.0));
        let w = partition_v(x).map_err(|e| e.to_string())?;
        pu = pu.max((w.values().sum::<f64>() - 1.0).abs());
    }
    ensure(pu <= 1e-12, || format!("partition of unity off by {pu:.3e}"))?;
    let u = CutoffU::new(10.0);
    let u_small = cutoff_u(1e-3, &u).map_err(|e| e.to_string())?;
    let u_big = cutoff_u(100.0, &u).map_err(|e| e.to_string())?;
    ensure((u_small - 1.0).abs() <= 1e-3, || format!("U(1e-3) = {u_small}"))?;
    ensure(u_big.abs() <= 1e-6, || format!("U(100) = {u_big:e}"))?;

    let delta = eigenform_one_dim(12, DAMPING_SPAN as usize * 3200).map_err(|e| e.to_string())?;
    let ys = [200.0, 400.0, 800.0, 1600.0, 3200.0];
    let len = DAMPING_SPAN as usize * 3200;
    let s = delta.normalized_series(len).map_err(|e| e.to_string())?;
    let (mut stab, mut orc): (f64, f64) = (0.0, 0.0);
    for q in [4u64, 5] {
        for chi in odd(q) {
            let v1 = afe_gl2_central(&delta, &chi, 1.0).map_err(|e| e.to_string())?.value;
            let v2 = afe_gl2_central(&delta, &chi, 2.0).map_err(|e| e.to_string())?.value;
            stab = stab.max((v1 - v2).norm());
            let coeffs: Vec<Complex64> = (1..=len).map(|n| s.get(n) * chi.value(n as i64) / (n as f64).sqrt()).collect();
            let o = smoothed_value(&coeffs, &ys).map_err(|e| e.to_string())?;
            orc = orc.max((v1 - o).norm());
        }
    }
    ensure(stab <= 1e-6, || format!("X-stability {stab:.3e}"))?;
    ensure(orc <= 1e-4, || format!("oracle gap {orc:.3e}"))?;
    Ok(format!("unity {pu:.1e}, U(1e-3)-1 = {:.1e}, U(100) = {u_big:.1e}, X-gap {stab:.1e}, oracle gap {orc:.1e}", u_small - 1.0))
}

fn gsp4_factorization() -> Outcome {
    let (mut rel, mut even_abs, mut odd_zero): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let (mut n_odd, mut n_zero) = (0, 0);
    for w in [18u32, 22] {
        let f = eigenform_one_dim(w, 20_000).map_err(|e| e.to_string())?;
        let lift = sk_lift(&f).map_err(|e| e.to_string())?;
        for q in 3..=13u64 {
            let chars = primitive_characters(q).map_err(|e| e.to_string())?;
            if chars.is_empty() {
                continue;
            }
            let afe = Gsp4Afe::new(&lift, q, 1.0, &AfeConfig::default()).map_err(|e| e.to_string())?;
            for chi in &chars {
                let v = afe.central(chi).map_err(|e| e.to_string())?.value;
                if chi.is_odd() {
                    // L(1/2, F × χ) = L(1, χ) L(0, χ) L(1/2, f × χ)
                    let l1 = dirichlet_l_special(chi, 1).map_err(|e| e.to_string())?;
                    let l0 = dirichlet_l_special(chi, 0).map_err(|e| e.to_string())?;
                    let lf = afe_gl2_central(&f, chi, 1.0).map_err(|e| e.to_string())?.value;
                    let want = l1 * l0 * lf;
                    let err = (v - want).norm() / want.norm().max(1e-300);
                    if want.norm() > 1e-8 {
                        rel = rel.max(err);
                        n_odd += 1;
                    } else {
                        // root number −1 on the elliptic side
                        odd_zero = odd_zero.max(v.norm());
                        n_zero += 1;
                    }
                } else {
                    even_abs = even_abs.max(v.norm());
                }
            }
        }
    }
    ensure(rel <= 1e-3, || format!("odd relative gap {rel:.3e}"))?;
    ensure(even_abs <= 1e-4, || format!("even |L| up to {even_abs:.3e}"))?;
    ensure(odd_zero <= 1e-8, || format!("odd twist with vanishing factor has |L| = {odd_zero:.3e}"))?;
    Ok(format!("{n_odd} odd twists, relative gap {rel:.1e}; {n_zero} forced zeros; even |L| ≤ {even_abs:.1e}"))
}

fn first_moment_dual_path() -> Outcome {
    let delta = eigenform_one_dim(12, 60_000).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for q in [11u64, 13, 17] {
        for p in [2u64, 3, 5] {
            let r = sk_average(&delta, q, p, (q as f64).sqrt(), &AfeConfig::default()).map_err(|e| e.to_string())?;
            worst = worst.max((r.direct - r.decomposed).norm());
        }
    }
    ensure(worst <= 1e-6, || format!("max gap {worst:.3e}"))?;
    Ok(format!("9 cells, max |direct − decomposed| = {worst:.2e}"))
}

fn selberg_sums() -> Outcome {
    let x_max = 1_000_000usize;
    let data = prime_eigenvalues_many(&[12, 16, 18], x_max).map_err(|e| e.to_string())?;
    // spot check against naive q-products
    for (i, w) in [12u32, 16, 18].into_iter().enumerate() {
        let naive = naive_cusp_form(w, 200);
        for &(p, v) in data[i].iter().take_while(|(p, _)| *p < 200) {
            let want = naive[p as usize - 1] as f64 / (p as f64).powf((w as f64 - 1.0) / 2.0);
            ensure((v - want).abs() < 1e-12, || format!("weight {w}, p = {p}: {v} vs {want}"))?;
        }
    }
    let maps: Vec<BTreeMap<u64, f64>> = data.into_iter().map(|v| v.into_iter().collect()).collect();
    let none = BTreeSet::new();
    let mut xs: Vec<f64> = (0..).map(|j| 1e3 * 2f64.powi(j)).take_while(|&x| x <= 1e6).collect();
    xs.push(1e6);
    let (mut diag, mut off): (f64, f64) = (0.0, 0.0);
    for &x in &xs {
        for m in &maps {
            let s = selberg_sum(m, m, x, &none).map_err(|e| e.to_string())?;
            diag = diag.max((s.value - s.loglog).abs());
        }
        let s = selberg_sum(&maps[0], &maps[1], x, &none).map_err(|e| e.to_string())?;
        off = off.max(s.value.abs());
    }
    ensure(diag <= 2.0, || format!("diagonal deviation {diag:.3}"))?;
    ensure(off <= 2.0, || format!("off-diagonal {off:.3}"))?;
    Ok(format!("{} dyadic x; max |S(f,f) − loglog x| = {diag:.3}, max |S(Δ,f16)| = {off:.3}", xs.len()))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    // cargo passes harness flags; filtering is not supported
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "Euler-factor equivalence", limit: secs(1), run: euler_equivalence },
        Criterion { id: 2, name: "representation identities", limit: secs(1), run: representation_identities },
        Criterion { id: 3, name: "SK lift exactness", limit: secs(10), run: sk_exactness },
        Criterion { id: 4, name: "Newton relations", limit: secs(5), run: newton_relations },
        Criterion { id: 5, name: "five-term inequality", limit: secs(5), run: lemma_inequality },
        Criterion { id: 6, name: "packet classifier", limit: secs(30), run: classifier },
        Criterion { id: 7, name: "character identities", limit: secs(10), run: character_identities },
        Criterion { id: 8, name: "Gauss/Kloosterman sanity", limit: secs(30), run: gauss_kloosterman_sanity },
        Criterion { id: 9, name: "analytic toolkit", limit: secs(60), run: analytic_toolkit },
        Criterion { id: 10, name: "GSp4 AFE vs factorization", limit: secs(120), run: gsp4_factorization },
        Criterion { id: 11, name: "first-moment dual path", limit: secs(120), run: first_moment_dual_path },
        Criterion { id: 12, name: "Selberg sums", limit: secs(60), run: selberg_sums },
    ];
    let mut failed = 0;
    for cr in &criteria {
        let t = Instant::now();
        let out = (cr.run)();
        let dt = t.elapsed();
        let (ok, detail) = match out {
            Ok(d) if dt <= cr.limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:>2} {:<28} {:>8.2}s / {:>3}s  {}",
            if ok { "PASS" } else { "FAIL" },
            cr.id,
            cr.name,
            dt.as_secs_f64(),
            cr.limit.as_secs(),
            detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
