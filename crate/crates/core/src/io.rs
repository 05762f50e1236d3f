//! JSON files for elliptic and paramodular eigenforms.
//!
//! Exact integers are written as JSON numbers; readers also accept them as
//! decimal strings. Inexact values are written as strings holding the
//! shortest round-trip decimal, always with a decimal point or exponent so
//! they are never mistaken for exact data. Coefficient maps are keyed by the
//! decimal index and written in increasing numeric order.

use crate::gl2::{EllipticEigenform, QExpansion};
use crate::gsp4::{HeckeDatum, Packet, ParamodularEigenform, SkSource};
use crate::numeric::EulerFactor;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

fn data(msg: impl Into<String>) -> Error {
    Error::Data(msg.into())
}

/// Shortest round-trip text of a float, with a '.' or exponent.
pub fn float_text(x: f64) -> String {
    format!("{x:?}")
}

fn quote(s: &str) -> String {
    Value::String(s.to_string()).to_string()
}

pub fn write_gl2(f: &EllipticEigenform) -> String {
    let mut out = format!("{{\"type\":\"gl2\",\"weight\":{},\"coeffs\":{{", f.weight());
    for n in 1..=f.precision() {
        if n > 1 {
            out.push(',');
        }
        write!(out, "\"{n}\":{}", f.qexp().coeff(n)).unwrap();
    }
    out.push_str("}}");
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Scalar {
    Exact(BigInt),
    Float(f64),
}

impl Scalar {
    fn as_f64(&self) -> f64 {
        match self {
            Scalar::Exact(b) => crate::gl2::big_to_f64(b),
            Scalar::Float(x) => *x,
        }
    }
}

fn is_integer_text(s: &str) -> bool {
    let t = s.strip_prefix('-').unwrap_or(s);
    !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
}

fn scalar(v: &Value, what: &str) -> Result<Scalar> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return Err(data(format!("{what}: expected a number or numeric string"))),
    };
    if is_integer_text(&text) {
        return Ok(Scalar::Exact(text.parse().map_err(|_| data(format!("{what}: bad integer")))?));
    }
    text.parse::<f64>()
        .map(Scalar::Float)
        .map_err(|_| data(format!("{what}: cannot parse {text:?}")))
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| data(format!("missing field {key:?}")))
}

fn uint(obj: &Value, key: &str) -> Result<u64> {
    match scalar(field(obj, key)?, key)? {
        Scalar::Exact(b) => u64::try_from(b).map_err(|_| data(format!("{key}: not a nonnegative integer"))),
        Scalar::Float(_) => Err(data(format!("{key}: not an integer"))),
    }
}

fn check_type(obj: &Value, want: &str) -> Result<()> {
    match obj.get("type").and_then(Value::as_str) {
        Some(t) if t == want => Ok(()),
        Some(t) => Err(data(format!("expected a {want} file, found type {t:?}"))),
        None => Err(data("missing field \"type\"")),
    }
}

fn index_map(obj: &Value, key: &str) -> Result<BTreeMap<u64, Value>> {
    let m = field(obj, key)?.as_object().ok_or_else(|| data(format!("{key}: expected an object")))?;
    m.iter()
        .map(|(k, v)| {
            k.trim()
                .parse::<u64>()
                .map(|n| (n, v.clone()))
                .map_err(|_| data(format!("{key}: key {k:?} is not a decimal integer")))
        })
        .collect()
}

pub fn read_gl2(text: &str) -> Result<EllipticEigenform> {
    let obj: Value = serde_json::from_str(text).map_err(|e| data(format!("invalid JSON: {e}")))?;
    check_type(&obj, "gl2")?;
    let weight = u32::try_from(uint(&obj, "weight")?).map_err(|_| data("weight out of range"))?;
    let coeffs = index_map(&obj, "coeffs")?;
    let n = coeffs.keys().next_back().copied().unwrap_or(0) as usize;
    let mut a = vec![BigInt::from(0); n + 1];
    for (&i, v) in &coeffs {
        if i == 0 {
            return Err(data("coefficient index 0 is not stored"));
        }
        match scalar(v, "coefficient")? {
            Scalar::Exact(b) => a[i as usize] = b,
            Scalar::Float(_) => return Err(data(format!("coefficient {i} is not an integer"))),
        }
    }
    if coeffs.len() != n {
        let missing = (1..=n as u64).find(|i| !coeffs.contains_key(i)).unwrap_or(0);
        return Err(data(format!("coefficient {missing} missing")));
    }
    EllipticEigenform::from_qexp(QExpansion::new(weight, a))
}

fn scalar_text(exact: Option<&BigInt>, x: f64) -> String {
    match exact {
        Some(b) => b.to_string(),
        None => quote(&float_text(x)),
    }
}

fn factor_text(f: &EulerFactor) -> String {
    let parts: Vec<String> = f
        .coefficients()
        .iter()
        .map(|c| format!("[{},{}]", quote(&float_text(c.re)), quote(&float_text(c.im))))
        .collect();
    format!("[{}]", parts.join(","))
}

pub fn write_gsp4(f: &ParamodularEigenform) -> String {
    let mut out = format!(
        "{{\"type\":\"gsp4\",\"k\":{},\"j\":{},\"level\":{},\"packet\":\"{}\",\"hecke\":{{",
        f.k(),
        f.j(),
        f.level(),
        f.packet().as_str()
    );
    for (i, (p, d)) in f.hecke().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let (e1, e2) = match &d.exact {
            Some((a, b)) => (Some(a), Some(b)),
            None => (None, None),
        };
        write!(out, "\"{p}\":[{},{}]", scalar_text(e1, d.lambda), scalar_text(e2, d.lambda2)).unwrap();
    }
    out.push('}');
    if let Some(src) = f.sk_source() {
        let r = src.reference.clone().unwrap_or_else(|| format!("gl2 weight {}", src.weight));
        write!(out, ",\"sk_source\":{}", quote(&r)).unwrap();
    }
    for (key, map) in [("ramified_spin", f.ramified_spin()), ("ramified_std", f.ramified_std())] {
        if map.is_empty() {
            continue;
        }
        let items: Vec<String> = map.iter().map(|(p, e)| format!("\"{p}\":{}", factor_text(e))).collect();
        write!(out, ",\"{key}\":{{{}}}", items.join(",")).unwrap();
    }
    write!(out, ",\"good\":{}}}", f.is_good()).unwrap();
    out
}

fn read_factor(p: u64, v: &Value) -> Result<EulerFactor> {
    let arr = v.as_array().ok_or_else(|| data("local factor: expected a list"))?;
    let coeffs = arr
        .iter()
        .map(|c| {
            let pair = c.as_array().filter(|a| a.len() == 2).ok_or_else(|| data("local factor: expected [re, im]"))?;
            Ok(Complex64::new(scalar(&pair[0], "re")?.as_f64(), scalar(&pair[1], "im")?.as_f64()))
        })
        .collect::<Result<Vec<_>>>()?;
    EulerFactor::new(p, coeffs)
}

pub fn read_gsp4(text: &str) -> Result<ParamodularEigenform> {
    let obj: Value = serde_json::from_str(text).map_err(|e| data(format!("invalid JSON: {e}")))?;
    check_type(&obj, "gsp4")?;
    let k = u32::try_from(uint(&obj, "k")?).map_err(|_| data("k out of range"))?;
    let j = u32::try_from(uint(&obj, "j")?).map_err(|_| data("j out of range"))?;
    let level = uint(&obj, "level")?;
    let packet = match field(&obj, "packet")?.as_str() {
        Some("P") => Packet::P,
        Some("G") => Packet::G,
        _ => return Err(data("packet must be \"P\" or \"G\"")),
    };
    let mut hecke = BTreeMap::new();
    for (p, v) in index_map(&obj, "hecke")? {
        let pair = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| data(format!("hecke {p}: expected a pair")))?;
        let a = scalar(&pair[0], "hecke")?;
        let b = scalar(&pair[1], "hecke")?;
        let d = match (a, b) {
            (Scalar::Exact(a), Scalar::Exact(b)) => HeckeDatum::exact(a, b),
            (a, b) => HeckeDatum::new(a.as_f64(), b.as_f64()),
        };
        hecke.insert(p, d);
    }
    let sk_source = match obj.get("sk_source") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(SkSource { weight: 2 * k - 2, reference: Some(s.clone()) }),
        Some(_) => return Err(data("sk_source must be a string")),
    };
    let sk_source = sk_source.map(|s| match s.reference.as_deref() {
        Some(r) if r.starts_with("gl2 weight ") => SkSource { weight: s.weight, reference: None },
        _ => s,
    });
    let mut f = ParamodularEigenform::new(k, j, level, packet, hecke, sk_source)?;
    for key in ["ramified_spin", "ramified_std"] {
        if obj.get(key).is_none() {
            continue;
        }
        for (p, v) in index_map(&obj, key)? {
            let e = read_factor(p, &v)?;
            f = if key == "ramified_spin" { f.with_ramified_spin(e)? } else { f.with_ramified_std(e)? };
        }
    }
    if let Some(g) = obj.get("good") {
        f = f.with_good(g.as_bool().ok_or_else(|| data("good must be a boolean"))?);
    }
    Ok(f)
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| data(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| data(format!("{}: {e}", path.display())))
}

pub fn load_gl2(path: impl AsRef<Path>) -> Result<EllipticEigenform> {
    read_gl2(&read_file(path.as_ref())?)
}

pub fn save_gl2(path: impl AsRef<Path>, f: &EllipticEigenform) -> Result<()> {
    write_file(path.as_ref(), &write_gl2(f))
}

pub fn load_gsp4(path: impl AsRef<Path>) -> Result<ParamodularEigenform> {
    read_gsp4(&read_file(path.as_ref())?)
}

pub fn save_gsp4(path: impl AsRef<Path>, f: &ParamodularEigenform) -> Result<()> {
    write_file(path.as_ref(), &write_gsp4(f))
}
