use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gsp4lfun"));
    c.env_remove("GSP4LFUN_THREADS");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad report: {e}\n{}", String::from_utf8_lossy(&out.stdout)))
}

fn file(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn eigenform_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["eigenform", "gl2", "--weight", "18", "--coeffs", "200", "--out", "f18.json"]);
    assert_eq!(out.status.code(), Some(0));
    let f = file(dir.path(), "f18.json");
    assert_eq!(f["type"], "gl2");
    assert_eq!(f["coeffs"]["2"].to_string(), "-528");
    assert_eq!(f["coeffs"].as_object().unwrap().len(), 200);

    run(dir.path(), &["eigenform", "gl2", "--weight", "12", "--coeffs", "10", "--out", "d.json"]);
    assert_eq!(file(dir.path(), "d.json")["coeffs"]["2"].to_string(), "-24");

    let out = run(dir.path(), &["eigenform", "gl2", "--weight", "14", "--out", "x.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no cusp forms"));
    assert!(!dir.path().join("x.json").exists());
}

#[test]
fn lift_compare_classify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(d, &["eigenform", "gl2", "--weight", "18", "--coeffs", "10000", "--out", "f18.json"]);
    let out = run(d, &["sk-lift", "--from", "f18.json", "--out", "F10.json"]);
    assert_eq!(out.status.code(), Some(0));
    let lift = file(d, "F10.json");
    assert_eq!(lift["packet"], "P");
    assert_eq!(lift["hecke"]["2"][0].to_string(), "240");
    assert_eq!(lift["hecke"]["2"][1].to_string(), "135424");

    assert_eq!(run(d, &["synthesize", "--seed", "3", "--k", "10", "--out", "G.json"]).status.code(), Some(0));
    let r = report(&run(d, &["compare", "--a", "F10.json", "--b", "G.json", "--kind", "spin", "--primes", "10000"]));
    assert_eq!(r["result"]["verdict"], "distinct");
    assert_eq!(r["result"]["density"].as_f64(), Some(0.0));
    let r = report(&run(d, &["compare", "--a", "F10.json", "--b", "F10.json", "--kind", "hecke"]));
    assert_eq!(r["result"]["verdict"], "consistent-with-equal");

    let r = report(&run(d, &["classify", "--form", "F10.json"]));
    assert_eq!(r["result"]["verdict"], "P");
    let r = report(&run(d, &["classify", "--form", "G.json"]));
    assert_eq!(r["result"]["verdict"], "G");

    let r = report(&run(d, &["euler", "--form", "F10.json", "--prime", "2", "--kind", "std"]));
    assert_eq!(r["result"]["degree"].as_u64(), Some(5));
    let r = report(&run(d, &["coeffs", "--form", "F10.json", "--kind", "spin", "--n", "30"]));
    assert_eq!(r["result"]["coefficients"].as_object().unwrap().len(), 30);
}

#[test]
fn characters_and_central_values() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let r = report(&run(d, &["char", "--address", "5:2"]));
    let c = &r["result"];
    assert_eq!(c["parity"], "odd");
    assert_eq!(c["order"].as_u64(), Some(4));
    assert_eq!(c["conductor"].as_u64(), Some(5));
    let r = report(&run(d, &["char", "--modulus", "7"]));
    assert_eq!(r["result"]["count"].as_u64(), Some(6));
    assert_eq!(run(d, &["char", "--address", "5:9"]).status.code(), Some(2));

    run(d, &["eigenform", "gl2", "--weight", "12", "--coeffs", "2000", "--out", "d.json"]);
    let r = report(&run(d, &["central-value", "--form", "d.json", "--char", "4:1"]));
    let v = &r["result"]["central"]["value"];
    // L(1/2, Δ × χ₄) vanishes: the root number is −1
    assert!(v["re"].as_f64().unwrap().abs() < 1e-10);
    let r = report(&run(d, &["sk-average", "--form", "d.json", "--q", "11", "--p", "2"]));
    assert!(r["result"]["difference"].as_f64().unwrap() < 1e-6);
    // imprimitive character
    assert_eq!(run(d, &["central-value", "--form", "d.json", "--char", "4:0"]).status.code(), Some(2));
}

#[test]
fn first_moment_family_paths() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(d, &["eigenform", "gl2", "--weight", "18", "--coeffs", "5000", "--out", "f18.json"]);
    run(d, &["sk-lift", "--from", "f18.json", "--out", "F.json"]);
    let r = report(&run(d, &["first-moment", "--form", "F.json", "--p", "2", "--family", "5,7"]));
    let per = r["result"]["per_modulus"].as_array().unwrap();
    assert_eq!(per.len(), 2);
    let sum: f64 = per.iter().map(|v| v["value"]["re"].as_f64().unwrap()).sum();
    assert!((sum - r["result"]["total"]["re"].as_f64().unwrap()).abs() < 1e-12);

    let r = report(&run(d, &["first-moment", "--form", "F.json", "--p", "2", "--Q", "1e4"]));
    assert!(r["result"]["family"]["note"].as_str().unwrap().starts_with("family empty under defaults"));
    assert_eq!(r["result"]["total"]["re"].as_f64(), Some(0.0));

    let out = run(d, &["first-moment", "--form", "F.json", "--p", "5", "--family", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = run(d, &["verify", "--suite", "identities"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["passed"], true);
    assert_eq!(run(d, &["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(run(d, &["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(d, &["coeffs", "--form", "missing.json"]).status.code(), Some(3));
    std::fs::write(d.join("bad.json"), "{\"type\":\"gl2\",\"weight\":12,\"coeffs\":{\"1\":2}}").unwrap();
    assert_eq!(run(d, &["coeffs", "--form", "bad.json"]).status.code(), Some(3));
    std::fs::write(d.join("junk.json"), "not json").unwrap();
    assert_eq!(run(d, &["euler", "--form", "junk.json", "--prime", "2"]).status.code(), Some(3));
}

#[test]
fn reports_are_deterministic_across_threads() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(d, &["eigenform", "gl2", "--weight", "18", "--coeffs", "3000", "--out", "f18.json"]);
    run(d, &["sk-lift", "--from", "f18.json", "--out", "F.json"]);
    let args = ["central-value", "--form", "F.json", "--char", "7:3", "--x", "2"];
    let a = run(d, &args);
    let b = run(d, &args);
    assert_eq!(a.stdout, b.stdout);
    let c = bin().current_dir(d).args(args).env("GSP4LFUN_THREADS", "1").output().unwrap();
    let (ra, rc) = (report(&a), report(&c));
    assert_eq!(rc["manifest"]["threads"].as_u64(), Some(1));
    assert_eq!(ra["result"], rc["result"]);

    let out = run(d, &["--report", "r.json", "char", "--address", "5:2"]);
    assert!(out.stdout.is_empty());
    let r = file(d, "r.json");
    assert_eq!(r["manifest"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["manifest"]["command"]["char"]["address"], "5:2");
}
