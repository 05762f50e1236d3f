//! `gsp4lfun` command-line front end.
//!
//! Every command prints one JSON report to stdout (or to `--report`). The
//! report carries a manifest with the resolved parameters and the library
//! version, so identical invocations produce byte-identical output.

use clap::{Args, Parser, Subcommand, ValueEnum};
use gsp4lfun::analytic::{
    afe_gl2_central_with, afe_gsp4_central_with, compare_eigenforms, family_q, first_moment, sk_average,
    AfeConfig, CentralValue, CompareOptions, ComparisonKind, FamilyOverrides, FamilyParams, RootSign,
};
use gsp4lfun::characters::{character_by_address, characters_mod, gauss_sum};
use gsp4lfun::gl2::{eigenform_one_dim, gl2_euler_factor, EllipticEigenform};
use gsp4lfun::gsp4::{classify_packet, spin_coeffs, std_coeffs, synthesize_g_form, ClassifyOptions, ParamodularEigenform};
use gsp4lfun::numeric::{CoefficientSeries, EulerFactor};
use gsp4lfun::{io, verify, Complex64, Error};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser, Serialize)]
#[command(name = "gsp4lfun", version, about = "L-functions of paramodular Siegel eigenforms")]
struct Cli {
    /// Worker threads (falls back to GSP4LFUN_THREADS, then all cores).
    #[arg(long, global = true, env = "GSP4LFUN_THREADS")]
    threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Build an elliptic eigenform from exact q-expansions.
    Eigenform {
        #[command(subcommand)]
        kind: EigenformKind,
    },
    /// Saito–Kurokawa lift of an elliptic eigenform file.
    SkLift(SkLiftArgs),
    /// Dirichlet coefficients of the spin or standard L-function.
    Coeffs(CoeffsArgs),
    /// Local Euler factor at one prime.
    Euler(EulerArgs),
    /// Arthur packet classification from spin eigenvalues.
    Classify(ClassifyArgs),
    /// Compare two paramodular eigenforms prime by prime.
    Compare(CompareArgs),
    /// Dirichlet characters of a modulus, or one character by address.
    Char(CharArgs),
    /// Central value of a twist by a primitive character.
    CentralValue(CentralArgs),
    /// First moment over a family of moduli.
    FirstMoment(MomentArgs),
    /// Twisted average over odd characters of a prime modulus, two ways.
    SkAverage(SkAverageArgs),
    /// Run property suites; exits 1 on any failure.
    Verify(VerifyArgs),
    /// Deterministic synthetic type-G eigenform.
    Synthesize(SynthArgs),
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum EigenformKind {
    Gl2(Gl2Args),
}

#[derive(Args, Serialize)]
struct Gl2Args {
    #[arg(long)]
    weight: u32,
    /// Number of coefficients a(1..=N).
    #[arg(long, default_value_t = 10_000)]
    coeffs: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Serialize)]
struct SkLiftArgs {
    #[arg(long)]
    from: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum LKind {
    Spin,
    Std,
}

#[derive(Args, Serialize)]
struct CoeffsArgs {
    #[arg(long)]
    form: PathBuf,
    #[arg(long, value_enum, default_value_t = LKind::Spin)]
    kind: LKind,
    #[arg(long, default_value_t = 100)]
    n: usize,
}

#[derive(Args, Serialize)]
struct EulerArgs {
    #[arg(long)]
    form: PathBuf,
    #[arg(long)]
    prime: u64,
    /// Ignored for elliptic forms.
    #[arg(long, value_enum, default_value_t = LKind::Spin)]
    kind: LKind,
}

#[derive(Args, Serialize)]
struct ClassifyArgs {
    #[arg(long)]
    form: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    primes: u64,
    #[arg(long, default_value_t = 0.25)]
    tau_p: f64,
    #[arg(long, default_value_t = 0.05)]
    tau_g: f64,
    #[arg(long, default_value_t = 25)]
    min_primes: usize,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum CompareKind {
    Spin,
    Std,
    Hecke,
}

#[derive(Args, Serialize)]
struct CompareArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long, value_enum, default_value_t = CompareKind::Spin)]
    kind: CompareKind,
    #[arg(long, default_value_t = 10_000)]
    primes: u64,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 0.0)]
    threshold: f64,
}

#[derive(Args, Serialize)]
struct CharArgs {
    /// List every character of this modulus.
    #[arg(long, conflicts_with = "address", required_unless_present = "address")]
    modulus: Option<u64>,
    /// A single character "q:index".
    #[arg(long)]
    address: Option<String>,
}

#[derive(Args, Serialize)]
struct CentralArgs {
    #[arg(long)]
    form: PathBuf,
    /// Character address "q:index".
    #[arg(long = "char")]
    chi: String,
    /// Balance parameter X between the two sums.
    #[arg(long, default_value_t = 1.0)]
    x: f64,
    /// Override the archimedean sign as "re,im".
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<String>,
    #[arg(long, default_value_t = 1e-12)]
    cutoff: f64,
}

#[derive(Args, Serialize)]
struct MomentArgs {
    #[arg(long)]
    form: PathBuf,
    #[arg(long)]
    p: u64,
    /// Explicit moduli, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "big_q")]
    family: Option<Vec<u64>>,
    /// Family parameter Q.
    #[arg(long = "Q")]
    big_q: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    kappa: f64,
    #[arg(long, default_value_t = 0.5)]
    nu: f64,
    #[arg(long, default_value_t = 0.25)]
    delta: f64,
    #[arg(long)]
    p1: Option<f64>,
    #[arg(long)]
    p2: Option<f64>,
    #[arg(long)]
    min_factor: Option<f64>,
    #[arg(long)]
    max_factors: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    x: f64,
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<String>,
}

#[derive(Args, Serialize)]
struct SkAverageArgs {
    #[arg(long)]
    form: PathBuf,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    p: u64,
    /// Defaults to √q.
    #[arg(long)]
    x: Option<f64>,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
}

#[derive(Args, Serialize)]
struct SynthArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    k: u32,
    #[arg(long, default_value_t = 10_000)]
    primes: u64,
    #[arg(long)]
    out: PathBuf,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Verification(Value),
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_)
            | Error::NoCuspForms(_)
            | Error::NotOneDimensional
            | Error::UnsupportedWeight(_)
            | Error::NotPrime(_)
            | Error::NotCoprime(_)
            | Error::Imprimitive
            | Error::Pole(_) => Failure::Usage(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn complex(z: Complex64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn parse_sign(s: &Option<String>) -> Result<RootSign, Failure> {
    let Some(s) = s else { return Ok(RootSign::Auto) };
    let parts: Vec<&str> = s.split(',').collect();
    let bad = || Failure::Usage(format!("sign must be \"re,im\", got {s:?}"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let re: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let im: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    Ok(RootSign::Value(Complex64::new(re, im)))
}

enum Form {
    Gl2(EllipticEigenform),
    Gsp4(ParamodularEigenform),
}

fn load_form(path: &Path) -> Result<Form, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    match v.get("type").and_then(Value::as_str) {
        Some("gl2") => Ok(Form::Gl2(io::read_gl2(&text)?)),
        Some("gsp4") => Ok(Form::Gsp4(io::read_gsp4(&text)?)),
        _ => Err(Failure::Data(format!("{}: missing or unknown \"type\"", path.display()))),
    }
}

fn load_gl2(path: &Path) -> Result<EllipticEigenform, Failure> {
    match load_form(path)? {
        Form::Gl2(f) => Ok(f),
        Form::Gsp4(_) => Err(Failure::Data(format!("{}: expected a gl2 form", path.display()))),
    }
}

fn load_gsp4(path: &Path) -> Result<ParamodularEigenform, Failure> {
    match load_form(path)? {
        Form::Gsp4(f) => Ok(f),
        Form::Gl2(_) => Err(Failure::Data(format!("{}: expected a gsp4 form", path.display()))),
    }
}

fn factor_json(f: &EulerFactor) -> Value {
    json!({
        "prime": f.prime(),
        "degree": f.degree(),
        "coefficients": f.coefficients().iter().map(|&c| complex(c)).collect::<Vec<_>>(),
    })
}

fn series_json(s: &CoefficientSeries) -> Value {
    let m: serde_json::Map<String, Value> =
        (1..=s.len()).map(|n| (n.to_string(), Value::from(s.get(n).re))).collect();
    Value::Object(m)
}

fn central_json(c: &CentralValue) -> Value {
    json!({
        "value": complex(c.value),
        "root_number": complex(c.root_number),
        "length1": c.length1,
        "length2": c.length2,
        "trivial_zero": c.trivial_zero,
    })
}

fn eigenform(a: &Gl2Args) -> Outcome {
    let f = eigenform_one_dim(a.weight, a.coeffs)?;
    io::save_gl2(&a.out, &f)?;
    Ok(json!({
        "weight": f.weight(),
        "precision": f.precision(),
        "a2": f.coefficient(2.min(f.precision()))?.to_string(),
        "out": a.out,
    }))
}

fn sk_lift_cmd(a: &SkLiftArgs) -> Outcome {
    let f = load_gl2(&a.from)?;
    let lift = gsp4lfun::gsp4::sk_lift(&f)?.with_sk_reference(a.from.display().to_string());
    io::save_gsp4(&a.out, &lift)?;
    let at2 = lift.hecke().get(&2).and_then(|d| d.exact.as_ref()).map(|(l1, l2)| json!([l1.to_string(), l2.to_string()]));
    Ok(json!({
        "k": lift.k(),
        "packet": lift.packet().as_str(),
        "primes": lift.hecke().len(),
        "hecke_2": at2,
        "out": a.out,
    }))
}

fn coeffs_cmd(a: &CoeffsArgs) -> Outcome {
    let s = match load_form(&a.form)? {
        Form::Gsp4(f) => match a.kind {
            LKind::Spin => spin_coeffs(&f, a.n)?,
            LKind::Std => std_coeffs(&f, a.n)?,
        },
        Form::Gl2(f) => f.normalized_series(a.n)?,
    };
    Ok(json!({"n": a.n, "coefficients": series_json(&s)}))
}

fn euler_cmd(a: &EulerArgs) -> Outcome {
    let f = match load_form(&a.form)? {
        Form::Gl2(f) => gl2_euler_factor(&f, a.prime, Complex64::new(1.0, 0.0))?,
        Form::Gsp4(f) => match a.kind {
            LKind::Spin => f.spin_factor(a.prime)?,
            LKind::Std => f.std_factor(a.prime)?,
        },
    };
    Ok(factor_json(&f))
}

fn classify_cmd(a: &ClassifyArgs) -> Outcome {
    let f = load_gsp4(&a.form)?;
    let ev = f.spin_eigenvalues(a.primes.min(f.prime_bound()))?;
    let opts = ClassifyOptions { tau_p: a.tau_p, tau_g: a.tau_g, min_primes: a.min_primes };
    let r = classify_packet(&ev, &opts)?;
    let worst_g = r.margins.iter().min_by(|x, y| x.g_margin.total_cmp(&y.g_margin)).map(|m| json!({"p": m.p, "margin": m.g_margin}));
    Ok(json!({
        "verdict": r.verdict.as_str(),
        "primes": r.primes,
        "rho_p": r.rho_p,
        "rho_g": r.rho_g,
        "g_violations": r.g_violations,
        "tightest_g_margin": worst_g,
    }))
}

fn compare_cmd(a: &CompareArgs) -> Outcome {
    let fa = load_gsp4(&a.a)?;
    let fb = load_gsp4(&a.b)?;
    let kind = match a.kind {
        CompareKind::Spin => ComparisonKind::Spin,
        CompareKind::Std => ComparisonKind::Std,
        CompareKind::Hecke => ComparisonKind::Hecke,
    };
    let r = compare_eigenforms(&fa, &fb, a.primes, kind, &CompareOptions { tol: a.tol, threshold: a.threshold })?;
    Ok(json!({
        "kind": r.kind.as_str(),
        "primes_compared": r.primes_compared,
        "agreements": r.agreements,
        "density": r.density,
        "first_disagreement": r.first_disagreement,
        "verdict": r.verdict.as_str(),
    }))
}

fn char_cmd(a: &CharArgs) -> Outcome {
    let describe = |c: &gsp4lfun::characters::DirichletCharacter| {
        let mut v = c.to_json();
        v["address"] = Value::from(c.address());
        if c.is_primitive() {
            v["gauss_sum"] = complex(gauss_sum(c));
        }
        v
    };
    match (&a.address, a.modulus) {
        (Some(addr), _) => Ok(describe(&character_by_address(addr)?)),
        (None, Some(q)) => {
            let all = characters_mod(q)?;
            Ok(json!({"modulus": q, "count": all.len(), "characters": all.iter().map(describe).collect::<Vec<_>>()}))
        }
        (None, None) => Err(Failure::Usage("give --modulus or --address".into())),
    }
}

fn central_cmd(a: &CentralArgs) -> Outcome {
    let chi = character_by_address(&a.chi)?;
    let cfg = AfeConfig { cutoff: a.cutoff, sign: parse_sign(&a.sign)?, ..AfeConfig::default() };
    let c = match load_form(&a.form)? {
        Form::Gl2(f) => afe_gl2_central_with(&f, &chi, a.x, &cfg)?,
        Form::Gsp4(f) => afe_gsp4_central_with(&f, &chi, a.x, &cfg)?,
    };
    Ok(json!({"character": chi.to_json(), "central": central_json(&c)}))
}

fn moment_cmd(a: &MomentArgs) -> Outcome {
    let f = load_gsp4(&a.form)?;
    let cfg = AfeConfig::default().with_sign(parse_sign(&a.sign)?);
    let (members, family_info) = match (&a.family, a.big_q) {
        (Some(list), _) => (list.clone(), json!({"explicit": list})),
        (None, Some(q)) => {
            let mut params = FamilyParams::new(q, a.kappa, a.nu, a.delta);
            let any = a.p1.is_some() || a.p2.is_some() || a.min_factor.is_some() || a.max_factors.is_some();
            if any {
                let d = params.resolved();
                params = params.with_overrides(FamilyOverrides {
                    p1: a.p1.unwrap_or(d.p1),
                    p2: a.p2.unwrap_or(d.p2),
                    min_prime_factor: a.min_factor.unwrap_or(d.min_prime_factor),
                    max_distinct_factors: a.max_factors.unwrap_or(d.max_distinct_factors),
                });
            }
            let fam = family_q(&params)?;
            let t = fam.thresholds;
            let info = json!({
                "Q": q,
                "from_defaults": fam.from_defaults,
                "thresholds": {"p1": t.p1, "p2": t.p2, "min_prime_factor": t.min_prime_factor, "max_distinct_factors": t.max_distinct_factors},
                "members": fam.members,
                "note": fam.note,
            });
            (fam.members, info)
        }
        (None, None) => return Err(Failure::Usage("give --family or --Q".into())),
    };
    let m = first_moment(&f, &members, a.p, a.x, &cfg)?;
    Ok(json!({
        "family": family_info,
        "total": complex(m.total),
        "per_modulus": m.per_modulus.iter().map(|&(q, v)| json!({"q": q, "value": complex(v)})).collect::<Vec<_>>(),
    }))
}

fn sk_average_cmd(a: &SkAverageArgs) -> Outcome {
    let f = load_gl2(&a.form)?;
    let x = a.x.unwrap_or((a.q as f64).sqrt());
    let r = sk_average(&f, a.q, a.p, x, &AfeConfig::default())?;
    Ok(json!({
        "x": x,
        "direct": complex(r.direct),
        "decomposed": complex(r.decomposed),
        "difference": (r.direct - r.decomposed).norm(),
        "first": complex(r.first),
        "second": complex(r.second),
        "main_term": complex(r.main_term),
    }))
}

fn verify_cmd(a: &VerifyArgs) -> Outcome {
    let suite = verify::Suite::parse(&a.suite).map_err(|e| Failure::Usage(e.to_string()))?;
    let reports = verify::run(suite)?;
    let passed = reports.iter().all(|r| r.passed());
    let v = json!({"passed": passed, "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>()});
    if passed {
        Ok(v)
    } else {
        Err(Failure::Verification(v))
    }
}

fn synth_cmd(a: &SynthArgs) -> Outcome {
    let f = synthesize_g_form(a.seed, a.k, a.primes)?;
    io::save_gsp4(&a.out, &f)?;
    Ok(json!({"k": f.k(), "packet": f.packet().as_str(), "primes": f.hecke().len(), "out": a.out}))
}

fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Eigenform { kind: EigenformKind::Gl2(a) } => eigenform(a),
        Command::SkLift(a) => sk_lift_cmd(a),
        Command::Coeffs(a) => coeffs_cmd(a),
        Command::Euler(a) => euler_cmd(a),
        Command::Classify(a) => classify_cmd(a),
        Command::Compare(a) => compare_cmd(a),
        Command::Char(a) => char_cmd(a),
        Command::CentralValue(a) => central_cmd(a),
        Command::FirstMoment(a) => moment_cmd(a),
        Command::SkAverage(a) => sk_average_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Synthesize(a) => synth_cmd(a),
    }
}

fn configure_threads(n: Option<usize>) -> Result<(), Failure> {
    match n {
        Some(0) => Err(Failure::Usage("--threads must be positive".into())),
        #[cfg(feature = "parallel")]
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string())),
        _ => Ok(()),
    }
}

fn emit(cli: &Cli, status: &str, result: Value) -> Result<(), String> {
    let report = json!({
        "manifest": {
            "version": gsp4lfun::VERSION,
            "command": cli.command,
            "threads": cli.threads,
        },
        "status": status,
        "result": result,
    });
    let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n";
    match &cli.report {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads(cli.threads).and_then(|_| dispatch(&cli.command));
    let (status, value, code) = match outcome {
        Ok(v) => ("ok", v, 0),
        Err(Failure::Verification(v)) => ("verification-failed", v, 1),
        Err(Failure::Usage(m)) => ("usage-error", json!({"error": m}), 2),
        Err(Failure::Data(m)) => ("data-error", json!({"error": m}), 3),
    };
    if code >= 2 {
        eprintln!("error: {}", value["error"].as_str().unwrap_or(""));
    }
    if let Err(e) = emit(&cli, status, value) {
        eprintln!("error: {e}");
        return ExitCode::from(3);
    }
    ExitCode::from(code)
}
