//! Command-line front end: argument parsing, JSON reports and the
//! verification suite.

pub mod checks;
pub mod fixtures;
pub mod parse;
pub mod report;
pub mod suite;

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use forge_core::corresp::ClassMapper;
use forge_core::family::{build, sqrt2_params, validate_params, CurveLabel, CurvePair, HyperCurve, ValidationLevel};
use forge_core::moduli::{
    criterion_sides, involution_criterion, normalize_genus2, normalize_genus2_fp, pairing_involution, ProjPoint,
};
use forge_core::zeta::{count_points, l_polynomial, MAX_GENUS};
use forge_core::{seed, Error, Field, Fp, PrimeField, Rational, Result, UPoly};

use report::{CheckResult, RunReport};
use suite::{SuiteConfig, DEFAULT_SEED};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "forge", version, about = "Build and check isogenous pairs of hyperelliptic Jacobians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a curve pair and print it.
    Gen(GenArgs),
    /// Run one family of checks.
    #[command(subcommand)]
    Verify(Verify),
    /// Point counts and the L-polynomial of a curve over a prime field.
    Zeta(ZetaArgs),
    /// Six-point involution criterion and genus-2 normal form.
    #[command(subcommand)]
    Moduli(Moduli),
    /// Run the full verification battery.
    Suite(SuiteArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Print a single-line JSON report.
    #[arg(long)]
    pub json: bool,
    /// Include wall times in the report (makes output nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub genus: usize,
    /// Work over 𝔽_p; without it the pair is built over ℚ.
    #[arg(long)]
    pub prime: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub v: String,
    /// Comma-separated; with --sqrt2, the first half only.
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Complete `a` to the self-dual family.
    #[arg(long)]
    pub sqrt2: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Polynomial identities, exact and sampled.
    Identities(IdentitiesArgs),
    /// Doubling, kernel and pointwise checks of the correspondence.
    Isogeny(IsogenyArgs),
    /// Equality of the L-polynomials of the two curves.
    LpolyEqual(LpolyArgs),
    /// Splitting of the Jacobian at v = √−1.
    Split(SplitArgs),
    /// The self-dual family.
    Sqrt2(Sqrt2Args),
}

#[derive(Args, Debug)]
pub struct IdentitiesArgs {
    /// Even genus for the sampled checks; default runs 2 and 4.
    #[arg(long)]
    pub genus: Option<usize>,
    #[arg(long, default_value_t = 10007)]
    pub prime: u64,
    #[arg(long, default_value_t = 40)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct IsogenyArgs {
    #[arg(long, default_value_t = 2)]
    pub genus: usize,
    #[arg(long, default_value_t = 101)]
    pub prime: u64,
    #[arg(long, default_value = "3", allow_hyphen_values = true)]
    pub v: String,
    #[arg(long, default_value = "2,5", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct LpolyArgs {
    #[arg(long, default_value_t = 2)]
    pub genus: usize,
    /// Comma-separated list of primes.
    #[arg(long, default_value = "101,103")]
    pub prime: String,
    #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
    pub v: i64,
    #[arg(long, default_value = "2,5", allow_hyphen_values = true)]
    pub a: String,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct SplitArgs {
    /// Defaults to the number of values in `a`.
    #[arg(long)]
    pub genus: Option<usize>,
    #[arg(long, default_value_t = 13)]
    pub prime: u64,
    #[arg(long, default_value = "2,3", allow_hyphen_values = true)]
    pub a: String,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct Sqrt2Args {
    #[arg(long, default_value_t = 2)]
    pub genus: usize,
    #[arg(long, default_value_t = 101)]
    pub prime: u64,
    /// Without it, the smallest v with a square constant is used.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<i64>,
    /// The first half of the parameters.
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct ZetaArgs {
    #[arg(long)]
    pub prime: u64,
    /// Count over 𝔽_{p^k} for k = 1..=K; defaults to the genus.
    #[arg(long)]
    pub k: Option<usize>,
    /// `{"coeffs": [...]}` (constant term first) or a pair from `forge gen`.
    #[arg(long)]
    pub curve_json: PathBuf,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Subcommand, Debug)]
pub enum Moduli {
    /// Does an involution swap (p1,p2), (p3,p4), (p5,p6)? Exit 0 iff yes.
    Criterion(ModuliArgs),
    /// Move six points to {x1, −x1, x2, −x2, v, 1/v}.
    Normalize(ModuliArgs),
}

#[derive(Args, Debug)]
pub struct ModuliArgs {
    /// Six comma-separated values; `inf` is the point at infinity.
    #[arg(long, allow_hyphen_values = true)]
    pub points: String,
    /// Work over 𝔽_p; without it over ℚ (values may be `n/d`).
    #[arg(long)]
    pub prime: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Directory of fixture files; defaults to the bundled fixtures.
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
    #[arg(long)]
    pub no_fixtures: bool,
    /// JSON file overriding parts of the default configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub out: Output,
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report(r: RunReport, out: &Output) -> Self {
        let r = if out.timings { r.with_timings() } else { r };
        let stdout = if out.json { r.to_json_line() + "\n" } else { r.to_text() };
        Outcome { code: if r.passed { EXIT_PASS } else { EXIT_FAIL }, stdout, stderr: String::new() }
    }

    fn invalid(e: &Error, json: bool) -> Self {
        let stdout = if json { json!({ "error": e.to_string() }).to_string() + "\n" } else { String::new() };
        Outcome { code: EXIT_INVALID, stdout, stderr: format!("error: {e}\n") }
    }
}

pub fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen(a) => gen(&a).unwrap_or_else(|e| Outcome::invalid(&e, a.json)),
        Command::Verify(v) => {
            let (res, out) = match &v {
                Verify::Identities(a) => (identities(a), &a.out),
                Verify::Isogeny(a) => (isogeny(a), &a.out),
                Verify::LpolyEqual(a) => (lpoly_equal(a), &a.out),
                Verify::Split(a) => (split(a), &a.out),
                Verify::Sqrt2(a) => (sqrt2(a), &a.out),
            };
            finish(res, out)
        }
        Command::Zeta(a) => finish(zeta(&a), &a.out),
        Command::Moduli(Moduli::Criterion(a)) => finish(criterion(&a), &a.out),
        Command::Moduli(Moduli::Normalize(a)) => finish(normalize(&a), &a.out),
        Command::Suite(a) => finish(run_suite_command(&a), &a.out),
    }
}

fn finish(res: Result<RunReport>, out: &Output) -> Outcome {
    match res {
        Ok(r) => Outcome::report(r, out),
        Err(e) => Outcome::invalid(&e, out.json),
    }
}

fn fp_values(k: &PrimeField, s: &str) -> Result<Vec<Fp>> {
    parse::list(s).iter().map(|t| parse::fp(k, t)).collect()
}

fn int_values(s: &str) -> Result<Vec<i64>> {
    parse::list(s).iter().map(|t| parse::int(t)).collect()
}

fn params_q(g: usize, v: &str, a: &str, sqrt2: bool) -> Result<CurvePair<Rational>> {
    let v = parse::rational(v)?;
    let a = parse::list(a).iter().map(|t| parse::rational(t)).collect::<Result<Vec<_>>>()?;
    let ps = if sqrt2 { sqrt2_params(g, v, &a, &())? } else { validate_params(g, v, a, &(), ValidationLevel::Pair)? };
    build(&ps)
}

fn params_fp(g: usize, p: u64, v: &str, a: &str, sqrt2: bool) -> Result<CurvePair<Fp>> {
    let k = PrimeField::new(p)?;
    let v = parse::fp(&k, v)?;
    let a = fp_values(&k, a)?;
    let ps = if sqrt2 { sqrt2_params(g, v, &a, &k)? } else { validate_params(g, v, a, &k, ValidationLevel::Pair)? };
    build(&ps)
}

fn gen(a: &GenArgs) -> Result<Outcome> {
    let v = match a.prime {
        Some(p) => params_fp(a.genus, p, &a.v, &a.a, a.sqrt2)?.to_json(),
        None => params_q(a.genus, &a.v, &a.a, a.sqrt2)?.to_json(),
    };
    let stdout = if a.json { v.to_string() } else { serde_json::to_string_pretty(&v).expect("json") } + "\n";
    Ok(Outcome { code: EXIT_PASS, stdout, stderr: String::new() })
}

fn identities(a: &IdentitiesArgs) -> Result<RunReport> {
    let genera = match a.genus {
        Some(g) if g % 2 == 1 => return Err(Error::GenusParity(g)),
        Some(g) => vec![g],
        None => vec![2, 4],
    };
    PrimeField::new(a.prime)?;
    let mut out = vec![checks::base_identities(), checks::m_congruence_exact()];
    out.extend(genera.iter().map(|&g| checks::m_congruence(g, a.prime, a.trials, a.seed)));
    out.extend(genera.iter().map(|&g| checks::gamma_consistency(g, a.prime, a.trials, a.seed)));
    let params = json!({ "genera": genera, "prime": a.prime, "trials": a.trials });
    Ok(RunReport::new("verify identities", params, a.seed, out))
}

fn isogeny(a: &IsogenyArgs) -> Result<RunReport> {
    let pair = params_fp(a.genus, a.prime, &a.v, &a.a, false)?;
    ClassMapper::new(&pair, seed::derive(a.seed, "mapper"))?;
    let label = format!("g{}/p{}", a.genus, a.prime);
    let out = checks::isogeny(&pair, &label, a.trials, a.seed);
    let params =
        json!({ "genus": a.genus, "prime": a.prime, "v": pair.params.v, "a": pair.params.a, "trials": a.trials });
    Ok(RunReport::new("verify isogeny", params, a.seed, out))
}

fn lpoly_equal(a: &LpolyArgs) -> Result<RunReport> {
    let primes = parse::list(&a.prime)
        .iter()
        .map(|t| t.parse::<u64>().map_err(|_| Error::Invalid(format!("not a prime: {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let vals = int_values(&a.a)?;
    if a.genus == 0 || a.genus > MAX_GENUS {
        return Err(Error::UnsupportedGenus(a.genus));
    }
    if vals.len() != a.genus {
        return Err(Error::DegenerateParams(vec![format!("expected {} values of a, got {}", a.genus, vals.len())]));
    }
    for &p in &primes {
        PrimeField::new(p)?;
    }
    let out = checks::l_equality(a.genus, a.v, &vals, &primes);
    let params = json!({ "genus": a.genus, "v": a.v, "a": vals, "primes": primes });
    Ok(RunReport::new("verify lpoly-equal", params, 0, out))
}

fn split(a: &SplitArgs) -> Result<RunReport> {
    let vals = int_values(&a.a)?;
    let g = a.genus.unwrap_or(vals.len());
    forge_core::zeta::check_split_at_i(g, &vals, a.prime)?;
    let out = vec![checks::split(g, &vals, a.prime)];
    Ok(RunReport::new("verify split", json!({ "genus": g, "prime": a.prime, "a": vals }), 0, out))
}

fn sqrt2(a: &Sqrt2Args) -> Result<RunReport> {
    let half = int_values(&a.a)?;
    let (v, pair) = match a.v {
        Some(v) => (v, checks::sqrt2_pair(a.genus, a.prime, v, &half)?),
        None => checks::sqrt2_search(a.genus, a.prime, &half)?,
    };
    let label = format!("g{}/p{}/v{v}", a.genus, a.prime);
    let out = checks::sqrt2(&pair, &label, a.trials, a.seed);
    let params = json!({ "genus": a.genus, "prime": a.prime, "v": v, "a": pair.params.a, "trials": a.trials });
    Ok(RunReport::new("verify sqrt2", params, a.seed, out))
}

fn coeff_strings(v: &Value) -> Result<Vec<String>> {
    let arr = v.as_array().ok_or_else(|| Error::Invalid("coeffs must be an array".into()))?;
    arr.iter()
        .map(|c| match c {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(Error::Invalid(format!("bad coefficient {c}"))),
        })
        .collect()
}

/// The curves named in a curve file: a bare `coeffs` list, or the two
/// curves of a pair.
fn curves_from_json(v: &Value) -> Result<Vec<(&'static str, Vec<String>)>> {
    if let Some(pair) = v.get("pair") {
        return curves_from_json(pair);
    }
    if let Some(c) = v.get("coeffs") {
        return Ok(vec![("C", coeff_strings(c)?)]);
    }
    let mut out = Vec::new();
    for key in ["C", "Cprime"] {
        if let Some(c) = v.get(key).and_then(|c| c.get("coeffs")) {
            out.push((key, coeff_strings(c)?));
        }
    }
    if out.is_empty() {
        return Err(Error::Invalid("no curve found: expected \"coeffs\" or a pair".into()));
    }
    Ok(out)
}

fn zeta(a: &ZetaArgs) -> Result<RunReport> {
    let k = PrimeField::new(a.prime)?;
    let text =
        fs::read_to_string(&a.curve_json).map_err(|e| Error::Invalid(format!("{}: {e}", a.curve_json.display())))?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", a.curve_json.display())))?;
    let mut curves = Vec::new();
    for (name, coeffs) in curves_from_json(&v)? {
        let c = coeffs.iter().map(|s| parse::fp(&k, s)).collect::<Result<Vec<_>>>()?;
        curves.push((name, HyperCurve::new(UPoly::from_coeffs(&k, c), CurveLabel::C)?));
    }
    let mut out = Vec::new();
    for (name, c) in &curves {
        let depth = a.k.unwrap_or(c.genus);
        let counts = (1..=depth).map(|e| count_points(c, e)).collect::<Result<Vec<_>>>()?;
        let check = CheckResult::timed(&format!("zeta/{name}"), || {
            let l = l_polynomial(c)?;
            let predicted = l.point_counts(depth);
            let consistent = predicted.iter().zip(&counts).all(|(x, &y)| *x == y as i64);
            let dev = l.weil_deviation();
            let ok = l.satisfies_functional_equation() && consistent && dev < 1e-6;
            let details = json!({
                "genus": c.genus,
                "counts": counts,
                "lpoly": l.coeffs,
                "charpoly": l.charpoly(),
                "group_order": l.at_one(),
                "weil_deviation": dev,
            });
            Ok(CheckResult::new(format!("zeta/{name}"), ok, details))
        });
        out.push(check);
    }
    let params = json!({ "prime": a.prime, "k": a.k, "curve_json": a.curve_json });
    Ok(RunReport::new("zeta", params, 0, out))
}

fn points_q(s: &str) -> Result<[ProjPoint<Rational>; 6]> {
    parse::six_points(&parse::list(s), parse::rational)
}

fn points_fp(k: &PrimeField, s: &str) -> Result<[ProjPoint<Fp>; 6]> {
    parse::six_points(&parse::list(s), |t| parse::fp(k, t))
}

fn involution_check<F: Field + serde::Serialize>(pts: &[ProjPoint<F>; 6]) -> Result<CheckResult> {
    let pairs = [(pts[0].clone(), pts[1].clone()), (pts[2].clone(), pts[3].clone()), (pts[4].clone(), pts[5].clone())];
    let r = pairing_involution(&pairs)?;
    let finite: Option<Vec<F>> = pts.iter().map(|p| p.finite().cloned()).collect();
    let mut details = r.to_json();
    if let Some(f) = finite {
        let a: [F; 6] = std::array::from_fn(|i| f[i].clone());
        let (lhs, rhs) = criterion_sides(&a);
        details["criterion"] = json!(involution_criterion(&a)?);
        details["sides"] = json!([lhs, rhs]);
    }
    Ok(CheckResult::new("moduli/criterion", r.exists, details))
}

fn criterion(a: &ModuliArgs) -> Result<RunReport> {
    let check = match a.prime {
        Some(p) => involution_check(&points_fp(&PrimeField::new(p)?, &a.points)?)?,
        None => involution_check(&points_q(&a.points)?)?,
    };
    Ok(RunReport::new("moduli criterion", json!({ "points": a.points, "prime": a.prime }), a.seed, vec![check]))
}

fn normalize(a: &ModuliArgs) -> Result<RunReport> {
    let name = "moduli/normalize";
    let result = match a.prime {
        Some(p) => {
            let pts = points_fp(&PrimeField::new(p)?, &a.points)?;
            normalize_genus2_fp(&pts, seed::derive(a.seed, "extension")).map(|(d, n)| {
                let mut v = n.to_json();
                v["extension_degree"] = json!(d);
                v
            })
        }
        None => normalize_genus2(&points_q(&a.points)?).map(|n| n.to_json()),
    };
    let check = match result {
        Ok(v) => CheckResult::new(name, true, v),
        Err(e @ Error::DuplicateInput) | Err(e @ Error::Invalid(_)) => return Err(e),
        Err(e) => CheckResult::error(name, &e),
    };
    Ok(RunReport::new("moduli normalize", json!({ "points": a.points, "prime": a.prime }), a.seed, vec![check]))
}

fn run_suite_command(a: &SuiteArgs) -> Result<RunReport> {
    let cfg: SuiteConfig = match &a.config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?
        }
        None => SuiteConfig::default(),
    };
    let dir = if a.no_fixtures { None } else { Some(a.fixtures.clone().unwrap_or_else(fixtures::default_dir)) };
    Ok(suite::run_suite(&cfg, a.seed, dir))
}
