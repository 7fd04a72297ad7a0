//! Command-line front end: argument parsing, dispatch and report envelopes.

use std::fmt;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use plurikit::curvecoh::{essentiality_report, h_curve, triviality_check, CurveOptions, PlaneCurve};
use plurikit::exactnum::json::bipoly_to_json;
use plurikit::exactnum::{parse_rational, GaussianRational, ProjPoint, Scalar, DEFAULT_TOL};
use plurikit::monopole::{
    axisym_build, lambda_kernel, massless_build, massless_intersection, massless_splitting, lambda_cohomology,
    trivializing_match, two_m_of, vanishing_report, AxisymMonopole, MasslessPair,
};
use plurikit::p1p1coh::{sheaf_cohomology, verify_regularity, Resolution};
use plurikit::plurilinear::{
    extension_j, is_hypercomplex, normalize_degree_one, real_eigen_kernel_dim, splitting_profile, support_curve, validate,
    PluriPair, Status, ValidateOptions,
};
use plurikit::suite::{run_suite, Level, SuiteReport};
use plurikit::Error;

pub const SCHEMA: &str = "plurikit-v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Computed = 0,
    InvalidInput = 1,
    Violation = 2,
    Inconclusive = 3,
}

#[derive(Parser, Debug)]
#[command(name = "plurikit", version, about = "Pluricomplex structures, sheaf cohomology on P1xP1 and monopole spectral curves")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verb {
    /// Certify or refute the pluricomplex condition of a pair.
    Validate(ValidateArgs),
    /// Characteristic curve of a pair, or cohomology data of a curve file.
    Curve(CurveArgs),
    /// h0 and h1 of a twist of the characteristic sheaf or of a curve.
    Cohomology(CohomologyArgs),
    /// Strong regularity sweep over the twists (m-1, -m-1) and their mirrors.
    Regularity(RegularityArgs),
    /// Hypercomplex extension at a point of the sphere.
    Extend(ExtendArgs),
    /// Move a degree-one structure to a hypercomplex one.
    Normalize(InputArgs),
    /// Splitting profile of the structure's subspace family.
    Profile(ProfileArgs),
    /// Axially symmetric monopole curve, kernel computation and vanishing chain.
    MonopoleAxisym(AxisymArgs),
    /// Massless monopole model from a coprime polynomial pair.
    MonopoleMassless(MasslessArgs),
    /// Run the property suites.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelArg {
    Smoke,
    Full,
}

#[derive(Args, Debug, Serialize)]
pub struct Common {
    /// Arithmetic mode.
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: Mode,
    /// Float-mode zero tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tolerance: f64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct InputArgs {
    /// Input JSON file.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct ValidateArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Sample points per chart before subdivision.
    #[arg(long, default_value_t = 4096)]
    pub samples: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct CurveArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1024)]
    pub samples: usize,
    /// Also report h0, h1 of O_S(P, Q).
    #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_hyphen_values = true)]
    pub twist: Option<Vec<i64>>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct CohomologyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, num_args = 2, value_names = ["P", "Q"], allow_hyphen_values = true, required = true)]
    pub twist: Vec<i64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct RegularityArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 5)]
    pub max_m: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct ExtendArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Point of the sphere, e.g. `1/2+i` or `inf`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub zeta: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct ProfileArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Number of random sample sets.
    #[arg(long, default_value_t = 3)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct AxisymArgs {
    /// Input JSON `{"k", "mass", "roots"}`; otherwise use the flags below.
    #[arg(long, conflicts_with_all = ["charge", "mass", "roots"])]
    pub input: Option<PathBuf>,
    #[arg(long, requires_all = ["mass", "roots"])]
    pub charge: Option<usize>,
    /// Half-integer mass, e.g. `3/2`.
    #[arg(long)]
    pub mass: Option<String>,
    /// Comma-separated roots: `a+bi` literals, or `r@deg` in polar form (float mode).
    #[arg(long, allow_hyphen_values = true)]
    pub roots: Option<String>,
    #[arg(long, default_value_t = 1024)]
    pub samples: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct MasslessArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1024)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Serialize)]
pub struct SelftestArgs {
    #[arg(long, value_enum, default_value = "smoke")]
    pub level: LevelArg,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

/// Failure before a report could be computed.
#[derive(Debug)]
pub struct Failure(pub String);

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

/// Finished run: exit code, report for standard output, diagnostics for standard error.
#[derive(Debug)]
pub struct Outcome {
    pub exit: Exit,
    pub stdout: String,
    pub stderr: String,
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Failure(format!("malformed JSON in {} at line {}, column {}: {e}", path.display(), e.line(), e.column()))
    })
}

fn tol_for<S: Scalar>(c: &Common) -> f64 {
    if S::EXACT { 0.0 } else { c.tolerance }
}

fn parse_point<S: Scalar>(s: &str) -> Result<ProjPoint<S>, Failure> {
    if matches!(s.trim(), "inf" | "infinity") {
        return Ok(ProjPoint::Infinity);
    }
    let g: GaussianRational = s.parse()?;
    Ok(ProjPoint::Finite(S::from_gaussian(&g)))
}

fn parse_root<S: Scalar>(s: &str) -> Result<S, Failure> {
    if let Some((r, deg)) = s.split_once('@') {
        let r: f64 = r.trim().parse().map_err(|_| Failure(format!("bad modulus in root {s:?}")))?;
        let deg: f64 = deg.trim().parse().map_err(|_| Failure(format!("bad angle in root {s:?}")))?;
        if S::EXACT {
            return Err(Failure(format!("polar root {s:?} needs --mode float")));
        }
        return S::from_c64(Complex64::from_polar(r, deg.to_radians())).ok_or_else(|| Failure(format!("bad root {s:?}")));
    }
    let g: GaussianRational = s.trim().parse()?;
    Ok(S::from_gaussian(&g))
}

/// Pair, resolution or curve, recognized by the keys present.
enum Input<S> {
    Pair(PluriPair<S>),
    Resolution(Resolution<S>),
    Curve(PlaneCurve<S>),
}

fn read_input<S: Scalar>(v: &Value, opts: &CurveOptions) -> Result<Input<S>, Failure> {
    if v.get("X").is_some() {
        Ok(Input::Pair(PluriPair::from_json(v)?))
    } else if v.get("M").is_some() {
        Ok(Input::Resolution(Resolution::from_json(v)?))
    } else if v.get("P").is_some() {
        Ok(Input::Curve(PlaneCurve::from_json(v, opts)?))
    } else {
        Err(Failure("input needs \"X\"/\"Y\" (pair), \"M\" (resolution) or \"P\" (curve)".into()))
    }
}

fn read_pair<S: Scalar>(v: &Value) -> Result<PluriPair<S>, Failure> {
    match read_input::<S>(v, &CurveOptions::default())? {
        Input::Pair(p) => Ok(p),
        _ => Err(Failure("this command needs a pair file {\"n\", \"X\", \"Y\"}".into())),
    }
}

fn curve_opts(samples: usize, c: &Common) -> CurveOptions {
    CurveOptions { samples, tol: c.tolerance, ..Default::default() }
}

fn twist_pair(t: &[i64]) -> (i64, i64) {
    (t[0], t[1])
}

fn status_exit(s: Status) -> Exit {
    if s == Status::Unknown { Exit::Inconclusive } else { Exit::Computed }
}

type Computed = Result<(Value, Exit), Failure>;

fn do_validate<S: Scalar>(a: &ValidateArgs, v: &Value) -> Computed {
    let pair = read_pair::<S>(v)?;
    let verdict = validate(&pair, &ValidateOptions { samples: a.samples, tol: a.common.tolerance, ..Default::default() });
    Ok((verdict.to_json(), status_exit(verdict.status)))
}

fn curve_report<S: Scalar>(c: &PlaneCurve<S>, twist: Option<(i64, i64)>, v: &Value, opts: &CurveOptions) -> (Value, Exit) {
    let mut out = c.to_json();
    let (h0, h1) = h_curve(c, 0, 0);
    out["h0_O_S"] = json!(h0);
    out["genus"] = json!(h1);
    if let Some((a, b)) = twist {
        let (h0, h1) = h_curve(c, a, b);
        out["cohomology"] = json!({"twist": [a, b], "h0": h0, "h1": h1});
    }
    if S::EXACT && c.k == 2 && !c.sigma_invariant() {
        if let Ok(exact) = PlaneCurve::<GaussianRational>::from_json(v, opts) {
            out["essentiality"] = essentiality_report(&exact).to_json();
        }
    }
    (out, status_exit(c.antidiagonal.status))
}

fn do_curve<S: Scalar>(a: &CurveArgs, v: &Value) -> Computed {
    let twist = a.twist.as_deref().map(twist_pair);
    let opts = curve_opts(a.samples, &a.common);
    match read_input::<S>(v, &opts)? {
        Input::Curve(c) => Ok(curve_report(&c, twist, v, &opts)),
        Input::Pair(p) => {
            let sc = support_curve(&p, tol_for::<S>(&a.common))?;
            let mut out = json!({
                "char_poly": bipoly_to_json(&sc.poly),
                "squarefree": bipoly_to_json(&sc.squarefree),
                "k": sc.k,
                "stalk_ranks": sc.stalks.iter().map(|s| json!({
                    "zeta": {"re": s.zeta.re, "im": s.zeta.im},
                    "eta": {"re": s.eta.re, "im": s.eta.im},
                    "rank": s.rank,
                    "exact": s.exact,
                })).collect::<Vec<_>>(),
                "constant_rank": sc.constant_rank(),
                "is_hypercomplex": is_hypercomplex(&p),
            });
            if let Some((tp, tq)) = twist {
                let res = Resolution::from_pair(&p)?;
                out["cohomology"] = sheaf_cohomology(&res, tp, tq, tol_for::<S>(&a.common)).to_json();
            }
            Ok((out, Exit::Computed))
        }
        Input::Resolution(_) => Err(Failure("curve needs a pair or a curve file".into())),
    }
}

fn do_cohomology<S: Scalar>(a: &CohomologyArgs, v: &Value) -> Computed {
    let (p, q) = twist_pair(&a.twist);
    let tol = tol_for::<S>(&a.common);
    let res = match read_input::<S>(v, &curve_opts(1024, &a.common))? {
        Input::Pair(pair) => Resolution::from_pair(&pair)?,
        Input::Resolution(r) => r,
        Input::Curve(c) => {
            let (h0, h1) = h_curve(&c, p, q);
            return Ok((json!({"twist": [p, q], "h0": h0, "h1": h1}), Exit::Computed));
        }
    };
    Ok((sheaf_cohomology(&res, p, q, tol).to_json(), Exit::Computed))
}

fn do_regularity<S: Scalar>(a: &RegularityArgs, v: &Value) -> Computed {
    let res = match read_input::<S>(v, &CurveOptions::default())? {
        Input::Pair(pair) => Resolution::from_pair(&pair)?,
        Input::Resolution(r) => r,
        Input::Curve(_) => return Err(Failure("regularity needs a pair or a resolution file".into())),
    };
    let r = verify_regularity(&res, a.max_m, tol_for::<S>(&a.common));
    let mut out = r.to_json();
    out["passed"] = json!(r.passed());
    Ok((out, Exit::Computed))
}

fn do_extend<S: Scalar>(a: &ExtendArgs, v: &Value) -> Computed {
    let pair = read_pair::<S>(v)?;
    let z = parse_point::<S>(&a.zeta)?;
    let tol = tol_for::<S>(&a.common);
    let j = extension_j(&pair, &z)?;
    let ja = extension_j(&pair, &z.antipode())?;
    let n = j.rows();
    let sq = j.mul(&j).add(&plurikit::Matrix::identity(n));
    let anti = ja.add(&j);
    let ok = |m: &plurikit::Matrix<S>| if S::EXACT { m.is_zero() } else { m.max_modulus() <= a.common.tolerance.max(tol) };
    Ok((
        json!({
            "J": plurikit::exactnum::json::matrix_to_json(&j),
            "square_is_minus_identity": ok(&sq),
            "antipode_is_negative": ok(&anti),
            "real_eigen_kernel_dim": real_eigen_kernel_dim(&j, tol),
        }),
        Exit::Computed,
    ))
}

fn do_normalize<S: Scalar>(a: &InputArgs, v: &Value) -> Computed {
    let pair = read_pair::<S>(v)?;
    let nz = normalize_degree_one(&pair, a.common.tolerance)?;
    Ok((
        json!({
            "g": nz.g.entries().iter().map(|x| x.to_json()).collect::<Vec<_>>(),
            "normalized": nz.normalized.to_json(),
            "residual": nz.residual,
        }),
        Exit::Computed,
    ))
}

fn do_profile<S: Scalar>(a: &ProfileArgs, v: &Value) -> Computed {
    let pair = read_pair::<S>(v)?;
    let prof = splitting_profile(&pair.pencil(), a.samples.max(1), a.seed, tol_for::<S>(&a.common))?;
    Ok((prof.to_json(), Exit::Computed))
}

fn do_axisym<S: Scalar>(a: &AxisymArgs) -> Computed {
    let mono: AxisymMonopole<S> = match &a.input {
        Some(path) => AxisymMonopole::from_json(&read_json(path)?)?,
        None => {
            let (Some(k), Some(mass), Some(roots)) = (a.charge, &a.mass, &a.roots) else {
                return Err(Failure("monopole-axisym needs --input or all of --charge, --mass, --roots".into()));
            };
            let two_m = two_m_of(&parse_rational(mass)?)?;
            let roots = roots.split(',').map(parse_root::<S>).collect::<Result<Vec<_>, _>>()?;
            AxisymMonopole { k, two_m, roots }
        }
    };
    let tol = if S::EXACT { 0.0 } else { a.common.tolerance.max(1e-8) };
    let (mono, curve) = axisym_build(mono.k, mono.two_m, &mono.roots, tol)?;
    let triv = triviality_check(&curve, mono.exponent())?;
    let lambda = lambda_kernel(&mono, &curve)?;
    let report = vanishing_report(&mono, &curve)?;
    let exit = if report.vanishing { Exit::Computed } else { Exit::Inconclusive };
    Ok((
        json!({
            "monopole": mono.to_json(),
            "curve": curve.to_json(),
            "triviality": triv.to_json(),
            "lambda": lambda.to_json(),
            "vanishing": report.to_json(),
        }),
        exit,
    ))
}

fn do_massless<S: Scalar>(a: &MasslessArgs, v: &Value) -> Computed {
    let tol = tol_for::<S>(&a.common);
    let pair = MasslessPair::<S>::from_json(v, tol)?;
    let (data, curve) = massless_build(&pair, &curve_opts(a.samples, &a.common))?;
    let k = pair.k;
    let section = trivializing_match(&data, &curve)?;
    let z0 = S::from_gaussian(&GaussianRational::from_fracs((1, 3), (2, 7)));
    let z1 = S::from_gaussian(&GaussianRational::from_fracs((-5, 4), (1, 9)));
    let inter = massless_intersection(&data, &z0, &z1, tol)?;
    let prof = massless_splitting(&data, 3, a.seed, tol)?;
    let prop = lambda_cohomology(k)?;
    Ok((
        json!({
            "pair": pair.to_json(),
            "matrix": data.to_json(),
            "curve": curve.to_json(),
            "trivializing_section": section.to_json(),
            "intersection": {"dim": inter, "expected": 2 * k - 2},
            "splitting": prof.to_json(),
            "cohomology_ingredients": prop.to_json(),
        }),
        status_exit(curve.antidiagonal.status),
    ))
}

fn do_selftest(a: &SelftestArgs, stderr: &mut String) -> Computed {
    let level = match a.level {
        LevelArg::Smoke => Level::Smoke,
        LevelArg::Full => Level::Full,
    };
    let report = run_suite(level, a.seed, &mut |r| {
        let line = format!("criterion {:>2} {} {} ({:.2}s)\n", r.id, if r.passed { "PASS" } else { "FAIL" }, r.title, r.seconds);
        eprint!("{line}");
        stderr.push_str(&line);
    });
    Ok((report.to_json(), suite_exit(&report)))
}

/// A failing criterion is a property violation.
pub fn suite_exit(report: &SuiteReport) -> Exit {
    if report.passed() { Exit::Computed } else { Exit::Violation }
}

fn mode_of(verb: &Verb) -> Option<&Common> {
    match verb {
        Verb::Validate(a) => Some(&a.common),
        Verb::Curve(a) => Some(&a.common),
        Verb::Cohomology(a) => Some(&a.common),
        Verb::Regularity(a) => Some(&a.common),
        Verb::Extend(a) => Some(&a.common),
        Verb::Normalize(a) => Some(&a.common),
        Verb::Profile(a) => Some(&a.common),
        Verb::MonopoleAxisym(a) => Some(&a.common),
        Verb::MonopoleMassless(a) => Some(&a.common),
        Verb::Selftest(_) => None,
    }
}

fn input_of(verb: &Verb) -> Option<&PathBuf> {
    match verb {
        Verb::Validate(a) => Some(&a.input),
        Verb::Curve(a) => Some(&a.input),
        Verb::Cohomology(a) => Some(&a.input),
        Verb::Regularity(a) => Some(&a.input),
        Verb::Extend(a) => Some(&a.input),
        Verb::Normalize(a) => Some(&a.input),
        Verb::Profile(a) => Some(&a.input),
        Verb::MonopoleMassless(a) => Some(&a.input),
        Verb::MonopoleAxisym(_) | Verb::Selftest(_) => None,
    }
}

fn dispatch<S: Scalar>(verb: &Verb, stderr: &mut String) -> Computed {
    let v = match input_of(verb) {
        Some(p) => read_json(p)?,
        None => Value::Null,
    };
    match verb {
        Verb::Validate(a) => do_validate::<S>(a, &v),
        Verb::Curve(a) => do_curve::<S>(a, &v),
        Verb::Cohomology(a) => do_cohomology::<S>(a, &v),
        Verb::Regularity(a) => do_regularity::<S>(a, &v),
        Verb::Extend(a) => do_extend::<S>(a, &v),
        Verb::Normalize(a) => do_normalize::<S>(a, &v),
        Verb::Profile(a) => do_profile::<S>(a, &v),
        Verb::MonopoleAxisym(a) => do_axisym::<S>(a),
        Verb::MonopoleMassless(a) => do_massless::<S>(a, &v),
        Verb::Selftest(a) => do_selftest(a, stderr),
    }
}

fn verb_name(verb: &Verb) -> String {
    serde_json::to_value(verb)
        .ok()
        .and_then(|v| v.as_object().and_then(|m| m.keys().next().cloned()))
        .unwrap_or_default()
}

/// Command echo: the verb and every option value after defaults.
fn echo(verb: &Verb) -> Value {
    let v = serde_json::to_value(verb).unwrap_or(Value::Null);
    let options = v.as_object().and_then(|m| m.values().next().cloned()).unwrap_or(Value::Null);
    json!({"verb": verb_name(verb), "options": options})
}

/// Wraps a result in the versioned envelope.
pub fn envelope(command: Value, result: Value) -> Value {
    json!({"schema": SCHEMA, "command": command, "result": result})
}

/// Checks the envelope of a report: schema tag, command echo and result object.
pub fn check_report(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("report is not an object")?;
    if obj.get("schema").and_then(Value::as_str) != Some(SCHEMA) {
        return Err(format!("schema tag must be {SCHEMA:?}"));
    }
    let cmd = obj.get("command").and_then(Value::as_object).ok_or("missing command echo")?;
    if !cmd.get("verb").is_some_and(Value::is_string) {
        return Err("command echo lacks a verb".into());
    }
    match obj.get("result").or_else(|| obj.get("error")) {
        Some(Value::Object(_)) | Some(Value::String(_)) => Ok(()),
        _ => Err("report needs a result object or an error string".into()),
    }
}

/// Runs one command line; nothing is printed except selftest progress.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            let exit = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    return Outcome { exit: Exit::Computed, stdout: text, stderr: String::new() };
                }
                _ => Exit::InvalidInput,
            };
            return Outcome { exit, stdout: String::new(), stderr: text };
        }
    };
    let start = Instant::now();
    let mut stderr = String::new();
    let result = match mode_of(&cli.verb).map(|c| c.mode) {
        Some(Mode::Float) => dispatch::<Complex64>(&cli.verb, &mut stderr),
        _ => dispatch::<GaussianRational>(&cli.verb, &mut stderr),
    };
    let command = echo(&cli.verb);
    let (report, exit) = match result {
        Ok((r, exit)) => (envelope(command, r), exit),
        Err(f) => {
            stderr.push_str(&format!("error: {f}\n"));
            (json!({"schema": SCHEMA, "command": command, "error": f.0}), Exit::InvalidInput)
        }
    };
    stderr.push_str(&format!("elapsed: {:.3}s\n", start.elapsed().as_secs_f64()));
    let mut text = serde_json::to_string_pretty(&report).expect("serializable");
    text.push('\n');
    let output = match &cli.verb {
        Verb::Selftest(a) => a.output.clone(),
        v => mode_of(v).and_then(|c| c.output.clone()),
    };
    if let Some(path) = output {
        if let Err(e) = std::fs::write(&path, &text) {
            stderr.push_str(&format!("error: cannot write {}: {e}\n", path.display()));
            return Outcome { exit: Exit::InvalidInput, stdout: String::new(), stderr };
        }
        text.clear();
    }
    Outcome { exit, stdout: text, stderr }
}
