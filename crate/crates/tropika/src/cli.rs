//! The `tropika` command line.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_complex::Complex64;
use tropika_core::rr::ContinuousDim;
use tropika_core::{
    continuous_dim, jensen_zero_locate, legendre_from_polygon, parse_rational, phi_generators, rr_check,
    simplex_map, solve_divisor, theta_decompose, theta_eval, theta_reconstruct, theta_window, trop_padic, trop_zeros,
    ComplexPoly, CpFunction, Divisor, HpScalar, IntPolygon, Prime, Rational, ValuedSeries,
};

use crate::error::{Error, Result};
use crate::experiment::{self, Report};
use crate::format::{
    from_json, to_json, ContinuousDimJson, CpJson, DivisorJson, PaJson, RrReportJson, ThetaDecompositionJson,
};
use crate::io::{emit, read_text};
use crate::plot::{csv_table, function_csv, to_f64, PlotDocument, Polyline};

#[derive(Debug, Parser)]
#[command(name = "tropika", version, about = "Exact tropical geometry on the periodic orbits C_p")]
pub struct Cli {
    /// Output file (written atomically); stdout when absent.
    #[arg(short, long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; defaults to the extension of --out, then to the command's own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Functions and divisors on C_p.
    #[command(subcommand)]
    Cp(CpCommand),
    /// The theta function and theta decompositions.
    #[command(subcommand)]
    Theta(ThetaCommand),
    /// Sections, dimensions and the Riemann-Roch check.
    #[command(subcommand)]
    Rr(RrCommand),
    /// Tropical zeros of a polynomial from its coefficient valuations.
    Newton(NewtonArgs),
    /// Tropicalization of a complex polynomial by circle averages.
    Jensen(JensenArgs),
    /// The convex function of a polygon with integer abscissae.
    Polygon(PolygonArgs),
    /// Seeded batches with a pass/fail report.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Subcommand)]
pub enum CpCommand {
    /// Divisor of a function.
    Divisor { input: PathBuf },
    /// Function with a given principal divisor.
    Solve {
        input: PathBuf,
        /// Value added after normalizing to 0 at the first support point.
        #[arg(long, allow_hyphen_values = true)]
        constant: Option<String>,
    },
    /// Frobenius action on a function.
    Frobenius {
        #[arg(long, value_enum)]
        kind: FrobeniusKind,
        #[arg(long, allow_hyphen_values = true)]
        param: String,
        input: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FrobeniusKind {
    /// Fr^a_μ, μ a positive rational.
    A,
    /// Fr^r_h, h a positive element of H_p.
    R,
    /// Fr_h.
    Abs,
}

#[derive(Debug, Subcommand)]
pub enum ThetaCommand {
    /// θ(λ).
    Eval {
        #[arg(short = 'p', long = "p", visible_alias = "prime")]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Canonical theta decomposition of a function.
    Decompose { input: PathBuf },
    /// Function described by a theta decomposition.
    Reconstruct { input: PathBuf },
    /// θ on a window.
    Plot {
        #[arg(short = 'p', long = "p", visible_alias = "prime")]
        p: u32,
        /// `a,b` with 0 < a < b.
        #[arg(long, default_value = "1/9,27")]
        window: String,
        #[arg(long)]
        log_x: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum RrCommand {
    /// Normalized dimensions of the filtration levels.
    Dim {
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        nmax: u32,
    },
    /// Continuous Riemann-Roch check.
    Check {
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        nmax: u32,
    },
    /// The generators φ_a of E_{N,p}.
    Phis {
        #[arg(short = 'N', long = "n")]
        n: i64,
        #[arg(short = 'p', long = "p", visible_alias = "prime")]
        p: u32,
    },
    /// The simplex map into E_{N,p}.
    Hmap {
        #[arg(short = 'N', long = "n")]
        n: i64,
        #[arg(short = 'p', long = "p", visible_alias = "prime")]
        p: u32,
        /// `t0,t1,...` with 0 < t1 < ... < ε.
        #[arg(long, allow_hyphen_values = true)]
        ts: String,
    },
}

#[derive(Debug, Args)]
pub struct NewtonArgs {
    #[arg(short = 'p', long = "p", visible_alias = "prime")]
    pub p: u32,
    /// Comma-separated `exponent:valuation` pairs.
    #[arg(long, allow_hyphen_values = true)]
    pub terms: String,
    /// `lo,hi`; defaults to `[0, M]` with every non-negative zero interior.
    #[arg(long)]
    pub window: Option<String>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct JensenArgs {
    /// Coefficients, highest degree first; complex ones as `re+imi`.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    #[arg(long, default_value = "0,3")]
    pub interval: String,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Profile points for the plot.
    #[arg(long, default_value_t = 121)]
    pub samples: usize,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PolygonArgs {
    /// Comma-separated `x:y` corners, x an integer.
    #[arg(long, allow_hyphen_values = true)]
    pub vertices: String,
    #[arg(long, default_value = "0,4", allow_hyphen_values = true)]
    pub window: String,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    pub name: ExperimentName,
    #[arg(long, default_value_t = 200)]
    pub cases: u64,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Primes to cover (repeatable); 2, 3, 5, 7 when absent.
    #[arg(short = 'p', long = "p", visible_alias = "prime")]
    pub primes: Vec<u32>,
    #[arg(long, default_value = "4")]
    pub alpha: String,
    #[arg(long, default_value_t = 6)]
    pub nmax: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExperimentName {
    Roundtrip,
    ThetaLaws,
    RrLimit,
    NewtonJensen,
}

/// Parses `argv`, runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn format_of(cli: &Cli, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = cli
        .format
        .or_else(|| {
            let ext = cli.out.as_deref()?.extension()?.to_str()?.to_ascii_lowercase();
            match ext.as_str() {
                "json" => Some(Format::Json),
                "csv" => Some(Format::Csv),
                "svg" => Some(Format::Svg),
                "txt" => Some(Format::Text),
                _ => None,
            }
        })
        .unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Error::Usage(format!("format {f:?} is not available for this command")))
    }
}

fn prime(p: u32) -> Result<Prime> {
    Prime::new(p).map_err(|e| Error::Usage(e.to_string()))
}

fn rational(s: &str) -> Result<Rational> {
    parse_rational(s.trim()).map_err(|e| Error::Usage(format!("{s:?}: {e}")))
}

fn rational_pair(s: &str) -> Result<(Rational, Rational)> {
    match s.split(',').collect::<Vec<_>>()[..] {
        [a, b] => Ok((rational(a)?, rational(b)?)),
        _ => Err(Error::Usage(format!("expected `a,b`, got {s:?}"))),
    }
}

fn float_pair(s: &str) -> Result<(f64, f64)> {
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| Error::Usage(format!("not a number: {t:?}")));
    match s.split(',').collect::<Vec<_>>()[..] {
        [a, b] => Ok((parse(a)?, parse(b)?)),
        _ => Err(Error::Usage(format!("expected `a,b`, got {s:?}"))),
    }
}

/// `x:y,x:y,...`
fn pairs(s: &str) -> Result<Vec<(i64, Rational)>> {
    s.split(',')
        .map(|item| {
            let (a, b) = item.split_once(':').ok_or_else(|| Error::Usage(format!("expected `n:v`, got {item:?}")))?;
            let n = a.trim().parse::<i64>().map_err(|_| Error::Usage(format!("not an integer: {a:?}")))?;
            Ok((n, rational(b)?))
        })
        .collect()
}

/// `a`, `bi`, `a+bi` or `a-bi`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Usage(format!("not a complex number: {s:?}"));
    let num = |u: &str| u.parse::<f64>().map_err(|_| bad());
    let Some(body) = t.strip_suffix('i') else { return Ok(Complex64::new(num(&t)?, 0.0)) };
    // split at the last sign that is not leading and not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let im = |u: &str| match u {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => num(u),
    };
    match split {
        Some(i) => Ok(Complex64::new(num(&body[..i])?, im(&body[i..])?)),
        None => Ok(Complex64::new(0.0, im(body)?)),
    }
}

fn load_function(path: &Path) -> Result<CpFunction> {
    from_json::<CpJson>(&read_text(path)?)?.to_function()
}

fn load_divisor(path: &Path) -> Result<Divisor> {
    from_json::<DivisorJson>(&read_text(path)?)?.to_divisor()
}

fn divisor_csv(d: &Divisor) -> Result<String> {
    csv_table(
        &["lambda", "k", "value"],
        d.iter().map(|(l, k)| vec![l.to_string(), k.to_string(), (l * k.to_rational()).to_string()]),
    )
}

fn divisor_text(d: &Divisor) -> String {
    let pts: Vec<String> = d.iter().map(|(l, k)| format!("{k}{{{l}}}")).collect();
    let body = if pts.is_empty() { "0".to_string() } else { pts.join(" + ") };
    format!("{body}\ndeg = {}, chi = {}\n", d.degree(), d.chi())
}

fn function_plot(title: &str, f: &CpFunction, log_x: bool) -> String {
    let mut doc = PlotDocument::new(title, "lambda", "f(lambda)").log_x(log_x);
    doc.push(Polyline::from_function("", f.restriction()));
    doc.to_svg()
}

fn emit_function(cli: &Cli, f: &CpFunction, title: &str) -> Result<()> {
    let text = match format_of(cli, Format::Json, &[Format::Json, Format::Csv, Format::Svg, Format::Text])? {
        Format::Json => to_json(&CpJson::from(f))?,
        Format::Csv => function_csv(f.restriction())?,
        Format::Svg => function_plot(title, f, false),
        Format::Text => {
            let knots: Vec<String> = f.restriction().knots().iter().map(|(x, y)| format!("({x}, {y})")).collect();
            let slopes: Vec<String> = f.slopes().iter().map(ToString::to_string).collect();
            format!("p = {}\nknots: {}\nslopes: {}\n", f.prime(), knots.join(", "), slopes.join(", "))
        }
    };
    emit(cli.out.as_deref(), &text)
}

fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Cp(c) => cp(cli, c).map(|_| 0),
        Command::Theta(c) => theta(cli, c).map(|_| 0),
        Command::Rr(c) => rr(cli, c),
        Command::Newton(a) => newton(cli, a).map(|_| 0),
        Command::Jensen(a) => jensen(cli, a).map(|_| 0),
        Command::Polygon(a) => polygon(cli, a).map(|_| 0),
        Command::Experiment(a) => run_experiment(cli, a),
    }
}

fn cp(cli: &Cli, c: &CpCommand) -> Result<()> {
    match c {
        CpCommand::Divisor { input } => {
            let d = load_function(input)?.divisor();
            let text = match format_of(cli, Format::Json, &[Format::Json, Format::Csv, Format::Text])? {
                Format::Json => to_json(&DivisorJson::from(&d))?,
                Format::Csv => divisor_csv(&d)?,
                _ => divisor_text(&d),
            };
            emit(cli.out.as_deref(), &text)
        }
        CpCommand::Solve { input, constant } => {
            let d = load_divisor(input)?;
            let c = constant.as_deref().map(rational).transpose()?;
            let f = solve_divisor(&d, c.as_ref())?;
            emit_function(cli, &f, "solution")
        }
        CpCommand::Frobenius { kind, param, input } => {
            let f = load_function(input)?;
            let p = f.prime();
            let q = rational(param)?;
            let g = match kind {
                FrobeniusKind::A => f.frobenius_arith(&q)?,
                FrobeniusKind::R => f.frobenius_rel(&HpScalar::from_rational(p, &q)?)?,
                FrobeniusKind::Abs => f.frobenius_abs(&HpScalar::from_rational(p, &q)?)?,
            };
            emit_function(cli, &g, "Frobenius image")
        }
    }
}

fn theta(cli: &Cli, c: &ThetaCommand) -> Result<()> {
    match c {
        ThetaCommand::Eval { p, lambda } => {
            let p = prime(*p)?;
            let x = rational(lambda)?;
            let v = theta_eval(p, &x)?;
            let text = match format_of(cli, Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => to_json(&serde_json::json!({
                    "p": p.get(),
                    "lambda": crate::format::RationalJson::from(&x),
                    "value": crate::format::RationalJson::from(&v),
                }))?,
                _ => format!("{v}\n"),
            };
            emit(cli.out.as_deref(), &text)
        }
        ThetaCommand::Decompose { input } => {
            let f = load_function(input)?;
            let d = theta_decompose(&f)?;
            let text = match format_of(cli, Format::Json, &[Format::Json, Format::Csv])? {
                Format::Csv => {
                    let rows = d
                        .positives
                        .iter()
                        .map(|t| ("+", t))
                        .chain(d.negatives.iter().map(|t| ("-", t)))
                        .map(|(s, t)| vec![s.to_string(), t.h.to_string(), t.mu.to_string()]);
                    csv_table(&["sign", "h", "mu"], rows)?
                }
                _ => to_json(&ThetaDecompositionJson::from(&d))?,
            };
            emit(cli.out.as_deref(), &text)
        }
        ThetaCommand::Reconstruct { input } => {
            let d = from_json::<ThetaDecompositionJson>(&read_text(input)?)?.to_decomposition()?;
            emit_function(cli, &theta_reconstruct(&d)?, "reconstruction")
        }
        ThetaCommand::Plot { p, window, log_x } => {
            let p = prime(*p)?;
            let (a, b) = rational_pair(window)?;
            let f = theta_window(p, &a, &b)?;
            let text = match format_of(cli, Format::Svg, &[Format::Svg, Format::Csv, Format::Json])? {
                Format::Csv => function_csv(&f)?,
                Format::Json => to_json(&PaJson::from(&f))?,
                _ => {
                    let mut doc = PlotDocument::new(format!("theta, p = {p}"), "lambda", "theta(lambda)").log_x(*log_x);
                    doc.push(Polyline::from_function(format!("p = {p}"), &f));
                    doc.to_svg()
                }
            };
            emit(cli.out.as_deref(), &text)
        }
    }
}

fn dim_text(cd: &ContinuousDim) -> String {
    let seq: Vec<String> = cd.levels.iter().map(|l| l.normalized_lower.to_string()).collect();
    let mut s = format!("sequence {}\n", seq.join(", "));
    for l in &cd.levels {
        let dim = if l.dim_lower == l.dim_upper { l.dim_lower.to_string() } else { format!("[{}, {}]", l.dim_lower, l.dim_upper) };
        s.push_str(&format!("n = {}: dim {dim}, deviation {}{}\n", l.n, l.deviation, if l.exact { "" } else { " (bounds)" }));
    }
    s.push_str(&format!("limit {}\n", cd.limit));
    s
}

fn rr(cli: &Cli, c: &RrCommand) -> Result<i32> {
    match c {
        RrCommand::Dim { input, nmax } => {
            let cd = continuous_dim(&load_divisor(input)?, *nmax)?;
            let text = match format_of(cli, Format::Text, &[Format::Text, Format::Json, Format::Csv])? {
                Format::Json => to_json(&ContinuousDimJson::from(&cd))?,
                Format::Csv => csv_table(
                    &["n", "dim_lower", "dim_upper", "normalized_lower", "normalized_upper", "deviation", "exact"],
                    cd.levels.iter().map(|l| {
                        vec![
                            l.n.to_string(),
                            l.dim_lower.to_string(),
                            l.dim_upper.to_string(),
                            l.normalized_lower.to_string(),
                            l.normalized_upper.to_string(),
                            l.deviation.to_string(),
                            l.exact.to_string(),
                        ]
                    }),
                )?,
                _ => dim_text(&cd),
            };
            emit(cli.out.as_deref(), &text)?;
            Ok(0)
        }
        RrCommand::Check { input, nmax } => {
            let r = rr_check(&load_divisor(input)?, *nmax)?;
            let text = match format_of(cli, Format::Text, &[Format::Text, Format::Json])? {
                Format::Json => to_json(&RrReportJson::from(&r))?,
                _ => format!(
                    "{}: Dim H0(D) - Dim H0(-D) in [{}, {}], deg D = {}, tolerance {}\n",
                    if r.holds { "holds" } else { "fails" },
                    r.lhs_lower,
                    r.lhs_upper,
                    r.degree,
                    r.bound
                ),
            };
            emit(cli.out.as_deref(), &text)?;
            Ok(if r.holds { 0 } else { 1 })
        }
        RrCommand::Phis { n, p } => {
            let p = prime(*p)?;
            let gens = phi_generators(*n, p)?;
            let text = match format_of(cli, Format::Svg, &[Format::Svg, Format::Json])? {
                Format::Json => to_json(&gens.iter().map(CpJson::from).collect::<Vec<_>>())?,
                _ => {
                    let mut doc = PlotDocument::new(format!("generators of E_{{{n},{p}}}"), "lambda", "phi_a");
                    for (a, g) in gens.iter().enumerate() {
                        doc.push(Polyline::from_function(format!("a = {}", a + 1), g.restriction()));
                    }
                    doc.to_svg()
                }
            };
            emit(cli.out.as_deref(), &text)?;
            Ok(0)
        }
        RrCommand::Hmap { n, p, ts } => {
            let p = prime(*p)?;
            let ts: Vec<Rational> = ts.split(',').map(rational).collect::<Result<_>>()?;
            let h = simplex_map(&ts, *n, p)?;
            emit_function(cli, &h, &format!("simplex map, N = {n}, p = {p}"))?;
            Ok(0)
        }
    }
}

fn newton(cli: &Cli, a: &NewtonArgs) -> Result<()> {
    let p = prime(a.p)?;
    let s = ValuedSeries::new(pairs(&a.terms)?)?;
    let (lo, hi) = match &a.window {
        Some(w) => rational_pair(w)?,
        None => s.natural_domain(),
    };
    let f = trop_padic(&s, &lo, &hi)?;
    let zeros = trop_zeros(&f)?;
    // slopes run from -max(n) at -∞ to -min(n) at +∞
    let n_max = s.terms().map(|(n, _)| n).max().unwrap_or(0);
    let n_min = s.terms().map(|(n, _)| n).min().unwrap_or(0);
    let slopes = f.slopes();
    let below = &slopes[0] + Rational::from_integer(n_max.into());
    let above = -Rational::from_integer(n_min.into()) - &slopes[slopes.len() - 1];
    if below > Rational::from_integer(0.into()) || above > Rational::from_integer(0.into()) {
        eprintln!("note: zeros outside [{lo}, {hi}]: {below} below, {above} above");
    }
    if let Some(path) = &a.svg {
        let mut doc = PlotDocument::new(format!("Newton tropicalization, p = {p}"), "x", "tau(f)(x)");
        doc.push(Polyline::from_function("", &f));
        doc.markers = zeros.iter().map(|z| to_f64(&z.x)).collect();
        crate::io::write_atomic(path, doc.to_svg().as_bytes())?;
    }
    let text = match format_of(cli, Format::Text, &[Format::Text, Format::Json, Format::Csv])? {
        Format::Json => to_json(&serde_json::json!({
            "p": p.get(),
            "function": PaJson::from(&f),
            "zeros": zeros.iter().map(|z| serde_json::json!({
                "x": crate::format::RationalJson::from(&z.x),
                "multiplicity": crate::format::RationalJson::from(&z.multiplicity),
            })).collect::<Vec<_>>(),
        }))?,
        Format::Csv => csv_table(&["x", "multiplicity"], zeros.iter().map(|z| vec![z.x.to_string(), z.multiplicity.to_string()]))?,
        _ => {
            let items: Vec<String> = zeros.iter().map(|z| format!("x={} ({})", z.x, z.multiplicity)).collect();
            format!("{}\n", if items.is_empty() { "no zeros".to_string() } else { items.join(", ") })
        }
    };
    emit(cli.out.as_deref(), &text)
}

fn jensen(cli: &Cli, a: &JensenArgs) -> Result<()> {
    let coeffs: Vec<Complex64> = a.poly.split(',').map(parse_complex).collect::<Result<_>>()?;
    let f = ComplexPoly::from_descending(coeffs)?;
    let (lo, hi) = float_pair(&a.interval)?;
    let found = jensen_zero_locate(&f, lo, hi, a.tol)?;
    if let Some(path) = &a.svg {
        let profile = tropika_core::tropicalize::trop_complex_profile(&f, lo, hi, a.samples.max(2), a.tol.min(1e-6))?;
        let mut doc = PlotDocument::new("Jensen tropicalization", "x = -log r", "tau(f)(x)");
        doc.push(Polyline::sampled("", profile));
        doc.markers = found.zeros.iter().map(|z| z.x).collect();
        crate::io::write_atomic(path, doc.to_svg().as_bytes())?;
    }
    let text = match format_of(cli, Format::Text, &[Format::Text, Format::Json, Format::Csv])? {
        Format::Json => to_json(&serde_json::json!({
            "zeros": found.zeros.iter().map(|z| serde_json::json!({ "x": z.x, "multiplicity": z.multiplicity })).collect::<Vec<_>>(),
            "max_nodes": found.max_nodes,
            "tol": a.tol,
        }))?,
        Format::Csv => csv_table(&["x", "multiplicity"], found.zeros.iter().map(|z| vec![format!("{}", z.x), z.multiplicity.to_string()]))?,
        _ => {
            let items: Vec<String> = found.zeros.iter().map(|z| format!("x={:.9} ({})", z.x, z.multiplicity)).collect();
            format!("{}\n", if items.is_empty() { "no zeros".to_string() } else { items.join(", ") })
        }
    };
    emit(cli.out.as_deref(), &text)
}

fn polygon(cli: &Cli, a: &PolygonArgs) -> Result<()> {
    let poly = IntPolygon::new(pairs(&a.vertices)?.into_iter().map(|(x, y)| (BigInt::from(x), y)))?;
    let (lo, hi) = rational_pair(&a.window)?;
    let f = legendre_from_polygon(&poly, &lo, &hi)?;
    let text = match format_of(cli, Format::Json, &[Format::Json, Format::Csv, Format::Svg, Format::Text])? {
        Format::Csv => function_csv(&f)?,
        Format::Svg => {
            let mut doc = PlotDocument::new("polygon support function", "lambda", "value");
            doc.push(Polyline::from_function("", &f));
            doc.to_svg()
        }
        Format::Text => {
            let knots: Vec<String> = f.knots().iter().map(|(x, y)| format!("({x}, {y})")).collect();
            format!("{}\n", knots.join(", "))
        }
        _ => to_json(&PaJson::from(&f))?,
    };
    emit(cli.out.as_deref(), &text)
}

fn run_experiment(cli: &Cli, a: &ExperimentArgs) -> Result<i32> {
    let primes: Vec<Prime> = if a.primes.is_empty() {
        [2, 3, 5, 7].map(|p| Prime::new(p).expect("prime")).to_vec()
    } else {
        a.primes.iter().map(|p| prime(*p)).collect::<Result<_>>()?
    };
    let report: Report = match a.name {
        ExperimentName::Roundtrip => experiment::roundtrip(&primes, a.cases, a.seed),
        ExperimentName::ThetaLaws => experiment::theta_laws(&primes, a.cases, a.seed),
        ExperimentName::RrLimit => experiment::rr_limit(primes[0], &rational(&a.alpha)?, a.nmax, a.seed)?,
        ExperimentName::NewtonJensen => experiment::newton_jensen(a.cases, a.seed),
    };
    let text = match format_of(cli, Format::Json, &[Format::Json, Format::Text])? {
        Format::Text => report.summary(),
        _ => to_json(&report)?,
    };
    emit(cli.out.as_deref(), &text)?;
    if cli.out.is_some() || cli.format != Some(Format::Text) {
        eprint!("{}", report.summary());
    }
    Ok(if report.passed { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropika_core::int;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(parse_complex("-2i").unwrap(), Complex64::new(0.0, -2.0));
        assert_eq!(parse_complex("1-i").unwrap(), Complex64::new(1.0, -1.0));
        assert_eq!(parse_complex("1e-3+2.5e+1i").unwrap(), Complex64::new(1e-3, 25.0));
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn pair_lists() {
        assert_eq!(pairs("2:0,1:1,0:3").unwrap(), vec![(2, int(0)), (1, int(1)), (0, int(3))]);
        assert!(pairs("2:0,1").is_err());
    }
}
