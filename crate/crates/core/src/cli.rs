//! Command-line front end.
//!
//! [`run`] parses arguments, dispatches to the library and renders the result; the binary only
//! forwards its output and exit status. Exit codes: 0 success or pass, 1 usage error,
//! 2 failed verification, 3 exact-method budget exceeded.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::error::Error;
use crate::majorization::compare;
use crate::occupancy::{
    exact_distribution, expectation_closed_form, simulate, ExactMethod, OccupancyDistribution,
};
use crate::prob::{validate, ExperimentConfig, ProbVector};
use crate::rng;
use crate::schur::{
    dominance_check, dominance_sweep, maximize_expectation, schur_check, verify_monotonicity,
    DominanceReport, DominanceStatus, ScalarField, SearchMethod, DEVIATION_TOLERANCE,
};
use crate::identities::verify_identities;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "occupancy", version, about = "Occupied-box distributions, majorization and Schur checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Tolerance for pass/fail decisions (default 1e-9; `verify conjecture` uses 1e-6).
    #[arg(long, global = true, value_parser = parse_tolerance)]
    pub tolerance: Option<f64>,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form expected number of occupied boxes.
    Expectation {
        #[arg(long, value_parser = parse_vector)]
        p: ProbVector<f64>,
        #[arg(long)]
        balls: usize,
    },
    /// pmf of the number of occupied boxes.
    Dist(DistArgs),
    /// Majorization comparison of two vectors.
    Compare {
        #[arg(long, value_parser = parse_vector)]
        a: ProbVector<f64>,
        #[arg(long, value_parser = parse_vector)]
        b: ProbVector<f64>,
    },
    /// CDF dominance of the occupied-box count for a pair of vectors.
    Dominance {
        #[arg(long, value_parser = parse_vector)]
        p: ProbVector<f64>,
        #[arg(long, value_parser = parse_vector)]
        q: ProbVector<f64>,
        #[arg(long)]
        balls: usize,
        #[arg(long, value_enum, default_value_t = DominanceMethod::Dp)]
        method: DominanceMethod,
    },
    /// Schur condition on random interior points.
    SchurCheck {
        #[arg(long, value_enum)]
        field: FieldChoice,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        balls: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verification harnesses.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long, value_parser = parse_vector)]
    pub p: ProbVector<f64>,
    #[arg(long)]
    pub balls: usize,
    #[arg(long, value_enum, default_value_t = DistMethod::Dp)]
    pub method: DistMethod,
    /// Monte Carlo trials (mc only).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: Option<u64>,
    /// Monte Carlo seed (mc only).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Monte Carlo worker shards (mc only); results do not depend on it.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..1025))]
    pub shards: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub target: VerifyTarget,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub balls: u64,
    /// Generated pairs (monotonicity, dominance).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub pairs: Option<u64>,
    /// Ascent iterations (conjecture).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub iters: Option<u64>,
    /// Random-search samples (conjecture) or random vectors (identities).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistMethod {
    Dp,
    Ie,
    Brute,
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DominanceMethod {
    Dp,
    Ie,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldChoice {
    OccupancyPhi,
    NegOccupancyPhi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    Conjecture,
    Monotonicity,
    Dominance,
    Identities,
}

impl From<DominanceMethod> for ExactMethod {
    fn from(m: DominanceMethod) -> Self {
        match m {
            DominanceMethod::Dp => ExactMethod::Dp,
            DominanceMethod::Ie => ExactMethod::InclusionExclusion,
        }
    }
}

/// Parses `0.5,0.25,1/4` style literals; fractions are divided at parse time.
pub fn parse_vector(s: &str) -> Result<ProbVector<f64>, String> {
    let entries = s
        .split(',')
        .map(|part| parse_entry(part.trim()))
        .collect::<Result<Vec<f64>, String>>()?;
    validate(&entries).map_err(|e| e.to_string())
}

fn parse_entry(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
            let den: f64 = den.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
            if den == 0.0 {
                return Err(format!("zero denominator in `{s}`"));
            }
            num / den
        }
        None => s.parse().map_err(|_| format!("`{s}` is not a number"))?,
    };
    if !value.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(value)
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if t <= 0.0 || !t.is_finite() {
        return Err("must be positive and finite".to_string());
    }
    Ok(t)
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, stdout: String::new(), stderr: message.into() }
    }
}

/// A rendered report plus its verification verdict, if any.
struct Emitted {
    body: String,
    verdict: Option<(bool, String)>,
}

pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome::usage(text)
            };
        }
    };
    let emitted = match dispatch(&cli) {
        Ok(emitted) => emitted,
        Err(Error::BudgetExceeded { method, detail }) => {
            return Outcome {
                code: EXIT_BUDGET,
                stdout: String::new(),
                stderr: format!(
                    "error: {method} budget exceeded: {detail}\nhint: use `dist --method mc` for large instances\n"
                ),
            };
        }
        Err(e) => return Outcome::usage(format!("error: {e}\n")),
    };

    let mut stderr = String::new();
    let mut code = EXIT_OK;
    if let Some((pass, summary)) = &emitted.verdict {
        writeln!(stderr, "{} {summary}", if *pass { "PASS" } else { "FAIL" }).unwrap();
        if !pass {
            code = EXIT_FAILED;
        }
    }
    let stdout = match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &emitted.body) {
                return Outcome::usage(format!("error: cannot write {}: {e}\n", path.display()));
            }
            String::new()
        }
        None => emitted.body,
    };
    Outcome { code, stdout, stderr }
}

fn dispatch(cli: &Cli) -> crate::Result<Emitted> {
    let format = cli.format;
    let tolerance = cli.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    match &cli.command {
        Command::Expectation { p, balls } => {
            let value = ExpectationRecord {
                n: p.len(),
                balls: *balls,
                expectation: expectation_closed_form(p, *balls),
            };
            Ok(plain(render(&value, format)))
        }
        Command::Dist(args) => dist(args, format),
        Command::Compare { a, b } => {
            let verdict = compare(a, b, crate::Scalar::lit(<f64 as crate::Scalar>::ORDER_TOLERANCE))?;
            Ok(plain(render(&verdict, format)))
        }
        Command::Dominance { p, q, balls, method } => {
            let report = dominance_check(p, q, *balls, (*method).into(), tolerance)?;
            let body = match format {
                Format::Csv => dominance_csv(&report),
                _ => render(&report, format),
            };
            let verdict = match report.status {
                DominanceStatus::NotApplicable => None,
                status => Some((
                    status == DominanceStatus::Pass,
                    format!("dominance min CDF gap {:e} (tolerance {tolerance:e})", report.min_gap),
                )),
            };
            Ok(Emitted { body, verdict })
        }
        Command::SchurCheck { field, n, balls, samples, seed } => {
            let n = *n as usize;
            let f = match field {
                FieldChoice::OccupancyPhi => ScalarField::<f64>::occupancy_phi(n, *balls),
                FieldChoice::NegOccupancyPhi => ScalarField::<f64>::neg_occupancy_phi(n, *balls),
            };
            let mut report = schur_check(&f, *samples as usize, &mut rng::seeded(*seed))?;
            if let Some(t) = cli.tolerance {
                report.tolerance = t;
                report.pass = report.min_condition >= -t;
            }
            let summary = format!(
                "schur-check {} min condition {:e} over {} pairs",
                report.field, report.min_condition, report.pairs_tested
            );
            Ok(Emitted { body: render(&report, format), verdict: Some((report.pass, summary)) })
        }
        Command::Verify(args) => verify(args, cli.tolerance, format),
    }
}

fn dist(args: &DistArgs, format: Format) -> crate::Result<Emitted> {
    if args.method != DistMethod::Mc {
        for (given, flag) in [
            (args.trials.is_some(), "--trials"),
            (args.seed.is_some(), "--seed"),
            (args.shards.is_some(), "--shards"),
        ] {
            if given {
                return Err(Error::invalid("method", format!("{flag} requires --method mc")));
            }
        }
    }
    let method = match args.method {
        DistMethod::Dp => ExactMethod::Dp,
        DistMethod::Ie => ExactMethod::InclusionExclusion,
        DistMethod::Brute => ExactMethod::BruteForce,
        DistMethod::Mc => {
            let cfg = ExperimentConfig::new(args.balls)
                .with_trials(args.trials.unwrap_or(100_000))
                .with_seed(args.seed.unwrap_or(0))
                .with_shards(args.shards.unwrap_or(1) as usize);
            let e = simulate(&args.p, &cfg)?;
            let body = match format {
                Format::Csv => e.to_csv(),
                _ => render(&e, format),
            };
            return Ok(plain(body));
        }
    };
    let d = exact_distribution(&args.p, args.balls, method)?;
    Ok(plain(render_distribution(&d, format)))
}

fn verify(args: &VerifyArgs, tolerance: Option<f64>, format: Format) -> crate::Result<Emitted> {
    let n = args.n as usize;
    let balls = args.balls as usize;
    let mut stream = rng::seeded(args.seed);
    let tol = tolerance.unwrap_or(DEFAULT_TOLERANCE);
    let (body, pass, summary) = match args.target {
        VerifyTarget::Conjecture => {
            if args.pairs.is_some() {
                return Err(Error::invalid("pairs", "not used by `verify conjecture`"));
            }
            let iters = args.iters.unwrap_or(500) as usize;
            let samples = args.trials.unwrap_or(100_000) as usize;
            let pg = maximize_expectation::<f64>(n, balls, SearchMethod::ProjectedGradient, iters, args.seed)?
                .with_tolerance(tolerance.unwrap_or(DEVIATION_TOLERANCE));
            let rs = maximize_expectation::<f64>(n, balls, SearchMethod::RandomSearch, samples, args.seed)?;
            let pass = pg.pass && rs.pass;
            let summary = format!(
                "conjecture max deviation {:e}, random-search excess {:e}",
                pg.max_deviation,
                rs.expectation_best - rs.expectation_uniform
            );
            let report = ConjectureVerification { projected_gradient: pg, random_search: rs, pass };
            (render(&report, format), pass, summary)
        }
        VerifyTarget::Monotonicity => {
            if args.iters.is_some() || args.trials.is_some() {
                return Err(Error::invalid("pairs", "`verify monotonicity` takes --pairs only"));
            }
            let f = ScalarField::<f64>::occupancy_phi(n, balls);
            let pairs = args.pairs.unwrap_or(1000) as usize;
            let report = verify_monotonicity(&f, pairs, tol, &mut stream)?;
            let summary = format!("monotonicity min margin {:e} over {pairs} pairs", report.min_margin);
            (render(&report, format), report.pass, summary)
        }
        VerifyTarget::Dominance => {
            if args.iters.is_some() || args.trials.is_some() {
                return Err(Error::invalid("pairs", "`verify dominance` takes --pairs only"));
            }
            let pairs = args.pairs.unwrap_or(500) as usize;
            let sweep = dominance_sweep::<f64, _>(n, balls, pairs, ExactMethod::Dp, tol, &mut stream)?;
            let summary = format!("dominance min CDF gap {:e} over {pairs} pairs", sweep.min_gap);
            (render(&sweep, format), sweep.pass, summary)
        }
        VerifyTarget::Identities => {
            if args.iters.is_some() || args.pairs.is_some() {
                return Err(Error::invalid("trials", "`verify identities` takes --trials only"));
            }
            let vectors = args.trials.unwrap_or(200) as usize;
            let report = verify_identities::<f64, _>(n, balls, vectors, tol, &mut stream)?;
            let summary = format!(
                "identities backend gap {:e}, mean gap {:e}, tail-sum gap {:e}",
                report.max_backend_gap, report.max_mean_gap, report.max_tail_sum_gap
            );
            (render(&report, format), report.pass, summary)
        }
    };
    Ok(Emitted { body, verdict: Some((pass, summary)) })
}

#[derive(Debug, Serialize)]
struct ExpectationRecord {
    n: usize,
    balls: usize,
    expectation: f64,
}

#[derive(Debug, Serialize)]
struct ConjectureVerification {
    projected_gradient: crate::schur::ConjectureReport<f64>,
    random_search: crate::schur::ConjectureReport<f64>,
    pass: bool,
}

fn plain(body: String) -> Emitted {
    Emitted { body, verdict: None }
}

fn render_distribution(d: &OccupancyDistribution<f64>, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", d.to_json()),
        Format::Csv => d.to_csv(),
        Format::Table => {
            let mut out = format!("n = {}, N = {}, mean = {}\n", d.n(), d.balls(), d.mean());
            writeln!(out, "{:>4}  {:<24}  P(X <= k)", "k", "P(X = k)").unwrap();
            for (k, (x, c)) in d.reported_pmf().iter().zip(d.cdf()).enumerate() {
                writeln!(out, "{k:>4}  {:<24}  {}", x, c).unwrap();
            }
            out
        }
    }
}

fn dominance_csv(r: &DominanceReport<f64>) -> String {
    let mut out = String::from("k,cdf_p,cdf_q,gap\n");
    for (k, ((a, b), g)) in r.cdf_p.iter().zip(&r.cdf_q).zip(&r.gaps).enumerate() {
        writeln!(out, "{k},{a},{b},{g}").unwrap();
    }
    out
}

/// JSON is pretty-printed; table and CSV flatten the top-level fields to `key, value` rows.
fn render<R: Serialize>(report: &R, format: Format) -> String {
    let value = serde_json::to_value(report).expect("report serializes");
    match format {
        Format::Json => {
            format!("{}\n", serde_json::to_string_pretty(&value).expect("value serializes"))
        }
        Format::Csv => {
            let mut out = String::from("field,value\n");
            for (key, v) in flatten(&value) {
                writeln!(out, "{key},{}", csv_escape(&v)).unwrap();
            }
            out
        }
        Format::Table => {
            let rows = flatten(&value);
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            let mut out = String::new();
            for (key, v) in rows {
                writeln!(out, "{key:<width$}  {v}").unwrap();
            }
            out
        }
    }
}

fn flatten(value: &Value) -> Vec<(String, String)> {
    let mut rows = Vec::new();
    flatten_into("", value, &mut rows);
    rows
}

fn flatten_into(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten_into(&key, v, rows);
            }
        }
        Value::Array(items) if items.iter().all(|v| !v.is_object()) => {
            let joined: Vec<String> = items.iter().map(scalar_text).collect();
            rows.push((prefix.to_string(), format!("[{}]", joined.join(" "))));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten_into(&format!("{prefix}[{i}]"), v, rows);
            }
        }
        other => rows.push((prefix.to_string(), scalar_text(other))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            format!("[{}]", items.iter().map(scalar_text).collect::<Vec<_>>().join(" "))
        }
        other => other.to_string(),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
