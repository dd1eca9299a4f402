//! `carlson`: classification, certified bounds, tables, extrema,
//! approximations and the verification suite for the generalized
//! Carlson family.
//!
//! Exit codes: 0 success, 2 verification failure or classifier conflict,
//! 64 usage error.

use std::io::{self, Write};
use std::process::ExitCode;

use carlson_bounds::bounds::{self, BoundFamily};
use carlson_bounds::classifier::{self, ExtremaReport, RegionClass};
use carlson_bounds::oracle::{self, DEFAULT_DIGITS};
use carlson_bounds::verifier::{VerificationReport, Verifier};
use carlson_bounds::{Error, Params64};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

const EXIT_CONFLICT: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Tolerance below which `classify` re-evaluates a sign at high precision.
const NUMERIC_TOL: f64 = 1e-12;

#[derive(Parser, Debug)]
#[command(name = "carlson", version, about = "Certified arccos bounds from the generalized Carlson family")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the monotonicity of f_{a,b} on (0, 1)
    Classify(ParamArgs),
    /// Envelope and per-family bounds at one point
    Bounds(PointArgs),
    /// Bound table on a uniform grid
    Table(TableArgs),
    /// Extremal points and coefficients of the critical-value envelope
    Extrema(ParamArgs),
    /// Midpoint approximation of arccos with a certified radius
    Approx(PointArgs),
    /// Run the full verification suite
    Verify(VerifyArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Oracle digits for reference values
    #[arg(long, env = "CARLSON_PRECISION")]
    precision: Option<u32>,
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    /// Comma-separated family ids, e.g. `carlson,thm2(1/6)`
    #[arg(long)]
    families: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Number of interior points, spaced 1/(grid+1)
    #[arg(long)]
    grid: usize,
    #[arg(long)]
    families: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

/// Failure of a subcommand, mapped onto the exit-code contract.
enum Failure {
    Usage(String),
    Conflict,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Classify(args) => run_classify(&args),
        Command::Bounds(args) => run_bounds(&args),
        Command::Table(args) => run_table(&args),
        Command::Extrema(args) => run_extrema(&args),
        Command::Approx(args) => run_approx(&args),
        Command::Verify(args) => run_verify(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Conflict) => ExitCode::from(EXIT_CONFLICT),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn digits(common: &Common, default: Option<u32>) -> Result<Option<u32>, Failure> {
    match common.precision.or(default) {
        Some(d) => {
            oracle::check_digits(d)?;
            Ok(Some(d))
        }
        None => Ok(None),
    }
}

fn families(list: &Option<String>) -> Result<Vec<BoundFamily>, Failure> {
    match list {
        Some(s) => Ok(bounds::parse_family_list(s)?),
        None => Ok(BoundFamily::defaults()),
    }
}

fn params(args: &ParamArgs) -> Result<Params64, Failure> {
    let p = Params64::new(args.a, args.b);
    if !p.is_finite() {
        return Err(Failure::Usage("a and b must be finite".into()));
    }
    Ok(p)
}

fn emit_json<T: Serialize + ?Sized>(value: &T) -> Outcome {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let mut out = io::stdout().lock();
    writeln!(out, "{text}").map_err(|e| Failure::Usage(e.to_string()))
}

fn emit_csv<T: Serialize>(rows: &[T]) -> Outcome {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    for row in rows {
        w.serialize(row).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    w.flush().map_err(|e| Failure::Usage(e.to_string()))
}

fn emit<J: Serialize + ?Sized, C: Serialize>(format: Format, json: &J, csv_rows: &[C]) -> Outcome {
    match format {
        Format::Json => emit_json(json),
        Format::Csv => emit_csv(csv_rows),
    }
}

#[derive(Serialize)]
struct ClassifyReport {
    a: f64,
    b: f64,
    symbolic_class: RegionClass,
    numeric_class: RegionClass,
    necessary_increasing: bool,
    extrema: Option<ExtremaReport>,
}

#[derive(Serialize)]
struct ClassifyRow {
    a: f64,
    b: f64,
    symbolic_class: RegionClass,
    numeric_class: RegionClass,
    necessary_increasing: bool,
    x1: Option<f64>,
    x2: Option<f64>,
    max_coeff: Option<f64>,
    min_coeff: Option<f64>,
}

fn run_classify(args: &ParamArgs) -> Outcome {
    let p = params(args)?;
    let symbolic = classifier::classify_symbolic(&p);
    let numeric = classifier::classify_numeric(&p, NUMERIC_TOL);
    let report = ClassifyReport {
        a: p.a,
        b: p.b,
        symbolic_class: symbolic,
        numeric_class: numeric,
        necessary_increasing: classifier::necessary_increasing(&p),
        extrema: classifier::extrema_points(&p).ok(),
    };
    let e = report.extrema.as_ref();
    let row = ClassifyRow {
        a: p.a,
        b: p.b,
        symbolic_class: symbolic,
        numeric_class: numeric,
        necessary_increasing: report.necessary_increasing,
        x1: e.and_then(|e| e.x1),
        x2: e.and_then(|e| e.x2),
        max_coeff: e.and_then(|e| e.max_coeff),
        min_coeff: e.and_then(|e| e.min_coeff),
    };
    emit(args.common.format, &report, &[row])?;
    let conflict = numeric == RegionClass::Indeterminate
        || (symbolic != RegionClass::Indeterminate && symbolic != numeric);
    if conflict {
        Err(Failure::Conflict)
    } else {
        Ok(())
    }
}

#[derive(Serialize)]
struct BoundsReport {
    x: f64,
    lower: f64,
    upper: f64,
    lower_family: String,
    upper_family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference: Option<String>,
    families: Vec<bounds::FamilyBounds>,
}

fn run_bounds(args: &PointArgs) -> Outcome {
    let fams = families(&args.families)?;
    let env = bounds::best_envelope(args.x, &fams)?;
    let per_family = if args.x > 0.0 && args.x < 1.0 {
        fams.iter()
            .map(|f| bounds::family_bounds(f, args.x))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    let reference = reference(args.x, digits(&args.common, None)?)?;
    let report = BoundsReport {
        x: args.x,
        lower: env.lower,
        upper: env.upper,
        lower_family: env.lower_family.clone(),
        upper_family: env.upper_family.clone(),
        reference,
        families: per_family,
    };
    match args.common.format {
        Format::Json => emit_json(&report),
        Format::Csv => emit_csv(&[bounds::FamilyBounds {
            family: "envelope".into(),
            lower: Some(env.lower),
            upper: Some(env.upper),
        }]
        .into_iter()
        .chain(report.families)
        .collect::<Vec<_>>()),
    }
}

fn reference(x: f64, digits: Option<u32>) -> Result<Option<String>, Failure> {
    match digits {
        Some(d) => Ok(Some(oracle::arccos_hp_f64(x, d)?.to_string())),
        None => Ok(None),
    }
}

fn run_table(args: &TableArgs) -> Outcome {
    if args.grid < 2 {
        return Err(Failure::Usage("--grid must be at least 2".into()));
    }
    let fams = families(&args.families)?;
    let rows = bounds::bound_table(&bounds::uniform_grid(args.grid), &fams)?;
    emit(args.common.format, &rows, &rows)
}

#[derive(Serialize)]
struct ExtremaOutput {
    a: f64,
    b: f64,
    #[serde(flatten)]
    report: ExtremaReport,
}

fn run_extrema(args: &ParamArgs) -> Outcome {
    let p = params(args)?;
    let out = ExtremaOutput {
        a: p.a,
        b: p.b,
        report: classifier::extrema_points(&p)?,
    };
    match args.common.format {
        Format::Json => emit_json(&out),
        Format::Csv => {
            let r = &out.report;
            emit_csv(&[(p.a, p.b, r.disc_closed, r.disc_quadratic, r.x1, r.x2, r.max_coeff, r.min_coeff)])
        }
    }
}

#[derive(Serialize)]
struct ApproxReport {
    x: f64,
    value: f64,
    radius: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference: Option<String>,
}

fn run_approx(args: &PointArgs) -> Outcome {
    let fams = families(&args.families)?;
    let a = bounds::approx_with(args.x, &fams)?;
    let report = ApproxReport {
        x: args.x,
        value: a.value,
        radius: a.radius,
        reference: reference(args.x, digits(&args.common, None)?)?,
    };
    emit(args.common.format, &report, &[&report])
}

#[derive(Serialize)]
struct VerifyRow<'a> {
    check_id: &'a str,
    samples: usize,
    worst_margin: f64,
    passed: bool,
    witnesses: usize,
}

fn run_verify(args: &VerifyArgs) -> Outcome {
    let d = digits(&args.common, Some(DEFAULT_DIGITS))?.unwrap_or(DEFAULT_DIGITS);
    let reports: Vec<VerificationReport> = Verifier::new(args.seed, d)?.run_suite()?;
    let rows: Vec<VerifyRow> = reports
        .iter()
        .map(|r| VerifyRow {
            check_id: &r.check_id,
            samples: r.samples,
            worst_margin: r.worst_margin,
            passed: r.passed,
            witnesses: r.witnesses.len(),
        })
        .collect();
    emit(args.common.format, &reports, &rows)?;
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Conflict)
    }
}
