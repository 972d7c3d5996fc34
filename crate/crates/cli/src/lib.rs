//! Command-line front end for `intquant`.
//!
//! Every command writes one report to `--out` or stdout. Exit codes: 0 on
//! success, 1 for usage errors, 2 for unusable data, 3 when the requested
//! quantity does not exist (moment, singularity or finiteness failures).
//! `INTQUANT_THREADS` caps the worker pool; 0 or unset means one worker per
//! core. Output is identical for any thread count.

pub mod format;
pub mod input;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use intquant::gap::{delta_surface, gamma_curve, GridRow};
use intquant::inference::{
    consistency_check, es_confidence_interval, mc_coverage_detailed, mc_remainder_decay,
    CoverageSettings, InferenceResult, VarianceSource,
};
use intquant::riskmeasures::{distortion_estimate, distortion_risk, es, parse_measure_spec, rvar, SignedMeasure};
use intquant::variance::VarianceMethod;
use intquant::{parse_dist_spec, EmpiricalDistribution, QuantileModel};

use crate::format::{g12, to_json};
use crate::input::{parse_grid, parse_n_list, read_losses, DataError};

pub const THREADS_ENV: &str = "INTQUANT_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl From<intquant::Error> for CliError {
    fn from(e: intquant::Error) -> Self {
        use intquant::Error::*;
        match e {
            Parse { .. } | Parameter { .. } => CliError::Usage(e.to_string()),
            Data { .. } | SampleSize { .. } => CliError::Data(e.to_string()),
            Domain { .. } | Moment(_) | Singularity(_) | Finiteness(_) => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<DataError> for CliError {
    fn from(e: DataError) -> Self {
        CliError::Data(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "intquant", version, about = "Integrated quantiles, Expected Shortfall and gap functionals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expected Shortfall of a model, or its estimate with a confidence interval from a loss file.
    Es(EsArgs),
    /// Gap curve p -> Γ*_p(F, G) with its bounds.
    Gap(GapArgs),
    /// Difference surface (p, z) -> Δ_{p,z}(F, G) with its bounds.
    Surface(SurfaceArgs),
    /// Monte Carlo coverage of the ES confidence interval.
    McCoverage(CoverageArgs),
    /// Monte Carlo medians of the scaled remainder or of the absolute estimation error.
    McRemainder(RemainderArgs),
    /// Distortion risk measure of a model, or its estimate from a loss file.
    Distortion(DistortionArgs),
    /// Range Value-at-Risk: the average quantile over (p, q).
    Rvar(RvarArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VarianceChoice {
    /// Sample variance of the excesses over the estimated quantile.
    Plugin,
    /// Asymptotic variance of the model given by --f.
    Analytic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Statistic {
    /// sqrt(n) · Γ_p(F, F_n)
    Remainder,
    /// |∫_p^1 F_n⁻¹ − ∫_p^1 F⁻¹|
    Consistency,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write the report to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn probability(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v > 0.0 && v < 1.0 => Ok(v),
        Ok(v) => Err(format!("{v} is outside (0, 1)")),
        Err(_) => Err(format!("'{s}' is not a number")),
    }
}

fn dist(s: &str) -> Result<QuantileModel, String> {
    parse_dist_spec(s).map_err(|e| e.to_string())
}

fn measure(s: &str) -> Result<SignedMeasure, String> {
    parse_measure_spec(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone)]
struct Grid(Vec<f64>);

#[derive(Debug, Clone)]
struct Sizes(Vec<usize>);

fn grid(s: &str) -> Result<Grid, String> {
    parse_grid(s).map(Grid)
}

fn n_list(s: &str) -> Result<Sizes, String> {
    parse_n_list(s).map(Sizes)
}

#[derive(Debug, Args)]
struct EsArgs {
    /// One-column CSV of losses (optional header `loss`).
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Model as name:params (lomax:α,λ | exp:rate | uniform:a,b | normal:μ,σ).
    #[arg(long, value_parser = dist, value_name = "SPEC")]
    f: Option<QuantileModel>,
    /// Level p in (0, 1).
    #[arg(long, value_parser = probability)]
    p: f64,
    /// Confidence level in (0, 1).
    #[arg(long, value_parser = probability, default_value = "0.95")]
    level: f64,
    /// Source of the standard error when --input is given.
    #[arg(long, value_enum, default_value = "plugin")]
    variance: VarianceChoice,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct GapArgs {
    /// First distribution F.
    #[arg(long, value_parser = dist, value_name = "SPEC")]
    f: QuantileModel,
    /// Second distribution G.
    #[arg(long, value_parser = dist, value_name = "SPEC")]
    g: QuantileModel,
    /// Levels as start:stop:step.
    #[arg(long, value_parser = grid, value_name = "GRID")]
    p_grid: Grid,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SurfaceArgs {
    /// First distribution F.
    #[arg(long, value_parser = dist, value_name = "SPEC")]
    f: QuantileModel,
    /// Second distribution G.
    #[arg(long, value_parser = dist, value_name = "SPEC")]
    g: QuantileModel,
    /// Levels as start:stop:step.
    #[arg(long, value_parser = grid, value_name = "GRID")]
    p_grid: Grid,
    /// Cut points as start:stop:step.
    #[arg(long, value_parser = grid, value_name = "GRID")]
    z_grid: Grid,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct CoverageArgs {
    /// Model to sample from.
    #[arg(long, value_parser = dist, value_name = "SPEC")]
    f: QuantileModel,
    /// Sample size per replication.
    #[arg(long)]
    n: usize,
    /// Number of replications (at least 100).
    #[arg(long, default_value = "1000")]
    reps: usize,
    /// Level p in (0, 1).
    #[arg(long, value_parser = probability)]
    p: f64,
    /// Confidence level in (0, 1).
    #[arg(long, value_parser = probability, default_value = "0.95")]
    level: f64,
    /// Random seed.
    #[arg(long, default_value = "0")]
    seed: u64,
    /// Source of the standard error.
    #[arg(long, value_enum, default_value = "analytic")]
    variance: VarianceChoice,
    /// Emit one row per replication.
    #[arg(long)]
    verbose: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct RemainderArgs {
    /// Model to sample from.
    #[arg(long, value_parser = dist, value_name = "SPEC")]
    f: QuantileModel,
    /// Comma-separated sample sizes.
    #[arg(long, value_parser = n_list, value_name = "N,N,...")]
    n_list: Sizes,
    /// Replications per sample size.
    #[arg(long, default_value = "500")]
    reps: usize,
    /// Level p in (0, 1).
    #[arg(long, value_parser = probability)]
    p: f64,
    /// Random seed.
    #[arg(long, default_value = "0")]
    seed: u64,
    /// Statistic whose median is reported.
    #[arg(long, value_enum, default_value = "remainder")]
    statistic: Statistic,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct DistortionArgs {
    /// Measure as atom:p,w;band:a,b,h;... (empty for the zero measure).
    #[arg(long, value_parser = measure, value_name = "SPEC", allow_hyphen_values = true)]
    measure: SignedMeasure,
    /// One-column CSV of losses.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Model to evaluate instead of a loss file.
    #[arg(long, value_parser = dist, value_name = "SPEC")]
    f: Option<QuantileModel>,
    /// Confidence level in (0, 1) for the estimate from --input.
    #[arg(long, value_parser = probability, default_value = "0.95")]
    level: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct RvarArgs {
    /// Model as name:params.
    #[arg(long, value_parser = dist, value_name = "SPEC")]
    f: Option<QuantileModel>,
    /// One-column CSV of losses, used when --f is absent.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Lower level p.
    #[arg(long, value_parser = probability)]
    p: f64,
    /// Upper level q > p.
    #[arg(long, value_parser = probability)]
    q: f64,
    #[command(flatten)]
    output: OutputArgs,
}

/// A finished report ready to be written.
struct Report {
    csv: Vec<Vec<String>>,
    json: String,
    default: Format,
}

impl Report {
    fn render(&self, format: Option<Format>) -> Result<Vec<u8>, CliError> {
        match format.unwrap_or(self.default) {
            Format::Json => Ok(self.json.clone().into_bytes()),
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
                for row in &self.csv {
                    w.write_record(row).map_err(|e| CliError::Data(e.to_string()))?;
                }
                w.into_inner().map_err(|e| CliError::Data(e.to_string()))
            }
        }
    }
}

fn row<const N: usize>(cells: [&str; N]) -> Vec<String> {
    cells.iter().map(|s| s.to_string()).collect()
}

fn single<T: Serialize>(value: &T, header: &[&str], cells: Vec<String>) -> Report {
    Report {
        csv: vec![header.iter().map(|s| s.to_string()).collect(), cells],
        json: to_json(value),
        default: Format::Json,
    }
}

#[derive(Serialize)]
struct ValueReport<'a> {
    quantity: &'a str,
    model: String,
    value: f64,
}

fn value_report(quantity: &str, model: &QuantileModel, value: f64) -> Report {
    let v = ValueReport { quantity, model: model.to_string(), value };
    single(&v, &["quantity", "model", "value"], vec![quantity.into(), v.model.clone(), g12(value)])
}

fn inference_report(r: &InferenceResult) -> Report {
    single(
        r,
        &["estimate", "std_error", "ci_low", "ci_high", "level", "n", "warnings"],
        vec![
            g12(r.estimate),
            g12(r.std_error),
            g12(r.ci_low),
            g12(r.ci_high),
            g12(r.level),
            r.n.to_string(),
            r.warnings.join("; "),
        ],
    )
}

#[derive(Serialize)]
struct JsonRow {
    p: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    z: Option<f64>,
    value: Option<f64>,
    lower: Option<f64>,
    upper: Option<f64>,
    applicable: Option<bool>,
    status: String,
}

fn grid_report(rows: &[GridRow], with_z: bool) -> Report {
    let mut header = vec!["p"];
    if with_z {
        header.push("z");
    }
    header.extend(["value", "lower", "upper", "applicable", "status"]);
    let mut csv = vec![header.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
    let mut json = Vec::with_capacity(rows.len());
    for r in rows {
        let mut cells = vec![g12(r.p)];
        if with_z {
            cells.push(r.z.map(g12).unwrap_or_default());
        }
        let entry = match &r.outcome {
            Ok(g) => {
                cells.extend([
                    g12(g.value),
                    g12(g.lower_bound),
                    g12(g.upper_bound),
                    g.bounds_applicable.to_string(),
                    "ok".into(),
                ]);
                JsonRow {
                    p: r.p,
                    z: r.z,
                    value: Some(g.value),
                    lower: Some(g.lower_bound),
                    upper: Some(g.upper_bound),
                    applicable: Some(g.bounds_applicable),
                    status: "ok".into(),
                }
            }
            Err(e) => {
                let status = format!("error: {e}");
                cells.extend([String::new(), String::new(), String::new(), String::new(), status.clone()]);
                JsonRow { p: r.p, z: r.z, value: None, lower: None, upper: None, applicable: None, status }
            }
        };
        csv.push(cells);
        json.push(entry);
    }
    Report { csv, json: to_json(&json), default: Format::Csv }
}

fn load(path: &Path) -> Result<Vec<f64>, CliError> {
    Ok(read_losses(path)?)
}

fn run_es(a: &EsArgs) -> Result<Report, CliError> {
    match (&a.input, &a.f) {
        (Some(path), model) => {
            let sample = load(path)?;
            let source = match (a.variance, model) {
                (VarianceChoice::Plugin, _) => VarianceSource::PlugIn,
                (VarianceChoice::Analytic, Some(m)) => VarianceSource::Analytic(m),
                (VarianceChoice::Analytic, None) => {
                    return Err(CliError::Usage("--variance analytic needs --f".into()))
                }
            };
            Ok(inference_report(&es_confidence_interval(&sample, a.p, a.level, source)?))
        }
        (None, Some(m)) => Ok(value_report("es", m, es(m, a.p)?)),
        (None, None) => Err(CliError::Usage("es needs --input or --f".into())),
    }
}

fn run_coverage(a: &CoverageArgs) -> Result<Report, CliError> {
    let settings = CoverageSettings {
        n: a.n,
        reps: a.reps,
        p: a.p,
        level: a.level,
        seed: a.seed,
        variance: match a.variance {
            VarianceChoice::Plugin => VarianceMethod::PlugIn,
            VarianceChoice::Analytic => VarianceMethod::TailVariance,
        },
    };
    if a.reps < 100 {
        return Err(CliError::Usage(format!("--reps must be at least 100, got {}", a.reps)));
    }
    if a.n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {}", a.n)));
    }
    let (report, reps) = mc_coverage_detailed(&a.f, &settings)?;
    let variance = match report.variance {
        VarianceMethod::PlugIn => "plug_in",
        _ => "tail_variance",
    };
    if a.verbose {
        #[derive(Serialize)]
        struct Verbose<'a, R, P> {
            report: &'a R,
            replications: &'a P,
        }
        let mut csv = vec![row(["index", "estimate", "ci_low", "ci_high", "covered"])];
        csv.extend(reps.iter().map(|r| {
            vec![r.index.to_string(), g12(r.estimate), g12(r.ci_low), g12(r.ci_high), r.covered.to_string()]
        }));
        return Ok(Report {
            csv,
            json: to_json(&Verbose { report: &report, replications: &reps }),
            default: Format::Json,
        });
    }
    Ok(single(
        &report,
        &["coverage", "reps", "n", "p", "level", "mean_width", "seed", "variance", "true_es"],
        vec![
            g12(report.coverage),
            report.reps.to_string(),
            report.n.to_string(),
            g12(report.p),
            g12(report.level),
            g12(report.mean_width),
            report.seed.to_string(),
            variance.to_string(),
            g12(report.true_es),
        ],
    ))
}

fn run_remainder(a: &RemainderArgs) -> Result<Report, CliError> {
    if a.reps == 0 {
        return Err(CliError::Usage("--reps must be positive".into()));
    }
    let rows = match a.statistic {
        Statistic::Remainder => mc_remainder_decay(&a.f, &a.n_list.0, a.reps, a.p, a.seed)?,
        Statistic::Consistency => consistency_check(&a.f, &a.n_list.0, a.reps, a.p, a.seed)?,
    };
    let mut csv = vec![row(["n", "median"])];
    csv.extend(rows.iter().map(|r| vec![r.n.to_string(), g12(r.median)]));
    Ok(Report { csv, json: to_json(&rows), default: Format::Csv })
}

fn run_distortion(a: &DistortionArgs) -> Result<Report, CliError> {
    match (&a.input, &a.f) {
        (Some(path), _) => {
            let sample = load(path)?;
            Ok(inference_report(&distortion_estimate(&sample, &a.measure, a.level)?))
        }
        (None, Some(m)) => Ok(value_report("distortion", m, distortion_risk(m, &a.measure)?)),
        (None, None) => Err(CliError::Usage("distortion needs --input or --f".into())),
    }
}

fn run_rvar(a: &RvarArgs) -> Result<Report, CliError> {
    if a.q <= a.p {
        return Err(CliError::Usage(format!("--q ({}) must exceed --p ({})", a.q, a.p)));
    }
    let model = match (&a.f, &a.input) {
        (Some(m), _) => m.clone(),
        (None, Some(path)) => QuantileModel::from(EmpiricalDistribution::from_vec(load(path)?)?),
        (None, None) => return Err(CliError::Usage("rvar needs --f or --input".into())),
    };
    Ok(value_report("rvar", &model, rvar(&model, a.p, a.q)?))
}

fn dispatch(command: &Command) -> Result<(Report, Option<Format>, Option<PathBuf>), CliError> {
    let (report, out) = match command {
        Command::Es(a) => (run_es(a)?, &a.output),
        Command::Gap(a) => (grid_report(&gamma_curve(&a.f, &a.g, &a.p_grid.0)?, false), &a.output),
        Command::Surface(a) => (
            grid_report(&delta_surface(&a.f, &a.g, &a.p_grid.0, &a.z_grid.0)?, true),
            &a.output,
        ),
        Command::McCoverage(a) => (run_coverage(a)?, &a.output),
        Command::McRemainder(a) => (run_remainder(a)?, &a.output),
        Command::Distortion(a) => (run_distortion(a)?, &a.output),
        Command::Rvar(a) => (run_rvar(a)?, &a.output),
    };
    Ok((report, out.format, out.out.clone()))
}

/// Worker pool sized from `INTQUANT_THREADS`.
fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV}='{v}' is not a non-negative integer")))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn execute(command: &Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    let pool = thread_pool()?;
    let (report, format, out) = pool.install(|| dispatch(command))?;
    let bytes = report.render(format)?;
    match out {
        Some(path) => std::fs::write(&path, bytes)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(&bytes)
            .map_err(|e| CliError::Data(format!("cannot write to stdout: {e}"))),
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().ansi().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    1
                }
            };
        }
    };
    match execute(&cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("intquant").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn help_exits_zero_for_every_command() {
        for cmd in ["es", "gap", "surface", "mc-coverage", "mc-remainder", "distortion", "rvar"] {
            let (code, out, _) = call(&[cmd, "--help"]);
            assert_eq!(code, 0, "{cmd}");
            assert!(out.contains("--out") && out.contains("--format"), "{cmd}");
        }
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&[]).0, 1);
        assert_eq!(call(&["es", "--p", "1.5", "--f", "exp:1"]).0, 1);
        assert_eq!(call(&["gap", "--f", "gamma:1", "--g", "exp:1", "--p-grid", "0.1:0.9:0.1"]).0, 1);
        assert_eq!(call(&["es", "--p", "0.5"]).0, 1);
        assert_eq!(call(&["rvar", "--f", "exp:1", "--p", "0.8", "--q", "0.2"]).0, 1);
    }

    #[test]
    fn numeric_errors() {
        let (code, _, err) = call(&["es", "--f", "lomax:1,1", "--p", "0.5"]);
        assert_eq!(code, 3);
        assert!(err.contains("moment"));
        let (code, _, _) = call(&["mc-coverage", "--f", "lomax:2,1", "--n", "100", "--reps", "100", "--p", "0.9"]);
        assert_eq!(code, 3);
        let (code, _, _) = call(&["distortion", "--f", "exp:1", "--measure", "band:0.5,1,1"]);
        assert_eq!(code, 3);
    }

    #[test]
    fn data_errors() {
        let (code, _, err) = call(&["es", "--input", "/nonexistent/x.csv", "--p", "0.5"]);
        assert_eq!(code, 2);
        assert!(err.contains("/nonexistent/x.csv"));
    }

    #[test]
    fn model_values() {
        let (code, out, _) = call(&["es", "--f", "lomax:2,1", "--p", "0.75"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"value\": 3"), "{out}");
        let (_, out, _) = call(&["rvar", "--f", "uniform:0,1", "--p", "0.2", "--q", "0.8", "--format", "csv"]);
        assert_eq!(out, "quantity,model,value\nrvar,\"uniform:0,1\",0.5\n");
        let (_, out, _) = call(&["distortion", "--f", "uniform:0,1", "--measure", "", "--format", "csv"]);
        assert!(out.ends_with(",0\n"), "{out}");
    }

    #[test]
    fn grid_commands() {
        let (code, out, err) = call(&["gap", "--f", "lomax:10,1", "--g", "lomax:8,1", "--p-grid", "0.1:0.9:0.2"]);
        assert_eq!(code, 0, "{err}");
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "p,value,lower,upper,applicable,status");
        assert_eq!(lines.len(), 6);
        assert!(lines[1].starts_with("0.1,") && lines[1].ends_with(",true,ok"));
        let (code, out, _) = call(&[
            "surface", "--f", "lomax:10,1", "--g", "lomax:12,1", "--p-grid", "0.25:0.75:0.25", "--z-grid", "0:1:0.5",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some("p,z,value,lower,upper,applicable,status"));
        assert_eq!(out.lines().count(), 10);
        let (code, out, _) = call(&[
            "mc-remainder", "--f", "uniform:0,1", "--n-list", "50,100", "--reps", "5", "--p", "0.5",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 3);
    }
}
