//! Command-line front end: CSV curves, figure presets, single evaluations
//! and verification runs.
//!
//! Exit codes: 0 on success, 1 on invalid input or I/O failure (and for a
//! failed verification), 2 when a curve was written but some points did not
//! converge.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::mie::SphereMedium;
use crate::oracle::{run_suite, CheckReport, Suite};
use crate::rates::{
    f_asymptotic_far, f_asymptotic_near, EvalPoint, MethodRegistry, Orientation, SeriesOptions,
    SeriesResult,
};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_UNCONVERGED: i32 = 2;

/// Environment variable capping the worker threads (0 = one per core).
pub const THREADS_ENV: &str = "EMRATE_THREADS";

pub const CSV_HEADER: &str = "zeta_a,f,f_asym_far,f_asym_near,terms_used,tail_estimate,converged";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Grid {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrientationArg {
    Perp,
    Par,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Perp => Orientation::Perpendicular,
            OrientationArg::Par => Orientation::Parallel,
        }
    }
}

/// Everything that defines one curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSpec {
    pub medium: SphereMedium,
    pub orientation: Orientation,
    pub zeta_min: f64,
    pub zeta_max: f64,
    pub points: usize,
    pub grid: Grid,
    pub tol: f64,
    pub lmax_cap: usize,
    pub include_asymptotes: bool,
    /// Whether the contact asymptote is written (when it applies at all).
    pub include_near: bool,
}

impl CurveSpec {
    pub fn validate(&self) -> Result<()> {
        let q = self.medium.q;
        if self.points < 2 {
            return Err(Error::InvalidParameter(format!(
                "a curve needs at least 2 points, got {}",
                self.points
            )));
        }
        if !(self.zeta_min > q && self.zeta_min.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "zeta_min = {} must exceed q = {q}",
                self.zeta_min
            )));
        }
        if !(self.zeta_max > self.zeta_min && self.zeta_max.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "zeta_max = {} must exceed zeta_min = {}",
                self.zeta_max, self.zeta_min
            )));
        }
        self.series_options().validate()
    }

    pub fn series_options(&self) -> SeriesOptions {
        SeriesOptions {
            tol: self.tol,
            lmax_cap: self.lmax_cap,
        }
    }

    /// Grid abscissae, ending exactly on `zeta_max`.
    pub fn abscissae(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    return self.zeta_max;
                }
                let t = i as f64 / (n - 1) as f64;
                match self.grid {
                    Grid::Linear => self.zeta_min + (self.zeta_max - self.zeta_min) * t,
                    Grid::Log => {
                        (self.zeta_min.ln() + (self.zeta_max / self.zeta_min).ln() * t).exp()
                    }
                }
            })
            .collect()
    }

    fn near_applies(&self) -> bool {
        self.include_asymptotes && self.include_near && self.medium.epsilon.im > 0.0
    }
}

/// Parameters of preset curve `id`.
pub fn figure_spec(id: u8) -> Result<CurveSpec> {
    let (q, eps, orientation, near) = match id {
        1 => (
            0.5,
            Complex64::new(1.5, 0.0),
            Orientation::Perpendicular,
            false,
        ),
        2 => (
            0.0,
            Complex64::new(1.5, 0.5),
            Orientation::Perpendicular,
            true,
        ),
        3 => (
            0.5,
            Complex64::new(1.5, 0.5),
            Orientation::Perpendicular,
            true,
        ),
        4 => (0.5, Complex64::new(1.5, 0.5), Orientation::Parallel, true),
        other => {
            return Err(Error::InvalidParameter(format!(
                "figure id {other} does not exist (expected 1-4)"
            )))
        }
    };
    Ok(CurveSpec {
        medium: SphereMedium::new(q, eps)?,
        orientation,
        zeta_min: q + 0.05,
        zeta_max: 12.0,
        points: 400,
        grid: Grid::Linear,
        tol: 1e-10,
        lmax_cap: 200,
        include_asymptotes: true,
        include_near: near,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow {
    pub zeta_a: f64,
    pub result: SeriesResult,
    pub far: Option<f64>,
    pub near: Option<f64>,
}

/// Evaluates every grid point; rows come back in grid order.
pub fn evaluate_curve(spec: &CurveSpec) -> Result<Vec<CurveRow>> {
    spec.validate()?;
    let registry = MethodRegistry::default();
    let series = registry.get("series")?;
    let opts = spec.series_options();
    spec.abscissae()
        .par_iter()
        .map(|&zeta| {
            let p = EvalPoint::new(zeta)?;
            let result = series.evaluate(p, &spec.medium, spec.orientation, &opts)?;
            let far = if spec.include_asymptotes {
                Some(f_asymptotic_far(p, &spec.medium, spec.orientation)?)
            } else {
                None
            };
            let near = if spec.near_applies() {
                Some(f_asymptotic_near(p, &spec.medium, spec.orientation)?)
            } else {
                None
            };
            Ok(CurveRow {
                zeta_a: zeta,
                result,
                far,
                near,
            })
        })
        .collect()
}

/// Fixed-width scientific notation with 12 significant digits; `-0` prints as `0`.
pub fn format_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

fn format_optional(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

pub fn render_csv(rows: &[CurveRow]) -> String {
    let mut out = String::with_capacity(96 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let r = &row.result;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            format_float(row.zeta_a),
            format_float(r.f),
            format_optional(row.far),
            format_optional(row.near),
            r.terms_used,
            format_float(r.tail_estimate),
            r.converged
        );
    }
    out
}

#[derive(Debug, Parser)]
#[command(
    name = "emrate",
    version,
    about = "Decay-rate correction of an atom near a half-space of dielectric spheres"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write f over a grid of distances as CSV.
    Curve(CurveArgs),
    /// Write one of the preset curves (1-4) as CSV.
    Figure(FigureArgs),
    /// Evaluate f at a single distance.
    Eval(EvalArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
    /// List the evaluation methods accepted by `eval --method`.
    Methods,
}

#[derive(Debug, Args)]
struct MediumArgs {
    /// Size parameter q = k a (0 selects the point-scatterer limit).
    #[arg(long)]
    q: f64,
    /// Real part of the sphere permittivity.
    #[arg(long, allow_hyphen_values = true)]
    eps_re: f64,
    /// Imaginary part of the sphere permittivity.
    #[arg(long, default_value_t = 0.0)]
    eps_im: f64,
    #[arg(long, value_enum, default_value_t = OrientationArg::Perp)]
    orientation: OrientationArg,
    /// Relative truncation tolerance of the multipole series.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Largest multipole order summed.
    #[arg(long, default_value_t = 200)]
    lmax_cap: usize,
}

impl MediumArgs {
    fn medium(&self) -> Result<SphereMedium> {
        SphereMedium::new(self.q, Complex64::new(self.eps_re, self.eps_im))
    }
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[command(flatten)]
    medium: MediumArgs,
    #[arg(long)]
    zeta_min: f64,
    #[arg(long)]
    zeta_max: f64,
    #[arg(long, default_value_t = 400)]
    points: usize,
    #[arg(long, value_enum, default_value_t = Grid::Linear)]
    grid: Grid,
    /// Fill the asymptote columns.
    #[arg(long)]
    asymptotes: bool,
    /// Output file (standard output when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FigureArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    id: u8,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    medium: MediumArgs,
    #[arg(long)]
    zeta_a: f64,
    /// Evaluation method (see `emrate methods`).
    #[arg(long, default_value = "series")]
    method: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// One of integrals, rates, asymptotics, all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Write the reports as JSON.
    #[arg(long)]
    json_out: Option<PathBuf>,
    /// Replace a check tolerance, as CHECK_ID=VALUE (repeatable).
    #[arg(long = "tol-override", value_name = "CHECK_ID=VALUE")]
    tol_overrides: Vec<String>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_FAILURE
            } else {
                EXIT_OK
            };
        }
    };
    let pool = match thread_pool() {
        Ok(pool) => pool,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_FAILURE;
        }
    };
    pool.install(|| match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_FAILURE
        }
    })
}

fn thread_pool() -> std::result::Result<rayon::ThreadPool, String> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("{THREADS_ENV} = '{v}' is not a thread count"))?,
        _ => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| e.to_string())
}

fn dispatch(command: Command) -> anyhow::Result<i32> {
    match command {
        Command::Curve(args) => {
            let spec = CurveSpec {
                medium: args.medium.medium()?,
                orientation: args.medium.orientation.into(),
                zeta_min: args.zeta_min,
                zeta_max: args.zeta_max,
                points: args.points,
                grid: args.grid,
                tol: args.medium.tol,
                lmax_cap: args.medium.lmax_cap,
                include_asymptotes: args.asymptotes,
                include_near: true,
            };
            cmd_curve(&spec, args.out.as_deref())
        }
        Command::Figure(args) => cmd_curve(&figure_spec(args.id)?, args.out.as_deref()),
        Command::Eval(args) => cmd_eval(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Methods => {
            for m in MethodRegistry::default().iter() {
                println!("{:8} {}", m.name(), m.description());
            }
            Ok(EXIT_OK)
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    use anyhow::Context;
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .context("cannot write to standard output")
        }
    }
}

fn cmd_curve(spec: &CurveSpec, out: Option<&Path>) -> anyhow::Result<i32> {
    let rows = evaluate_curve(spec)?;
    write_output(out, &render_csv(&rows))?;
    let unconverged = rows.iter().filter(|r| !r.result.converged).count();
    if unconverged > 0 {
        eprintln!(
            "warning: {unconverged} of {} points did not reach the requested tolerance",
            rows.len()
        );
        return Ok(EXIT_UNCONVERGED);
    }
    Ok(EXIT_OK)
}

fn plain(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

fn cmd_eval(args: &EvalArgs) -> anyhow::Result<i32> {
    let medium = args.medium.medium()?;
    let point = EvalPoint::new(args.zeta_a)?;
    let opts = SeriesOptions {
        tol: args.medium.tol,
        lmax_cap: args.medium.lmax_cap,
    };
    opts.validate()?;
    let registry = MethodRegistry::default();
    let r = registry.get(&args.method)?.evaluate(
        point,
        &medium,
        args.medium.orientation.into(),
        &opts,
    )?;
    println!(
        "f={} terms={} tail={:e} converged={}",
        plain(r.f),
        r.terms_used,
        plain(r.tail_estimate),
        r.converged
    );
    Ok(EXIT_OK)
}

fn parse_overrides(raw: &[String]) -> Result<BTreeMap<String, f64>> {
    raw.iter()
        .map(|item| {
            let (id, value) = item.split_once('=').ok_or_else(|| {
                Error::InvalidParameter(format!("override '{item}' is not CHECK_ID=VALUE"))
            })?;
            let value: f64 = value.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("override '{item}' has no numeric value"))
            })?;
            Ok((id.trim().to_string(), value))
        })
        .collect()
}

pub fn render_table(reports: &[CheckReport]) -> String {
    let width = reports
        .iter()
        .map(|r| r.check_id.len())
        .max()
        .unwrap_or(8)
        .max(8);
    let mut out = format!(
        "{:width$}  {:>10}  {:>10}  {:>7}  {}\n",
        "check", "error", "tolerance", "samples", "status"
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{:width$}  {:>10.3e}  {:>10.3e}  {:>7}  {}",
            r.check_id,
            r.max_rel_err,
            r.tolerance,
            r.samples,
            if r.passed { "ok" } else { "FAILED" }
        );
        if !r.passed {
            let _ = writeln!(out, "{:width$}  worst case: {}", "", r.worst_case);
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    let _ = writeln!(out, "{} checks, {failed} failed", reports.len());
    out
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<i32> {
    if let Err(e) = args.suite.parse::<Suite>() {
        eprintln!("error: {e}");
        eprintln!(
            "usage: emrate verify --suite <{}> [--json-out <PATH>]",
            Suite::NAMES.join("|")
        );
        return Ok(EXIT_FAILURE);
    }
    let overrides = parse_overrides(&args.tol_overrides)?;
    let reports = run_suite(&args.suite, Some(&overrides))?;
    print!("{}", render_table(&reports));
    if let Some(path) = &args.json_out {
        let mut json = serde_json::to_string_pretty(&reports)?;
        json.push('\n');
        write_output(Some(path), &json)?;
    }
    Ok(if reports.iter().all(|r| r.passed) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}
