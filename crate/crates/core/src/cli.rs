//! Command-line front end.
//!
//! Exit status: 0 on success, 1 for configuration or usage errors, 2 for
//! model or inversion failures, 3 for I/O errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::config::{check_laplace_grid, ParamsSource, RunConfig};
use crate::curves::{format_float, pressure_curve, write_curve, OutputFormat};
use crate::error::{Error, Result};
use crate::inversion::{check_order, StehfestScheme};
use crate::model::{checked_assembly, TriplePorosityParams};

pub const DEFAULT_CURVE_STEM: &str = "curve";
pub const DEFAULT_LAPLACE_PATH: &str = "laplace.csv";

pub const LAPLACE_HEADER: &str =
    "u,m1,m2,m3,m4,m5,m6,alpha1,alpha2,alpha3,A1,A2,A3,B1,B2,B3,D1,D2,D3,pw_bar";

const CLASSIC: [f64; 3] = [1.0, 1.0, 1.0];

#[derive(Debug, Parser)]
#[command(
    name = "fracwell",
    version,
    about = "Wellbore pressure curves for triple-porosity reservoirs with fractional-order flow"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pressure and Bourdet derivative on the configured time grid.
    Curve(CommonArgs),
    /// One curve per (beta_m, beta_f, beta_v) triple, plus the classic case.
    Sweep(CommonArgs),
    /// Laplace-space solution (m-terms, roots, coefficients) per u.
    Laplace(LaplaceArgs),
    /// Dimensionless groups and scale factors from a [physical] block.
    Dimensionless(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// TOML run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Output path; overrides [output] path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// csv or json; overrides [output] format.
    #[arg(long, value_parser = parse_format)]
    pub format: Option<OutputFormat>,
    /// Even Stehfest order in 2..=20; overrides [inversion] stehfest_n.
    #[arg(long)]
    pub stehfest_n: Option<usize>,
    /// No summary on standard error.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Args)]
pub struct LaplaceArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Laplace arguments, comma separated; overrides [laplace] u.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub u: Vec<f64>,
}

fn parse_format(s: &str) -> std::result::Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status. Diagnostics go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command. `Ok` carries the exit status for runs that
/// finish with partial failures (a sweep with rejected triples).
pub fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Curve(args) => {
            let cfg = load(args)?;
            cmd_curve(&cfg, args)?;
            Ok(0)
        }
        Command::Sweep(args) => {
            let cfg = load(args)?;
            let report = cmd_sweep(&cfg, args)?;
            Ok(if report.failed.is_empty() { 0 } else { 2 })
        }
        Command::Laplace(args) => {
            let cfg = load(&args.common)?;
            cmd_laplace(&cfg, args)?;
            Ok(0)
        }
        Command::Dimensionless(args) => {
            let cfg = load(args)?;
            cmd_dimensionless(&cfg, args)?;
            Ok(0)
        }
    }
}

fn load(args: &CommonArgs) -> Result<RunConfig> {
    let mut cfg = RunConfig::from_path(&args.config)?;
    if let Some(n) = args.stehfest_n {
        check_order(n).map_err(|e| Error::Config(format!("--stehfest-n: {e}")))?;
        cfg.inversion.stehfest_n = n;
    }
    if let Some(format) = args.format {
        cfg.output.format = format;
    }
    if let Some(out) = &args.out {
        cfg.output.path = Some(out.clone());
    }
    Ok(cfg)
}

fn scheme(cfg: &RunConfig) -> Result<StehfestScheme> {
    StehfestScheme::new(cfg.inversion.stehfest_n).map_err(|e| Error::Config(e.to_string()))
}

fn curve_path(cfg: &RunConfig) -> PathBuf {
    cfg.output.path.clone().unwrap_or_else(|| {
        PathBuf::from(format!(
            "{DEFAULT_CURVE_STEM}.{}",
            cfg.output.format.extension()
        ))
    })
}

fn summary(quiet: bool, line: &str) {
    if !quiet {
        // one write per line so concurrent runs do not interleave
        let _ = std::io::stderr().write_all(format!("{line}\n").as_bytes());
    }
}

/// Writes the pressure curve for the configured parameters.
pub fn cmd_curve(cfg: &RunConfig, args: &CommonArgs) -> Result<PathBuf> {
    let start = Instant::now();
    let scheme = scheme(cfg)?;
    let grid = cfg.grid.times().map_err(|e| Error::Config(e.to_string()))?;
    let points = pressure_curve(&cfg.params, &grid, &scheme, cfg.inversion.smoothing)?;
    let path = curve_path(cfg);
    write_curve(&points, cfg.output.format, &path)?;
    summary(
        args.quiet,
        &format!(
            "curve: {} points, Stehfest n = {}, {:.3} s -> {}",
            points.len(),
            scheme.order(),
            start.elapsed().as_secs_f64(),
            path.display()
        ),
    );
    Ok(path)
}

/// Outcome of a sweep: files written and triples that failed.
#[derive(Debug, Default)]
pub struct SweepReport {
    pub written: Vec<PathBuf>,
    pub failed: Vec<([f64; 3], Error)>,
}

/// The sweep's triples with the classic case appended when missing.
pub fn sweep_triples(cfg: &RunConfig) -> Vec<[f64; 3]> {
    let mut triples = cfg.sweep.clone().unwrap_or_default();
    if !triples.contains(&CLASSIC) {
        triples.push(CLASSIC);
    }
    triples
}

/// `base` with `_bm{β_m}_bf{β_f}_bv{β_v}` inserted before the extension.
pub fn sweep_file_name(base: &Path, betas: [f64; 3], format: OutputFormat) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| DEFAULT_CURVE_STEM.to_string());
    let ext = base
        .extension()
        .map(|e| e.to_string_lossy().into_owned())
        .unwrap_or_else(|| format.extension().to_string());
    let name = format!("{stem}_bm{}_bf{}_bv{}.{ext}", betas[0], betas[1], betas[2]);
    base.with_file_name(name)
}

pub fn cmd_sweep(cfg: &RunConfig, args: &CommonArgs) -> Result<SweepReport> {
    if cfg.sweep.is_none() {
        return Err(Error::Config("sweep needs a [sweep] betas list".into()));
    }
    let scheme = scheme(cfg)?;
    let grid = cfg.grid.times().map_err(|e| Error::Config(e.to_string()))?;
    let base = curve_path(cfg);
    let mut report = SweepReport::default();

    for betas in sweep_triples(cfg) {
        let start = Instant::now();
        let params = cfg.params.with_orders(betas[0], betas[1], betas[2]);
        let path = sweep_file_name(&base, betas, cfg.output.format);
        let outcome = params
            .validate()
            .and_then(|_| pressure_curve(&params, &grid, &scheme, cfg.inversion.smoothing))
            .and_then(|points| write_curve(&points, cfg.output.format, &path));
        match outcome {
            Ok(()) => {
                summary(
                    args.quiet,
                    &format!(
                        "sweep: betas {betas:?}, {} points, Stehfest n = {}, {:.3} s -> {}",
                        grid.len(),
                        scheme.order(),
                        start.elapsed().as_secs_f64(),
                        path.display()
                    ),
                );
                report.written.push(path);
            }
            // an unwritable destination stops the whole sweep
            Err(e @ Error::Io { .. }) => return Err(e),
            Err(e) => {
                eprintln!("sweep: betas {betas:?} rejected: {e}");
                report.failed.push((betas, e));
            }
        }
    }
    Ok(report)
}

/// One CSV row of the Laplace-space solution at `u`.
pub fn laplace_row(params: &TriplePorosityParams, u: f64) -> Result<String> {
    let asm = checked_assembly(params, u)?;
    let m = &asm.mterms;
    let opt = |x: Option<f64>| x.map(format_float).unwrap_or_default();
    let mut fields = vec![format_float(u)];
    fields.extend([m.m1, m.m2, m.m3, m.m4, m.m5, m.m6].map(format_float));
    fields.extend(asm.roots.alpha.map(format_float));
    fields.extend(asm.a_coefficients().map(opt));
    fields.extend(asm.b_coefficients().map(opt));
    fields.extend(asm.d_coefficients().map(opt));
    fields.push(format_float(asm.pressure));
    Ok(fields.join(","))
}

pub fn cmd_laplace(cfg: &RunConfig, args: &LaplaceArgs) -> Result<PathBuf> {
    let start = Instant::now();
    if cfg.output.format != OutputFormat::Csv {
        return Err(Error::Config("laplace output is CSV only".into()));
    }
    let u_grid = if args.u.is_empty() {
        cfg.laplace_u
            .clone()
            .ok_or_else(|| Error::Config("laplace needs --u or a [laplace] u list".into()))?
    } else {
        args.u.clone()
    };
    check_laplace_grid(&u_grid)?;

    let mut out = String::new();
    out.push_str(LAPLACE_HEADER);
    out.push('\n');
    for &u in &u_grid {
        let row = laplace_row(&cfg.params, u)?;
        out.push_str(&row);
        out.push('\n');
    }
    // [output] path names the curve file; only --out redirects this table
    let path = args
        .common
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_LAPLACE_PATH));
    fs::write(&path, out).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    summary(
        args.common.quiet,
        &format!(
            "laplace: {} rows, {:.3} s -> {}",
            u_grid.len(),
            start.elapsed().as_secs_f64(),
            path.display()
        ),
    );
    Ok(path)
}

/// The `dimensionless` report: a `[model]` table that can be fed back as a
/// configuration, and a `[scales]` table with the conversion factors.
pub fn dimensionless_report(cfg: &RunConfig) -> Result<String> {
    let ParamsSource::Physical { scaling, .. } = &cfg.source else {
        return Err(Error::Config(
            "dimensionless needs a [physical] block".into(),
        ));
    };
    let p = &cfg.params;
    let mut s = String::from("[model]\n");
    for (key, value) in [
        ("omega_f", p.omega_f),
        ("omega_v", p.omega_v),
        ("kappa_f", p.kappa_f),
        ("kappa_v", p.kappa_v),
        ("lambda_mf", p.lambda_mf),
        ("lambda_mv", p.lambda_mv),
        ("lambda_fv", p.lambda_fv),
        ("beta_m", p.beta_m),
        ("beta_f", p.beta_f),
        ("beta_v", p.beta_v),
    ] {
        let _ = writeln!(s, "{key} = {}", format_float(value));
    }
    s.push_str("\n[scales]\n");
    for (key, value) in [
        ("omega_m", scaling.omega_m()),
        ("kappa_m", scaling.kappa_m()),
        ("t_d_per_second", scaling.time_scale),
        ("p_d_per_pascal", scaling.pressure_scale),
    ] {
        let _ = writeln!(s, "{key} = {}", format_float(value));
    }
    Ok(s)
}

pub fn cmd_dimensionless(cfg: &RunConfig, args: &CommonArgs) -> Result<()> {
    let report = dimensionless_report(cfg)?;
    // [output] path names the curve file; only --out redirects the report
    match &args.out {
        Some(path) => fs::write(path, &report).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        _ => {
            print!("{report}");
            Ok(())
        }
    }
}
