//! Time-domain pressure curves, Bourdet derivatives and their CSV/JSON
//! forms.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inversion::{invert_curve, StehfestScheme};
use crate::model::{wellbore_pressure_laplace, TriplePorosityParams};

pub const CSV_HEADER: &str = "t_D,p_w,dp_w_dlnt";

/// One sample of a drawdown curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    #[serde(rename = "t_D")]
    pub t_d: f64,
    pub p_w: f64,
    /// dp_w/d ln t_D, absent where it cannot be formed.
    #[serde(rename = "dp_w_dlnt")]
    pub dp_dlnt: Option<f64>,
}

impl CurvePoint {
    pub fn new(t_d: f64, p_w: f64, dp_dlnt: Option<f64>) -> Self {
        Self { t_d, p_w, dp_dlnt }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!(
                "format must be csv or json, got {other:?}"
            ))),
        }
    }
}

/// Log-spaced times from `t_min` to `t_max`: t_min·10^(i/points_per_decade)
/// while below `t_max`, then `t_max` itself. Doubling `points_per_decade`
/// reproduces every point of the coarser grid bit for bit.
pub fn log_time_grid(t_min: f64, t_max: f64, points_per_decade: usize) -> Result<Vec<f64>> {
    if !(t_min.is_finite() && t_min > 0.0 && t_max.is_finite() && t_max > t_min) {
        return Err(Error::domain(format!(
            "time grid needs 0 < t_min < t_max, got t_min = {t_min}, t_max = {t_max}"
        )));
    }
    if points_per_decade == 0 {
        return Err(Error::domain("points_per_decade must be at least 1"));
    }
    let lo = t_min.log10();
    let hi = t_max.log10();
    let ppd = points_per_decade as f64;
    // lattice points closer than this (in decades) to t_max are dropped
    let end_gap = 1e-9;

    let mut grid = vec![t_min];
    let mut i = 1usize;
    loop {
        let exponent = lo + i as f64 / ppd;
        if exponent >= hi - end_gap {
            break;
        }
        grid.push(10f64.powf(exponent));
        i += 1;
    }
    grid.push(t_max);
    Ok(grid)
}

/// Bourdet derivative at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    /// Set at the two ends, where only a one-sided difference exists.
    pub one_sided: bool,
}

/// dp/d ln t by Bourdet's weighted difference. For interior points the
/// neighbours are the nearest points at least `smoothing` apart in ln t
/// (the outermost points when the window runs off the grid):
///
/// d_i = [Δp_L·Δ_R/Δ_L + Δp_R·Δ_L/Δ_R] / (Δ_L + Δ_R)
///
/// The first and last points get one-sided differences.
pub fn bourdet_derivative(grid: &[f64], values: &[f64], smoothing: f64) -> Result<Vec<Derivative>> {
    if grid.len() != values.len() {
        return Err(Error::domain(format!(
            "grid has {} points but there are {} values",
            grid.len(),
            values.len()
        )));
    }
    if grid.len() < 3 {
        return Err(Error::domain("Bourdet derivative needs at least 3 points"));
    }
    if !(smoothing.is_finite() && smoothing >= 0.0) {
        return Err(Error::domain(format!(
            "smoothing window must be finite and >= 0, got {smoothing}"
        )));
    }
    if grid[0] <= 0.0 || grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain(
            "grid must be positive and strictly increasing",
        ));
    }

    let ln: Vec<f64> = grid.iter().map(|t| t.ln()).collect();
    let n = grid.len();
    let slope = |a: usize, b: usize| (values[b] - values[a]) / (ln[b] - ln[a]);

    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if i == 0 || i == n - 1 {
            let (a, b) = if i == 0 {
                (0, right_neighbour(&ln, 0, smoothing))
            } else {
                (left_neighbour(&ln, n - 1, smoothing), n - 1)
            };
            out.push(Derivative {
                value: slope(a, b),
                one_sided: true,
            });
            continue;
        }
        let j = left_neighbour(&ln, i, smoothing);
        let k = right_neighbour(&ln, i, smoothing);
        let dl = ln[i] - ln[j];
        let dr = ln[k] - ln[i];
        let dpl = values[i] - values[j];
        let dpr = values[k] - values[i];
        let value = (dpl * dr / dl + dpr * dl / dr) / (dl + dr);
        out.push(Derivative {
            value,
            one_sided: false,
        });
    }
    Ok(out)
}

fn left_neighbour(ln: &[f64], i: usize, window: f64) -> usize {
    (0..i).rev().find(|&j| ln[i] - ln[j] >= window).unwrap_or(0)
}

fn right_neighbour(ln: &[f64], i: usize, window: f64) -> usize {
    (i + 1..ln.len())
        .find(|&k| ln[k] - ln[i] >= window)
        .unwrap_or(ln.len() - 1)
}

/// p_w at every grid time, one Stehfest inversion per point.
pub fn pressure_values(
    params: &TriplePorosityParams,
    grid: &[f64],
    scheme: &StehfestScheme,
) -> Result<Vec<f64>> {
    params.validate()?;
    invert_curve(|u| wellbore_pressure_laplace(params, u), grid, scheme)
}

/// Pressure and Bourdet derivative on `grid`. With fewer than three points
/// the derivative is left out.
pub fn pressure_curve(
    params: &TriplePorosityParams,
    grid: &[f64],
    scheme: &StehfestScheme,
    smoothing: f64,
) -> Result<Vec<CurvePoint>> {
    let values = pressure_values(params, grid, scheme)?;
    assemble_curve(grid, &values, smoothing)
}

/// Zips times and pressures into curve points with their derivative.
pub fn assemble_curve(grid: &[f64], values: &[f64], smoothing: f64) -> Result<Vec<CurvePoint>> {
    let derivative: Vec<Option<f64>> = if grid.len() >= 3 {
        bourdet_derivative(grid, values, smoothing)?
            .into_iter()
            .map(|d| Some(d.value))
            .collect()
    } else {
        vec![None; grid.len()]
    };
    Ok(grid
        .iter()
        .zip(values)
        .zip(derivative)
        .map(|((&t, &p), d)| CurvePoint::new(t, p, d))
        .collect())
}

/// Shortest decimal that reads back to the same f64.
pub fn format_float(x: f64) -> String {
    format!("{x:?}")
}

pub fn render_csv(points: &[CurvePoint]) -> String {
    let mut out = String::with_capacity(32 * (points.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for p in points {
        let d = p.dp_dlnt.map(format_float).unwrap_or_default();
        let _ = writeln!(out, "{},{},{}", format_float(p.t_d), format_float(p.p_w), d);
    }
    out
}

pub fn render_json(points: &[CurvePoint]) -> String {
    let mut s = serde_json::to_string_pretty(points).expect("curve points serialise");
    s.push('\n');
    s
}

pub fn render(points: &[CurvePoint], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => render_csv(points),
        OutputFormat::Json => render_json(points),
    }
}

pub fn parse_csv(text: &str) -> std::result::Result<Vec<CurvePoint>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim_end() == CSV_HEADER => {}
        other => return Err(format!("expected header {CSV_HEADER:?}, found {other:?}")),
    }
    let float = |field: &str, line: usize| {
        field
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("line {line}: {field:?}: {e}"))
    };
    let mut points = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(format!(
                "line {line_no}: expected 3 fields, found {}",
                fields.len()
            ));
        }
        let d = if fields[2].trim().is_empty() {
            None
        } else {
            Some(float(fields[2], line_no)?)
        };
        points.push(CurvePoint::new(
            float(fields[0], line_no)?,
            float(fields[1], line_no)?,
            d,
        ));
    }
    Ok(points)
}

pub fn parse_json(text: &str) -> std::result::Result<Vec<CurvePoint>, String> {
    serde_json::from_str(text).map_err(|e| e.to_string())
}

pub fn write_curve(points: &[CurvePoint], format: OutputFormat, path: &Path) -> Result<()> {
    if points.is_empty() {
        return Err(Error::domain("refusing to write an empty curve"));
    }
    fs::write(path, render(points, format)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_curve(path: &Path, format: OutputFormat) -> Result<Vec<CurvePoint>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let parsed = match format {
        OutputFormat::Csv => parse_csv(&text),
        OutputFormat::Json => parse_json(&text),
    };
    parsed.map_err(|message| Error::Parse {
        path: path.to_path_buf(),
        message,
    })
}
