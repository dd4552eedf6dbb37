//! TOML run configuration for the command line.
//!
//! ```toml
//! [model]            # or [physical], never both
//! omega_f = 0.02
//! omega_v = 0.8
//! kappa_f = 0.75
//! kappa_v = 0.02
//! lambda_mf = 1e-3
//! lambda_mv = 1e-8
//! lambda_fv = 1e-5
//! beta_m = 1.0       # orders default to 1
//!
//! [grid]
//! t_min = 1e-2
//! t_max = 1e8
//! points_per_decade = 10
//!
//! [inversion]
//! stehfest_n = 12
//! smoothing = 0.0
//!
//! [output]
//! path = "curve.csv"
//! format = "csv"
//!
//! [sweep]
//! betas = [[0.9, 0.8, 0.7], [0.77, 0.56, 0.6]]
//!
//! [laplace]
//! u = [1e-3, 1.0, 1e3]
//! ```
//!
//! A `[physical]` block takes the dimensional keys of
//! [`PhysicalParams`] plus optional `beta_m`, `beta_f`, `beta_v`. A
//! `[scales]` table, as printed by the `dimensionless` command, is accepted
//! and ignored.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::curves::{log_time_grid, OutputFormat};
use crate::error::{Error, Result};
use crate::inversion::{check_order, DEFAULT_ORDER};
use crate::model::{to_dimensionless, DimensionlessScaling, PhysicalParams, TriplePorosityParams};

pub const DEFAULT_T_MIN: f64 = 1e-2;
pub const DEFAULT_T_MAX: f64 = 1e8;
pub const DEFAULT_POINTS_PER_DECADE: usize = 10;

const BETA_KEYS: [&str; 3] = ["beta_m", "beta_f", "beta_v"];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    model: Option<TriplePorosityParams>,
    physical: Option<toml::Table>,
    #[serde(default)]
    grid: GridConfig,
    #[serde(default)]
    inversion: InversionConfig,
    #[serde(default)]
    output: OutputConfig,
    sweep: Option<SweepConfig>,
    laplace: Option<LaplaceConfig>,
    #[allow(dead_code)]
    scales: Option<toml::Table>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub points_per_decade: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            t_min: DEFAULT_T_MIN,
            t_max: DEFAULT_T_MAX,
            points_per_decade: DEFAULT_POINTS_PER_DECADE,
        }
    }
}

impl GridConfig {
    pub fn times(&self) -> Result<Vec<f64>> {
        log_time_grid(self.t_min, self.t_max, self.points_per_decade)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InversionConfig {
    pub stehfest_n: usize,
    /// Bourdet window in ln t.
    pub smoothing: f64,
}

impl Default for InversionConfig {
    fn default() -> Self {
        Self {
            stehfest_n: DEFAULT_ORDER,
            smoothing: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepConfig {
    betas: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct LaplaceConfig {
    u: Vec<f64>,
}

/// Where the reservoir description came from.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum ParamsSource {
    Dimensionless,
    Physical {
        physical: PhysicalParams,
        scaling: DimensionlessScaling,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Validated dimensionless parameters, including the orders.
    pub params: TriplePorosityParams,
    pub source: ParamsSource,
    pub grid: GridConfig,
    pub inversion: InversionConfig,
    pub output: OutputConfig,
    /// (β_m, β_f, β_v) triples; checked only when the sweep runs.
    pub sweep: Option<Vec<[f64; 3]>>,
    pub laplace_u: Option<Vec<f64>>,
}

fn config_err(msg: impl std::fmt::Display) -> Error {
    Error::Config(msg.to_string())
}

impl RunConfig {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| config_err(e.message()))?;

        let (params, source) = match (raw.model, raw.physical) {
            (Some(_), Some(_)) => {
                return Err(config_err(
                    "give either a [model] or a [physical] block, not both",
                ))
            }
            (None, None) => return Err(config_err("missing [model] or [physical] block")),
            (Some(model), None) => (model, ParamsSource::Dimensionless),
            (None, Some(table)) => physical_block(table)?,
        };
        params
            .validate()
            .map_err(|e| config_err(format!("[model] {}", e.root_cause_text())))?;

        raw.grid
            .times()
            .map_err(|e| config_err(format!("[grid] {}", e.root_cause_text())))?;
        check_order(raw.inversion.stehfest_n)
            .map_err(|e| config_err(format!("[inversion] stehfest_n: {}", e.root_cause_text())))?;
        let smoothing = raw.inversion.smoothing;
        if !(smoothing.is_finite() && smoothing >= 0.0) {
            return Err(config_err(format!(
                "[inversion] smoothing must be finite and >= 0, got {smoothing}"
            )));
        }

        let sweep = match raw.sweep {
            None => None,
            Some(s) => {
                let mut triples = Vec::with_capacity(s.betas.len());
                for (i, b) in s.betas.iter().enumerate() {
                    match b.as_slice() {
                        &[m, f, v] => triples.push([m, f, v]),
                        _ => {
                            return Err(config_err(format!(
                                "[sweep] betas[{i}] must hold 3 orders (beta_m, beta_f, beta_v), got {}",
                                b.len()
                            )))
                        }
                    }
                }
                if triples.is_empty() {
                    return Err(config_err("[sweep] betas must not be empty"));
                }
                Some(triples)
            }
        };

        let laplace_u = match raw.laplace {
            None => None,
            Some(l) => {
                check_laplace_grid(&l.u)?;
                Some(l.u)
            }
        };

        Ok(RunConfig {
            params,
            source,
            grid: raw.grid,
            inversion: raw.inversion,
            output: raw.output,
            sweep,
            laplace_u,
        })
    }
}

/// Laplace arguments must be finite and positive.
pub fn check_laplace_grid(u: &[f64]) -> Result<()> {
    if u.is_empty() {
        return Err(config_err("[laplace] u must not be empty"));
    }
    if let Some(bad) = u.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(config_err(format!(
            "[laplace] u values must be finite and > 0, got {bad}"
        )));
    }
    Ok(())
}

fn physical_block(mut table: toml::Table) -> Result<(TriplePorosityParams, ParamsSource)> {
    let mut betas = [1.0; 3];
    for (slot, key) in betas.iter_mut().zip(BETA_KEYS) {
        if let Some(value) = table.remove(key) {
            *slot = match value {
                toml::Value::Float(x) => x,
                toml::Value::Integer(i) => i as f64,
                other => {
                    return Err(config_err(format!(
                        "[physical] {key} must be a number, got {other}"
                    )))
                }
            };
        }
    }
    let physical: PhysicalParams = toml::Value::Table(table)
        .try_into()
        .map_err(|e: toml::de::Error| config_err(format!("[physical] {}", e.message())))?;
    let scaling = to_dimensionless(&physical)
        .map_err(|e| config_err(format!("[physical] {}", e.root_cause_text())))?;
    let params = scaling.with_orders(betas[0], betas[1], betas[2]);
    Ok((params, ParamsSource::Physical { physical, scaling }))
}

trait RootText {
    fn root_cause_text(&self) -> String;
}

impl RootText for Error {
    fn root_cause_text(&self) -> String {
        match self.root_cause() {
            Error::Domain(msg) | Error::Config(msg) => msg.clone(),
            other => other.to_string(),
        }
    }
}
