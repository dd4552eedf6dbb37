use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dimensionless description of a matrix/fracture/vug reservoir.
///
/// The matrix shares are implied: `omega_m = 1 - omega_f - omega_v` and
/// `kappa_m = 1 - kappa_f - kappa_v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriplePorosityParams {
    /// Fracture storativity ratio.
    pub omega_f: f64,
    /// Vug storativity ratio.
    pub omega_v: f64,
    /// Fracture permeability ratio.
    pub kappa_f: f64,
    /// Vug permeability ratio.
    pub kappa_v: f64,
    /// Matrix-fracture interporosity coefficient.
    pub lambda_mf: f64,
    /// Matrix-vug interporosity coefficient.
    pub lambda_mv: f64,
    /// Fracture-vug interporosity coefficient.
    pub lambda_fv: f64,
    /// Caputo order of the matrix equation, in (0, 1].
    #[serde(default = "classic_order")]
    pub beta_m: f64,
    /// Caputo order of the fracture equation, in (0, 1].
    #[serde(default = "classic_order")]
    pub beta_f: f64,
    /// Caputo order of the vug equation, in (0, 1].
    #[serde(default = "classic_order")]
    pub beta_v: f64,
}

fn classic_order() -> f64 {
    1.0
}

impl TriplePorosityParams {
    /// Reference vuggy carbonate: κ_f = 0.75, κ_v = ω_f = 0.02, ω_v = 0.8,
    /// λ_mf = 1e-3, λ_mv = 1e-8, λ_fv = 1e-5, with classic (first-order)
    /// time derivatives.
    pub fn reference() -> Self {
        Self {
            omega_f: 0.02,
            omega_v: 0.8,
            kappa_f: 0.75,
            kappa_v: 0.02,
            lambda_mf: 1e-3,
            lambda_mv: 1e-8,
            lambda_fv: 1e-5,
            beta_m: 1.0,
            beta_f: 1.0,
            beta_v: 1.0,
        }
    }

    /// Nearly single-medium reservoir: every secondary share and every
    /// transfer coefficient set to `eps`, all three orders equal.
    pub fn collapsed(order: f64, eps: f64) -> Self {
        Self {
            omega_f: eps,
            omega_v: eps,
            kappa_f: eps,
            kappa_v: eps,
            lambda_mf: eps,
            lambda_mv: eps,
            lambda_fv: eps,
            beta_m: order,
            beta_f: order,
            beta_v: order,
        }
    }

    pub fn with_orders(self, beta_m: f64, beta_f: f64, beta_v: f64) -> Self {
        Self {
            beta_m,
            beta_f,
            beta_v,
            ..self
        }
    }

    pub fn orders(&self) -> [f64; 3] {
        [self.beta_m, self.beta_f, self.beta_v]
    }

    pub fn omega_m(&self) -> f64 {
        1.0 - self.omega_f - self.omega_v
    }

    pub fn kappa_m(&self) -> f64 {
        1.0 - self.kappa_f - self.kappa_v
    }

    /// (ω_m, ω_f, ω_v)
    pub fn storativities(&self) -> [f64; 3] {
        [self.omega_m(), self.omega_f, self.omega_v]
    }

    /// (κ_m, κ_f, κ_v)
    pub fn permeabilities(&self) -> [f64; 3] {
        [self.kappa_m(), self.kappa_f, self.kappa_v]
    }

    /// Checks every invariant; the message names the offending key.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("omega_f", self.omega_f),
            ("omega_v", self.omega_v),
            ("kappa_f", self.kappa_f),
            ("kappa_v", self.kappa_v),
            ("lambda_mf", self.lambda_mf),
            ("lambda_mv", self.lambda_mv),
            ("lambda_fv", self.lambda_fv),
            ("beta_m", self.beta_m),
            ("beta_f", self.beta_f),
            ("beta_v", self.beta_v),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::domain(format!("{name} must be finite, got {value}")));
            }
        }
        for (name, value) in &fields[..2] {
            if *value < 0.0 {
                return Err(Error::domain(format!("{name} must be >= 0, got {value}")));
            }
        }
        if self.omega_m() < 0.0 {
            return Err(Error::domain(format!(
                "omega_f + omega_v must not exceed 1 (omega_m = {})",
                self.omega_m()
            )));
        }
        // the modal solve divides by the fracture and vug permeabilities
        for (name, value) in &fields[2..4] {
            if *value <= 0.0 {
                return Err(Error::domain(format!("{name} must be > 0, got {value}")));
            }
        }
        if self.kappa_m() <= 0.0 {
            return Err(Error::domain(format!(
                "kappa_f + kappa_v must be below 1 (kappa_m = {})",
                self.kappa_m()
            )));
        }
        for (name, value) in &fields[4..7] {
            if *value < 0.0 {
                return Err(Error::domain(format!("{name} must be >= 0, got {value}")));
            }
        }
        for (name, value) in &fields[7..] {
            if !(*value > 0.0 && *value <= 1.0) {
                return Err(Error::domain(format!(
                    "{name} must lie in (0, 1], got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// Dimensional reservoir, fluid and well data in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalParams {
    pub phi_m: f64,
    pub phi_f: f64,
    pub phi_v: f64,
    /// Pa⁻¹
    pub c_m: f64,
    pub c_f: f64,
    pub c_v: f64,
    /// m²
    pub k_m: f64,
    pub k_f: f64,
    pub k_v: f64,
    /// Pa·s
    pub mu: f64,
    /// Pa⁻¹·s⁻¹
    pub a_mf: f64,
    pub a_mv: f64,
    pub a_fv: f64,
    /// m
    pub r_w: f64,
    /// m
    pub h: f64,
    /// m³/s
    #[serde(rename = "Q0")]
    pub q0: f64,
    #[serde(rename = "B0")]
    pub b0: f64,
    /// Pa
    pub p_i: f64,
}

impl PhysicalParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("phi_m", self.phi_m),
            ("phi_f", self.phi_f),
            ("phi_v", self.phi_v),
            ("c_m", self.c_m),
            ("c_f", self.c_f),
            ("c_v", self.c_v),
            ("k_m", self.k_m),
            ("k_f", self.k_f),
            ("k_v", self.k_v),
            ("mu", self.mu),
            ("r_w", self.r_w),
            ("h", self.h),
            ("Q0", self.q0),
            ("B0", self.b0),
            ("p_i", self.p_i),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::domain(format!(
                    "{name} must be finite and > 0, got {value}"
                )));
            }
        }
        for (name, value) in [
            ("a_mf", self.a_mf),
            ("a_mv", self.a_mv),
            ("a_fv", self.a_fv),
        ] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::domain(format!(
                    "{name} must be finite and >= 0, got {value}"
                )));
            }
        }
        Ok(())
    }

    pub fn total_permeability(&self) -> f64 {
        self.k_m + self.k_f + self.k_v
    }

    pub fn total_storage(&self) -> f64 {
        self.phi_m * self.c_m + self.phi_f * self.c_f + self.phi_v * self.c_v
    }
}

/// Dimensionless groups derived from [`PhysicalParams`], plus the factors
/// that map time and pressure to and from their dimensionless forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessScaling {
    pub omega_f: f64,
    pub omega_v: f64,
    pub kappa_f: f64,
    pub kappa_v: f64,
    pub lambda_mf: f64,
    pub lambda_mv: f64,
    pub lambda_fv: f64,
    /// t_D per second of real time.
    pub time_scale: f64,
    /// p_D per pascal of drawdown.
    pub pressure_scale: f64,
}

impl DimensionlessScaling {
    pub fn omega_m(&self) -> f64 {
        1.0 - self.omega_f - self.omega_v
    }

    pub fn kappa_m(&self) -> f64 {
        1.0 - self.kappa_f - self.kappa_v
    }

    pub fn with_orders(&self, beta_m: f64, beta_f: f64, beta_v: f64) -> TriplePorosityParams {
        TriplePorosityParams {
            omega_f: self.omega_f,
            omega_v: self.omega_v,
            kappa_f: self.kappa_f,
            kappa_v: self.kappa_v,
            lambda_mf: self.lambda_mf,
            lambda_mv: self.lambda_mv,
            lambda_fv: self.lambda_fv,
            beta_m,
            beta_f,
            beta_v,
        }
    }

    pub fn dimensionless_time(&self, seconds: f64) -> f64 {
        seconds * self.time_scale
    }

    /// p_D for a medium pressure `p_j`.
    pub fn dimensionless_pressure(&self, p_j: f64, phys: &PhysicalParams) -> f64 {
        self.pressure_scale * (phys.p_i - p_j)
    }
}

pub fn to_dimensionless(phys: &PhysicalParams) -> Result<DimensionlessScaling> {
    phys.validate()?;
    let k_total = phys.total_permeability();
    let storage = phys.total_storage();
    let denominators = [
        ("total permeability", k_total),
        ("total storage", storage),
        ("Q0·B0·mu", phys.q0 * phys.b0 * phys.mu),
        ("mu·r_w²·storage", phys.mu * phys.r_w * phys.r_w * storage),
    ];
    for (name, value) in denominators {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::domain(format!("{name} must be > 0, got {value}")));
        }
    }

    let transfer = phys.mu * phys.r_w * phys.r_w / k_total;
    Ok(DimensionlessScaling {
        omega_f: phys.phi_f * phys.c_f / storage,
        omega_v: phys.phi_v * phys.c_v / storage,
        kappa_f: phys.k_f / k_total,
        kappa_v: phys.k_v / k_total,
        lambda_mf: phys.a_mf * transfer,
        lambda_mv: phys.a_mv * transfer,
        lambda_fv: phys.a_fv * transfer,
        time_scale: k_total / (phys.mu * phys.r_w * phys.r_w * storage),
        pressure_scale: 2.0 * PI * phys.h * k_total / (phys.q0 * phys.b0 * phys.mu),
    })
}

/// Medium pressure in pascals for a dimensionless pressure `p_d`.
pub fn from_dimensionless(p_d: f64, scaling: &DimensionlessScaling, phys: &PhysicalParams) -> f64 {
    phys.p_i - p_d / scaling.pressure_scale
}
