//! Single-medium fractional radial flow, the one-continuum special case.

use crate::error::{Error, Result};
use crate::specfun::k01_scaled;

/// p̄_D(u, r_D) = K₀(r_D·s) / (u·s·K₁(s)) with s = √(u^α).
///
/// The ratio is formed from scaled Bessel values so it stays finite for any
/// u; the decaying root of the modified Bessel equation is the only one
/// kept.
pub fn single_medium_pressure_laplace(order: f64, u: f64, r_d: f64) -> Result<f64> {
    if !(order > 0.0 && order <= 1.0) {
        return Err(Error::domain(format!(
            "order must lie in (0, 1], got {order}"
        )));
    }
    if !(u.is_finite() && u > 0.0) {
        return Err(Error::domain(format!(
            "Laplace variable must be finite and > 0, got {u}"
        )));
    }
    if !(r_d.is_finite() && r_d >= 1.0) {
        return Err(Error::domain(format!(
            "r_D must be finite and >= 1, got {r_d}"
        )));
    }
    let s = u.powf(order).sqrt();
    let (_, k1) = k01_scaled(s)?;
    let (k0r, _) = k01_scaled(r_d * s)?;
    Ok(k0r * (-s * (r_d - 1.0)).exp() / (u * s * k1))
}
