//! Modified Bessel functions of the second kind, orders 0 and 1, for
//! positive real arguments.
//!
//! Arguments up to [`SERIES_LIMIT`] use the ascending power series around
//! the logarithmic singularity. Larger arguments use Steed's continued
//! fraction for the ratio K₁/K₀ together with the normalisation sum of
//! Temme, which yields the exponentially scaled values e^x·K_ν(x) directly,
//! so nothing overflows or underflows no matter how large x gets.
//!
//! Unscaled values are formed as e^{-x} times the scaled ones and underflow
//! to zero beyond x ≈ 745. Ratios of Bessel functions should always be
//! taken between scaled values.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Crossover between the power series and the continued fraction.
pub const SERIES_LIMIT: f64 = 2.0;

const MAX_ITER: usize = 10_000;

/// Order of the modified Bessel function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Zero,
    One,
}

/// A Bessel function value together with its scaling convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEval {
    pub x: f64,
    /// `e^x·K_ν(x)` when `scaled` is set, `K_ν(x)` otherwise.
    pub value: f64,
    pub scaled: bool,
}

impl BesselEval {
    /// The plain function value, whichever way it was computed.
    pub fn unscaled(&self) -> f64 {
        if self.scaled {
            self.value * (-self.x).exp()
        } else {
            self.value
        }
    }
}

pub fn bessel_k(order: Order, x: f64, scaled: bool) -> Result<BesselEval> {
    let (k0, k1) = if scaled { k01_scaled(x)? } else { k01(x)? };
    let value = match order {
        Order::Zero => k0,
        Order::One => k1,
    };
    Ok(BesselEval { x, value, scaled })
}

/// K₀(x).
pub fn bessel_k0(x: f64) -> Result<f64> {
    Ok(k01(x)?.0)
}

/// K₁(x).
pub fn bessel_k1(x: f64) -> Result<f64> {
    Ok(k01(x)?.1)
}

/// e^x·K₀(x).
pub fn bessel_k0_scaled(x: f64) -> Result<f64> {
    Ok(k01_scaled(x)?.0)
}

/// e^x·K₁(x).
pub fn bessel_k1_scaled(x: f64) -> Result<f64> {
    Ok(k01_scaled(x)?.1)
}

/// (K₀(x), K₁(x)) from a single evaluation.
pub fn k01(x: f64) -> Result<(f64, f64)> {
    check_argument(x)?;
    if x <= SERIES_LIMIT {
        Ok(series(x))
    } else {
        let (k0, k1) = continued_fraction(x);
        let decay = (-x).exp();
        Ok((k0 * decay, k1 * decay))
    }
}

/// (e^x·K₀(x), e^x·K₁(x)) from a single evaluation.
pub fn k01_scaled(x: f64) -> Result<(f64, f64)> {
    check_argument(x)?;
    if x <= SERIES_LIMIT {
        let (k0, k1) = series(x);
        let growth = x.exp();
        Ok((k0 * growth, k1 * growth))
    } else {
        Ok(continued_fraction(x))
    }
}

fn check_argument(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "modified Bessel K needs a finite positive argument, got {x}"
        )))
    }
}

/// Ascending series, accurate for 0 < x ≤ 2.
///
/// K₀(x) = -(ln(x/2) + γ)·I₀(x) + Σ H_k·t^k/(k!)²
/// K₁(x) = 1/x + (x/2)·Σ [ln(x/2) - (ψ(k+1) + ψ(k+2))/2]·t^k/(k!(k+1)!)
///
/// with t = x²/4 and H_k the k-th harmonic number.
fn series(x: f64) -> (f64, f64) {
    let t = 0.25 * x * x;
    let log_half = (0.5 * x).ln();

    let mut i0 = 0.0;
    let mut harmonic_sum = 0.0;
    let mut k1_sum = 0.0;

    // term0 = t^k/(k!)², term1 = t^k/(k!(k+1)!)
    let mut term0 = 1.0;
    let mut term1 = 1.0;
    let mut harmonic = 0.0;
    for k in 0..MAX_ITER {
        let kf = k as f64;
        if k > 0 {
            term0 *= t / (kf * kf);
            term1 *= t / (kf * (kf + 1.0));
            harmonic += 1.0 / kf;
        }
        let psi_k1 = harmonic - EULER_GAMMA;
        let psi_k2 = psi_k1 + 1.0 / (kf + 1.0);

        i0 += term0;
        harmonic_sum += term0 * harmonic;
        let k1_term = term1 * (log_half - 0.5 * (psi_k1 + psi_k2));
        k1_sum += k1_term;

        if term0 <= f64::EPSILON * 1e-3 * i0 && k1_term.abs() <= f64::EPSILON * 1e-3 * k1_sum.abs()
        {
            break;
        }
    }

    let k0 = -(log_half + EULER_GAMMA) * i0 + harmonic_sum;
    let k1 = 1.0 / x + 0.5 * x * k1_sum;
    (k0, k1)
}

/// Steed's evaluation of the second continued fraction for order zero,
/// returning the scaled pair (e^x·K₀, e^x·K₁). Converges for x ≳ 1.5 and
/// needs fewer terms the larger x is.
fn continued_fraction(x: f64) -> (f64, f64) {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;

    for i in 1..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 0.25 * f64::EPSILON {
            break;
        }
    }

    let h = a1 * h;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}
