//! Gaver-Stehfest inversion of Laplace transforms sampled on the real axis.
//!
//! f(t) ≈ (ln 2/t)·Σ V_k·F(k·ln 2/t), k = 1..n.
//!
//! The weights alternate in sign and grow quickly with n (|V_k| passes 1e8
//! at n = 16), so the sum cancels heavily and double precision caps the
//! usable order. Orders above 20 are refused.

use std::f64::consts::LN_2;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 12;
pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 20;

/// Order and precomputed weights.
#[derive(Debug, Clone, PartialEq)]
pub struct StehfestScheme {
    n: usize,
    weights: Vec<f64>,
}

impl StehfestScheme {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Self {
            n,
            weights: stehfest_weights(n)?,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// V_1..V_n.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Laplace arguments k·ln 2/t at which the transform is sampled.
    pub fn sample_points(&self, t: f64) -> impl Iterator<Item = f64> {
        let step = LN_2 / t;
        (1..=self.n).map(move |k| k as f64 * step)
    }
}

impl Default for StehfestScheme {
    fn default() -> Self {
        Self::new(DEFAULT_ORDER).expect("default order is valid")
    }
}

pub fn check_order(n: usize) -> Result<()> {
    if !n.is_multiple_of(2) || !(MIN_ORDER..=MAX_ORDER).contains(&n) {
        return Err(Error::domain(format!(
            "Stehfest order must be even and in {MIN_ORDER}..={MAX_ORDER}, got {n}"
        )));
    }
    Ok(())
}

/// V_i = (-1)^(n/2+i)·Σ_k k^(n/2)·(2k)! / ((n/2-k)!·k!·(k-1)!·(i-k)!·(2k-i)!)
/// with k from ⌊(i+1)/2⌋ to min(i, n/2).
pub fn stehfest_weights(n: usize) -> Result<Vec<f64>> {
    check_order(n)?;
    let half = n / 2;
    let mut fact = vec![1.0f64; n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * i as f64;
    }

    let weights = (1..=n)
        .map(|i| {
            let lo = i.div_ceil(2);
            let hi = i.min(half);
            let sum: f64 = (lo..=hi)
                .map(|k| {
                    (k as f64).powi(half as i32) * fact[2 * k]
                        / (fact[half - k] * fact[k] * fact[k - 1] * fact[i - k] * fact[2 * k - i])
                })
                .sum();
            if (half + i).is_multiple_of(2) {
                sum
            } else {
                -sum
            }
        })
        .collect();
    Ok(weights)
}

/// f(t) from its transform F. Evaluator errors come back tagged with the
/// offending u.
pub fn invert<F>(f: F, t: f64, scheme: &StehfestScheme) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::domain(format!(
            "time must be finite and > 0, got {t}"
        )));
    }
    let mut sum = 0.0;
    let mut compensation = 0.0;
    for (u, v) in scheme.sample_points(t).zip(scheme.weights()) {
        let value = f(u).map_err(|e| match e {
            tagged @ Error::AtLaplace { .. } => tagged,
            other => other.at_laplace(u),
        })?;
        // Neumaier summation: the weighted terms alternate and cancel
        let term = v * value;
        let next = sum + term;
        compensation += if sum.abs() >= term.abs() {
            (sum - next) + term
        } else {
            (term - next) + sum
        };
        sum = next;
    }
    Ok(LN_2 / t * (sum + compensation))
}

/// Inverts at every point of a strictly increasing positive grid, in
/// parallel. Errors carry the failing time.
pub fn invert_curve<F>(f: F, grid: &[f64], scheme: &StehfestScheme) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::domain("time grid must be strictly increasing"));
    }
    grid.par_iter()
        .map(|&t| invert(&f, t, scheme).map_err(|e| e.at_time(t)))
        .collect()
}
