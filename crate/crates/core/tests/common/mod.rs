//! Independent reference values shared by the integration tests.
#![allow(dead_code)]

use fracwell::model::TriplePorosityParams;

/// Euler's constant plus ln 4, the line-source intercept.
pub const LINE_SOURCE_INTERCEPT: f64 = 0.80907;

/// Late-time line-source drawdown at the well.
pub fn line_source(t_d: f64) -> f64 {
    0.5 * (t_d.ln() + LINE_SOURCE_INTERCEPT)
}

pub fn reference_params() -> TriplePorosityParams {
    TriplePorosityParams::reference()
}

pub const ORDER_TRIPLES: [[f64; 3]; 3] = [[1.0, 1.0, 1.0], [0.9, 0.8, 0.7], [0.77, 0.56, 0.6]];

pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    (0..n)
        .map(|i| 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64))
        .collect()
}

pub fn rel(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

/// e^x·K_ν(x) = ∫₀^∞ exp(-x(cosh t - 1))·cosh(νt) dt by the trapezoid rule.
/// The integrand is entire and decays doubly exponentially, so the rule
/// converges geometrically; the step is halved until two passes agree.
pub fn bessel_k_scaled_quadrature(nu: f64, x: f64) -> f64 {
    let f = |t: f64| (-x * 2.0 * (0.5 * t).sinh().powi(2)).exp() * (nu * t).cosh();
    // stop where the integrand is below e^-45 of its peak scale
    let mut upper: f64 = 1.0;
    while x * 2.0 * (0.5 * upper).sinh().powi(2) - nu * upper < 45.0 {
        upper += 0.5;
    }
    let mut h = 0.05 / x.sqrt().max(1.0);
    let mut prev = f64::NAN;
    loop {
        let n = (upper / h).ceil() as usize;
        let mut sum = 0.5 * f(0.0);
        let mut comp = 0.0;
        for i in 1..=n {
            // Kahan summation keeps the many small terms exact enough
            let y = f(i as f64 * h) - comp;
            let s = sum + y;
            comp = (s - sum) - y;
            sum = s;
        }
        let value = sum * h;
        if (value - prev).abs() <= 1e-15 * value.abs() {
            return value;
        }
        prev = value;
        h *= 0.5;
    }
}

pub fn bessel_k_quadrature(nu: f64, x: f64) -> f64 {
    bessel_k_scaled_quadrature(nu, x) * (-x).exp()
}
