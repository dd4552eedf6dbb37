//! Real roots of the characteristic cubic.
//!
//! The determinant condition on the modal matrix is a polynomial of degree
//! six in α containing only even powers, i.e. a cubic in x = α². The cubic
//! is solved in closed form (trigonometric form when all three roots are
//! real, Cardano otherwise) and every real root is then polished with
//! Newton's method on the original, unnormalised coefficients.

use std::cmp::Ordering;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Imaginary parts up to `COMPLEX_TOL·(1 + |re|)` count as rounding noise.
pub const COMPLEX_TOL: f64 = 1e-9;

/// Relative gap under which two real roots are merged.
pub const MERGE_TOL: f64 = 1e-9;

/// Multiple of the rounding level within which a root cluster counts as an
/// exact multiple root.
const BACKWARD_TOL: f64 = 8.0 * f64::EPSILON;

const MIN_LEADING: f64 = 1e-300;

/// c3·x³ + c2·x² + c1·x + c0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicCoefficients {
    pub c3: f64,
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl CubicCoefficients {
    pub fn new(c3: f64, c2: f64, c1: f64, c0: f64) -> Self {
        Self { c3, c2, c1, c0 }
    }

    /// Monic cubic with the given roots.
    pub fn from_roots(r: [f64; 3]) -> Self {
        Self {
            c3: 1.0,
            c2: -(r[0] + r[1] + r[2]),
            c1: r[0] * r[1] + r[0] * r[2] + r[1] * r[2],
            c0: -(r[0] * r[1] * r[2]),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        ((self.c3 * x + self.c2) * x + self.c1) * x + self.c0
    }

    pub fn derivative(&self, x: f64) -> f64 {
        (3.0 * self.c3 * x + 2.0 * self.c2) * x + self.c1
    }

    /// Largest magnitude among the four monomials at x; the natural scale
    /// for judging a residual.
    pub fn term_scale(&self, x: f64) -> f64 {
        (self.c3 * x * x * x)
            .abs()
            .max((self.c2 * x * x).abs())
            .max((self.c1 * x).abs())
            .max(self.c0.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CubicRoot {
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl CubicRoot {
    pub fn is_real(&self) -> bool {
        matches!(self, CubicRoot::Real(_))
    }

    pub fn re(&self) -> f64 {
        match *self {
            CubicRoot::Real(x) => x,
            CubicRoot::Complex { re, .. } => re,
        }
    }
}

/// All three roots; real roots first in ascending order, then any complex
/// conjugate pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoots {
    pub roots: [CubicRoot; 3],
}

impl CubicRoots {
    pub fn real(&self) -> Vec<f64> {
        self.roots
            .iter()
            .filter_map(|r| match r {
                CubicRoot::Real(x) => Some(*x),
                _ => None,
            })
            .collect()
    }

    pub fn count_real(&self) -> usize {
        self.roots.iter().filter(|r| r.is_real()).count()
    }
}

pub fn solve_cubic_real(c: &CubicCoefficients) -> Result<CubicRoots> {
    if !(c.c3.abs() > MIN_LEADING) {
        return Err(Error::DegenerateCubic(c.c3));
    }
    if ![c.c2, c.c1, c.c0].iter().all(|v| v.is_finite()) || !c.c3.is_finite() {
        return Err(Error::domain("cubic coefficients must be finite"));
    }

    let a = c.c2 / c.c3;
    let b = c.c1 / c.c3;
    let d = c.c0 / c.c3;
    let shift = a / 3.0;

    // depressed cubic t³ + p·t + q with x = t - a/3
    let p = b - a * a / 3.0;
    let q = (2.0 * a * a * a - 9.0 * a * b) / 27.0 + d;

    let mut raw: [CubicRoot; 3];
    if p == 0.0 && q == 0.0 {
        raw = [CubicRoot::Real(-shift); 3];
    } else {
        let half_q = 0.5 * q;
        let third_p = p / 3.0;
        let disc = half_q * half_q + third_p * third_p * third_p;
        if disc <= 0.0 {
            let r = (-third_p).sqrt();
            let cos_theta = (-half_q / (r * r * r)).clamp(-1.0, 1.0);
            let theta = cos_theta.acos();
            let trig =
                [0.0, 1.0, 2.0].map(|k| 2.0 * r * ((theta - 2.0 * PI * k) / 3.0).cos() - shift);
            // the largest root is accurate; the others may sit in a tight
            // cluster relative to it and are recovered by deflation
            let big = trig
                .into_iter()
                .max_by(|x, y| x.abs().total_cmp(&y.abs()))
                .unwrap_or(trig[0]);
            let big = polish(c, big);
            let [y1, y2] = deflate(a, b, d, big);
            raw = [CubicRoot::Real(big), y1, y2];
        } else {
            // pick the sign that avoids cancellation
            let big = -half_q - disc.sqrt().copysign(q);
            let s = big.cbrt();
            let t = if s == 0.0 { 0.0 } else { -third_p / s };
            // deflation, not the Cardano pair, decides whether the other
            // two roots are real: the discriminant sign is unreliable for
            // pairs that are tight relative to the real root
            let real = polish(c, s + t - shift);
            let [y1, y2] = deflate(a, b, d, real);
            raw = [CubicRoot::Real(real), y1, y2];
        }
    }

    let first_real = raw[0].re();
    for root in raw.iter_mut() {
        *root = match *root {
            CubicRoot::Complex { re, im }
                if im.abs() <= COMPLEX_TOL * (1.0 + re.abs())
                    || rounding_cluster(c, re, im.abs(), first_real) =>
            {
                CubicRoot::Real(re)
            }
            CubicRoot::Real(x) => CubicRoot::Real(x),
            other => other,
        };
        if let CubicRoot::Real(x) = *root {
            *root = CubicRoot::Real(polish(c, x));
        }
    }

    raw.sort_by(|l, r| match (l, r) {
        (CubicRoot::Real(a), CubicRoot::Real(b)) => a.partial_cmp(b).unwrap_or(Ordering::Equal),
        (CubicRoot::Real(_), _) => Ordering::Less,
        (_, CubicRoot::Real(_)) => Ordering::Greater,
        (CubicRoot::Complex { im: a, .. }, CubicRoot::Complex { im: b, .. }) => {
            b.partial_cmp(a).unwrap_or(Ordering::Equal)
        }
    });
    Ok(CubicRoots { roots: raw })
}

/// The other two roots of the monic cubic x³ + a·x² + b·x + d given the
/// root `x`: product -d/x, and the sum from whichever Vieta relation
/// cancels less.
fn deflate(a: f64, b: f64, d: f64, x: f64) -> [CubicRoot; 2] {
    if x == 0.0 {
        // x²+a·x+b
        return quadratic(-a, b);
    }
    let product = -d / x;
    let from_sum = -a - x;
    let from_pairs = (b - product) / x;
    let loss_sum = (a.abs() + x.abs()) / from_sum.abs();
    let loss_pairs = (b.abs() + product.abs()) / (b - product).abs();
    let sum = if loss_pairs < loss_sum {
        from_pairs
    } else {
        from_sum
    };
    quadratic(sum, product)
}

/// Roots of y² - sum·y + product.
fn quadratic(sum: f64, product: f64) -> [CubicRoot; 2] {
    let half = 0.5 * sum;
    let disc = half * half - product;
    if disc < 0.0 {
        let im = (-disc).sqrt();
        return [
            CubicRoot::Complex { re: half, im },
            CubicRoot::Complex { re: half, im: -im },
        ];
    }
    let q = half + disc.sqrt().copysign(half);
    if q == 0.0 {
        return [CubicRoot::Real(0.0); 2];
    }
    [CubicRoot::Real(q), CubicRoot::Real(product / q)]
}

/// Whether a pair of roots `centre ± spread` (real or imaginary spread),
/// with the third root at `other`, can be collapsed into an exact double
/// root by perturbing the coefficients at rounding level. Multiple roots
/// are only resolved to about ε^(1/2) (double) or ε^(1/3) (triple), so
/// clusters this tight carry no information beyond their centre.
fn rounding_cluster(c: &CubicCoefficients, centre: f64, spread: f64, other: f64) -> bool {
    // the coefficient change is c3·spread²·(x - other); measure it at the
    // centre, where the cluster sits
    let change = c.c3.abs() * spread * spread * ((centre - other).abs() + spread);
    change <= BACKWARD_TOL * c.term_scale(centre)
}

/// Newton steps on the unnormalised cubic, kept only while they shrink the
/// residual.
fn polish(c: &CubicCoefficients, mut x: f64) -> f64 {
    let mut fx = c.eval(x);
    for _ in 0..6 {
        if fx == 0.0 {
            break;
        }
        let slope = c.derivative(x);
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let next = x - fx / slope;
        let f_next = c.eval(next);
        if f_next.abs() < fx.abs() {
            x = next;
            fx = f_next;
        } else {
            break;
        }
    }
    x
}

/// The three positive roots α of the characteristic polynomial, from the
/// cubic in α².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaRoots {
    /// α_i, ascending.
    pub alpha: [f64; 3],
    /// α_i², the cubic's roots.
    pub squared: [f64; 3],
    /// Cubic evaluated at each α_i².
    pub residuals: [f64; 3],
}

impl AlphaRoots {
    pub fn from_squared(squared: [f64; 3], c: &CubicCoefficients) -> Self {
        AlphaRoots {
            alpha: squared.map(f64::sqrt),
            squared,
            residuals: squared.map(|x| c.eval(x)),
        }
    }

    /// Residuals divided by the largest monomial at the same root.
    pub fn relative_residuals(&self, c: &CubicCoefficients) -> [f64; 3] {
        let mut out = [0.0; 3];
        for i in 0..3 {
            let scale = c.term_scale(self.squared[i]);
            out[i] = if scale > 0.0 {
                self.residuals[i].abs() / scale
            } else {
                0.0
            };
        }
        out
    }
}

/// The three roots of `c`, ascending, after checking that all are real and
/// strictly positive.
pub fn positive_real_roots(c: &CubicCoefficients) -> Result<[f64; 3]> {
    let roots = solve_cubic_real(c)?;
    let mut squared = [0.0; 3];
    for (slot, root) in squared.iter_mut().zip(roots.roots.iter()) {
        match *root {
            CubicRoot::Real(x) if x > 0.0 => *slot = x,
            CubicRoot::Real(x) => return Err(Error::RootClassification { re: x, im: 0.0 }),
            CubicRoot::Complex { re, im } => return Err(Error::RootClassification { re, im }),
        }
    }
    Ok(squared)
}

/// Replaces ascending roots closer than [`MERGE_TOL`], or close enough that
/// rounding alone could have split a multiple root, by a shared value.
pub fn merge_close_roots(mut x: [f64; 3], c: &CubicCoefficients) -> [f64; 3] {
    let merge = [0, 1].map(|i| {
        let (lo, hi) = (x[i], x[i + 1]);
        let other = x[2 - 2 * i];
        let half_gap = 0.5 * (hi - lo);
        hi - lo <= MERGE_TOL * hi || rounding_cluster(c, lo + half_gap, half_gap, other)
    });
    // merged values come from the root sum, which the coefficients carry
    // to full precision even when the individual roots of a cluster do not
    let sum = -c.c2 / c.c3;
    match merge {
        [true, true] => x = [sum / 3.0; 3],
        [true, false] => {
            let pair = 0.5 * (sum - x[2]);
            x[0] = pair;
            x[1] = pair;
        }
        [false, true] => {
            let pair = 0.5 * (sum - x[0]);
            x[1] = pair;
            x[2] = pair;
        }
        [false, false] => {}
    }
    x
}

/// Positive roots α_i = √x_i, ascending, with near-equal roots merged by
/// [`merge_close_roots`].
pub fn alpha_roots(c: &CubicCoefficients) -> Result<AlphaRoots> {
    let squared = merge_close_roots(positive_real_roots(c)?, c);
    Ok(AlphaRoots::from_squared(squared, c))
}
