//! Laplace-space solution of the coupled matrix/fracture/vug system.
//!
//! In Laplace space each medium pressure is a combination of K₀(α_i·r_D)
//! modes. For a given u the steps are:
//!
//! 1. the m-terms collect storage and transfer coefficients;
//! 2. α_i² are the roots of det M(α²) = 0, a cubic in α²;
//! 3. each root's modal vector spans the null space of M(α_i²);
//! 4. the wellbore conditions (total flux 1/u, equal pressure in all media)
//!    give a 3×3 system for the mode weights;
//! 5. the wellbore pressure is the weighted sum of K₀(α_i).
//!
//! Modal vectors are kept at unit norm and Bessel values in scaled form
//! (e^α·K_ν(α)). Both are column scalings of the boundary system, so the
//! wellbore pressure is unchanged, but they keep every quantity finite when
//! α_i is large or when a mode barely touches the vugs. The conventional
//! normalisation with a unit vug component (`A_i`, `B_i`, `D_i`) is
//! recovered on demand by [`LaplaceAssembly::a_coefficients`] and friends.

use super::linalg::{cross, dot, mat_vec, norm, symmetric_eigen, Mat3, Vec3};
use super::params::TriplePorosityParams;
use crate::error::{Error, Result};
use crate::roots::{positive_real_roots, AlphaRoots, CubicCoefficients, MERGE_TOL};
use crate::specfun::{k01, k01_scaled};

/// Cross products whose norm falls below this fraction of the product of
/// the row scales are indistinguishable from rounding noise and mark the
/// modal matrix as rank deficient.
const RANK_TOL: f64 = 1e-12;

/// Relative distance within which roots are grouped when the matrix at one
/// of them is rank deficient.
const CLUSTER_TOL: f64 = 1e-4;

/// A unit vug component below this (relative to the vector norm) cannot be
/// normalised to 1.
pub const VUG_COMPONENT_TOL: f64 = 1e-12;

/// Boundary determinants below this fraction of the row-norm product are
/// treated as singular.
pub const SINGULAR_TOL: f64 = 1e-14;

/// Relative tolerance on the equality of matrix, fracture and vug pressure
/// at the wellbore.
pub const CONSISTENCY_TOL: f64 = 1e-9;

/// Storage and transfer combinations for one value of the Laplace variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MTerms {
    pub u: f64,
    /// u^β_m·ω_m + λ_mf + λ_mv
    pub m1: f64,
    /// λ_mf
    pub m2: f64,
    /// λ_mv
    pub m3: f64,
    /// u^β_f·ω_f + λ_mf + λ_fv
    pub m4: f64,
    /// λ_fv
    pub m5: f64,
    /// u^β_v·ω_v + λ_mv + λ_fv
    pub m6: f64,
    /// u^β·ω for matrix, fracture and vugs.
    pub storage: [f64; 3],
}

pub fn m_terms(p: &TriplePorosityParams, u: f64) -> Result<MTerms> {
    if !(u.is_finite() && u > 0.0) {
        return Err(Error::domain(format!(
            "Laplace variable must be finite and > 0, got {u}"
        )));
    }
    let omega = p.storativities();
    let beta = p.orders();
    let storage = [0, 1, 2].map(|i| u.powf(beta[i]) * omega[i]);
    Ok(MTerms {
        u,
        m1: storage[0] + p.lambda_mf + p.lambda_mv,
        m2: p.lambda_mf,
        m3: p.lambda_mv,
        m4: storage[1] + p.lambda_mf + p.lambda_fv,
        m5: p.lambda_fv,
        m6: storage[2] + p.lambda_mv + p.lambda_fv,
        storage,
    })
}

/// Coefficients of the characteristic cubic in x = α².
///
/// The lower coefficients are the sums of principal minors of the storage
/// plus transfer matrix. They are formed from the storage terms and the
/// transfer coefficients directly, where every product is positive, rather
/// than from the m-terms, whose differences cancel badly for small u.
pub fn characteristic_coefficients(m: &MTerms, kappa: [f64; 3]) -> CubicCoefficients {
    let [km, kf, kv] = kappa;
    let [sm, sf, sv] = m.storage;
    let (lmf, lmv, lfv) = (m.m2, m.m3, m.m5);
    // spanning-tree weight of the transfer graph
    let tree = lmf * lmv + lmf * lfv + lmv * lfv;

    // m4·m6 - m5², m1·m6 - m3², m1·m4 - m2²
    let minor_m = sf * sv + sf * (lmv + lfv) + sv * (lmf + lfv) + tree;
    let minor_f = sm * sv + sm * (lmv + lfv) + sv * (lmf + lmv) + tree;
    let minor_v = sm * sf + sm * (lmf + lfv) + sf * (lmf + lmv) + tree;

    let det = sm * sf * sv
        + sm * sf * (lmv + lfv)
        + sm * sv * (lmf + lfv)
        + sf * sv * (lmf + lmv)
        + (sm + sf + sv) * tree;

    CubicCoefficients {
        c3: km * kf * kv,
        c2: -(km * (kf * m.m6 + kv * m.m4) + kf * kv * m.m1),
        c1: km * minor_m + kf * minor_f + kv * minor_v,
        c0: -det,
    }
}

/// The symmetric modal matrix at x = α²:
///
/// ```text
/// | κ_m·x - m1   m2          m3        |
/// | m2           κ_f·x - m4  m5        |
/// | m3           m5          κ_v·x - m6|
/// ```
pub fn modal_matrix(x: f64, m: &MTerms, kappa: [f64; 3]) -> Mat3 {
    let [km, kf, kv] = kappa;
    [
        [km * x - m.m1, m.m2, m.m3],
        [m.m2, kf * x - m.m4, m.m5],
        [m.m3, m.m5, kv * x - m.m6],
    ]
}

/// Entry magnitudes before cancellation, |κ·x| + |m| on the diagonal. Used
/// to normalise residuals of the modal matrix.
pub fn modal_matrix_scale(x: f64, m: &MTerms, kappa: [f64; 3]) -> Mat3 {
    let [km, kf, kv] = kappa;
    let (a2, a3, a5) = (m.m2.abs(), m.m3.abs(), m.m5.abs());
    [
        [(km * x).abs() + m.m1.abs(), a2, a3],
        [a2, (kf * x).abs() + m.m4.abs(), a5],
        [a3, a5, (kv * x).abs() + m.m6.abs()],
    ]
}

/// A modal vector (matrix, fracture, vug components).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModalVector(pub Vec3);

impl ModalVector {
    pub fn matrix(&self) -> f64 {
        self.0[0]
    }

    pub fn fracture(&self) -> f64 {
        self.0[1]
    }

    pub fn vug(&self) -> f64 {
        self.0[2]
    }

    /// (A, B) with the vug component scaled to 1, when that is meaningful.
    pub fn unit_vug(&self) -> Option<(f64, f64)> {
        let n = norm(&self.0);
        let c = self.vug();
        if c.abs() < VUG_COMPONENT_TOL * n || c == 0.0 {
            None
        } else {
            Some((self.matrix() / c, self.fracture() / c))
        }
    }

    fn oriented(v: Vec3) -> Self {
        let n = norm(&v);
        let mut v = v.map(|c| c / n);
        let pivot = if v[2] != 0.0 {
            v[2]
        } else {
            *v.iter()
                .max_by(|a, b| a.abs().total_cmp(&b.abs()))
                .unwrap_or(&1.0)
        };
        if pivot < 0.0 {
            v = v.map(|c| -c);
        }
        ModalVector(v)
    }
}

/// Unit null vector of the modal matrix at x.
///
/// The matrix is first balanced to K^(-1/2)·M(x)·K^(-1/2) = x·I - K^(-1/2)·S·K^(-1/2),
/// so that all three media weigh equally however small one permeability
/// is. The null vector of the balanced matrix is the best-conditioned cross
/// product of two of its rows, mapped back through K^(-1/2).
pub fn null_vector(x: f64, m: &MTerms, kappa: [f64; 3]) -> Result<ModalVector> {
    let d = kappa.map(|k| 1.0 / k.sqrt());
    let rows = modal_matrix(x, m, kappa);
    let scale = modal_matrix_scale(x, m, kappa);
    let mut balanced = [[0.0; 3]; 3];
    let mut balanced_scale = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            balanced[i][j] = d[i] * rows[i][j] * d[j];
            balanced_scale[i][j] = d[i] * scale[i][j] * d[j];
        }
    }

    let mut best: Option<(f64, Vec3)> = None;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let c = cross(&balanced[i], &balanced[j]);
        let denom = norm(&balanced_scale[i]) * norm(&balanced_scale[j]);
        let quality = if denom > 0.0 { norm(&c) / denom } else { 0.0 };
        if best.is_none_or(|(q, _)| quality > q) {
            best = Some((quality, c));
        }
    }
    match best {
        Some((quality, y)) if quality > RANK_TOL && norm(&y).is_finite() => {
            Ok(ModalVector::oriented([0, 1, 2].map(|i| d[i] * y[i])))
        }
        _ => Err(Error::NullSpace { x }),
    }
}

/// (A_i, B_i) for the root x = α_i², normalised so the vug coefficient is 1.
pub fn modal_coefficients(x: f64, m: &MTerms, kappa: [f64; 3]) -> Result<(f64, f64)> {
    let v = null_vector(x, m, kappa)?;
    v.unit_vug().ok_or(Error::DegenerateModal {
        x,
        ratio: v.vug().abs(),
    })
}

/// (A_i, B_i) by eliminating the first two rows with C = 1. Undefined when
/// λ_mf = 0; [`modal_coefficients`] has no such restriction.
pub fn closed_form_modal_coefficients(x: f64, m: &MTerms, kappa: [f64; 3]) -> Result<(f64, f64)> {
    if m.m2 == 0.0 {
        return Err(Error::domain(
            "closed-form modal coefficients need lambda_mf > 0",
        ));
    }
    let d1 = kappa[0] * x - m.m1;
    let d2 = kappa[1] * x - m.m4;
    let a = (m.m3 * d2 - m.m2 * m.m5) / (m.m2 * m.m2 - d1 * d2);
    let b = (-m.m3 - a * d1) / m.m2;
    Ok((a, b))
}

/// Generalised Rayleigh quotient vᵀSv / vᵀKv of the storage-plus-transfer
/// matrix S against the permeabilities K. S is written as storage plus a
/// graph Laplacian of the transfer terms, so every term is non-negative and
/// the quotient carries full relative precision.
pub fn rayleigh_quotient(v: &Vec3, m: &MTerms, kappa: [f64; 3]) -> f64 {
    let [sm, sf, sv] = m.storage;
    let num = sm * v[0] * v[0]
        + sf * v[1] * v[1]
        + sv * v[2] * v[2]
        + m.m2 * (v[0] - v[1]).powi(2)
        + m.m3 * (v[0] - v[2]).powi(2)
        + m.m5 * (v[1] - v[2]).powi(2);
    let den = kappa[0] * v[0] * v[0] + kappa[1] * v[1] * v[1] + kappa[2] * v[2] * v[2];
    num / den
}

/// Sharpens a root of the characteristic cubic by Rayleigh quotient
/// iteration on the modal matrix.
///
/// The cubic's coefficients lose relative precision to cancellation when
/// two roots are close compared with their size, even though the roots
/// themselves are well determined by the symmetric pencil they come from.
/// The null vector at an approximate root is accurate to first order, its
/// Rayleigh quotient to second order, so a few steps recover the root.
/// Roots where the matrix is rank deficient are returned unchanged.
pub fn refine_root(x: f64, m: &MTerms, kappa: [f64; 3]) -> f64 {
    let mut x = x;
    for _ in 0..8 {
        let Ok(v) = null_vector(x, m, kappa) else {
            break;
        };
        let next = rayleigh_quotient(&v.0, m, kappa);
        if !(next.is_finite() && next > 0.0) {
            break;
        }
        let step = (next - x).abs();
        x = next;
        if step <= 4.0 * f64::EPSILON * x {
            break;
        }
    }
    x
}

/// Eigenvalues and modal vectors of the pencil (S, K), from the symmetric
/// matrix K^(-1/2)·S·K^(-1/2).
fn pencil_eigen(m: &MTerms, kappa: [f64; 3]) -> ([f64; 3], [Vec3; 3]) {
    let d = kappa.map(|k| 1.0 / k.sqrt());
    let s = [
        [m.m1, -m.m2, -m.m3],
        [-m.m2, m.m4, -m.m5],
        [-m.m3, -m.m5, m.m6],
    ];
    let mut a = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            a[i][j] = d[i] * s[i][j] * d[j];
        }
    }
    let (values, vectors) = symmetric_eigen(a);
    (values, vectors.map(|y| [0, 1, 2].map(|i| d[i] * y[i])))
}

/// Modal vectors for all three roots.
///
/// Coincident roots, and roots where the matrix drops below rank 2, are
/// grouped with their near neighbours. Such a group is a multiple or
/// tightly clustered root of the pencil (S, K). Its members are replaced by
/// the pencil's eigenpairs nearest the group, from a symmetric eigensolver
/// that resolves clusters the cubic cannot; the returned squared roots
/// carry the Rayleigh quotients of those eigenvectors.
pub fn modal_basis(
    squared: [f64; 3],
    m: &MTerms,
    kappa: [f64; 3],
) -> Result<([f64; 3], [ModalVector; 3])> {
    let mut squared = squared;
    let mut modes: [Option<ModalVector>; 3] = [None; 3];
    let mut group = [false; 3];
    for i in 0..3 {
        let repeated =
            (i > 0 && squared[i - 1] == squared[i]) || (i < 2 && squared[i] == squared[i + 1]);
        if repeated {
            group[i] = true;
            continue;
        }
        match null_vector(squared[i], m, kappa) {
            Ok(v) => modes[i] = Some(v),
            Err(Error::NullSpace { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if modes.iter().all(Option::is_some) {
        return Ok((squared, modes.map(Option::unwrap)));
    }

    let close = |a: f64, b: f64| (a - b).abs() <= CLUSTER_TOL * a.abs().max(b.abs());
    for i in 0..3 {
        if modes[i].is_none() {
            group[i] = true;
            if i > 0 && close(squared[i - 1], squared[i]) {
                group[i - 1] = true;
            }
            if i < 2 && close(squared[i], squared[i + 1]) {
                group[i + 1] = true;
            }
        }
    }
    // a lone deficient root, or a group that is not contiguous, has no
    // well-defined shared eigenspace
    let members: Vec<usize> = (0..3).filter(|&i| group[i]).collect();
    let contiguous = members.windows(2).all(|w| w[1] == w[0] + 1);
    if members.len() < 2 || !contiguous {
        let bad = (0..3).find(|&i| modes[i].is_none()).unwrap_or(0);
        return Err(Error::NullSpace { x: squared[bad] });
    }

    let centre = members.iter().map(|&i| squared[i]).sum::<f64>() / members.len() as f64;
    let (values, vectors) = pencil_eigen(m, kappa);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| {
        (values[a] - centre)
            .abs()
            .total_cmp(&(values[b] - centre).abs())
    });
    let mut chosen: Vec<(f64, Vec3)> = order[..members.len()]
        .iter()
        .map(|&k| (rayleigh_quotient(&vectors[k], m, kappa), vectors[k]))
        .collect();
    chosen.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (&i, (value, vector)) in members.iter().zip(chosen) {
        squared[i] = value;
        modes[i] = Some(ModalVector::oriented(vector));
    }
    Ok((squared, modes.map(|v| v.expect("every root has a mode"))))
}

/// Rows of the wellbore boundary system: total flux, matrix = vug pressure,
/// fracture = vug pressure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySystem {
    pub p: [f64; 3],
    pub q: [f64; 3],
    pub r: [f64; 3],
}

impl BoundarySystem {
    /// Rows for arbitrary modal vectors and Bessel values (scaled or not).
    pub fn from_modes(
        alpha: &[f64; 3],
        modes: &[ModalVector; 3],
        k0: &[f64; 3],
        k1: &[f64; 3],
        kappa: [f64; 3],
    ) -> Self {
        let mut sys = BoundarySystem {
            p: [0.0; 3],
            q: [0.0; 3],
            r: [0.0; 3],
        };
        for i in 0..3 {
            let v = &modes[i].0;
            sys.p[i] = alpha[i] * k1[i] * dot(&kappa, v);
            sys.q[i] = (v[0] - v[2]) * k0[i];
            sys.r[i] = (v[1] - v[2]) * k0[i];
        }
        sys
    }

    /// det [P; Q; R], expanded term by term.
    pub fn determinant(&self) -> f64 {
        let (p, q, r) = (&self.p, &self.q, &self.r);
        q[0] * r[1] * p[2] - q[0] * p[1] * r[2] - r[0] * q[1] * p[2] - r[1] * p[0] * q[2]
            + p[1] * r[0] * q[2]
            + p[0] * q[1] * r[2]
    }

    fn row_norm_product(&self) -> f64 {
        norm(&self.p) * norm(&self.q) * norm(&self.r)
    }

    /// Relative residuals of [P; Q; R]·D = (1/u, 0, 0): the flux row against
    /// 1/u, the two equality rows against the magnitude of their terms.
    pub fn residual(&self, d: &[f64; 3], u: f64) -> f64 {
        let flux = (dot(&self.p, d) - 1.0 / u).abs() * u;
        let equality = |row: &[f64; 3]| {
            let scale: f64 = (0..3).map(|i| (row[i] * d[i]).abs()).sum();
            if scale > 0.0 {
                dot(row, d).abs() / scale
            } else {
                0.0
            }
        };
        flux.max(equality(&self.q)).max(equality(&self.r))
    }
}

/// Boundary rows in the unit-vug normalisation with unscaled Bessel values:
/// P_i = α_i·K₁(α_i)·E_i, Q_i = (A_i - 1)·K₀(α_i), R_i = (B_i - 1)·K₀(α_i).
pub fn boundary_vectors(
    alpha: [f64; 3],
    a: [f64; 3],
    b: [f64; 3],
    kappa: [f64; 3],
) -> Result<BoundarySystem> {
    let mut k0 = [0.0; 3];
    let mut k1 = [0.0; 3];
    for i in 0..3 {
        (k0[i], k1[i]) = k01(alpha[i])?;
    }
    let modes = [0, 1, 2].map(|i| ModalVector([a[i], b[i], 1.0]));
    Ok(BoundarySystem::from_modes(&alpha, &modes, &k0, &k1, kappa))
}

/// E_i = κ_m·A_i + κ_f·B_i + κ_v.
pub fn flux_factors(a: [f64; 3], b: [f64; 3], kappa: [f64; 3]) -> [f64; 3] {
    [0, 1, 2].map(|i| kappa[0] * a[i] + kappa[1] * b[i] + kappa[2])
}

/// Solves [P; Q; R]·D = (1/u, 0, 0) as D = (Q × R)/(u·det).
pub fn solve_boundary(sys: &BoundarySystem, u: f64) -> Result<[f64; 3]> {
    let det = sys.determinant();
    let scale = sys.row_norm_product();
    if !(det.abs() > SINGULAR_TOL * scale) || !det.is_finite() {
        return Err(Error::SingularBoundary { det, scale });
    }
    let qr = cross(&sys.q, &sys.r);
    let factor = 1.0 / (u * det);
    Ok(qr.map(|c| c * factor))
}

/// Complete Laplace-space solution at one value of u. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplaceAssembly {
    pub u: f64,
    pub kappa: [f64; 3],
    pub mterms: MTerms,
    pub cubic: CubicCoefficients,
    pub roots: AlphaRoots,
    /// Unit-norm modal vectors, one per root.
    pub modes: [ModalVector; 3],
    /// e^α·K₀(α_i)
    pub k0_scaled: [f64; 3],
    /// e^α·K₁(α_i)
    pub k1_scaled: [f64; 3],
    /// Boundary rows for the unit-norm modes and scaled Bessel values.
    pub boundary: BoundarySystem,
    /// Mode weights solving `boundary`.
    pub weights: [f64; 3],
    /// Wellbore pressure p̄_w(u).
    pub pressure: f64,
}

pub fn assemble(p: &TriplePorosityParams, u: f64) -> Result<LaplaceAssembly> {
    build(p, u).map_err(|e| e.at_laplace(u))
}

fn build(p: &TriplePorosityParams, u: f64) -> Result<LaplaceAssembly> {
    p.validate()?;
    let kappa = p.permeabilities();
    let mterms = m_terms(p, u)?;
    let cubic = characteristic_coefficients(&mterms, kappa);
    let mut squared = positive_real_roots(&cubic)?.map(|x| refine_root(x, &mterms, kappa));
    squared.sort_by(f64::total_cmp);
    for i in 0..2 {
        if squared[i + 1] - squared[i] <= MERGE_TOL * squared[i + 1] {
            let mid = 0.5 * (squared[i] + squared[i + 1]);
            squared[i] = mid;
            squared[i + 1] = mid;
        }
    }
    let (squared, modes) = modal_basis(squared, &mterms, kappa)?;
    let roots = AlphaRoots::from_squared(squared, &cubic);

    let mut k0_scaled = [0.0; 3];
    let mut k1_scaled = [0.0; 3];
    for i in 0..3 {
        (k0_scaled[i], k1_scaled[i]) = k01_scaled(roots.alpha[i])?;
    }
    let boundary = BoundarySystem::from_modes(&roots.alpha, &modes, &k0_scaled, &k1_scaled, kappa);
    let weights = solve_boundary(&boundary, u)?;
    let pressure = (0..3)
        .map(|i| weights[i] * modes[i].vug() * k0_scaled[i])
        .sum();

    Ok(LaplaceAssembly {
        u,
        kappa,
        mterms,
        cubic,
        roots,
        modes,
        k0_scaled,
        k1_scaled,
        boundary,
        weights,
        pressure,
    })
}

impl LaplaceAssembly {
    /// A_i with a unit vug component; `None` when that component vanishes.
    pub fn a_coefficients(&self) -> [Option<f64>; 3] {
        self.modes.map(|v| v.unit_vug().map(|(a, _)| a))
    }

    pub fn b_coefficients(&self) -> [Option<f64>; 3] {
        self.modes.map(|v| v.unit_vug().map(|(_, b)| b))
    }

    /// Boundary weights D_i that pair with [`a_coefficients`] and
    /// [`b_coefficients`] and unscaled Bessel values.
    ///
    /// [`a_coefficients`]: Self::a_coefficients
    /// [`b_coefficients`]: Self::b_coefficients
    ///
    /// `None` also when D_i overflows: it grows like e^α_i, past the
    /// double range once α_i exceeds about 709.
    pub fn d_coefficients(&self) -> [Option<f64>; 3] {
        [0, 1, 2].map(|i| {
            self.modes[i]
                .unit_vug()
                .map(|_| self.weights[i] * self.modes[i].vug() * self.roots.alpha[i].exp())
                .filter(|d| d.is_finite())
        })
    }

    /// Matrix, fracture and vug pressure at the wellbore.
    pub fn media_pressures(&self) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = (0..3)
                .map(|i| self.weights[i] * self.modes[i].0[j] * self.k0_scaled[i])
                .sum();
        }
        out
    }

    /// Largest relative residual of the cubic at its three roots.
    pub fn characteristic_residual(&self) -> f64 {
        let r = self.roots.relative_residuals(&self.cubic);
        r[0].max(r[1]).max(r[2])
    }

    /// Largest |M(α_i²)·v_i| component, relative to the row's entry scale
    /// and to |v_i|.
    pub fn null_space_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            let x = self.roots.squared[i];
            let mat = modal_matrix(x, &self.mterms, self.kappa);
            let scale = modal_matrix_scale(x, &self.mterms, self.kappa);
            let v = &self.modes[i].0;
            let mv = mat_vec(&mat, v);
            for j in 0..3 {
                let s = norm(&scale[j]) * norm(v);
                if s > 0.0 {
                    worst = worst.max(mv[j].abs() / s);
                }
            }
        }
        worst
    }

    pub fn boundary_residual(&self) -> f64 {
        self.boundary.residual(&self.weights, self.u)
    }

    /// Disagreement between the three wellbore pressures, relative to the
    /// largest of them and of their term magnitudes.
    pub fn triple_equality_residual(&self) -> f64 {
        let [pm, pf, pv] = self.media_pressures();
        let mut scale = pm.abs().max(pf.abs()).max(pv.abs());
        for j in 0..3 {
            let terms: f64 = (0..3)
                .map(|i| (self.weights[i] * self.modes[i].0[j] * self.k0_scaled[i]).abs())
                .sum();
            scale = scale.max(terms);
        }
        if scale == 0.0 {
            return 0.0;
        }
        (pm - pv).abs().max((pf - pv).abs()) / scale
    }
}

/// [`assemble`], then the check that matrix, fracture and vug agree at the
/// well to [`CONSISTENCY_TOL`].
pub fn checked_assembly(p: &TriplePorosityParams, u: f64) -> Result<LaplaceAssembly> {
    let assembly = assemble(p, u)?;
    let residual = assembly.triple_equality_residual();
    if !(residual <= CONSISTENCY_TOL) {
        return Err(Error::Consistency { residual }.at_laplace(u));
    }
    Ok(assembly)
}

/// p̄_w(u): the Laplace-space wellbore pressure.
pub fn wellbore_pressure_laplace(p: &TriplePorosityParams, u: f64) -> Result<f64> {
    Ok(checked_assembly(p, u)?.pressure)
}

/// (p̄_Dm, p̄_Df, p̄_Dv) at radius r_D ≥ 1.
pub fn field_pressure_laplace(p: &TriplePorosityParams, u: f64, r_d: f64) -> Result<[f64; 3]> {
    if !(r_d.is_finite() && r_d >= 1.0) {
        return Err(Error::domain(format!(
            "r_D must be finite and >= 1, got {r_d}"
        )));
    }
    let asm = assemble(p, u)?;
    field_from_assembly(&asm, r_d)
}

/// Medium pressures at r_D from an existing assembly.
pub fn field_from_assembly(asm: &LaplaceAssembly, r_d: f64) -> Result<[f64; 3]> {
    let mut k0r = [0.0; 3];
    for i in 0..3 {
        let alpha = asm.roots.alpha[i];
        let (k0, _) = k01_scaled(alpha * r_d)?;
        k0r[i] = k0 * (-alpha * (r_d - 1.0)).exp();
    }
    let mut out = [0.0; 3];
    for (j, slot) in out.iter_mut().enumerate() {
        *slot = (0..3)
            .map(|i| asm.weights[i] * asm.modes[i].0[j] * k0r[i])
            .sum();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::alpha_roots;

    fn reference_terms(u: f64) -> (MTerms, [f64; 3]) {
        let p = TriplePorosityParams::reference();
        (m_terms(&p, u).unwrap(), p.permeabilities())
    }

    /// Characteristic coefficients written out from the m-terms.
    fn expanded(m: &MTerms, kappa: [f64; 3]) -> CubicCoefficients {
        let [km, kf, kv] = kappa;
        let (m1, m2, m3, m4, m5, m6) = (m.m1, m.m2, m.m3, m.m4, m.m5, m.m6);
        CubicCoefficients {
            c3: km * kf * kv,
            c2: -(km * (kf * m6 + kv * m4) + kf * kv * m1),
            c1: km * m4 * m6 - km * m5 * m5 + (kf * m6 + kv * m4) * m1
                - kv * m2 * m2
                - kf * m3 * m3,
            c0: -m1 * m4 * m6 + m1 * m5 * m5 + m2 * m2 * m6 + 2.0 * m2 * m3 * m5 + m3 * m3 * m4,
        }
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn m_terms_reference_values() {
        let (m, _) = reference_terms(1.0);
        assert!(rel(m.m1, 0.18100001) < 1e-15);
        assert!(rel(m.m4, 0.02101) < 1e-15);
        assert!(rel(m.m6, 0.80001001) < 1e-15);
        assert_eq!((m.m2, m.m3, m.m5), (1e-3, 1e-8, 1e-5));
    }

    #[test]
    fn m_terms_without_transfer() {
        let mut p = TriplePorosityParams::reference();
        p.lambda_mf = 0.0;
        p.lambda_mv = 0.0;
        p.lambda_fv = 0.0;
        let m = m_terms(&p, 1.0).unwrap();
        assert_eq!([m.m1, m.m4, m.m6], p.storativities());
        assert_eq!([m.m2, m.m3, m.m5], [0.0; 3]);
    }

    #[test]
    fn m_terms_fractional_scaling() {
        let p = TriplePorosityParams::reference().with_orders(0.5, 1.0, 1.0);
        let d = m_terms(&p, 4.0).unwrap().m1 - m_terms(&p, 1.0).unwrap().m1;
        assert!(rel(d, p.omega_m()) < 1e-14);
    }

    #[test]
    fn m_terms_reject_nonpositive_u() {
        let p = TriplePorosityParams::reference();
        assert!(m_terms(&p, 0.0).is_err());
        assert!(m_terms(&p, -1.0).is_err());
    }

    #[test]
    fn leading_coefficient() {
        let (m, kappa) = reference_terms(1.0);
        let c = characteristic_coefficients(&m, kappa);
        assert!(rel(c.c3, 0.00345) < 1e-14);
    }

    #[test]
    fn grouped_coefficients_match_expanded_form() {
        for u in [1e-2, 1.0, 1e2] {
            let (m, kappa) = reference_terms(u);
            let g = characteristic_coefficients(&m, kappa);
            let e = expanded(&m, kappa);
            assert!(rel(g.c2, e.c2) < 1e-14);
            assert!(rel(g.c1, e.c1) < 1e-12);
            assert!(rel(g.c0, e.c0) < 1e-10, "{} vs {}", g.c0, e.c0);
        }
    }

    #[test]
    fn decoupled_roots() {
        let mut p = TriplePorosityParams::reference();
        p.lambda_mf = 0.0;
        p.lambda_mv = 0.0;
        p.lambda_fv = 0.0;
        let u = 3.0;
        let m = m_terms(&p, u).unwrap();
        let kappa = p.permeabilities();
        let roots = alpha_roots(&characteristic_coefficients(&m, kappa)).unwrap();
        let mut expected = [m.m1 / kappa[0], m.m4 / kappa[1], m.m6 / kappa[2]];
        expected.sort_by(f64::total_cmp);
        for (got, want) in roots.squared.iter().zip(expected) {
            assert!(rel(*got, want) < 1e-13);
        }
    }

    #[test]
    fn determinant_vanishes_at_roots() {
        let (m, kappa) = reference_terms(1.0);
        let roots = alpha_roots(&characteristic_coefficients(&m, kappa)).unwrap();
        for x in roots.squared {
            let a = modal_matrix(x, &m, kappa);
            let s = modal_matrix_scale(x, &m, kappa);
            let det = dot(&a[0], &cross(&a[1], &a[2]));
            let bound = norm(&s[0]) * norm(&s[1]) * norm(&s[2]);
            assert!(det.abs() <= 1e-8 * bound, "det {det} bound {bound}");
        }
    }

    #[test]
    fn modal_coefficients_null_residual() {
        let (m, kappa) = reference_terms(1.0);
        let roots = alpha_roots(&characteristic_coefficients(&m, kappa)).unwrap();
        for x in roots.squared {
            let (a, b) = modal_coefficients(x, &m, kappa).unwrap();
            let v = [a, b, 1.0];
            let mv = mat_vec(&modal_matrix(x, &m, kappa), &v);
            let scale = modal_matrix_scale(x, &m, kappa);
            for j in 0..3 {
                assert!(mv[j].abs() <= 1e-8 * norm(&scale[j]) * norm(&v));
            }
        }
    }

    #[test]
    fn closed_form_agrees_with_null_space() {
        let (m, kappa) = reference_terms(1.0);
        let roots = alpha_roots(&characteristic_coefficients(&m, kappa)).unwrap();
        let mut well_conditioned = 0;
        for x in roots.squared {
            let (a, b) = modal_coefficients(x, &m, kappa).unwrap();
            let (ca, cb) = closed_form_modal_coefficients(x, &m, kappa).unwrap();

            // rounding in x and in κ·x - m carries into the 2×2 minor
            // m2² - d1·d2 in the denominator of A
            let d1 = kappa[0] * x - m.m1;
            let d2 = kappa[1] * x - m.m4;
            let minor = m.m2 * m.m2 - d1 * d2;
            let noise = f64::EPSILON
                * ((kappa[0] * x + m.m1) * d2.abs()
                    + (kappa[1] * x + m.m4) * d1.abs()
                    + m.m2 * m.m2
                    + (d1 * d2).abs());
            let bound = noise / minor.abs();
            if bound < 1e-6 {
                well_conditioned += 1;
            }
            let tol = 1e-6 + 10.0 * bound;
            assert!(rel(ca, a) < tol, "A: {ca} vs {a}");
            assert!(rel(cb, b) < tol, "B: {cb} vs {b}");
        }
        assert!(well_conditioned >= 2);
    }

    #[test]
    fn modal_coefficients_match_extended_precision() {
        // null vectors at u = 1 worked out with 50-digit arithmetic
        let expected = [
            (457.980_791_308_403_1, 79_944.531_629_494_09),
            (-103_628_329.247_845_89, 182_055.401_840_792_62),
            (-1.071_772_247_989_117_5e-9, -3.335_627_290_004_309_6e-7),
        ];
        let (m, kappa) = reference_terms(1.0);
        let roots = alpha_roots(&characteristic_coefficients(&m, kappa)).unwrap();
        for (x, (ea, eb)) in roots.squared.into_iter().zip(expected) {
            let (a, b) = modal_coefficients(x, &m, kappa).unwrap();
            assert!(rel(a, ea) < 1e-6, "A: {a} vs {ea}");
            assert!(rel(b, eb) < 1e-6, "B: {b} vs {eb}");
        }
    }

    #[test]
    fn decoupled_mode_cannot_take_unit_vug_component() {
        let mut p = TriplePorosityParams::reference();
        p.lambda_mf = 0.0;
        p.lambda_mv = 0.0;
        p.lambda_fv = 0.0;
        let m = m_terms(&p, 1.0).unwrap();
        let kappa = p.permeabilities();
        let x = m.m1 / kappa[0];
        let v = null_vector(x, &m, kappa).unwrap();
        assert!((v.matrix().abs() - 1.0).abs() < 1e-15);
        assert!(matches!(
            modal_coefficients(x, &m, kappa),
            Err(Error::DegenerateModal { .. })
        ));
        assert!(closed_form_modal_coefficients(x, &m, kappa).is_err());
    }

    #[test]
    fn boundary_rows_for_unit_coefficients() {
        let alpha = [0.5, 1.0, 2.0];
        let kappa = [0.23, 0.75, 0.02];
        let sys = boundary_vectors(alpha, [1.0, 2.0, 1.0], [3.0, 0.5, 1.0], kappa).unwrap();
        assert_eq!(sys.q[0], 0.0);
        assert_eq!((sys.q[2], sys.r[2]), (0.0, 0.0));
        let e = flux_factors([1.0, 2.0, 1.0], [3.0, 0.5, 1.0], kappa);
        let k1 = crate::specfun::bessel_k1(alpha[2]).unwrap();
        assert!(rel(sys.p[2], alpha[2] * k1 * e[2]) < 1e-15);
        assert!(rel(e[2], 1.0) < 1e-15);
    }

    #[test]
    fn identity_boundary_system() {
        let sys = BoundarySystem {
            p: [1.0, 0.0, 0.0],
            q: [0.0, 1.0, 0.0],
            r: [0.0, 0.0, 1.0],
        };
        assert_eq!(solve_boundary(&sys, 1.0).unwrap(), [1.0, 0.0, 0.0]);
    }

    #[test]
    fn permuted_boundary_system() {
        let sys = BoundarySystem {
            p: [0.0, 1.0, 0.0],
            q: [1.0, 0.0, 0.0],
            r: [0.0, 0.0, 1.0],
        };
        let d = solve_boundary(&sys, 2.0).unwrap();
        assert_eq!(d.map(|x| x + 0.0), [0.0, 0.5, 0.0]);
    }

    #[test]
    fn singular_boundary_system() {
        let sys = BoundarySystem {
            p: [1.0, 2.0, 3.0],
            q: [2.0, 4.0, 6.0],
            r: [0.0, 0.0, 1.0],
        };
        assert!(matches!(
            solve_boundary(&sys, 1.0),
            Err(Error::SingularBoundary { .. })
        ));
    }

    #[test]
    fn reference_assembly_residuals() {
        let asm = assemble(&TriplePorosityParams::reference(), 1.0).unwrap();
        assert!(asm.characteristic_residual() <= 1e-10);
        assert!(asm.null_space_residual() <= 1e-8);
        assert!(asm.boundary_residual() <= 1e-10);
        assert!(asm.triple_equality_residual() <= 1e-9);

        // the same solve in the unit-vug normalisation with unscaled Bessel values
        let a = asm.a_coefficients().map(Option::unwrap);
        let b = asm.b_coefficients().map(Option::unwrap);
        let d = asm.d_coefficients().map(Option::unwrap);
        let sys = boundary_vectors(asm.roots.alpha, a, b, asm.kappa).unwrap();
        let cond = {
            let scale = sys.row_norm_product();
            scale / sys.determinant().abs()
        };
        assert!(cond < 1e12, "{cond}");
        let direct = solve_boundary(&sys, 1.0).unwrap();
        for i in 0..3 {
            assert!(rel(direct[i], d[i]) < 1e-8, "{} vs {}", direct[i], d[i]);
        }
        assert!(sys.residual(&direct, 1.0) <= 1e-10);

        let k0 = asm
            .roots
            .alpha
            .map(|x| crate::specfun::bessel_k0(x).unwrap());
        let pw: f64 = (0..3).map(|i| d[i] * k0[i]).sum();
        let pm: f64 = (0..3).map(|i| a[i] * d[i] * k0[i]).sum();
        let pf: f64 = (0..3).map(|i| b[i] * d[i] * k0[i]).sum();
        assert!(rel(pw, asm.pressure) < 1e-9);
        assert!(rel(pm, pw) < 1e-9);
        assert!(rel(pf, pw) < 1e-9);
    }

    #[test]
    fn equal_media_without_transfer_share_one_root() {
        let third = 1.0 / 3.0;
        let p = TriplePorosityParams {
            omega_f: third,
            omega_v: third,
            kappa_f: third,
            kappa_v: third,
            lambda_mf: 0.0,
            lambda_mv: 0.0,
            lambda_fv: 0.0,
            beta_m: 0.8,
            beta_f: 0.8,
            beta_v: 0.8,
        };
        for u in [1e-3, 1.0, 50.0] {
            let pw = wellbore_pressure_laplace(&p, u).unwrap();
            let single = super::super::single::single_medium_pressure_laplace(0.8, u, 1.0).unwrap();
            assert!(rel(pw, single) < 1e-6, "u = {u}: {pw} vs {single}");
        }
    }

    #[test]
    fn equal_media_with_equal_transfer() {
        // roots u^β (uniform mode) and a double root from the transfer graph
        let third = 1.0 / 3.0;
        let p = TriplePorosityParams {
            omega_f: third,
            omega_v: third,
            kappa_f: third,
            kappa_v: third,
            lambda_mf: 1e-2,
            lambda_mv: 1e-2,
            lambda_fv: 1e-2,
            beta_m: 1.0,
            beta_f: 1.0,
            beta_v: 1.0,
        };
        for u in [1e-2, 1.0, 10.0] {
            let asm = assemble(&p, u).unwrap();
            let single = super::super::single::single_medium_pressure_laplace(1.0, u, 1.0).unwrap();
            assert!(rel(asm.pressure, single) < 1e-6, "u = {u}");
            assert!(asm.boundary_residual() < 1e-9);
        }
    }

    #[test]
    fn field_equals_wellbore_at_unit_radius() {
        let p = TriplePorosityParams::reference().with_orders(0.9, 0.8, 0.7);
        let asm = assemble(&p, 0.5).unwrap();
        let f = field_from_assembly(&asm, 1.0).unwrap();
        for v in f {
            assert!(rel(v, asm.pressure) < 1e-9);
        }
        let far = field_pressure_laplace(&p, 0.5, 1e4).unwrap();
        for v in far {
            assert!(v.abs() < 1e-12 * asm.pressure.abs());
        }
        assert!(field_pressure_laplace(&p, 0.5, 0.5).is_err());
    }
}
