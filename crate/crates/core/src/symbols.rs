//! Value types for constant-Christoffel planar models: the symbol table
//! itself, symmetric bilinear forms, the covariant derivative of the Ricci
//! tensor, 2x2 linear maps, and the canonical model tables.

use crate::error::{Error, Result};

/// The six independent Christoffel symbols `C_ij^k` of a torsion-free
/// connection on the plane with constant coefficients.
///
/// Torsion-freeness means `C_ij^k = C_ji^k`, so only `i <= j` is stored and
/// the symmetry can never be violated. Component order throughout the crate
/// is `(111, 112, 121, 122, 221, 222)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChristoffelSymbols {
    c111: f64,
    c112: f64,
    c121: f64,
    c122: f64,
    c221: f64,
    c222: f64,
}

impl ChristoffelSymbols {
    /// Builds a symbol table, rejecting non-finite entries so every
    /// downstream computation can assume finite input.
    pub fn new(c111: f64, c112: f64, c121: f64, c122: f64, c221: f64, c222: f64) -> Result<Self> {
        let all = [c111, c112, c121, c122, c221, c222];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("Christoffel symbols"));
        }
        Ok(Self {
            c111,
            c112,
            c121,
            c122,
            c221,
            c222,
        })
    }

    pub fn zero() -> Self {
        Self {
            c111: 0.0,
            c112: 0.0,
            c121: 0.0,
            c122: 0.0,
            c221: 0.0,
            c222: 0.0,
        }
    }

    pub fn from_components(c: [f64; 6]) -> Result<Self> {
        Self::new(c[0], c[1], c[2], c[3], c[4], c[5])
    }

    /// Components in the fixed order `(111, 112, 121, 122, 221, 222)`.
    pub fn components(&self) -> [f64; 6] {
        [
            self.c111, self.c112, self.c121, self.c122, self.c221, self.c222,
        ]
    }

    pub fn c111(&self) -> f64 {
        self.c111
    }
    pub fn c112(&self) -> f64 {
        self.c112
    }
    pub fn c121(&self) -> f64 {
        self.c121
    }
    pub fn c122(&self) -> f64 {
        self.c122
    }
    pub fn c221(&self) -> f64 {
        self.c221
    }
    pub fn c222(&self) -> f64 {
        self.c222
    }

    /// Full symmetric access `Gamma_ij^k` with zero-based indices.
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> f64 {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        match (lo, hi, k) {
            (0, 0, 0) => self.c111,
            (0, 0, 1) => self.c112,
            (0, 1, 0) => self.c121,
            (0, 1, 1) => self.c122,
            (1, 1, 0) => self.c221,
            (1, 1, 1) => self.c222,
            _ => panic!("Christoffel index out of range: ({i},{j},{k})"),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.components().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min_abs(&self) -> f64 {
        self.components()
            .iter()
            .fold(f64::INFINITY, |m, v| m.min(v.abs()))
    }
}

/// A symmetric bilinear form on the plane (a symmetric 2x2 matrix).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricBilinear {
    pub m11: f64,
    pub m12: f64,
    pub m22: f64,
}

impl SymmetricBilinear {
    pub fn new(m11: f64, m12: f64, m22: f64) -> Self {
        Self { m11, m12, m22 }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m12
    }

    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    pub fn max_abs(&self) -> f64 {
        self.m11.abs().max(self.m12.abs()).max(self.m22.abs())
    }

    /// Evaluates the form on a pair of vectors.
    pub fn eval(&self, xi: [f64; 2], eta: [f64; 2]) -> f64 {
        self.m11 * xi[0] * eta[0]
            + self.m12 * (xi[0] * eta[1] + xi[1] * eta[0])
            + self.m22 * xi[1] * eta[1]
    }

    /// Eigenvalues in ascending order. For a symmetric 2x2 matrix the
    /// discriminant `(m11 - m22)^2 + 4 m12^2` is non-negative, so both
    /// eigenvalues are real.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let half_tr = 0.5 * (self.m11 + self.m22);
        let half_diff = 0.5 * (self.m11 - self.m22);
        let radius = (half_diff * half_diff + self.m12 * self.m12).sqrt();
        (half_tr - radius, half_tr + radius)
    }

    /// Matrix inverse; fails when the determinant is exactly zero.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return Err(Error::SingularMap { det: d });
        }
        Ok(Self::new(self.m22 / d, -self.m12 / d, self.m11 / d))
    }

    /// Pullback `rho(M., M.)` by a linear map, i.e. `M^T rho M` as matrices.
    pub fn pulled_back_by(&self, m: &LinearMap) -> Self {
        let e1 = m.apply([1.0, 0.0]);
        let e2 = m.apply([0.0, 1.0]);
        Self::new(self.eval(e1, e1), self.eval(e1, e2), self.eval(e2, e2))
    }
}

/// Components of the covariant derivative of a symmetric 2-tensor:
/// `d(i, j, k)` holds the derivative in direction `i` of the `(j, k)`
/// component, symmetric in `(j, k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RicciDerivative {
    // comp[i] = [d_i11, d_i12, d_i22]
    comp: [[f64; 3]; 2],
}

impl RicciDerivative {
    pub fn from_components(comp: [[f64; 3]; 2]) -> Self {
        Self { comp }
    }

    pub fn d(&self, i: usize, j: usize, k: usize) -> f64 {
        let (lo, hi) = if j <= k { (j, k) } else { (k, j) };
        self.comp[i][lo + hi]
    }

    pub fn max_abs(&self) -> f64 {
        self.comp
            .iter()
            .flatten()
            .fold(0.0, |m: f64, v| m.max(v.abs()))
    }

    pub fn components(&self) -> [[f64; 3]; 2] {
        self.comp
    }
}

/// An invertible 2x2 real matrix acting on the plane (and, by pushforward,
/// on symbol tables).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearMap {
    pub t11: f64,
    pub t12: f64,
    pub t21: f64,
    pub t22: f64,
}

impl LinearMap {
    pub fn new(t11: f64, t12: f64, t21: f64, t22: f64) -> Self {
        Self { t11, t12, t21, t22 }
    }

    pub fn identity() -> Self {
        Self::new(1.0, 0.0, 0.0, 1.0)
    }

    /// Horizontal shear `(x1, x2) -> (x1 + eps * x2, x2)`.
    pub fn shear_first(eps: f64) -> Self {
        Self::new(1.0, eps, 0.0, 1.0)
    }

    /// Vertical shear `(x1, x2) -> (x1, eps * x1 + x2)`.
    pub fn shear_second(eps: f64) -> Self {
        Self::new(1.0, 0.0, eps, 1.0)
    }

    pub fn det(&self) -> f64 {
        self.t11 * self.t22 - self.t12 * self.t21
    }

    pub fn max_abs(&self) -> f64 {
        self.t11
            .abs()
            .max(self.t12.abs())
            .max(self.t21.abs())
            .max(self.t22.abs())
    }

    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [
            self.t11 * v[0] + self.t12 * v[1],
            self.t21 * v[0] + self.t22 * v[1],
        ]
    }

    /// Matrix product `self * rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &LinearMap) -> Self {
        Self::new(
            self.t11 * rhs.t11 + self.t12 * rhs.t21,
            self.t11 * rhs.t12 + self.t12 * rhs.t22,
            self.t21 * rhs.t11 + self.t22 * rhs.t21,
            self.t21 * rhs.t12 + self.t22 * rhs.t22,
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        let scale = self.max_abs().powi(2).max(1.0);
        if !d.is_finite() || d.abs() <= 1e-12 * scale {
            return Err(Error::SingularMap { det: d });
        }
        Ok(Self::new(
            self.t22 / d,
            -self.t12 / d,
            -self.t21 / d,
            self.t11 / d,
        ))
    }
}

/// The canonical model tables. `MPlus(delta)` and `MMinus(delta)` require
/// `delta >= 0`; the sign of `delta` can always be flipped by the coordinate
/// change `x1 -> -x1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CanonicalModel {
    M1,
    M2,
    M3,
    MPlus(f64),
    MMinus(f64),
}

impl CanonicalModel {
    pub fn christoffel(&self) -> Result<ChristoffelSymbols> {
        match *self {
            CanonicalModel::M1 => ChristoffelSymbols::new(-1.0, 0.0, -0.5, 0.0, 0.0, 0.0),
            CanonicalModel::M2 => ChristoffelSymbols::new(0.0, 0.0, -0.5, 0.0, 0.0, 0.0),
            CanonicalModel::M3 => ChristoffelSymbols::new(-1.0, 0.0, 0.0, 0.0, -1.0, 0.0),
            CanonicalModel::MPlus(delta) => {
                check_delta(delta)?;
                ChristoffelSymbols::new(0.0, 1.0, 0.5, 0.5 * delta, 0.0, 0.0)
            }
            CanonicalModel::MMinus(delta) => {
                check_delta(delta)?;
                ChristoffelSymbols::new(0.0, -1.0, 0.5, 0.5 * delta, 0.0, 0.0)
            }
        }
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !delta.is_finite() || delta < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "model parameter delta must be finite and non-negative, got {delta}"
        )));
    }
    Ok(())
}
