//! Numerical verification of affine Killing fields and of the coordinate
//! change linking `M3` to its complete cover.
//!
//! A field `X` preserves the connection when its Lie derivative of the
//! symbols vanishes:
//!
//! ```text
//! (L_X Gamma)_ij^k = d_i d_j X^k + X^m d_m Gamma_ij^k
//!                    + Gamma_mj^k d_i X^m + Gamma_im^k d_j X^m
//!                    - Gamma_ij^m d_m X^k
//! ```
//!
//! All derivatives are central finite differences refined once by Richardson
//! extrapolation on the `(h, 2h)` pair; the basis-function family is small
//! enough that a symbolic engine would buy nothing.

use crate::error::{Error, Result};
use crate::geodesics::ModelKind;
use crate::symbols::CanonicalModel;

/// Scalar basis functions for field components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisFn {
    One,
    X1,
    X2,
    ExpX1,
    SinX2,
    CosX2,
}

impl BasisFn {
    fn eval(&self, x: [f64; 2]) -> f64 {
        match self {
            BasisFn::One => 1.0,
            BasisFn::X1 => x[0],
            BasisFn::X2 => x[1],
            BasisFn::ExpX1 => x[0].exp(),
            BasisFn::SinX2 => x[1].sin(),
            BasisFn::CosX2 => x[1].cos(),
        }
    }
}

/// One term `coeff * product(factors) * d/dx^direction`.
#[derive(Debug, Clone)]
pub struct FieldTerm {
    pub coeff: f64,
    pub factors: Vec<BasisFn>,
    pub direction: usize,
}

impl FieldTerm {
    pub fn new(coeff: f64, factors: Vec<BasisFn>, direction: usize) -> Self {
        assert!(direction < 2, "direction must be 0 or 1");
        Self {
            coeff,
            factors,
            direction,
        }
    }
}

/// A vector field given as a sum of basis-function terms.
#[derive(Debug, Clone)]
pub struct VectorFieldSpec {
    pub terms: Vec<FieldTerm>,
}

impl VectorFieldSpec {
    pub fn new(terms: Vec<FieldTerm>) -> Self {
        Self { terms }
    }

    /// The coordinate field `d/dx^direction`.
    pub fn coordinate(direction: usize) -> Self {
        Self::new(vec![FieldTerm::new(1.0, vec![BasisFn::One], direction)])
    }

    pub fn eval(&self, x: [f64; 2]) -> [f64; 2] {
        let mut out = [0.0, 0.0];
        for term in &self.terms {
            let mut v = term.coeff;
            for f in &term.factors {
                v *= f.eval(x);
            }
            out[term.direction] += v;
        }
        out
    }
}

/// Maximum component of `L_X Gamma` over the given points: the residual of
/// the affine-Killing equation. Exactly zero for constant fields on constant
/// models; otherwise limited by finite-difference noise (well below 1e-6 at
/// the default step 1e-4).
pub fn verify_killing(
    kind: &ModelKind,
    field: &VectorFieldSpec,
    points: &[[f64; 2]],
    h: f64,
) -> Result<f64> {
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let mut worst = 0.0f64;
    for &p in points {
        let x_comp = |x: [f64; 2], k: usize| field.eval(x)[k];
        // dx[i][k] = d_i X^k, ddx[i][j][k] = d_i d_j X^k.
        let mut dx = [[0.0; 2]; 2];
        let mut ddx = [[[0.0; 2]; 2]; 2];
        for k in 0..2 {
            for i in 0..2 {
                dx[i][k] = d1(|x| x_comp(x, k), p, i, h);
                for j in 0..2 {
                    ddx[i][j][k] = if i == j {
                        d2_same(|x| x_comp(x, k), p, i, h)
                    } else {
                        d2_cross(|x| x_comp(x, k), p, h)
                    };
                }
            }
        }
        // dgamma[m][slot] = d_m Gamma at p, slot in component order.
        let mut dgamma = [[0.0; 6]; 2];
        for m in 0..2 {
            for slot in 0..6 {
                dgamma[m][slot] = d1(|x| kind.gamma_at(&x)[slot], p, m, h);
            }
        }
        let g = kind.gamma_at(&p);
        // Component order is (111, 112, 121, 122, 221, 222): index map.
        let slot = |i: usize, j: usize, k: usize| -> usize {
            let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
            match (lo, hi) {
                (0, 0) => k,
                (0, 1) => 2 + k,
                _ => 4 + k,
            }
        };
        let xv = field.eval(p);
        for i in 0..2 {
            for j in i..2 {
                for k in 0..2 {
                    let mut lie = ddx[i][j][k];
                    for m in 0..2 {
                        lie += xv[m] * dgamma[m][slot(i, j, k)];
                        lie += g[slot(m, j, k)] * dx[i][m];
                        lie += g[slot(i, m, k)] * dx[j][m];
                        lie -= g[slot(i, j, m)] * dx[m][k];
                    }
                    worst = worst.max(lie.abs());
                }
            }
        }
    }
    Ok(worst)
}

/// Verifies the non-linear chart computation behind the complete cover of
/// `M3`: pushing the constant `M3` symbols through `(x1, x2) -> (e^{-x1}, x2)`
/// must produce exactly `Gamma_22^1 = u^1` with every other symbol zero.
/// Returns the largest deviation at the image of `x`, using finite-difference
/// Jacobians and Hessians of the chart and its inverse.
pub fn tilde_m3_chart_check(x: [f64; 2]) -> f64 {
    let phi = |x: [f64; 2]| [(-x[0]).exp(), x[1]];
    let phi_inv = |u: [f64; 2]| [-u[0].ln(), u[1]];
    let u0 = phi(x);
    let h = 1e-3;

    // dx_du[a][i] = d x^i / d u^a; ddx[a][b][i] = d^2 x^i / d u^a d u^b.
    let mut dx_du = [[0.0; 2]; 2];
    let mut ddx = [[[0.0; 2]; 2]; 2];
    for i in 0..2 {
        for a in 0..2 {
            dx_du[a][i] = d1(|u| phi_inv(u)[i], u0, a, h);
            for b in 0..2 {
                ddx[a][b][i] = if a == b {
                    d2_same(|u| phi_inv(u)[i], u0, a, h)
                } else {
                    d2_cross(|u| phi_inv(u)[i], u0, h)
                };
            }
        }
    }
    // du_dx[k][c] = d u^c / d x^k at x.
    let mut du_dx = [[0.0; 2]; 2];
    for c in 0..2 {
        for k in 0..2 {
            du_dx[k][c] = d1(|y| phi(y)[c], x, k, h);
        }
    }

    let c3 = CanonicalModel::M3
        .christoffel()
        .expect("canonical table is valid");
    let mut worst = 0.0f64;
    for a in 0..2 {
        for b in a..2 {
            for cc in 0..2 {
                let mut transformed = 0.0;
                for i in 0..2 {
                    for j in 0..2 {
                        for k in 0..2 {
                            transformed +=
                                dx_du[a][i] * dx_du[b][j] * c3.gamma(i, j, k) * du_dx[k][cc];
                        }
                    }
                }
                for k in 0..2 {
                    transformed += du_dx[k][cc] * ddx[a][b][k];
                }
                let expected = if (a, b, cc) == (1, 1, 0) { u0[0] } else { 0.0 };
                worst = worst.max((transformed - expected).abs());
            }
        }
    }
    worst
}

fn d1(f: impl Fn([f64; 2]) -> f64, p: [f64; 2], dir: usize, h: f64) -> f64 {
    let central = |s: f64| {
        let mut hi = p;
        let mut lo = p;
        hi[dir] += s;
        lo[dir] -= s;
        (f(hi) - f(lo)) / (2.0 * s)
    };
    (4.0 * central(h) - central(2.0 * h)) / 3.0
}

fn d2_same(f: impl Fn([f64; 2]) -> f64, p: [f64; 2], dir: usize, h: f64) -> f64 {
    let second = |s: f64| {
        let mut hi = p;
        let mut lo = p;
        hi[dir] += s;
        lo[dir] -= s;
        (f(hi) - 2.0 * f(p) + f(lo)) / (s * s)
    };
    (4.0 * second(h) - second(2.0 * h)) / 3.0
}

fn d2_cross(f: impl Fn([f64; 2]) -> f64, p: [f64; 2], h: f64) -> f64 {
    let cross = |s: f64| {
        let at = |du: f64, dv: f64| f([p[0] + du, p[1] + dv]);
        (at(s, s) - at(s, -s) - at(-s, s) + at(-s, -s)) / (4.0 * s * s)
    };
    (4.0 * cross(h) - cross(2.0 * h)) / 3.0
}
