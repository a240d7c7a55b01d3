//! Velocity phase flow of the geodesic equation.
//!
//! In the variables `(u, v) = (-x1', -x2')` the second-order geodesic
//! equation becomes the homogeneous quadratic planar system
//! `(u', v') = (E1(u, v), E2(u, v))`. For the indefinite canonical family
//! this is the field `(u v, u (-u + delta v))`: the vertical axis consists
//! of fixed points, so flow curves never change the sign of `u`, and two
//! sampled inequality certificates (slope decay for `u > 0`, radial decay
//! for `u <= 0`) underpin completeness for `delta < 2`.

use crate::error::{Error, Result};
use crate::log_geodesics::e_quadratics;
use crate::ode::{integrate_adaptive, OdeOptions, OdeTermination};
use crate::symbols::ChristoffelSymbols;

/// The phase field `(E1(u, v), E2(u, v))`.
pub fn phase_field_eval(c: &ChristoffelSymbols, u: f64, v: f64) -> [f64; 2] {
    e_quadratics(c, u, v)
}

/// A rectangular sampling window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
}

impl Window {
    pub fn square(half_width: f64) -> Self {
        Self {
            u_min: -half_width,
            u_max: half_width,
            v_min: -half_width,
            v_max: half_width,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.u_min < self.u_max && self.v_min < self.v_max;
        let finite = [self.u_min, self.u_max, self.v_min, self.v_max]
            .iter()
            .all(|x| x.is_finite());
        if !ok || !finite {
            return Err(Error::InvalidParameter(format!(
                "degenerate sampling window {self:?}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub u: f64,
    pub v: f64,
    pub du: f64,
    pub dv: f64,
}

/// Uniform `n x n` sample of the phase field over `window`, row-major from
/// `(u_min, v_min)`.
pub fn field_grid(c: &ChristoffelSymbols, window: &Window, n: usize) -> Result<Vec<FieldSample>> {
    window.validate()?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "grid needs at least 2 points per side, got {n}"
        )));
    }
    let coord = |lo: f64, hi: f64, k: usize| lo + (hi - lo) * k as f64 / (n - 1) as f64;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        let v = coord(window.v_min, window.v_max, i);
        for j in 0..n {
            let u = coord(window.u_min, window.u_max, j);
            let [du, dv] = phase_field_eval(c, u, v);
            out.push(FieldSample { u, v, du, dv });
        }
    }
    Ok(out)
}

/// A sampled flow curve of the phase field.
#[derive(Debug, Clone)]
pub struct FlowCurve {
    pub samples: Vec<(f64, [f64; 2])>,
    pub termination: OdeTermination,
    pub steps_accepted: usize,
    pub steps_rejected: usize,
}

pub fn flow_integrate(
    c: &ChristoffelSymbols,
    p0: [f64; 2],
    t_span: (f64, f64),
    opts: &OdeOptions,
) -> Result<FlowCurve> {
    let sol = integrate_adaptive(
        |_, y: &[f64; 2]| phase_field_eval(c, y[0], y[1]),
        t_span,
        p0,
        |y| (y[0] * y[0] + y[1] * y[1]).sqrt(),
        opts,
    )?;
    Ok(FlowCurve {
        samples: sol.samples,
        termination: sol.termination,
        steps_accepted: sol.steps_accepted,
        steps_rejected: sol.steps_rejected,
    })
}

/// Slope-decay certificate for the indefinite family with `delta in [0, 2)`.
///
/// Along flow curves the slope `alpha = v' / u'` obeys
/// `alpha' = u (-v^2 - u^2 + delta u v) / v^2`, and the Cauchy-Schwarz bound
/// `u^2 + v^2 - delta u v >= (1 - delta/2) v^2` gives
/// `alpha' <= -eps |u|` with `eps = 1 - delta/2`. Checks the inequality at
/// every sample with `u > 0`, `v != 0`.
pub fn slope_certificate(delta: f64, samples: &[(f64, f64)]) -> Result<bool> {
    if !delta.is_finite() || !(0.0..2.0).contains(&delta) {
        return Err(Error::InvalidParameter(format!(
            "slope certificate needs delta in [0, 2), got {delta}"
        )));
    }
    let eps = 1.0 - delta / 2.0;
    Ok(samples
        .iter()
        .filter(|(u, v)| *u > 0.0 && *v != 0.0)
        .all(|&(u, v)| {
            let alpha_dot = u * (-v * v - u * u + delta * u * v) / (v * v);
            let slack = 1e-12 * (alpha_dot.abs() + eps * u.abs() + 1.0);
            alpha_dot <= -eps * u.abs() + slack
        }))
}

/// Radial-decay certificate in the closed left half-plane: for `delta >= 0`
/// the squared radius obeys `(u^2 + v^2)' = 2 delta u v^2 <= 0` when
/// `u <= 0`.
pub fn radial_certificate(delta: f64, samples: &[(f64, f64)]) -> bool {
    samples.iter().all(|&(u, v)| {
        let derivative = 2.0 * delta * u * v * v;
        derivative <= 1e-12 * (1.0 + derivative.abs())
    })
}
