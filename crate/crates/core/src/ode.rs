//! Embedded Dormand-Prince 5(4) integration with finite-time blow-up
//! detection.
//!
//! The right-hand sides in this crate are quadratic in the state, so
//! trajectories either exist globally or escape to infinity in finite time
//! with `|y| ~ K / |t_esc - t|`. The stepper detects the escape through a
//! norm threshold (or persistent step-size collapse) and extrapolates the
//! escape time from the last accepted steps: `1 / |y|` is asymptotically
//! linear in `t`, and exactly linear along logarithmic geodesics.

use crate::error::{Error, Result};

/// Options for the adaptive integrator.
#[derive(Debug, Clone)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Declare blow-up once the monitored norm exceeds this.
    pub blow_up_norm: f64,
    pub max_steps: usize,
    /// When set, samples are produced exactly at these times (plus the final
    /// state on early termination) instead of at every accepted step. Times
    /// must be strictly monotone in the direction of integration.
    pub t_eval: Option<Vec<f64>>,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-10,
            blow_up_norm: 1e8,
            max_steps: 4_000_000,
            t_eval: None,
        }
    }
}

/// Why integration stopped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OdeTermination {
    HorizonReached,
    /// The monitored norm crossed the threshold; `escape_time` extrapolates
    /// the finite escape time from the trailing accepted steps.
    BlowUp { escape_time: f64 },
    /// The step size collapsed without the norm growing: a genuine numeric
    /// failure rather than a blow-up signature.
    StepUnderflow,
}

#[derive(Debug, Clone)]
pub struct OdeSolution<const N: usize> {
    pub samples: Vec<(f64, [f64; N])>,
    pub termination: OdeTermination,
    pub steps_accepted: usize,
    pub steps_rejected: usize,
    pub max_monitor: f64,
}

// Dormand-Prince coefficients (FSAL pair of orders 5 and 4).
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// Difference between the 5th- and 4th-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 10.0;
/// Steps smaller than this fraction of the span trigger the underflow path.
const MIN_STEP_FRACTION: f64 = 1e-13;
/// Number of trailing accepted steps used for the escape-time fit.
const FIT_WINDOW: usize = 10;

/// Integrates `y' = rhs(t, y)` over `t_span` with error control, recording
/// `monitor(y)` for blow-up detection.
pub fn integrate_adaptive<const N: usize>(
    rhs: impl Fn(f64, &[f64; N]) -> [f64; N],
    t_span: (f64, f64),
    y0: [f64; N],
    monitor: impl Fn(&[f64; N]) -> f64,
    opts: &OdeOptions,
) -> Result<OdeSolution<N>> {
    validate(t_span, opts)?;
    let (t0, t1) = t_span;
    let dir = (t1 - t0).signum();
    let span = (t1 - t0).abs();
    let min_step = MIN_STEP_FRACTION * span;

    let mut t = t0;
    let mut y = y0;
    let mut k1 = rhs(t, &y);
    let mut h = initial_step(&rhs, t, &y, &k1, dir, opts).min(span);

    let mut eval_iter = opts.t_eval.as_deref().map(|ts| ts.iter().copied());
    let mut next_eval = eval_iter.as_mut().and_then(|it| it.next());

    let mut samples: Vec<(f64, [f64; N])> = Vec::new();
    match next_eval {
        Some(te) if (te - t0).abs() <= 1e-14 * span.max(1.0) => {
            samples.push((t0, y0));
            next_eval = eval_iter.as_mut().and_then(|it| it.next());
        }
        Some(_) => {}
        None if opts.t_eval.is_some() => {}
        None => samples.push((t0, y0)),
    }

    // Trailing accepted (t, monitor) pairs for the escape fit.
    let mut history: Vec<(f64, f64)> = vec![(t0, monitor(&y0))];
    let mut max_monitor = monitor(&y0);
    let mut accepted = 0usize;
    let mut rejected = 0usize;

    loop {
        if accepted + rejected >= opts.max_steps {
            return Ok(finish(
                samples,
                OdeTermination::StepUnderflow,
                accepted,
                rejected,
                max_monitor,
                t,
                y,
                opts,
            ));
        }

        // Do not step past the horizon or the next requested sample time.
        let mut h_step = h.min((t1 - t).abs());
        let mut hit_eval = false;
        if let Some(te) = next_eval {
            let to_eval = (te - t).abs();
            if to_eval <= h_step * (1.0 + 1e-12) {
                h_step = to_eval;
                hit_eval = true;
            }
        }
        if h_step < min_step {
            let termination = classify_underflow(&history, dir, opts);
            return Ok(finish(
                samples,
                termination,
                accepted,
                rejected,
                max_monitor,
                t,
                y,
                opts,
            ));
        }

        let (y_new, err, k_last) = dopri_step(&rhs, t, &y, &k1, dir * h_step, opts);

        if err <= 1.0 {
            t += dir * h_step;
            y = y_new;
            k1 = k_last;
            accepted += 1;

            let m = monitor(&y);
            max_monitor = max_monitor.max(m);
            history.push((t, m));
            if history.len() > FIT_WINDOW {
                history.remove(0);
            }

            if hit_eval {
                samples.push((t, y));
                next_eval = eval_iter.as_mut().and_then(|it| it.next());
            } else if opts.t_eval.is_none() {
                samples.push((t, y));
            }

            if m > opts.blow_up_norm {
                let escape_time = fit_escape_time(&history, dir).unwrap_or(t);
                return Ok(finish(
                    samples,
                    OdeTermination::BlowUp { escape_time },
                    accepted,
                    rejected,
                    max_monitor,
                    t,
                    y,
                    opts,
                ));
            }
            if (t1 - t).abs() <= 1e-14 * span.max(1.0) {
                return Ok(finish(
                    samples,
                    OdeTermination::HorizonReached,
                    accepted,
                    rejected,
                    max_monitor,
                    t,
                    y,
                    opts,
                ));
            }

            let mut factor = SAFETY * err.max(1e-12).powf(-0.2);
            factor = factor.clamp(MIN_FACTOR, MAX_FACTOR);
            h = (h_step * factor).min(span);
        } else {
            rejected += 1;
            let factor = (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, 1.0);
            h = h_step * factor;
            if h < min_step {
                // Persistent error-control failure at the minimum step: a
                // blow-up signature when the norm has already exploded.
                let termination = classify_underflow(&history, dir, opts);
                return Ok(finish(
                    samples,
                    termination,
                    accepted,
                    rejected,
                    max_monitor,
                    t,
                    y,
                    opts,
                ));
            }
        }
    }
}

fn validate(t_span: (f64, f64), opts: &OdeOptions) -> Result<()> {
    let (t0, t1) = t_span;
    if !t0.is_finite() || !t1.is_finite() || t0 == t1 {
        return Err(Error::InvalidParameter(format!(
            "time span must be finite and non-degenerate, got ({t0}, {t1})"
        )));
    }
    if opts.rel_tol.is_nan() || opts.rel_tol <= 0.0 || opts.abs_tol.is_nan() || opts.abs_tol <= 0.0 {
        return Err(Error::InvalidParameter(
            "tolerances must be positive".into(),
        ));
    }
    if opts.blow_up_norm.is_nan() || opts.blow_up_norm <= 0.0 {
        return Err(Error::InvalidParameter(
            "blow-up norm must be positive".into(),
        ));
    }
    if let Some(ts) = &opts.t_eval {
        let dir = (t1 - t0).signum();
        for w in ts.windows(2) {
            if (w[1] - w[0]) * dir <= 0.0 {
                return Err(Error::InvalidParameter(
                    "t_eval must be strictly monotone in the integration direction".into(),
                ));
            }
        }
        if let (Some(first), Some(last)) = (ts.first(), ts.last()) {
            if (first - t0) * dir < -1e-12 || (t1 - last) * dir < -1e-12 {
                return Err(Error::InvalidParameter(
                    "t_eval must lie within the time span".into(),
                ));
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn finish<const N: usize>(
    mut samples: Vec<(f64, [f64; N])>,
    termination: OdeTermination,
    steps_accepted: usize,
    steps_rejected: usize,
    max_monitor: f64,
    t: f64,
    y: [f64; N],
    opts: &OdeOptions,
) -> OdeSolution<N> {
    // On early termination with a fixed sample grid, append the final state
    // so the blow-up point is visible to callers; solutions are never empty.
    let final_missing = samples.last().map(|(ts, _)| *ts != t).unwrap_or(true);
    if final_missing
        && (samples.is_empty()
            || (opts.t_eval.is_some() && !matches!(termination, OdeTermination::HorizonReached)))
    {
        samples.push((t, y));
    }
    OdeSolution {
        samples,
        termination,
        steps_accepted,
        steps_rejected,
        max_monitor,
    }
}

fn dopri_step<const N: usize>(
    rhs: &impl Fn(f64, &[f64; N]) -> [f64; N],
    t: f64,
    y: &[f64; N],
    k1: &[f64; N],
    h: f64,
    opts: &OdeOptions,
) -> ([f64; N], f64, [f64; N]) {
    let mut k = [[0.0; N]; 7];
    k[0] = *k1;
    for stage in 1..7 {
        let mut y_stage = *y;
        for (s, ks) in k.iter().enumerate().take(stage) {
            let a = A[stage][s];
            if a != 0.0 {
                for i in 0..N {
                    y_stage[i] += h * a * ks[i];
                }
            }
        }
        k[stage] = rhs(t + C[stage] * h, &y_stage);
    }
    // Stage 7 used the 5th-order weights, so k[6] is the derivative at the
    // new point (FSAL) and the stage-6 state is the 5th-order solution.
    let mut y_new = *y;
    for (s, ks) in k.iter().enumerate().take(6) {
        let a = A[6][s];
        if a != 0.0 {
            for i in 0..N {
                y_new[i] += h * a * ks[i];
            }
        }
    }

    let mut err_sq = 0.0;
    for i in 0..N {
        let mut e = 0.0;
        for (s, ks) in k.iter().enumerate() {
            e += E[s] * ks[i];
        }
        e *= h;
        let scale = opts.abs_tol + opts.rel_tol * y[i].abs().max(y_new[i].abs());
        let r = e / scale;
        err_sq += r * r;
    }
    let err = (err_sq / N as f64).sqrt();
    (y_new, err, k[6])
}

fn initial_step<const N: usize>(
    rhs: &impl Fn(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    y0: &[f64; N],
    f0: &[f64; N],
    dir: f64,
    opts: &OdeOptions,
) -> f64 {
    let norm = |v: &[f64; N], w: &[f64; N]| -> f64 {
        let mut s = 0.0;
        for i in 0..N {
            let scale = opts.abs_tol + opts.rel_tol * w[i].abs();
            let r = v[i] / scale;
            s += r * r;
        }
        (s / N as f64).sqrt()
    };
    let d0 = norm(y0, y0);
    let d1 = norm(f0, y0);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    let mut y1 = *y0;
    for i in 0..N {
        y1[i] += dir * h0 * f0[i];
    }
    let f1 = rhs(t0 + dir * h0, &y1);
    let mut df = [0.0; N];
    for i in 0..N {
        df[i] = f1[i] - f0[i];
    }
    let d2 = norm(&df, y0) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(1.0 / 6.0)
    };
    (100.0 * h0).min(h1)
}

/// Least-squares line through the trailing `(t, 1 / monitor)` points; the
/// escape time is where the line crosses zero. Exact when the monitored norm
/// behaves like `K / |t_esc - t|`.
fn fit_escape_time(history: &[(f64, f64)], dir: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = history
        .iter()
        .filter(|(_, m)| *m > 0.0)
        .map(|(t, m)| (*t, 1.0 / *m))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mean_t = pts.iter().map(|(t, _)| t).sum::<f64>() / n;
    let mean_y = pts.iter().map(|(_, y)| y).sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var = 0.0;
    for (t, y) in &pts {
        cov += (t - mean_t) * (y - mean_y);
        var += (t - mean_t) * (t - mean_t);
    }
    if var == 0.0 {
        return None;
    }
    let slope = cov / var;
    // 1 / |y| must be shrinking toward zero in the direction of travel.
    if slope * dir >= 0.0 {
        return None;
    }
    let intercept = mean_y - slope * mean_t;
    let t_esc = -intercept / slope;
    let t_last = history.last()?.0;
    // The escape must lie ahead of the integration front.
    if (t_esc - t_last) * dir < 0.0 {
        return None;
    }
    Some(t_esc)
}

fn classify_underflow(history: &[(f64, f64)], dir: f64, opts: &OdeOptions) -> OdeTermination {
    let last = history.last().map(|(_, m)| *m).unwrap_or(0.0);
    if last > opts.blow_up_norm {
        if let Some(escape_time) = fit_escape_time(history, dir) {
            return OdeTermination::BlowUp { escape_time };
        }
    }
    OdeTermination::StepUnderflow
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm2(v: &[f64; 2]) -> f64 {
        (v[0] * v[0] + v[1] * v[1]).sqrt()
    }

    #[test]
    fn exponential_growth_matches_closed_form() {
        let opts = OdeOptions::default();
        let sol = integrate_adaptive(
            |_, y: &[f64; 1]| [y[0]],
            (0.0, 5.0),
            [1.0],
            |y| y[0].abs(),
            &opts,
        )
        .unwrap();
        assert_eq!(sol.termination, OdeTermination::HorizonReached);
        let (t, y) = *sol.samples.last().unwrap();
        assert!((t - 5.0).abs() < 1e-12);
        assert!((y[0] - 5.0f64.exp()).abs() / 5.0f64.exp() < 1e-9);
    }

    #[test]
    fn riccati_blow_up_and_escape_estimate() {
        // y' = y^2 from y(0) = 1 escapes at t = 1.
        let opts = OdeOptions::default();
        let sol = integrate_adaptive(
            |_, y: &[f64; 1]| [y[0] * y[0]],
            (0.0, 2.0),
            [1.0],
            |y| y[0].abs(),
            &opts,
        )
        .unwrap();
        match sol.termination {
            OdeTermination::BlowUp { escape_time } => {
                assert!((escape_time - 1.0).abs() < 1e-3, "escape {escape_time}");
            }
            other => panic!("expected blow-up, got {other:?}"),
        }
    }

    #[test]
    fn backward_blow_up_is_detected() {
        // y' = -y^2 integrated backward from y(0) = 1 escapes at t = -1.
        let opts = OdeOptions::default();
        let sol = integrate_adaptive(
            |_, y: &[f64; 1]| [-y[0] * y[0]],
            (0.0, -2.0),
            [1.0],
            |y| y[0].abs(),
            &opts,
        )
        .unwrap();
        match sol.termination {
            OdeTermination::BlowUp { escape_time } => {
                assert!((escape_time + 1.0).abs() < 1e-3, "escape {escape_time}");
            }
            other => panic!("expected blow-up, got {other:?}"),
        }
    }

    #[test]
    fn harmonic_oscillator_on_a_fixed_grid() {
        let grid: Vec<f64> = (0..=20).map(|k| k as f64 * 0.5).collect();
        let opts = OdeOptions {
            t_eval: Some(grid.clone()),
            ..OdeOptions::default()
        };
        let sol = integrate_adaptive(
            |_, y: &[f64; 2]| [y[1], -y[0]],
            (0.0, 10.0),
            [1.0, 0.0],
            norm2,
            &opts,
        )
        .unwrap();
        assert_eq!(sol.termination, OdeTermination::HorizonReached);
        assert_eq!(sol.samples.len(), grid.len());
        for (t, y) in &sol.samples {
            assert!((y[0] - t.cos()).abs() < 1e-8, "t = {t}");
            assert!((y[1] + t.sin()).abs() < 1e-8, "t = {t}");
        }
    }

    #[test]
    fn degenerate_span_is_rejected() {
        let opts = OdeOptions::default();
        let r = integrate_adaptive(|_, y: &[f64; 1]| [y[0]], (1.0, 1.0), [1.0], |y| y[0], &opts);
        assert!(r.is_err());
    }

    #[test]
    fn invalid_tolerances_are_rejected() {
        let opts = OdeOptions {
            rel_tol: 0.0,
            ..OdeOptions::default()
        };
        let r = integrate_adaptive(|_, y: &[f64; 1]| [y[0]], (0.0, 1.0), [1.0], |y| y[0], &opts);
        assert!(r.is_err());
    }

    #[test]
    fn unsatisfiable_tolerance_underflows_without_blow_up() {
        // Tolerances below machine noise force persistent rejection; with a
        // bounded state this must surface as StepUnderflow, not BlowUp.
        let opts = OdeOptions {
            rel_tol: 1e-300,
            abs_tol: 1e-300,
            ..OdeOptions::default()
        };
        let sol = integrate_adaptive(
            |_, y: &[f64; 2]| [y[1], -y[0]],
            (0.0, 10.0),
            [1.0, 0.0],
            norm2,
            &opts,
        )
        .unwrap();
        assert_eq!(sol.termination, OdeTermination::StepUnderflow);
        assert!(sol.max_monitor < 10.0);
    }

    #[test]
    fn forward_backward_round_trip() {
        let opts = OdeOptions::default();
        let fwd = integrate_adaptive(
            |_, y: &[f64; 2]| [y[1], -(y[0] * y[0]) * 0.3 - y[0]],
            (0.0, 5.0),
            [0.7, -0.2],
            norm2,
            &opts,
        )
        .unwrap();
        let (_, y_end) = *fwd.samples.last().unwrap();
        let bwd = integrate_adaptive(
            |_, y: &[f64; 2]| [y[1], -(y[0] * y[0]) * 0.3 - y[0]],
            (5.0, 0.0),
            y_end,
            norm2,
            &opts,
        )
        .unwrap();
        let (_, y_back) = *bwd.samples.last().unwrap();
        assert!((y_back[0] - 0.7).abs() < 1e-6);
        assert!((y_back[1] + 0.2).abs() < 1e-6);
    }
}
