//! Real roots of polynomials of degree at most three.
//!
//! Closed-form discriminant dispatch (quadratic formula in its
//! cancellation-safe form, trigonometric/Cardano cubic) followed by a few
//! Newton steps on each root. Degree three is all the ansatz machinery ever
//! needs, so no companion-matrix machinery.

/// A real root with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: u8,
}

/// Outcome of root finding. The identically-zero polynomial is a distinct
/// outcome, not a root list.
#[derive(Debug, Clone, PartialEq)]
pub enum RootFinding {
    IdenticallyZero,
    Roots(Vec<RealRoot>),
}

impl RootFinding {
    pub fn roots(&self) -> &[RealRoot] {
        match self {
            RootFinding::IdenticallyZero => &[],
            RootFinding::Roots(r) => r,
        }
    }
}

/// All real roots of `sum_i coeffs[i] * x^i` (degree <= 3 after trimming
/// negligible leading coefficients), each polished toward residual `tol`.
/// Multiple roots are reported once, with multiplicity.
pub fn real_roots(coeffs: &[f64], tol: f64) -> RootFinding {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 || coeffs.is_empty() {
        return RootFinding::IdenticallyZero;
    }
    let degree = match coeffs
        .iter()
        .rposition(|c| c.abs() > 1e-14 * scale)
    {
        Some(d) => d,
        None => return RootFinding::IdenticallyZero,
    };
    assert!(degree <= 3, "only degrees up to 3 are supported");

    // Deflate exactly-zero low-order coefficients: each is an exact root at
    // the origin, and removing them keeps the closed forms away from it.
    let zeros_at_origin = coeffs[..=degree]
        .iter()
        .take_while(|c| **c == 0.0)
        .count()
        .min(degree);
    let deflated = &coeffs[zeros_at_origin..=degree];
    let degree = degree - zeros_at_origin;

    let c = |i: usize| deflated.get(i).copied().unwrap_or(0.0);
    let mut roots = match degree {
        0 => Vec::new(),
        1 => vec![RealRoot {
            value: -c(0) / c(1),
            multiplicity: 1,
        }],
        2 => quadratic_roots(c(2), c(1), c(0)),
        _ => cubic_roots(c(3), c(2), c(1), c(0)),
    };

    for root in &mut roots {
        root.value = polish(deflated, root.value, root.multiplicity, tol);
    }
    if zeros_at_origin > 0 {
        roots.push(RealRoot {
            value: 0.0,
            multiplicity: zeros_at_origin as u8,
        });
    }
    roots.sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap());
    merge_close(&mut roots, degree as u8);
    RootFinding::Roots(roots)
}

/// Horner evaluation of the polynomial and the requested derivative order.
fn eval_derivative(coeffs: &[f64], x: f64, order: usize) -> f64 {
    let mut acc = 0.0;
    for i in (order..coeffs.len()).rev() {
        let mut factor = 1.0;
        for m in 0..order {
            factor *= (i - m) as f64;
        }
        acc = acc * x + coeffs[i] * factor;
    }
    acc
}

/// Newton steps on the `(multiplicity - 1)`-th derivative, where the root is
/// simple, keeping the best iterate seen.
fn polish(coeffs: &[f64], start: f64, multiplicity: u8, tol: f64) -> f64 {
    let order = (multiplicity - 1) as usize;
    let mut x = start;
    let mut best = start;
    let mut best_val = eval_derivative(coeffs, start, order).abs();
    for _ in 0..8 {
        let f = eval_derivative(coeffs, x, order);
        if f.abs() < best_val {
            best_val = f.abs();
            best = x;
        }
        if f.abs() <= tol {
            return x;
        }
        let df = eval_derivative(coeffs, x, order + 1);
        if df == 0.0 || !df.is_finite() {
            break;
        }
        let step = f / df;
        if !step.is_finite() || step.abs() <= f64::EPSILON * x.abs() {
            break;
        }
        x -= step;
    }
    best
}

fn merge_close(roots: &mut Vec<RealRoot>, degree: u8) {
    let mut merged: Vec<RealRoot> = Vec::with_capacity(roots.len());
    for r in roots.drain(..) {
        match merged.last_mut() {
            Some(prev)
                if (r.value - prev.value).abs()
                    <= 1e-8 * prev.value.abs().max(1.0) =>
            {
                prev.multiplicity = (prev.multiplicity + r.multiplicity).min(degree);
            }
            _ => merged.push(r),
        }
    }
    *roots = merged;
}

fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<RealRoot> {
    let disc = b * b - 4.0 * a * c;
    let disc_scale = (b * b).max((4.0 * a * c).abs());
    if disc.abs() <= 1e-12 * disc_scale {
        return vec![RealRoot {
            value: -b / (2.0 * a),
            multiplicity: 2,
        }];
    }
    if disc < 0.0 {
        return Vec::new();
    }
    // q-form avoids cancellation between -b and the square root.
    let sign = if b >= 0.0 { 1.0 } else { -1.0 };
    let q = -0.5 * (b + sign * disc.sqrt());
    let (r1, r2) = if q != 0.0 {
        (q / a, c / q)
    } else {
        // b == 0 and c == 0: double root at the origin already handled above;
        // here only b == 0, c < 0 remains.
        let r = (-c / a).sqrt();
        (r, -r)
    };
    vec![
        RealRoot {
            value: r1,
            multiplicity: 1,
        },
        RealRoot {
            value: r2,
            multiplicity: 1,
        },
    ]
}

fn cubic_roots(a: f64, b: f64, c: f64, d: f64) -> Vec<RealRoot> {
    // Depress: x = t - b/(3a) turns the cubic into t^3 + p t + q.
    let b = b / a;
    let c = c / a;
    let d = d / a;
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;

    let disc = -4.0 * p * p * p - 27.0 * q * q;
    let disc_scale = (4.0 * p.abs().powi(3)).max(27.0 * q * q);
    let ts: Vec<RealRoot> = if disc_scale == 0.0 {
        vec![RealRoot {
            value: 0.0,
            multiplicity: 3,
        }]
    } else if disc.abs() <= 1e-11 * disc_scale {
        if p.abs() <= 1e-11 * (q.abs().powf(2.0 / 3.0).max(1e-300)) {
            vec![RealRoot {
                value: 0.0,
                multiplicity: 3,
            }]
        } else {
            // t^3 + p t + q = (t - r)^2 (t - s) with r = -3q/(2p), s = 3q/p.
            vec![
                RealRoot {
                    value: -1.5 * q / p,
                    multiplicity: 2,
                },
                RealRoot {
                    value: 3.0 * q / p,
                    multiplicity: 1,
                },
            ]
        }
    } else if disc > 0.0 {
        // Three distinct real roots; p < 0 here.
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (-4.0 * q / (m * m * m)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        (0..3)
            .map(|k| RealRoot {
                value: m * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos(),
                multiplicity: 1,
            })
            .collect()
    } else {
        // One real root; Cardano in the cancellation-safe arrangement.
        let s = (q * q / 4.0 + p * p * p / 27.0).sqrt();
        let sign = if q >= 0.0 { 1.0 } else { -1.0 };
        let r = -sign * (q.abs() / 2.0 + s).cbrt();
        let t = if r != 0.0 { r - p / (3.0 * r) } else { 0.0 };
        vec![RealRoot {
            value: t,
            multiplicity: 1,
        }]
    };

    ts.into_iter()
        .map(|r| RealRoot {
            value: r.value - shift,
            multiplicity: r.multiplicity,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(coeffs: &[f64], x: f64) -> f64 {
        eval_derivative(coeffs, x, 0).abs()
    }

    #[test]
    fn unit_quadratic() {
        let r = real_roots(&[-1.0, 0.0, 1.0], 1e-12);
        let roots = r.roots();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].value + 1.0).abs() < 1e-14);
        assert!((roots[1].value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn triple_root_at_origin() {
        let r = real_roots(&[0.0, 0.0, 0.0, 1.0], 1e-12);
        assert_eq!(
            r.roots(),
            &[RealRoot {
                value: 0.0,
                multiplicity: 3
            }]
        );
    }

    #[test]
    fn golden_ratio_family() {
        // 1 - 3x + x^2 has roots (3 +/- sqrt(5)) / 2.
        let r = real_roots(&[1.0, -3.0, 1.0], 1e-12);
        let roots = r.roots();
        let lo = 0.5 * (3.0 - 5.0f64.sqrt());
        let hi = 0.5 * (3.0 + 5.0f64.sqrt());
        assert!((roots[0].value - lo).abs() < 1e-12);
        assert!((roots[1].value - hi).abs() < 1e-12);
    }

    #[test]
    fn double_root_quadratic() {
        // 1 - 2x + x^2 = (x - 1)^2.
        let r = real_roots(&[1.0, -2.0, 1.0], 1e-12);
        assert_eq!(r.roots().len(), 1);
        assert_eq!(r.roots()[0].multiplicity, 2);
        assert!((r.roots()[0].value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cubic_with_double_root() {
        // (x - 1)^2 (x + 2) = x^3 - 3x + 2.
        let r = real_roots(&[2.0, -3.0, 0.0, 1.0], 1e-12);
        let roots = r.roots();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].value + 2.0).abs() < 1e-10);
        assert_eq!(roots[0].multiplicity, 1);
        assert!((roots[1].value - 1.0).abs() < 1e-8);
        assert_eq!(roots[1].multiplicity, 2);
    }

    #[test]
    fn identically_zero_and_constants() {
        assert_eq!(real_roots(&[], 1e-12), RootFinding::IdenticallyZero);
        assert_eq!(real_roots(&[0.0, 0.0], 1e-12), RootFinding::IdenticallyZero);
        assert_eq!(real_roots(&[2.5], 1e-12), RootFinding::Roots(vec![]));
    }

    #[test]
    fn linear_case() {
        let r = real_roots(&[3.0, -1.5], 1e-12);
        assert_eq!(r.roots().len(), 1);
        assert!((r.roots()[0].value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn cubic_one_real_root() {
        // x^3 + x + 1: single real root near -0.6823278.
        let coeffs = [1.0, 1.0, 0.0, 1.0];
        let r = real_roots(&coeffs, 1e-13);
        assert_eq!(r.roots().len(), 1);
        assert!(residual(&coeffs, r.roots()[0].value) < 1e-13);
    }

    #[test]
    fn random_cubics_have_small_residuals() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 4.0 - 2.0
        };
        for _ in 0..500 {
            let coeffs = [next(), next(), next(), next()];
            let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
            if let RootFinding::Roots(roots) = real_roots(&coeffs, 1e-12) {
                assert!(roots.len() <= 3);
                for root in &roots {
                    let bound = 1e-10 * scale * root.value.abs().max(1.0).powi(3);
                    assert!(
                        residual(&coeffs, root.value) < bound.max(1e-12),
                        "coeffs {coeffs:?} root {root:?}"
                    );
                }
            }
        }
    }
}
