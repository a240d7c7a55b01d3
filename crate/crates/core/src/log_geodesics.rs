//! Logarithmic trial geodesics.
//!
//! A curve `(a, b) * log(t)` is a geodesic of the model `C` exactly when the
//! pair of quadratics
//!
//! ```text
//! a = E1(a, b),   b = E2(a, b),   E_i(a, b) = a^2 C_11^i + 2ab C_12^i + b^2 C_22^i
//! ```
//!
//! has a solution. A nonzero solution certifies that the model is
//! geodesically incomplete, so enumerating these solutions is the algebraic
//! half of the completeness decision.

use crate::poly::{real_roots, RootFinding};
use crate::symbols::ChristoffelSymbols;

/// Coefficient arrays (in increasing degree) of `E1(1, x)`, `E2(1, x)` and
/// the resolvent cubic `E3(x) = x * E1(1, x) - E2(1, x)` whose real roots
/// parametrize solutions with `a != 0` via `b = x * a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EPolynomials {
    pub e1: [f64; 3],
    pub e2: [f64; 3],
    pub e3: [f64; 4],
}

impl EPolynomials {
    pub fn eval_e1(&self, x: f64) -> f64 {
        self.e1[0] + x * (self.e1[1] + x * self.e1[2])
    }

    pub fn eval_e2(&self, x: f64) -> f64 {
        self.e2[0] + x * (self.e2[1] + x * self.e2[2])
    }

    pub fn eval_e3(&self, x: f64) -> f64 {
        self.e3[0] + x * (self.e3[1] + x * (self.e3[2] + x * self.e3[3]))
    }
}

pub fn e_polynomials(c: &ChristoffelSymbols) -> EPolynomials {
    EPolynomials {
        e1: [c.c111(), 2.0 * c.c121(), c.c221()],
        e2: [c.c112(), 2.0 * c.c122(), c.c222()],
        e3: [
            -c.c112(),
            c.c111() - 2.0 * c.c122(),
            2.0 * c.c121() - c.c222(),
            c.c221(),
        ],
    }
}

/// Evaluates the full quadratic `E_i(a, b)` for `i = 1, 2`.
pub fn e_quadratics(c: &ChristoffelSymbols, a: f64, b: f64) -> [f64; 2] {
    [
        a * a * c.c111() + 2.0 * a * b * c.c121() + b * b * c.c221(),
        a * a * c.c112() + 2.0 * a * b * c.c122() + b * b * c.c222(),
    ]
}

/// A nonzero solution of the log-geodesic system.
///
/// `family` marks representatives of a one-parameter family (the degenerate
/// case where the resolvent cubic vanishes identically); `residual` is the
/// verified back-substitution error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGeodesicSolution {
    pub a: f64,
    pub b: f64,
    pub family: bool,
    pub residual: f64,
}

impl LogGeodesicSolution {
    /// The ratio `b / a`, used for deterministic ordering; solutions on the
    /// `a = 0` axis sort last.
    pub fn slope(&self) -> f64 {
        if self.a != 0.0 {
            self.b / self.a
        } else {
            f64::INFINITY
        }
    }
}

/// All nonzero real solutions of the log-geodesic system, in ascending
/// `b / a` order (solutions with `a = 0` last).
///
/// Enumeration: each real root `x` of the resolvent cubic with
/// `E1(1, x) != 0` yields the candidate `(1, x) / E1(1, x)`; the axis branch
/// `a = 0` requires `C_22^1 = 0` and `C_22^2 != 0` and yields
/// `(0, 1 / C_22^2)`; an identically-zero resolvent yields a one-parameter
/// family, reported through representatives at small integer slopes. Every
/// candidate is re-verified by substituting into the quadratic system, which
/// is the final arbiter regardless of the thresholds used along the way.
pub fn log_geodesic_solutions(c: &ChristoffelSymbols, tol: f64) -> Vec<LogGeodesicSolution> {
    let ep = e_polynomials(c);
    let coeff_scale = 1.0
        + ep.e3
            .iter()
            .chain(ep.e1.iter())
            .fold(0.0f64, |m, v| m.max(v.abs()));
    let nonzero = 1e-9 * coeff_scale;

    let mut out: Vec<LogGeodesicSolution> = Vec::new();
    let mut push_candidate = |a: f64, b: f64, family: bool| {
        // Normalize signed zeros so serialized output is stable.
        let a = if a == 0.0 { 0.0 } else { a };
        let b = if b == 0.0 { 0.0 } else { b };
        if a == 0.0 && b == 0.0 {
            return;
        }
        let [e1, e2] = e_quadratics(c, a, b);
        let residual = (a - e1).abs().max((b - e2).abs());
        if residual <= tol * (a * a + b * b).max(1.0) {
            out.push(LogGeodesicSolution {
                a,
                b,
                family,
                residual,
            });
        }
    };

    match real_roots(&ep.e3, 1e-12) {
        RootFinding::IdenticallyZero => {
            for slope in [0.0, 1.0, -1.0, 2.0, -2.0] {
                let denom = ep.eval_e1(slope);
                if denom.abs() > nonzero {
                    push_candidate(1.0 / denom, slope / denom, true);
                }
            }
        }
        RootFinding::Roots(roots) => {
            for root in roots {
                let denom = ep.eval_e1(root.value);
                if denom.abs() > nonzero {
                    push_candidate(1.0 / denom, root.value / denom, false);
                }
            }
        }
    }

    if c.c221().abs() <= nonzero && c.c222().abs() > nonzero {
        push_candidate(0.0, 1.0 / c.c222(), false);
    }

    out.sort_by(|p, q| p.slope().partial_cmp(&q.slope()).unwrap());
    out.dedup_by(|p, q| {
        (p.a - q.a).abs() <= 1e-9 * q.a.abs().max(1.0)
            && (p.b - q.b).abs() <= 1e-9 * q.b.abs().max(1.0)
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::CanonicalModel;

    fn model(m: CanonicalModel) -> ChristoffelSymbols {
        m.christoffel().unwrap()
    }

    #[test]
    fn e_polynomials_of_the_indefinite_family() {
        for delta in [0.0, 1.0, 3.0] {
            let ep = e_polynomials(&model(CanonicalModel::MMinus(delta)));
            assert_eq!(ep.e1, [0.0, 1.0, 0.0]);
            assert_eq!(ep.e2, [-1.0, delta, 0.0]);
            assert_eq!(ep.e3, [1.0, -delta, 1.0, 0.0]);
        }
    }

    #[test]
    fn e_polynomials_of_m1_and_flat() {
        let ep = e_polynomials(&model(CanonicalModel::M1));
        assert_eq!(ep.e1, [-1.0, -1.0, 0.0]);
        assert_eq!(ep.e2, [0.0, 0.0, 0.0]);
        assert_eq!(ep.e3, [0.0, -1.0, -1.0, 0.0]);

        let ep = e_polynomials(&ChristoffelSymbols::zero());
        assert_eq!(ep.e1, [0.0; 3]);
        assert_eq!(ep.e2, [0.0; 3]);
        assert_eq!(ep.e3, [0.0; 4]);
    }

    #[test]
    fn resolvent_identity_holds_pointwise() {
        let c = ChristoffelSymbols::new(0.7, -0.4, 1.1, 0.3, -0.9, 0.6).unwrap();
        let ep = e_polynomials(&c);
        for x in [-2.0, -0.5, 0.0, 0.3, 1.7] {
            let direct = x * ep.eval_e1(x) - ep.eval_e2(x);
            assert!((ep.eval_e3(x) - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn m1_has_the_horizontal_witness() {
        let sols = log_geodesic_solutions(&model(CanonicalModel::M1), 1e-9);
        assert_eq!(sols.len(), 1);
        assert!((sols[0].a + 1.0).abs() < 1e-12);
        assert!(sols[0].b.abs() < 1e-12);
    }

    #[test]
    fn m2_admits_no_log_geodesic() {
        assert!(log_geodesic_solutions(&model(CanonicalModel::M2), 1e-9).is_empty());
    }

    #[test]
    fn negative_definite_family_roots() {
        // delta = 0: exactly {(-1, 1), (1, 1)}, ordered by slope.
        let sols = log_geodesic_solutions(&model(CanonicalModel::MPlus(0.0)), 1e-9);
        assert_eq!(sols.len(), 2);
        assert!((sols[0].a + 1.0).abs() < 1e-12 && (sols[0].b - 1.0).abs() < 1e-12);
        assert!((sols[1].a - 1.0).abs() < 1e-12 && (sols[1].b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn indefinite_family_witnesses_above_the_threshold() {
        let sols = log_geodesic_solutions(&model(CanonicalModel::MMinus(3.0)), 1e-9);
        assert_eq!(sols.len(), 2);
        let lo = 0.5 * (3.0 - 5.0f64.sqrt());
        let hi = 0.5 * (3.0 + 5.0f64.sqrt());
        // Ascending slope b/a puts the larger a first.
        assert!((sols[0].a - hi).abs() < 1e-12 && (sols[0].b - 1.0).abs() < 1e-12);
        assert!((sols[1].a - lo).abs() < 1e-12 && (sols[1].b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn indefinite_family_below_the_threshold_is_witness_free() {
        for delta in [0.0, 0.5, 1.0, 1.99] {
            assert!(
                log_geodesic_solutions(&model(CanonicalModel::MMinus(delta)), 1e-9).is_empty(),
                "delta = {delta}"
            );
        }
    }

    #[test]
    fn boundary_delta_two_collapses_to_one_witness() {
        let sols = log_geodesic_solutions(&model(CanonicalModel::MMinus(2.0)), 1e-9);
        assert_eq!(sols.len(), 1);
        assert!((sols[0].a - 1.0).abs() < 1e-10);
        assert!((sols[0].b - 1.0).abs() < 1e-10);
    }

    #[test]
    fn axis_branch_solution() {
        // c221 = 0, c222 = 3: the axis solution (0, 1/3); c121 = 1 adds none.
        let c = ChristoffelSymbols::new(0.0, 0.0, 1.0, 0.0, 0.0, 3.0).unwrap();
        let sols = log_geodesic_solutions(&c, 1e-9);
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].a, 0.0);
        assert!((sols[0].b - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn degenerate_resolvent_yields_a_family() {
        // c111 = 2*c122, c222 = 2*c121 with c221 = c112 = 0 kills the
        // resolvent identically; with c122 = 1, c121 = 0 every slope gives
        // the solution (1/2, slope/2).
        let c = ChristoffelSymbols::new(2.0, 0.0, 0.0, 1.0, 0.0, 0.0).unwrap();
        let sols = log_geodesic_solutions(&c, 1e-9);
        assert_eq!(sols.len(), 5);
        assert!(sols.iter().all(|s| s.family));
        assert!(sols.iter().all(|s| (s.a - 0.5).abs() < 1e-12));
    }

    #[test]
    fn every_witness_satisfies_the_system() {
        let models = [
            model(CanonicalModel::M1),
            model(CanonicalModel::MPlus(1.0)),
            model(CanonicalModel::MMinus(2.5)),
            ChristoffelSymbols::new(0.9, -1.1, 0.4, 0.7, -0.2, 1.3).unwrap(),
        ];
        for c in &models {
            for s in log_geodesic_solutions(c, 1e-9) {
                let [e1, e2] = e_quadratics(c, s.a, s.b);
                assert!((s.a - e1).abs() < 1e-9 * (s.a * s.a + s.b * s.b).max(1.0));
                assert!((s.b - e2).abs() < 1e-9 * (s.a * s.a + s.b * s.b).max(1.0));
            }
        }
    }
}
