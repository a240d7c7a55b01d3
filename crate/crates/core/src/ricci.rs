//! Curvature algebra for constant symbols: the Ricci tensor, its covariant
//! derivative, rank/definiteness classification, the auxiliary form
//! `rho_check`, and the scalar invariants `(Sigma, Psi)`.

use crate::error::{Error, Result};
use crate::symbols::{ChristoffelSymbols, RicciDerivative, SymmetricBilinear};

/// Signature class of a symmetric 2x2 form, refined by rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    PositiveSemiRank1,
    NegativeSemiRank1,
    Indefinite,
    Zero,
}

/// Ricci data of a model: the tensor, its covariant derivative, and the
/// derived rank/signature facts.
#[derive(Debug, Clone, Copy)]
pub struct RicciReport {
    pub rho: SymmetricBilinear,
    pub nabla_rho: RicciDerivative,
    pub rank: u8,
    pub definiteness: Definiteness,
    pub is_symmetric_space: bool,
}

/// Ricci tensor of the connection with constant symbols `C`.
///
/// With constant symbols the curvature reduces to the commutator part,
/// `R_ijk^l = Gamma_im^l Gamma_jk^m - Gamma_jm^l Gamma_ik^m`, and the Ricci
/// tensor is the trace over the first slot:
///
/// ```text
/// rho_jk = Gamma_im^i Gamma_jk^m - Gamma_jm^i Gamma_ik^m
/// ```
///
/// The result is exactly symmetric; both terms are built from symmetric
/// contractions.
pub fn ricci(c: &ChristoffelSymbols) -> SymmetricBilinear {
    // trace[m] = Gamma_im^i
    let trace = [
        c.gamma(0, 0, 0) + c.gamma(1, 0, 1),
        c.gamma(0, 1, 0) + c.gamma(1, 1, 1),
    ];
    let entry = |j: usize, k: usize| -> f64 {
        let mut first = 0.0;
        let mut second = 0.0;
        for m in 0..2 {
            first += trace[m] * c.gamma(j, k, m);
            for i in 0..2 {
                second += c.gamma(j, m, i) * c.gamma(i, k, m);
            }
        }
        first - second
    };
    let m12 = 0.5 * (entry(0, 1) + entry(1, 0));
    SymmetricBilinear::new(entry(0, 0), m12, entry(1, 1))
}

/// Covariant derivative of the Ricci tensor. The coordinate derivative term
/// vanishes for constant symbols, leaving
/// `nabla_i rho_jk = -Gamma_ij^m rho_mk - Gamma_ik^m rho_jm`.
pub fn nabla_ricci(c: &ChristoffelSymbols) -> RicciDerivative {
    let rho = ricci(c);
    let rho_at = |a: usize, b: usize| -> f64 {
        match (a.min(b), a.max(b)) {
            (0, 0) => rho.m11,
            (0, 1) => rho.m12,
            (1, 1) => rho.m22,
            _ => unreachable!(),
        }
    };
    let mut comp = [[0.0; 3]; 2];
    for i in 0..2 {
        for (slot, (j, k)) in [(0, 0), (0, 1), (1, 1)].into_iter().enumerate() {
            let mut v = 0.0;
            for m in 0..2 {
                v -= c.gamma(i, j, m) * rho_at(m, k);
                v -= c.gamma(i, k, m) * rho_at(j, m);
            }
            comp[i][slot] = v;
        }
    }
    RicciDerivative::from_components(comp)
}

/// The auxiliary quadratic form `rho_check_ij = Gamma_ik^l Gamma_jl^k`.
pub fn rho_check(c: &ChristoffelSymbols) -> SymmetricBilinear {
    let entry = |i: usize, j: usize| -> f64 {
        let mut v = 0.0;
        for k in 0..2 {
            for l in 0..2 {
                v += c.gamma(i, k, l) * c.gamma(j, l, k);
            }
        }
        v
    };
    SymmetricBilinear::new(entry(0, 0), entry(0, 1), entry(1, 1))
}

/// Rank and definiteness of a symmetric form, decided on the closed-form
/// eigenvalues with threshold `tol * max(1, |rho|_inf)`.
pub fn rank_signature(rho: &SymmetricBilinear, tol: f64) -> (u8, Definiteness) {
    let threshold = tol * rho.max_abs().max(1.0);
    let (lo, hi) = rho.eigenvalues();
    let lo_nz = lo.abs() > threshold;
    let hi_nz = hi.abs() > threshold;
    match (lo_nz, hi_nz) {
        (false, false) => (0, Definiteness::Zero),
        (true, false) => (1, Definiteness::NegativeSemiRank1),
        (false, true) => (1, Definiteness::PositiveSemiRank1),
        (true, true) => {
            if lo > 0.0 {
                (2, Definiteness::PositiveDefinite)
            } else if hi < 0.0 {
                (2, Definiteness::NegativeDefinite)
            } else {
                (2, Definiteness::Indefinite)
            }
        }
    }
}

/// Full Ricci report with the symmetric-space flag. A model is a symmetric
/// space exactly when `nabla rho = 0`; numerically, when every component is
/// below `tol * max(1, |C|_inf * |rho|_inf)`.
pub fn ricci_report(c: &ChristoffelSymbols, tol: f64) -> RicciReport {
    let rho = ricci(c);
    let nabla_rho = nabla_ricci(c);
    let (rank, definiteness) = rank_signature(&rho, tol);
    let scale = (c.max_abs() * rho.max_abs()).max(1.0);
    let is_symmetric_space = nabla_rho.max_abs() < tol * scale;
    RicciReport {
        rho,
        nabla_rho,
        rank,
        definiteness,
        is_symmetric_space,
    }
}

/// The scalar invariants `Sigma = rho^ij rho_check_ij` (trace of
/// `rho_check` with respect to `rho`) and `Psi = det(rho_check) / det(rho)`.
/// Both are invariant under the linear group action and, together with the
/// signature of `rho`, separate rank-2 models up to linear isomorphism.
pub fn invariants_sigma_psi(c: &ChristoffelSymbols, tol: f64) -> Result<(f64, f64)> {
    let rho = ricci(c);
    let (rank, _) = rank_signature(&rho, tol);
    if rank < 2 {
        return Err(Error::DegenerateRicci { rank });
    }
    let check = rho_check(c);
    let det = rho.det();
    // Inverse of rho: [[m22, -m12], [-m12, m11]] / det.
    let sigma =
        (rho.m22 * check.m11 - 2.0 * rho.m12 * check.m12 + rho.m11 * check.m22) / det;
    let psi = check.det() / det;
    Ok((sigma, psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::CanonicalModel;

    fn model(m: CanonicalModel) -> ChristoffelSymbols {
        m.christoffel().unwrap()
    }

    #[test]
    fn ricci_of_m2() {
        let rho = ricci(&model(CanonicalModel::M2));
        assert_eq!(rho, SymmetricBilinear::new(0.0, 0.0, -0.25));
    }

    #[test]
    fn ricci_of_m3() {
        let rho = ricci(&model(CanonicalModel::M3));
        assert_eq!(rho, SymmetricBilinear::new(0.0, 0.0, 1.0));
    }

    #[test]
    fn ricci_of_m_minus_delta_zero() {
        let rho = ricci(&model(CanonicalModel::MMinus(0.0)));
        assert_eq!(rho, SymmetricBilinear::new(0.5, 0.0, -0.25));
        assert_eq!(rho.det(), -0.125);
    }

    #[test]
    fn ricci_of_flat_connection_vanishes() {
        assert_eq!(ricci(&ChristoffelSymbols::zero()), SymmetricBilinear::zero());
    }

    #[test]
    fn definiteness_golden_suite() {
        let tol = 1e-10;
        for delta in [0.0, 0.5, 1.0, 1.9, 3.0] {
            let plus = ricci(&model(CanonicalModel::MPlus(delta)));
            assert_eq!(
                rank_signature(&plus, tol),
                (2, Definiteness::NegativeDefinite),
                "delta = {delta}"
            );
            let minus = ricci(&model(CanonicalModel::MMinus(delta)));
            assert_eq!(
                rank_signature(&minus, tol),
                (2, Definiteness::Indefinite),
                "delta = {delta}"
            );
        }
        let m1 = ricci(&model(CanonicalModel::M1));
        assert_eq!(rank_signature(&m1, tol), (1, Definiteness::NegativeSemiRank1));
        let m2 = ricci(&model(CanonicalModel::M2));
        assert_eq!(rank_signature(&m2, tol), (1, Definiteness::NegativeSemiRank1));
        let m3 = ricci(&model(CanonicalModel::M3));
        assert_eq!(rank_signature(&m3, tol), (1, Definiteness::PositiveSemiRank1));
        assert_eq!(
            rank_signature(&SymmetricBilinear::zero(), tol),
            (0, Definiteness::Zero)
        );
    }

    #[test]
    fn rank_and_definiteness_always_pair_consistently() {
        let mut rng = crate::sampling::SplitMix64::new(17);
        for _ in 0..500 {
            let m = SymmetricBilinear::new(
                rng.uniform(-3.0, 3.0),
                rng.uniform(-3.0, 3.0),
                rng.uniform(-3.0, 3.0),
            );
            let (rank, def) = rank_signature(&m, 1e-10);
            let expected_rank = match def {
                Definiteness::Zero => 0,
                Definiteness::PositiveSemiRank1 | Definiteness::NegativeSemiRank1 => 1,
                _ => 2,
            };
            assert_eq!(rank, expected_rank, "{m:?} -> {def:?}");
        }
    }

    #[test]
    fn canonical_symmetric_spaces_have_parallel_ricci() {
        for m in [CanonicalModel::M1, CanonicalModel::M2, CanonicalModel::M3] {
            assert_eq!(nabla_ricci(&model(m)).max_abs(), 0.0);
        }
    }

    #[test]
    fn nonsymmetric_rank1_example() {
        // c121 = 1, c222 = 3: rho = 2 dx2 (x) dx2 and nabla_2 rho_22 = -12.
        let c = ChristoffelSymbols::new(0.0, 0.0, 1.0, 0.0, 0.0, 3.0).unwrap();
        let rho = ricci(&c);
        assert_eq!(rho, SymmetricBilinear::new(0.0, 0.0, 2.0));
        let nabla = nabla_ricci(&c);
        assert_eq!(nabla.d(1, 1, 1), -12.0);
        assert!(!ricci_report(&c, 1e-10).is_symmetric_space);
    }

    #[test]
    fn rho_check_values() {
        let check = rho_check(&model(CanonicalModel::M2));
        assert_eq!(check, SymmetricBilinear::new(0.0, 0.0, 0.25));
        assert_eq!(rho_check(&ChristoffelSymbols::zero()), SymmetricBilinear::zero());
        for delta in [0.0, 0.7, 1.0, 2.5] {
            let check = rho_check(&model(CanonicalModel::MMinus(delta)));
            let expected = SymmetricBilinear::new(
                -1.0 + delta * delta / 4.0,
                delta / 4.0,
                0.25,
            );
            assert!((check.m11 - expected.m11).abs() < 1e-15);
            assert!((check.m12 - expected.m12).abs() < 1e-15);
            assert!((check.m22 - expected.m22).abs() < 1e-15);
        }
    }

    #[test]
    fn sigma_psi_on_the_complete_family() {
        for delta in [0.0, 0.5, 1.0, 1.5, 1.9] {
            let (sigma, psi) =
                invariants_sigma_psi(&model(CanonicalModel::MMinus(delta)), 1e-10).unwrap();
            assert!((sigma - (-3.0 + 2.0 * delta * delta)).abs() < 1e-12);
            assert!((psi - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sigma_psi_rejects_degenerate_ricci() {
        let err = invariants_sigma_psi(&model(CanonicalModel::M2), 1e-10).unwrap_err();
        assert!(matches!(err, Error::DegenerateRicci { rank: 1 }));
    }

    #[test]
    fn rank1_pattern_identities() {
        // c112 = c122 = 0 forces rho = (-c121^2 + c111*c221 + c121*c222) dx2 (x) dx2.
        let c = ChristoffelSymbols::new(0.7, 0.0, -1.3, 0.0, 0.4, 2.0).unwrap();
        let rho = ricci(&c);
        let expected = -(-1.3f64) * (-1.3) + 0.7 * 0.4 + (-1.3) * 2.0;
        assert!((rho.m22 - expected).abs() < 1e-15);
        assert_eq!((rho.m11, rho.m12), (0.0, 0.0));

        // c121 = c221 = 0 forces rho = (c111*c122 + c112*c222 - c122^2) dx1 (x) dx1.
        let c = ChristoffelSymbols::new(0.9, -0.8, 0.0, 0.6, 0.0, 1.1).unwrap();
        let rho = ricci(&c);
        let expected = 0.9 * 0.6 + (-0.8) * 1.1 - 0.6 * 0.6;
        assert!((rho.m11 - expected).abs() < 1e-15);
        assert_eq!((rho.m12, rho.m22), (0.0, 0.0));
    }

    #[test]
    fn degenerate_pattern_forces_singular_ricci() {
        // c221 = 0, c222 = 2*c121, c111 = 2*c122, c112 = 0.
        let (c121, c122) = (0.8, -0.35);
        let c =
            ChristoffelSymbols::new(2.0 * c122, 0.0, c121, c122, 0.0, 2.0 * c121).unwrap();
        let rho = ricci(&c);
        assert!((rho.m11 - c122 * c122).abs() < 1e-15);
        assert!((rho.m12 - c121 * c122).abs() < 1e-15);
        assert!((rho.m22 - c121 * c121).abs() < 1e-15);
        assert!(rho.det().abs() < 1e-15);
    }
}
