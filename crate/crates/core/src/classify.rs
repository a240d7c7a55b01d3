//! The completeness classifier.
//!
//! Dispatch on the rank of the Ricci tensor:
//!
//! * rank 0 — flat; completeness is not decided here, but any log-geodesic
//!   witnesses are still reported.
//! * rank 1 — essentially incomplete when `nabla rho != 0`; otherwise the
//!   model is one of the three symmetric models, each with fixed
//!   completeness facts.
//! * rank 2 — incomplete exactly when a log-geodesic exists; otherwise the
//!   model is linearly equivalent to the complete indefinite family and the
//!   parameter `delta` is recovered from the invariant `Sigma`.

use crate::error::{Error, Result};
use crate::log_geodesics::{log_geodesic_solutions, LogGeodesicSolution};
use crate::ricci::{invariants_sigma_psi, ricci_report, Definiteness};
use crate::symbols::ChristoffelSymbols;

/// The three symmetric-space normal forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricModel {
    M1,
    M2,
    M3,
}

/// Classifier outcome.
#[derive(Debug, Clone, PartialEq)]
pub enum Branch {
    /// Flat connection; the classification does not decide completeness.
    FlatUndetermined,
    /// Rank-1 Ricci with `nabla rho != 0`: essentially geodesically
    /// incomplete.
    Rank1NonSymmetric,
    /// Rank-1 symmetric space, linearly isomorphic to one of the three
    /// normal forms. All three are essentially complete; only `M2` is
    /// complete as a model.
    Rank1Symmetric {
        model: SymmetricModel,
        model_complete: bool,
        essentially_complete: bool,
    },
    /// Rank 2 with a verified log-geodesic: geodesically and essentially
    /// incomplete.
    Rank2Incomplete { witness: LogGeodesicSolution },
    /// Rank 2 with no log-geodesic: complete, linearly equivalent to the
    /// indefinite family member with this `delta` in `[0, 2)`.
    Rank2Complete { delta: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompletenessVerdict {
    pub branch: Branch,
    pub rank: u8,
    pub definiteness: Definiteness,
    pub sigma: Option<f64>,
    pub psi: Option<f64>,
    /// Every log-geodesic solution found, regardless of branch.
    pub solutions: Vec<LogGeodesicSolution>,
}

/// Witness-verification tolerance used by the classifier.
pub const WITNESS_TOL: f64 = 1e-9;

/// Consistency tolerance for the recovered `delta` (a guard against
/// classifier bugs, not an input check).
pub const DELTA_CONSISTENCY_TOL: f64 = 1e-6;

pub fn classify(c: &ChristoffelSymbols, tol: f64) -> Result<CompletenessVerdict> {
    let report = ricci_report(c, tol);
    let solutions = log_geodesic_solutions(c, WITNESS_TOL);

    let (sigma, psi) = if report.rank == 2 {
        let (s, p) = invariants_sigma_psi(c, tol)?;
        (Some(s), Some(p))
    } else {
        (None, None)
    };

    let branch = match report.rank {
        0 => Branch::FlatUndetermined,
        1 => {
            if !report.is_symmetric_space {
                Branch::Rank1NonSymmetric
            } else {
                let model = identify_symmetric_model(c, tol)?;
                Branch::Rank1Symmetric {
                    model,
                    model_complete: model == SymmetricModel::M2,
                    essentially_complete: true,
                }
            }
        }
        _ => match solutions.first() {
            Some(witness) => Branch::Rank2Incomplete { witness: *witness },
            None => Branch::Rank2Complete {
                delta: recover_delta(c, DELTA_CONSISTENCY_TOL)?,
            },
        },
    };

    Ok(CompletenessVerdict {
        branch,
        rank: report.rank,
        definiteness: report.definiteness,
        sigma,
        psi,
        solutions,
    })
}

/// Identifies which symmetric normal form a rank-1 parallel-Ricci model is
/// linearly isomorphic to.
///
/// `M3` is the positive semi-definite one. Between the two negative
/// semi-definite forms, log-geodesic existence separates them: a linear map
/// carries the witness `(-1, 0)` of `M1` to a witness of any isomorphic
/// table, while `M2` has none.
pub fn identify_symmetric_model(c: &ChristoffelSymbols, tol: f64) -> Result<SymmetricModel> {
    let report = ricci_report(c, tol);
    if report.rank != 1 || !report.is_symmetric_space {
        return Err(Error::Precondition(format!(
            "symmetric-model identification needs rank 1 and parallel Ricci \
             (got rank {}, symmetric: {})",
            report.rank, report.is_symmetric_space
        )));
    }
    match report.definiteness {
        Definiteness::PositiveSemiRank1 => Ok(SymmetricModel::M3),
        Definiteness::NegativeSemiRank1 => {
            if log_geodesic_solutions(c, WITNESS_TOL).is_empty() {
                Ok(SymmetricModel::M2)
            } else {
                Ok(SymmetricModel::M1)
            }
        }
        other => Err(Error::InternalInconsistency(format!(
            "rank-1 form with definiteness {other:?}"
        ))),
    }
}

/// Recovers `delta` for a model in the complete indefinite family from
/// `Sigma = -3 + 2 delta^2`, checking `Psi = 2` and `delta in [0, 2)` as
/// internal consistency guards.
pub fn recover_delta(c: &ChristoffelSymbols, tol: f64) -> Result<f64> {
    let (sigma, psi) = invariants_sigma_psi(c, 1e-10)?;
    if (psi - 2.0).abs() >= tol {
        return Err(Error::InternalInconsistency(format!(
            "complete rank-2 branch expects Psi = 2, got {psi}"
        )));
    }
    let squared = (sigma + 3.0) / 2.0;
    if !(-tol..4.0).contains(&squared) {
        return Err(Error::InternalInconsistency(format!(
            "complete rank-2 branch expects Sigma in [-3, 5), got {sigma}"
        )));
    }
    Ok(squared.max(0.0).sqrt())
}

/// Whether two rank-2 tables are linearly isomorphic: the definiteness
/// classes must match and `(Sigma, Psi)` must agree within `tol`. For rank 2
/// this also decides local isomorphism.
pub fn is_linearly_isomorphic_rank2(
    c1: &ChristoffelSymbols,
    c2: &ChristoffelSymbols,
    tol: f64,
) -> Result<bool> {
    let (s1, p1) = invariants_sigma_psi(c1, 1e-10)?;
    let (s2, p2) = invariants_sigma_psi(c2, 1e-10)?;
    let r1 = ricci_report(c1, 1e-10);
    let r2 = ricci_report(c2, 1e-10);
    Ok(r1.definiteness == r2.definiteness
        && (s1 - s2).abs() <= tol * s1.abs().max(1.0)
        && (p1 - p2).abs() <= tol * p1.abs().max(1.0))
}
