//! Serializable mirrors of the library's result types.

use serde::Serialize;
use typea_core::{
    Branch, CompletenessVerdict, Definiteness, LogGeodesicSolution, RicciReport, SymmetricModel,
    Termination, Trajectory,
};

use crate::model::ModelDocument;

pub fn definiteness_str(d: Definiteness) -> &'static str {
    match d {
        Definiteness::PositiveDefinite => "positive_definite",
        Definiteness::NegativeDefinite => "negative_definite",
        Definiteness::PositiveSemiRank1 => "positive_semi_rank1",
        Definiteness::NegativeSemiRank1 => "negative_semi_rank1",
        Definiteness::Indefinite => "indefinite",
        Definiteness::Zero => "zero",
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessJson {
    pub a: f64,
    pub b: f64,
    pub family: bool,
    pub residual: f64,
}

impl From<&LogGeodesicSolution> for WitnessJson {
    fn from(s: &LogGeodesicSolution) -> Self {
        WitnessJson {
            a: s.a,
            b: s.b,
            family: s.family,
            residual: s.residual,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerdictJson {
    pub branch: &'static str,
    pub rank: u8,
    pub definiteness: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model_complete: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub essentially_complete: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub witnesses: Vec<WitnessJson>,
    pub notes: Vec<String>,
}

impl VerdictJson {
    pub fn from_verdict(v: &CompletenessVerdict) -> Self {
        let witnesses: Vec<WitnessJson> = v.solutions.iter().map(WitnessJson::from).collect();
        let mut out = VerdictJson {
            branch: "",
            rank: v.rank,
            definiteness: definiteness_str(v.definiteness),
            model: None,
            model_complete: None,
            essentially_complete: None,
            sigma: v.sigma,
            psi: v.psi,
            delta: None,
            witnesses,
            notes: Vec::new(),
        };
        match &v.branch {
            Branch::FlatUndetermined => {
                out.branch = "flat_undetermined";
                out.notes.push(
                    "flat connection: completeness is not decided here; \
                     any log-geodesic witnesses are listed"
                        .into(),
                );
            }
            Branch::Rank1NonSymmetric => {
                out.branch = "rank1_nonsymmetric";
                out.notes.push(
                    "essentially geodesically incomplete: no surface modeled on these \
                     symbols is complete"
                        .into(),
                );
            }
            Branch::Rank1Symmetric {
                model,
                model_complete,
                essentially_complete,
            } => {
                out.branch = "rank1_symmetric";
                out.model = Some(match model {
                    SymmetricModel::M1 => "M1",
                    SymmetricModel::M2 => "M2",
                    SymmetricModel::M3 => "M3",
                });
                out.model_complete = Some(*model_complete);
                out.essentially_complete = Some(*essentially_complete);
                out.notes
                    .push("symmetric space: linearly isomorphic to a canonical model".into());
            }
            Branch::Rank2Incomplete { .. } => {
                out.branch = "rank2_incomplete";
                out.notes.push(
                    "geodesically and essentially incomplete: the listed log-geodesics \
                     escape in finite time"
                        .into(),
                );
            }
            Branch::Rank2Complete { delta } => {
                out.branch = "rank2_complete";
                out.delta = Some(*delta);
                out.notes.push(
                    "geodesically complete: linearly equivalent to the indefinite \
                     canonical family member with this delta"
                        .into(),
                );
            }
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct RicciJson {
    pub rho: [[f64; 2]; 2],
    /// `nabla_rho[i]` holds the derivative in direction `i` of the
    /// components `(11, 12, 22)`.
    pub nabla_rho: [[f64; 3]; 2],
    pub rank: u8,
    pub definiteness: &'static str,
    pub is_symmetric_space: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<f64>,
}

impl RicciJson {
    pub fn new(report: &RicciReport, sigma_psi: Option<(f64, f64)>) -> Self {
        RicciJson {
            rho: [
                [report.rho.m11, report.rho.m12],
                [report.rho.m12, report.rho.m22],
            ],
            nabla_rho: report.nabla_rho.components(),
            rank: report.rank,
            definiteness: definiteness_str(report.definiteness),
            is_symmetric_space: report.is_symmetric_space,
            sigma: sigma_psi.map(|sp| sp.0),
            psi: sigma_psi.map(|sp| sp.1),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct NormalizeJson {
    pub model: ModelDocument,
    pub transform: [[f64; 2]; 2],
    pub min_abs_entry: f64,
    pub max_abs_entry: f64,
}

pub fn termination_str(t: &Termination) -> &'static str {
    match t {
        Termination::HorizonReached => "HorizonReached",
        Termination::BlowUp { .. } => "BlowUp",
        Termination::StepUnderflow => "StepUnderflow",
    }
}

pub fn escape_value(t: &Termination) -> Option<f64> {
    match t {
        Termination::BlowUp { escape_time } => Some(*escape_time),
        _ => None,
    }
}

#[derive(Debug, Serialize)]
pub struct TrajectorySampleJson {
    pub t: f64,
    pub x: [f64; 2],
    pub v: [f64; 2],
}

#[derive(Debug, Serialize)]
pub struct TrajectoryJson {
    pub samples: Vec<TrajectorySampleJson>,
    pub termination: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub escape: Option<f64>,
    pub steps_accepted: usize,
    pub steps_rejected: usize,
    pub max_velocity: f64,
}

impl TrajectoryJson {
    pub fn new(traj: &Trajectory) -> Self {
        TrajectoryJson {
            samples: traj
                .samples
                .iter()
                .map(|s| TrajectorySampleJson {
                    t: s.t,
                    x: s.x,
                    v: s.v,
                })
                .collect(),
            termination: termination_str(&traj.termination),
            escape: escape_value(&traj.termination),
            steps_accepted: traj.steps_accepted,
            steps_rejected: traj.steps_rejected,
            max_velocity: traj.max_velocity,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SweepDisagreement {
    pub index: usize,
    pub model: ModelDocument,
    pub branch: &'static str,
    pub reason: String,
}

#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub count: usize,
    pub seed: u64,
    pub horizon: f64,
    pub rank_filter_tol: f64,
    pub agreements: usize,
    pub confirmed_incomplete: usize,
    pub confirmed_complete: usize,
    pub disagreements: Vec<SweepDisagreement>,
}
