//! Geodesic completeness of planar affine models with constant Christoffel
//! symbols.
//!
//! A symbol table `C = (C_ij^k)` defines a torsion-free connection on the
//! plane whose translations are symmetries. This crate decides whether such
//! a model is geodesically complete, and whether it can model a complete
//! surface at all, entirely from the algebra of `C`:
//!
//! * rank of the Ricci tensor and parallelism of its covariant derivative
//!   pick the branch;
//! * nonzero solutions of the quadratic system behind the logarithmic
//!   ansatz `(a, b) log(t)` certify incompleteness;
//! * the scalar invariants `Sigma` and `Psi` place complete rank-2 models
//!   inside the one-parameter indefinite family and separate models up to
//!   linear isomorphism.
//!
//! The algebraic verdicts are backed by an independent numerical oracle: an
//! embedded Runge-Kutta 5(4) geodesic integrator with finite-time blow-up
//! detection and escape-time extrapolation, closed-form geodesics and
//! exponential maps where they exist, phase-flow certificates, and
//! finite-difference verification of affine Killing fields.

// Index loops mirror the tensor index notation of the contractions.
#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod error;
pub mod geodesics;
pub mod gl2;
pub mod killing;
pub mod log_geodesics;
pub mod ode;
pub mod oracle;
pub mod phase;
pub mod poly;
pub mod ricci;
pub mod sampling;
pub mod symbols;

pub use classify::{
    classify, identify_symmetric_model, is_linearly_isomorphic_rank2, recover_delta, Branch,
    CompletenessVerdict, SymmetricModel, DELTA_CONSISTENCY_TOL, WITNESS_TOL,
};
pub use error::{Error, Result};
pub use geodesics::{
    closed_form_m2, closed_form_m2_velocity, closed_form_m3tilde, closed_form_m3tilde_velocity,
    exp_map, geodesic_rhs, h_function, integrate, log_geodesic_curve, rank1_incomplete_witness,
    ExpModel, GeodesicState, ModelKind, Rank1Witness, Termination, Trajectory, TrajectorySample,
};
pub use gl2::{normalize_generic, pushforward, GENERICITY_FRACTION};
pub use killing::{tilde_m3_chart_check, verify_killing, BasisFn, FieldTerm, VectorFieldSpec};
pub use log_geodesics::{
    e_polynomials, e_quadratics, log_geodesic_solutions, EPolynomials, LogGeodesicSolution,
};
pub use ode::{OdeOptions, OdeTermination};
pub use oracle::{
    check_verdict_against_integration, most_stable_witness, witness_ray_trace, OracleConfig,
    OracleOutcome,
};
pub use phase::{
    field_grid, flow_integrate, phase_field_eval, radial_certificate, slope_certificate,
    FieldSample, FlowCurve, Window,
};
pub use poly::{real_roots, RealRoot, RootFinding};
pub use ricci::{
    invariants_sigma_psi, nabla_ricci, rank_signature, rho_check, ricci, ricci_report,
    Definiteness, RicciReport,
};
pub use sampling::{random_invertible_map, random_model, random_rank2_model, SplitMix64};
pub use symbols::{
    CanonicalModel, ChristoffelSymbols, LinearMap, RicciDerivative, SymmetricBilinear,
};

/// Default tolerance for rank decisions: models are typically entered as
/// exact decimals, so true zeros are exact and only pushforward roundoff
/// needs absorbing.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;
