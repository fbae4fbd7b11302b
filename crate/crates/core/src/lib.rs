//! A numerical laboratory for random walks on circle homeomorphisms:
//! contraction exponents, stationary measures and their ergodic
//! decomposition, transfer-operator limits, approximated Jacobian/entropy
//! estimates, decomposability periods and synchronization tests.
//!
//! The core is generic over the scalar type through [`num::Real`]
//! (`f64` by default, `f32` supported); the crate root exports concrete
//! `f64` aliases for the common types.

pub mod circle;
pub mod error;
pub mod estimators;
pub mod grid;
pub mod homeo;
pub mod measure;
pub mod num;
pub mod operators;
pub mod scenarios;
pub mod walk;

pub use circle::{circle_dist, diam_points, Arc, CirclePoint};
pub use error::{Error, Result};
pub use estimators::{
    decompose_ergodic, default_starts, estimate_entropy, estimate_j_eps,
    estimate_j_eps_for_label, estimate_lambda_con, estimate_stationary,
    estimate_stationary_pooled, jacobian_probes, sync_test, uniform_pairs,
    DecomposeParams, EntropyEstimate, EntropyParams, ErgodicDecomposition, ExponentEstimate,
    ExponentParams, JacobianProbe, PairOutcome, SyncReport,
};
pub use grid::GridFunction;
pub use homeo::{compose, Homeo, IntervalMap, PlMap};
pub use measure::EmpiricalMeasure;
pub use num::Real;
pub use operators::{
    build_arc_graph, classify_trichotomy, decomposability_period, default_jump_threshold,
    invariant_measure_residual, staircase_profile, transfer_apply, transfer_iterate,
    transfer_orbit, ArcGraph, ClassifyParams, InvariantCheck, PeriodReport, StaircaseProfile,
    TransferIterate, TrichotomyReport, Verdict,
};
pub use scenarios::{build_scenario, catalog_list, EntropySign, Expected, Scenario, CATALOG};
pub use walk::{Generator, GeneratorSet, WalkStream};

/// Concrete double-precision aliases.
pub type CirclePoint64 = CirclePoint<f64>;
pub type Arc64 = Arc<f64>;
pub type Homeo64 = Homeo<f64>;
pub type IntervalMap64 = IntervalMap<f64>;
pub type GeneratorSet64 = GeneratorSet<f64>;
pub type EmpiricalMeasure64 = EmpiricalMeasure<f64>;
pub type GridFunction64 = GridFunction<f64>;
pub type Scenario64 = Scenario<f64>;
