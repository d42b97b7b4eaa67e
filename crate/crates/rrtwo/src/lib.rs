//! Estimation toolkit for randomized response surveys asking about two
//! related sensitive attributes.
//!
//! Four designs are covered. A single-attribute direct-or-deck protocol
//! and its two-question extension (members answer directly, non-members
//! answer through a card deck), plus two baselines in which every answer
//! passes through Warner decks: the simple design and the crossed design.
//! For each the crate provides, where published:
//!
//! * forward maps from population proportions `(pi_a, pi_b, pi_ab)` to the
//!   distribution of the four observable answer pairs ([`forward`]),
//! * unbiased point estimators from observed cell counts ([`estimators`]),
//! * closed-form estimator variances, relative-efficiency comparisons,
//!   threshold checks, and reference-table generation ([`analysis`]),
//! * a seeded, reproducible respondent-level simulator that validates
//!   unbiasedness and the variance formulas empirically ([`montecarlo`]).
//!
//! The crossed design has no published respondent-level mechanism, so it
//! supports estimation and variance evaluation but not simulation.
//!
//! All operations are pure functions of their inputs; every value is
//! immutable after construction and safe to share across threads.

pub mod analysis;
pub mod error;
pub mod estimators;
pub mod forward;
pub mod montecarlo;
pub mod stats;
pub mod types;

pub use analysis::{
    relative_efficiency, table_grid, thresholds, var_crossed, var_mangat, var_proposed, var_simple,
    variance_curves, Baseline, CurveRow, DenominatorConvention, EfficiencyMode, EfficiencyRecord,
    SweepSpec, SweepTarget, ThresholdReport, VarianceTriple,
};
pub use error::Error;
pub use estimators::{
    estimate_crossed, estimate_crossed_from_counts, estimate_mangat, estimate_proposed,
    estimate_proposed_from_profile, estimate_simple, estimate_simple_from_profile, ClampedTriple,
    EstimateTriple,
};
pub use forward::{forward_proposed, forward_simple, mangat_alpha};
pub use montecarlo::{
    run_experiment, run_replication, simulate_respondent, validate_moment_lemma, MomentLemmaReport,
    SimulationConfig, SimulationSummary,
};
pub use types::{CellCounts, DesignParams, ModelId, PopulationTruth, ResponseProfile, TruthCell};
