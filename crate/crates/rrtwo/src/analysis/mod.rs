//! Closed-form variances, efficiency comparisons, threshold checks, and
//! table/plot-series generation.

mod curves;
mod efficiency;
mod tables;
mod thresholds;
mod variance;

pub use curves::{variance_curves, CurveRow, SweepSpec, SweepTarget};
pub use efficiency::{relative_efficiency, Baseline, EfficiencyMode, EfficiencyRecord};
pub use tables::{marginal_grid, table_grid};
pub use thresholds::{threshold_a, threshold_ab, threshold_b, thresholds, ThresholdReport};
pub use variance::{
    var_crossed, var_crossed_a, var_crossed_ab, var_crossed_b, var_mangat, var_mangat_at_alpha,
    var_proposed, var_proposed_a, var_proposed_ab, var_proposed_b, var_simple, var_simple_a,
    var_simple_ab, var_simple_b, DenominatorConvention, VarianceTriple,
};
