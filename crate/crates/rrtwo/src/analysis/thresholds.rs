//! Truth thresholds above which the extended design beats the simple
//! design, component by component.

use crate::error::Error;
use crate::types::{DesignParams, PopulationTruth};

/// Threshold values and whether the supplied truth strictly exceeds them.
///
/// Exact equality is reported as not satisfied, with the matching
/// `boundary_*` flag set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdReport {
    pub threshold_a: f64,
    pub threshold_b: f64,
    pub threshold_ab: f64,
    pub satisfied_a: bool,
    pub satisfied_b: bool,
    pub satisfied_ab: bool,
    pub boundary_a: bool,
    pub boundary_b: bool,
    pub boundary_ab: bool,
}

/// Threshold for the first marginal: `(3p - 1)(p - 1) / (2p - 1)^2`.
///
/// The variance gap `V_simple_a - V_proposed_a` carries a factor
/// `(1 - p)/p`, so for `p < 1` its sign is positive exactly when `pi_a`
/// exceeds this value. The threshold is negative for `p > 1/3`, meaning the
/// extended design wins everywhere in that regime.
pub fn threshold_a(p: f64) -> f64 {
    debug_assert!(p != 0.5);
    (3.0 * p - 1.0) * (p - 1.0) / (2.0 * p - 1.0).powi(2)
}

/// Threshold for the second marginal, same shape in `lambda`.
pub fn threshold_b(lambda: f64) -> f64 {
    debug_assert!(lambda != 0.5);
    (3.0 * lambda - 1.0) * (lambda - 1.0) / (2.0 * lambda - 1.0).powi(2)
}

/// Threshold for the joint proportion, as printed in the source: its right
/// side depends on `(pi_a, pi_b)`.
///
/// Unlike the marginal thresholds, this expression is not numerically
/// equivalent to the sign of `V_simple_ab - V_proposed_ab` over the whole
/// parameter grid; it is reported as printed and not used as an oracle.
pub fn threshold_ab(p: f64, lambda: f64, pi_a: f64, pi_b: f64) -> f64 {
    debug_assert!(p != 0.5 && lambda != 0.5);
    let pp = (2.0 * p - 1.0).powi(2);
    let ll = (2.0 * lambda - 1.0).powi(2);
    let num = pp * (1.0 - lambda) * pi_a * ((2.0 * p - 1.0) * ll - p * lambda * lambda)
        + (1.0 - p) * ll * pi_b * (pp * (2.0 * lambda - 1.0) - p * p * lambda);
    let den = pp * ll * (p * lambda - (2.0 * p - 1.0) * (2.0 * lambda - 1.0));
    num / den
}

/// Evaluates all three thresholds at the given truth.
pub fn thresholds(
    params: &DesignParams,
    truth: &PopulationTruth,
) -> Result<ThresholdReport, Error> {
    params.require_simple()?;
    let (p, l) = (params.p(), params.lambda());
    let t_a = threshold_a(p);
    let t_b = threshold_b(l);
    let t_ab = threshold_ab(p, l, truth.pi_a(), truth.pi_b());
    Ok(ThresholdReport {
        threshold_a: t_a,
        threshold_b: t_b,
        threshold_ab: t_ab,
        satisfied_a: truth.pi_a() > t_a,
        satisfied_b: truth.pi_b() > t_b,
        satisfied_ab: truth.pi_ab() > t_ab,
        boundary_a: truth.pi_a() == t_a,
        boundary_b: truth.pi_b() == t_b,
        boundary_ab: truth.pi_ab() == t_ab,
    })
}
