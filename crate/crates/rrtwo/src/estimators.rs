//! Unbiased moment estimators of the population proportions for each design.
//!
//! Raw estimates are exactly the formula outputs and may fall outside
//! `[0, 1]` in finite samples; [`EstimateTriple::clamped`] projects them
//! onto the admissible region without touching the raw values.

use crate::error::Error;
use crate::types::{CellCounts, DesignParams, ModelId, ResponseProfile};

/// Raw point estimates of `(pi_a, pi_b, pi_ab)` under a named model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateTriple {
    pub model: ModelId,
    pub pi_a: f64,
    pub pi_b: f64,
    pub pi_ab: f64,
}

/// An estimate triple projected onto the admissible region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClampedTriple {
    pub pi_a: f64,
    pub pi_b: f64,
    pub pi_ab: f64,
    /// Whether any component moved.
    pub changed: bool,
}

impl EstimateTriple {
    /// Clips `pi_a` and `pi_b` to `[0, 1]`, then `pi_ab` to
    /// `[max(0, pi_a + pi_b - 1), min(pi_a, pi_b)]`.
    pub fn clamped(&self) -> ClampedTriple {
        let pi_a = self.pi_a.clamp(0.0, 1.0);
        let pi_b = self.pi_b.clamp(0.0, 1.0);
        let hi = pi_a.min(pi_b);
        // Same operation order as the admissibility validator, so the
        // clamped fourth cell comes out exactly nonnegative.
        let mut lo = (-((1.0 - pi_a) - pi_b)).max(0.0);
        if lo > hi {
            lo = hi;
        }
        let pi_ab = self.pi_ab.clamp(lo, hi);
        ClampedTriple {
            pi_a,
            pi_b,
            pi_ab,
            changed: pi_a != self.pi_a || pi_b != self.pi_b || pi_ab != self.pi_ab,
        }
    }
}

/// Inverse of the single-attribute yes-probability map: `(alpha - 1 + p) / p`.
fn invert_alpha(alpha_hat: f64, p: f64) -> f64 {
    (alpha_hat - 1.0 + p) / p
}

/// Single-attribute estimator from the observed number of yes answers.
pub fn estimate_mangat(yes_count: u64, n: u64, p: f64) -> Result<f64, Error> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParams(format!(
            "p must lie in (0, 1], got {p}"
        )));
    }
    if n == 0 {
        return Err(Error::EmptySample);
    }
    if yes_count > n {
        return Err(Error::InvalidParams(format!(
            "yes_count = {yes_count} exceeds n = {n}"
        )));
    }
    Ok(invert_alpha(yes_count as f64 / n as f64, p))
}

/// Extended-design estimators from observed cell counts.
///
/// The marginal estimates invert the single-attribute map at the integer
/// yes margins, so they agree bit for bit with [`estimate_mangat`] applied
/// to `n11 + n10` (respectively `n11 + n01`).
pub fn estimate_proposed(
    counts: &CellCounts,
    params: &DesignParams,
) -> Result<EstimateTriple, Error> {
    let n = counts.n();
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let n = n as f64;
    Ok(EstimateTriple {
        model: ModelId::ProposedEA,
        pi_a: invert_alpha(counts.yes_a() as f64 / n, params.p()),
        pi_b: invert_alpha(counts.yes_b() as f64 / n, params.lambda()),
        pi_ab: proposed_ab(&counts.profile()?, params),
    })
}

/// Extended-design estimators evaluated at observed proportions.
pub fn estimate_proposed_from_profile(
    profile: &ResponseProfile,
    params: &DesignParams,
) -> EstimateTriple {
    EstimateTriple {
        model: ModelId::ProposedEA,
        pi_a: invert_alpha(profile.t11() + profile.t10(), params.p()),
        pi_b: invert_alpha(profile.t11() + profile.t01(), params.lambda()),
        pi_ab: proposed_ab(profile, params),
    }
}

fn proposed_ab(profile: &ResponseProfile, params: &DesignParams) -> f64 {
    let (p, l) = (params.p(), params.lambda());
    let num = (2.0 * p + 2.0 * l - 1.0) * profile.t11() - (2.0 * p - 2.0 * l + 1.0) * profile.t10()
        + (2.0 * p - 2.0 * l - 1.0) * profile.t01()
        - (2.0 * p + 2.0 * l - 3.0) * profile.t00()
        + (2.0 * p - 1.0) * (2.0 * l - 1.0);
    num / (4.0 * p * l)
}

/// Simple-design estimators from observed cell counts.
pub fn estimate_simple(
    counts: &CellCounts,
    params: &DesignParams,
) -> Result<EstimateTriple, Error> {
    estimate_simple_from_profile(&counts.profile()?, params)
}

/// Simple-design estimators evaluated at observed proportions.
pub fn estimate_simple_from_profile(
    profile: &ResponseProfile,
    params: &DesignParams,
) -> Result<EstimateTriple, Error> {
    params.require_simple()?;
    let (p, t) = (params.p(), params.lambda());
    let [t11, t10, t01, t00] = profile.as_array();
    let pi_a = (t11 + t10 - t01 - t00 + (2.0 * p - 1.0)) / (2.0 * (2.0 * p - 1.0));
    let pi_b = (t11 - t10 + t01 - t00 + (2.0 * t - 1.0)) / (2.0 * (2.0 * t - 1.0));
    let pi_ab = ((p + t) * t11 + (t - p) * t10 + (p - t) * t01 + (2.0 - p - t) * t00
        - t * (1.0 - p)
        - p * (1.0 - t))
        / (2.0 * (2.0 * p - 1.0) * (2.0 * t - 1.0));
    Ok(EstimateTriple {
        model: ModelId::SimpleModel,
        pi_a,
        pi_b,
        pi_ab,
    })
}

/// Crossed-design estimators evaluated at observed proportions.
///
/// No simulator exists for this design, so the profile is typically
/// supplied by the caller rather than produced in-crate.
pub fn estimate_crossed(
    profile: &ResponseProfile,
    params: &DesignParams,
) -> Result<EstimateTriple, Error> {
    params.require_crossed()?;
    let (p, t) = (params.p(), params.lambda());
    let [t11, t10, t01, t00] = profile.as_array();
    let diag = (t - p + 1.0) * (t11 - t00);
    let pi_a = 0.5 + (diag + (p + t - 1.0) * (t10 - t01)) / (2.0 * (p + t - 1.0));
    let pi_b = 0.5 + (diag + (p + t - 1.0) * (t01 - t10)) / (2.0 * (p + t - 1.0));
    let weight = p * t + (1.0 - p) * (1.0 - t);
    let pi_ab = (p * t * t11 - (1.0 - p) * (1.0 - t) * t00) / (weight * (p + t - 1.0));
    Ok(EstimateTriple {
        model: ModelId::CrossedModel,
        pi_a,
        pi_b,
        pi_ab,
    })
}

/// Crossed-design estimators from observed cell counts.
pub fn estimate_crossed_from_counts(
    counts: &CellCounts,
    params: &DesignParams,
) -> Result<EstimateTriple, Error> {
    estimate_crossed(&counts.profile()?, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(p: f64, lambda: f64) -> DesignParams {
        DesignParams::new(p, lambda).unwrap()
    }

    #[test]
    fn mangat_inverts_reference_alpha() {
        assert_abs_diff_eq!(
            estimate_mangat(460, 1000, 0.6).unwrap(),
            0.1,
            epsilon = 1e-12
        );
    }

    #[test]
    fn mangat_all_yes_gives_one() {
        for p in [0.2, 0.6, 1.0] {
            assert_abs_diff_eq!(estimate_mangat(100, 100, p).unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn mangat_zero_yes_goes_negative() {
        // Raw estimates are reported as-is, even outside [0, 1].
        let est = estimate_mangat(0, 100, 0.6).unwrap();
        assert_abs_diff_eq!(est, -2.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn mangat_rejects_bad_input() {
        assert!(matches!(
            estimate_mangat(10, 100, 0.0),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            estimate_mangat(0, 0, 0.6),
            Err(Error::EmptySample)
        ));
        assert!(estimate_mangat(101, 100, 0.6).is_err());
    }

    #[test]
    fn proposed_recovers_truth_from_exact_counts() {
        let counts = CellCounts::new(272, 308, 168, 252);
        let est = estimate_proposed(&counts, &params(0.6, 0.7)).unwrap();
        assert_abs_diff_eq!(est.pi_a, 0.3, epsilon = 1e-12);
        assert_abs_diff_eq!(est.pi_b, 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(est.pi_ab, 0.1, epsilon = 1e-12);
    }

    #[test]
    fn proposed_constant_term_counts_estimate_zero() {
        let counts = CellCounts::new(120, 280, 180, 420);
        let est = estimate_proposed(&counts, &params(0.6, 0.7)).unwrap();
        assert_abs_diff_eq!(est.pi_a, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(est.pi_b, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(est.pi_ab, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn proposed_saturated_counts_estimate_one() {
        let counts = CellCounts::new(500, 0, 0, 0);
        let est = estimate_proposed(&counts, &params(1.0, 1.0)).unwrap();
        assert_abs_diff_eq!(est.pi_a, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(est.pi_b, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(est.pi_ab, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn proposed_margins_match_mangat_bitwise() {
        let counts = CellCounts::new(271, 309, 167, 253);
        let params = params(0.6, 0.7);
        let est = estimate_proposed(&counts, &params).unwrap();
        assert_eq!(
            est.pi_a.to_bits(),
            estimate_mangat(counts.yes_a(), counts.n(), 0.6)
                .unwrap()
                .to_bits()
        );
        assert_eq!(
            est.pi_b.to_bits(),
            estimate_mangat(counts.yes_b(), counts.n(), 0.7)
                .unwrap()
                .to_bits()
        );
    }

    #[test]
    fn simple_recovers_truth_from_exact_counts() {
        let counts = CellCounts::new(178, 282, 202, 338);
        let est = estimate_simple(&counts, &params(0.6, 0.7)).unwrap();
        assert_abs_diff_eq!(est.pi_a, 0.3, epsilon = 1e-12);
        assert_abs_diff_eq!(est.pi_b, 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(est.pi_ab, 0.1, epsilon = 1e-12);
    }

    #[test]
    fn simple_constant_term_counts_estimate_zero() {
        let counts = CellCounts::new(120, 280, 180, 420);
        let est = estimate_simple(&counts, &params(0.6, 0.7)).unwrap();
        assert_abs_diff_eq!(est.pi_a, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(est.pi_b, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(est.pi_ab, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn simple_rejects_half_probability_decks() {
        let counts = CellCounts::new(1, 1, 1, 1);
        assert!(matches!(
            estimate_simple(&counts, &params(0.5, 0.7)),
            Err(Error::DegenerateDesign(_))
        ));
    }

    #[test]
    fn crossed_symmetric_profile_estimates_half() {
        let profile = ResponseProfile::new(0.3, 0.2, 0.2, 0.3).unwrap();
        let est = estimate_crossed(&profile, &params(0.6, 0.7)).unwrap();
        assert_abs_diff_eq!(est.pi_a, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(est.pi_b, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn crossed_balanced_corners_estimate_zero_joint() {
        // pt * t11 == (1-p)(1-t) * t00 makes the joint numerator vanish:
        // with p = 0.6, t = 0.7, pt = 0.42 and (1-p)(1-t) = 0.12.
        let profile = ResponseProfile::new(0.12, 0.2, 0.26, 0.42).unwrap();
        let est = estimate_crossed(&profile, &params(0.6, 0.7)).unwrap();
        assert_abs_diff_eq!(est.pi_ab, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn crossed_rejects_complementary_decks() {
        let profile = ResponseProfile::new(0.25, 0.25, 0.25, 0.25).unwrap();
        assert!(matches!(
            estimate_crossed(&profile, &params(0.4, 0.6)),
            Err(Error::DegenerateDesign(_))
        ));
    }

    #[test]
    fn clamping_projects_onto_admissible_region() {
        let est = EstimateTriple {
            model: ModelId::ProposedEA,
            pi_a: -0.2,
            pi_b: 0.4,
            pi_ab: 0.9,
        };
        let clamped = est.clamped();
        assert!(clamped.changed);
        assert_eq!(clamped.pi_a, 0.0);
        assert_eq!(clamped.pi_b, 0.4);
        assert_eq!(clamped.pi_ab, 0.0);
        // Raw values stay untouched.
        assert_eq!(est.pi_a, -0.2);

        let est = EstimateTriple {
            model: ModelId::ProposedEA,
            pi_a: 0.9,
            pi_b: 0.8,
            pi_ab: 0.1,
        };
        let clamped = est.clamped();
        assert!(clamped.changed);
        // Joint proportion is pulled up to pi_a + pi_b - 1.
        assert_abs_diff_eq!(clamped.pi_ab, 0.7, epsilon = 1e-12);

        let est = EstimateTriple {
            model: ModelId::SimpleModel,
            pi_a: 0.3,
            pi_b: 0.2,
            pi_ab: 0.1,
        };
        assert!(!est.clamped().changed);
    }
}
