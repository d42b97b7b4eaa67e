//! Closed-form variances of the design estimators at a given truth and
//! sample size.
//!
//! The `*_a`, `*_b`, and `*_ab` functions evaluate one component from raw
//! proportions; they do not check admissibility or design guards, which
//! makes them usable for grid sweeps that deliberately visit formula-only
//! points. The triple-returning functions validate and bundle all three.

use crate::error::Error;
use crate::forward::mangat_alpha;
use crate::types::{DesignParams, ModelId, PopulationTruth};

/// Variance divisor: the sample size `n`, or `n - 1` as in the
/// single-attribute plug-in form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DenominatorConvention {
    SampleSize,
    SampleSizeMinusOne,
}

/// Variances of the three estimators under one model, for `n` respondents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceTriple {
    pub model: ModelId,
    pub n: u64,
    pub var_a: f64,
    pub var_b: f64,
    pub var_ab: f64,
}

/// Single-attribute estimator variance `alpha(1 - alpha) / (d p^2)` with
/// `alpha` derived from the truth proportion.
pub fn var_mangat(
    p: f64,
    pi: f64,
    n: u64,
    convention: DenominatorConvention,
) -> Result<f64, Error> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParams(format!(
            "p must lie in (0, 1], got {p}"
        )));
    }
    if !(0.0..=1.0).contains(&pi) {
        return Err(Error::InvalidParams(format!(
            "pi must lie in [0, 1], got {pi}"
        )));
    }
    var_mangat_at_alpha(mangat_alpha(p, pi), p, n, convention)
}

/// Same as [`var_mangat`] but evaluated at an observed yes proportion.
pub fn var_mangat_at_alpha(
    alpha: f64,
    p: f64,
    n: u64,
    convention: DenominatorConvention,
) -> Result<f64, Error> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParams(format!(
            "p must lie in (0, 1], got {p}"
        )));
    }
    let divisor = match convention {
        DenominatorConvention::SampleSize => {
            if n < 1 {
                return Err(Error::InvalidParams("n must be at least 1".into()));
            }
            n as f64
        }
        DenominatorConvention::SampleSizeMinusOne => {
            if n < 2 {
                return Err(Error::InvalidParams(
                    "n must be at least 2 under the n - 1 convention".into(),
                ));
            }
            (n - 1) as f64
        }
    };
    Ok(alpha * (1.0 - alpha) / (divisor * p * p))
}

/// Extended-design variance of the first marginal estimator:
/// `(pi_a[(2p - 1) - p pi_a] + (1 - p)) / (n p)`.
///
/// Algebraically this equals `alpha(1 - alpha) / (n p^2)` with `alpha` from
/// [`mangat_alpha`]; it is evaluated in the polynomial form so the identity
/// can be checked against an independent route.
pub fn var_proposed_a(p: f64, pi_a: f64, n: u64) -> f64 {
    (pi_a * ((2.0 * p - 1.0) - p * pi_a) + (1.0 - p)) / (n as f64 * p)
}

/// Extended-design variance of the second marginal estimator.
pub fn var_proposed_b(lambda: f64, pi_b: f64, n: u64) -> f64 {
    (pi_b * ((2.0 * lambda - 1.0) - lambda * pi_b) + (1.0 - lambda)) / (n as f64 * lambda)
}

/// Extended-design variance of the joint estimator.
pub fn var_proposed_ab(p: f64, lambda: f64, pi_a: f64, pi_b: f64, pi_ab: f64, n: u64) -> f64 {
    let num = pi_ab * ((2.0 * p - 1.0) * (2.0 * lambda - 1.0) - p * lambda * pi_ab)
        + (2.0 * p - 1.0) * (1.0 - lambda) * pi_a
        + (1.0 - p) * (2.0 * lambda - 1.0) * pi_b
        + (1.0 - p) * (1.0 - lambda);
    num / (n as f64 * p * lambda)
}

pub fn var_proposed(params: &DesignParams, truth: &PopulationTruth, n: u64) -> VarianceTriple {
    let (p, l) = (params.p(), params.lambda());
    VarianceTriple {
        model: ModelId::ProposedEA,
        n,
        var_a: var_proposed_a(p, truth.pi_a(), n),
        var_b: var_proposed_b(l, truth.pi_b(), n),
        var_ab: var_proposed_ab(p, l, truth.pi_a(), truth.pi_b(), truth.pi_ab(), n),
    }
}

/// Simple-design variance of the first marginal estimator:
/// `pi_a(1 - pi_a)/n + p(1 - p)/(n(2p - 1)^2)`. Requires `p != 0.5`.
pub fn var_simple_a(p: f64, pi_a: f64, n: u64) -> f64 {
    debug_assert!(p != 0.5);
    let n = n as f64;
    pi_a * (1.0 - pi_a) / n + p * (1.0 - p) / (n * (2.0 * p - 1.0).powi(2))
}

/// Simple-design variance of the second marginal estimator. Requires
/// `t != 0.5`.
pub fn var_simple_b(t: f64, pi_b: f64, n: u64) -> f64 {
    debug_assert!(t != 0.5);
    let n = n as f64;
    pi_b * (1.0 - pi_b) / n + t * (1.0 - t) / (n * (2.0 * t - 1.0).powi(2))
}

/// Simple-design variance of the joint estimator, evaluated at general
/// `(p, T)`. Requires `p != 0.5` and `t != 0.5`.
pub fn var_simple_ab(p: f64, t: f64, pi_a: f64, pi_b: f64, pi_ab: f64, n: u64) -> f64 {
    debug_assert!(p != 0.5 && t != 0.5);
    let n = n as f64;
    let pp = (2.0 * p - 1.0).powi(2);
    let tt = (2.0 * t - 1.0).powi(2);
    let num = pp * t * (1.0 - t) * pi_a + p * (1.0 - p) * tt * pi_b + p * t * (1.0 - p) * (1.0 - t);
    pi_ab * (1.0 - pi_ab) / n + num / (n * pp * tt)
}

pub fn var_simple(
    params: &DesignParams,
    truth: &PopulationTruth,
    n: u64,
) -> Result<VarianceTriple, Error> {
    params.require_simple()?;
    let (p, t) = (params.p(), params.lambda());
    Ok(VarianceTriple {
        model: ModelId::SimpleModel,
        n,
        var_a: var_simple_a(p, truth.pi_a(), n),
        var_b: var_simple_b(t, truth.pi_b(), n),
        var_ab: var_simple_ab(p, t, truth.pi_a(), truth.pi_b(), truth.pi_ab(), n),
    })
}

/// Crossed-design variance of the first marginal estimator. Requires
/// `p + t != 1`.
pub fn var_crossed_a(p: f64, t: f64, pi_a: f64, pi_b: f64, pi_ab: f64, n: u64) -> f64 {
    debug_assert!(p + t != 1.0);
    let n = n as f64;
    let weight = p * t + (1.0 - p) * (1.0 - t);
    let spread = 1.0 - pi_a - pi_b + 2.0 * pi_ab;
    pi_a * (1.0 - pi_a) / n + (1.0 - p) * (t * weight * spread) / (n * (p + t - 1.0).powi(2))
}

/// Crossed-design variance of the second marginal estimator. Requires
/// `p + t != 1`.
pub fn var_crossed_b(p: f64, t: f64, pi_a: f64, pi_b: f64, pi_ab: f64, n: u64) -> f64 {
    debug_assert!(p + t != 1.0);
    let n = n as f64;
    let weight = p * t + (1.0 - p) * (1.0 - t);
    let spread = 1.0 - pi_a - pi_b + 2.0 * pi_ab;
    pi_b * (1.0 - pi_b) / n + (1.0 - t) * (p * weight * spread) / (n * (p + t - 1.0).powi(2))
}

/// Crossed-design variance of the joint estimator. Requires `p + t != 1`.
pub fn var_crossed_ab(p: f64, t: f64, pi_a: f64, pi_b: f64, pi_ab: f64, n: u64) -> f64 {
    debug_assert!(p + t != 1.0);
    let n = n as f64;
    let weight = p * t + (1.0 - p) * (1.0 - t);
    let shifted = (p + t - 1.0).powi(2);
    let inner = pi_ab * (p * p * t * t + (1.0 - p).powi(2) * (1.0 - t).powi(2) - weight * shifted)
        + p * t * (1.0 - p) * (1.0 - t) * (1.0 - pi_a - pi_b);
    pi_ab * (1.0 - pi_ab) / n + inner / (n * weight * shifted)
}

pub fn var_crossed(
    params: &DesignParams,
    truth: &PopulationTruth,
    n: u64,
) -> Result<VarianceTriple, Error> {
    params.require_crossed()?;
    let (p, t) = (params.p(), params.lambda());
    Ok(VarianceTriple {
        model: ModelId::CrossedModel,
        n,
        var_a: var_crossed_a(p, t, truth.pi_a(), truth.pi_b(), truth.pi_ab(), n),
        var_b: var_crossed_b(p, t, truth.pi_a(), truth.pi_b(), truth.pi_ab(), n),
        var_ab: var_crossed_ab(p, t, truth.pi_a(), truth.pi_b(), truth.pi_ab(), n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(p: f64, lambda: f64) -> DesignParams {
        DesignParams::new(p, lambda).unwrap()
    }

    fn truth(pi_a: f64, pi_b: f64, pi_ab: f64) -> PopulationTruth {
        PopulationTruth::new(pi_a, pi_b, pi_ab).unwrap()
    }

    #[test]
    fn mangat_variance_conventions() {
        let v = var_mangat(0.6, 0.1, 1000, DenominatorConvention::SampleSize).unwrap();
        assert_abs_diff_eq!(v, 6.9e-4, epsilon = 1e-12);
        let v1 = var_mangat(0.6, 0.1, 1000, DenominatorConvention::SampleSizeMinusOne).unwrap();
        assert_abs_diff_eq!(v1, 6.9e-4 * 1000.0 / 999.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v1, 6.9069e-4, epsilon = 1e-7);
    }

    #[test]
    fn mangat_variance_without_randomization_is_binomial() {
        let v = var_mangat(1.0, 0.3, 500, DenominatorConvention::SampleSize).unwrap();
        assert_abs_diff_eq!(v, 0.3 * 0.7 / 500.0, epsilon = 1e-15);
    }

    #[test]
    fn mangat_variance_rejects_bad_input() {
        assert!(var_mangat(0.0, 0.1, 10, DenominatorConvention::SampleSize).is_err());
        assert!(var_mangat(0.6, 0.1, 1, DenominatorConvention::SampleSizeMinusOne).is_err());
        assert!(var_mangat_at_alpha(0.5, 0.6, 0, DenominatorConvention::SampleSize).is_err());
    }

    #[test]
    fn proposed_marginal_matches_alpha_route() {
        // Polynomial form vs alpha(1 - alpha)/(n p^2): two routes, one value.
        let v = var_proposed_a(0.6, 0.1, 1);
        assert_abs_diff_eq!(v, 0.69, epsilon = 1e-12);
        let alpha = mangat_alpha(0.6, 0.1);
        assert_abs_diff_eq!(v, alpha * (1.0 - alpha) / 0.36, epsilon = 1e-12);
    }

    #[test]
    fn proposed_joint_reference_value() {
        let v = var_proposed_ab(0.6, 0.7, 0.1, 0.1, 0.05, 1);
        assert_abs_diff_eq!(v, 0.14495 / 0.42, epsilon = 1e-12);
    }

    #[test]
    fn proposed_degenerate_population_has_zero_variance() {
        let triple = var_proposed(&params(1.0, 1.0), &truth(1.0, 1.0, 1.0), 17);
        assert_abs_diff_eq!(triple.var_a, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(triple.var_b, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(triple.var_ab, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn simple_reference_values() {
        assert_abs_diff_eq!(var_simple_a(0.6, 0.1, 1), 6.09, epsilon = 1e-12);
        assert_abs_diff_eq!(var_simple_b(0.7, 0.8, 1), 1.4725, epsilon = 1e-12);
        assert_abs_diff_eq!(
            var_simple_ab(0.6, 0.7, 0.1, 0.1, 0.05, 1),
            8.65375,
            epsilon = 1e-12
        );
    }

    #[test]
    fn simple_triple_rejects_degenerate() {
        assert!(var_simple(&params(0.5, 0.7), &truth(0.1, 0.1, 0.05), 10).is_err());
    }

    #[test]
    fn crossed_reference_values() {
        assert_abs_diff_eq!(
            var_crossed_a(0.6, 0.7, 0.1, 0.1, 0.05, 1),
            1.602,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            var_crossed_b(0.6, 0.7, 0.1, 0.1, 0.05, 1),
            1.062,
            epsilon = 1e-12
        );
        // 0.0475 + (0.05 * 0.1422 + 0.0504 * 0.8) / 0.0486
        assert_abs_diff_eq!(
            var_crossed_ab(0.6, 0.7, 0.1, 0.1, 0.05, 1),
            0.0475 + 0.047_43 / 0.0486,
            epsilon = 1e-12
        );
    }

    #[test]
    fn crossed_triple_rejects_complementary_decks() {
        assert!(var_crossed(&params(0.4, 0.6), &truth(0.1, 0.1, 0.05), 10).is_err());
    }

    #[test]
    fn variances_scale_inversely_with_n() {
        let params = params(0.6, 0.7);
        let truth = truth(0.3, 0.2, 0.1);
        let at_1 = var_proposed(&params, &truth, 1);
        let at_1000 = var_proposed(&params, &truth, 1000);
        assert_abs_diff_eq!(at_1.var_a / 1000.0, at_1000.var_a, epsilon = 1e-15);
        assert_abs_diff_eq!(at_1.var_ab / 1000.0, at_1000.var_ab, epsilon = 1e-15);
    }
}
