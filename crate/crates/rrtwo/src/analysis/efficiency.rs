//! Relative efficiencies of the extended-design estimators against the
//! simple and crossed baselines.
//!
//! Two evaluation modes ship. `FormulaConsistent` divides the baseline
//! variance by the extended design's closed-form variance for every
//! component. `Published` reproduces the reference tables: there the
//! marginal denominators are the yes-probability variance
//! `alpha(1 - alpha)/n` without the `1/p^2` (resp. `1/lambda^2`) inflation
//! that the closed forms carry, while the joint denominator is the closed
//! form in both modes. Consequently a published marginal RE equals the
//! formula-consistent one divided by `p^2` (resp. `lambda^2`).

use std::fmt;
use std::str::FromStr;

use crate::analysis::variance::{
    var_crossed_a, var_crossed_ab, var_crossed_b, var_proposed_a, var_proposed_ab, var_proposed_b,
    var_simple_a, var_simple_ab, var_simple_b,
};
use crate::error::Error;
use crate::forward::mangat_alpha;
use crate::types::{DesignParams, PopulationTruth};

/// Which baseline design the extended design is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Baseline {
    Simple,
    Crossed,
}

impl Baseline {
    pub fn label(self) -> &'static str {
        match self {
            Baseline::Simple => "simple",
            Baseline::Crossed => "crossed",
        }
    }
}

impl fmt::Display for Baseline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Baseline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "simple" => Ok(Baseline::Simple),
            "crossed" => Ok(Baseline::Crossed),
            other => Err(Error::InvalidParams(format!(
                "unknown baseline '{other}' (expected simple or crossed)"
            ))),
        }
    }
}

/// Denominator convention for the efficiency ratios.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EfficiencyMode {
    /// Reproduces the reference tables.
    Published,
    /// Uses the closed-form variances throughout.
    FormulaConsistent,
}

impl EfficiencyMode {
    pub fn label(self) -> &'static str {
        match self {
            EfficiencyMode::Published => "published",
            EfficiencyMode::FormulaConsistent => "formula",
        }
    }
}

impl fmt::Display for EfficiencyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for EfficiencyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "published" => Ok(EfficiencyMode::Published),
            "formula" => Ok(EfficiencyMode::FormulaConsistent),
            other => Err(Error::InvalidParams(format!(
                "unknown mode '{other}' (expected published or formula)"
            ))),
        }
    }
}

/// Relative efficiencies at one truth point. Ratios above one favor the
/// extended design; they are independent of the sample size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfficiencyRecord {
    pub pi_a: f64,
    pub pi_b: f64,
    pub pi_ab: f64,
    pub re_a: f64,
    pub re_b: f64,
    pub re_ab: f64,
    pub mode: EfficiencyMode,
    pub baseline: Baseline,
}

/// Relative efficiency of the extended-design estimators against a baseline
/// at an admissible truth.
pub fn relative_efficiency(
    params: &DesignParams,
    truth: &PopulationTruth,
    baseline: Baseline,
    mode: EfficiencyMode,
) -> Result<EfficiencyRecord, Error> {
    match baseline {
        Baseline::Simple => params.require_simple()?,
        Baseline::Crossed => params.require_crossed()?,
    }
    Ok(efficiency_at(
        params,
        truth.pi_a(),
        truth.pi_b(),
        truth.pi_ab(),
        baseline,
        mode,
    ))
}

/// Formula-level evaluation at raw proportions; the caller is responsible
/// for the baseline's design guard. Grid generators use this directly so
/// they can visit the reference tables' formula-only points.
pub(crate) fn efficiency_at(
    params: &DesignParams,
    pi_a: f64,
    pi_b: f64,
    pi_ab: f64,
    baseline: Baseline,
    mode: EfficiencyMode,
) -> EfficiencyRecord {
    let (p, l) = (params.p(), params.lambda());
    let (base_a, base_b, base_ab) = match baseline {
        Baseline::Simple => (
            var_simple_a(p, pi_a, 1),
            var_simple_b(l, pi_b, 1),
            var_simple_ab(p, l, pi_a, pi_b, pi_ab, 1),
        ),
        Baseline::Crossed => (
            var_crossed_a(p, l, pi_a, pi_b, pi_ab, 1),
            var_crossed_b(p, l, pi_a, pi_b, pi_ab, 1),
            var_crossed_ab(p, l, pi_a, pi_b, pi_ab, 1),
        ),
    };
    let (den_a, den_b) = match mode {
        EfficiencyMode::Published => {
            let alpha_a = mangat_alpha(p, pi_a);
            let alpha_b = mangat_alpha(l, pi_b);
            (alpha_a * (1.0 - alpha_a), alpha_b * (1.0 - alpha_b))
        }
        EfficiencyMode::FormulaConsistent => {
            (var_proposed_a(p, pi_a, 1), var_proposed_b(l, pi_b, 1))
        }
    };
    let den_ab = var_proposed_ab(p, l, pi_a, pi_b, pi_ab, 1);
    EfficiencyRecord {
        pi_a,
        pi_b,
        pi_ab,
        re_a: base_a / den_a,
        re_b: base_b / den_b,
        re_ab: base_ab / den_ab,
        mode,
        baseline,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params() -> DesignParams {
        DesignParams::new(0.6, 0.7).unwrap()
    }

    #[test]
    fn published_simple_matches_first_table_row() {
        let truth = PopulationTruth::new(0.1, 0.1, 0.05).unwrap();
        let rec = relative_efficiency(
            &params(),
            &truth,
            Baseline::Simple,
            EfficiencyMode::Published,
        )
        .unwrap();
        assert_abs_diff_eq!(rec.re_a, 24.52, epsilon = 5e-3);
        assert_abs_diff_eq!(rec.re_b, 6.02, epsilon = 5e-3);
        assert_abs_diff_eq!(rec.re_ab, 25.07, epsilon = 5e-3);
    }

    #[test]
    fn formula_consistent_marginal_ratio() {
        let truth = PopulationTruth::new(0.1, 0.1, 0.05).unwrap();
        let rec = relative_efficiency(
            &params(),
            &truth,
            Baseline::Simple,
            EfficiencyMode::FormulaConsistent,
        )
        .unwrap();
        assert_abs_diff_eq!(rec.re_a, 6.09 / 0.69, epsilon = 1e-10);
    }

    #[test]
    fn published_crossed_matches_first_table_row() {
        let truth = PopulationTruth::new(0.1, 0.1, 0.05).unwrap();
        let rec = relative_efficiency(
            &params(),
            &truth,
            Baseline::Crossed,
            EfficiencyMode::Published,
        )
        .unwrap();
        assert_abs_diff_eq!(rec.re_a, 6.4, epsilon = 5e-2);
        assert_abs_diff_eq!(rec.re_b, 4.6, epsilon = 5e-2);
        assert_abs_diff_eq!(rec.re_ab, 3.0, epsilon = 5e-2);
    }

    #[test]
    fn published_marginals_are_formula_divided_by_squared_device_probability() {
        let truth = PopulationTruth::new(0.3, 0.2, 0.1).unwrap();
        let published = relative_efficiency(
            &params(),
            &truth,
            Baseline::Simple,
            EfficiencyMode::Published,
        )
        .unwrap();
        let formula = relative_efficiency(
            &params(),
            &truth,
            Baseline::Simple,
            EfficiencyMode::FormulaConsistent,
        )
        .unwrap();
        assert_abs_diff_eq!(published.re_a, formula.re_a / 0.36, epsilon = 1e-10);
        assert_abs_diff_eq!(published.re_b, formula.re_b / 0.49, epsilon = 1e-10);
        // The joint column is identical in the two modes.
        assert_eq!(published.re_ab.to_bits(), formula.re_ab.to_bits());
    }

    #[test]
    fn degenerate_baselines_are_rejected() {
        let truth = PopulationTruth::new(0.1, 0.1, 0.05).unwrap();
        let half = DesignParams::new(0.5, 0.7).unwrap();
        assert!(
            relative_efficiency(&half, &truth, Baseline::Simple, EfficiencyMode::Published)
                .is_err()
        );
        let complementary = DesignParams::new(0.4, 0.6).unwrap();
        assert!(relative_efficiency(
            &complementary,
            &truth,
            Baseline::Crossed,
            EfficiencyMode::Published
        )
        .is_err());
    }

    #[test]
    fn baseline_and_mode_parse() {
        assert_eq!("simple".parse::<Baseline>().unwrap(), Baseline::Simple);
        assert_eq!(
            "formula".parse::<EfficiencyMode>().unwrap(),
            EfficiencyMode::FormulaConsistent
        );
        assert!("both".parse::<Baseline>().is_err());
        assert!("printed".parse::<EfficiencyMode>().is_err());
    }
}
