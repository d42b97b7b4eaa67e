//! Variance-versus-proportion series for plotting, one row per swept value.

use crate::analysis::variance::{var_crossed, var_proposed, var_simple};
use crate::error::Error;
use crate::types::{DesignParams, PopulationTruth};

/// Which truth coordinate a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepTarget {
    PiA,
    PiB,
    PiAb,
}

impl SweepTarget {
    /// Column label for the swept coordinate.
    pub fn label(self) -> &'static str {
        match self {
            SweepTarget::PiA => "pi_a",
            SweepTarget::PiB => "pi_b",
            SweepTarget::PiAb => "pi_ab",
        }
    }
}

/// A sweep over one truth coordinate with the other two held fixed.
///
/// The field matching `target` is ignored; each entry of `values` takes its
/// place in turn. Every resulting truth must be admissible.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub target: SweepTarget,
    pub values: Vec<f64>,
    pub pi_a: f64,
    pub pi_b: f64,
    pub pi_ab: f64,
    pub n: u64,
}

/// Variances of the swept component under all three two-attribute designs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    /// The swept coordinate's value.
    pub x: f64,
    pub var_simple: f64,
    pub var_crossed: f64,
    pub var_proposed: f64,
}

/// Emits one row per swept value; an empty sweep yields an empty series.
pub fn variance_curves(params: &DesignParams, sweep: &SweepSpec) -> Result<Vec<CurveRow>, Error> {
    params.require_simple()?;
    params.require_crossed()?;
    let mut rows = Vec::with_capacity(sweep.values.len());
    for &x in &sweep.values {
        let (pi_a, pi_b, pi_ab) = match sweep.target {
            SweepTarget::PiA => (x, sweep.pi_b, sweep.pi_ab),
            SweepTarget::PiB => (sweep.pi_a, x, sweep.pi_ab),
            SweepTarget::PiAb => (sweep.pi_a, sweep.pi_b, x),
        };
        let truth = PopulationTruth::new(pi_a, pi_b, pi_ab)
            .map_err(|e| Error::Admissibility(format!("sweep point {x} is inadmissible: {e}")))?;
        let simple = var_simple(params, &truth, sweep.n)?;
        let crossed = var_crossed(params, &truth, sweep.n)?;
        let proposed = var_proposed(params, &truth, sweep.n);
        let row = match sweep.target {
            SweepTarget::PiA => CurveRow {
                x,
                var_simple: simple.var_a,
                var_crossed: crossed.var_a,
                var_proposed: proposed.var_a,
            },
            SweepTarget::PiB => CurveRow {
                x,
                var_simple: simple.var_b,
                var_crossed: crossed.var_b,
                var_proposed: proposed.var_b,
            },
            SweepTarget::PiAb => CurveRow {
                x,
                var_simple: simple.var_ab,
                var_crossed: crossed.var_ab,
                var_proposed: proposed.var_ab,
            },
        };
        rows.push(row);
    }
    Ok(rows)
}
