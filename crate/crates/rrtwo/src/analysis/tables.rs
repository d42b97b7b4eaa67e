//! Relative-efficiency grids matching the reference tables' layout.
//!
//! The grid runs `pi_a, pi_b` over `0.1..=0.9` in steps of `0.1` subject to
//! `pi_a + pi_b < 0.99`, in row-major `(pi_a, pi_b)` order. Against the
//! simple baseline the joint-proportion level is applied to every row as the
//! reference table does, even where it exceeds a marginal; against the
//! crossed baseline rows additionally require `level <= min(pi_a, pi_b)` and
//! `pi_a + pi_b + level <= 1`, which is the row set the reference tables
//! print (36 rows at levels 0.05 and 0.1, 15 rows at 0.2).

use crate::analysis::efficiency::{efficiency_at, Baseline, EfficiencyMode, EfficiencyRecord};
use crate::error::Error;
use crate::types::DesignParams;

/// Slack for comparing grid coordinates against user-supplied levels.
const GRID_EPS: f64 = 1e-9;

/// One block of records per requested joint-proportion level, rows in the
/// reference tables' order.
pub fn table_grid(
    params: &DesignParams,
    levels: &[f64],
    mode: EfficiencyMode,
    baseline: Baseline,
) -> Result<Vec<EfficiencyRecord>, Error> {
    match baseline {
        Baseline::Simple => params.require_simple()?,
        Baseline::Crossed => params.require_crossed()?,
    }
    for &level in levels {
        if !(0.0..=1.0).contains(&level) {
            return Err(Error::InvalidParams(format!(
                "joint-proportion level must lie in [0, 1], got {level}"
            )));
        }
    }
    let mut records = Vec::new();
    for &level in levels {
        for (pi_a, pi_b) in marginal_grid() {
            if baseline == Baseline::Crossed && !crossed_row_admitted(pi_a, pi_b, level) {
                continue;
            }
            records.push(efficiency_at(params, pi_a, pi_b, level, baseline, mode));
        }
    }
    Ok(records)
}

/// The `(pi_a, pi_b)` grid under `pi_a + pi_b < 0.99`, row-major.
pub fn marginal_grid() -> impl Iterator<Item = (f64, f64)> {
    (1..=9).flat_map(|i| {
        (1..=9)
            .filter(move |j| i + j <= 9)
            .map(move |j| (i as f64 / 10.0, j as f64 / 10.0))
    })
}

fn crossed_row_admitted(pi_a: f64, pi_b: f64, level: f64) -> bool {
    level <= pi_a.min(pi_b) + GRID_EPS && pi_a + pi_b + level <= 1.0 + GRID_EPS
}
