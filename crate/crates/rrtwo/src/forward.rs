//! Exact maps from population truth to answer-pair probabilities.
//!
//! Each map is the expectation of the respondent protocol over the four
//! joint membership cells, written out as affine functions of
//! `(pi_ab, pi_a, pi_b)`. The coefficients of every proportion cancel
//! across the four cells, so the outputs always form a distribution.

use crate::types::{DesignParams, PopulationTruth, ResponseProfile};

/// Probability of a "yes" under the direct-or-deck protocol:
/// members answer yes outright, non-members draw from a deck stating
/// membership with probability `p` and answer the drawn card truthfully.
///
/// Evaluates to `pi + (1 - pi)(1 - p)`.
pub fn mangat_alpha(p: f64, pi: f64) -> f64 {
    debug_assert!(p > 0.0 && p <= 1.0, "p must lie in (0, 1]");
    debug_assert!((0.0..=1.0).contains(&pi), "pi must lie in [0, 1]");
    pi + (1.0 - pi) * (1.0 - p)
}

/// Answer-pair distribution for the extended design: each question is
/// answered directly by members and through that question's deck by
/// non-members (deck I with probability `p`, deck II with `lambda`).
///
/// With `a1 = p*lambda`, `a2 = p(1 - lambda)`, `a3 = (1 - p)lambda`,
/// `a4 = (1 - p)(1 - lambda)`:
///
/// ```text
/// t11 =  a1*pi_ab + a2*pi_a + a3*pi_b + a4
/// t10 = -a1*pi_ab + a1*pi_a - a3*pi_b + a3
/// t01 = -a1*pi_ab - a2*pi_a + a1*pi_b + a2
/// t00 =  a1*pi_ab - a1*pi_a - a1*pi_b + a1
/// ```
///
/// The `(t11 + t10)` margin equals [`mangat_alpha`] at `(p, pi_a)` and the
/// `(t11 + t01)` margin equals it at `(lambda, pi_b)`: each question taken
/// alone is exactly the single-attribute protocol.
pub fn forward_proposed(params: &DesignParams, truth: &PopulationTruth) -> ResponseProfile {
    let (p, l) = (params.p(), params.lambda());
    let (pi_a, pi_b, pi_ab) = (truth.pi_a(), truth.pi_b(), truth.pi_ab());
    let a1 = p * l;
    let a2 = p * (1.0 - l);
    let a3 = (1.0 - p) * l;
    let a4 = (1.0 - p) * (1.0 - l);
    ResponseProfile::new_unchecked(
        a1 * pi_ab + a2 * pi_a + a3 * pi_b + a4,
        -a1 * pi_ab + a1 * pi_a - a3 * pi_b + a3,
        -a1 * pi_ab - a2 * pi_a + a1 * pi_b + a2,
        a1 * pi_ab - a1 * pi_a - a1 * pi_b + a1,
    )
}

/// Answer-pair distribution for the simple design: both questions are
/// answered through independent Warner decks (probabilities `p` and `T`,
/// the latter stored in [`DesignParams::lambda`]).
///
/// Every respondent answers whether the drawn card's statement is true of
/// them, so a member says yes with probability `p` and a non-member with
/// probability `1 - p`. Writing `g = (2p - 1)(2T - 1)`:
///
/// ```text
/// t11 =  g*pi_ab + (2p-1)(1-T)*pi_a + (1-p)(2T-1)*pi_b + (1-p)(1-T)
/// t10 = -g*pi_ab + (2p-1)T*pi_a     - (1-p)(2T-1)*pi_b + (1-p)T
/// t01 = -g*pi_ab - (2p-1)(1-T)*pi_a + p(2T-1)*pi_b     + p(1-T)
/// t00 =  g*pi_ab - (2p-1)T*pi_a     - p(2T-1)*pi_b     + pT
/// ```
pub fn forward_simple(params: &DesignParams, truth: &PopulationTruth) -> ResponseProfile {
    let (p, t) = (params.p(), params.lambda());
    let (pi_a, pi_b, pi_ab) = (truth.pi_a(), truth.pi_b(), truth.pi_ab());
    let g = (2.0 * p - 1.0) * (2.0 * t - 1.0);
    ResponseProfile::new_unchecked(
        g * pi_ab
            + (2.0 * p - 1.0) * (1.0 - t) * pi_a
            + (1.0 - p) * (2.0 * t - 1.0) * pi_b
            + (1.0 - p) * (1.0 - t),
        -g * pi_ab + (2.0 * p - 1.0) * t * pi_a - (1.0 - p) * (2.0 * t - 1.0) * pi_b
            + (1.0 - p) * t,
        -g * pi_ab - (2.0 * p - 1.0) * (1.0 - t) * pi_a
            + p * (2.0 * t - 1.0) * pi_b
            + p * (1.0 - t),
        g * pi_ab - (2.0 * p - 1.0) * t * pi_a - p * (2.0 * t - 1.0) * pi_b + p * t,
    )
}
