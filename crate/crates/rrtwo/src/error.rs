use crate::types::ModelId;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// The requested population truth does not describe a probability
    /// distribution over the four joint cells.
    #[error("inadmissible population truth: {0}")]
    Admissibility(String),

    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    /// The design parameters make an estimator denominator vanish.
    #[error("degenerate design: {0}")]
    DegenerateDesign(String),

    /// The model has no respondent-level mechanism to simulate.
    #[error("{0} cannot be simulated: mechanism not specified in source paper")]
    UnsimulableModel(ModelId),

    /// A response profile is not a probability distribution.
    #[error("invalid response profile: {0}")]
    InvalidProfile(String),

    /// Estimation was requested on zero observed respondents.
    #[error("empty sample: cell counts sum to zero")]
    EmptySample,
}
