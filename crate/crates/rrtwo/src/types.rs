//! Domain types shared by every design: device parameters, population truth,
//! answer-pair profiles, and observed cell counts.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Absolute tolerance for "these probabilities sum to one" checks.
pub const PROFILE_SUM_TOLERANCE: f64 = 1e-12;

/// Card-deck probabilities for the two-question devices.
///
/// `p` drives deck I ("I belong to the first group" with probability `p`),
/// `lambda` drives deck II. The simple and crossed designs name the second
/// probability `T`; it maps onto the same field.
///
/// Construction only enforces the shared domain `(0, 1]`. Design-specific
/// guards (`p != 0.5` for the simple design, `p + lambda != 1` for the
/// crossed design) are checked by the operations that need them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignParams {
    p: f64,
    lambda: f64,
}

impl DesignParams {
    pub fn new(p: f64, lambda: f64) -> Result<Self, Error> {
        for (name, v) in [("p", p), ("lambda", lambda)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::InvalidParams(format!(
                    "{name} must lie in (0, 1], got {v}"
                )));
            }
        }
        Ok(Self { p, lambda })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Guard for the simple design, whose denominators carry `2p - 1` and
    /// `2T - 1`.
    pub fn require_simple(&self) -> Result<(), Error> {
        if self.p == 0.5 || self.lambda == 0.5 {
            return Err(Error::DegenerateDesign(
                "simple design requires p != 0.5 and lambda != 0.5".into(),
            ));
        }
        Ok(())
    }

    /// Guard for the crossed design, whose denominators carry `p + T - 1`.
    pub fn require_crossed(&self) -> Result<(), Error> {
        if self.p + self.lambda == 1.0 {
            return Err(Error::DegenerateDesign(
                "crossed design requires p + lambda != 1".into(),
            ));
        }
        Ok(())
    }
}

/// One of the four joint membership cells of the population.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruthCell {
    /// Member of both groups.
    Both,
    /// Member of the first group only.
    OnlyA,
    /// Member of the second group only.
    OnlyB,
    /// Member of neither group.
    Neither,
}

impl TruthCell {
    pub const ALL: [TruthCell; 4] = [
        TruthCell::Both,
        TruthCell::OnlyA,
        TruthCell::OnlyB,
        TruthCell::Neither,
    ];

    pub fn in_a(self) -> bool {
        matches!(self, TruthCell::Both | TruthCell::OnlyA)
    }

    pub fn in_b(self) -> bool {
        matches!(self, TruthCell::Both | TruthCell::OnlyB)
    }
}

/// Marginal and joint proportions `(pi_a, pi_b, pi_ab)` of the two sensitive
/// groups, validated so the implied four-cell joint distribution is a
/// probability vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationTruth {
    pi_a: f64,
    pi_b: f64,
    pi_ab: f64,
    cells: [f64; 4],
}

impl PopulationTruth {
    /// Validates the three proportions and attaches the derived joint cells
    /// `(pi_ab, pi_a - pi_ab, pi_b - pi_ab, 1 - pi_a - pi_b + pi_ab)`.
    ///
    /// Boundary cases are admissible: `pi_ab == min(pi_a, pi_b)` and a zero
    /// fourth cell both pass.
    pub fn new(pi_a: f64, pi_b: f64, pi_ab: f64) -> Result<Self, Error> {
        for (name, v) in [("pi_a", pi_a), ("pi_b", pi_b), ("pi_ab", pi_ab)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Admissibility(format!(
                    "{name} must lie in [0, 1], got {v}"
                )));
            }
        }
        if pi_ab > pi_a {
            return Err(Error::Admissibility(format!(
                "pi_ab = {pi_ab} exceeds pi_a = {pi_a}"
            )));
        }
        if pi_ab > pi_b {
            return Err(Error::Admissibility(format!(
                "pi_ab = {pi_ab} exceeds pi_b = {pi_b}"
            )));
        }
        // A fourth cell within rounding noise of zero counts as zero.
        let neither = ((1.0 - pi_a) - pi_b) + pi_ab;
        if neither < -PROFILE_SUM_TOLERANCE {
            return Err(Error::Admissibility(format!(
                "joint cell 1 - pi_a - pi_b + pi_ab = {neither} is negative"
            )));
        }
        Ok(Self {
            pi_a,
            pi_b,
            pi_ab,
            cells: [pi_ab, pi_a - pi_ab, pi_b - pi_ab, neither.clamp(0.0, 1.0)],
        })
    }

    pub fn pi_a(&self) -> f64 {
        self.pi_a
    }

    pub fn pi_b(&self) -> f64 {
        self.pi_b
    }

    pub fn pi_ab(&self) -> f64 {
        self.pi_ab
    }

    /// Joint distribution over `(both, only A, only B, neither)`.
    pub fn cells(&self) -> [f64; 4] {
        self.cells
    }

    pub fn cell(&self, cell: TruthCell) -> f64 {
        match cell {
            TruthCell::Both => self.cells[0],
            TruthCell::OnlyA => self.cells[1],
            TruthCell::OnlyB => self.cells[2],
            TruthCell::Neither => self.cells[3],
        }
    }
}

/// Probabilities of the four answer pairs `(yes,yes)`, `(yes,no)`,
/// `(no,yes)`, `(no,no)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseProfile {
    t11: f64,
    t10: f64,
    t01: f64,
    t00: f64,
}

impl ResponseProfile {
    /// Validates that the four entries are probabilities summing to one
    /// within [`PROFILE_SUM_TOLERANCE`].
    pub fn new(t11: f64, t10: f64, t01: f64, t00: f64) -> Result<Self, Error> {
        for (name, v) in [("t11", t11), ("t10", t10), ("t01", t01), ("t00", t00)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidProfile(format!(
                    "{name} must lie in [0, 1], got {v}"
                )));
            }
        }
        let sum = t11 + t10 + t01 + t00;
        if (sum - 1.0).abs() > PROFILE_SUM_TOLERANCE {
            return Err(Error::InvalidProfile(format!(
                "entries sum to {sum}, expected 1"
            )));
        }
        Ok(Self { t11, t10, t01, t00 })
    }

    /// Constructor for values produced by the exact forward maps, which
    /// satisfy the distribution invariants by construction.
    pub(crate) fn new_unchecked(t11: f64, t10: f64, t01: f64, t00: f64) -> Self {
        debug_assert!((t11 + t10 + t01 + t00 - 1.0).abs() <= PROFILE_SUM_TOLERANCE);
        Self { t11, t10, t01, t00 }
    }

    pub fn t11(&self) -> f64 {
        self.t11
    }

    pub fn t10(&self) -> f64 {
        self.t10
    }

    pub fn t01(&self) -> f64 {
        self.t01
    }

    pub fn t00(&self) -> f64 {
        self.t00
    }

    /// Entries in `(11, 10, 01, 00)` order.
    pub fn as_array(&self) -> [f64; 4] {
        [self.t11, self.t10, self.t01, self.t00]
    }
}

/// Observed tallies of the four answer pairs among `n` respondents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CellCounts {
    pub n11: u64,
    pub n10: u64,
    pub n01: u64,
    pub n00: u64,
}

impl CellCounts {
    pub fn new(n11: u64, n10: u64, n01: u64, n00: u64) -> Self {
        Self { n11, n10, n01, n00 }
    }

    /// Total number of respondents.
    pub fn n(&self) -> u64 {
        self.n11 + self.n10 + self.n01 + self.n00
    }

    /// Respondents answering yes to the first question.
    pub fn yes_a(&self) -> u64 {
        self.n11 + self.n10
    }

    /// Respondents answering yes to the second question.
    pub fn yes_b(&self) -> u64 {
        self.n11 + self.n01
    }

    /// Observed proportions `n_ij / n`.
    pub fn profile(&self) -> Result<ResponseProfile, Error> {
        let n = self.n();
        if n == 0 {
            return Err(Error::EmptySample);
        }
        let n = n as f64;
        Ok(ResponseProfile::new_unchecked(
            self.n11 as f64 / n,
            self.n10 as f64 / n,
            self.n01 as f64 / n,
            self.n00 as f64 / n,
        ))
    }
}

/// The designs handled by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelId {
    /// Single-attribute direct-or-deck design applied to the first group.
    MangatSingleA,
    /// Single-attribute direct-or-deck design applied to the second group.
    MangatSingleB,
    /// Two independent Warner decks, one per question.
    SimpleModel,
    /// The crossed design. Only its estimators and variances are published;
    /// its respondent-level mechanism is not, so it cannot be simulated.
    CrossedModel,
    /// The extended two-deck design: answer directly when a member,
    /// otherwise use the deck for that question.
    ProposedEA,
}

impl ModelId {
    pub const ALL: [ModelId; 5] = [
        ModelId::MangatSingleA,
        ModelId::MangatSingleB,
        ModelId::SimpleModel,
        ModelId::CrossedModel,
        ModelId::ProposedEA,
    ];

    /// Whether a respondent-level mechanism exists for this model.
    pub fn is_simulable(self) -> bool {
        self != ModelId::CrossedModel
    }

    pub fn label(self) -> &'static str {
        match self {
            ModelId::MangatSingleA => "mangat-a",
            ModelId::MangatSingleB => "mangat-b",
            ModelId::SimpleModel => "simple",
            ModelId::CrossedModel => "crossed",
            ModelId::ProposedEA => "proposed",
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "mangat-a" => Ok(ModelId::MangatSingleA),
            "mangat-b" => Ok(ModelId::MangatSingleB),
            "simple" => Ok(ModelId::SimpleModel),
            "crossed" => Ok(ModelId::CrossedModel),
            "proposed" => Ok(ModelId::ProposedEA),
            other => Err(Error::InvalidParams(format!(
                "unknown model '{other}' (expected mangat-a, mangat-b, simple, crossed, or proposed)"
            ))),
        }
    }
}
