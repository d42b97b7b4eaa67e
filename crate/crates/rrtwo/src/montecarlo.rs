//! Seeded respondent-level simulation of the simulable designs.
//!
//! Reproducibility contract: every replication draws from a ChaCha8 stream
//! keyed by the experiment seed with the replication index as the stream
//! number, so a replication's outcome depends only on `(seed, index)`.
//! Replications are aggregated in fixed-size chunks merged in index order,
//! which makes whole-experiment results bit-identical regardless of how
//! many worker threads execute the chunks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{var_mangat, var_proposed, var_simple, DenominatorConvention};
use crate::error::Error;
use crate::estimators::{estimate_mangat, estimate_proposed, estimate_simple};
use crate::forward::{forward_proposed, forward_simple, mangat_alpha};
use crate::stats::RunningMoments;
use crate::types::{
    CellCounts, DesignParams, ModelId, PopulationTruth, ResponseProfile, TruthCell,
};

/// Replications aggregated per worker unit; fixed so the merge tree does
/// not depend on thread count.
const REPLICATION_CHUNK: u64 = 256;

/// Multinomial draws aggregated per worker unit in the moment-operator
/// validation.
const DRAW_CHUNK: u64 = 4096;

/// Answer-pair cell labels in `(11, 10, 01, 00)` order.
pub const CELL_LABELS: [&str; 4] = ["11", "10", "01", "00"];

/// A validated simulation request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationConfig {
    model: ModelId,
    params: DesignParams,
    truth: PopulationTruth,
    n: u64,
    replications: u64,
    seed: u64,
}

impl SimulationConfig {
    pub fn new(
        model: ModelId,
        params: DesignParams,
        truth: PopulationTruth,
        n: u64,
        replications: u64,
        seed: u64,
    ) -> Result<Self, Error> {
        if !model.is_simulable() {
            return Err(Error::UnsimulableModel(model));
        }
        if model == ModelId::SimpleModel {
            params.require_simple()?;
        }
        if n == 0 {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        if replications == 0 {
            return Err(Error::InvalidParams(
                "replications must be at least 1".into(),
            ));
        }
        Ok(Self {
            model,
            params,
            truth,
            n,
            replications,
            seed,
        })
    }

    pub fn model(&self) -> ModelId {
        self.model
    }

    pub fn params(&self) -> &DesignParams {
        &self.params
    }

    pub fn truth(&self) -> &PopulationTruth {
        &self.truth
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn replications(&self) -> u64 {
        self.replications
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Simulation results for one estimated component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentSummary {
    /// Mean of the raw estimates across replications.
    pub mean: f64,
    /// The population value being estimated.
    pub truth: f64,
    /// Sample variance of the estimates across replications.
    pub empirical_variance: f64,
    /// Closed-form variance of one estimate at this sample size.
    pub theoretical_variance: f64,
    /// Predicted standard error of `mean`: sqrt(theoretical / replications).
    pub se_of_mean: f64,
}

impl ComponentSummary {
    /// Deviation of the mean from truth in predicted standard errors.
    pub fn z_score(&self) -> f64 {
        if self.se_of_mean > 0.0 {
            (self.mean - self.truth) / self.se_of_mean
        } else if self.mean == self.truth {
            0.0
        } else {
            f64::INFINITY
        }
    }

    /// Empirical over theoretical variance.
    pub fn variance_ratio(&self) -> f64 {
        if self.theoretical_variance > 0.0 {
            self.empirical_variance / self.theoretical_variance
        } else if self.empirical_variance == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    }
}

/// Aggregated outcome of a replication study.
///
/// Components not estimated by the model (the single-attribute designs
/// estimate only their own marginal) are `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationSummary {
    pub model: ModelId,
    pub n: u64,
    pub replications: u64,
    pub seed: u64,
    pub a: Option<ComponentSummary>,
    pub b: Option<ComponentSummary>,
    pub ab: Option<ComponentSummary>,
    /// Mean observed cell proportions across replications.
    pub empirical_theta: [f64; 4],
    /// Answer-pair distribution implied by the design and the truth.
    pub theoretical_theta: ResponseProfile,
}

impl SimulationSummary {
    pub fn components(&self) -> [(&'static str, Option<ComponentSummary>); 3] {
        [("a", self.a), ("b", self.b), ("ab", self.ab)]
    }
}

fn replication_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn draw_cell<R: Rng + ?Sized>(rng: &mut R, cumulative: &[f64; 3]) -> TruthCell {
    let u = rng.random::<f64>();
    if u < cumulative[0] {
        TruthCell::Both
    } else if u < cumulative[1] {
        TruthCell::OnlyA
    } else if u < cumulative[2] {
        TruthCell::OnlyB
    } else {
        TruthCell::Neither
    }
}

fn answer_pair<R: Rng + ?Sized>(
    model: ModelId,
    params: &DesignParams,
    cell: TruthCell,
    rng: &mut R,
) -> (bool, bool) {
    let (p, l) = (params.p(), params.lambda());
    match model {
        // Members answer yes outright; non-members draw a card stating
        // membership with the deck probability and answer it truthfully,
        // which yields a yes exactly when the negation card comes up.
        ModelId::ProposedEA => {
            let a = cell.in_a() || rng.random::<f64>() < 1.0 - p;
            let b = cell.in_b() || rng.random::<f64>() < 1.0 - l;
            (a, b)
        }
        // Warner decks for everyone: the answer states whether the drawn
        // card is true of the respondent.
        ModelId::SimpleModel => {
            let a = rng.random::<f64>() < if cell.in_a() { p } else { 1.0 - p };
            let b = rng.random::<f64>() < if cell.in_b() { l } else { 1.0 - l };
            (a, b)
        }
        ModelId::MangatSingleA => (cell.in_a() || rng.random::<f64>() < 1.0 - p, false),
        ModelId::MangatSingleB => (false, cell.in_b() || rng.random::<f64>() < 1.0 - l),
        ModelId::CrossedModel => unreachable!("rejected before simulation"),
    }
}

/// One respondent's answer pair given their joint membership cell.
pub fn simulate_respondent<R: Rng + ?Sized>(
    model: ModelId,
    params: &DesignParams,
    cell: TruthCell,
    rng: &mut R,
) -> Result<(bool, bool), Error> {
    if !model.is_simulable() {
        return Err(Error::UnsimulableModel(model));
    }
    Ok(answer_pair(model, params, cell, rng))
}

/// Samples `n` respondents with replacement from the truth's joint cells,
/// pushes each through the model's device, and tallies the answer pairs.
/// Fully determined by `(config.seed, replication_index)`.
pub fn run_replication(config: &SimulationConfig, replication_index: u64) -> CellCounts {
    let mut rng = replication_rng(config.seed, replication_index);
    let cells = config.truth.cells();
    let cumulative = [
        cells[0],
        cells[0] + cells[1],
        cells[0] + cells[1] + cells[2],
    ];
    let mut counts = CellCounts::default();
    for _ in 0..config.n {
        let cell = draw_cell(&mut rng, &cumulative);
        let (a, b) = answer_pair(config.model, &config.params, cell, &mut rng);
        match (a, b) {
            (true, true) => counts.n11 += 1,
            (true, false) => counts.n10 += 1,
            (false, true) => counts.n01 += 1,
            (false, false) => counts.n00 += 1,
        }
    }
    counts
}

fn estimates_for(config: &SimulationConfig, counts: &CellCounts) -> [Option<f64>; 3] {
    match config.model {
        ModelId::ProposedEA => {
            let est = estimate_proposed(counts, &config.params).expect("config validated");
            [Some(est.pi_a), Some(est.pi_b), Some(est.pi_ab)]
        }
        ModelId::SimpleModel => {
            let est = estimate_simple(counts, &config.params).expect("config validated");
            [Some(est.pi_a), Some(est.pi_b), Some(est.pi_ab)]
        }
        ModelId::MangatSingleA => {
            let est = estimate_mangat(counts.yes_a(), counts.n(), config.params.p())
                .expect("config validated");
            [Some(est), None, None]
        }
        ModelId::MangatSingleB => {
            let est = estimate_mangat(counts.yes_b(), counts.n(), config.params.lambda())
                .expect("config validated");
            [None, Some(est), None]
        }
        ModelId::CrossedModel => unreachable!("rejected before simulation"),
    }
}

fn theoretical_theta(config: &SimulationConfig) -> ResponseProfile {
    match config.model {
        ModelId::ProposedEA => forward_proposed(&config.params, &config.truth),
        ModelId::SimpleModel => forward_simple(&config.params, &config.truth),
        ModelId::MangatSingleA => {
            let alpha = mangat_alpha(config.params.p(), config.truth.pi_a());
            ResponseProfile::new(0.0, alpha, 0.0, 1.0 - alpha).expect("valid by construction")
        }
        ModelId::MangatSingleB => {
            let alpha = mangat_alpha(config.params.lambda(), config.truth.pi_b());
            ResponseProfile::new(0.0, 0.0, alpha, 1.0 - alpha).expect("valid by construction")
        }
        ModelId::CrossedModel => unreachable!("rejected before simulation"),
    }
}

fn theoretical_variances(config: &SimulationConfig) -> [Option<f64>; 3] {
    match config.model {
        ModelId::ProposedEA => {
            let v = var_proposed(&config.params, &config.truth, config.n);
            [Some(v.var_a), Some(v.var_b), Some(v.var_ab)]
        }
        ModelId::SimpleModel => {
            let v = var_simple(&config.params, &config.truth, config.n).expect("config validated");
            [Some(v.var_a), Some(v.var_b), Some(v.var_ab)]
        }
        ModelId::MangatSingleA => {
            let v = var_mangat(
                config.params.p(),
                config.truth.pi_a(),
                config.n,
                DenominatorConvention::SampleSize,
            )
            .expect("config validated");
            [Some(v), None, None]
        }
        ModelId::MangatSingleB => {
            let v = var_mangat(
                config.params.lambda(),
                config.truth.pi_b(),
                config.n,
                DenominatorConvention::SampleSize,
            )
            .expect("config validated");
            [None, Some(v), None]
        }
        ModelId::CrossedModel => unreachable!("rejected before simulation"),
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct ChunkAggregate {
    estimates: [RunningMoments; 3],
    theta: [RunningMoments; 4],
}

impl ChunkAggregate {
    fn merge(&mut self, other: &Self) {
        for (acc, o) in self.estimates.iter_mut().zip(&other.estimates) {
            acc.merge(o);
        }
        for (acc, o) in self.theta.iter_mut().zip(&other.theta) {
            acc.merge(o);
        }
    }
}

/// Runs all replications, applies the model's estimator to each, and
/// aggregates one-pass means and sample variances per component.
pub fn run_experiment(config: &SimulationConfig) -> SimulationSummary {
    let reps = config.replications;
    let chunk_count = reps.div_ceil(REPLICATION_CHUNK);
    let partials: Vec<ChunkAggregate> = (0..chunk_count)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * REPLICATION_CHUNK;
            let hi = ((chunk + 1) * REPLICATION_CHUNK).min(reps);
            let mut agg = ChunkAggregate::default();
            for rep in lo..hi {
                let counts = run_replication(config, rep);
                let profile = counts.profile().expect("n >= 1");
                for (acc, value) in agg.theta.iter_mut().zip(profile.as_array()) {
                    acc.push(value);
                }
                for (acc, value) in agg.estimates.iter_mut().zip(estimates_for(config, &counts)) {
                    if let Some(v) = value {
                        acc.push(v);
                    }
                }
            }
            agg
        })
        .collect();

    let mut total = ChunkAggregate::default();
    for partial in &partials {
        total.merge(partial);
    }

    let truths = [
        config.truth.pi_a(),
        config.truth.pi_b(),
        config.truth.pi_ab(),
    ];
    let theory = theoretical_variances(config);
    let mut components = [None; 3];
    for i in 0..3 {
        if let Some(theoretical_variance) = theory[i] {
            let acc = &total.estimates[i];
            components[i] = Some(ComponentSummary {
                mean: acc.mean(),
                truth: truths[i],
                empirical_variance: acc.sample_variance(),
                theoretical_variance,
                se_of_mean: (theoretical_variance / reps as f64).sqrt(),
            });
        }
    }

    SimulationSummary {
        model: config.model,
        n: config.n,
        replications: reps,
        seed: config.seed,
        a: components[0],
        b: components[1],
        ab: components[2],
        empirical_theta: [
            total.theta[0].mean(),
            total.theta[1].mean(),
            total.theta[2].mean(),
            total.theta[3].mean(),
        ],
        theoretical_theta: theoretical_theta(config),
    }
}

/// One variance check of the moment-operator validation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceCheck {
    /// Index into [`CELL_LABELS`].
    pub cell: usize,
    pub theoretical: f64,
    pub empirical: f64,
    pub standard_error: f64,
    pub z: f64,
}

/// One covariance check of the moment-operator validation. The published
/// operator table states the product `theta_ij * theta_kl`; sampled
/// indicator covariances realize it with a negative sign, so magnitudes
/// are compared and the empirical sign is reported as observed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceCheck {
    /// Indices into [`CELL_LABELS`].
    pub cells: (usize, usize),
    pub theoretical_magnitude: f64,
    pub empirical: f64,
    pub standard_error: f64,
    /// Deviation of |empirical| from the theoretical magnitude, in
    /// standard errors.
    pub z: f64,
}

/// Outcome of sampling the per-respondent indicator moments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentLemmaReport {
    pub draws: u64,
    pub draw_size: u64,
    /// Total indicator observations: `draws * draw_size`.
    pub respondents: u64,
    pub sigma_bound: f64,
    pub variances: [VarianceCheck; 4],
    pub covariances: [CovarianceCheck; 6],
    pub all_within_bound: bool,
}

impl MomentLemmaReport {
    pub fn sign_convention_note(&self) -> &'static str {
        "indicator covariances of mutually exclusive answer pairs are negative; \
         the stated operator values are their magnitudes"
    }
}

fn z_value(diff: f64, se: f64) -> f64 {
    if se > 0.0 {
        diff / se
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Samples `draws` multinomial draws of size `draw_size` at the profile and
/// compares per-respondent indicator variances and covariances with the
/// operator values `theta(1 - theta)` and `theta_ij * theta_kl`, each within
/// four standard errors.
pub fn validate_moment_lemma(
    profile: &ResponseProfile,
    draw_size: u64,
    draws: u64,
    seed: u64,
) -> MomentLemmaReport {
    debug_assert!(draw_size >= 1 && draws >= 1);
    let theta = profile.as_array();
    let cumulative = [
        theta[0],
        theta[0] + theta[1],
        theta[0] + theta[1] + theta[2],
    ];

    let chunk_count = draws.div_ceil(DRAW_CHUNK);
    let counts: [u64; 4] = (0..chunk_count)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * DRAW_CHUNK;
            let hi = ((chunk + 1) * DRAW_CHUNK).min(draws);
            let mut c = [0u64; 4];
            for draw in lo..hi {
                let mut rng = replication_rng(seed, draw);
                for _ in 0..draw_size {
                    let cell = draw_cell(&mut rng, &cumulative);
                    let idx = match cell {
                        TruthCell::Both => 0,
                        TruthCell::OnlyA => 1,
                        TruthCell::OnlyB => 2,
                        TruthCell::Neither => 3,
                    };
                    c[idx] += 1;
                }
            }
            c
        })
        .reduce(
            || [0u64; 4],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );

    let total = draws * draw_size;
    let n = total as f64;
    // With one respondent contributing exactly one answer pair, the cross
    // product of two distinct indicators is always zero, so the empirical
    // moments reduce to functions of the observed means.
    let means: [f64; 4] = std::array::from_fn(|i| counts[i] as f64 / n);
    let bessel = if total > 1 { n / (n - 1.0) } else { 1.0 };

    let sigma_bound = 4.0;
    let mut all_within = true;

    let variances = std::array::from_fn(|i| {
        let t = theta[i];
        let theoretical = t * (1.0 - t);
        let empirical = bessel * means[i] * (1.0 - means[i]);
        // Sampling error of a Bernoulli sample variance, from the exact
        // central moments: Var(s^2) ~= (mu4 - sigma^4) / n.
        let mu4 = t * (1.0 - t) * ((1.0 - t).powi(3) + t.powi(3));
        let se = ((mu4 - theoretical * theoretical).max(0.0) / n).sqrt();
        let z = z_value(empirical - theoretical, se);
        if z.abs() > sigma_bound {
            all_within = false;
        }
        VarianceCheck {
            cell: i,
            theoretical,
            empirical,
            standard_error: se,
            z,
        }
    });

    let pair_indices = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let covariances = std::array::from_fn(|k| {
        let (i, j) = pair_indices[k];
        let (ti, tj) = (theta[i], theta[j]);
        let theoretical_magnitude = ti * tj;
        let empirical = -bessel * means[i] * means[j];
        // Var(sample covariance) ~= (E[(x - ti)^2 (y - tj)^2] - cov^2) / n,
        // with the expectation taken over the four-outcome distribution.
        let fourth = ti * (1.0 - ti).powi(2) * tj * tj
            + tj * ti * ti * (1.0 - tj).powi(2)
            + (1.0 - ti - tj) * ti * ti * tj * tj;
        let se = ((fourth - (ti * tj).powi(2)).max(0.0) / n).sqrt();
        let z = z_value(empirical.abs() - theoretical_magnitude, se);
        if z.abs() > sigma_bound {
            all_within = false;
        }
        CovarianceCheck {
            cells: (i, j),
            theoretical_magnitude,
            empirical,
            standard_error: se,
            z,
        }
    });

    MomentLemmaReport {
        draws,
        draw_size,
        respondents: total,
        sigma_bound,
        variances,
        covariances,
        all_within_bound: all_within,
    }
}
