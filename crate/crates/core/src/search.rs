//! Stochastic hill climbing over row-normalized matrices: seed from the best
//! of a batch of random orthogonal matrices, repeatedly add a small Gaussian
//! matrix and renormalize the rows, keep strict improvements, shrink the step
//! size once progress stalls.

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::{beta_exact, BetaEstimate, Strategy};
use crate::matrix::{linf_image_signs, normalize_rows, TestMatrix};
use crate::mc::beta_monte_carlo;
use crate::rng;

/// How candidate matrices are scored during a climb.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvaluatorKind {
    /// Exhaustive enumeration (Gray code, antipodal halving).
    Exact,
    /// One fixed batch of uniform sign vectors, drawn once from the config
    /// seed and reused for every candidate so that strict-improvement
    /// comparisons see common random numbers.
    MonteCarloFixedSample { n_samples: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    Maximize,
    Minimize,
}

/// Hyperparameters of one climb.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchConfig {
    pub n: usize,
    pub n_orthogonal_seeds: usize,
    pub epsilon_init: f64,
    pub epsilon_decay: f64,
    /// Consecutive rejected proposals before the step size decays.
    pub stall_threshold: usize,
    pub epsilon_min: f64,
    /// Maximum number of objective evaluations, including the seed matrix.
    pub eval_budget: u64,
    pub evaluator: EvaluatorKind,
    pub objective: Objective,
    pub seed: u64,
}

impl SearchConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        Self {
            n,
            n_orthogonal_seeds: 100,
            epsilon_init: 0.05,
            epsilon_decay: 0.5,
            stall_threshold: 200,
            epsilon_min: 1e-5,
            eval_budget: 100_000,
            evaluator: EvaluatorKind::Exact,
            objective: Objective::Maximize,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::DomainError("search dimension must be >= 1".into()));
        }
        if !(self.epsilon_min > 0.0 && self.epsilon_min < self.epsilon_init) {
            return Err(Error::DomainError(
                "need 0 < epsilon_min < epsilon_init".into(),
            ));
        }
        if !(self.epsilon_decay > 0.0 && self.epsilon_decay < 1.0) {
            return Err(Error::DomainError(
                "epsilon_decay must lie in (0, 1)".into(),
            ));
        }
        if self.eval_budget < 1 {
            return Err(Error::DomainError("eval_budget must be >= 1".into()));
        }
        if self.n_orthogonal_seeds < 1 {
            return Err(Error::DomainError("n_orthogonal_seeds must be >= 1".into()));
        }
        if let EvaluatorKind::MonteCarloFixedSample { n_samples } = self.evaluator {
            if n_samples < 2 {
                return Err(Error::DomainError("n_samples must be >= 2".into()));
            }
        }
        Ok(())
    }
}

/// One accepted point of a climb.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracePoint {
    pub eval_index: u64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    EpsilonFloor,
    Budget,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub best_matrix: TestMatrix,
    pub best_beta: BetaEstimate,
    /// The seed evaluation followed by every accepted improvement.
    pub trace: Vec<TracePoint>,
    pub terminated_by: Termination,
    pub evals_used: u64,
}

enum Evaluator {
    Exact,
    Fixed { samples: Vec<Vec<f64>> },
}

impl Evaluator {
    fn from_config(config: &SearchConfig) -> Self {
        match config.evaluator {
            EvaluatorKind::Exact => Evaluator::Exact,
            EvaluatorKind::MonteCarloFixedSample { n_samples } => {
                let mut rng = rng::seeded(config.seed);
                let mut x = vec![0i8; config.n];
                let samples = (0..n_samples)
                    .map(|_| {
                        rng::fill_sign_vector(&mut rng, &mut x);
                        x.iter().map(|&s| f64::from(s)).collect()
                    })
                    .collect();
                Evaluator::Fixed { samples }
            }
        }
    }

    fn eval(&self, m: &TestMatrix) -> Result<f64> {
        match self {
            Evaluator::Exact => Ok(beta_exact(m, Strategy::GrayCode, true)?.value),
            Evaluator::Fixed { samples } => {
                let sum: f64 = samples.iter().map(|x| linf_image_signs(m, x)).sum();
                Ok(sum / samples.len() as f64)
            }
        }
    }
}

fn improves(objective: Objective, candidate: f64, incumbent: f64) -> bool {
    match objective {
        Objective::Maximize => candidate > incumbent,
        Objective::Minimize => candidate < incumbent,
    }
}

/// Sample `n_orthogonal_seeds` random orthogonal matrices with seeds
/// `seed, seed+1, ...`, score each with the configured evaluator, and return
/// the best; ties keep the lowest seed index.
pub fn seed_from_orthogonal(config: &SearchConfig) -> Result<TestMatrix> {
    config.validate()?;
    let evaluator = Evaluator::from_config(config);
    let mut best: Option<(f64, TestMatrix)> = None;
    for i in 0..config.n_orthogonal_seeds {
        let m =
            crate::constructions::random_orthogonal(config.n, config.seed.wrapping_add(i as u64))?;
        let b = evaluator.eval(&m)?;
        let better = match &best {
            None => true,
            Some((incumbent, _)) => improves(config.objective, b, *incumbent),
        };
        if better {
            best = Some((b, m));
        }
    }
    Ok(best.expect("n_orthogonal_seeds >= 1").1)
}

/// One proposal: row-normalize `m + epsilon * G` with `G` iid standard
/// Gaussian from the seeded stream, drawn row-major one entry at a time.
pub fn perturb(m: &TestMatrix, epsilon: f64, step_seed: u64) -> Result<TestMatrix> {
    assert!(epsilon > 0.0, "perturb requires epsilon > 0");
    let mut rng = rng::seeded(step_seed);
    let n = m.n();
    let entries: Vec<f64> = m
        .entries()
        .iter()
        .map(|&v| {
            let g: f64 = StandardNormal.sample(&mut rng);
            v + epsilon * g
        })
        .collect();
    normalize_rows(&TestMatrix::from_flat(n, entries)?)
}

/// Climb from `m0` under strict-improvement acceptance.
///
/// Proposal `k` perturbs with the derived seed
/// [`rng::derive_stream_seed`]`(config.seed, k)`; a rejected proposal
/// increments a stall counter, and `stall_threshold` consecutive rejections
/// multiply epsilon by `epsilon_decay`. The climb stops when epsilon falls
/// below `epsilon_min` or the evaluation budget is exhausted. In Monte Carlo
/// mode the final value is re-estimated on a fresh sample (seed index
/// `u64::MAX`).
pub fn hill_climb(m0: &TestMatrix, config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    if m0.n() != config.n {
        return Err(Error::DimensionMismatch {
            expected: config.n,
            got: m0.n(),
        });
    }
    if !m0.is_row_normalized(1e-9) {
        return Err(Error::DomainError(
            "hill_climb requires a row-normalized start".into(),
        ));
    }
    let evaluator = Evaluator::from_config(config);

    let mut current = m0.clone();
    let mut current_beta = evaluator.eval(&current)?;
    let mut evals: u64 = 1;
    let mut trace = vec![TracePoint {
        eval_index: evals,
        beta: current_beta,
    }];
    let mut epsilon = config.epsilon_init;
    let mut stall = 0usize;
    let mut proposal: u64 = 0;

    let terminated_by = loop {
        if epsilon < config.epsilon_min {
            break Termination::EpsilonFloor;
        }
        if evals >= config.eval_budget {
            break Termination::Budget;
        }
        proposal += 1;
        let step_seed = rng::derive_stream_seed(config.seed, proposal);
        let candidate = match perturb(&current, epsilon, step_seed) {
            Ok(c) => c,
            // A degenerate perturbation wiped out a row; try the next seed.
            Err(Error::ZeroRow { .. }) => continue,
            Err(e) => return Err(e),
        };
        let beta = evaluator.eval(&candidate)?;
        evals += 1;
        if improves(config.objective, beta, current_beta) {
            current = candidate;
            current_beta = beta;
            stall = 0;
            trace.push(TracePoint {
                eval_index: evals,
                beta,
            });
        } else {
            stall += 1;
            if stall >= config.stall_threshold {
                epsilon *= config.epsilon_decay;
                stall = 0;
            }
        }
    };

    let best_beta = match config.evaluator {
        EvaluatorKind::Exact => beta_exact(&current, Strategy::GrayCode, true)?,
        EvaluatorKind::MonteCarloFixedSample { n_samples } => beta_monte_carlo(
            &current,
            n_samples,
            rng::derive_stream_seed(config.seed, u64::MAX),
        )?,
    };

    Ok(SearchResult {
        best_matrix: current,
        best_beta,
        trace,
        terminated_by,
        evals_used: evals,
    })
}

/// One completed restart.
#[derive(Debug)]
pub struct RestartRun {
    pub restart_index: usize,
    pub seed: u64,
    pub result: SearchResult,
}

/// All restarts of a search, split into successes and failures.
#[derive(Debug)]
pub struct RestartOutcome {
    pub runs: Vec<RestartRun>,
    pub failures: Vec<(usize, Error)>,
}

impl RestartOutcome {
    /// The best run under `objective`; ties break toward the lowest index.
    pub fn best(&self, objective: Objective) -> Option<&RestartRun> {
        self.runs.iter().reduce(|best, run| {
            if improves(
                objective,
                run.result.best_beta.value,
                best.result.best_beta.value,
            ) {
                run
            } else {
                best
            }
        })
    }
}

/// Run `restarts` independent seed-and-climb pipelines concurrently; restart
/// `i` uses config seed `base.seed + i`. Results come back in restart order
/// regardless of scheduling.
pub fn run_restarts(base: &SearchConfig, restarts: usize) -> RestartOutcome {
    let outcomes: Vec<(usize, Result<RestartRun>)> = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let mut config = base.clone();
            config.seed = base.seed.wrapping_add(i as u64);
            let run = seed_from_orthogonal(&config).and_then(|m0| {
                hill_climb(&m0, &config).map(|result| RestartRun {
                    restart_index: i,
                    seed: config.seed,
                    result,
                })
            });
            (i, run)
        })
        .collect();

    let mut runs = Vec::new();
    let mut failures = Vec::new();
    for (i, outcome) in outcomes {
        match outcome {
            Ok(run) => runs.push(run),
            Err(e) => failures.push((i, e)),
        }
    }
    RestartOutcome { runs, failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{catalog, identity_matrix};

    #[test]
    fn seed_from_orthogonal_n1_is_sign() {
        let config = SearchConfig::new(1, 5);
        let m = seed_from_orthogonal(&config).unwrap();
        assert!(m.entries() == [1.0] || m.entries() == [-1.0]);
        let b = beta_exact(&m, Strategy::GrayCode, true).unwrap();
        assert_eq!(b.value, 1.0);
    }

    #[test]
    fn seed_from_orthogonal_is_deterministic() {
        let mut config = SearchConfig::new(3, 11);
        config.n_orthogonal_seeds = 25;
        let a = seed_from_orthogonal(&config).unwrap();
        let b = seed_from_orthogonal(&config).unwrap();
        assert_eq!(a.entries(), b.entries());
    }

    #[test]
    fn perturb_is_continuous_at_small_epsilon() {
        let m = catalog("n4_A").unwrap().matrix;
        let out = perturb(&m, 1e-12, 7).unwrap();
        let max_diff = m
            .entries()
            .iter()
            .zip(out.entries())
            .map(|(&a, &b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        assert!(max_diff < 1e-10, "max diff {max_diff}");
    }

    #[test]
    fn perturb_outputs_unit_rows() {
        let m = identity_matrix(5);
        for seed in 0..20 {
            let out = perturb(&m, 0.3, seed).unwrap();
            assert!(out.is_row_normalized(1e-12));
        }
    }

    #[test]
    fn perturb_default_step_calibration() {
        // Average entrywise |delta| of one epsilon = 0.05 step from the
        // identity, over 1000 step seeds.
        let m = identity_matrix(4);
        let mut total = 0.0;
        let mut count = 0usize;
        for seed in 0..1000u64 {
            let out = perturb(&m, 0.05, seed).unwrap();
            for (a, b) in m.entries().iter().zip(out.entries()) {
                total += (a - b).abs();
                count += 1;
            }
        }
        let mean = total / count as f64;
        assert!(
            mean > 0.01 && mean < 0.06,
            "mean entrywise delta {mean} outside (0.01, 0.06)"
        );
    }

    #[test]
    fn seed_from_orthogonal_wide_sweep_finds_near_optimal_rotation() {
        let mut config = SearchConfig::new(2, 0);
        config.n_orthogonal_seeds = 1000;
        let m0 = seed_from_orthogonal(&config).unwrap();
        let beta = beta_exact(&m0, Strategy::GrayCode, true).unwrap().value;
        assert!(
            beta >= 1.40,
            "best of 1000 orthogonal seeds only reached {beta}"
        );
    }

    #[test]
    fn climb_from_identity_reaches_the_n2_optimum() {
        for seed in 0..20u64 {
            let config = SearchConfig::new(2, seed);
            let result = hill_climb(&identity_matrix(2), &config).unwrap();
            assert!(
                result.best_beta.value >= 1.41,
                "seed {seed} stalled at {}",
                result.best_beta.value
            );
        }
    }

    #[test]
    fn climb_from_good_seed_never_degrades() {
        let m0 = catalog("n4_A").unwrap().matrix;
        let mut config = SearchConfig::new(4, 3);
        config.eval_budget = 2000;
        let result = hill_climb(&m0, &config).unwrap();
        assert!(result.best_beta.value >= 3.0f64.sqrt() - 1e-12);
        for pair in result.trace.windows(2) {
            assert!(pair[1].beta > pair[0].beta);
            assert!(pair[1].eval_index > pair[0].eval_index);
        }
    }

    #[test]
    fn climb_is_deterministic() {
        let m0 = catalog("n3_orthogonal").unwrap().matrix;
        let mut config = SearchConfig::new(3, 21);
        config.eval_budget = 1500;
        let a = hill_climb(&m0, &config).unwrap();
        let b = hill_climb(&m0, &config).unwrap();
        assert_eq!(a.best_matrix.entries(), b.best_matrix.entries());
        assert_eq!(a.best_beta.value.to_bits(), b.best_beta.value.to_bits());
        assert_eq!(a.trace, b.trace);
        assert_eq!(a.terminated_by, b.terminated_by);
    }

    #[test]
    fn climb_respects_budget() {
        let m0 = identity_matrix(3);
        let mut config = SearchConfig::new(3, 8);
        config.eval_budget = 50;
        let result = hill_climb(&m0, &config).unwrap();
        assert_eq!(result.terminated_by, Termination::Budget);
        assert!(result.evals_used <= 50);
    }

    #[test]
    fn climb_exact_mode_reports_exact_best() {
        let m0 = identity_matrix(2);
        let mut config = SearchConfig::new(2, 1);
        config.eval_budget = 3000;
        let result = hill_climb(&m0, &config).unwrap();
        let recheck = beta_exact(&result.best_matrix, Strategy::GrayCode, true).unwrap();
        assert_eq!(result.best_beta.value.to_bits(), recheck.value.to_bits());
    }

    #[test]
    fn minimize_mode_descends() {
        let m0 = catalog("n2").unwrap().matrix;
        let mut config = SearchConfig::new(2, 13);
        config.objective = Objective::Minimize;
        config.eval_budget = 3000;
        let result = hill_climb(&m0, &config).unwrap();
        assert!(result.best_beta.value <= std::f64::consts::SQRT_2 + 1e-12);
        for pair in result.trace.windows(2) {
            assert!(pair[1].beta < pair[0].beta);
        }
    }

    #[test]
    fn mc_mode_uses_common_random_numbers() {
        let m0 = catalog("n4_A").unwrap().matrix;
        let mut config = SearchConfig::new(4, 2);
        config.evaluator = EvaluatorKind::MonteCarloFixedSample { n_samples: 256 };
        config.eval_budget = 500;
        let a = hill_climb(&m0, &config).unwrap();
        let b = hill_climb(&m0, &config).unwrap();
        assert_eq!(a.best_matrix.entries(), b.best_matrix.entries());
        assert_eq!(a.best_beta.value.to_bits(), b.best_beta.value.to_bits());
        assert!(a.best_beta.std_error > 0.0 || a.best_beta.value == 3.0f64.sqrt());
    }

    #[test]
    fn restart_orchestration_reports_best() {
        let mut config = SearchConfig::new(2, 30);
        config.n_orthogonal_seeds = 10;
        config.eval_budget = 1500;
        let outcome = run_restarts(&config, 4);
        assert!(outcome.failures.is_empty());
        assert_eq!(outcome.runs.len(), 4);
        let best = outcome.best(Objective::Maximize).unwrap();
        for run in &outcome.runs {
            assert!(best.result.best_beta.value >= run.result.best_beta.value);
        }
    }
}
