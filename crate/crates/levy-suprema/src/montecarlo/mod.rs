//! Monte Carlo estimates of P(M_t < x) from random walks with exact increments.
//!
//! Paths are simulated in batches of 2¹⁶; batch `b` draws from the ChaCha8 stream `b` of
//! the root seed, so results do not depend on the number of worker threads.

mod sampler;

use levy_suprema_core::{Family, SymmetricLevyExponent};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use sampler::{sample_increment, FamilySampler, IncrementSampler};

use crate::error::{AppError, AppResult};

pub const BATCH_PATHS: usize = 1 << 16;
pub const DEFAULT_BUDGET: f64 = 1e10;
const Z_975: f64 = 1.959964;
const REFINEMENT_STREAM_OFFSET: u64 = 1 << 40;

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub horizon: f64,
    pub n_steps: usize,
    pub n_paths: usize,
    pub seed: u64,
    /// Pair every path with its mirror image −X.
    pub antithetic: bool,
    /// Upper bound on n_steps·n_paths.
    pub budget: f64,
}

impl SimulationConfig {
    pub fn new(horizon: f64, n_steps: usize, n_paths: usize, seed: u64) -> Self {
        Self {
            horizon,
            n_steps,
            n_paths,
            seed,
            antithetic: false,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn validate(&self) -> AppResult<()> {
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(AppError::Config(format!("horizon must be positive, got {}", self.horizon)));
        }
        if self.n_steps < 2 {
            return Err(AppError::Config(format!("n_steps must be at least 2, got {}", self.n_steps)));
        }
        if self.n_paths < 100 {
            return Err(AppError::Config(format!("n_paths must be at least 100, got {}", self.n_paths)));
        }
        let work = self.n_steps as f64 * self.n_paths as f64;
        if work > self.budget {
            return Err(AppError::Config(format!(
                "n_steps * n_paths = {work:e} exceeds the budget of {:e} increments",
                self.budget
            )));
        }
        Ok(())
    }
}

/// Sign of the discretisation bias: a grid supremum never exceeds the true one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BiasDirection {
    OverestimatesCdf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloEstimate {
    pub p_hat: f64,
    pub half_width_95: f64,
    pub n_paths: usize,
    pub bias_direction: BiasDirection,
    /// p̂(2n steps) − p̂(n steps) on a coupled 10% subsample; never positive.
    pub refinement_delta: f64,
    /// Accepted / proposed increments of a rejection sampler, when one is used.
    pub sampler_acceptance: Option<f64>,
}

/// Worker pool sized by `LEVY_SUPREMA_THREADS` (rayon's default otherwise).
pub fn thread_pool() -> AppResult<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("LEVY_SUPREMA_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| AppError::Config(format!("LEVY_SUPREMA_THREADS must be a positive integer, got `{v}`")))?;
        if n == 0 {
            return Err(AppError::Config("LEVY_SUPREMA_THREADS must be positive".into()));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| AppError::Config(e.to_string()))
}

#[derive(Debug, Clone, Default)]
struct Tally {
    /// below[k]: paths whose supremum lies in [xs[k-1], xs[k]) (index 0: below xs[0]).
    below: Vec<u64>,
    paths: u64,
    draws: u64,
    increments: u64,
}

impl Tally {
    fn new(levels: usize) -> Self {
        Self {
            below: vec![0; levels + 1],
            ..Default::default()
        }
    }

    #[inline]
    fn record(&mut self, xs: &[f64], sup: f64) {
        self.below[xs.partition_point(|&x| x <= sup)] += 1;
        self.paths += 1;
    }

    fn merge(&mut self, o: &Tally) {
        for (a, b) in self.below.iter_mut().zip(&o.below) {
            *a += b;
        }
        self.paths += o.paths;
        self.draws += o.draws;
        self.increments += o.increments;
    }

    /// #(sup < xs[k]) for every k.
    fn cumulative(&self, levels: usize) -> Vec<u64> {
        let mut acc = 0;
        (0..levels)
            .map(|k| {
                acc += self.below[k];
                acc
            })
            .collect()
    }
}

fn run_batch<S: IncrementSampler>(
    sampler: &S,
    xs: &[f64],
    n_steps: usize,
    n_paths: usize,
    antithetic: bool,
    rng: &mut ChaCha8Rng,
) -> Tally {
    let cap = *xs.last().expect("nonempty levels");
    let mut t = Tally::new(xs.len());
    let mut draws = 0u64;
    for _ in 0..n_paths {
        let (mut s, mut hi, mut lo) = (0.0f64, 0.0f64, 0.0f64);
        for _ in 0..n_steps {
            t.increments += 1;
            s += sampler.sample(rng, &mut draws);
            hi = hi.max(s);
            lo = lo.min(s);
            if hi >= cap && (!antithetic || -lo >= cap) {
                break;
            }
        }
        t.record(xs, hi);
        if antithetic {
            t.record(xs, -lo);
        }
    }
    t.draws = draws;
    t
}

/// Fine paths of 2n half-steps, each recorded together with its coarse skeleton
/// (every second partial sum).
fn run_refinement_batch<S: IncrementSampler>(
    fine: &S,
    xs: &[f64],
    n_steps: usize,
    n_paths: usize,
    rng: &mut ChaCha8Rng,
) -> (Tally, Tally) {
    let cap = *xs.last().expect("nonempty levels");
    let mut tf = Tally::new(xs.len());
    let mut tc = Tally::new(xs.len());
    let mut draws = 0u64;
    for _ in 0..n_paths {
        let (mut s, mut hf, mut hc) = (0.0f64, 0.0f64, 0.0f64);
        for _ in 0..n_steps {
            tf.increments += 2;
            s += fine.sample(rng, &mut draws);
            hf = hf.max(s);
            s += fine.sample(rng, &mut draws);
            hf = hf.max(s);
            hc = hc.max(s);
            if hc >= cap {
                break;
            }
        }
        tf.record(xs, hf);
        tc.record(xs, hc);
    }
    tf.draws = draws;
    (tf, tc)
}

fn batches(n_paths: usize) -> Vec<(u64, usize)> {
    (0..n_paths.div_ceil(BATCH_PATHS))
        .map(|b| (b as u64, BATCH_PATHS.min(n_paths - b * BATCH_PATHS)))
        .collect()
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn simulate<S: IncrementSampler>(
    coarse: &S,
    fine: &S,
    xs: &[f64],
    config: &SimulationConfig,
) -> (Tally, Tally, Tally) {
    let base_paths = if config.antithetic {
        config.n_paths.div_ceil(2)
    } else {
        config.n_paths
    };
    let main: Vec<Tally> = batches(base_paths)
        .into_par_iter()
        .map(|(b, n)| {
            let mut rng = rng_for(config.seed, b);
            run_batch(coarse, xs, config.n_steps, n, config.antithetic, &mut rng)
        })
        .collect();
    let sub_paths = (config.n_paths / 10).max(1);
    let refined: Vec<(Tally, Tally)> = batches(sub_paths)
        .into_par_iter()
        .map(|(b, n)| {
            let mut rng = rng_for(config.seed, REFINEMENT_STREAM_OFFSET + b);
            run_refinement_batch(fine, xs, config.n_steps, n, &mut rng)
        })
        .collect();
    let mut m = Tally::new(xs.len());
    main.iter().for_each(|t| m.merge(t));
    let mut f = Tally::new(xs.len());
    let mut c = Tally::new(xs.len());
    for (a, b) in &refined {
        f.merge(a);
        c.merge(b);
    }
    (m, f, c)
}

fn sorted_levels(xs: &[f64]) -> AppResult<()> {
    if xs.is_empty() {
        return Err(AppError::Config("at least one level is required".into()));
    }
    for w in xs.windows(2) {
        if !(w[0] <= w[1]) {
            return Err(AppError::Config("levels must be sorted ascending".into()));
        }
    }
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(AppError::Config("levels must be finite".into()));
    }
    Ok(())
}

fn dispatch(
    exponent: &SymmetricLevyExponent,
    xs: &[f64],
    config: &SimulationConfig,
) -> AppResult<(Tally, Tally, Tally)> {
    let dt = config.horizon / config.n_steps as f64;
    let coarse = FamilySampler::new(exponent, dt)?;
    let fine = FamilySampler::new(exponent, 0.5 * dt)?;
    Ok(match (&coarse, &fine) {
        (FamilySampler::Stable(a), FamilySampler::Stable(b)) => simulate(a, b, xs, config),
        (FamilySampler::Gaussian(a), FamilySampler::Gaussian(b)) => simulate(a, b, xs, config),
        (FamilySampler::Cosine(a), FamilySampler::Cosine(b)) => simulate(a, b, xs, config),
        (FamilySampler::Relativistic(a), FamilySampler::Relativistic(b)) => simulate(a, b, xs, config),
        (FamilySampler::Mixture(a), FamilySampler::Mixture(b)) => simulate(a, b, xs, config),
        (FamilySampler::Subordinate(a), FamilySampler::Subordinate(b)) => simulate(a, b, xs, config),
        _ => unreachable!("both samplers come from the same family"),
    })
}

fn uses_rejection(exponent: &SymmetricLevyExponent) -> bool {
    matches!(exponent.family(), Family::RelativisticStable { .. })
}

/// One estimate per level in `xs` (sorted ascending), all from the same paths.
pub fn estimate_sup_cdf_curve(
    exponent: &SymmetricLevyExponent,
    xs: &[f64],
    config: &SimulationConfig,
) -> AppResult<Vec<MonteCarloEstimate>> {
    config.validate()?;
    sorted_levels(xs)?;
    let (m, f, c) = dispatch(exponent, xs, config)?;
    let n = m.paths as f64;
    let cm = m.cumulative(xs.len());
    let cf = f.cumulative(xs.len());
    let cc = c.cumulative(xs.len());
    let ns = f.paths as f64;
    let acceptance = if uses_rejection(exponent) {
        Some((m.increments + f.increments) as f64 / (m.draws + f.draws) as f64)
    } else {
        None
    };
    Ok((0..xs.len())
        .map(|k| {
            let p = cm[k] as f64 / n;
            MonteCarloEstimate {
                p_hat: p,
                half_width_95: Z_975 * (p * (1.0 - p) / n).sqrt(),
                n_paths: m.paths as usize,
                bias_direction: BiasDirection::OverestimatesCdf,
                refinement_delta: (cf[k] as f64 - cc[k] as f64) / ns,
                sampler_acceptance: acceptance,
            }
        })
        .collect())
}

pub fn estimate_sup_cdf(
    exponent: &SymmetricLevyExponent,
    x: f64,
    config: &SimulationConfig,
) -> AppResult<MonteCarloEstimate> {
    Ok(estimate_sup_cdf_curve(exponent, &[x], config)?.remove(0))
}

/// Self-similarity index 1/α when M_t has the law of t^{1/α}·M_1.
fn self_similarity(exponent: &SymmetricLevyExponent) -> Option<f64> {
    match exponent.family() {
        Family::Stable { alpha } => Some(1.0 / alpha),
        Family::Brownian => Some(0.5),
        _ => None,
    }
}

/// Estimates on the grid ts × xs, indexed `[i_t][i_x]`. For stable families one
/// simulation on [0, 1] serves every horizon through M_t = t^{1/α}M_1 (exact for the
/// random walk as well, since the step count is the same).
pub fn estimate_sup_cdf_grid(
    exponent: &SymmetricLevyExponent,
    ts: &[f64],
    xs: &[f64],
    config: &SimulationConfig,
) -> AppResult<Vec<Vec<MonteCarloEstimate>>> {
    if let Some(h) = self_similarity(exponent) {
        let mut levels: Vec<f64> = Vec::with_capacity(ts.len() * xs.len());
        for &t in ts {
            if !(t > 0.0) {
                return Err(AppError::Config(format!("horizon must be positive, got {t}")));
            }
            levels.extend(xs.iter().map(|&x| x / t.powf(h)));
        }
        let mut sorted = levels.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.dedup();
        let unit = SimulationConfig {
            horizon: 1.0,
            ..config.clone()
        };
        let est = estimate_sup_cdf_curve(exponent, &sorted, &unit)?;
        let pick = |l: f64| est[sorted.partition_point(|&v| v < l)].clone();
        return Ok(ts
            .iter()
            .enumerate()
            .map(|(i, _)| (0..xs.len()).map(|j| pick(levels[i * xs.len() + j])).collect())
            .collect());
    }
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let sorted: Vec<f64> = order.iter().map(|&i| xs[i]).collect();
    ts.iter()
        .map(|&t| {
            let cfg = SimulationConfig {
                horizon: t,
                ..config.clone()
            };
            let est = estimate_sup_cdf_curve(exponent, &sorted, &cfg)?;
            let mut out = vec![est[0].clone(); xs.len()];
            for (k, &i) in order.iter().enumerate() {
                out[i] = est[k].clone();
            }
            Ok(out)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n_steps: usize, n_paths: usize, seed: u64) -> SimulationConfig {
        SimulationConfig::new(1.0, n_steps, n_paths, seed)
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let e = SymmetricLevyExponent::stable(1.3).unwrap();
        let c = cfg(50, 150_000, 9);
        let xs = [0.5, 1.0, 2.0];
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let three = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let a = one.install(|| estimate_sup_cdf_curve(&e, &xs, &c)).unwrap();
        let b = three.install(|| estimate_sup_cdf_curve(&e, &xs, &c)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn curve_is_monotone_and_bias_is_one_sided() {
        let e = SymmetricLevyExponent::brownian();
        let xs = logspace(0.05, 20.0, 12);
        let est = estimate_sup_cdf_curve(&e, &xs, &cfg(100, 20_000, 1)).unwrap();
        for w in est.windows(2) {
            assert!(w[0].p_hat <= w[1].p_hat);
        }
        assert_eq!(est.last().unwrap().p_hat, 1.0);
        for e in &est {
            assert!(e.refinement_delta <= 0.0);
            assert_eq!(e.bias_direction, BiasDirection::OverestimatesCdf);
        }
    }

    fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
        levy_suprema_core::logspace(a, b, n)
    }

    #[test]
    fn brownian_reflection_principle() {
        // P(sup_{s<=1} B_{2s} < x) = erf(x/2) with the exponent ξ².
        let e = SymmetricLevyExponent::brownian();
        let c = SimulationConfig {
            antithetic: true,
            ..cfg(2000, 40_000, 5)
        };
        let est = estimate_sup_cdf(&e, 1.0, &c).unwrap();
        let exact = 0.5204998778130465;
        assert!(est.p_hat >= exact - 3.0 * est.half_width_95, "{est:?}");
        assert!(est.p_hat - exact < 0.02 + 2.0 * est.half_width_95, "{est:?}");
    }

    #[test]
    fn self_similar_grid_matches_direct_simulation_in_law() {
        let e = SymmetricLevyExponent::stable(1.5).unwrap();
        let c = cfg(200, 20_000, 3);
        let g = estimate_sup_cdf_grid(&e, &[0.5, 2.0], &[1.0, 3.0], &c).unwrap();
        let direct = estimate_sup_cdf(&e, 3.0, &SimulationConfig { horizon: 2.0, ..c.clone() }).unwrap();
        let d = (g[1][1].p_hat - direct.p_hat).abs();
        assert!(d < 2.0 * (g[1][1].half_width_95 + direct.half_width_95), "{d}");
        assert!(g[0][0].p_hat > g[1][0].p_hat);
    }

    #[test]
    fn non_self_similar_grid_keeps_caller_order() {
        let e = SymmetricLevyExponent::relativistic(1.0, 1.0).unwrap();
        let g = estimate_sup_cdf_grid(&e, &[1.0], &[2.0, 0.5], &cfg(20, 2000, 4)).unwrap();
        assert!(g[0][0].p_hat > g[0][1].p_hat);
        let acc = g[0][0].sampler_acceptance.unwrap();
        assert!(acc > 0.0 && acc <= 1.0);
    }

    #[test]
    fn config_errors() {
        let e = SymmetricLevyExponent::brownian();
        assert!(estimate_sup_cdf(&e, 1.0, &cfg(1, 1000, 0)).is_err());
        assert!(estimate_sup_cdf(&e, 1.0, &cfg(10, 10, 0)).is_err());
        let big = SimulationConfig {
            budget: 1e3,
            ..cfg(100, 1000, 0)
        };
        assert!(matches!(estimate_sup_cdf(&e, 1.0, &big), Err(AppError::Config(_))));
        assert!(estimate_sup_cdf_curve(&e, &[2.0, 1.0], &cfg(10, 1000, 0)).is_err());
    }
}
