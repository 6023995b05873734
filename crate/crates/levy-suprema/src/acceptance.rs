//! The self-validation suite run by `levy-suprema validate`. Every check uses fixed seeds.

use std::f64::consts::{E, PI};
use std::fmt;
use std::time::{Duration, Instant};

use levy_suprema_core::fluctuation::{
    duality_residual, general_sup_bounds, ladder_bound_constants, psi_dagger, KappaFunction,
};
use levy_suprema_core::special::{erf, gamma, CATALAN};
use levy_suprema_core::suprema::{
    laplace_of_sup, renewal_bracket, renewal_function, sup_cdf, sup_cdf_envelope,
};
use levy_suprema_core::{
    gaver_stehfest_invert, logspace, BernsteinRepresentation, BoundaryData, MixtureTerm,
    QuadratureSettings, SymmetricLevyExponent,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::commands::mc_agrees;
use crate::error::AppResult;
use crate::montecarlo::{estimate_sup_cdf_grid, SimulationConfig};

/// Criteria that cannot pass in double precision; they are still run and reported.
pub const KNOWN_UNATTAINABLE: &[u8] = &[10];

/// Wall-clock budgets refer to an 8-worker machine.
pub const REFERENCE_WORKERS: usize = 8;

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {}: {} ({:.1} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

fn run(id: u8, name: &'static str, check: impl FnOnce() -> AppResult<(bool, String)>) -> CriterionOutcome {
    let start = Instant::now();
    let (passed, detail) = match check() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionOutcome {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

/// Tolerances used for the large sup_cdf sweeps.
pub fn sweep_settings() -> QuadratureSettings {
    QuadratureSettings {
        rel_tol: 1e-7,
        abs_tol: 1e-10,
        ..QuadratureSettings::default()
    }
}

fn workers() -> usize {
    rayon::current_num_threads()
}

/// Wall time rescaled to the reference machine, assuming parallel work scales linearly.
fn reference_seconds(wall: Duration) -> f64 {
    wall.as_secs_f64() * workers() as f64 / REFERENCE_WORKERS as f64
}

pub fn brownian_exactness() -> CriterionOutcome {
    run(1, "Brownian supremum law", || {
        let start = Instant::now();
        let b = SymmetricLevyExponent::brownian();
        let s = QuadratureSettings::default();
        let pts: Vec<(f64, f64)> = [0.1f64, 1.0, 10.0]
            .iter()
            .flat_map(|&t| [0.5, 1.0, 2.0, 4.0].map(|c| (t, c * (2.0 * t).sqrt())))
            .collect();
        let errs: Vec<f64> = pts
            .par_iter()
            .map(|&(t, x)| Ok((sup_cdf(&b, t, x, &s)?.value - erf(x / (2.0 * t.sqrt()))).abs()))
            .collect::<AppResult<_>>()?;
        let worst = errs.iter().cloned().fold(0.0, f64::max);
        let secs = start.elapsed().as_secs_f64();
        Ok((
            worst <= 1e-4 && secs <= 60.0,
            format!("max |sup_cdf - erf| = {worst:.2e} over 12 points in {secs:.1} s"),
        ))
    })
}

fn ratio_grid() -> Vec<f64> {
    logspace(1e-3, 1e3, 30)
}

pub fn stable_psi_dagger() -> CriterionOutcome {
    run(2, "stable psi-dagger equals xi^(alpha/2)", || {
        let s = QuadratureSettings::default();
        let mut worst = 0.0f64;
        for alpha in [0.5, 1.0, 1.5, 2.0] {
            let e = SymmetricLevyExponent::stable(alpha)?;
            for xi in ratio_grid() {
                let exact = xi.powf(alpha / 2.0);
                worst = worst.max((psi_dagger(&e, xi, &s)? - exact).abs() / exact);
            }
        }
        Ok((worst <= 1e-7, format!("max relative error {worst:.2e}")))
    })
}

/// Every built-in family that satisfies the increasing-exponent hypothesis.
pub fn admissible_families() -> AppResult<Vec<SymmetricLevyExponent>> {
    Ok(vec![
        SymmetricLevyExponent::stable(0.5)?,
        SymmetricLevyExponent::stable(1.0)?,
        SymmetricLevyExponent::stable(1.5)?,
        SymmetricLevyExponent::brownian(),
        SymmetricLevyExponent::relativistic(1.0, 1.0)?,
        SymmetricLevyExponent::relativistic(0.5, 2.0)?,
        SymmetricLevyExponent::mixture(vec![
            MixtureTerm { weight: 1.0, alpha: 0.5 },
            MixtureTerm { weight: 1.0, alpha: 1.5 },
        ])?,
        SymmetricLevyExponent::subordinate_bm(BernsteinRepresentation::new(
            0.0,
            0.5,
            vec![(1.0, 2.0), (3.0, 0.5)],
        )?),
        SymmetricLevyExponent::subordinate_bm(BernsteinRepresentation::new(
            0.0,
            0.0,
            vec![(0.5, 1.0), (2.0, 1.0), (8.0, 1.0)],
        )?),
    ])
}

pub fn psi_dagger_sandwich() -> CriterionOutcome {
    run(3, "psi-dagger / sqrt(Psi) sandwich", || {
        let s = QuadratureSettings::default();
        let hi = (2.0 * CATALAN / PI).exp();
        let lo = 1.0 / hi;
        let (mut rmin, mut rmax) = (f64::INFINITY, 0.0f64);
        for e in admissible_families()? {
            for xi in ratio_grid() {
                let r = psi_dagger(&e, xi, &s)? / e.value(xi).sqrt();
                rmin = rmin.min(r);
                rmax = rmax.max(r);
            }
        }
        Ok((
            lo <= rmin && rmax <= hi && hi <= 2.0,
            format!("ratios in [{rmin:.6}, {rmax:.6}] against [{lo:.6}, {hi:.6}]"),
        ))
    })
}

pub fn stable_renewal() -> CriterionOutcome {
    run(4, "stable renewal function", || {
        let s = QuadratureSettings::default();
        let mut worst = 0.0f64;
        let mut inside = true;
        for alpha in [0.5, 1.0, 1.5] {
            let e = SymmetricLevyExponent::stable(alpha)?;
            let data = BoundaryData::new(&e)?;
            let g = gamma(1.0 + alpha / 2.0);
            for x in logspace(1e-2, 1e2, 15) {
                let v = renewal_function(&data, x, &s)?;
                worst = worst.max((v * g / x.powf(alpha / 2.0) - 1.0).abs());
                let (lo, hi) = renewal_bracket(&e, x)?;
                inside &= lo <= v && v <= hi;
            }
        }
        Ok((
            worst <= 1e-6 && inside,
            format!("max |V(x)Gamma(1+a/2)/x^(a/2) - 1| = {worst:.2e}, bracket held: {inside}"),
        ))
    })
}

pub fn envelope_containment() -> CriterionOutcome {
    run(5, "explicit envelope contains sup_cdf", || {
        let s = sweep_settings();
        let axis = &logspace(0.1, 10.0, 7);
        let families = [
            SymmetricLevyExponent::stable(0.5)?,
            SymmetricLevyExponent::stable(1.0)?,
            SymmetricLevyExponent::stable(1.5)?,
            SymmetricLevyExponent::brownian(),
            SymmetricLevyExponent::relativistic(1.0, 1.0)?,
        ];
        let jobs: Vec<(usize, f64, f64)> = (0..families.len())
            .flat_map(|f| axis.iter().flat_map(move |&t| axis.iter().map(move |&x| (f, t, x))))
            .collect();
        let outside: Vec<String> = jobs
            .par_iter()
            .map(|&(f, t, x)| {
                let e = &families[f];
                let p = sup_cdf(e, t, x, &s)?.value;
                let env = sup_cdf_envelope(e, t, x)?;
                Ok((env.lower <= p && p <= env.upper)
                    .then(String::new)
                    .unwrap_or_else(|| format!("{} t={t} x={x} p={p}", e.name())))
            })
            .collect::<AppResult<Vec<_>>>()?
            .into_iter()
            .filter(|m| !m.is_empty())
            .collect();
        Ok((
            outside.is_empty(),
            format!("{} of {} points outside {:?}", outside.len(), jobs.len(), outside),
        ))
    })
}

pub fn monte_carlo_agreement() -> CriterionOutcome {
    monte_carlo_agreement_with(1_000_000, 10_000)
}

/// Criterion 6 at a chosen budget; the reported verdict always uses the full budget.
pub fn monte_carlo_agreement_with(n_paths: usize, n_steps: usize) -> CriterionOutcome {
    run(6, "Monte Carlo cross-validation", || {
        let start = Instant::now();
        let ts = [0.5, 1.0, 2.0];
        let xs = [0.5, 1.0, 2.0];
        let s = QuadratureSettings::default();
        let mut worst_slack = f64::INFINITY;
        let mut failures = Vec::new();
        for (k, alpha) in [1.0, 1.5].into_iter().enumerate() {
            let e = SymmetricLevyExponent::stable(alpha)?;
            let config = SimulationConfig::new(1.0, n_steps, n_paths, 0x5eed + k as u64);
            let est = estimate_sup_cdf_grid(&e, &ts, &xs, &config)?;
            for (i, &t) in ts.iter().enumerate() {
                for (j, &x) in xs.iter().enumerate() {
                    let p = sup_cdf(&e, t, x, &s)?.value;
                    let m = &est[i][j];
                    let allowed = 3.0 * m.half_width_95 + m.refinement_delta.abs() + 2e-3;
                    worst_slack = worst_slack.min(allowed - (m.p_hat - p).abs());
                    if !mc_agrees(p, m.p_hat, m.half_width_95, m.refinement_delta) {
                        failures.push(format!("alpha={alpha} t={t} x={x} p={p:.5} p_hat={:.5}", m.p_hat));
                    }
                }
            }
        }
        let wall = start.elapsed();
        let reference = reference_seconds(wall);
        Ok((
            failures.is_empty() && reference <= 600.0,
            format!(
                "{} of 18 points disagree {failures:?}, smallest slack {worst_slack:.2e}; \
                 {:.0} s on {} worker(s), {reference:.0} s at {REFERENCE_WORKERS} workers",
                failures.len(),
                wall.as_secs_f64(),
                workers()
            ),
        ))
    })
}

pub fn ladder_constants() -> CriterionOutcome {
    run(7, "ladder-time bound constants", || {
        let s = QuadratureSettings::default();
        let k = KappaFunction::symmetric_sqrt();
        let c1 = (E - 1.0) / (8.0 * E * E);
        let mut products = Vec::new();
        let mut c1_exact = true;
        for t in [0.1, 1.0, 10.0] {
            let c = ladder_bound_constants(&k, t, &s)?;
            c1_exact &= c.c1 == c1;
            products.push(c.z_star * t);
        }
        let closed = c1 * c1;
        let spread = products
            .iter()
            .map(|p| (p - closed).abs() / closed)
            .fold(0.0, f64::max);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut ordered = 0;
        for _ in 0..200 {
            let t = 10f64.powf(rng.random_range(-3.0..3.0));
            let v = 10f64.powf(rng.random_range(-6.0..6.0));
            let (lo, hi) = general_sup_bounds(&k, v, t, &s)?;
            ordered += (lo <= hi) as usize;
        }
        Ok((
            c1_exact && spread <= 1e-10 && ordered == 200,
            format!(
                "C1 exact: {c1_exact}, max |z*t - C1^2|/C1^2 = {spread:.2e}, \
                 lower <= upper on {ordered}/200 fuzzed inputs"
            ),
        ))
    })
}

pub fn stable_duality() -> CriterionOutcome {
    run(8, "stable duality residual", || {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let alpha = rng.random_range(0.1..2.0);
            let r = 10f64.powf(rng.random_range(-1.0..1.0));
            let theta = rng.random_range(0.05..PI - 0.05) * if rng.random::<bool>() { 1.0 } else { -1.0 };
            let xi = Complex64::from_polar(r, theta);
            worst = worst.max(duality_residual(&SymmetricLevyExponent::stable(alpha)?, xi)?);
        }
        Ok((worst <= 1e-12, format!("max residual {worst:.2e} over 100 points")))
    })
}

/// ξ∫₀^∞ e^{−ξx}F(x)dx by the trapezoidal rule in log x, sharing the F samples across ξ.
fn retransform(f: &[(f64, f64)], log_step: f64, xi: f64) -> f64 {
    f.iter()
        .map(|&(x, p)| xi * x * (-xi * x).exp() * p)
        .sum::<f64>()
        * log_step
}

pub fn transform_loop() -> CriterionOutcome {
    run(9, "sup_cdf re-transforms to laplace_of_sup", || {
        let s = sweep_settings();
        let (lo, hi, step) = (1e-6f64, 80.0f64, 0.5);
        let n = ((hi / lo).ln() / step).ceil() as usize + 1;
        let xs: Vec<f64> = (0..n).map(|k| lo * (k as f64 * step).exp()).collect();
        let mut worst = 0.0f64;
        for e in [SymmetricLevyExponent::brownian(), SymmetricLevyExponent::stable(1.5)?] {
            let curve: Vec<(f64, f64)> = xs
                .par_iter()
                .map(|&x| Ok((x, sup_cdf(&e, 1.0, x, &s)?.value)))
                .collect::<AppResult<_>>()?;
            for xi in [0.5, 1.0, 2.0] {
                let direct = laplace_of_sup(&e, xi, 1.0, &QuadratureSettings::default())?;
                worst = worst.max((retransform(&curve, step, xi) - direct).abs() / direct);
            }
        }
        Ok((worst <= 1e-3, format!("max relative deviation {worst:.2e}")))
    })
}

pub fn gaver_stehfest_pairs() -> CriterionOutcome {
    run(10, "Gaver-Stehfest known pairs", || {
        let n = levy_suprema_core::quadrature::DEFAULT_GS_TERMS;
        let (mut exp_err, mut lin_err) = (0.0f64, 0.0f64);
        for x in logspace(0.1, 10.0, 41) {
            let a = gaver_stehfest_invert(|p| Ok(1.0 / (p + 1.0)), x, n)?;
            exp_err = exp_err.max((a - (-x).exp()).abs() / (-x).exp());
            let b = gaver_stehfest_invert(|p| Ok(1.0 / (p * p)), x, n)?;
            lin_err = lin_err.max((b - x).abs() / x);
        }
        Ok((
            exp_err <= 1e-6 && lin_err <= 1e-6,
            format!("{n} terms: max relative error {exp_err:.2e} for exp(-x), {lin_err:.2e} for x"),
        ))
    })
}

pub const CRITERIA: [fn() -> CriterionOutcome; 10] = [
    brownian_exactness,
    stable_psi_dagger,
    psi_dagger_sandwich,
    stable_renewal,
    envelope_containment,
    monte_carlo_agreement,
    ladder_constants,
    stable_duality,
    transform_loop,
    gaver_stehfest_pairs,
];

pub fn run_all() -> Vec<CriterionOutcome> {
    CRITERIA.iter().map(|c| c()).collect()
}
