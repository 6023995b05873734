//! Exact samplers for X_{dt} of every built-in family.

use std::f64::consts::PI;

use levy_suprema_core::{Family, SymmetricLevyExponent};
use rand::distr::Open01;
use rand::Rng;
use rand_distr::{Distribution, Exp1, Poisson, StandardNormal};

use crate::error::{AppError, AppResult};

pub trait IncrementSampler: Sync {
    /// One increment; `draws` is bumped once per candidate when rejection is involved.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, draws: &mut u64) -> f64;
}

/// Symmetric α-stable with E e^{iξX} = e^{−dt|ξ|^α} (Chambers–Mallows–Stuck).
#[derive(Debug, Clone)]
pub struct StableSampler {
    alpha: f64,
    scale: f64,
    inv_alpha: f64,
    tail_power: f64,
}

impl StableSampler {
    pub fn new(alpha: f64, dt: f64) -> Self {
        Self {
            alpha,
            scale: dt.powf(1.0 / alpha),
            inv_alpha: 1.0 / alpha,
            tail_power: (1.0 - alpha) / alpha,
        }
    }
}

impl IncrementSampler for StableSampler {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, draws: &mut u64) -> f64 {
        *draws += 1;
        let u: f64 = PI * (rng.sample::<f64, _>(Open01) - 0.5);
        if self.alpha == 1.0 {
            return self.scale * u.tan();
        }
        let e: f64 = rng.sample(Exp1);
        let c = u.cos();
        let log_ab = self.tail_power * (((1.0 - self.alpha) * u).cos() / e).ln() - self.inv_alpha * c.ln();
        self.scale * (self.alpha * u).sin() * log_ab.exp()
    }
}

/// N(0, 2dt): E e^{iξX} = e^{−dtξ²}.
#[derive(Debug, Clone)]
pub struct GaussianSampler {
    sd: f64,
}

impl GaussianSampler {
    pub fn new(dt: f64) -> Self {
        Self { sd: (2.0 * dt).sqrt() }
    }
}

impl IncrementSampler for GaussianSampler {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, draws: &mut u64) -> f64 {
        *draws += 1;
        let z: f64 = rng.sample(StandardNormal);
        self.sd * z
    }
}

/// Poisson(dt) many ±1 jumps: Ψ(ξ) = 1 − cos ξ.
#[derive(Debug, Clone)]
pub struct CosineSampler {
    count: Poisson<f64>,
}

impl CosineSampler {
    pub fn new(dt: f64) -> AppResult<Self> {
        let count = Poisson::new(dt).map_err(|e| AppError::Config(e.to_string()))?;
        Ok(Self { count })
    }
}

impl IncrementSampler for CosineSampler {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, draws: &mut u64) -> f64 {
        *draws += 1;
        let mut n = self.count.sample(rng) as u64;
        let mut sum = 0i64;
        while n > 0 {
            let k = n.min(64);
            let bits = rng.next_u64() & (u64::MAX >> (64 - k));
            sum += 2 * bits.count_ones() as i64 - k as i64;
            n -= k;
        }
        sum as f64
    }
}

/// Positive β-stable with E e^{−uS} = e^{−dt·u^β} (Kanter's representation).
#[derive(Debug, Clone)]
struct PositiveStable {
    beta: f64,
    scale: f64,
}

impl PositiveStable {
    fn new(beta: f64, dt: f64) -> Self {
        Self {
            beta,
            scale: dt.powf(1.0 / beta),
        }
    }

    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let b = self.beta;
        let u: f64 = PI * rng.sample::<f64, _>(Open01);
        let e: f64 = rng.sample(Exp1);
        let a = ((b * u).sin() / u.sin()).powf(1.0 / (1.0 - b)) * ((1.0 - b) * u).sin() / (b * u).sin();
        self.scale * (a / e).powf((1.0 - b) / b)
    }
}

/// Brownian motion run at an independent tempered (α/2)-stable time.
#[derive(Debug, Clone)]
pub struct RelativisticSampler {
    stable: PositiveStable,
    mu: f64,
}

impl RelativisticSampler {
    pub fn new(alpha: f64, mass: f64, dt: f64) -> Self {
        Self {
            stable: PositiveStable::new(0.5 * alpha, dt),
            mu: mass.powf(2.0 / alpha),
        }
    }
}

impl IncrementSampler for RelativisticSampler {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, draws: &mut u64) -> f64 {
        let time = loop {
            *draws += 1;
            let s = self.stable.sample(rng);
            let u: f64 = rng.random();
            if u < (-self.mu * s).exp() {
                break s;
            }
        };
        let z: f64 = rng.sample(StandardNormal);
        (2.0 * time).sqrt() * z
    }
}

#[derive(Debug, Clone)]
enum Part {
    Stable(StableSampler),
    Gaussian(GaussianSampler),
}

/// Independent sum over the mixture terms; aᵢ|ξ|^{αᵢ} over dt is |ξ|^{αᵢ} over aᵢdt.
#[derive(Debug, Clone)]
pub struct MixtureSampler {
    parts: Vec<Part>,
}

impl IncrementSampler for MixtureSampler {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, draws: &mut u64) -> f64 {
        self.parts
            .iter()
            .map(|p| match p {
                Part::Stable(s) => s.sample(rng, draws),
                Part::Gaussian(g) => g.sample(rng, draws),
            })
            .sum()
    }
}

/// Brownian motion at an independent time T = c₂dt + Σⱼ compound Poisson(rate mⱼ/(πζⱼ), Exp(ζⱼ)).
#[derive(Debug, Clone)]
pub struct SubordinateSampler {
    drift: f64,
    atoms: Vec<(Poisson<f64>, f64)>,
}

impl IncrementSampler for SubordinateSampler {
    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, draws: &mut u64) -> f64 {
        *draws += 1;
        let mut time = self.drift;
        for (count, zeta) in &self.atoms {
            let n = count.sample(rng) as u64;
            for _ in 0..n {
                let e: f64 = rng.sample(Exp1);
                time += e / zeta;
            }
        }
        let z: f64 = rng.sample(StandardNormal);
        (2.0 * time).sqrt() * z
    }
}

/// Sampler for the family of `exponent` over a step of length `dt`.
#[derive(Debug, Clone)]
pub enum FamilySampler {
    Stable(StableSampler),
    Gaussian(GaussianSampler),
    Cosine(CosineSampler),
    Relativistic(RelativisticSampler),
    Mixture(MixtureSampler),
    Subordinate(SubordinateSampler),
}

impl FamilySampler {
    pub fn new(exponent: &SymmetricLevyExponent, dt: f64) -> AppResult<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(AppError::Config(format!("time step must be positive, got {dt}")));
        }
        Ok(match exponent.family() {
            Family::Stable { alpha } => FamilySampler::Stable(StableSampler::new(*alpha, dt)),
            Family::Brownian => FamilySampler::Gaussian(GaussianSampler::new(dt)),
            Family::CompoundPoissonCosine => FamilySampler::Cosine(CosineSampler::new(dt)?),
            Family::RelativisticStable { alpha, mass } => {
                FamilySampler::Relativistic(RelativisticSampler::new(*alpha, *mass, dt))
            }
            Family::StableMixture(terms) => FamilySampler::Mixture(MixtureSampler {
                parts: terms
                    .iter()
                    .map(|t| {
                        if t.alpha == 2.0 {
                            Part::Gaussian(GaussianSampler::new(t.weight * dt))
                        } else {
                            Part::Stable(StableSampler::new(t.alpha, t.weight * dt))
                        }
                    })
                    .collect(),
            }),
            Family::SubordinateBm(rep) => {
                if rep.c1() > 0.0 {
                    return Err(AppError::Config(
                        "a killed process (c1 > 0) cannot be simulated".into(),
                    ));
                }
                let atoms = rep
                    .atoms()
                    .iter()
                    .map(|&(zeta, m)| {
                        Poisson::new(dt * m / (PI * zeta))
                            .map(|p| (p, zeta))
                            .map_err(|e| AppError::Config(e.to_string()))
                    })
                    .collect::<AppResult<Vec<_>>>()?;
                FamilySampler::Subordinate(SubordinateSampler {
                    drift: rep.c2() * dt,
                    atoms,
                })
            }
        })
    }
}

/// One exact increment of length `dt`.
pub fn sample_increment<R: Rng + ?Sized>(
    exponent: &SymmetricLevyExponent,
    dt: f64,
    rng: &mut R,
) -> AppResult<f64> {
    let mut draws = 0;
    Ok(match FamilySampler::new(exponent, dt)? {
        FamilySampler::Stable(s) => s.sample(rng, &mut draws),
        FamilySampler::Gaussian(s) => s.sample(rng, &mut draws),
        FamilySampler::Cosine(s) => s.sample(rng, &mut draws),
        FamilySampler::Relativistic(s) => s.sample(rng, &mut draws),
        FamilySampler::Mixture(s) => s.sample(rng, &mut draws),
        FamilySampler::Subordinate(s) => s.sample(rng, &mut draws),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use levy_suprema_core::{BernsteinRepresentation, MixtureTerm};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn draws<S: IncrementSampler>(s: &S, n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut d = 0;
        (0..n).map(|_| s.sample(&mut rng, &mut d)).collect()
    }

    /// Empirical E cos(ξX) against e^{−dtΨ(ξ)}; the standard error of the mean is ≤ 1/√n.
    fn check_characteristic(e: &SymmetricLevyExponent, dt: f64, n: usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let xs: Vec<f64> = (0..n).map(|_| sample_increment(e, dt, &mut rng).unwrap()).collect();
        for &xi in &[0.3, 1.0, 2.5] {
            let emp = xs.iter().map(|x| (xi * x).cos()).sum::<f64>() / n as f64;
            let exact = (-dt * e.value(xi)).exp();
            assert!((emp - exact).abs() < 5.0 / (n as f64).sqrt(), "{} ξ={xi}: {emp} vs {exact}", e.name());
        }
    }

    #[test]
    fn gaussian_variance() {
        let v = draws(&GaussianSampler::new(1.0), 1_000_000, 1);
        let var = v.iter().map(|x| x * x).sum::<f64>() / v.len() as f64;
        assert!((var - 2.0).abs() < 0.01, "{var}");
    }

    #[test]
    fn cosine_counts_and_support() {
        let s = CosineSampler::new(1.0).unwrap();
        let v = draws(&s, 200_000, 2);
        assert!(v.iter().all(|x| x.fract() == 0.0));
        // E X² = E N = dt
        let m2 = v.iter().map(|x| x * x).sum::<f64>() / v.len() as f64;
        assert!((m2 - 1.0).abs() < 0.02, "{m2}");
    }

    #[test]
    fn cauchy_median_and_tail() {
        let v = draws(&StableSampler::new(1.0, 1.0), 1_000_000, 3);
        let below = v.iter().filter(|x| **x < 0.0).count() as f64 / v.len() as f64;
        assert!((below - 0.5).abs() < 0.002, "{below}");
        let tail = v.iter().filter(|x| x.abs() > 10.0).count() as f64 / v.len() as f64;
        let exact = 1.0 - 2.0 / PI * 10f64.atan();
        assert!((tail - exact).abs() < 0.001, "{tail} {exact}");
    }

    #[test]
    fn characteristic_functions_match_exponents() {
        let n = 200_000;
        check_characteristic(&SymmetricLevyExponent::stable(0.6).unwrap(), 0.7, n);
        check_characteristic(&SymmetricLevyExponent::stable(1.5).unwrap(), 1.0, n);
        check_characteristic(&SymmetricLevyExponent::brownian(), 0.3, n);
        check_characteristic(&SymmetricLevyExponent::relativistic(1.0, 1.0).unwrap(), 0.5, n);
        check_characteristic(&SymmetricLevyExponent::relativistic(1.4, 0.3).unwrap(), 2.0, n);
        check_characteristic(
            &SymmetricLevyExponent::mixture(vec![
                MixtureTerm { weight: 0.5, alpha: 0.8 },
                MixtureTerm { weight: 1.0, alpha: 2.0 },
            ])
            .unwrap(),
            1.0,
            n,
        );
        check_characteristic(&SymmetricLevyExponent::compound_poisson_cosine(), 1.3, n);
        check_characteristic(
            &SymmetricLevyExponent::subordinate_bm(
                BernsteinRepresentation::new(0.0, 0.2, vec![(1.0, 3.0), (5.0, 2.0)]).unwrap(),
            ),
            0.8,
            n,
        );
    }

    #[test]
    fn positive_stable_laplace_transform() {
        let s = PositiveStable::new(0.7, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 200_000;
        let m = (0..n).map(|_| (-s.sample(&mut rng)).exp()).sum::<f64>() / n as f64;
        assert!((m - (-1.0f64).exp()).abs() < 0.005, "{m}");
    }

    #[test]
    fn killed_subordinator_is_refused() {
        let e = SymmetricLevyExponent::subordinate_bm(BernsteinRepresentation::new(1.0, 1.0, vec![]).unwrap());
        assert!(FamilySampler::new(&e, 0.1).is_err());
        assert!(FamilySampler::new(&SymmetricLevyExponent::brownian(), 0.0).is_err());
    }
}
