//! Symmetric Lévy–Khintchin exponents Ψ(ξ) = ψ(ξ²) and their representation data.
//!
//! Every built-in family has a closed form for Ψ and Ψ′; the complete Bernstein
//! representation is only needed for user-supplied subordinate Brownian motions.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::quadrature::{
    find_root_monotone, integrate_segments, semi_infinite_segments, QuadratureSettings,
};

/// One term aᵢ|ξ|^{αᵢ} of a stable mixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureTerm {
    pub weight: f64,
    pub alpha: f64,
}

/// c₁ + c₂ξ + (1/π) Σⱼ mⱼ ξ / ((ξ + ζⱼ) ζⱼ): a complete Bernstein function whose
/// measure is a finite list of atoms (ζⱼ, mⱼ).
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinRepresentation {
    c1: f64,
    c2: f64,
    atoms: Vec<(f64, f64)>,
}

impl BernsteinRepresentation {
    pub fn new(c1: f64, c2: f64, atoms: Vec<(f64, f64)>) -> Result<Self> {
        if !(c1 >= 0.0) || !c1.is_finite() {
            return Err(Error::InvalidParameter { name: "c1", value: c1 });
        }
        if !(c2 >= 0.0) || !c2.is_finite() {
            return Err(Error::InvalidParameter { name: "c2", value: c2 });
        }
        for &(loc, mass) in &atoms {
            if !(loc > 0.0) || !loc.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "atom location",
                    value: loc,
                });
            }
            if !(mass > 0.0) || !mass.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "atom mass",
                    value: mass,
                });
            }
        }
        Ok(Self { c1, c2, atoms })
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    fn value(&self, u: f64) -> f64 {
        let mut s = 0.0;
        for &(z, m) in &self.atoms {
            s += m * u / ((u + z) * z);
        }
        self.c1 + self.c2 * u + s / PI
    }

    fn derivative(&self, u: f64) -> f64 {
        let mut s = 0.0;
        for &(z, m) in &self.atoms {
            s += m / ((u + z) * (u + z));
        }
        self.c2 + s / PI
    }

    fn supremum(&self) -> f64 {
        if self.c2 > 0.0 {
            return f64::INFINITY;
        }
        self.c1 + self.atoms.iter().map(|&(z, m)| m / z).sum::<f64>() / PI
    }
}

/// Evaluates a complete Bernstein representation at a point off the cut (−∞, 0].
pub fn cbf_eval(rep: &BernsteinRepresentation, xi: Complex64) -> Result<Complex64> {
    if xi.im == 0.0 && xi.re <= 0.0 {
        return Err(Error::Domain {
            what: "complete Bernstein functions are evaluated off (-inf, 0]",
            value: xi.re,
        });
    }
    let mut s = Complex64::new(0.0, 0.0);
    for &(z, m) in &rep.atoms {
        s += xi * m / ((xi + z) * z);
    }
    Ok(Complex64::new(rep.c1, 0.0) + xi * rep.c2 + s / PI)
}

/// c̃₁/ξ + c̃₂ + (1/π)∫ μ̃(dζ)/(ξ + ζ) with μ̃ given by atoms and an optional density.
#[derive(Clone)]
pub struct StieltjesRepresentation {
    pub c1_over_xi: f64,
    pub constant: f64,
    pub atoms: Vec<(f64, f64)>,
    pub density: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
}

impl fmt::Debug for StieltjesRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StieltjesRepresentation")
            .field("c1_over_xi", &self.c1_over_xi)
            .field("constant", &self.constant)
            .field("atoms", &self.atoms)
            .field("density", &self.density.as_ref().map(|_| "<fn>"))
            .finish()
    }
}

impl StieltjesRepresentation {
    pub fn eval(&self, xi: f64, settings: &QuadratureSettings) -> Result<f64> {
        if !(xi > 0.0) {
            return Err(Error::Domain {
                what: "Stieltjes functions are evaluated at positive reals here",
                value: xi,
            });
        }
        let mut s: f64 = self.atoms.iter().map(|&(z, m)| m / (xi + z)).sum();
        if let Some(d) = &self.density {
            let r = integrate_segments(
                |z| Ok(d(z) / (xi + z)),
                &semi_infinite_segments(xi, &[]),
                settings,
            )?;
            s += r.value;
        }
        Ok(self.c1_over_xi / xi + self.constant + s / PI)
    }

    /// Checks c̃₁ ≈ ξ·f(ξ) at the smallest grid point and c̃₂ ≈ f(ξ) at the largest,
    /// within 1% (relative to max(1, |coefficient|)).
    pub fn limits_consistent<F: Fn(f64) -> f64>(&self, f: F, grid: &[f64]) -> bool {
        let (Some(&lo), Some(&hi)) = (grid.first(), grid.last()) else {
            return false;
        };
        let near = lo * f(lo);
        let far = f(hi);
        (near - self.c1_over_xi).abs() <= 0.01 * self.c1_over_xi.abs().max(1.0)
            && (far - self.constant).abs() <= 0.01 * self.constant.abs().max(1.0)
    }
}

/// Exponent family tag.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Ψ(ξ) = |ξ|^α, 0 < α < 2.
    Stable { alpha: f64 },
    /// Ψ(ξ) = ξ² (Var X_t = 2t).
    Brownian,
    /// Ψ(ξ) = (ξ² + m^{2/α})^{α/2} − m.
    RelativisticStable { alpha: f64, mass: f64 },
    /// Ψ(ξ) = Σ aᵢ|ξ|^{αᵢ}.
    StableMixture(Vec<MixtureTerm>),
    /// Ψ(ξ) = 1 − cos ξ.
    CompoundPoissonCosine,
    /// Ψ(ξ) = ψ(ξ²) with ψ given by its complete Bernstein representation.
    SubordinateBm(BernsteinRepresentation),
}

/// A symmetric Lévy–Khintchin exponent. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricLevyExponent {
    family: Family,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
        });
    }
    Ok(())
}

impl SymmetricLevyExponent {
    /// Symmetric α-stable; α = 2 is the Brownian exponent.
    pub fn stable(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if alpha == 2.0 {
            return Ok(Self::brownian());
        }
        Ok(Self {
            family: Family::Stable { alpha },
        })
    }

    pub fn brownian() -> Self {
        Self {
            family: Family::Brownian,
        }
    }

    pub fn relativistic(alpha: f64, mass: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(mass >= 0.0) || !mass.is_finite() {
            return Err(Error::InvalidParameter {
                name: "m",
                value: mass,
            });
        }
        if alpha == 2.0 {
            return Ok(Self::brownian());
        }
        if mass == 0.0 {
            return Self::stable(alpha);
        }
        Ok(Self {
            family: Family::RelativisticStable { alpha, mass },
        })
    }

    pub fn mixture(terms: Vec<MixtureTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidParameter {
                name: "mixture terms",
                value: 0.0,
            });
        }
        for t in &terms {
            check_alpha(t.alpha)?;
            if !(t.weight > 0.0) || !t.weight.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "mixture weight",
                    value: t.weight,
                });
            }
        }
        Ok(Self {
            family: Family::StableMixture(terms),
        })
    }

    pub fn compound_poisson_cosine() -> Self {
        Self {
            family: Family::CompoundPoissonCosine,
        }
    }

    pub fn subordinate_bm(rep: BernsteinRepresentation) -> Self {
        Self {
            family: Family::SubordinateBm(rep),
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn name(&self) -> &'static str {
        match self.family {
            Family::Stable { .. } => "stable",
            Family::Brownian => "brownian",
            Family::RelativisticStable { .. } => "relativistic",
            Family::StableMixture(_) => "mixture",
            Family::CompoundPoissonCosine => "cpp-cosine",
            Family::SubordinateBm(_) => "sbm",
        }
    }

    /// Ψ(ξ) without argument checks; symmetric in ξ.
    #[inline]
    pub fn value(&self, xi: f64) -> f64 {
        let x = xi.abs();
        match &self.family {
            Family::Stable { alpha } => x.powf(*alpha),
            Family::Brownian => x * x,
            Family::RelativisticStable { alpha, mass } => {
                let mu = mass.powf(2.0 / alpha);
                mass * ((0.5 * alpha) * (x * x / mu).ln_1p()).exp_m1()
            }
            Family::StableMixture(terms) => terms.iter().map(|t| t.weight * x.powf(t.alpha)).sum(),
            Family::CompoundPoissonCosine => {
                let s = (0.5 * x).sin();
                2.0 * s * s
            }
            Family::SubordinateBm(rep) => rep.value(x * x),
        }
    }

    /// Ψ′(ξ) for ξ ≥ 0, without argument checks.
    #[inline]
    pub fn derivative_value(&self, xi: f64) -> f64 {
        let x = xi;
        match &self.family {
            Family::Stable { alpha } => alpha * x.powf(alpha - 1.0),
            Family::Brownian => 2.0 * x,
            Family::RelativisticStable { alpha, mass } => {
                let mu = mass.powf(2.0 / alpha);
                alpha * x * (x * x + mu).powf(0.5 * alpha - 1.0)
            }
            Family::StableMixture(terms) => terms
                .iter()
                .map(|t| t.weight * t.alpha * x.powf(t.alpha - 1.0))
                .sum(),
            Family::CompoundPoissonCosine => x.sin(),
            Family::SubordinateBm(rep) => 2.0 * x * rep.derivative(x * x),
        }
    }

    /// Ψ(ξ); ξ = 0 gives Ψ(0).
    pub fn eval(&self, xi: f64) -> Result<f64> {
        if !xi.is_finite() {
            return Err(Error::Domain {
                what: "exponent argument must be finite",
                value: xi,
            });
        }
        Ok(self.value(xi))
    }

    /// Ψ′(ξ) from the analytic derivative of the family formula.
    pub fn eval_derivative(&self, xi: f64) -> Result<f64> {
        if !(xi > 0.0) || !xi.is_finite() {
            return Err(Error::Domain {
                what: "derivative is evaluated at finite positive arguments",
                value: xi,
            });
        }
        Ok(self.derivative_value(xi))
    }

    /// ψ(u) = Ψ(√u).
    #[inline]
    pub fn psi(&self, u: f64) -> f64 {
        match &self.family {
            Family::Stable { alpha } => u.powf(0.5 * alpha),
            Family::Brownian => u,
            Family::SubordinateBm(rep) => rep.value(u),
            _ => self.value(u.sqrt()),
        }
    }

    /// ψ′(u).
    #[inline]
    pub fn psi_derivative(&self, u: f64) -> f64 {
        match &self.family {
            Family::Stable { alpha } => 0.5 * alpha * u.powf(0.5 * alpha - 1.0),
            Family::Brownian => 1.0,
            Family::SubordinateBm(rep) => rep.derivative(u),
            _ => {
                let x = u.sqrt();
                self.derivative_value(x) / (2.0 * x)
            }
        }
    }

    /// sup_{ξ>0} Ψ(ξ) for the increasing families.
    pub fn supremum(&self) -> f64 {
        match &self.family {
            Family::CompoundPoissonCosine => 2.0,
            Family::SubordinateBm(rep) => rep.supremum(),
            _ => f64::INFINITY,
        }
    }

    /// Strictly increasing on (0, ∞) (known per family).
    pub fn is_increasing(&self) -> bool {
        match &self.family {
            Family::CompoundPoissonCosine => false,
            Family::SubordinateBm(rep) => rep.c2 > 0.0 || !rep.atoms.is_empty(),
            _ => true,
        }
    }

    /// X_t is a compound Poisson process (Ψ bounded).
    pub fn is_compound_poisson(&self) -> bool {
        self.supremum().is_finite()
    }

    /// Both Ψ and ξ²/Ψ are increasing: known analytically for every family whose ψ is a
    /// Bernstein function, which is all of them except the cosine compound Poisson law.
    pub fn has_monotone_ratio(&self) -> bool {
        self.is_increasing()
    }

    /// lim_{ξ→0} Ψ(ξ)/ξ² (zero when Ψ decays slower than ξ²).
    pub fn quadratic_coefficient_at_zero(&self) -> f64 {
        match &self.family {
            Family::Stable { .. } => 0.0,
            Family::Brownian => 1.0,
            Family::RelativisticStable { alpha, mass } => 0.5 * alpha * mass.powf(1.0 - 2.0 / alpha),
            Family::StableMixture(terms) => terms
                .iter()
                .filter(|t| t.alpha == 2.0)
                .map(|t| t.weight)
                .sum(),
            Family::CompoundPoissonCosine => 0.5,
            Family::SubordinateBm(rep) => {
                if rep.c1 > 0.0 {
                    f64::INFINITY
                } else {
                    rep.derivative(0.0)
                }
            }
        }
    }

    /// The unique λ > 0 with Ψ(λ) = y, for strictly increasing Ψ and Ψ(0) < y < sup Ψ.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if !self.is_increasing() {
            return Err(Error::Hypothesis {
                requirement: "the exponent must be strictly increasing on (0, inf)",
                detail: "exponent is not invertible",
            });
        }
        let base = self.value(0.0);
        if !(y >= base) || !(y < self.supremum()) {
            return Err(Error::Domain {
                what: "value outside the range of the exponent",
                value: y,
            });
        }
        if y == base {
            return Ok(0.0);
        }
        match &self.family {
            Family::Stable { alpha } => Ok(y.powf(1.0 / alpha)),
            Family::Brownian => Ok(y.sqrt()),
            Family::RelativisticStable { alpha, mass } => {
                let mu = mass.powf(2.0 / alpha);
                Ok((mu * ((2.0 / alpha) * (y / mass).ln_1p()).exp_m1()).sqrt())
            }
            _ => {
                let mut hi = 1.0;
                while self.value(hi) < y {
                    hi *= 4.0;
                    if hi > 1e300 {
                        return Err(Error::Bracketing { lo: 0.0, hi });
                    }
                }
                let mut lo = hi / 4.0;
                while self.value(lo) > y {
                    lo /= 4.0;
                    if lo < 1e-300 {
                        return Err(Error::Bracketing { lo, hi });
                    }
                }
                find_root_monotone(|l| self.value(l) - y, lo, hi, 4.0 * f64::EPSILON)
            }
        }
    }

    /// Samples 0 < Ψ′(ξ) < 2Ψ(ξ)/ξ on a grid.
    pub fn check_admissibility(&self, grid: &[f64]) -> Result<AdmissibilityReport> {
        if grid.is_empty() {
            return Err(Error::Domain {
                what: "admissibility grid is empty",
                value: 0.0,
            });
        }
        let mut prev = 0.0;
        for &x in grid {
            if !(x > prev) || !x.is_finite() {
                return Err(Error::Domain {
                    what: "admissibility grid must be positive and strictly increasing",
                    value: x,
                });
            }
            prev = x;
        }
        let mut report = AdmissibilityReport {
            increasing_ok: true,
            ratio_ok: true,
            equality: false,
            worst_point: grid[0],
        };
        let mut worst = f64::INFINITY;
        for &x in grid {
            let d = self.derivative_value(x);
            let bound = 2.0 * self.value(x) / x;
            if !(d > 0.0) {
                report.increasing_ok = false;
            }
            let gap = bound - d;
            if gap.abs() <= 1e-12 * bound.abs() {
                report.equality = true;
            } else if gap < 0.0 {
                report.ratio_ok = false;
            }
            let margin = if bound > 0.0 {
                d.min(gap) / bound
            } else {
                f64::NEG_INFINITY
            };
            if margin < worst {
                worst = margin;
                report.worst_point = x;
            }
        }
        Ok(report)
    }
}

/// Outcome of sampling 0 < Ψ′(ξ) < 2Ψ(ξ)/ξ on a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibilityReport {
    pub increasing_ok: bool,
    /// Weak inequality Ψ′(ξ) ≤ 2Ψ(ξ)/ξ at every grid point.
    pub ratio_ok: bool,
    /// Ψ′(ξ)ξ = 2Ψ(ξ) to 1e-12 relative at some grid point.
    pub equality: bool,
    /// Grid point with the smallest normalised margin.
    pub worst_point: f64,
}

/// Boundary data of 1/ψ on the negative half-line: the density u ↦ Im(−1/ψ⁺(−u)) and
/// the atom b = lim_{ξ→0⁺} ξ/√ψ(ξ²).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    exponent: SymmetricLevyExponent,
    b: f64,
}

impl BoundaryData {
    pub fn new(exponent: &SymmetricLevyExponent) -> Result<Self> {
        match exponent.family() {
            Family::Stable { .. }
            | Family::Brownian
            | Family::RelativisticStable { .. }
            | Family::StableMixture(_) => {}
            _ => {
                return Err(Error::Unsupported {
                    family: exponent.name(),
                    operation: "boundary data",
                })
            }
        }
        let q = exponent.quadratic_coefficient_at_zero();
        let b = if q > 0.0 { 1.0 / q.sqrt() } else { 0.0 };
        Ok(Self {
            exponent: exponent.clone(),
            b,
        })
    }

    pub fn exponent(&self) -> &SymmetricLevyExponent {
        &self.exponent
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Below this u the boundary density vanishes identically.
    pub fn support_start(&self) -> f64 {
        match self.exponent.family() {
            Family::RelativisticStable { alpha, mass } => mass.powf(2.0 / alpha),
            _ => 0.0,
        }
    }

    /// ψ⁺(−u): the limit of ψ(−u + iε) as ε → 0⁺.
    pub fn boundary_value(&self, u: f64) -> Complex64 {
        let rot = |a: f64| Complex64::from_polar(u.powf(0.5 * a), 0.5 * PI * a);
        match self.exponent.family() {
            Family::Stable { alpha } => rot(*alpha),
            Family::Brownian => Complex64::new(-u, 0.0),
            Family::RelativisticStable { alpha, mass } => {
                let mu = mass.powf(2.0 / alpha);
                if u <= mu {
                    Complex64::new((mu - u).powf(0.5 * alpha) - mass, 0.0)
                } else {
                    Complex64::from_polar((u - mu).powf(0.5 * alpha), 0.5 * PI * alpha) - mass
                }
            }
            Family::StableMixture(terms) => terms.iter().map(|t| rot(t.alpha) * t.weight).sum(),
            _ => Complex64::new(f64::NAN, f64::NAN),
        }
    }

    /// Im(−1/ψ⁺(−u)) ≥ 0.
    pub fn imag_neg_reciprocal(&self, u: f64) -> f64 {
        match self.exponent.family() {
            Family::Brownian => 0.0,
            Family::Stable { alpha } => (0.5 * PI * alpha).sin() * u.powf(-0.5 * alpha),
            _ => {
                let w = self.boundary_value(u);
                let v = w.im / w.norm_sqr();
                v.max(0.0)
            }
        }
    }
}

/// Im(−1/ψ⁺(−u)) for families with a closed-form boundary continuation.
pub fn boundary_imag_reciprocal(data: &BoundaryData, u: f64) -> Result<f64> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::Domain {
            what: "boundary density is evaluated at positive u",
            value: u,
        });
    }
    Ok(data.imag_neg_reciprocal(u))
}

/// Log-spaced grid of `count` points from `start` to `stop`, both included.
pub fn logspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return alloc::vec![start];
    }
    let (a, b) = (start.ln(), stop.ln());
    (0..count)
        .map(|i| {
            if i + 1 == count {
                stop
            } else {
                (a + (b - a) * i as f64 / (count - 1) as f64).exp()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn fd(e: &SymmetricLevyExponent, x: f64) -> f64 {
        let h = x * 1e-6;
        (e.value(x + h) - e.value(x - h)) / (2.0 * h)
    }

    fn families() -> Vec<SymmetricLevyExponent> {
        vec![
            SymmetricLevyExponent::stable(0.5).unwrap(),
            SymmetricLevyExponent::stable(1.0).unwrap(),
            SymmetricLevyExponent::stable(1.5).unwrap(),
            SymmetricLevyExponent::brownian(),
            SymmetricLevyExponent::relativistic(1.0, 1.0).unwrap(),
            SymmetricLevyExponent::relativistic(0.6, 2.5).unwrap(),
            SymmetricLevyExponent::mixture(vec![
                MixtureTerm { weight: 1.0, alpha: 0.7 },
                MixtureTerm { weight: 0.5, alpha: 1.8 },
            ])
            .unwrap(),
            SymmetricLevyExponent::compound_poisson_cosine(),
            SymmetricLevyExponent::subordinate_bm(
                BernsteinRepresentation::new(0.0, 0.3, vec![(1.0, 2.0), (4.0, 1.0)]).unwrap(),
            ),
        ]
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(SymmetricLevyExponent::stable(1.0).unwrap().eval(2.0).unwrap(), 2.0);
        assert_eq!(SymmetricLevyExponent::brownian().eval(3.0).unwrap(), 9.0);
        assert_eq!(SymmetricLevyExponent::relativistic(1.0, 1.0).unwrap().eval(0.0).unwrap(), 0.0);
        assert!(SymmetricLevyExponent::brownian().eval(f64::NAN).is_err());
        let r = SymmetricLevyExponent::relativistic(1.0, 1.0).unwrap();
        assert!((r.value(3.0) - (10.0f64.sqrt() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn derivatives() {
        assert!((SymmetricLevyExponent::stable(1.5).unwrap().eval_derivative(1.0).unwrap() - 1.5).abs() < 1e-15);
        assert_eq!(SymmetricLevyExponent::brownian().eval_derivative(2.0).unwrap(), 4.0);
        let c = SymmetricLevyExponent::compound_poisson_cosine();
        assert!(c.eval_derivative(PI).unwrap().abs() < 1e-15);
        for e in families() {
            for &x in &[1e-3, 0.1, 0.7, 1.0, 3.3, 50.0, 1e3] {
                let d = e.derivative_value(x);
                assert!((d - fd(&e, x)).abs() <= 1e-4 * (1.0 + d.abs()), "{} at {x}", e.name());
            }
        }
    }

    #[test]
    fn stable_two_is_brownian() {
        assert_eq!(SymmetricLevyExponent::stable(2.0).unwrap(), SymmetricLevyExponent::brownian());
        assert!(SymmetricLevyExponent::stable(0.0).is_err());
        assert!(SymmetricLevyExponent::stable(2.1).is_err());
    }

    #[test]
    fn admissibility_examples() {
        let grid = logspace(1e-3, 1e3, 100);
        let r = SymmetricLevyExponent::stable(1.5).unwrap().check_admissibility(&grid).unwrap();
        assert!(r.increasing_ok && r.ratio_ok && !r.equality);

        let c = SymmetricLevyExponent::compound_poisson_cosine();
        let r = c.check_admissibility(&[1.0, 1.5 * PI, 6.0]).unwrap();
        assert!(!r.increasing_ok);

        let r = SymmetricLevyExponent::brownian().check_admissibility(&grid).unwrap();
        assert!(r.increasing_ok && r.ratio_ok && r.equality);

        assert!(SymmetricLevyExponent::brownian().check_admissibility(&[]).is_err());
        assert!(SymmetricLevyExponent::brownian().check_admissibility(&[2.0, 1.0]).is_err());
    }

    #[test]
    fn boundary_examples() {
        let d = BoundaryData::new(&SymmetricLevyExponent::stable(1.0).unwrap()).unwrap();
        assert!((boundary_imag_reciprocal(&d, 4.0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(d.b(), 0.0);
        let d = BoundaryData::new(&SymmetricLevyExponent::stable(2.0).unwrap()).unwrap();
        assert_eq!(boundary_imag_reciprocal(&d, 1.0).unwrap(), 0.0);
        assert_eq!(d.b(), 1.0);
        let d = BoundaryData::new(&SymmetricLevyExponent::stable(1.5).unwrap()).unwrap();
        assert!((boundary_imag_reciprocal(&d, 1.0).unwrap() - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(BoundaryData::new(&SymmetricLevyExponent::compound_poisson_cosine()).is_err());
    }

    #[test]
    fn stable_boundary_agrees_with_generic_continuation() {
        let e = SymmetricLevyExponent::mixture(vec![MixtureTerm { weight: 1.0, alpha: 1.3 }]).unwrap();
        let d = BoundaryData::new(&e).unwrap();
        let s = BoundaryData::new(&SymmetricLevyExponent::stable(1.3).unwrap()).unwrap();
        for &u in &[0.01, 1.0, 17.0] {
            let a = d.imag_neg_reciprocal(u);
            let b = s.imag_neg_reciprocal(u);
            assert!((a - b).abs() < 1e-13 * b, "{a} {b}");
        }
    }

    #[test]
    fn relativistic_boundary_support_and_b() {
        let e = SymmetricLevyExponent::relativistic(1.0, 1.0).unwrap();
        let d = BoundaryData::new(&e).unwrap();
        assert_eq!(d.support_start(), 1.0);
        assert_eq!(d.imag_neg_reciprocal(0.5), 0.0);
        assert!(d.imag_neg_reciprocal(2.0) > 0.0);
        // Ψ(ξ) ≈ ξ²/2 near zero, so b = √2
        assert!((d.b() - 2.0f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn cbf_examples() {
        let r = BernsteinRepresentation::new(0.0, 1.0, vec![]).unwrap();
        assert_eq!(cbf_eval(&r, Complex64::new(5.0, 0.0)).unwrap(), Complex64::new(5.0, 0.0));
        let r = BernsteinRepresentation::new(2.0, 0.0, vec![]).unwrap();
        assert_eq!(cbf_eval(&r, Complex64::new(0.0, 1.0)).unwrap(), Complex64::new(2.0, 0.0));
        let r = BernsteinRepresentation::new(0.0, 0.0, vec![(1.0, PI)]).unwrap();
        assert!((cbf_eval(&r, Complex64::new(1.0, 0.0)).unwrap().re - 0.5).abs() < 1e-15);
        assert!(cbf_eval(&r, Complex64::new(-1.0, 0.0)).is_err());
        assert!(BernsteinRepresentation::new(0.0, 0.0, vec![(0.0, 1.0)]).is_err());
        assert!(BernsteinRepresentation::new(-1.0, 0.0, vec![]).is_err());
    }

    #[test]
    fn inverses_round_trip() {
        for e in families().into_iter().filter(|e| e.is_increasing()) {
            for &l in &[1e-4, 0.3, 1.0, 7.0, 300.0] {
                let y = e.value(l);
                if y >= e.supremum() {
                    continue;
                }
                let back = e.inverse(y).unwrap();
                assert!((back - l).abs() <= 1e-9 * l, "{} {l} {back}", e.name());
            }
        }
        assert!(SymmetricLevyExponent::compound_poisson_cosine().inverse(0.5).is_err());
    }

    #[test]
    fn stieltjes_representation_of_inverse_stable_dagger() {
        // 1/ξ^{α/2} has density sin(πα/2) ζ^{-α/2}
        let alpha: f64 = 1.0;
        let rep = StieltjesRepresentation {
            c1_over_xi: 0.0,
            constant: 0.0,
            atoms: vec![],
            density: Some(Arc::new(move |z: f64| (0.5 * PI * alpha).sin() * z.powf(-0.5 * alpha))),
        };
        let s = QuadratureSettings::default();
        for &x in &[0.1, 1.0, 9.0] {
            let v = rep.eval(x, &s).unwrap();
            assert!((v - x.powf(-0.5)).abs() < 1e-8, "{x}: {v}");
        }
        assert!(rep.limits_consistent(|x: f64| x.powf(-0.5), &[1e-8, 1e8]));
        let brown = StieltjesRepresentation {
            c1_over_xi: 1.0,
            constant: 0.0,
            atoms: vec![],
            density: None,
        };
        assert!(brown.limits_consistent(|x: f64| 1.0 / x, &[1e-6, 1e6]));
        assert!(!brown.limits_consistent(|x: f64| 2.0 / x, &[1e-6, 1e6]));
    }
}
