//! Wiener–Hopf quantities of a symmetric exponent: ψ†, ψ_λ and the exponent of its
//! dagger transform, the ladder-time exponent κ(z, 0), K(s) and the two-sided bound
//! on P(M_t < x) in terms of κ and V.

use alloc::string::String;
use alloc::sync::Arc;
use core::f64::consts::{E, FRAC_PI_4, PI};
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::exponents::{logspace, Family, SymmetricLevyExponent};
use crate::quadrature::{
    find_root_monotone, finite_segments, integrate_segments, semi_infinite_segments, Integral,
    QuadratureSettings,
};

/// Relative half-width of the band around λ² where ψ_λ is blended into its limit.
pub const PSI_LAMBDA_BAND: f64 = 1e-6;

fn require_increasing(exponent: &SymmetricLevyExponent) -> Result<()> {
    if exponent.is_increasing() {
        Ok(())
    } else {
        Err(Error::Hypothesis {
            requirement: "the exponent must be strictly increasing on (0, inf)",
            detail: "exponent not increasing",
        })
    }
}

fn positive(what: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what, value: v })
    }
}

/// ψ† of an arbitrary positive increasing ψ (given on the squared variable u = ξ²).
///
/// Uses log ψ†(ξ) = ½ log ψ(ξ²) + (1/π)∫₀^{π/4} [log h(ξ tan θ) + log h(ξ / tan θ)] dθ
/// with h(y) = ψ(y²)/ψ(ξ²); the folded integrand vanishes for pure powers.
pub fn psi_dagger_of<F>(mut psi: F, xi: f64, settings: &QuadratureSettings) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    positive("psi-dagger is evaluated at positive xi", xi)?;
    settings.validate()?;
    let base = psi(xi * xi)?;
    if !(base > 0.0) || !base.is_finite() {
        return Err(Error::Domain {
            what: "psi must be positive and finite at xi^2",
            value: base,
        });
    }
    let log_base = base.ln();
    let mut log_ratio = |y: f64| -> Result<f64> {
        let v = psi(y * y)?;
        if !(v > 0.0) {
            return Err(Error::Domain {
                what: "psi must be positive on (0, inf)",
                value: y,
            });
        }
        Ok(v.ln() - log_base)
    };
    let r = integrate_segments(
        |theta: f64| {
            let tn = theta.tan();
            Ok(log_ratio(xi * tn)? + log_ratio(xi / tn)?)
        },
        &finite_segments(0.0, FRAC_PI_4, &[]),
        settings,
    )?;
    Ok((0.5 * log_base + r.value / PI).exp())
}

/// ψ†(ξ) = exp((1/π)∫₀^∞ log ψ(ξ²ζ²)/(1 + ζ²) dζ).
pub fn psi_dagger(
    exponent: &SymmetricLevyExponent,
    xi: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    require_increasing(exponent)?;
    psi_dagger_of(|u| Ok(exponent.psi(u)), xi, settings)
}

/// ψ_λ(u) = (1 − u/λ²)/(1 − ψ(u)/ψ(λ²)) with its precomputed limit at u = λ².
#[derive(Debug, Clone)]
pub struct PsiLambda<'a> {
    exponent: &'a SymmetricLevyExponent,
    lam2: f64,
    psi_lam: f64,
    limit: f64,
}

impl<'a> PsiLambda<'a> {
    pub fn new(exponent: &'a SymmetricLevyExponent, lambda: f64) -> Result<Self> {
        positive("lambda must be positive", lambda)?;
        let lam2 = lambda * lambda;
        let psi_lam = exponent.psi(lam2);
        let d = exponent.psi_derivative(lam2);
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::Domain {
                what: "the exponent must have a positive derivative at lambda",
                value: lambda,
            });
        }
        Ok(Self {
            exponent,
            lam2,
            psi_lam,
            limit: psi_lam / (lam2 * d),
        })
    }

    pub fn lambda_squared(&self) -> f64 {
        self.lam2
    }

    pub fn psi_at_lambda(&self) -> f64 {
        self.psi_lam
    }

    /// Value at u = λ².
    pub fn limit(&self) -> f64 {
        self.limit
    }

    fn raw(&self, u: f64) -> Result<f64> {
        let den = 1.0 - self.exponent.psi(u) / self.psi_lam;
        if den == 0.0 {
            return Err(Error::Domain {
                what: "psi takes the value psi(lambda^2) away from lambda^2",
                value: u,
            });
        }
        Ok((1.0 - u / self.lam2) / den)
    }

    pub fn eval(&self, u: f64) -> Result<f64> {
        if !(u >= 0.0) || !u.is_finite() {
            return Err(Error::Domain {
                what: "psi_lambda is evaluated at u >= 0",
                value: u,
            });
        }
        let offset = (u - self.lam2) / self.lam2;
        if offset.abs() > PSI_LAMBDA_BAND {
            return self.raw(u);
        }
        let edge = self.lam2 * (1.0 + PSI_LAMBDA_BAND.copysign(offset));
        let edge_value = self.raw(edge)?;
        let w = offset.abs() / PSI_LAMBDA_BAND;
        Ok(self.limit + w * (edge_value - self.limit))
    }
}

pub fn psi_lambda(exponent: &SymmetricLevyExponent, lambda: f64, u: f64) -> Result<f64> {
    PsiLambda::new(exponent, lambda)?.eval(u)
}

/// E(ξ, λ) = (1/π)∫₀^∞ ξ log[(λ² − ζ²)/(Ψ(λ) − Ψ(ζ))]/(ξ² + ζ²) dζ for Re ξ > 0.
///
/// The logarithm is written as log(λ²/Ψ(λ)) + log ψ_λ(ζ²); the constant part
/// integrates to ½ log(λ²/Ψ(λ)) in closed form.
pub fn inner_dagger_exponent_complex(
    exponent: &SymmetricLevyExponent,
    xi: Complex64,
    lambda: f64,
    settings: &QuadratureSettings,
) -> Result<Integral<Complex64>> {
    require_increasing(exponent)?;
    if !(xi.re > 0.0) || !xi.im.is_finite() || !xi.re.is_finite() {
        return Err(Error::Domain {
            what: "inner exponent needs Re xi > 0",
            value: xi.re,
        });
    }
    let pl = PsiLambda::new(exponent, lambda)?;
    let r = xi.norm();
    let xi2 = xi * xi;
    let mut breaks = [lambda, 0.0];
    if xi.im.abs() > xi.re {
        breaks[1] = (xi.im * xi.im - xi.re * xi.re).sqrt();
    }
    let mut res = integrate_segments(
        |z: f64| {
            let v = pl.eval(z * z)?;
            if !(v > 0.0) {
                return Err(Error::Domain {
                    what: "psi_lambda must be positive",
                    value: z,
                });
            }
            Ok(xi * v.ln() / (xi2 + z * z))
        },
        &semi_infinite_segments(r, &breaks),
        settings,
    )?;
    let constant = 0.5 * (pl.lam2 / pl.psi_lam).ln();
    res.value = res.value / PI + constant;
    res.error_estimate /= PI;
    Ok(res)
}

pub fn inner_dagger_exponent(
    exponent: &SymmetricLevyExponent,
    xi: f64,
    lambda: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    positive("inner exponent is evaluated at positive xi", xi)?;
    Ok(inner_dagger_exponent_complex(exponent, Complex64::new(xi, 0.0), lambda, settings)?
        .value
        .re)
}

/// z ↦ κ(z, 0), the Laplace exponent of the inverse local time at the supremum.
#[derive(Clone)]
pub enum KappaKind {
    /// κ(z, 0) = √z.
    SymmetricSqrt,
    UserSupplied(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

#[derive(Clone)]
pub struct KappaFunction {
    kind: KappaKind,
    description: String,
}

impl fmt::Debug for KappaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KappaFunction")
            .field("description", &self.description)
            .finish()
    }
}

impl KappaFunction {
    pub fn symmetric_sqrt() -> Self {
        Self {
            kind: KappaKind::SymmetricSqrt,
            description: String::from("sqrt(z)"),
        }
    }

    /// Wraps a user κ after checking positivity and monotonicity on 1e3 log-spaced points
    /// of [1e-12, 1e12].
    pub fn user_supplied<F>(f: F, description: &str) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let mut prev = 0.0;
        for z in logspace(1e-12, 1e12, 1000) {
            let v = f(z);
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Hypothesis {
                    requirement: "kappa(z, 0) must be positive and finite for z > 0",
                    detail: "invalid kappa",
                });
            }
            if v < prev {
                return Err(Error::Hypothesis {
                    requirement: "kappa(z, 0) must be nondecreasing in z",
                    detail: "invalid kappa",
                });
            }
            prev = v;
        }
        Ok(Self {
            kind: KappaKind::UserSupplied(Arc::new(f)),
            description: String::from(description),
        })
    }

    pub fn kind(&self) -> &KappaKind {
        &self.kind
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    #[inline]
    pub fn eval(&self, z: f64) -> f64 {
        match &self.kind {
            KappaKind::SymmetricSqrt => z.sqrt(),
            KappaKind::UserSupplied(f) => f(z),
        }
    }
}

/// K(s) = ∫_s^∞ κ(z, 0)/z² dz.
///
/// The tail is checked heuristically first: the log-slope of κ(z)/z² over the decade
/// [1e8, 1e9]·max(s, 1) must be below −1.
pub fn kappa_k(kappa: &KappaFunction, s: f64, settings: &QuadratureSettings) -> Result<f64> {
    positive("K(s) needs s > 0", s)?;
    let g = |z: f64| kappa.eval(z) / (z * z);
    let lo = 1e8 * s.max(1.0);
    let slope = (g(10.0 * lo) / g(lo)).log10();
    if !(slope < -1.0 - 1e-6) {
        return Err(Error::Hypothesis {
            requirement: "kappa(z, 0)/z^2 must be integrable at infinity",
            detail: "K(s) diverges",
        });
    }
    // z = s·e^u turns the power tail into an exponential one
    let r = integrate_segments(
        |u: f64| {
            let z = s * u.exp();
            if !z.is_finite() {
                return Ok(0.0);
            }
            Ok(kappa.eval(z) / z)
        },
        &semi_infinite_segments(1.0, &[]),
        settings,
    )?;
    Ok(r.value)
}

/// (e − 1)/(8e²).
pub fn ladder_bound_c1() -> f64 {
    (E - 1.0) / (8.0 * E * E)
}

/// Constants of the two-sided bound min(C₁, C₂κ(1/t, 0)V(x)) ≤ P(M_t < x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderBoundConstants {
    pub c1: f64,
    pub c2: f64,
    /// Root of κ(z, 0)/z = 4e²/(e − 1)·K(1/t) in (0, 1/t).
    pub z_star: f64,
    pub t: f64,
}

/// Solves for z* on (z_min, 1/t), descending geometrically from 1/t to find z_min.
pub fn ladder_bound_constants(
    kappa: &KappaFunction,
    t: f64,
    settings: &QuadratureSettings,
) -> Result<LadderBoundConstants> {
    ladder_bound_constants_from(kappa, t, 10.0, settings)
}

/// As [`ladder_bound_constants`] with a chosen descent factor for the lower bracket.
pub fn ladder_bound_constants_from(
    kappa: &KappaFunction,
    t: f64,
    descent: f64,
    settings: &QuadratureSettings,
) -> Result<LadderBoundConstants> {
    positive("time must be positive", t)?;
    if !(descent > 1.0) {
        return Err(Error::InvalidParameter {
            name: "descent",
            value: descent,
        });
    }
    let target = 4.0 * E * E / (E - 1.0) * kappa_k(kappa, 1.0 / t, settings)?;
    let g = |z: f64| (kappa.eval(z) / z).ln() - target.ln();
    let hi = 1.0 / t;
    let floor = hi * 1e-60;
    let mut lo = hi / descent;
    while !(g(lo) > 0.0) {
        lo /= descent;
        if lo < floor {
            return Err(Error::Hypothesis {
                requirement: "kappa(z, 0)/z must be unbounded as z -> 0",
                detail: "no root of the defining equation within 60 decades",
            });
        }
    }
    let z_star = find_root_monotone(g, lo, hi, 1e-15 * hi)?;
    Ok(LadderBoundConstants {
        c1: ladder_bound_c1(),
        c2: z_star * t / (2.0 * E),
        z_star,
        t,
    })
}

/// (min(C₁, C₂κ(1/t)V), min(1, e/(e − 1)·κ(1/t)V)).
pub fn general_sup_bounds(
    kappa: &KappaFunction,
    v_at_x: f64,
    t: f64,
    settings: &QuadratureSettings,
) -> Result<(f64, f64)> {
    if !(v_at_x >= 0.0) || !v_at_x.is_finite() {
        return Err(Error::Domain {
            what: "V(x) must be finite and nonnegative",
            value: v_at_x,
        });
    }
    let c = ladder_bound_constants(kappa, t, settings)?;
    let kv = kappa.eval(1.0 / t) * v_at_x;
    let lower = c.c1.min(c.c2 * kv);
    let upper = (E / (E - 1.0) * kv).min(1.0);
    Ok((lower, upper))
}

/// |ψ†(ξ)ψ†(−ξ) − ψ(−ξ²)| for a stable exponent, principal branches throughout.
pub fn duality_residual(exponent: &SymmetricLevyExponent, xi: Complex64) -> Result<f64> {
    let alpha = match exponent.family() {
        Family::Stable { alpha } => *alpha,
        Family::Brownian => 2.0,
        _ => {
            return Err(Error::Unsupported {
                family: exponent.name(),
                operation: "closed-form duality check",
            })
        }
    };
    if xi.im == 0.0 {
        return Err(Error::Domain {
            what: "duality is checked off the real axis",
            value: xi.re,
        });
    }
    let h = 0.5 * alpha;
    let lhs = xi.powf(h) * (-xi).powf(h);
    let rhs = (-(xi * xi)).powf(h);
    Ok((lhs - rhs).norm())
}
