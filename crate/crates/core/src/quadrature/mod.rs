//! Numerical kernels: adaptive integration, monotone root finding and real/complex
//! Laplace inversion.

mod adaptive;
mod inversion;
mod roots;

pub use adaptive::{
    finite_segments, integrate_segments, semi_infinite_segments, Mapping, QuadValue, Segment,
};
pub use inversion::{
    euler_invert, gaver_stehfest_invert, stehfest_weights, stehfest_weights_exact, EulerParameters,
    Rational, DEFAULT_GS_TERMS, MAX_GS_TERMS,
};
pub use roots::find_root_monotone;

use crate::error::{Error, Result};

/// Tolerances and budgets shared by every quadrature call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Integration of a damped integrand stops where the damping factor drops below
    /// `exp(-truncation_threshold)`.
    pub truncation_threshold: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
            truncation_threshold: 40.0,
        }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "rel_tol",
                value: self.rel_tol,
            });
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "abs_tol",
                value: self.abs_tol,
            });
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidParameter {
                name: "max_subdivisions",
                value: 0.0,
            });
        }
        if !(self.truncation_threshold > 0.0) {
            return Err(Error::InvalidParameter {
                name: "truncation_threshold",
                value: self.truncation_threshold,
            });
        }
        Ok(())
    }

    /// Same budgets with both tolerances scaled by `factor`.
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            rel_tol: self.rel_tol * factor,
            abs_tol: self.abs_tol * factor,
            ..*self
        }
    }
}

/// Value, accumulated error estimate and evaluation count of an integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<V> {
    pub value: V,
    pub error_estimate: f64,
    pub evaluations: usize,
}

pub type QuadratureResult = Integral<f64>;

/// ∫ₐᵇ f.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, settings: &QuadratureSettings) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    settings.validate()?;
    if !(a < b) {
        return Err(Error::Domain {
            what: "integration bounds must satisfy a < b",
            value: b - a,
        });
    }
    integrate_segments(|x| Ok(f(x)), &finite_segments(a, b, &[]), settings)
}

/// ∫₀^∞ f via ζ = tan θ (the half ζ > 1 is parametrised by the complementary angle so
/// the far tail keeps full floating-point resolution).
pub fn integrate_semi_infinite<F>(f: F, settings: &QuadratureSettings) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    settings.validate()?;
    integrate_segments(|x| Ok(f(x)), &semi_infinite_segments(1.0, &[]), settings)
}

/// ∫₀^∞ f where `f` already contains a decreasing damping factor `damping`. The range is
/// cut where the damping drops below `exp(-truncation_threshold)` and a tail bound is
/// added to the error estimate.
pub fn integrate_semi_infinite_damped<F, D>(
    f: F,
    damping: D,
    settings: &QuadratureSettings,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    settings.validate()?;
    let floor = libm::exp(-settings.truncation_threshold);
    let mut cutoff = 1.0;
    let mut guard = 0;
    while damping(cutoff) >= floor {
        cutoff *= 2.0;
        guard += 1;
        if guard > 1100 {
            return integrate_semi_infinite(f, settings);
        }
    }
    let mut res = integrate_segments(|x| Ok(f(x)), &finite_segments(0.0, cutoff, &[]), settings)?;
    // beyond the cutoff the integrand is at most |f(cutoff)| and decays at least as fast as the damping
    res.error_estimate += f(cutoff).abs() * cutoff;
    Ok(res)
}
