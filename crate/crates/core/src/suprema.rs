//! Law of the running supremum M_t: its Laplace transform in the level variable,
//! P(M_t < x) by numerical inversion, the renewal function V of the ladder-height
//! process and explicit two-sided envelopes.

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::exponents::{BoundaryData, Family, SymmetricLevyExponent};
use crate::fluctuation::{
    general_sup_bounds, inner_dagger_exponent_complex, psi_dagger, KappaFunction,
};
use crate::quadrature::{
    euler_invert, finite_segments, gaver_stehfest_invert, integrate_segments,
    semi_infinite_segments, EulerParameters, Integral, QuadratureSettings,
};

/// Largest tolerated distance between the raw inverted value and [0, 1].
pub const CLAMP_FLAG_THRESHOLD: f64 = 0.02;

fn require_sup_hypotheses(exponent: &SymmetricLevyExponent) -> Result<()> {
    if let Family::CompoundPoissonCosine = exponent.family() {
        return Err(Error::Hypothesis {
            requirement: "the exponent must be strictly increasing on (0, inf)",
            detail: "exponent not increasing",
        });
    }
    if !exponent.is_increasing() {
        return Err(Error::Hypothesis {
            requirement: "the exponent must be strictly increasing on (0, inf)",
            detail: "exponent not increasing",
        });
    }
    Ok(())
}

fn positive(what: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { what, value: v })
    }
}

/// E e^{−ξM_t} for Re ξ > 0.
///
/// With s = √Ψ(λ) the λ-integral becomes
/// (2/π)∫₀^{s_max} ξ/(λ² + ξ²)·exp(E(ξ, λ))·e^{−ts²} ds, λ = Ψ⁻¹(s²),
/// which has no endpoint singularity. The range stops where ts² exceeds the
/// truncation threshold.
pub fn laplace_of_sup_complex(
    exponent: &SymmetricLevyExponent,
    xi: Complex64,
    t: f64,
    settings: &QuadratureSettings,
) -> Result<Integral<Complex64>> {
    require_sup_hypotheses(exponent)?;
    positive("time must be positive", t)?;
    settings.validate()?;
    if !(xi.re > 0.0) || !xi.re.is_finite() || !xi.im.is_finite() {
        return Err(Error::Domain {
            what: "the transform variable needs Re xi > 0",
            value: xi.re,
        });
    }
    let thr = settings.truncation_threshold;
    let s_cut = (thr / t).sqrt();
    let s_sup = exponent.supremum().sqrt();
    let s_max = s_cut.min(s_sup);
    let truncated = s_cut < s_sup;

    let root = |l: f64| {
        let v = exponent.value(l).sqrt();
        if v < s_max {
            v
        } else {
            0.0
        }
    };
    let mut breaks = [root(xi.norm()), 0.0, 0.0];
    if xi.im.abs() > xi.re {
        breaks[1] = root((xi.im * xi.im - xi.re * xi.re).sqrt());
    }
    if 1.0 / t.sqrt() < s_max {
        breaks[2] = 1.0 / t.sqrt();
    }
    let xi2 = xi * xi;
    let mut inner_error = 0.0f64;
    let mut res = integrate_segments(
        |s: f64| {
            let lam = exponent.inverse(s * s)?;
            if !(lam > 0.0) {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let e = inner_dagger_exponent_complex(exponent, xi, lam, settings)?;
            let v = xi / (lam * lam + xi2) * e.value.exp() * (-t * s * s).exp();
            inner_error = inner_error.max(e.error_estimate * v.norm());
            Ok(v)
        },
        &finite_segments(0.0, s_max, &breaks),
        settings,
    )?;
    res.value *= 2.0 / PI;
    res.error_estimate = (res.error_estimate + inner_error * s_max) * (2.0 / PI);
    if truncated {
        // ∫_{s_max}^∞ e^{−ts²} ds ≤ e^{−ts_max²}/(2ts_max), and |ξ/(λ²+ξ²)|·|exp E| stays O(1/Re ξ)
        res.error_estimate += (-thr).exp() / (2.0 * t * s_max) / xi.re;
    }
    Ok(res)
}

/// E e^{−ξM_t}.
pub fn laplace_of_sup(
    exponent: &SymmetricLevyExponent,
    xi: f64,
    t: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    positive("xi must be positive", xi)?;
    Ok(laplace_of_sup_complex(exponent, Complex64::new(xi, 0.0), t, settings)?
        .value
        .re)
}

/// ∫₀^∞ e^{−ξx} P(M_t < x) dx = E e^{−ξM_t}/ξ.
pub fn laplace_of_survival(
    exponent: &SymmetricLevyExponent,
    xi: f64,
    t: f64,
    settings: &QuadratureSettings,
) -> Result<f64> {
    Ok(laplace_of_sup(exponent, xi, t, settings)? / xi)
}

/// Numerical Laplace inversion scheme used by [`sup_cdf_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InversionMethod {
    /// Euler-summed Fourier series on a vertical line in the right half-plane.
    Euler(EulerParameters),
    /// Real-axis Gaver–Stehfest with the given even number of terms.
    GaverStehfest { terms: usize },
}

impl Default for InversionMethod {
    fn default() -> Self {
        InversionMethod::Euler(EulerParameters::default())
    }
}

impl InversionMethod {
    pub fn terms(&self) -> usize {
        match self {
            InversionMethod::Euler(p) => p.evaluations(),
            InversionMethod::GaverStehfest { terms } => *terms,
        }
    }
}

/// P(M_t < x) obtained by Laplace inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupremumEstimate {
    /// Raw value clamped to [0, 1].
    pub value: f64,
    pub raw_value: f64,
    /// Quadrature error of the transform values, propagated through the inversion sum.
    pub quadrature_error: f64,
    pub inversion_terms: usize,
    /// The raw value left [−0.02, 1.02].
    pub flagged: bool,
}

/// P(M_t < x) with the default inversion.
pub fn sup_cdf(
    exponent: &SymmetricLevyExponent,
    t: f64,
    x: f64,
    settings: &QuadratureSettings,
) -> Result<SupremumEstimate> {
    sup_cdf_with(exponent, t, x, settings, InversionMethod::default())
}

pub fn sup_cdf_with(
    exponent: &SymmetricLevyExponent,
    t: f64,
    x: f64,
    settings: &QuadratureSettings,
    method: InversionMethod,
) -> Result<SupremumEstimate> {
    require_sup_hypotheses(exponent)?;
    positive("time must be positive", t)?;
    positive("level must be positive", x)?;
    let mut err_sum = 0.0;
    let raw = match method {
        InversionMethod::Euler(params) => {
            let scale = (0.5 * params.a).exp() / x;
            let v = euler_invert(
                |p| {
                    let r = laplace_of_sup_complex(exponent, p, t, settings)?;
                    err_sum += r.error_estimate / p.norm();
                    Ok(r.value / p)
                },
                x,
                params,
            )?;
            err_sum *= scale;
            v
        }
        InversionMethod::GaverStehfest { terms } => {
            let weights = crate::quadrature::stehfest_weights(terms)?;
            let step = core::f64::consts::LN_2 / x;
            let mut k = 0usize;
            let v = gaver_stehfest_invert(
                |p| {
                    let r = laplace_of_sup_complex(exponent, Complex64::new(p, 0.0), t, settings)?;
                    err_sum += weights[k].abs() * r.error_estimate / p;
                    k += 1;
                    Ok(r.value.re / p)
                },
                x,
                terms,
            )?;
            err_sum *= step;
            v
        }
    };
    let value = raw.clamp(0.0, 1.0);
    Ok(SupremumEstimate {
        value,
        raw_value: raw,
        quadrature_error: err_sum,
        inversion_terms: method.terms(),
        flagged: (raw - value).abs() > CLAMP_FLAG_THRESHOLD,
    })
}

fn dagger_on_boundary(data: &BoundaryData, xi: f64, settings: &QuadratureSettings) -> Result<f64> {
    match data.exponent().family() {
        Family::Stable { alpha } => Ok(xi.powf(0.5 * alpha)),
        Family::Brownian => Ok(xi),
        _ => psi_dagger(data.exponent(), xi, settings),
    }
}

fn boundary_integral<W>(
    data: &BoundaryData,
    x: f64,
    weight: W,
    settings: &QuadratureSettings,
) -> Result<f64>
where
    W: Fn(f64) -> f64,
{
    let start = data.support_start().sqrt() * x;
    let r = integrate_segments(
        |y: f64| {
            let xi = y / x;
            let rho = data.imag_neg_reciprocal(xi * xi);
            if rho == 0.0 {
                return Ok(0.0);
            }
            Ok(rho * dagger_on_boundary(data, xi, settings)? * weight(y))
        },
        &semi_infinite_segments(1.0, &[start]),
        settings,
    )?;
    Ok(r.value / PI)
}

/// V(x) = bx + (1/π)∫₀^∞ Im(−1/ψ⁺(−ξ²))·ψ†(ξ)/ξ·(1 − e^{−xξ}) dξ, integrated in y = xξ.
pub fn renewal_function(data: &BoundaryData, x: f64, settings: &QuadratureSettings) -> Result<f64> {
    positive("level must be positive", x)?;
    settings.validate()?;
    let tail = boundary_integral(data, x, |y| -(-y).exp_m1() / y, settings)?;
    Ok(data.b() * x + tail)
}

/// V′(x) = b + (1/π)∫₀^∞ Im(−1/ψ⁺(−ξ²))·ψ†(ξ)·e^{−xξ} dξ.
pub fn renewal_density(data: &BoundaryData, x: f64, settings: &QuadratureSettings) -> Result<f64> {
    positive("level must be positive", x)?;
    settings.validate()?;
    let tail = boundary_integral(data, x, |y| (-y).exp(), settings)?;
    Ok(data.b() + tail / x)
}

fn require_ratio_monotone(exponent: &SymmetricLevyExponent) -> Result<()> {
    if exponent.has_monotone_ratio() {
        Ok(())
    } else {
        Err(Error::Hypothesis {
            requirement: "both the exponent and xi^2/exponent must be increasing",
            detail: "exponent not admissible for the explicit bounds",
        })
    }
}

/// (1/5, 5)·Ψ(1/x)^{−1/2}.
pub fn renewal_bracket(exponent: &SymmetricLevyExponent, x: f64) -> Result<(f64, f64)> {
    require_ratio_monotone(exponent)?;
    if exponent.is_compound_poisson() {
        return Err(Error::Hypothesis {
            requirement: "the process must not be compound Poisson",
            detail: "renewal bracket unavailable",
        });
    }
    positive("level must be positive", x)?;
    let q = exponent.value(1.0 / x).sqrt();
    Ok((0.2 / q, 5.0 / q))
}

/// Where a probability envelope comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSource {
    /// Universal constants 1/100, 200 and 10 applied to tΨ(1/x).
    Explicit,
    /// κ(1/t, 0)·V(x) with the constants C₁, C₂.
    LadderTime,
    /// The explicit envelope with V replaced by its bracket.
    RenewalBracket,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundEnvelope {
    pub lower: f64,
    pub upper: f64,
    pub source: BoundSource,
}

/// (1/100)·min(1, 1/(200√(tΨ(1/x)))) ≤ P(M_t < x) ≤ min(1, 10/√(tΨ(1/x))).
pub fn sup_cdf_envelope(exponent: &SymmetricLevyExponent, t: f64, x: f64) -> Result<BoundEnvelope> {
    require_ratio_monotone(exponent)?;
    positive("time must be positive", t)?;
    positive("level must be positive", x)?;
    let q = (t * exponent.value(1.0 / x)).sqrt();
    Ok(BoundEnvelope {
        lower: 0.01 * (1.0 / (200.0 * q)).min(1.0),
        upper: (10.0 / q).min(1.0),
        source: BoundSource::Explicit,
    })
}

/// min(C₁, C₂κ(1/t)V(x)) ≤ P(M_t < x) ≤ min(1, e/(e − 1)·κ(1/t)V(x)) with κ = √z and
/// V from the renewal integral.
pub fn ladder_envelope(
    data: &BoundaryData,
    t: f64,
    x: f64,
    settings: &QuadratureSettings,
) -> Result<BoundEnvelope> {
    let v = renewal_function(data, x, settings)?;
    let (lower, upper) = general_sup_bounds(&KappaFunction::symmetric_sqrt(), v, t, settings)?;
    Ok(BoundEnvelope {
        lower,
        upper,
        source: BoundSource::LadderTime,
    })
}

/// The ladder-time envelope with V replaced by the bracket (1/5, 5)·Ψ(1/x)^{−1/2}.
pub fn bracket_envelope(
    exponent: &SymmetricLevyExponent,
    t: f64,
    x: f64,
    settings: &QuadratureSettings,
) -> Result<BoundEnvelope> {
    let (vl, vu) = renewal_bracket(exponent, x)?;
    let k = KappaFunction::symmetric_sqrt();
    let (lower, _) = general_sup_bounds(&k, vl, t, settings)?;
    let (_, upper) = general_sup_bounds(&k, vu, t, settings)?;
    Ok(BoundEnvelope {
        lower,
        upper,
        source: BoundSource::RenewalBracket,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{erf, erfc, gamma};

    fn s() -> QuadratureSettings {
        QuadratureSettings::default()
    }

    #[test]
    fn brownian_transform() {
        let b = SymmetricLevyExponent::brownian();
        let v = laplace_of_sup(&b, 1.0, 1.0, &s()).unwrap();
        let exact = 1.0f64.exp() * erfc(1.0);
        assert!((v - exact).abs() < 1e-9, "{v} {exact}");
        assert!((laplace_of_survival(&b, 1.0, 1.0, &s()).unwrap() - exact).abs() < 1e-9);
        let two = laplace_of_survival(&b, 2.0, 1.0, &s()).unwrap();
        assert_eq!(two, laplace_of_sup(&b, 2.0, 1.0, &s()).unwrap() / 2.0);
    }

    #[test]
    fn transform_tends_to_one_at_small_xi() {
        for e in [
            SymmetricLevyExponent::stable(1.0).unwrap(),
            SymmetricLevyExponent::relativistic(1.0, 1.0).unwrap(),
        ] {
            let v = laplace_of_sup(&e, 1e-6, 1.0, &s()).unwrap();
            assert!((v - 1.0).abs() < 1e-3, "{}: {v}", e.name());
        }
    }

    #[test]
    fn transform_decreases_in_time() {
        let e = SymmetricLevyExponent::stable(1.5).unwrap();
        let mut prev = 1.0;
        for &t in &[0.1, 0.5, 1.0, 3.0, 10.0] {
            let v = laplace_of_sup(&e, 1.0, t, &s()).unwrap();
            assert!(v < prev, "{t}: {v}");
            prev = v;
        }
    }

    #[test]
    fn brownian_cdf() {
        let b = SymmetricLevyExponent::brownian();
        let r = sup_cdf(&b, 1.0, 1.0, &s()).unwrap();
        assert!((r.value - erf(0.5)).abs() < 1e-6, "{r:?}");
        assert!(!r.flagged);
        let r = sup_cdf(&b, 1.0, 6.0, &s()).unwrap();
        assert!((r.value - erf(3.0)).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn gaver_stehfest_route_is_close() {
        let b = SymmetricLevyExponent::brownian();
        let r = sup_cdf_with(&b, 1.0, 1.0, &s(), InversionMethod::GaverStehfest { terms: 14 }).unwrap();
        assert!((r.value - erf(0.5)).abs() < 1e-3, "{r:?}");
        assert_eq!(r.inversion_terms, 14);
    }

    #[test]
    fn cdf_rejects_cosine_process() {
        let c = SymmetricLevyExponent::compound_poisson_cosine();
        assert!(matches!(sup_cdf(&c, 1.0, 1.0, &s()), Err(Error::Hypothesis { .. })));
        assert!(sup_cdf_envelope(&c, 1.0, 1.0).is_err());
    }

    #[test]
    fn stable_renewal() {
        let d = BoundaryData::new(&SymmetricLevyExponent::stable(1.0).unwrap()).unwrap();
        let v = renewal_function(&d, 1.0, &s()).unwrap();
        assert!((v - 2.0 / PI.sqrt()).abs() < 1e-8, "{v}");
        let vp = renewal_density(&d, 1.0, &s()).unwrap();
        assert!((vp - 1.0 / PI.sqrt()).abs() < 1e-8, "{vp}");
        let d = BoundaryData::new(&SymmetricLevyExponent::stable(0.5).unwrap()).unwrap();
        let x: f64 = 3.0;
        let v = renewal_function(&d, x, &s()).unwrap();
        let exact = x.powf(0.25) / gamma(1.25);
        assert!((v - exact).abs() < 1e-8 * exact, "{v} {exact}");
    }

    #[test]
    fn brownian_renewal() {
        let d = BoundaryData::new(&SymmetricLevyExponent::brownian()).unwrap();
        assert_eq!(renewal_function(&d, 2.0, &s()).unwrap(), 2.0);
        assert_eq!(renewal_density(&d, 5.0, &s()).unwrap(), 1.0);
        assert!(renewal_function(&d, 1e-12, &s()).unwrap() < 1e-11);
    }

    #[test]
    fn relativistic_renewal_in_bracket() {
        let e = SymmetricLevyExponent::relativistic(1.0, 1.0).unwrap();
        let d = BoundaryData::new(&e).unwrap();
        let mut prev = f64::INFINITY;
        for &x in &[0.01, 0.3, 1.0, 10.0, 100.0] {
            let v = renewal_function(&d, x, &s()).unwrap();
            let (lo, hi) = renewal_bracket(&e, x).unwrap();
            assert!(lo <= v && v <= hi, "{x}: {lo} {v} {hi}");
            let vp = renewal_density(&d, x, &s()).unwrap();
            assert!(vp <= prev);
            prev = vp;
        }
    }

    #[test]
    fn bracket_examples() {
        let c = SymmetricLevyExponent::stable(1.0).unwrap();
        assert_eq!(renewal_bracket(&c, 1.0).unwrap(), (0.2, 5.0));
        let (lo, hi) = renewal_bracket(&SymmetricLevyExponent::brownian(), 3.0).unwrap();
        assert!((lo - 0.6).abs() < 1e-15 && (hi - 15.0).abs() < 1e-13);
    }

    #[test]
    fn envelope_examples() {
        let c = SymmetricLevyExponent::stable(1.0).unwrap();
        let e = sup_cdf_envelope(&c, 1.0, 1.0).unwrap();
        assert!((e.lower - 5e-5).abs() < 1e-20);
        assert_eq!(e.upper, 1.0);
        assert_eq!(e.source, BoundSource::Explicit);
        let e = sup_cdf_envelope(&c, 1e4, 1.0).unwrap();
        assert!((e.lower - 5e-7).abs() < 1e-20 && (e.upper - 0.1).abs() < 1e-15);
        let b = SymmetricLevyExponent::brownian();
        let e = sup_cdf_envelope(&b, 1.0, 1.0).unwrap();
        assert!(e.lower <= erf(0.5) && erf(0.5) <= e.upper);
    }

    #[test]
    fn ladder_and_bracket_envelopes_are_ordered() {
        let e = SymmetricLevyExponent::stable(1.0).unwrap();
        let d = BoundaryData::new(&e).unwrap();
        let l = ladder_envelope(&d, 1.0, 1.0, &s()).unwrap();
        assert!(l.lower <= l.upper);
        let b = bracket_envelope(&e, 1.0, 1.0, &s()).unwrap();
        assert!(b.lower <= l.lower && l.upper <= b.upper);
    }
}
