//! Real-axis (Gaver–Stehfest) and Bromwich-line (Euler-accelerated Fourier series)
//! Laplace inversion.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

pub const DEFAULT_GS_TERMS: usize = 14;
/// Largest term count whose weights fit the exact 128-bit rational evaluation.
pub const MAX_GS_TERMS: usize = 20;

/// Reduced fraction with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    pub num: i128,
    pub den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    fn new(num: i128, den: i128) -> Self {
        let g = gcd(num, den).max(1);
        let sign = if den < 0 { -1 } else { 1 };
        Self {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    fn checked_add(self, other: Self) -> Option<Self> {
        let g = gcd(self.den, other.den);
        let l = (self.den / g).checked_mul(other.den)?;
        let a = self.num.checked_mul(l / self.den)?;
        let b = other.num.checked_mul(l / other.den)?;
        Some(Self::new(a.checked_add(b)?, l))
    }

    pub fn to_f64(self) -> f64 {
        // split so that neither part loses more than one rounding
        let q = self.num / self.den;
        let r = self.num % self.den;
        q as f64 + r as f64 / self.den as f64
    }
}

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

/// Stehfest weights ζ₁..ζₙ as exact fractions.
pub fn stehfest_weights_exact(n: usize) -> Result<Vec<Rational>> {
    if n < 2 || !n.is_multiple_of(2) || n > MAX_GS_TERMS {
        return Err(Error::InvalidParameter {
            name: "n_terms",
            value: n as f64,
        });
    }
    let half = n / 2;
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = Rational::new(0, 1);
        for j in k.div_ceil(2)..=k.min(half) {
            let num = (j as i128).pow(half as u32) * factorial(2 * j);
            let den = factorial(half - j)
                * factorial(j)
                * factorial(j - 1)
                * factorial(k - j)
                * factorial(2 * j - k);
            acc = acc
                .checked_add(Rational::new(num, den))
                .ok_or(Error::InvalidParameter {
                    name: "n_terms",
                    value: n as f64,
                })?;
        }
        if (k + half) % 2 == 1 {
            acc.num = -acc.num;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Stehfest weights rounded once to double precision.
pub fn stehfest_weights(n: usize) -> Result<Vec<f64>> {
    Ok(stehfest_weights_exact(n)?.into_iter().map(Rational::to_f64).collect())
}

/// f(x) ≈ (ln 2 / x) Σ ζₖ F(k ln 2 / x). The result is not clamped.
pub fn gaver_stehfest_invert<F>(mut transform: F, x: f64, n_terms: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "inversion point must be positive",
            value: x,
        });
    }
    let weights = stehfest_weights(n_terms)?;
    let step = core::f64::consts::LN_2 / x;
    let mut sum = 0.0;
    for (k, w) in weights.iter().enumerate() {
        let p = (k + 1) as f64 * step;
        let v = transform(p)?;
        if !v.is_finite() {
            return Err(Error::NonFinite { abscissa: p });
        }
        sum += w * v;
    }
    Ok(step * sum)
}

/// Parameters of the Euler-summed Fourier-series inversion on the line Re p = A/(2x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerParameters {
    /// Discretisation parameter; the aliasing error is about e^{-A}·sup|f|.
    pub a: f64,
    /// Terms summed before Euler averaging.
    pub n: usize,
    /// Order of the binomial (Euler) average.
    pub m: usize,
}

impl Default for EulerParameters {
    fn default() -> Self {
        Self {
            a: 18.4,
            n: 15,
            m: 11,
        }
    }
}

impl EulerParameters {
    pub fn evaluations(&self) -> usize {
        self.n + self.m + 1
    }
}

/// f(x) from its Laplace transform evaluated on the vertical line Re p = A/(2x).
/// Only Re p > 0 is ever sampled.
pub fn euler_invert<F>(mut transform: F, x: f64, params: EulerParameters) -> Result<f64>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "inversion point must be positive",
            value: x,
        });
    }
    let shift = params.a / (2.0 * x);
    let step = core::f64::consts::PI / x;
    let scale = (params.a / 2.0).exp() / x;
    let total = params.n + params.m;

    let first = transform(Complex64::new(shift, 0.0))?;
    if !first.re.is_finite() {
        return Err(Error::NonFinite { abscissa: shift });
    }
    let mut partial = Vec::with_capacity(total + 1);
    let mut running = 0.5 * first.re;
    partial.push(running);
    for k in 1..=total {
        let p = Complex64::new(shift, k as f64 * step);
        let v = transform(p)?;
        if !v.re.is_finite() {
            return Err(Error::NonFinite { abscissa: p.im });
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        running += sign * v.re;
        partial.push(running);
    }
    let mut binom = 1.0;
    let mut acc = 0.0;
    let norm = 0.5f64.powi(params.m as i32);
    for k in 0..=params.m {
        acc += binom * partial[params.n + k];
        binom = binom * (params.m - k) as f64 / (k + 1) as f64;
    }
    Ok(scale * acc * norm)
}
