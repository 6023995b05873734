//! Globally adaptive Gauss–Kronrod (7/15) integration over a set of mapped segments.
//!
//! Every segment carries its own change of variables, so a semi-infinite range can be
//! split into a `tan` half and a `cot` half that share one error budget. The 15-point
//! rule is open: no integrand is ever evaluated at a panel endpoint.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{Integral, QuadratureSettings};
use crate::error::{Error, Result};

/// Values an integrand may take: real or complex.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn finite(self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn finite(self) -> bool {
        self.is_finite()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

// Kronrod abscissae, positive half, descending; odd indices are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Change of variables attached to a segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mapping {
    /// ζ = u
    Identity,
    /// ζ = scale·tan u, u ∈ (0, π/4]
    Tan { scale: f64 },
    /// ζ = scale / tan u, u ∈ (0, π/4]
    Cot { scale: f64 },
}

impl Mapping {
    #[inline]
    fn apply(self, u: f64) -> (f64, f64) {
        match self {
            Mapping::Identity => (u, 1.0),
            Mapping::Tan { scale } => {
                let c = u.cos();
                (scale * u.tan(), scale / (c * c))
            }
            Mapping::Cot { scale } => {
                let s = u.sin();
                (scale / u.tan(), scale / (s * s))
            }
        }
    }
}

/// A parameter interval together with its mapping to the integration variable.
#[derive(Debug, Clone, Copy)]
pub struct Segment {
    pub a: f64,
    pub b: f64,
    pub mapping: Mapping,
}

struct Panel<V> {
    a: f64,
    b: f64,
    mapping: Mapping,
    value: V,
    error: f64,
}

struct RuleOutput<V> {
    value: V,
    error: f64,
}

fn apply_rule<V, F>(f: &mut F, a: f64, b: f64, mapping: Mapping) -> Result<RuleOutput<V>>
where
    V: QuadValue,
    F: FnMut(f64) -> Result<V>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |u: f64| -> Result<V> {
        let (z, jac) = mapping.apply(u);
        let v = f(z)?;
        if !v.finite() {
            return Err(Error::NonFinite { abscissa: z });
        }
        Ok(v * jac)
    };

    let fc = eval(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_k = fc.magnitude() * WGK[7];
    let mut fv1 = [V::zero(); 7];
    let mut fv2 = [V::zero(); 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod = kronrod + (f1 + f2) * WGK[j];
        abs_k += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut asc = WGK[7] * (fc - mean).magnitude();
    for j in 0..7 {
        asc += WGK[j] * ((fv1[j] - mean).magnitude() + (fv2[j] - mean).magnitude());
    }
    let scale = half.abs();
    let abs_k = abs_k * scale;
    let asc = asc * scale;
    let mut err = ((kronrod - gauss) * half).magnitude();
    if asc != 0.0 && err != 0.0 {
        err = asc * (1.0_f64).min((200.0 * err / asc).powf(1.5));
    }
    if abs_k > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * abs_k);
    }
    Ok(RuleOutput {
        value: kronrod * half,
        error: err,
    })
}

fn splittable(a: f64, b: f64) -> bool {
    let mid = 0.5 * (a + b);
    mid > a && mid < b && (b - a) > 8.0 * f64::EPSILON * a.abs().max(b.abs())
}

/// Integrates `f` over the union of `segments` to the tolerance in `settings`.
pub fn integrate_segments<V, F>(
    mut f: F,
    segments: &[Segment],
    settings: &QuadratureSettings,
) -> Result<Integral<V>>
where
    V: QuadValue,
    F: FnMut(f64) -> Result<V>,
{
    let mut panels: Vec<Panel<V>> = Vec::with_capacity(segments.len() + 32);
    let mut evaluations = 0usize;
    for seg in segments {
        if !(seg.b > seg.a) {
            continue;
        }
        let out = apply_rule(&mut f, seg.a, seg.b, seg.mapping)?;
        evaluations += 15;
        panels.push(Panel {
            a: seg.a,
            b: seg.b,
            mapping: seg.mapping,
            value: out.value,
            error: out.error,
        });
    }
    if panels.is_empty() {
        return Ok(Integral {
            value: V::zero(),
            error_estimate: 0.0,
            evaluations: 0,
        });
    }

    let mut subdivisions = 0usize;
    loop {
        let mut total = V::zero();
        let mut error = 0.0;
        let mut worst: Option<usize> = None;
        let mut worst_err = -1.0;
        for (i, p) in panels.iter().enumerate() {
            total = total + p.value;
            error += p.error;
            if p.error > worst_err && splittable(p.a, p.b) {
                worst_err = p.error;
                worst = Some(i);
            }
        }
        let tol = settings.abs_tol.max(settings.rel_tol * total.magnitude());
        if error <= tol {
            return Ok(Integral {
                value: total,
                error_estimate: error,
                evaluations,
            });
        }
        let worst = match worst {
            Some(i) if subdivisions < settings.max_subdivisions => i,
            _ => {
                return Err(Error::Convergence {
                    value: total.magnitude(),
                    error_estimate: error,
                    evaluations,
                })
            }
        };
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        let left = apply_rule(&mut f, p.a, mid, p.mapping)?;
        let right = apply_rule(&mut f, mid, p.b, p.mapping)?;
        evaluations += 30;
        subdivisions += 1;
        panels.push(Panel {
            a: p.a,
            b: mid,
            mapping: p.mapping,
            value: left.value,
            error: left.error,
        });
        panels.push(Panel {
            a: mid,
            b: p.b,
            mapping: p.mapping,
            value: right.value,
            error: right.error,
        });
    }
}

/// Segments covering [a, b] split at the interior `breakpoints`.
pub fn finite_segments(a: f64, b: f64, breakpoints: &[f64]) -> Vec<Segment> {
    let mut pts: Vec<f64> = Vec::with_capacity(breakpoints.len() + 2);
    pts.push(a);
    pts.extend(breakpoints.iter().copied().filter(|&p| p > a && p < b));
    pts.push(b);
    sort_dedup(&mut pts);
    pts.windows(2)
        .map(|w| Segment {
            a: w[0],
            b: w[1],
            mapping: Mapping::Identity,
        })
        .collect()
}

/// Segments covering (0, ∞): ζ = scale·tan θ below `scale` and ζ = scale/tan φ above,
/// each split at the images of `breakpoints`.
pub fn semi_infinite_segments(scale: f64, breakpoints: &[f64]) -> Vec<Segment> {
    let quarter = core::f64::consts::FRAC_PI_4;
    let mut near: Vec<f64> = Vec::new();
    let mut far: Vec<f64> = Vec::new();
    near.push(0.0);
    far.push(0.0);
    for &z in breakpoints {
        if !(z > 0.0) || !z.is_finite() {
            continue;
        }
        if z < scale {
            near.push((z / scale).atan());
        } else if z > scale {
            far.push((scale / z).atan());
        }
    }
    near.push(quarter);
    far.push(quarter);
    sort_dedup(&mut near);
    sort_dedup(&mut far);
    let mut segs = Vec::with_capacity(near.len() + far.len());
    for w in near.windows(2) {
        segs.push(Segment {
            a: w[0],
            b: w[1],
            mapping: Mapping::Tan { scale },
        });
    }
    for w in far.windows(2) {
        segs.push(Segment {
            a: w[0],
            b: w[1],
            mapping: Mapping::Cot { scale },
        });
    }
    segs
}

fn sort_dedup(v: &mut Vec<f64>) {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(core::cmp::Ordering::Equal));
    v.dedup_by(|a, b| (*a - *b).abs() <= 4.0 * f64::EPSILON * a.abs().max(b.abs()));
}
