use crate::error::{Error, Result};

/// Root of a continuous monotone `g` on `[lo, hi]`, located to a bracket of width
/// `tol·max(1, |z|)`. Illinois-modified regula falsi, falling back to bisection
/// whenever the secant step stalls.
pub fn find_root_monotone<G>(mut g: G, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    G: FnMut(f64) -> f64,
{
    if !(lo < hi) || !(tol > 0.0) {
        return Err(Error::Bracketing { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    let mut fa = g(a);
    let mut fb = g(b);
    if !fa.is_finite() {
        return Err(Error::NonFinite { abscissa: a });
    }
    if !fb.is_finite() {
        return Err(Error::NonFinite { abscissa: b });
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracketing { lo, hi });
    }
    let mut side = 0i8;
    for iter in 0..400 {
        let width = b - a;
        let mid = 0.5 * (a + b);
        if width <= tol * mid.abs().max(1.0) || mid <= a || mid >= b {
            return Ok(mid);
        }
        let mut c = (a * fb - b * fa) / (fb - fa);
        // every fourth step, or when the secant lands outside the interior, bisect
        if iter % 4 == 3 || !(c > a && c < b) {
            c = mid;
        }
        let fc = g(c);
        if !fc.is_finite() {
            return Err(Error::NonFinite { abscissa: c });
        }
        if fc == 0.0 {
            return Ok(c);
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    Ok(0.5 * (a + b))
}
