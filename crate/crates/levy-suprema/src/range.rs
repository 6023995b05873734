use levy_suprema_core::logspace;

use crate::error::{AppError, AppResult};

/// `<value>` or a log-spaced `<start>:<stop>:<count>`.
pub fn parse_range(s: &str) -> AppResult<Vec<f64>> {
    let bad = || AppError::Range(s.to_string());
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [v] => {
            let v: f64 = v.trim().parse().map_err(|_| bad())?;
            if !v.is_finite() {
                return Err(bad());
            }
            Ok(vec![v])
        }
        [a, b, n] => {
            let a: f64 = a.trim().parse().map_err(|_| bad())?;
            let b: f64 = b.trim().parse().map_err(|_| bad())?;
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            if n == 0 || !(a > 0.0) || !(a <= b) || !b.is_finite() || (n == 1 && a != b) {
                return Err(bad());
            }
            Ok(logspace(a, b, n))
        }
        _ => Err(bad()),
    }
}
