//! One table builder per CLI verb. Sweeps over (t, x) run in parallel and keep row order.

use levy_suprema_core::fluctuation::psi_dagger;
use levy_suprema_core::suprema::{
    laplace_of_sup_complex, renewal_bracket, renewal_density, renewal_function, sup_cdf_envelope,
    sup_cdf_with, InversionMethod,
};
use levy_suprema_core::{BoundaryData, QuadratureSettings, SymmetricLevyExponent};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::AppResult;
use crate::montecarlo::{estimate_sup_cdf_grid, SimulationConfig};
use crate::table::{Cell, Table};

fn grid(ts: &[f64], xs: &[f64]) -> Vec<(f64, f64)> {
    ts.iter()
        .flat_map(|&t| xs.iter().map(move |&x| (t, x)))
        .collect()
}

fn collect_rows(table: &mut Table, rows: Vec<AppResult<Vec<Cell>>>) -> AppResult<()> {
    for r in rows {
        table.push(r?);
    }
    Ok(())
}

pub fn psi_dagger_table(
    exponent: &SymmetricLevyExponent,
    xis: &[f64],
    settings: &QuadratureSettings,
) -> AppResult<Table> {
    let mut t = Table::new(&["xi", "psi_dagger", "sqrt_psi", "lower_ratio", "upper_ratio"]);
    let rows = xis
        .par_iter()
        .map(|&xi| {
            let d = psi_dagger(exponent, xi, settings)?;
            let s = exponent.value(xi).sqrt();
            Ok(vec![xi.into(), d.into(), s.into(), (d / s).into(), (s / d).into()])
        })
        .collect();
    collect_rows(&mut t, rows)?;
    Ok(t)
}

pub fn sup_laplace_table(
    exponent: &SymmetricLevyExponent,
    ts: &[f64],
    xis: &[f64],
    settings: &QuadratureSettings,
) -> AppResult<Table> {
    let mut t = Table::new(&["t", "xi", "laplace", "laplace_survival", "quad_err"]);
    let rows = grid(ts, xis)
        .into_par_iter()
        .map(|(time, xi)| {
            let r = laplace_of_sup_complex(exponent, Complex64::new(xi, 0.0), time, settings)?;
            let v = r.value.re;
            Ok(vec![
                time.into(),
                xi.into(),
                v.into(),
                (v / xi).into(),
                r.error_estimate.into(),
            ])
        })
        .collect();
    collect_rows(&mut t, rows)?;
    Ok(t)
}

pub fn sup_cdf_table(
    exponent: &SymmetricLevyExponent,
    ts: &[f64],
    xs: &[f64],
    settings: &QuadratureSettings,
    method: InversionMethod,
) -> AppResult<Table> {
    let mut t = Table::new(&["t", "x", "p", "p_raw", "quad_err", "flag"]);
    let rows = grid(ts, xs)
        .into_par_iter()
        .map(|(time, x)| {
            let e = sup_cdf_with(exponent, time, x, settings, method)?;
            Ok(vec![
                time.into(),
                x.into(),
                e.value.into(),
                e.raw_value.into(),
                e.quadrature_error.into(),
                e.flagged.into(),
            ])
        })
        .collect();
    collect_rows(&mut t, rows)?;
    Ok(t)
}

pub fn renewal_table(
    exponent: &SymmetricLevyExponent,
    xs: &[f64],
    settings: &QuadratureSettings,
) -> AppResult<Table> {
    let data = BoundaryData::new(exponent)?;
    let mut t = Table::new(&["x", "V", "V_lower", "V_upper", "Vprime"]);
    let rows = xs
        .par_iter()
        .map(|&x| {
            let v = renewal_function(&data, x, settings)?;
            let (lo, hi) = renewal_bracket(exponent, x)?;
            let d = renewal_density(&data, x, settings)?;
            Ok(vec![x.into(), v.into(), lo.into(), hi.into(), d.into()])
        })
        .collect();
    collect_rows(&mut t, rows)?;
    Ok(t)
}

pub fn bounds_table(exponent: &SymmetricLevyExponent, ts: &[f64], xs: &[f64]) -> AppResult<Table> {
    let mut t = Table::new(&["t", "x", "env_lower", "env_upper"]);
    for (time, x) in grid(ts, xs) {
        let b = sup_cdf_envelope(exponent, time, x)?;
        t.push(vec![time.into(), x.into(), b.lower.into(), b.upper.into()]);
    }
    Ok(t)
}

pub fn simulate_table(
    exponent: &SymmetricLevyExponent,
    ts: &[f64],
    xs: &[f64],
    config: &SimulationConfig,
) -> AppResult<Table> {
    let est = estimate_sup_cdf_grid(exponent, ts, xs, config)?;
    let mut t = Table::new(&["t", "x", "p_hat", "ci95", "n_paths", "n_steps", "refine_delta"]);
    for (i, &time) in ts.iter().enumerate() {
        for (j, &x) in xs.iter().enumerate() {
            let e = &est[i][j];
            t.push(vec![
                time.into(),
                x.into(),
                e.p_hat.into(),
                e.half_width_95.into(),
                e.n_paths.into(),
                config.n_steps.into(),
                e.refinement_delta.into(),
            ]);
        }
    }
    Ok(t)
}

/// |p̂ − p| ≤ 3·half-width + |refinement delta| + 2e−3.
pub fn mc_agrees(p: f64, p_hat: f64, half_width: f64, refinement_delta: f64) -> bool {
    (p_hat - p).abs() <= 3.0 * half_width + refinement_delta.abs() + 2e-3
}

pub fn compare_table(
    exponent: &SymmetricLevyExponent,
    ts: &[f64],
    xs: &[f64],
    settings: &QuadratureSettings,
    method: InversionMethod,
    config: &SimulationConfig,
) -> AppResult<Table> {
    let analytic = sup_cdf_table(exponent, ts, xs, settings, method)?;
    let est = estimate_sup_cdf_grid(exponent, ts, xs, config)?;
    let mut t = Table::new(&[
        "t",
        "x",
        "p",
        "env_lower",
        "env_upper",
        "p_hat",
        "ci95",
        "refine_delta",
        "contained",
        "agrees",
    ]);
    for (k, (time, x)) in grid(ts, xs).into_iter().enumerate() {
        let p = match analytic.rows[k][2] {
            Cell::Float(v) => v,
            _ => unreachable!("p is a float column"),
        };
        let env = sup_cdf_envelope(exponent, time, x)?;
        let e = &est[k / xs.len()][k % xs.len()];
        t.push(vec![
            time.into(),
            x.into(),
            p.into(),
            env.lower.into(),
            env.upper.into(),
            e.p_hat.into(),
            e.half_width_95.into(),
            e.refinement_delta.into(),
            (env.lower <= p && p <= env.upper).into(),
            mc_agrees(p, e.p_hat, e.half_width_95, e.refinement_delta).into(),
        ]);
    }
    Ok(t)
}
