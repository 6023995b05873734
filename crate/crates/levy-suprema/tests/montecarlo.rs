use levy_suprema::commands::mc_agrees;
use levy_suprema::montecarlo::{
    estimate_sup_cdf, estimate_sup_cdf_curve, sample_increment, SimulationConfig,
};
use levy_suprema_core::special::erf;
use levy_suprema_core::suprema::sup_cdf_envelope;
use levy_suprema_core::{logspace, SymmetricLevyExponent};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn brownian_cdf(t: f64, x: f64) -> f64 {
    erf(x / (2.0 * t.sqrt()))
}

#[test]
fn brownian_curve_at_full_budget() {
    let b = SymmetricLevyExponent::brownian();
    let mut xs = logspace(0.1, 8.0, 19);
    xs.push(1.0);
    xs.sort_by(f64::total_cmp);
    let est = estimate_sup_cdf_curve(&b, &xs, &SimulationConfig::new(1.0, 10_000, 1_000_000, 11)).unwrap();
    for (x, e) in xs.iter().zip(&est) {
        let p = brownian_cdf(1.0, *x);
        assert!(mc_agrees(p, e.p_hat, e.half_width_95, e.refinement_delta), "x={x} {e:?} p={p}");
        assert!(e.p_hat >= p - 3.0 * e.half_width_95, "grid bias is one-sided: x={x}");
    }
    let at_one = &est[xs.iter().position(|&x| x == 1.0).unwrap()];
    assert!((at_one.p_hat - 0.5205).abs() < 0.006, "{at_one:?}");
}

#[test]
fn coverage_smoke_test() {
    let b = SymmetricLevyExponent::brownian();
    let p = brownian_cdf(1.0, 4.0);
    let covered = (0..100u64)
        .filter(|&seed| {
            let e = estimate_sup_cdf(&b, 4.0, &SimulationConfig::new(1.0, 10_000, 10_000, seed)).unwrap();
            (e.p_hat - p).abs() <= e.half_width_95 + e.refinement_delta.abs()
        })
        .count();
    assert!(covered >= 90, "{covered}/100");
}

#[test]
fn extreme_levels() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for e in [
        SymmetricLevyExponent::brownian(),
        SymmetricLevyExponent::stable(0.8).unwrap(),
        SymmetricLevyExponent::compound_poisson_cosine(),
        SymmetricLevyExponent::relativistic(1.5, 0.5).unwrap(),
    ] {
        let c = SimulationConfig::new(1.0, 100, 2000, 2);
        let x = 1e-9;
        let est = estimate_sup_cdf_curve(&e, &[x, 1e12], &c).unwrap();
        assert_eq!(est[1].p_hat, 1.0, "{}", e.name());
        let first_below = (0..20_000)
            .filter(|_| sample_increment(&e, 0.01, &mut rng).unwrap() < x)
            .count() as f64
            / 20_000.0;
        assert!(est[0].p_hat <= first_below + 0.02, "{}: {} vs {first_below}", e.name(), est[0].p_hat);
    }
}

#[test]
fn stable_curve_inside_envelope() {
    let e = SymmetricLevyExponent::stable(1.5).unwrap();
    let xs = logspace(0.1, 10.0, 9);
    let est = estimate_sup_cdf_curve(&e, &xs, &SimulationConfig::new(1.0, 1000, 50_000, 4)).unwrap();
    for (x, m) in xs.iter().zip(&est) {
        let env = sup_cdf_envelope(&e, 1.0, *x).unwrap();
        assert!(env.lower <= m.p_hat && m.p_hat <= env.upper, "x={x}");
    }
}

#[test]
fn doubling_steps_never_raises_the_estimate_beyond_noise() {
    let e = SymmetricLevyExponent::stable(1.2).unwrap();
    let xs = [0.3, 1.0, 3.0];
    let coarse = estimate_sup_cdf_curve(&e, &xs, &SimulationConfig::new(1.0, 200, 40_000, 6)).unwrap();
    let fine = estimate_sup_cdf_curve(&e, &xs, &SimulationConfig::new(1.0, 400, 40_000, 7)).unwrap();
    for (c, f) in coarse.iter().zip(&fine) {
        let combined = c.half_width_95.hypot(f.half_width_95);
        assert!(f.p_hat <= c.p_hat + 2.0 * combined);
        assert!(c.refinement_delta <= 0.0);
    }
}

#[test]
fn antithetic_pairs_keep_the_path_count() {
    let b = SymmetricLevyExponent::brownian();
    let c = SimulationConfig {
        antithetic: true,
        ..SimulationConfig::new(1.0, 2000, 10_000, 1)
    };
    let e = estimate_sup_cdf(&b, 1.0, &c).unwrap();
    assert_eq!(e.n_paths, 10_000);
    assert!(mc_agrees(brownian_cdf(1.0, 1.0), e.p_hat, e.half_width_95, e.refinement_delta));
}
