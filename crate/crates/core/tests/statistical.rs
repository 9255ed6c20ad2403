//! Seeded Monte Carlo checks of the procedures' statistical behaviour.

use tsbreak::breaks::{
    boundary, chow_test, f_stats, optimal_breakpoints, sup_f_pvalue, Criterion, RegressionModel,
};
use tsbreak::series::{Period, TimeSeries};
use tsbreak::simulate::{generate, GaussianRng, ProcessKind, ProcessSpec};

fn series(values: Vec<f64>) -> TimeSeries {
    TimeSeries::new("y", Period::month(2000, 1).unwrap(), values).unwrap()
}

fn noise(seed: u64, n: usize, sigma: f64) -> Vec<f64> {
    let mut rng = GaussianRng::new(seed);
    (0..n).map(|_| rng.normal(sigma)).collect()
}

#[test]
fn simulated_means_match_theory() {
    // mean of y_T over replications: drift walk T·drift, trend model slope·T
    let reps = 400;
    let t = 100;
    let mut sums = [0.0; 3];
    for seed in 0..reps {
        let mut spec = ProcessSpec::new(ProcessKind::RandomWalkDrift, t, seed);
        spec.drift = 0.3;
        sums[0] += generate(&spec).unwrap().values()[t - 1];
        spec.kind = ProcessKind::TrendStationary;
        spec.trend_slope = 0.2;
        sums[1] += generate(&spec).unwrap().values()[t - 1];
        spec.kind = ProcessKind::WhiteNoise;
        sums[2] += generate(&spec).unwrap().values().iter().sum::<f64>() / t as f64;
    }
    let r = reps as f64;
    // standard errors: sqrt(T/r) = 0.5, 1/sqrt(r) = 0.05, 1/sqrt(T r) = 0.005
    assert!((sums[0] / r - 30.0).abs() < 4.0 * 0.5);
    assert!((sums[1] / r - 20.0).abs() < 4.0 * 0.05);
    assert!((sums[2] / r).abs() < 4.0 * 0.005);
}

#[test]
fn chow_detects_a_large_mean_shift() {
    let y: Vec<f64> = noise(3, 100, 1.0)
        .into_iter()
        .enumerate()
        .map(|(i, e)| e + if i >= 50 { 2.0 } else { 0.0 })
        .collect();
    let r = chow_test(&series(y), RegressionModel::Level, 50).unwrap();
    assert!(r.p_value < 1e-3, "{}", r.p_value);
}

#[test]
fn sup_f_stays_below_boundary_under_the_null() {
    let mut inside = 0;
    let mut crit = 0.0;
    for seed in 0..200 {
        let path = f_stats(
            &series(noise(1000 + seed, 100, 1.0)),
            RegressionModel::Level,
            15,
            85,
        )
        .unwrap();
        crit = boundary(&path, 0.05, Criterion::SupF)
            .unwrap()
            .critical_value;
        inside += usize::from(path.sup_f <= crit);
    }
    assert!(inside >= 180, "{inside} of 200 below {crit}");
}

#[test]
fn sup_f_has_power_against_a_mid_sample_shift() {
    let mut rejected = 0;
    for seed in 0..100 {
        let y: Vec<f64> = noise(5000 + seed, 100, 1.0)
            .into_iter()
            .enumerate()
            .map(|(i, e)| e + if i >= 50 { 1.5 } else { 0.0 })
            .collect();
        let path = f_stats(&series(y), RegressionModel::Level, 15, 85).unwrap();
        rejected += usize::from(sup_f_pvalue(&path).p_value < 0.05);
    }
    assert!(rejected >= 95, "{rejected} of 100");
}

#[test]
fn intervals_shrink_with_noise() {
    let mut narrower = 0;
    let mut both = 0;
    for seed in 0..100 {
        let width = |sigma: f64| {
            let y: Vec<f64> = noise(seed, 60, sigma)
                .into_iter()
                .enumerate()
                .map(|(i, e)| e + if i >= 30 { 1.0 } else { 0.0 })
                .collect();
            let s = series(y);
            let set = optimal_breakpoints(&s, RegressionModel::Level, 8, Some(1)).unwrap();
            if set.selected_m != 1 {
                return None;
            }
            let ci = set
                .with_confidence_intervals(&s, 0.05)
                .ok()?
                .confidence_intervals
                .unwrap()[0]
                .clone();
            Some(ci.upper - ci.lower)
        };
        if let (Some(noisy), Some(clean)) = (width(1.0), width(0.1)) {
            both += 1;
            narrower += usize::from(clean <= noisy);
        }
    }
    assert!(
        both >= 50,
        "only {both} seeds selected a break at both noise levels"
    );
    assert_eq!(narrower, both);
}
