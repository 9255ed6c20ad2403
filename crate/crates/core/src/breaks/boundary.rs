//! Asymptotic critical values for sup-F and ave-F by simulation.
//!
//! Under the null of no break, the Chow F statistic at sample fraction r
//! converges to ‖B(r)‖² / (k · r(1−r)) where B is a k-dimensional Brownian
//! bridge. Each replication draws a k-dimensional Brownian motion on a grid,
//! ties it down, and records the max and mean of that process over the
//! candidate window. Replication `i` uses its own generator stream, so
//! results do not depend on how replications are scheduled across threads.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use super::{check_alpha, FstatsPath};
use crate::error::Result;
use crate::simulate::GaussianRng;

pub const DEFAULT_SEED: u64 = 20240101;
pub const REPLICATIONS: usize = 10_000;
pub const GRID_POINTS: usize = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    SupF,
    AveF,
}

impl std::str::FromStr for Criterion {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sup" | "sup_f" | "supF" => Ok(Criterion::SupF),
            "ave" | "ave_f" | "aveF" => Ok(Criterion::AveF),
            other => Err(crate::Error::Invalid(format!(
                "unknown criterion `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MonteCarloConfig {
    pub seed: u64,
    pub replications: usize,
    pub grid_points: usize,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        MonteCarloConfig {
            seed: DEFAULT_SEED,
            replications: REPLICATIONS,
            grid_points: GRID_POINTS,
        }
    }
}

/// Sorted simulated draws of the sup and ave functionals.
#[derive(Debug, Clone)]
pub struct NullDistribution {
    pub window: (f64, f64),
    pub k: usize,
    pub config: MonteCarloConfig,
    sup_draws: Vec<f64>,
    ave_draws: Vec<f64>,
}

impl NullDistribution {
    fn simulate(window: (f64, f64), k: usize, config: MonteCarloConfig) -> Self {
        let grid = config.grid_points;
        let step_sd = (1.0 / grid as f64).sqrt();
        let lo = ((window.0 * grid as f64) - 1e-9).ceil().max(1.0) as usize;
        let hi = ((window.1 * grid as f64) + 1e-9)
            .floor()
            .min(grid as f64 - 1.0) as usize;
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, hi) };

        let draws: Vec<(f64, f64)> = (0..config.replications)
            .into_par_iter()
            .map(|rep| {
                let mut rng = GaussianRng::for_replication(config.seed, rep as u64);
                let mut paths = vec![0.0; k * (grid + 1)];
                for d in 0..k {
                    let path = &mut paths[d * (grid + 1)..(d + 1) * (grid + 1)];
                    for i in 1..=grid {
                        path[i] = path[i - 1] + step_sd * rng.standard_normal();
                    }
                }
                let mut sup = f64::NEG_INFINITY;
                let mut sum = 0.0;
                for i in lo..=hi {
                    let r = i as f64 / grid as f64;
                    let mut norm2 = 0.0;
                    for d in 0..k {
                        let path = &paths[d * (grid + 1)..(d + 1) * (grid + 1)];
                        let bridge = path[i] - r * path[grid];
                        norm2 += bridge * bridge;
                    }
                    let f = norm2 / (r * (1.0 - r)) / k as f64;
                    sup = sup.max(f);
                    sum += f;
                }
                (sup, sum / (hi + 1 - lo) as f64)
            })
            .collect();

        let mut sup_draws: Vec<f64> = draws.iter().map(|d| d.0).collect();
        let mut ave_draws: Vec<f64> = draws.iter().map(|d| d.1).collect();
        sup_draws.sort_by(f64::total_cmp);
        ave_draws.sort_by(f64::total_cmp);
        NullDistribution {
            window,
            k,
            config,
            sup_draws,
            ave_draws,
        }
    }

    pub fn draws(&self, criterion: Criterion) -> &[f64] {
        match criterion {
            Criterion::SupF => &self.sup_draws,
            Criterion::AveF => &self.ave_draws,
        }
    }

    /// Empirical (1 − alpha) quantile: the ⌈(1−alpha)·R⌉-th order statistic.
    pub fn critical_value(&self, criterion: Criterion, alpha: f64) -> f64 {
        let draws = self.draws(criterion);
        let r = draws.len();
        let rank = (((1.0 - alpha) * r as f64) - 1e-9).ceil() as usize;
        draws[rank.clamp(1, r) - 1]
    }

    /// Share of draws at or above `stat`.
    pub fn tail_probability(&self, criterion: Criterion, stat: f64) -> f64 {
        let draws = self.draws(criterion);
        let below = draws.partition_point(|&d| d < stat);
        (draws.len() - below) as f64 / draws.len() as f64
    }
}

type CacheKey = (u64, u64, usize, MonteCarloConfig);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<NullDistribution>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<NullDistribution>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Simulated null distribution for a candidate window given as sample
/// fractions, memoised per (window, k, config).
pub fn null_distribution(
    window: (f64, f64),
    k: usize,
    config: MonteCarloConfig,
) -> Arc<NullDistribution> {
    let key = (window.0.to_bits(), window.1.to_bits(), k, config);
    if let Some(hit) = cache().lock().expect("cache lock").get(&key) {
        return Arc::clone(hit);
    }
    let dist = Arc::new(NullDistribution::simulate(window, k, config));
    cache()
        .lock()
        .expect("cache lock")
        .entry(key)
        .or_insert(dist)
        .clone()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundarySpec {
    pub alpha: f64,
    pub criterion: Criterion,
    pub critical_value: f64,
    pub seed: u64,
    pub replications: usize,
}

pub fn boundary(path: &FstatsPath, alpha: f64, criterion: Criterion) -> Result<BoundarySpec> {
    boundary_with(path, alpha, criterion, MonteCarloConfig::default())
}

pub fn boundary_with(
    path: &FstatsPath,
    alpha: f64,
    criterion: Criterion,
    config: MonteCarloConfig,
) -> Result<BoundarySpec> {
    let alpha = check_alpha(alpha)?;
    let dist = null_distribution(path.window_fractions(), path.k, config);
    Ok(BoundarySpec {
        alpha,
        criterion,
        critical_value: dist.critical_value(criterion, alpha),
        seed: config.seed,
        replications: config.replications,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupFPValue {
    pub p_value: f64,
    pub std_error: f64,
    /// No simulated draw reached the statistic; the p-value is below
    /// `1 / replications`.
    pub below_resolution: bool,
    pub replications: usize,
}

impl std::fmt::Display for SupFPValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.below_resolution {
            write!(f, "< {:e}", 1.0 / self.replications as f64)
        } else {
            write!(f, "{:.4} (MC s.e. {:.4})", self.p_value, self.std_error)
        }
    }
}

pub fn sup_f_pvalue(path: &FstatsPath) -> SupFPValue {
    sup_f_pvalue_with(path, MonteCarloConfig::default())
}

pub fn sup_f_pvalue_with(path: &FstatsPath, config: MonteCarloConfig) -> SupFPValue {
    let dist = null_distribution(path.window_fractions(), path.k, config);
    let p = dist.tail_probability(Criterion::SupF, path.sup_f);
    let r = config.replications as f64;
    SupFPValue {
        p_value: p,
        std_error: (p * (1.0 - p) / r).sqrt(),
        below_resolution: p == 0.0,
        replications: config.replications,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::breaks::RegressionModel;

    fn path_with(sup: f64) -> FstatsPath {
        FstatsPath {
            from: 15,
            to: 85,
            n: 100,
            k: 1,
            model: RegressionModel::Level,
            trimming: 0.15,
            f_values: vec![sup],
            sup_f: sup,
            ave_f: sup,
        }
    }

    fn small() -> MonteCarloConfig {
        MonteCarloConfig {
            replications: 2_000,
            ..MonteCarloConfig::default()
        }
    }

    #[test]
    fn pvalue_edges() {
        let zero = sup_f_pvalue_with(&path_with(0.0), small());
        assert_eq!(zero.p_value, 1.0);
        let huge = sup_f_pvalue_with(&path_with(1e6), small());
        assert!(huge.below_resolution);
        assert_eq!(huge.p_value, 0.0);
        assert_eq!(huge.to_string(), "< 5e-4");
    }

    #[test]
    fn ave_below_sup_and_ordered_in_alpha() {
        let p = path_with(1.0);
        for alpha in [0.01, 0.05, 0.10] {
            let s = boundary_with(&p, alpha, Criterion::SupF, small()).unwrap();
            let a = boundary_with(&p, alpha, Criterion::AveF, small()).unwrap();
            assert!(a.critical_value < s.critical_value);
        }
        let cv = |alpha| {
            boundary_with(&p, alpha, Criterion::SupF, small())
                .unwrap()
                .critical_value
        };
        assert!(cv(0.01) > cv(0.05) && cv(0.05) > cv(0.10));
    }

    #[test]
    fn unsupported_alpha() {
        assert!(boundary_with(&path_with(1.0), 0.2, Criterion::SupF, small()).is_err());
    }

    #[test]
    fn deterministic_across_thread_pools() {
        let cfg = MonteCarloConfig {
            replications: 500,
            seed: 7,
            ..MonteCarloConfig::default()
        };
        let a = NullDistribution::simulate((0.15, 0.85), 2, cfg);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let b = pool.install(|| NullDistribution::simulate((0.15, 0.85), 2, cfg));
        assert_eq!(a.sup_draws, b.sup_draws);
        assert_eq!(a.ave_draws, b.ave_draws);
    }
}
