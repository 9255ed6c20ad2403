//! Structural-break analysis.
//!
//! Observation indices in this module are 1-based. A break at `i` splits
//! the sample into `[1..=i]` and `[i+1..=n]`.

mod boundary;
mod breakpoints;
mod chow;
mod confint;
mod fstats;

pub use boundary::{
    boundary, boundary_with, null_distribution, sup_f_pvalue, sup_f_pvalue_with, BoundarySpec,
    Criterion, MonteCarloConfig, NullDistribution, SupFPValue, DEFAULT_SEED, GRID_POINTS,
    REPLICATIONS,
};
pub use breakpoints::{
    exhaustive_partition, optimal_breakpoints, optimal_partition, BreakpointSet, Partition,
    SegmentRss,
};
pub use chow::{chow_test, ChowResult};
pub use confint::{argmax_cdf, argmax_quantile, breakpoint_confint, ArgmaxShape, BreakInterval};
pub use fstats::{f_stats, f_stats_with, FstatsPath, DEFAULT_TRIMMING};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ols::{fit, DesignMatrix, OlsFit};

/// Regression fitted within each segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegressionModel {
    /// Intercept only.
    Level,
    /// Intercept and the observation index.
    Trend,
}

impl RegressionModel {
    pub fn regressors(self) -> usize {
        match self {
            RegressionModel::Level => 1,
            RegressionModel::Trend => 2,
        }
    }

    /// Design for observations `lo..=hi` (1-based), using the global
    /// observation index as the time regressor.
    pub(crate) fn design(self, lo: usize, hi: usize) -> DesignMatrix {
        let len = hi + 1 - lo;
        let x = DesignMatrix::new().with_column("const", vec![1.0; len]);
        match self {
            RegressionModel::Level => x,
            RegressionModel::Trend => x.with_column("time", (lo..=hi).map(|t| t as f64).collect()),
        }
    }

    pub(crate) fn fit_segment(self, y: &[f64], lo: usize, hi: usize) -> Result<OlsFit> {
        fit(&self.design(lo, hi), &y[lo - 1..hi])
    }
}

impl std::str::FromStr for RegressionModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "level" | "mean" | "const" => Ok(RegressionModel::Level),
            "trend" | "linear" => Ok(RegressionModel::Trend),
            other => Err(Error::Invalid(format!(
                "unknown regression model `{other}`"
            ))),
        }
    }
}

impl std::fmt::Display for RegressionModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RegressionModel::Level => "level",
            RegressionModel::Trend => "trend",
        })
    }
}

/// The three supported significance levels.
pub(crate) fn check_alpha(alpha: f64) -> Result<f64> {
    [0.01, 0.05, 0.10]
        .into_iter()
        .find(|a| (a - alpha).abs() < 1e-12)
        .ok_or(Error::UnsupportedAlpha(alpha))
}
