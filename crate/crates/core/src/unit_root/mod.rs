//! Augmented Dickey-Fuller and KPSS tests across three deterministic
//! specifications.

mod adf;
mod kpss;
mod tables;

pub use adf::{adf_stat, adf_test, AdfReport, AdfRow, AdfSpecBlock};
pub use kpss::{kpss_test, long_run_variance, KpssLag, KpssReport, KpssRow, LRV_FLOOR};
pub use tables::{
    df_critical_values, interpolate_df_pvalue, interpolate_kpss_pvalue, kpss_critical_values,
    PBoundary, PValue, DF_PROBS, KPSS_PROBS,
};

use serde::Serialize;

/// Deterministic terms in the test regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrendSpec {
    /// Neither intercept nor trend.
    None,
    /// Intercept only.
    Drift,
    /// Intercept and linear time trend.
    DriftTrend,
}

impl TrendSpec {
    pub const ALL: [TrendSpec; 3] = [TrendSpec::None, TrendSpec::Drift, TrendSpec::DriftTrend];

    pub fn deterministic_terms(self) -> usize {
        match self {
            TrendSpec::None => 0,
            TrendSpec::Drift => 1,
            TrendSpec::DriftTrend => 2,
        }
    }

    pub fn type_number(self) -> usize {
        self.deterministic_terms() + 1
    }

    pub fn description(self) -> &'static str {
        match self {
            TrendSpec::None => "no drift no trend",
            TrendSpec::Drift => "with drift, no trend",
            TrendSpec::DriftTrend => "with drift and trend",
        }
    }
}

impl std::str::FromStr for TrendSpec {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "none" => Ok(TrendSpec::None),
            "drift" => Ok(TrendSpec::Drift),
            "drift_trend" | "trend" => Ok(TrendSpec::DriftTrend),
            other => Err(crate::Error::Invalid(format!(
                "unknown trend spec `{other}`"
            ))),
        }
    }
}
