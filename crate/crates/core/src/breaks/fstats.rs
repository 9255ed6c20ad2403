use serde::Serialize;

use super::chow::chow_f;
use super::RegressionModel;
use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Fraction of observations that must remain on each side of a candidate.
pub const DEFAULT_TRIMMING: f64 = 0.10;

/// Chow F statistics over a window of candidate break points.
///
/// The path deliberately exposes no "break location": the position where
/// the statistic first or most exceeds a boundary depends on the window the
/// analyst chose and is not an estimate of when a break happened.
/// [`super::optimal_breakpoints`] is the estimator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FstatsPath {
    pub from: usize,
    pub to: usize,
    pub n: usize,
    pub k: usize,
    pub model: RegressionModel,
    pub trimming: f64,
    pub f_values: Vec<f64>,
    pub sup_f: f64,
    pub ave_f: f64,
}

impl FstatsPath {
    pub fn candidates(&self) -> std::ops::RangeInclusive<usize> {
        self.from..=self.to
    }

    /// `(candidate, F)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.candidates().zip(self.f_values.iter().copied())
    }

    /// Window as fractions of the sample, the interval over which the
    /// limiting null process is evaluated.
    pub fn window_fractions(&self) -> (f64, f64) {
        (
            self.from as f64 / self.n as f64,
            self.to as f64 / self.n as f64,
        )
    }
}

/// F statistics for candidates `from..=to` with the default 10% trimming.
pub fn f_stats(
    series: &TimeSeries,
    model: RegressionModel,
    from: usize,
    to: usize,
) -> Result<FstatsPath> {
    f_stats_with(series, model, from, to, DEFAULT_TRIMMING)
}

/// As [`f_stats`] with an explicit trimming fraction; 0 disables the check.
pub fn f_stats_with(
    series: &TimeSeries,
    model: RegressionModel,
    from: usize,
    to: usize,
    trimming: f64,
) -> Result<FstatsPath> {
    let y = series.values();
    let n = y.len();
    let k = model.regressors();
    if !(0.0..0.5).contains(&trimming) {
        return Err(Error::Invalid(format!(
            "trimming {trimming} must lie in [0, 0.5)"
        )));
    }
    if from > to || to >= n {
        return Err(Error::Invalid(format!(
            "candidate window [{from}, {to}] is empty or outside 1..{n}"
        )));
    }
    let min_obs = (trimming * n as f64 - 1e-9).ceil() as usize;
    if from < min_obs || to > n - min_obs {
        return Err(Error::Trimming {
            from,
            to,
            min_obs,
            trimming,
        });
    }
    let f_values = (from..=to)
        .map(|i| {
            chow_f(y, model, i).map(|(f, ..)| f).map_err(|e| match e {
                e @ Error::SegmentTooSmall { .. } => e,
                other => Error::Estimation {
                    candidate: i,
                    reason: other.to_string(),
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sup_f = f_values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ave_f = f_values.iter().sum::<f64>() / f_values.len() as f64;
    Ok(FstatsPath {
        from,
        to,
        n,
        k,
        model,
        trimming,
        f_values,
        sup_f,
        ave_f,
    })
}
