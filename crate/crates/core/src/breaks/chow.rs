use serde::Serialize;
use statrs::distribution::{ContinuousCDF, FisherSnedecor};

use super::RegressionModel;
use crate::error::{Error, Result};
use crate::series::TimeSeries;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChowResult {
    pub break_index: usize,
    pub model: RegressionModel,
    pub f_stat: f64,
    pub df_num: usize,
    pub df_den: usize,
    pub p_value: f64,
    pub rss_pooled: f64,
    pub rss_segments: (f64, f64),
}

/// F statistic and residual sums for a split after observation `point`.
pub(crate) fn chow_f(
    y: &[f64],
    model: RegressionModel,
    point: usize,
) -> Result<(f64, f64, f64, f64)> {
    let n = y.len();
    let k = model.regressors();
    if point < k + 1 {
        return Err(Error::SegmentTooSmall {
            segment: "first",
            len: point,
            needed: k + 1,
        });
    }
    if n < point + k + 1 {
        return Err(Error::SegmentTooSmall {
            segment: "second",
            len: n.saturating_sub(point),
            needed: k + 1,
        });
    }
    let pooled = model.fit_segment(y, 1, n)?.rss;
    let rss1 = model.fit_segment(y, 1, point)?.rss;
    let rss2 = model.fit_segment(y, point + 1, n)?.rss;
    let unrestricted = rss1 + rss2;
    let scale: f64 = y.iter().map(|v| v * v).sum();
    if unrestricted <= 1e-24 * scale {
        return Err(Error::DegenerateSegments);
    }
    let df_den = (n - 2 * k) as f64;
    let f = ((pooled - unrestricted) / k as f64) / (unrestricted / df_den);
    Ok((f.max(0.0), pooled, rss1, rss2))
}

/// Chow test for a known break after observation `point`.
pub fn chow_test(series: &TimeSeries, model: RegressionModel, point: usize) -> Result<ChowResult> {
    let y = series.values();
    let (f_stat, rss_pooled, rss1, rss2) = chow_f(y, model, point)?;
    let k = model.regressors();
    let df_den = y.len() - 2 * k;
    let dist = FisherSnedecor::new(k as f64, df_den as f64)
        .map_err(|e| Error::Invalid(format!("F distribution: {e}")))?;
    Ok(ChowResult {
        break_index: point,
        model,
        f_stat,
        df_num: k,
        df_den,
        p_value: dist.sf(f_stat),
        rss_pooled,
        rss_segments: (rss1, rss2),
    })
}
