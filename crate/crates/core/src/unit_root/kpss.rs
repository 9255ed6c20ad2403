use serde::Serialize;

use super::tables::{interpolate_kpss_pvalue, PValue};
use super::TrendSpec;
use crate::error::{Error, Result};
use crate::lag::LagRule;
use crate::ols::{fit, DesignMatrix};
use crate::series::TimeSeries;

/// Lower bound returned by [`long_run_variance`].
pub const LRV_FLOOR: f64 = 1e-300;

/// Bartlett-kernel long-run variance
/// s²(l) = (1/T) Σ e_t² + (2/T) Σ_{j=1..l} (1 − j/(l+1)) Σ_{t>j} e_t e_{t−j}.
pub fn long_run_variance(residuals: &[f64], lag: usize) -> f64 {
    let n = residuals.len();
    if n == 0 {
        return LRV_FLOOR;
    }
    let nf = n as f64;
    let mut s2 = residuals.iter().map(|e| e * e).sum::<f64>() / nf;
    for j in 1..=lag.min(n - 1) {
        let w = 1.0 - j as f64 / (lag as f64 + 1.0);
        let gamma: f64 = residuals[j..]
            .iter()
            .zip(residuals)
            .map(|(a, b)| a * b)
            .sum();
        s2 += 2.0 * w * gamma / nf;
    }
    s2.max(LRV_FLOOR)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KpssLag {
    Fixed(usize),
    Rule(LagRule),
}

impl Default for KpssLag {
    fn default() -> Self {
        KpssLag::Rule(LagRule::KpssShort)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KpssRow {
    pub spec: TrendSpec,
    pub statistic: f64,
    pub p_value: PValue,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KpssReport {
    pub t: usize,
    pub lag: usize,
    pub specs: Vec<KpssRow>,
}

impl KpssReport {
    pub fn row(&self, spec: TrendSpec) -> &KpssRow {
        self.specs
            .iter()
            .find(|r| r.spec == spec)
            .expect("report holds every spec")
    }
}

fn detrended(y: &[f64], spec: TrendSpec) -> Result<Vec<f64>> {
    let n = y.len();
    match spec {
        TrendSpec::None => Ok(y.to_vec()),
        TrendSpec::Drift => {
            let x = DesignMatrix::new().with_column("const", vec![1.0; n]);
            Ok(fit(&x, y)?.residuals)
        }
        TrendSpec::DriftTrend => {
            let x = DesignMatrix::new()
                .with_column("const", vec![1.0; n])
                .with_column("trend", (1..=n).map(|t| t as f64).collect());
            Ok(fit(&x, y)?.residuals)
        }
    }
}

/// KPSS statistic T⁻² Σ S_t² / s²(lag) for each spec, with p-values from
/// the spec's critical-value table.
pub fn kpss_test(series: &TimeSeries, lag: KpssLag) -> Result<KpssReport> {
    let y = series.values();
    let t = y.len();
    let lag = match lag {
        KpssLag::Fixed(l) => l,
        KpssLag::Rule(rule) => rule.lag(t),
    };
    if t <= lag + 2 {
        return Err(Error::TooShort {
            needed: lag + 3,
            got: t,
        });
    }
    let specs = TrendSpec::ALL
        .iter()
        .map(|&spec| {
            let mut e = detrended(y, spec)?;
            // An exact fit leaves round-off whose scaled partial sums are
            // meaningless; treat it as zero.
            let scale = y.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            if e.iter().all(|r| r.abs() <= 1e-12 * scale) {
                e.iter_mut().for_each(|r| *r = 0.0);
            }
            let mut partial = 0.0;
            let mut sum_sq = 0.0;
            for v in &e {
                partial += v;
                sum_sq += partial * partial;
            }
            let statistic = sum_sq / (t as f64 * t as f64) / long_run_variance(&e, lag);
            Ok(KpssRow {
                spec,
                statistic,
                p_value: interpolate_kpss_pvalue(statistic, spec),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KpssReport { t, lag, specs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Period;
    use crate::unit_root::PBoundary;

    #[test]
    fn lrv_lag_zero_is_mean_square() {
        let e = [1.0, -2.0, 3.0];
        assert!((long_run_variance(&e, 0) - 14.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn lrv_alternating_hand_value() {
        let v = long_run_variance(&[1.0, -1.0, 1.0, -1.0], 1);
        assert!((v - 0.25).abs() < 1e-15);
    }

    #[test]
    fn lrv_floor() {
        assert_eq!(long_run_variance(&[0.0; 8], 2), LRV_FLOOR);
    }

    #[test]
    fn exact_trend_has_zero_statistic() {
        let s = TimeSeries::new(
            "t",
            Period::month(2000, 1).unwrap(),
            (1..=50).map(f64::from).collect(),
        )
        .unwrap();
        let r = kpss_test(&s, KpssLag::Fixed(3)).unwrap();
        let row = r.row(TrendSpec::DriftTrend);
        assert!(row.statistic.abs() < 1e-6, "{}", row.statistic);
        assert_eq!(row.p_value.value, 0.10);
        assert_eq!(row.p_value.boundary, Some(PBoundary::AtLeast));
    }

    #[test]
    fn rule_lag_resolves() {
        let s = TimeSeries::new(
            "x",
            Period::month(2000, 1).unwrap(),
            (0..241).map(|i| ((i * 37) % 11) as f64).collect(),
        )
        .unwrap();
        assert_eq!(kpss_test(&s, KpssLag::default()).unwrap().lag, 3);
    }

    #[test]
    fn too_short() {
        let s = TimeSeries::new("x", Period::year(2000), vec![1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(
            kpss_test(&s, KpssLag::Fixed(1)),
            Err(Error::TooShort { .. })
        ));
    }
}
