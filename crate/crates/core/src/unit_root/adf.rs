use serde::Serialize;

use super::tables::{interpolate_df_pvalue, PValue};
use super::TrendSpec;
use crate::error::{Error, Result};
use crate::ols::{fit, DesignMatrix};
use crate::series::TimeSeries;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdfRow {
    pub lag: usize,
    pub statistic: f64,
    pub p_value: PValue,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdfSpecBlock {
    pub spec: TrendSpec,
    pub rows: Vec<AdfRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdfReport {
    pub t: usize,
    pub nlag: usize,
    pub specs: Vec<AdfSpecBlock>,
}

impl AdfReport {
    pub fn block(&self, spec: TrendSpec) -> &AdfSpecBlock {
        self.specs
            .iter()
            .find(|b| b.spec == spec)
            .expect("report holds every spec")
    }

    pub fn cell(&self, spec: TrendSpec, lag: usize) -> &AdfRow {
        &self.block(spec).rows[lag]
    }
}

/// t-ratio on the lagged level in
/// Δy_t = ρ y_{t-1} + Σ_{j=1..lag} γ_j Δy_{t-j} [+ α] [+ δ t] + e_t,
/// estimated on t = lag+2 ..= T for every spec.
pub fn adf_stat(series: &TimeSeries, spec: TrendSpec, lag: usize) -> Result<f64> {
    let y = series.values();
    let t_len = y.len();
    let regressors = 1 + lag + spec.deterministic_terms();
    let needed_eff = (spec.deterministic_terms() + 3).max(regressors + 1);
    let n_eff = t_len.saturating_sub(1 + lag);
    if n_eff < needed_eff {
        return Err(Error::TooShort {
            needed: needed_eff + 1 + lag,
            got: t_len,
        });
    }
    let dy: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
    // dy[i] = y[i+1] - y[i] is Δy at 1-based time i+2; the sample starts at
    // time lag+2, i.e. dy index lag.
    let rows = lag..dy.len();
    let response: Vec<f64> = rows.clone().map(|i| dy[i]).collect();

    let mut x = DesignMatrix::new();
    x.push_column("y_lag1", rows.clone().map(|i| y[i]).collect());
    for j in 1..=lag {
        x.push_column(
            format!("dy_lag{j}"),
            rows.clone().map(|i| dy[i - j]).collect(),
        );
    }
    if spec != TrendSpec::None {
        x.push_column("const", vec![1.0; n_eff]);
    }
    if spec == TrendSpec::DriftTrend {
        x.push_column("trend", rows.clone().map(|i| (i + 2) as f64).collect());
    }
    let f = fit(&x, &response)?;
    let stat = f.t_stats[0];
    if !stat.is_finite() {
        return Err(Error::NonFinite("ADF statistic (exact fit)".into()));
    }
    Ok(stat)
}

/// ADF statistics and p-values for lags 0..nlag under all three specs.
pub fn adf_test(series: &TimeSeries, nlag: usize) -> Result<AdfReport> {
    if nlag == 0 {
        return Err(Error::Invalid("nlag must be at least 1".into()));
    }
    let t = series.len();
    let specs = TrendSpec::ALL
        .iter()
        .map(|&spec| {
            let rows = (0..nlag)
                .map(|lag| {
                    let statistic = adf_stat(series, spec, lag)?;
                    Ok(AdfRow {
                        lag,
                        statistic,
                        p_value: interpolate_df_pvalue(statistic, spec, t),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AdfSpecBlock { spec, rows })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AdfReport { t, nlag, specs })
}
