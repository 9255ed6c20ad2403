//! Critical-value tables and p-value interpolation.

use serde::Serialize;

use super::TrendSpec;

/// A p-value, possibly clamped to the edge of a table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PValue {
    pub value: f64,
    pub boundary: Option<PBoundary>,
}

/// Which side a clamped p-value was cut at: the true value is at most
/// (`AtMost`) or at least (`AtLeast`) the reported one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PBoundary {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

impl PBoundary {
    pub fn symbol(self) -> &'static str {
        match self {
            PBoundary::AtMost => "<=",
            PBoundary::AtLeast => ">=",
        }
    }
}

/// Tabulated sample sizes; the last row is the asymptotic one.
const DF_SIZES: [usize; 6] = [25, 50, 100, 250, 500, usize::MAX];

pub const DF_PROBS: [f64; 8] = [0.01, 0.025, 0.05, 0.10, 0.90, 0.95, 0.975, 0.99];

// Dickey-Fuller t-ratio percentiles (Fuller 1976, Table 8.5.2), one row
// per sample size in DF_SIZES.
const DF_NONE: [[f64; 8]; 6] = [
    [-2.66, -2.26, -1.95, -1.60, 0.92, 1.33, 1.70, 2.16],
    [-2.62, -2.25, -1.95, -1.61, 0.91, 1.31, 1.66, 2.08],
    [-2.60, -2.24, -1.95, -1.61, 0.90, 1.29, 1.64, 2.03],
    [-2.58, -2.23, -1.95, -1.62, 0.89, 1.29, 1.63, 2.01],
    [-2.58, -2.23, -1.95, -1.62, 0.89, 1.28, 1.62, 2.00],
    [-2.58, -2.23, -1.95, -1.62, 0.89, 1.28, 1.62, 2.00],
];

#[allow(clippy::approx_constant)]
const DF_DRIFT: [[f64; 8]; 6] = [
    [-3.75, -3.33, -3.00, -2.63, -0.37, 0.00, 0.34, 0.72],
    [-3.58, -3.22, -2.93, -2.60, -0.40, -0.03, 0.29, 0.66],
    [-3.51, -3.17, -2.89, -2.58, -0.42, -0.05, 0.26, 0.63],
    [-3.46, -3.14, -2.88, -2.57, -0.42, -0.06, 0.24, 0.62],
    [-3.44, -3.13, -2.87, -2.57, -0.43, -0.07, 0.24, 0.61],
    [-3.43, -3.12, -2.86, -2.57, -0.44, -0.07, 0.23, 0.60],
];

const DF_TREND: [[f64; 8]; 6] = [
    [-4.38, -3.95, -3.60, -3.24, -1.14, -0.80, -0.50, -0.15],
    [-4.15, -3.80, -3.50, -3.18, -1.19, -0.87, -0.58, -0.24],
    [-4.04, -3.73, -3.45, -3.15, -1.22, -0.90, -0.62, -0.28],
    [-3.99, -3.69, -3.43, -3.13, -1.23, -0.92, -0.64, -0.31],
    [-3.98, -3.68, -3.42, -3.13, -1.24, -0.93, -0.65, -0.32],
    [-3.96, -3.66, -3.41, -3.12, -1.25, -0.94, -0.66, -0.33],
];

/// Dickey-Fuller critical values for `spec`, taken from the row of the
/// smallest tabulated sample size that is at least `t`.
pub fn df_critical_values(spec: TrendSpec, t: usize) -> [f64; 8] {
    let row = DF_SIZES
        .iter()
        .position(|&s| s >= t)
        .unwrap_or(DF_SIZES.len() - 1);
    match spec {
        TrendSpec::None => DF_NONE[row],
        TrendSpec::Drift => DF_DRIFT[row],
        TrendSpec::DriftTrend => DF_TREND[row],
    }
}

/// Left-tail p-value of an ADF t-ratio, clamped to [0.01, 0.99].
pub fn interpolate_df_pvalue(stat: f64, spec: TrendSpec, t: usize) -> PValue {
    interpolate(stat, &df_critical_values(spec, t), &DF_PROBS)
}

pub const KPSS_PROBS: [f64; 4] = [0.10, 0.05, 0.025, 0.01];

/// Upper-tail critical values of the KPSS statistic.
///
/// Drift and trend rows are the published level- and trend-stationarity
/// tables. The zero-mean row holds quantiles of ∫₀¹ W(r)² dr, obtained by
/// Imhof inversion of its eigen-expansion.
pub fn kpss_critical_values(spec: TrendSpec) -> [f64; 4] {
    match spec {
        TrendSpec::None => [1.196, 1.656, 2.135, 2.787],
        TrendSpec::Drift => [0.347, 0.463, 0.574, 0.739],
        TrendSpec::DriftTrend => [0.119, 0.146, 0.176, 0.216],
    }
}

/// Upper-tail p-value of a KPSS statistic, clamped to [0.01, 0.10].
pub fn interpolate_kpss_pvalue(stat: f64, spec: TrendSpec) -> PValue {
    interpolate(stat, &kpss_critical_values(spec), &KPSS_PROBS)
}

/// Piecewise-linear map from statistic to probability through the knots
/// `(crit[i], probs[i])`; `crit` must be increasing.
fn interpolate(stat: f64, crit: &[f64], probs: &[f64]) -> PValue {
    let last = crit.len() - 1;
    let clamp = |i: usize| {
        let boundary = if probs[i] <= probs[last - i] {
            PBoundary::AtMost
        } else {
            PBoundary::AtLeast
        };
        PValue {
            value: probs[i],
            boundary: Some(boundary),
        }
    };
    if stat < crit[0] {
        return clamp(0);
    }
    if stat > crit[last] {
        return clamp(last);
    }
    let i = crit
        .windows(2)
        .position(|w| stat <= w[1])
        .unwrap_or(last - 1);
    let (x0, x1) = (crit[i], crit[i + 1]);
    let (p0, p1) = (probs[i], probs[i + 1]);
    let value = if stat == x1 {
        p1
    } else {
        p0 + (stat - x0) / (x1 - x0) * (p1 - p0)
    };
    PValue {
        value,
        boundary: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn df_clamps_with_flags() {
        let lo = interpolate_df_pvalue(-10.0, TrendSpec::Drift, 241);
        assert_eq!(lo.value, 0.01);
        assert_eq!(lo.boundary, Some(PBoundary::AtMost));
        let hi = interpolate_df_pvalue(10.0, TrendSpec::Drift, 241);
        assert_eq!(hi.value, 0.99);
        assert_eq!(hi.boundary, Some(PBoundary::AtLeast));
    }

    #[test]
    fn df_knots_are_exact() {
        for spec in TrendSpec::ALL {
            let crit = df_critical_values(spec, 241);
            for (c, p) in crit.iter().zip(DF_PROBS) {
                let pv = interpolate_df_pvalue(*c, spec, 241);
                assert_eq!(pv.value, p);
                assert_eq!(pv.boundary, None);
            }
        }
    }

    #[test]
    fn df_row_selection() {
        assert_eq!(df_critical_values(TrendSpec::DriftTrend, 241)[0], -3.99);
        assert_eq!(df_critical_values(TrendSpec::DriftTrend, 250)[0], -3.99);
        assert_eq!(df_critical_values(TrendSpec::DriftTrend, 251)[0], -3.98);
        assert_eq!(df_critical_values(TrendSpec::DriftTrend, 10)[0], -4.38);
        assert_eq!(df_critical_values(TrendSpec::DriftTrend, 100_000)[0], -3.96);
    }

    #[test]
    fn df_between_knots() {
        // (-2.09207 + 2.23) / 0.28 of the way from 0.025 to 0.05
        let pv = interpolate_df_pvalue(-2.09207, TrendSpec::None, 241);
        assert!((pv.value - 0.037_315).abs() < 1e-5, "{pv:?}");
        assert!((pv.value - 0.0378).abs() < 0.03);
    }

    #[test]
    fn kpss_clamps() {
        let pv = interpolate_kpss_pvalue(2.7, TrendSpec::Drift);
        assert_eq!((pv.value, pv.boundary), (0.01, Some(PBoundary::AtMost)));
        let pv = interpolate_kpss_pvalue(0.0, TrendSpec::DriftTrend);
        assert_eq!((pv.value, pv.boundary), (0.10, Some(PBoundary::AtLeast)));
        let pv = interpolate_kpss_pvalue(0.463, TrendSpec::Drift);
        assert_eq!((pv.value, pv.boundary), (0.05, None));
    }

    #[test]
    fn tables_are_monotone() {
        for spec in TrendSpec::ALL {
            for t in [25, 50, 100, 250, 500, 1000] {
                let c = df_critical_values(spec, t);
                assert!(c.windows(2).all(|w| w[0] < w[1]));
            }
            let k = kpss_critical_values(spec);
            assert!(k.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
