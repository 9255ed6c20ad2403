//! Ordinary least squares via Householder QR.
//!
//! Every test statistic in the crate is built on [`fit`]. Normal equations
//! are avoided: Dickey-Fuller regressions on near-unit-root data are badly
//! conditioned and the t-ratio on the lagged level is sensitive to it.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Relative tolerance on |R_jj| / max |R_ii| below which column j is
/// treated as linearly dependent.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Regressors, column-major, with labels used in error messages.
#[derive(Debug, Clone)]
pub struct DesignMatrix {
    columns: Vec<Vec<f64>>,
    labels: Vec<String>,
}

impl DesignMatrix {
    pub fn new() -> Self {
        DesignMatrix {
            columns: Vec::new(),
            labels: Vec::new(),
        }
    }

    pub fn with_column(mut self, label: impl Into<String>, values: Vec<f64>) -> Self {
        self.push_column(label, values);
        self
    }

    pub fn push_column(&mut self, label: impl Into<String>, values: Vec<f64>) {
        self.labels.push(label.into());
        self.columns.push(values);
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn validate(&self) -> Result<()> {
        let n = self.rows();
        if self.cols() == 0 {
            return Err(Error::DimensionMismatch(
                "design matrix has no columns".into(),
            ));
        }
        for (label, col) in self.labels.iter().zip(&self.columns) {
            if col.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "column `{label}` has {} rows, expected {n}",
                    col.len()
                )));
            }
            if col.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite(format!("design column `{label}`")));
            }
        }
        if n < self.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{n} observations for {} regressors",
                self.cols()
            )));
        }
        Ok(())
    }

    fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows(), self.cols(), |i, j| self.columns[j][i])
    }
}

impl Default for DesignMatrix {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OlsFit {
    pub coefficients: Vec<f64>,
    pub residuals: Vec<f64>,
    pub rss: f64,
    pub sigma2: f64,
    pub standard_errors: Vec<f64>,
    pub t_stats: Vec<f64>,
    pub df: usize,
}

pub fn fit(x: &DesignMatrix, y: &[f64]) -> Result<OlsFit> {
    x.validate()?;
    let (n, k) = (x.rows(), x.cols());
    if y.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "response has {} rows, design has {n}",
            y.len()
        )));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("response".into()));
    }

    let qr = x.to_matrix().qr();
    let r = qr.r();
    let diag_max = (0..k).map(|j| r[(j, j)].abs()).fold(0.0, f64::max);
    for j in 0..k {
        if diag_max == 0.0 || r[(j, j)].abs() <= RANK_TOLERANCE * diag_max {
            return Err(Error::RankDeficient {
                column: x.labels[j].clone(),
            });
        }
    }

    let yv = DVector::from_column_slice(y);
    let qty = qr.q().transpose() * &yv;
    let beta = r
        .solve_upper_triangular(&qty)
        .ok_or_else(|| Error::RankDeficient {
            column: x.labels[k - 1].clone(),
        })?;

    let residuals: Vec<f64> = y
        .iter()
        .enumerate()
        .map(|(i, yi)| yi - (0..k).map(|j| x.columns[j][i] * beta[j]).sum::<f64>())
        .collect();
    let rss: f64 = residuals.iter().map(|e| e * e).sum();
    let df = n - k;
    let sigma2 = if df > 0 { rss / df as f64 } else { f64::NAN };

    // diag((X'X)^-1) = squared row norms of R^-1
    let r_inv = r
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::RankDeficient {
            column: x.labels[k - 1].clone(),
        })?;
    let standard_errors: Vec<f64> = (0..k)
        .map(|j| (sigma2 * r_inv.row(j).norm_squared()).sqrt())
        .collect();
    let coefficients: Vec<f64> = beta.iter().copied().collect();
    let t_stats = coefficients
        .iter()
        .zip(&standard_errors)
        .map(|(b, se)| b / se)
        .collect();

    Ok(OlsFit {
        coefficients,
        residuals,
        rss,
        sigma2,
        standard_errors,
        t_stats,
        df,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn mean_fit() {
        let x = DesignMatrix::new().with_column("const", vec![1.0; 3]);
        let f = fit(&x, &[1.0, 2.0, 3.0]).unwrap();
        assert_relative_eq!(f.coefficients[0], 2.0, epsilon = 1e-14);
        assert_relative_eq!(f.rss, 2.0, epsilon = 1e-13);
        assert_eq!(f.df, 2);
        assert_relative_eq!(f.sigma2, 1.0, epsilon = 1e-13);
        assert_relative_eq!(f.standard_errors[0], (1.0f64 / 3.0).sqrt(), epsilon = 1e-13);
    }

    #[test]
    fn exact_linear_fit() {
        let t: Vec<f64> = (1..=20).map(f64::from).collect();
        let y: Vec<f64> = t.iter().map(|t| 3.0 - 0.25 * t).collect();
        let x = DesignMatrix::new()
            .with_column("const", vec![1.0; 20])
            .with_column("trend", t);
        let f = fit(&x, &y).unwrap();
        assert!(f.residuals.iter().all(|r| r.abs() < 1e-9));
        assert!(f.rss < 1e-16);
        assert_relative_eq!(f.coefficients[1], -0.25, epsilon = 1e-12);
    }

    #[test]
    fn rank_deficiency_names_first_dependent_column() {
        let a: Vec<f64> = (0..10).map(f64::from).collect();
        let b: Vec<f64> = a.iter().map(|v| 2.0 * v).collect();
        let x = DesignMatrix::new()
            .with_column("const", vec![1.0; 10])
            .with_column("a", a)
            .with_column("twice_a", b)
            .with_column("ones_again", vec![1.0; 10]);
        match fit(&x, &[0.0; 10]) {
            Err(Error::RankDeficient { column }) => assert_eq!(column, "twice_a"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch() {
        let x = DesignMatrix::new().with_column("const", vec![1.0; 3]);
        assert!(matches!(
            fit(&x, &[1.0, 2.0]),
            Err(Error::DimensionMismatch(_))
        ));
        let wide = DesignMatrix::new()
            .with_column("a", vec![1.0])
            .with_column("b", vec![2.0]);
        assert!(matches!(
            fit(&wide, &[1.0]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn zero_response() {
        let x = DesignMatrix::new()
            .with_column("const", vec![1.0; 5])
            .with_column("t", vec![1.0, 2.0, 3.0, 4.0, 5.0]);
        let f = fit(&x, &[0.0; 5]).unwrap();
        assert!(f.coefficients.iter().all(|&b| b == 0.0));
        assert_eq!(f.rss, 0.0);
    }
}
