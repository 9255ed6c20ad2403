//! Confidence intervals for break dates from the limiting distribution of
//! the break-date estimator.
//!
//! Write v = k̂ − k₀ in observations. Asymptotically v is the argmax of a
//! two-sided Brownian motion with drift,
//!
//! ```text
//! Λ(v) = G₁(−v) − |v|·Q₁/2   (v ≤ 0, pre-break segment)
//! Λ(v) = G₂(v)  −  v ·Q₂/2   (v > 0, post-break segment)
//! ```
//!
//! where δ is the coefficient shift, Qᵢ stands for δ'Qᵢδ with Qᵢ the
//! segment's regressor second-moment matrix, and Gᵢ is a Brownian motion
//! with variance δ'Ωᵢδ per observation. The supremum of each side is
//! exponential with rate ρᵢ = δ'Qᵢδ / δ'Ωᵢδ, which yields a closed form for
//! P(v ≤ −x) in terms of normal tail probabilities.

use serde::Serialize;

use super::{BreakpointSet, RegressionModel};
use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Drift/variance of the two sides of the limiting process, per
/// observation of displacement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArgmaxShape {
    /// δ'Q₁δ and δ'Ω₁δ for the segment before the break.
    pub q_before: f64,
    pub omega_before: f64,
    /// δ'Q₂δ and δ'Ω₂δ for the segment after the break.
    pub q_after: f64,
    pub omega_after: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BreakInterval {
    pub lower: usize,
    pub point: usize,
    pub upper: usize,
    pub level: f64,
}

/// ln Φ(z), accurate far into the lower tail.
fn log_norm_cdf(z: f64) -> f64 {
    if z > -20.0 {
        (0.5 * statrs::function::erf::erfc(-z / std::f64::consts::SQRT_2)).ln()
    } else {
        let z2 = z * z;
        let series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
        -0.5 * z2 - (-z).ln() - 0.5 * (2.0 * std::f64::consts::PI).ln() + series.ln()
    }
}

fn norm_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// E[exp(Z(t) − (1+q)·max_{s≤t} Z(s))] for Z(s) = W(s) − s/2, in closed form.
fn tilted_moment(q: f64, t: f64) -> f64 {
    let st = t.sqrt();
    let phi_half = log_norm_cdf(-0.5 * st).exp();
    if q < 1e-9 {
        return (2.0 + 0.5 * t) * phi_half - st * norm_pdf(0.5 * st);
    }
    let tilted =
        ((1.0 + 2.0 * q).ln() + 0.5 * q * (1.0 + q) * t + log_norm_cdf(-(0.5 + q) * st)).exp();
    (tilted - phi_half) / q
}

/// Probability that the argmax lies on a side at distance at least `t`
/// (in standardised time), when the other side's supremum has relative
/// rate `q`.
fn one_side_tail(t: f64, q: f64) -> f64 {
    if t <= 0.0 {
        return 1.0 - 1.0 / (1.0 + q);
    }
    let p = tilted_moment(0.0, t) - tilted_moment(q, t) / (1.0 + q);
    p.clamp(0.0, 1.0)
}

/// CDF of k̂ − k₀ (in observations) under the limiting law.
pub fn argmax_cdf(x: f64, shape: &ArgmaxShape) -> f64 {
    let rate_before = shape.q_before / shape.omega_before;
    let rate_after = shape.q_after / shape.omega_after;
    if x < 0.0 {
        let t = shape.q_before * shape.q_before / shape.omega_before * (-x);
        one_side_tail(t, rate_after / rate_before)
    } else {
        let t = shape.q_after * shape.q_after / shape.omega_after * x;
        1.0 - one_side_tail(t, rate_before / rate_after)
    }
}

/// Quantile of [`argmax_cdf`] by bisection to an absolute tolerance of 1e-8.
pub fn argmax_quantile(prob: f64, shape: &ArgmaxShape) -> f64 {
    let (mut lo, mut hi) = (-1.0, 1.0);
    while argmax_cdf(lo, shape) > prob {
        lo *= 2.0;
    }
    while argmax_cdf(hi, shape) < prob {
        hi *= 2.0;
    }
    while hi - lo > 1e-8 {
        let mid = 0.5 * (lo + hi);
        if argmax_cdf(mid, shape) < prob {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

struct SegmentMoments {
    coefficients: Vec<f64>,
    // X'X / n_s, row-major k × k
    q: Vec<f64>,
    sigma2: f64,
}

fn segment_moments(
    y: &[f64],
    model: RegressionModel,
    lo: usize,
    hi: usize,
) -> Result<SegmentMoments> {
    let f = model.fit_segment(y, lo, hi)?;
    let len = (hi + 1 - lo) as f64;
    let x = model.design(lo, hi);
    let k = x.cols();
    let mut q = vec![0.0; k * k];
    for a in 0..k {
        for b in 0..k {
            q[a * k + b] = x
                .column(a)
                .iter()
                .zip(x.column(b))
                .map(|(u, v)| u * v)
                .sum::<f64>()
                / len;
        }
    }
    Ok(SegmentMoments {
        coefficients: f.coefficients,
        q,
        sigma2: f.rss / len,
    })
}

fn quad_form(delta: &[f64], m: &[f64]) -> f64 {
    let k = delta.len();
    (0..k)
        .map(|a| {
            (0..k)
                .map(|b| delta[a] * m[a * k + b] * delta[b])
                .sum::<f64>()
        })
        .sum()
}

/// Intervals at level 1 − alpha for the selected breaks, using the
/// regressor moments and residual variance of each break's two adjacent
/// segments. Bounds are clipped to [1, n].
pub fn breakpoint_confint(
    set: &BreakpointSet,
    series: &TimeSeries,
    alpha: f64,
) -> Result<Vec<BreakInterval>> {
    if set.selected_m == 0 || set.break_indices.is_empty() {
        return Err(Error::Invalid(
            "no breaks selected; nothing to bracket".into(),
        ));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Invalid(format!("alpha {alpha} outside (0, 1)")));
    }
    let y = series.values();
    let n = y.len();
    if n != set.n {
        return Err(Error::DimensionMismatch(format!(
            "breakpoints were fitted on {} observations, series has {n}",
            set.n
        )));
    }
    let scale = y
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let negligible = (1e-12 * scale).powi(2);
    let a2 = alpha / 2.0;

    let mut bounds = vec![0];
    bounds.extend(&set.break_indices);
    bounds.push(n);
    bounds
        .windows(3)
        .map(|w| {
            let (start, point, end) = (w[0], w[1], w[2]);
            let before = segment_moments(y, set.model, start + 1, point)?;
            let after = segment_moments(y, set.model, point + 1, end)?;
            let delta: Vec<f64> = after
                .coefficients
                .iter()
                .zip(&before.coefficients)
                .map(|(b2, b1)| b2 - b1)
                .collect();
            let q_before = quad_form(&delta, &before.q);
            let q_after = quad_form(&delta, &after.q);
            if !(q_before > 0.0 && q_after > 0.0) {
                return Err(Error::IntervalUndefined {
                    break_index: point,
                    reason: "no coefficient shift across the break".into(),
                });
            }
            let zero_before = before.sigma2 <= negligible;
            let zero_after = after.sigma2 <= negligible;
            if zero_before && zero_after {
                return Ok(BreakInterval {
                    lower: point,
                    point,
                    upper: point,
                    level: 1.0 - alpha,
                });
            }
            if zero_before || zero_after {
                return Err(Error::IntervalUndefined {
                    break_index: point,
                    reason: format!(
                        "the segment {} the break has zero residual variance",
                        if zero_before { "before" } else { "after" }
                    ),
                });
            }
            let shape = ArgmaxShape {
                q_before,
                omega_before: before.sigma2 * q_before,
                q_after,
                omega_after: after.sigma2 * q_after,
            };
            let upper_q = argmax_quantile(1.0 - a2, &shape);
            let lower_q = argmax_quantile(a2, &shape);
            // k₀ = k̂ − v, so the upper quantile of v bounds k₀ from below
            let lower = point as f64 - upper_q.ceil();
            let upper = point as f64 - lower_q.floor();
            Ok(BreakInterval {
                lower: lower.clamp(1.0, point as f64) as usize,
                point,
                upper: upper.clamp(point as f64, n as f64) as usize,
                level: 1.0 - alpha,
            })
        })
        .collect()
}

impl BreakpointSet {
    /// Compute and store confidence intervals for the selected breaks.
    pub fn with_confidence_intervals(mut self, series: &TimeSeries, alpha: f64) -> Result<Self> {
        self.confidence_intervals = Some(breakpoint_confint(&self, series, alpha)?);
        Ok(self)
    }
}
