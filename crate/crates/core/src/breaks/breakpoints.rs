//! Multiple-breakpoint estimation by dynamic programming over segment RSS.

use serde::Serialize;

use super::confint::BreakInterval;
use super::RegressionModel;
use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Residual sum of squares of the segment model for every segment of at
/// least `h` observations, built once by running (Welford-style) updates
/// from each start point.
#[derive(Debug, Clone)]
pub struct SegmentRss {
    n: usize,
    h: usize,
    // rows[i][len - h] = RSS of observations i..i+len (0-based, exclusive end)
    rows: Vec<Vec<f64>>,
}

impl SegmentRss {
    pub fn new(y: &[f64], model: RegressionModel, h: usize) -> Self {
        let n = y.len();
        let rows = (0..n)
            .map(|start| {
                let mut out = Vec::with_capacity((n - start).saturating_sub(h - 1));
                // running means and centred co-moments of (t, y)
                let (mut mt, mut my) = (0.0, 0.0);
                let (mut stt, mut sty, mut syy) = (0.0, 0.0, 0.0);
                for (count, idx) in (start..n).enumerate() {
                    let c = (count + 1) as f64;
                    let t = (idx + 1) as f64;
                    let dt = t - mt;
                    let dy = y[idx] - my;
                    mt += dt / c;
                    my += dy / c;
                    stt += dt * (t - mt);
                    sty += dt * (y[idx] - my);
                    syy += dy * (y[idx] - my);
                    if count + 1 >= h {
                        let rss = match model {
                            RegressionModel::Level => syy,
                            RegressionModel::Trend => {
                                if stt > 0.0 {
                                    syy - sty * sty / stt
                                } else {
                                    syy
                                }
                            }
                        };
                        out.push(rss.max(0.0));
                    }
                }
                out
            })
            .collect();
        SegmentRss { n, h, rows }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn min_segment(&self) -> usize {
        self.h
    }

    /// RSS of 1-based observations `lo..=hi`; infinite when shorter than h.
    pub fn rss(&self, lo: usize, hi: usize) -> f64 {
        let len = hi + 1 - lo;
        if len < self.h {
            return f64::INFINITY;
        }
        self.rows[lo - 1][len - self.h]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Partition {
    pub m: usize,
    pub rss: f64,
    pub bic: f64,
    pub breaks: Vec<usize>,
}

/// Costs closer than this fraction of the no-break RSS count as ties, so
/// partitions that are equally good up to round-off resolve to the earliest
/// break indices whichever way the sums were accumulated.
const TIE_TOLERANCE: f64 = 1e-12;

fn tie_tolerance(table: &SegmentRss) -> f64 {
    TIE_TOLERANCE * table.rss(1, table.len()).max(f64::MIN_POSITIVE)
}

/// Minimum-RSS partition into `m + 1` segments of at least `h`
/// observations. Among equal totals the lexicographically smallest break
/// vector wins.
pub fn optimal_partition(table: &SegmentRss, m: usize) -> Option<(f64, Vec<usize>)> {
    optimal_partitions(table, m).pop().flatten()
}

/// Optimal partitions for every break count 0..=m_max from one backward
/// recursion. `best[j][s]` is the cheapest split of observations s..=n into
/// j + 1 segments.
fn optimal_partitions(table: &SegmentRss, m_max: usize) -> Vec<Option<(f64, Vec<usize>)>> {
    let n = table.len();
    let h = table.min_segment();
    let inf = f64::INFINITY;
    let tol = tie_tolerance(table);
    let mut best = vec![vec![inf; n + 2]; m_max + 1];
    let mut choice = vec![vec![0usize; n + 2]; m_max + 1];
    for (s, cell) in best[0].iter_mut().enumerate().take(n + 1).skip(1) {
        *cell = table.rss(s, n);
    }
    for j in 1..=m_max {
        for s in 1..=n {
            // first segment s..=e needs h observations; the rest needs (j)·h
            let lo = s + h - 1;
            let Some(hi) = (n + 1).checked_sub(j * h + 1) else {
                continue;
            };
            let mut best_cost = inf;
            let mut best_e = 0;
            for e in lo..=hi {
                let cost = table.rss(s, e) + best[j - 1][e + 1];
                if cost < best_cost - tol {
                    best_cost = cost;
                    best_e = e;
                }
            }
            best[j][s] = best_cost;
            choice[j][s] = best_e;
        }
    }
    (0..=m_max)
        .map(|j| {
            let total = best[j][1];
            if !total.is_finite() {
                return None;
            }
            let mut breaks = Vec::with_capacity(j);
            let mut s = 1;
            for level in (1..=j).rev() {
                let e = choice[level][s];
                breaks.push(e);
                s = e + 1;
            }
            Some((total, breaks))
        })
        .collect()
}

/// Brute-force search over every valid break vector with `m` breaks, summing
/// segment costs right to left so totals are bit-identical to the recursion.
pub fn exhaustive_partition(table: &SegmentRss, m: usize) -> Option<(f64, Vec<usize>)> {
    fn go(
        table: &SegmentRss,
        start: usize,
        left: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, f64)>,
    ) {
        let n = table.len();
        let h = table.min_segment();
        if left == 0 {
            // costs are summed later, right to left
            if n + 1 - start >= h {
                out.push((prefix.clone(), 0.0));
            }
            return;
        }
        let lo = start + h - 1;
        if n < left * h + lo {
            return;
        }
        for e in lo..=n - left * h {
            prefix.push(e);
            go(table, e + 1, left - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    go(table, 1, m, &mut Vec::new(), &mut all);
    let n = table.len();
    let totals: Vec<(f64, Vec<usize>)> = all
        .into_iter()
        .map(|(breaks, _)| {
            let mut bounds = vec![0];
            bounds.extend(&breaks);
            bounds.push(n);
            let mut total = 0.0;
            for w in bounds.windows(2).rev() {
                total += table.rss(w[0] + 1, w[1]);
            }
            (total, breaks)
        })
        .collect();
    let min = totals.iter().map(|t| t.0).fold(f64::INFINITY, f64::min);
    let tol = tie_tolerance(table);
    // enumeration order is lexicographic, so the first near-minimal vector
    // is the earliest
    totals.into_iter().find(|(total, _)| *total <= min + tol)
}

/// Fitted break structure: optimal partitions for each break count, the
/// BIC choice, and (once computed) confidence intervals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BreakpointSet {
    pub n: usize,
    pub h: usize,
    pub model: RegressionModel,
    pub partitions: Vec<Partition>,
    pub selected_m: usize,
    pub break_indices: Vec<usize>,
    pub confidence_intervals: Option<Vec<BreakInterval>>,
}

impl BreakpointSet {
    pub fn rss_table(&self) -> Vec<f64> {
        self.partitions.iter().map(|p| p.rss).collect()
    }

    pub fn bic_table(&self) -> Vec<f64> {
        self.partitions.iter().map(|p| p.bic).collect()
    }

    pub fn partition(&self, m: usize) -> Option<&Partition> {
        self.partitions.get(m)
    }
}

/// BIC = n ln(RSS/n) + ((m+1)k + m + 1) ln n; the count covers the segment
/// coefficients, the break dates and the error variance.
pub fn bic(n: usize, k: usize, m: usize, rss: f64) -> f64 {
    let nf = n as f64;
    let params = ((m + 1) * k + m + 1) as f64;
    nf * (rss / nf).ln() + params * nf.ln()
}

/// Optimal partitions for 0..=m_max breaks with minimum segment length `h`.
/// `m_max = None` uses the largest feasible count ⌊n/h⌋ − 1.
pub fn optimal_breakpoints(
    series: &TimeSeries,
    model: RegressionModel,
    h: usize,
    m_max: Option<usize>,
) -> Result<BreakpointSet> {
    let y = series.values();
    let n = y.len();
    let k = model.regressors();
    if h < k + 1 {
        return Err(Error::Invalid(format!(
            "minimum segment length {h} too small for the {model} model (need at least {})",
            k + 1
        )));
    }
    if n < 2 * h {
        return Err(Error::TooShort {
            needed: 2 * h,
            got: n,
        });
    }
    let bound = n / h - 1;
    let m_max = match m_max {
        None => bound,
        Some(m) if m <= bound => m,
        Some(m) => {
            return Err(Error::Invalid(format!(
                "{m} breaks exceed the maximum {bound} for n = {n}, h = {h}"
            )))
        }
    };
    let table = SegmentRss::new(y, model, h);
    let partitions: Vec<Partition> = optimal_partitions(&table, m_max)
        .into_iter()
        .enumerate()
        .map_while(|(m, opt)| {
            opt.map(|(rss, breaks)| Partition {
                m,
                rss,
                bic: bic(n, k, m, rss),
                breaks,
            })
        })
        .collect();
    let selected = partitions.iter().fold(
        &partitions[0],
        |best, p| if p.bic < best.bic { p } else { best },
    );
    Ok(BreakpointSet {
        n,
        h,
        model,
        selected_m: selected.m,
        break_indices: selected.breaks.clone(),
        partitions,
        confidence_intervals: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ols::{fit, DesignMatrix};
    use crate::series::Period;

    fn series(values: Vec<f64>) -> TimeSeries {
        TimeSeries::new("x", Period::month(2000, 1).unwrap(), values).unwrap()
    }

    #[test]
    fn segment_table_matches_ols() {
        let y: Vec<f64> = (0..25)
            .map(|i| ((i * 31) % 17) as f64 * 0.3 + i as f64)
            .collect();
        for model in [RegressionModel::Level, RegressionModel::Trend] {
            let table = SegmentRss::new(&y, model, 3);
            for lo in 1..=23 {
                for hi in lo + 2..=25 {
                    let mut x = DesignMatrix::new().with_column("c", vec![1.0; hi + 1 - lo]);
                    if model == RegressionModel::Trend {
                        x.push_column("t", (lo..=hi).map(|t| t as f64).collect());
                    }
                    let direct = fit(&x, &y[lo - 1..hi]).unwrap().rss;
                    let got = table.rss(lo, hi);
                    assert!(
                        (got - direct).abs() <= 1e-9 * (1.0 + direct),
                        "{model} {lo}..{hi}: {got} vs {direct}"
                    );
                }
            }
            assert_eq!(table.rss(1, 2), f64::INFINITY);
        }
    }

    #[test]
    fn two_regimes_give_one_break() {
        let y: Vec<f64> = (0..40)
            .map(|i| if i < 20 { 0.0 } else { 5.0 } + 1e-3 * (((i * 13) % 7) as f64 - 3.0))
            .collect();
        let set = optimal_breakpoints(&series(y), RegressionModel::Level, 5, None).unwrap();
        assert_eq!(set.selected_m, 1);
        assert_eq!(set.break_indices, vec![20]);
        assert_eq!(set.partitions.len(), 8);
    }

    #[test]
    fn preconditions() {
        let s = series(vec![1.0; 9]);
        assert!(matches!(
            optimal_breakpoints(&s, RegressionModel::Level, 5, None),
            Err(Error::TooShort { .. })
        ));
        let s = series((0..20).map(f64::from).collect());
        assert!(optimal_breakpoints(&s, RegressionModel::Trend, 2, None).is_err());
        assert!(optimal_breakpoints(&s, RegressionModel::Level, 5, Some(4)).is_err());
        assert!(optimal_breakpoints(&s, RegressionModel::Level, 5, Some(3)).is_ok());
    }

    #[test]
    fn dp_matches_enumeration_on_fixed_case() {
        let y: Vec<f64> = (0..20).map(|i| ((i * 7 + 3) % 11) as f64).collect();
        let table = SegmentRss::new(&y, RegressionModel::Level, 5);
        for m in 0..=2 {
            assert_eq!(
                optimal_partition(&table, m),
                exhaustive_partition(&table, m)
            );
        }
    }

    #[test]
    fn bic_penalty() {
        // same RSS, one more break costs (k + 1) ln n
        let d = bic(49, 1, 2, 10.0) - bic(49, 1, 1, 10.0);
        assert!((d - 2.0 * 49f64.ln()).abs() < 1e-12);
    }
}
