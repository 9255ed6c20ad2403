//! Estimate several breaks with the dynamic program, choose their number by
//! BIC and bracket each with a 95% confidence interval.
//!
//! Run with `cargo run --example multiple_breakpoints`.

use tsbreak::breaks::{optimal_breakpoints, RegressionModel};
use tsbreak::series::{Period, TimeSeries};
use tsbreak::simulate::GaussianRng;

fn main() -> tsbreak::Result<()> {
    let levels = [(10, 0.0), (24, 3.0), (42, 1.0), (49, 4.0)];
    let mut rng = GaussianRng::new(2024);
    let mut values = Vec::new();
    let mut prev = 0;
    for (end, level) in levels {
        values.extend((prev..end).map(|_| level + 0.5 * rng.standard_normal()));
        prev = end;
    }
    let series = TimeSeries::new("regimes", Period::month(2020, 1)?, values)?;

    let set = optimal_breakpoints(&series, RegressionModel::Level, 5, None)?
        .with_confidence_intervals(&series, 0.05)?;
    println!(" m        RSS        BIC");
    for p in &set.partitions {
        println!("{:>2} {:>10.4} {:>10.4}  {:?}", p.m, p.rss, p.bic, p.breaks);
    }
    println!("BIC selects m = {}", set.selected_m);
    for ci in set.confidence_intervals.iter().flatten() {
        let at = |i| series.period_at(i).unwrap();
        println!(
            "break at obs {:>2} ({})  95% CI [{}, {}] = [{}, {}]",
            ci.point,
            at(ci.point),
            ci.lower,
            ci.upper,
            at(ci.lower),
            at(ci.upper)
        );
    }
    Ok(())
}
