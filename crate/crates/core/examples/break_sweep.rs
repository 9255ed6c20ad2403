//! Known-date and unknown-date break tests on a series with a level shift.
//!
//! A Chow test checks a hypothesised date; the F path over a candidate
//! window is compared with simulated sup-F and ave-F boundaries.
//!
//! Run with `cargo run --release --example break_sweep`.

use tsbreak::breaks::{boundary, chow_test, f_stats, sup_f_pvalue, Criterion, RegressionModel};
use tsbreak::series::{Period, TimeSeries};
use tsbreak::simulate::GaussianRng;

fn main() -> tsbreak::Result<()> {
    let mut rng = GaussianRng::new(7);
    let values: Vec<f64> = (1..=120)
        .map(|t| if t > 70 { 1.5 } else { 0.0 } + rng.standard_normal())
        .collect();
    let series = TimeSeries::new("shifted", Period::month(2015, 1)?, values)?;

    let point = series.index_of(Period::month(2020, 10)?)?;
    let chow = chow_test(&series, RegressionModel::Level, point)?;
    println!(
        "Chow at {} (obs {}): F({}, {}) = {:.3}, p = {:.2e}",
        series.period_at(point).unwrap(),
        point,
        chow.df_num,
        chow.df_den,
        chow.f_stat,
        chow.p_value
    );

    let path = f_stats(&series, RegressionModel::Level, 12, 108)?;
    let sup = boundary(&path, 0.05, Criterion::SupF)?;
    let ave = boundary(&path, 0.05, Criterion::AveF)?;
    println!(
        "sup F = {:.3} (p {}), ave F = {:.3}",
        path.sup_f,
        sup_f_pvalue(&path),
        path.ave_f
    );
    println!(
        "5% boundaries: sup {:.3}, ave {:.3} (seed {}, {} replications)",
        sup.critical_value, ave.critical_value, sup.seed, sup.replications
    );
    let above: Vec<String> = path
        .iter()
        .filter(|&(_, f)| f > sup.critical_value)
        .map(|(i, _)| series.period_at(i).unwrap().to_string())
        .collect();
    println!(
        "{} candidates above the sup boundary, first {:?}",
        above.len(),
        above.first()
    );
    Ok(())
}
