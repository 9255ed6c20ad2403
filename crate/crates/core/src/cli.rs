//! Command-line front end.
//!
//! [`run`] parses an argument vector and returns everything the process
//! would emit, so the binary is a thin shell around it and tests can drive
//! commands without spawning processes. Each command builds one result value
//! and renders it either as a table or as JSON.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::breaks::{
    boundary_with, chow_test, f_stats_with, optimal_breakpoints, sup_f_pvalue_with, BoundarySpec,
    BreakpointSet, Criterion, FstatsPath, MonteCarloConfig, RegressionModel, SupFPValue,
    DEFAULT_SEED, DEFAULT_TRIMMING,
};
use crate::error::{Error, Result};
use crate::lag::LagRule;
use crate::series::{
    aggregate_topics, load_csv, load_doc_topics, Column, CsvOptions, DateFormat, Frequency, Period,
    TimeSeries,
};
use crate::simulate::{generate, ProcessKind, ProcessSpec};
use crate::unit_root::{adf_test, kpss_test, AdfReport, KpssLag, KpssReport, PBoundary, PValue};

/// Environment variable overriding the Monte Carlo seed.
pub const SEED_ENV: &str = "TSBREAK_SEED";

/// Everything a command invocation produces.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandResult {
    /// 0 on success, 2 for usage or input errors, 3 for numerical failures.
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
    /// Files written by the command.
    pub artifacts: Vec<PathBuf>,
}

#[derive(Parser, Debug)]
#[command(
    name = "tsbreak",
    version,
    about = "Unit-root tests, lag rules and structural-break analysis for time series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Augmented Dickey-Fuller test for every trend specification
    Adf(AdfArgs),
    /// KPSS stationarity test for every trend specification
    Kpss(KpssArgs),
    /// Lag-length rules of thumb for a sample size
    Lag(LagArgs),
    /// Chow test at a known break date
    Chow(ChowArgs),
    /// Chow F statistics over a window of candidate break dates
    Fstats(FstatsArgs),
    /// Multiple-breakpoint estimation with BIC selection and confidence intervals
    Breakpoints(BreakpointsArgs),
    /// Simulate a stochastic process
    Simulate(SimulateArgs),
    /// Aggregate document-topic probabilities into a prevalence series
    Aggregate(AggregateArgs),
}

#[derive(Args, Debug)]
struct InputArgs {
    /// CSV file with a date column and a value column
    #[arg(long)]
    input: PathBuf,
    /// Date column (zero-based index or header name)
    #[arg(long, default_value = "0")]
    date_column: Column,
    /// Value column (zero-based index or header name)
    #[arg(long, default_value = "1")]
    value_column: Column,
    /// Date layout: auto, YYYY-MM, YYYY-MM-DD or YYYY
    #[arg(long, default_value = "auto")]
    date_format: DateFormat,
    /// First period of the analysed sample
    #[arg(long)]
    start: Option<Period>,
    /// Last period of the analysed sample
    #[arg(long)]
    end: Option<Period>,
}

impl InputArgs {
    fn load(&self) -> Result<TimeSeries> {
        let options = CsvOptions {
            date_column: self.date_column.clone(),
            value_column: self.value_column.clone(),
            date_format: self.date_format,
        };
        let series = load_csv(&self.input, &options)?;
        if self.start.is_none() && self.end.is_none() {
            return Ok(series);
        }
        let from = self.start.unwrap_or(series.first_period());
        let to = self.end.unwrap_or(series.last_period());
        series.slice(from, to)
    }
}

#[derive(Args, Debug)]
struct AdfArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Lags 0..nlag-1 are tested
    #[arg(long, default_value_t = 5)]
    nlag: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct KpssArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Fixed Bartlett truncation lag
    #[arg(long, conflicts_with = "lag_rule")]
    lag: Option<usize>,
    /// Rule choosing the truncation lag from T
    #[arg(long, default_value = "kpss_short")]
    lag_rule: LagRule,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct LagArgs {
    /// Sample size
    #[arg(long = "T", value_name = "T")]
    t: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ChowArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Last period of the first regime
    #[arg(long)]
    point: Period,
    #[arg(long, default_value = "trend")]
    model: RegressionModel,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct FstatsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// First candidate break period
    #[arg(long)]
    from: Period,
    /// Last candidate break period
    #[arg(long)]
    to: Period,
    /// Significance level of the boundaries: 0.01, 0.05 or 0.10
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Boundary used for the exceedance summary
    #[arg(long, default_value = "ave")]
    criterion: Criterion,
    #[arg(long, default_value = "trend")]
    model: RegressionModel,
    /// Minimum share of observations on each side of a candidate
    #[arg(long, default_value_t = DEFAULT_TRIMMING)]
    trimming: f64,
    /// Write candidate period, F value and both boundaries to this CSV file
    #[arg(long)]
    plot_data: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct BreakpointsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Minimum segment length in observations
    #[arg(long)]
    h: usize,
    /// Largest number of breaks considered (default: floor(n/h) - 1)
    #[arg(long)]
    max_breaks: Option<usize>,
    /// Confidence intervals are at level 1 - alpha
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, default_value = "level")]
    model: RegressionModel,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// white_noise, random_walk, drift, trend_stationary or ar1
    #[arg(long)]
    kind: ProcessKind,
    #[arg(long = "T", value_name = "T")]
    t: usize,
    #[arg(long, default_value_t = 0.5)]
    drift: f64,
    #[arg(long, default_value_t = 0.5)]
    trend_slope: f64,
    #[arg(long, default_value_t = 0.5)]
    phi: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value_t = 0.0)]
    y0: f64,
    #[arg(long)]
    seed: u64,
    /// Period of the first observation
    #[arg(long, default_value = "2000-01")]
    start: Period,
    /// Output CSV; the series goes to stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AggregateArgs {
    /// CSV with columns doc_id, date, topic_id, probability
    #[arg(long)]
    input: PathBuf,
    /// Topic to aggregate; repeat to sum a category of topics
    #[arg(long, required = true)]
    topic: Vec<String>,
    #[arg(long, default_value = "monthly")]
    frequency: Frequency,
    /// Output CSV; the series goes to stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parse `argv` (program name first) and execute the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandResult {
                        stdout: text,
                        ..CommandResult::default()
                    }
                }
                _ => CommandResult {
                    exit_code: 2,
                    stderr: text,
                    ..CommandResult::default()
                },
            };
        }
    };
    let mut artifacts = Vec::new();
    match dispatch(cli.command, &mut artifacts) {
        Ok(stdout) => CommandResult {
            exit_code: 0,
            stdout,
            stderr: String::new(),
            artifacts,
        },
        Err(e) => CommandResult {
            exit_code: if e.is_numerical() { 3 } else { 2 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            artifacts,
        },
    }
}

fn dispatch(command: Command, artifacts: &mut Vec<PathBuf>) -> Result<String> {
    match command {
        Command::Adf(a) => {
            let report = adf_test(&a.input.load()?, a.nlag)?;
            Ok(if a.json {
                to_json(&adf_json(&report))
            } else {
                adf_text(&report)
            })
        }
        Command::Kpss(a) => {
            let lag = match a.lag {
                Some(l) => KpssLag::Fixed(l),
                None => KpssLag::Rule(a.lag_rule),
            };
            let report = kpss_test(&a.input.load()?, lag)?;
            Ok(if a.json {
                to_json(&kpss_json(&report, lag))
            } else {
                kpss_text(&report, lag)
            })
        }
        Command::Lag(a) => {
            if a.t == 0 {
                return Err(Error::Invalid("T must be at least 1".into()));
            }
            Ok(if a.json {
                to_json(&lag_json(a.t))
            } else {
                lag_text(a.t)
            })
        }
        Command::Chow(a) => chow(a),
        Command::Fstats(a) => fstats(a, artifacts),
        Command::Breakpoints(a) => breakpoints(a),
        Command::Simulate(a) => simulate(a, artifacts),
        Command::Aggregate(a) => aggregate(a, artifacts),
    }
}

fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialise");
    s.push('\n');
    s
}

/// `x` to five significant digits.
pub fn sig5(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (4 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding can carry into a new digit (9.99996 -> 10.0000)
    let rounded: f64 = s.parse().unwrap_or(x);
    if rounded.abs().log10().floor() as i32 > magnitude && decimals > 0 {
        let d = decimals - 1;
        return format!("{x:.d$}");
    }
    s
}

fn p4(p: &PValue) -> String {
    format!("{:.4}", p.value)
}

fn boundary_json(p: &PValue) -> Value {
    match p.boundary {
        Some(b) => json!(b.symbol()),
        None => Value::Null,
    }
}

fn right_align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(String::len)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:>w$}", w = widths[c]))
            .collect();
        out.push_str(line.join(" ").trim_end());
        out.push('\n');
    }
    out
}

fn boundary_notes(out: &mut String, pvalues: &[&PValue], low: &str, high: &str) {
    let any = |b| pvalues.iter().any(|p| p.boundary == Some(b));
    let _ = writeln!(out, "Note: in fact, p.value = {low} means p.value <= {low}");
    if any(PBoundary::AtLeast) {
        let _ = writeln!(
            out,
            "Note: in fact, p.value = {high} means p.value >= {high}"
        );
    }
}

fn adf_text(r: &AdfReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Augmented Dickey-Fuller Test");
    let _ = writeln!(out, "alternative: stationary");
    let _ = writeln!(
        out,
        "T = {}, nlag = {} (lags 0..{})",
        r.t,
        r.nlag,
        r.nlag.saturating_sub(1)
    );
    for block in &r.specs {
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "Type {}: {}",
            block.spec.type_number(),
            block.spec.description()
        );
        let mut rows = vec![vec![
            "".into(),
            "lag".into(),
            "ADF".into(),
            "p.value".into(),
        ]];
        for (i, row) in block.rows.iter().enumerate() {
            rows.push(vec![
                format!("[{},]", i + 1),
                row.lag.to_string(),
                sig5(row.statistic),
                p4(&row.p_value),
            ]);
        }
        out.push_str(&right_align(&rows));
    }
    let _ = writeln!(out, "----");
    let all: Vec<&PValue> = r
        .specs
        .iter()
        .flat_map(|b| b.rows.iter().map(|r| &r.p_value))
        .collect();
    boundary_notes(&mut out, &all, "0.01", "0.99");
    out
}

fn adf_json(r: &AdfReport) -> Value {
    json!({
        "test": "adf",
        "T": r.t,
        "nlag": r.nlag,
        "specs": r.specs.iter().map(|b| json!({
            "kind": b.spec,
            "rows": b.rows.iter().map(|row| json!({
                "lag": row.lag,
                "stat": row.statistic,
                "p": row.p_value.value,
                "p_boundary": boundary_json(&row.p_value),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn kpss_lag_label(lag: KpssLag) -> String {
    match lag {
        KpssLag::Fixed(_) => "fixed".into(),
        KpssLag::Rule(rule) => format!("rule {}", rule.name()),
    }
}

fn kpss_text(r: &KpssReport, lag: KpssLag) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "KPSS Unit Root Test");
    let _ = writeln!(out, "alternative: nonstationary");
    let _ = writeln!(
        out,
        "T = {}, lag = {} ({})",
        r.t,
        r.lag,
        kpss_lag_label(lag)
    );
    for row in &r.specs {
        let _ = writeln!(
            out,
            "Type {}: {}",
            row.spec.type_number(),
            row.spec.description()
        );
        let rows = vec![
            vec!["lag".to_string(), "stat".into(), "p.value".into()],
            vec![r.lag.to_string(), sig5(row.statistic), p4(&row.p_value)],
        ];
        for line in right_align(&rows).lines() {
            let _ = writeln!(out, " {line}");
        }
    }
    let _ = writeln!(out, "----");
    let _ = writeln!(
        out,
        "Note: p.value = 0.01 means p.value <= 0.01, p.value = 0.10 means p.value >= 0.10"
    );
    out
}

fn kpss_json(r: &KpssReport, lag: KpssLag) -> Value {
    json!({
        "test": "kpss",
        "T": r.t,
        "lag_choice": kpss_lag_label(lag),
        "specs": r.specs.iter().map(|s| json!({
            "kind": s.spec,
            "rows": [json!({
                "lag": r.lag,
                "stat": s.statistic,
                "p": s.p_value.value,
                "p_boundary": boundary_json(&s.p_value),
            })],
        })).collect::<Vec<_>>(),
    })
}

fn lag_text(t: usize) -> String {
    let mut out = format!("T = {t}\n");
    let rows: Vec<Vec<String>> = LagRule::ALL
        .iter()
        .map(|r| vec![format!("{:<10}", r.name()), r.lag(t).to_string()])
        .collect();
    out.push_str(&right_align(&rows));
    out
}

fn lag_json(t: usize) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("T".into(), json!(t));
    for rule in LagRule::ALL {
        map.insert(rule.name().into(), json!(rule.lag(t)));
    }
    Value::Object(map)
}

fn period_json(series: &TimeSeries, index: usize) -> Value {
    series
        .period_at(index)
        .map_or(Value::Null, |p| json!(p.to_string()))
}

fn chow(a: ChowArgs) -> Result<String> {
    let series = a.input.load()?;
    let point = series.index_of(a.point)?;
    let r = chow_test(&series, a.model, point)?;
    if a.json {
        return Ok(to_json(&json!({
            "test": "chow",
            "T": series.len(),
            "model": r.model,
            "point": { "index": r.break_index, "period": a.point.to_string() },
            "f": r.f_stat,
            "df": [r.df_num, r.df_den],
            "p": r.p_value,
            "rss_pooled": r.rss_pooled,
            "rss_segments": [r.rss_segments.0, r.rss_segments.1],
        })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "Chow test");
    let _ = writeln!(
        out,
        "T = {}, model = {}, break after {} (observation {})",
        series.len(),
        r.model,
        a.point,
        r.break_index
    );
    let _ = writeln!(
        out,
        "F = {}, df = ({}, {}), p.value = {:.4}",
        sig5(r.f_stat),
        r.df_num,
        r.df_den,
        r.p_value
    );
    let _ = writeln!(
        out,
        "RSS pooled = {}, RSS segments = {} + {}",
        sig5(r.rss_pooled),
        sig5(r.rss_segments.0),
        sig5(r.rss_segments.1)
    );
    Ok(out)
}

fn monte_carlo_config() -> Result<MonteCarloConfig> {
    let seed = match std::env::var(SEED_ENV) {
        Ok(text) => text.trim().parse::<u64>().map_err(|_| {
            Error::Invalid(format!(
                "{SEED_ENV} must be a non-negative integer, got `{text}`"
            ))
        })?,
        Err(_) => DEFAULT_SEED,
    };
    Ok(MonteCarloConfig {
        seed,
        ..MonteCarloConfig::default()
    })
}

struct FstatsOutcome {
    path: FstatsPath,
    sup: BoundarySpec,
    ave: BoundarySpec,
    pvalue: SupFPValue,
    config: MonteCarloConfig,
}

fn criterion_name(c: Criterion) -> &'static str {
    match c {
        Criterion::SupF => "sup_f",
        Criterion::AveF => "ave_f",
    }
}

fn fstats(a: FstatsArgs, artifacts: &mut Vec<PathBuf>) -> Result<String> {
    let series = a.input.load()?;
    let from = series.index_of(a.from)?;
    let to = series.index_of(a.to)?;
    let config = monte_carlo_config()?;
    let path = f_stats_with(&series, a.model, from, to, a.trimming)?;
    let o = FstatsOutcome {
        sup: boundary_with(&path, a.alpha, Criterion::SupF, config)?,
        ave: boundary_with(&path, a.alpha, Criterion::AveF, config)?,
        pvalue: sup_f_pvalue_with(&path, config),
        path,
        config,
    };
    let chosen = match a.criterion {
        Criterion::SupF => &o.sup,
        Criterion::AveF => &o.ave,
    };
    let exceeding: Vec<usize> = o
        .path
        .iter()
        .filter(|&(_, f)| f > chosen.critical_value)
        .map(|(i, _)| i)
        .collect();

    if let Some(file) = &a.plot_data {
        write_plot_data(file, &series, &o)?;
        artifacts.push(file.clone());
    }

    if a.json {
        return Ok(to_json(&json!({
            "test": "fstats",
            "T": series.len(),
            "model": o.path.model,
            "k": o.path.k,
            "trimming": o.path.trimming,
            "alpha": chosen.alpha,
            "criterion": criterion_name(a.criterion),
            "monte_carlo": o.config,
            "from": { "index": o.path.from, "period": a.from.to_string() },
            "to": { "index": o.path.to, "period": a.to.to_string() },
            "sup_f": o.path.sup_f,
            "ave_f": o.path.ave_f,
            "sup_f_pvalue": {
                "p": o.pvalue.p_value,
                "std_error": o.pvalue.std_error,
                "below_resolution": o.pvalue.below_resolution,
            },
            "boundaries": { "sup_f": o.sup.critical_value, "ave_f": o.ave.critical_value },
            "exceeding": exceeding.iter().map(|&i| period_json(&series, i)).collect::<Vec<_>>(),
            "candidates": o.path.iter().map(|(i, f)| json!({
                "index": i,
                "period": period_json(&series, i),
                "f": f,
            })).collect::<Vec<_>>(),
        })));
    }

    let mut out = String::new();
    let _ = writeln!(out, "F statistics for candidate breaks");
    let _ = writeln!(
        out,
        "T = {}, model = {}, trimming = {}, alpha = {}, criterion = {}",
        series.len(),
        o.path.model,
        o.path.trimming,
        chosen.alpha,
        criterion_name(a.criterion)
    );
    let _ = writeln!(
        out,
        "Monte Carlo: seed = {}, replications = {}, grid = {}",
        o.config.seed, o.config.replications, o.config.grid_points
    );
    let _ = writeln!(
        out,
        "candidates {} .. {} (observations {} .. {})",
        a.from, a.to, o.path.from, o.path.to
    );
    let _ = writeln!(
        out,
        "sup.F = {}, p.value = {}",
        sig5(o.path.sup_f),
        o.pvalue
    );
    let _ = writeln!(out, "ave.F = {}", sig5(o.path.ave_f));
    let _ = writeln!(
        out,
        "boundary sup_f = {}, ave_f = {}",
        sig5(o.sup.critical_value),
        sig5(o.ave.critical_value)
    );
    let _ = writeln!(out);
    let mut rows = vec![vec![
        "period".into(),
        "obs".into(),
        "F".into(),
        "> sup".into(),
        "> ave".into(),
    ]];
    for (i, f) in o.path.iter() {
        rows.push(vec![
            series
                .period_at(i)
                .map(|p| p.to_string())
                .unwrap_or_default(),
            i.to_string(),
            sig5(f),
            if f > o.sup.critical_value { "*" } else { "" }.into(),
            if f > o.ave.critical_value { "*" } else { "" }.into(),
        ]);
    }
    out.push_str(&right_align(&rows));
    let _ = writeln!(out);
    let listed: Vec<String> = exceeding
        .iter()
        .filter_map(|&i| series.period_at(i))
        .map(|p| p.to_string())
        .collect();
    let _ = writeln!(
        out,
        "candidates above the {} boundary: {}",
        criterion_name(a.criterion),
        if listed.is_empty() {
            "none".to_string()
        } else {
            listed.join(" ")
        }
    );
    Ok(out)
}

fn write_plot_data(file: &Path, series: &TimeSeries, o: &FstatsOutcome) -> Result<()> {
    let io = |source| Error::Io {
        path: file.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(file).map_err(|e| io(e.into()))?;
    let rows = std::iter::once([
        "period".to_string(),
        "F".into(),
        "sup_boundary".into(),
        "ave_boundary".into(),
    ])
    .chain(o.path.iter().map(|(i, f)| {
        [
            series
                .period_at(i)
                .map(|p| p.to_string())
                .unwrap_or_default(),
            format!("{f}"),
            format!("{}", o.sup.critical_value),
            format!("{}", o.ave.critical_value),
        ]
    }));
    for row in rows {
        w.write_record(&row).map_err(|e| io(e.into()))?;
    }
    w.flush().map_err(io)
}

fn breakpoints(a: BreakpointsArgs) -> Result<String> {
    let series = a.input.load()?;
    let set = optimal_breakpoints(&series, a.model, a.h, a.max_breaks)?;
    let set = if set.selected_m > 0 {
        set.with_confidence_intervals(&series, a.alpha)?
    } else {
        set
    };
    if a.json {
        return Ok(to_json(&breakpoints_json(&set, &series, a.alpha)));
    }
    Ok(breakpoints_text(&set, &series, a.alpha))
}

fn breakpoints_json(set: &BreakpointSet, series: &TimeSeries, alpha: f64) -> Value {
    json!({
        "test": "breakpoints",
        "T": set.n,
        "model": set.model,
        "h": set.h,
        "alpha": alpha,
        "m_max": set.partitions.len() - 1,
        "table": set.partitions.iter().map(|p| json!({
            "m": p.m,
            "rss": p.rss,
            "bic": p.bic,
            "breaks": p.breaks,
        })).collect::<Vec<_>>(),
        "selected_m": set.selected_m,
        "breaks": set.confidence_intervals.iter().flatten().map(|ci| json!({
            "lower": ci.lower,
            "point": ci.point,
            "upper": ci.upper,
            "lower_period": period_json(series, ci.lower),
            "point_period": period_json(series, ci.point),
            "upper_period": period_json(series, ci.upper),
        })).collect::<Vec<_>>(),
    })
}

fn breakpoints_text(set: &BreakpointSet, series: &TimeSeries, alpha: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Optimal breakpoints");
    let _ = writeln!(
        out,
        "T = {}, model = {}, h = {}, m_max = {}, alpha = {}",
        set.n,
        set.model,
        set.h,
        set.partitions.len() - 1,
        alpha
    );
    let _ = writeln!(out);
    let mut rows = vec![vec![
        "m".into(),
        "RSS".into(),
        "BIC".into(),
        "breaks".into(),
    ]];
    for p in &set.partitions {
        let breaks: Vec<String> = p.breaks.iter().map(usize::to_string).collect();
        rows.push(vec![
            p.m.to_string(),
            sig5(p.rss),
            sig5(p.bic),
            breaks.join(","),
        ]);
    }
    out.push_str(&right_align(&rows));
    let _ = writeln!(out);
    let _ = writeln!(out, "BIC selects {} break(s)", set.selected_m);
    let Some(cis) = &set.confidence_intervals else {
        return out;
    };
    let lo = format!("{} %", fmt_percent(alpha / 2.0));
    let hi = format!("{} %", fmt_percent(1.0 - alpha / 2.0));
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "Confidence intervals for breakpoints of optimal {}-segment partition:",
        set.selected_m + 1
    );
    let _ = writeln!(out, "Breakpoints at observation number:");
    let mut rows = vec![vec![
        "".into(),
        lo.clone(),
        "breakpoints".into(),
        hi.clone(),
    ]];
    for (i, ci) in cis.iter().enumerate() {
        rows.push(vec![
            (i + 1).to_string(),
            ci.lower.to_string(),
            ci.point.to_string(),
            ci.upper.to_string(),
        ]);
    }
    out.push_str(&right_align(&rows));
    let _ = writeln!(out, "Corresponding to periods:");
    let label = |i| {
        series
            .period_at(i)
            .map(|p| p.to_string())
            .unwrap_or_default()
    };
    let mut rows = vec![vec!["".into(), lo, "breakpoints".into(), hi]];
    for (i, ci) in cis.iter().enumerate() {
        rows.push(vec![
            (i + 1).to_string(),
            label(ci.lower),
            label(ci.point),
            label(ci.upper),
        ]);
    }
    out.push_str(&right_align(&rows));
    out
}

fn fmt_percent(p: f64) -> String {
    let s = format!("{:.4}", p * 100.0);
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn series_csv(series: &TimeSeries) -> Result<String> {
    let mut buf = Vec::new();
    series.write_csv(&mut buf)?;
    Ok(String::from_utf8(buf).expect("CSV output is UTF-8"))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn simulate(a: SimulateArgs, artifacts: &mut Vec<PathBuf>) -> Result<String> {
    let spec = ProcessSpec {
        kind: a.kind,
        length: a.t,
        y0: a.y0,
        drift: a.drift,
        trend_slope: a.trend_slope,
        phi: a.phi,
        sigma: a.sigma,
        seed: a.seed,
        start: a.start,
    };
    let series = generate(&spec)?;
    let csv = series_csv(&series)?;
    match a.out {
        None => Ok(csv),
        Some(path) => {
            write_file(&path, &csv)?;
            artifacts.push(path.clone());
            Ok(format!(
                "simulated {} observations ({:?}, seed = {}, sigma = {}) starting {} -> {}\n",
                series.len(),
                spec.kind,
                spec.seed,
                spec.sigma,
                spec.start,
                path.display()
            ))
        }
    }
}

fn aggregate(a: AggregateArgs, artifacts: &mut Vec<PathBuf>) -> Result<String> {
    let records = load_doc_topics(&a.input)?;
    let topics: Vec<&str> = a.topic.iter().map(String::as_str).collect();
    let series = aggregate_topics(&records, &topics, a.frequency)?.with_label(a.topic.join("+"));
    let csv = series_csv(&series)?;
    match a.out {
        None => Ok(csv),
        Some(path) => {
            write_file(&path, &csv)?;
            artifacts.push(path.clone());
            Ok(format!(
                "aggregated {} records into {} periods ({} .. {}) -> {}\n",
                records.len(),
                series.len(),
                series.first_period(),
                series.last_period(),
                path.display()
            ))
        }
    }
}
