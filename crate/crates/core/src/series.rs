//! Time-series data model, CSV ingestion and topic-prevalence aggregation.
//!
//! A [`TimeSeries`] is stored as a start period, a frequency and a dense
//! vector of values, so the "strictly increasing, equally spaced, no gaps"
//! invariant holds by construction. Ingestion rejects anything that would
//! need imputation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sampling frequency of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frequency {
    Monthly,
    Annual,
}

impl std::str::FromStr for Frequency {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "monthly" | "month" | "m" => Ok(Frequency::Monthly),
            "annual" | "yearly" | "year" | "a" | "y" => Ok(Frequency::Annual),
            other => Err(Error::Invalid(format!("unknown frequency `{other}`"))),
        }
    }
}

/// A calendar period: a month, or a whole year when `month` is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Period {
    year: i32,
    month: Option<u8>,
}

impl Period {
    pub fn month(year: i32, month: u8) -> Result<Self> {
        if !(1..=12).contains(&month) {
            return Err(Error::Invalid(format!("month {month} out of range")));
        }
        Ok(Period {
            year,
            month: Some(month),
        })
    }

    pub fn year(year: i32) -> Self {
        Period { year, month: None }
    }

    pub fn year_number(&self) -> i32 {
        self.year
    }

    pub fn month_number(&self) -> Option<u8> {
        self.month
    }

    pub fn frequency(&self) -> Frequency {
        match self.month {
            Some(_) => Frequency::Monthly,
            None => Frequency::Annual,
        }
    }

    /// Collapse to the given frequency (a month maps to its year).
    pub fn at_frequency(&self, frequency: Frequency) -> Result<Self> {
        match (frequency, self.month) {
            (Frequency::Annual, _) => Ok(Period::year(self.year)),
            (Frequency::Monthly, Some(_)) => Ok(*self),
            (Frequency::Monthly, None) => Err(Error::Invalid(format!(
                "annual period {self} cannot be read as monthly"
            ))),
        }
    }

    /// Ordinal on a frequency-specific integer grid.
    fn ordinal(&self) -> i64 {
        match self.month {
            Some(m) => self.year as i64 * 12 + (m as i64 - 1),
            None => self.year as i64,
        }
    }

    fn from_ordinal(ordinal: i64, frequency: Frequency) -> Self {
        match frequency {
            Frequency::Monthly => Period {
                year: ordinal.div_euclid(12) as i32,
                month: Some(ordinal.rem_euclid(12) as u8 + 1),
            },
            Frequency::Annual => Period::year(ordinal as i32),
        }
    }

    pub fn offset(&self, steps: i64) -> Self {
        Period::from_ordinal(self.ordinal() + steps, self.frequency())
    }

    pub fn next(&self) -> Self {
        self.offset(1)
    }

    /// Number of steps from `self` to `other` (same frequency assumed).
    pub fn steps_to(&self, other: &Period) -> i64 {
        other.ordinal() - self.ordinal()
    }

    pub fn parse(text: &str, format: DateFormat) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::Invalid(format!("cannot parse `{text}` as a date"));
        let parse_year = |s: &str| -> Result<i32> {
            if s.len() == 4 && s.bytes().all(|b| b.is_ascii_digit()) {
                s.parse().map_err(|_| bad())
            } else {
                Err(bad())
            }
        };
        let parse_two = |s: &str| -> Result<u8> {
            if (1..=2).contains(&s.len()) && s.bytes().all(|b| b.is_ascii_digit()) {
                s.parse().map_err(|_| bad())
            } else {
                Err(bad())
            }
        };
        let parts: Vec<&str> = text.split('-').collect();
        match (format, parts.as_slice()) {
            (DateFormat::Auto | DateFormat::Year, [y]) => Ok(Period::year(parse_year(y)?)),
            (DateFormat::Auto | DateFormat::YearMonth, [y, m]) => {
                Period::month(parse_year(y)?, parse_two(m)?).map_err(|_| bad())
            }
            (DateFormat::Auto | DateFormat::YearMonthDay, [y, m, d]) => {
                let day = parse_two(d)?;
                let month = parse_two(m)?;
                if day == 0 || day > days_in_month(parse_year(y)?, month) {
                    return Err(bad());
                }
                Period::month(parse_year(y)?, month).map_err(|_| bad())
            }
            _ => Err(bad()),
        }
    }
}

fn days_in_month(year: i32, month: u8) -> u8 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if (year % 4 == 0 && year % 100 != 0) || year % 400 == 0 => 29,
        2 => 28,
        _ => 0,
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.month {
            Some(m) => write!(f, "{:04}-{:02}", self.year, m),
            None => write!(f, "{:04}", self.year),
        }
    }
}

impl std::str::FromStr for Period {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Period::parse(s, DateFormat::Auto)
    }
}

impl Serialize for Period {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Accepted date layouts. `Auto` tries `YYYY-MM-DD`, `YYYY-MM` and `YYYY`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DateFormat {
    #[default]
    Auto,
    YearMonth,
    YearMonthDay,
    Year,
}

impl std::str::FromStr for DateFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(DateFormat::Auto),
            "YYYY-MM" | "%Y-%m" => Ok(DateFormat::YearMonth),
            "YYYY-MM-DD" | "%Y-%m-%d" => Ok(DateFormat::YearMonthDay),
            "YYYY" | "%Y" => Ok(DateFormat::Year),
            other => Err(Error::Invalid(format!("unsupported date format `{other}`"))),
        }
    }
}

/// Column selector for CSV ingestion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    Index(usize),
    Name(String),
}

impl std::str::FromStr for Column {
    type Err = std::convert::Infallible;

    /// Digits select a zero-based index, anything else a header name.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => Column::Index(i),
            Err(_) => Column::Name(s.to_string()),
        })
    }
}

#[derive(Debug, Clone)]
pub struct CsvOptions {
    pub date_column: Column,
    pub value_column: Column,
    pub date_format: DateFormat,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions {
            date_column: Column::Index(0),
            value_column: Column::Index(1),
            date_format: DateFormat::Auto,
        }
    }
}

/// Ordered, gap-free observations at a fixed frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    label: String,
    start: Period,
    values: Vec<f64>,
}

impl TimeSeries {
    pub fn new(label: impl Into<String>, start: Period, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::TooShort { needed: 1, got: 0 });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("value at position {}", i + 1)));
        }
        Ok(TimeSeries {
            label: label.into(),
            start,
            values,
        })
    }

    /// Build from unordered `(period, value)` pairs. Row numbers in errors
    /// are 1-based positions in `observations`.
    pub fn from_observations(
        label: impl Into<String>,
        observations: Vec<(Period, f64)>,
    ) -> Result<Self> {
        let rows: Vec<(usize, Period, f64)> = observations
            .into_iter()
            .enumerate()
            .map(|(i, (p, v))| (i + 1, p, v))
            .collect();
        Self::from_rows(label.into(), rows)
    }

    fn from_rows(label: String, mut rows: Vec<(usize, Period, f64)>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::TooShort { needed: 1, got: 0 });
        }
        let frequency = rows[0].1.frequency();
        if let Some(&(row, period, _)) = rows.iter().find(|r| r.1.frequency() != frequency) {
            return Err(Error::Parse {
                row,
                message: format!(
                    "period {period} does not match the {frequency:?} frequency of the first row"
                ),
            });
        }
        rows.sort_by_key(|r| r.1);
        for pair in rows.windows(2) {
            let (prev, cur) = (&pair[0], &pair[1]);
            if prev.1 == cur.1 {
                return Err(Error::DuplicateTimestamp {
                    row: cur.0.max(prev.0),
                    period: cur.1,
                });
            }
            if prev.1.next() != cur.1 {
                return Err(Error::Gap {
                    row: cur.0,
                    expected: prev.1.next(),
                    found: cur.1,
                });
            }
        }
        for &(row, _, v) in &rows {
            if !v.is_finite() {
                return Err(Error::Parse {
                    row,
                    message: format!("non-finite value {v}"),
                });
            }
        }
        let start = rows[0].1;
        Ok(TimeSeries {
            label,
            start,
            values: rows.into_iter().map(|r| r.2).collect(),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn frequency(&self) -> Frequency {
        self.start.frequency()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn first_period(&self) -> Period {
        self.start
    }

    pub fn last_period(&self) -> Period {
        self.start.offset(self.values.len() as i64 - 1)
    }

    /// Period of the 1-based observation `index`.
    pub fn period_at(&self, index: usize) -> Option<Period> {
        (1..=self.len())
            .contains(&index)
            .then(|| self.start.offset(index as i64 - 1))
    }

    /// 1-based observation index of `period`.
    pub fn index_of(&self, period: Period) -> Result<usize> {
        let out_of_range = || Error::OutOfRange {
            period,
            first: self.first_period(),
            last: self.last_period(),
        };
        let period = period
            .at_frequency(self.frequency())
            .map_err(|_| out_of_range())?;
        let steps = self.start.steps_to(&period);
        if steps < 0 || steps >= self.len() as i64 {
            return Err(out_of_range());
        }
        Ok(steps as usize + 1)
    }

    pub fn timestamps(&self) -> impl Iterator<Item = Period> + '_ {
        (0..self.len() as i64).map(move |i| self.start.offset(i))
    }

    /// Inclusive sub-series between two periods.
    pub fn slice(&self, from: Period, to: Period) -> Result<TimeSeries> {
        if from > to {
            return Err(Error::Invalid(format!(
                "slice start {from} is after end {to}"
            )));
        }
        let lo = self.index_of(from)?;
        let hi = self.index_of(to)?;
        Ok(TimeSeries {
            label: self.label.clone(),
            start: self.start.offset(lo as i64 - 1),
            values: self.values[lo - 1..hi].to_vec(),
        })
    }

    /// First differences, stamped with the later period.
    pub fn diff(&self) -> Result<TimeSeries> {
        if self.len() < 2 {
            return Err(Error::TooShort {
                needed: 2,
                got: self.len(),
            });
        }
        Ok(TimeSeries {
            label: self.label.clone(),
            start: self.start.next(),
            values: self.values.windows(2).map(|w| w[1] - w[0]).collect(),
        })
    }

    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Result<TimeSeries> {
        TimeSeries::new(
            self.label.clone(),
            self.start,
            self.values.iter().map(|&v| f(v)).collect(),
        )
    }

    /// Write as `date,value` CSV; `load_csv` reads it back unchanged.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(writer);
        let io = |e: csv::Error| Error::Invalid(format!("csv write failed: {e}"));
        out.write_record(["date", "value"]).map_err(io)?;
        for (period, value) in self.timestamps().zip(&self.values) {
            out.write_record([period.to_string(), value.to_string()])
                .map_err(io)?;
        }
        out.flush()
            .map_err(|e| Error::Invalid(format!("csv write failed: {e}")))?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R, label: &str, options: &CsvOptions) -> Result<TimeSeries> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut records = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::Parse {
                row: i + 1,
                message: e.to_string(),
            })?;
            if rec.iter().all(|c| c.is_empty()) {
                continue;
            }
            let line = rec.position().map(|p| p.line() as usize).unwrap_or(i + 1);
            records.push((line, rec));
        }
        if records.is_empty() {
            return Err(Error::TooShort { needed: 1, got: 0 });
        }

        // Header detection: the first cell of the date column not parsing
        // as a date marks a header row.
        let header_probe_idx = match &options.date_column {
            Column::Index(i) => Some(*i),
            Column::Name(_) => None,
        };
        let first = &records[0].1;
        let has_header = match header_probe_idx {
            Some(i) => first
                .get(i)
                .map(|cell| Period::parse(cell, options.date_format).is_err())
                .unwrap_or(true),
            None => true,
        };
        let header: Option<Vec<String>> =
            has_header.then(|| first.iter().map(str::to_string).collect());
        let resolve = |col: &Column| -> Result<usize> {
            match col {
                Column::Index(i) => Ok(*i),
                Column::Name(name) => header
                    .as_ref()
                    .and_then(|h| h.iter().position(|c| c == name))
                    .ok_or_else(|| Error::MissingColumn(name.clone())),
            }
        };
        let date_idx = resolve(&options.date_column)?;
        let value_idx = resolve(&options.value_column)?;

        let body = if has_header {
            &records[1..]
        } else {
            &records[..]
        };
        let mut rows = Vec::with_capacity(body.len());
        for (line, rec) in body {
            let cell = |idx: usize, what: &str| -> Result<&str> {
                rec.get(idx).ok_or_else(|| Error::Parse {
                    row: *line,
                    message: format!("missing {what} column {idx}"),
                })
            };
            let date_text = cell(date_idx, "date")?;
            let period =
                Period::parse(date_text, options.date_format).map_err(|_| Error::Parse {
                    row: *line,
                    message: format!("cannot parse date `{date_text}`"),
                })?;
            let value_text = cell(value_idx, "value")?;
            let value: f64 = value_text.parse().map_err(|_| Error::Parse {
                row: *line,
                message: format!("cannot parse value `{value_text}`"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    row: *line,
                    message: format!("non-finite value `{value_text}`"),
                });
            }
            rows.push((*line, period, value));
        }
        let label = if label.is_empty() {
            header
                .as_ref()
                .and_then(|h| h.get(value_idx).cloned())
                .unwrap_or_else(|| "value".to_string())
        } else {
            label.to_string()
        };
        TimeSeries::from_rows(label, rows)
    }
}

/// Load a series from a CSV file. See [`CsvOptions`] for column selection.
pub fn load_csv(path: impl AsRef<Path>, options: &CsvOptions) -> Result<TimeSeries> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    TimeSeries::read_csv(file, "", options)
}

/// One document's probability for one topic.
#[derive(Debug, Clone, PartialEq)]
pub struct DocTopicRecord {
    pub doc_id: String,
    pub period: Period,
    pub topic_id: String,
    pub probability: f64,
}

pub const SUM_TO_ONE_TOLERANCE: f64 = 1e-6;

/// Load `doc_id,period,topic_id,probability` rows; header optional.
pub fn load_doc_topics(path: impl AsRef<Path>) -> Result<Vec<DocTopicRecord>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_doc_topics(file)
}

pub fn read_doc_topics<R: Read>(reader: R) -> Result<Vec<DocTopicRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse {
            row: i + 1,
            message: e.to_string(),
        })?;
        let row = rec.position().map(|p| p.line() as usize).unwrap_or(i + 1);
        if rec.len() != 4 {
            return Err(Error::Parse {
                row,
                message: format!("expected 4 columns, found {}", rec.len()),
            });
        }
        let probability = rec[3].parse::<f64>();
        if i == 0 && probability.is_err() {
            continue;
        }
        let probability = probability.map_err(|_| Error::Parse {
            row,
            message: format!("cannot parse probability `{}`", &rec[3]),
        })?;
        if !(0.0..=1.0).contains(&probability) {
            return Err(Error::InvalidProbability {
                row,
                value: probability,
            });
        }
        let period = Period::parse(&rec[1], DateFormat::Auto).map_err(|_| Error::Parse {
            row,
            message: format!("cannot parse period `{}`", &rec[1]),
        })?;
        out.push(DocTopicRecord {
            doc_id: rec[0].to_string(),
            period,
            topic_id: rec[2].to_string(),
            probability,
        });
    }
    Ok(out)
}

/// Per-period mean probability of `topic` across documents.
///
/// Documents without a row for the topic contribute probability 0.
pub fn aggregate_prevalence(
    records: &[DocTopicRecord],
    topic: &str,
    frequency: Frequency,
) -> Result<TimeSeries> {
    aggregate_topics(records, &[topic], frequency)
}

/// Like [`aggregate_prevalence`] for a category: each document's
/// probabilities are summed over `topics` before averaging.
pub fn aggregate_topics(
    records: &[DocTopicRecord],
    topics: &[&str],
    frequency: Frequency,
) -> Result<TimeSeries> {
    if records.is_empty() {
        return Err(Error::Invalid("no topic records".into()));
    }
    for (i, r) in records.iter().enumerate() {
        if !(0.0..=1.0).contains(&r.probability) {
            return Err(Error::InvalidProbability {
                row: i + 1,
                value: r.probability,
            });
        }
    }
    let wanted: BTreeSet<&str> = topics.iter().copied().collect();
    for t in &wanted {
        if !records.iter().any(|r| r.topic_id == *t) {
            return Err(Error::UnknownTopic(t.to_string()));
        }
    }

    struct Doc {
        period: Period,
        total: f64,
        selected: f64,
    }
    let mut docs: HashMap<&str, Doc> = HashMap::new();
    let mut order: Vec<&str> = Vec::new();
    for r in records {
        let period = r.period.at_frequency(frequency)?;
        let doc = docs.entry(r.doc_id.as_str()).or_insert_with(|| {
            order.push(r.doc_id.as_str());
            Doc {
                period,
                total: 0.0,
                selected: 0.0,
            }
        });
        if doc.period != period {
            return Err(Error::Invalid(format!(
                "document `{}` appears in periods {} and {}",
                r.doc_id, doc.period, period
            )));
        }
        doc.total += r.probability;
        if wanted.contains(r.topic_id.as_str()) {
            doc.selected += r.probability;
        }
    }

    let mut per_period: BTreeMap<Period, (f64, usize)> = BTreeMap::new();
    for id in order {
        let doc = &docs[id];
        if (doc.total - 1.0).abs() > SUM_TO_ONE_TOLERANCE {
            return Err(Error::SumToOne {
                doc_id: id.to_string(),
                sum: doc.total,
            });
        }
        let slot = per_period.entry(doc.period).or_insert((0.0, 0));
        slot.0 += doc.selected;
        slot.1 += 1;
    }

    let first = *per_period.keys().next().expect("non-empty");
    let last = *per_period.keys().next_back().expect("non-empty");
    let mut values = Vec::new();
    let mut p = first;
    loop {
        let (sum, count) = per_period.get(&p).ok_or(Error::EmptyPeriod(p))?;
        values.push(sum / *count as f64);
        if p == last {
            break;
        }
        p = p.next();
    }
    TimeSeries::new(topics.join("+"), first, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ym(y: i32, m: u8) -> Period {
        Period::month(y, m).unwrap()
    }

    fn read(text: &str) -> Result<TimeSeries> {
        TimeSeries::read_csv(text.as_bytes(), "", &CsvOptions::default())
    }

    #[test]
    fn single_row_without_header() {
        let s = read("2020-01,5\n").unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.values(), &[5.0]);
        assert_eq!(s.first_period(), ym(2020, 1));
    }

    #[test]
    fn header_is_detected() {
        let s = read("Monat,topic modeling: (Weltweit)\n2020-01,5\n2020-02,6\n").unwrap();
        assert_eq!(s.values(), &[5.0, 6.0]);
        assert_eq!(s.label(), "topic modeling: (Weltweit)");
    }

    #[test]
    fn shuffled_rows_are_sorted() {
        let sorted = read("2020-01,1\n2020-02,2\n2020-03,3\n").unwrap();
        let shuffled = read("2020-03,3\n2020-01,1\n2020-02,2\n").unwrap();
        assert_eq!(sorted, shuffled);
    }

    #[test]
    fn day_format_and_named_columns() {
        let opts = CsvOptions {
            date_column: Column::Name("when".into()),
            value_column: Column::Name("y".into()),
            date_format: DateFormat::YearMonthDay,
        };
        let s = TimeSeries::read_csv(
            "y,when\n1.5,2021-11-01\n2,2021-12-01\n".as_bytes(),
            "",
            &opts,
        )
        .unwrap();
        assert_eq!(s.first_period(), ym(2021, 11));
        assert_eq!(s.values(), &[1.5, 2.0]);
    }

    #[test]
    fn gap_is_reported_with_row() {
        match read("date,value\n2020-01,1\n2020-02,2\n2020-04,3\n") {
            Err(Error::Gap {
                row,
                expected,
                found,
            }) => {
                assert_eq!(row, 4);
                assert_eq!(expected, ym(2020, 3));
                assert_eq!(found, ym(2020, 4));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_is_reported_with_row() {
        assert!(matches!(
            read("2020-01,1\n2020-02,2\n2020-02,3\n"),
            Err(Error::DuplicateTimestamp { row: 3, .. })
        ));
    }

    #[test]
    fn bad_value_and_bad_date() {
        assert!(matches!(
            read("2020-01,1\n2020-02,\n"),
            Err(Error::Parse { row: 2, .. })
        ));
        assert!(matches!(
            read("2020-01,1\n2020-13,2\n"),
            Err(Error::Parse { row: 2, .. })
        ));
        assert!(matches!(
            read("2020-01,1\n2020-02,NaN\n"),
            Err(Error::Parse { row: 2, .. })
        ));
    }

    #[test]
    fn missing_file_names_path() {
        let err = load_csv("/nonexistent/missing.csv", &CsvOptions::default()).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/missing.csv"));
    }

    #[test]
    fn annual_series() {
        let s = read("year,share\n2001,0.1\n2002,0.2\n").unwrap();
        assert_eq!(s.frequency(), Frequency::Annual);
        assert_eq!(s.last_period().to_string(), "2002");
    }

    #[test]
    fn slicing() {
        let s = TimeSeries::new("x", ym(2019, 11), (0..10).map(f64::from).collect()).unwrap();
        assert_eq!(s.slice(s.first_period(), s.last_period()).unwrap(), s);
        let one = s.slice(ym(2020, 2), ym(2020, 2)).unwrap();
        assert_eq!(one.values(), &[3.0]);
        assert_eq!(one.first_period(), ym(2020, 2));
        let mid = s.slice(ym(2020, 1), ym(2020, 4)).unwrap();
        assert_eq!(mid.values(), &[2.0, 3.0, 4.0, 5.0]);
        assert!(matches!(
            s.slice(ym(2019, 1), ym(2020, 1)),
            Err(Error::OutOfRange { .. })
        ));
        assert!(s.slice(ym(2020, 4), ym(2020, 1)).is_err());
    }

    #[test]
    fn differencing() {
        let s = TimeSeries::new("x", ym(2020, 1), vec![1.0, 1.5, 2.0]).unwrap();
        let d = s.diff().unwrap();
        assert_eq!(d.values(), &[0.5, 0.5]);
        assert_eq!(d.first_period(), ym(2020, 2));
        let c = TimeSeries::new("c", ym(2020, 1), vec![3.0; 5]).unwrap();
        assert!(c.diff().unwrap().values().iter().all(|&v| v == 0.0));
        let short = TimeSeries::new("x", ym(2020, 1), vec![1.0]).unwrap();
        assert!(matches!(short.diff(), Err(Error::TooShort { .. })));
    }

    #[test]
    fn index_lookup() {
        let s = TimeSeries::new("x", ym(2004, 1), vec![0.0; 241]).unwrap();
        assert_eq!(s.last_period(), ym(2024, 1));
        assert_eq!(s.index_of(ym(2020, 1)).unwrap(), 193);
        assert_eq!(s.index_of(ym(2021, 12)).unwrap(), 216);
        assert_eq!(s.period_at(216), Some(ym(2021, 12)));
        assert_eq!(s.period_at(0), None);
    }

    fn rec(doc: &str, period: Period, topic: &str, p: f64) -> DocTopicRecord {
        DocTopicRecord {
            doc_id: doc.into(),
            period,
            topic_id: topic.into(),
            probability: p,
        }
    }

    #[test]
    fn prevalence_is_mean_per_period() {
        let p = ym(2020, 1);
        let records = vec![
            rec("a", p, "t1", 0.2),
            rec("a", p, "t2", 0.8),
            rec("b", p, "t1", 0.4),
            rec("b", p, "t2", 0.6),
        ];
        let s = aggregate_prevalence(&records, "t1", Frequency::Monthly).unwrap();
        assert!((s.values()[0] - 0.3).abs() < 1e-15);
        let single = aggregate_prevalence(&records[..2], "t1", Frequency::Monthly).unwrap();
        assert_eq!(single.values(), &[0.2]);
    }

    #[test]
    fn prevalence_errors() {
        let records = vec![
            rec("a", ym(2020, 1), "t1", 0.5),
            rec("a", ym(2020, 1), "t2", 0.4),
        ];
        assert!(matches!(
            aggregate_prevalence(&records, "t1", Frequency::Monthly),
            Err(Error::SumToOne { .. })
        ));
        let records = vec![
            rec("a", ym(2020, 1), "t1", 1.0),
            rec("b", ym(2020, 3), "t1", 1.0),
        ];
        assert!(matches!(
            aggregate_prevalence(&records, "t1", Frequency::Monthly),
            Err(Error::EmptyPeriod(p)) if p == ym(2020, 2)
        ));
        // the same records are contiguous at annual frequency
        let annual = aggregate_prevalence(&records, "t1", Frequency::Annual).unwrap();
        assert_eq!(annual.values(), &[1.0]);
        assert!(matches!(
            aggregate_prevalence(&records, "t9", Frequency::Monthly),
            Err(Error::UnknownTopic(_))
        ));
    }

    #[test]
    fn doc_topic_csv() {
        let text = "doc_id,period,topic_id,probability\nd1,2020,x,0.25\nd1,2020,y,0.75\n";
        let recs = read_doc_topics(text.as_bytes()).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[1].probability, 0.75);
        let bad = "d1,2020,x,1.5\n";
        assert!(matches!(
            read_doc_topics(bad.as_bytes()),
            Err(Error::InvalidProbability { row: 1, .. })
        ));
    }
}
