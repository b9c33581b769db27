//! Reading samples from CSV and JSON.
//!
//! CSV input has one series per row, no header, and rows may differ in
//! length. JSON input is an object `{"series": [[...], ...], "weights":
//! [...]}` where `weights` is optional.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::series::{Sample, TimeSeries};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonSample {
    series: Vec<Vec<f64>>,
    #[serde(default)]
    weights: Option<Vec<f64>>,
}

/// Series and optional weights as read from a file, before validation.
#[derive(Debug, Clone, PartialEq)]
pub struct RawSample {
    pub series: Vec<Vec<f64>>,
    pub weights: Option<Vec<f64>>,
}

impl RawSample {
    /// Builds a [`Sample`], using `weights` when given, else the file's
    /// weights, else unit weights.
    pub fn into_sample(self, weights: Option<Vec<f64>>) -> Result<Sample> {
        let series = self
            .series
            .into_iter()
            .map(TimeSeries::new)
            .collect::<Result<Vec<_>>>()?;
        match weights.or(self.weights) {
            Some(w) => Sample::new(series, w),
            None => Sample::unweighted(series),
        }
    }
}

/// Parses CSV text: one series per non-empty row.
pub fn parse_csv(text: &str) -> Result<RawSample> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut series = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let fields: Vec<&str> = record.iter().filter(|f| !f.is_empty()).collect();
        if fields.is_empty() {
            continue;
        }
        let values = fields
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("row {}: cannot parse {f:?}", row + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        series.push(values);
    }
    Ok(RawSample {
        series,
        weights: None,
    })
}

/// Parses the JSON sample form.
pub fn parse_json(text: &str) -> Result<RawSample> {
    let parsed: JsonSample = serde_json::from_str(text)?;
    Ok(RawSample {
        series: parsed.series,
        weights: parsed.weights,
    })
}

/// Reads a file, as JSON when its extension is `.json` and as CSV
/// otherwise.
pub fn read_raw(path: &Path) -> Result<RawSample> {
    let text = fs::read_to_string(path)?;
    let is_json = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if is_json {
        parse_json(&text)
    } else {
        parse_csv(&text)
    }
}

/// Reads and validates a sample with the file's weights or unit weights.
pub fn read_sample(path: &Path) -> Result<Sample> {
    read_raw(path)?.into_sample(None)
}

/// Writes one series per row.
pub fn write_csv(path: &Path, series: &[TimeSeries]) -> Result<()> {
    let mut out = String::new();
    for x in series {
        out.push_str(&x.to_string());
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rows_of_different_lengths() {
        let raw = parse_csv("1,4,2,3\n\n4, 2 ,4\n# note\n").unwrap();
        assert_eq!(raw.series, vec![vec![1., 4., 2., 3.], vec![4., 2., 4.]]);
        let s = raw.into_sample(None).unwrap();
        assert_eq!(s.weights(), &[1.0, 1.0]);
    }

    #[test]
    fn csv_errors() {
        assert!(matches!(parse_csv("1,x"), Err(Error::Parse(_))));
        assert!(parse_csv("").unwrap().into_sample(None).is_err());
    }

    #[test]
    fn json_with_weights() {
        let raw = parse_json(r#"{"series": [[1, 2], [3]], "weights": [2, 0.5]}"#).unwrap();
        let s = raw.clone().into_sample(None).unwrap();
        assert_eq!(s.weights(), &[2.0, 0.5]);
        let s = raw.into_sample(Some(vec![1.0, 1.0])).unwrap();
        assert_eq!(s.weights(), &[1.0, 1.0]);
        assert!(parse_json(r#"{"series": [[1]], "extra": 1}"#).is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let csv = dir.path().join("s.csv");
        let series = vec![
            TimeSeries::new(vec![1.5, -2.0]).unwrap(),
            TimeSeries::new(vec![0.25]).unwrap(),
        ];
        write_csv(&csv, &series).unwrap();
        assert_eq!(read_sample(&csv).unwrap().series(), &series[..]);

        let json = dir.path().join("s.JSON");
        fs::write(&json, r#"{"series": [[1.5, -2], [0.25]]}"#).unwrap();
        assert_eq!(read_sample(&json).unwrap().series(), &series[..]);
    }
}
