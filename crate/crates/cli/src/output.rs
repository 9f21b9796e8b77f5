//! Machine-readable records and the three output formats.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use umbraldob_core::rational::{to_decimal, to_fraction_string};
use umbraldob_core::{CertifiedValue, QPolynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum RecordValue {
    Integer { value: String },
    /// Lowest degree first, each entry `numerator/denominator`.
    Polynomial { coefficients: Vec<String> },
    Interval { lo: String, hi: String },
    Verdict { passed: bool, detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub kind: String,
    pub parameters: BTreeMap<String, String>,
    pub value: RecordValue,
}

impl OutputRecord {
    pub fn new(kind: &str, parameters: &[(&str, String)], value: RecordValue) -> Self {
        OutputRecord {
            kind: kind.to_string(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            value,
        }
    }
}

impl RecordValue {
    pub fn integer(v: impl ToString) -> Self {
        RecordValue::Integer { value: v.to_string() }
    }

    pub fn polynomial(p: &QPolynomial) -> Self {
        RecordValue::Polynomial { coefficients: poly_fractions(p) }
    }

    pub fn interval(v: &CertifiedValue) -> Self {
        RecordValue::Interval { lo: to_fraction_string(v.lo()), hi: to_fraction_string(v.hi()) }
    }

    pub fn verdict(passed: bool, detail: impl Into<String>) -> Self {
        RecordValue::Verdict { passed, detail: detail.into() }
    }
}

pub fn poly_fractions(p: &QPolynomial) -> Vec<String> {
    p.coeffs().iter().map(to_fraction_string).collect()
}

/// Coefficients joined by single spaces; the zero polynomial is an empty field.
pub fn poly_field(p: &QPolynomial) -> String {
    poly_fractions(p).join(" ")
}

pub fn decimal(r: &Rational) -> String {
    to_decimal(r, 15)
}

pub fn interval_decimal(v: &CertifiedValue) -> String {
    format!("[{}, {}]", decimal(v.lo()), decimal(v.hi()))
}

/// Everything a command produced, ready to be rendered in any format.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub records: Vec<OutputRecord>,
    pub csv_header: Vec<String>,
    pub csv_rows: Vec<Vec<String>>,
    pub pretty: Vec<String>,
    pub failed: bool,
}

impl Report {
    pub fn with_header(header: &[&str]) -> Self {
        Report { csv_header: header.iter().map(|s| s.to_string()).collect(), ..Report::default() }
    }

    pub fn render(&self, format: Format) -> Result<String, RenderError> {
        match format {
            Format::Json => render_json(&self.records),
            Format::Csv => render_csv(&self.csv_header, &self.csv_rows),
            Format::Pretty => {
                let mut out = String::new();
                for line in &self.pretty {
                    writeln!(out, "{line}").expect("write to String");
                }
                Ok(out)
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("csv output is not UTF-8")]
    Utf8,
}

/// A single top-level array, pretty-printed, newline-terminated.
pub fn render_json(records: &[OutputRecord]) -> Result<String, RenderError> {
    let mut s = serde_json::to_string_pretty(records)?;
    s.push('\n');
    Ok(s)
}

pub fn parse_json(text: &str) -> Result<Vec<OutputRecord>, RenderError> {
    Ok(serde_json::from_str(text)?)
}

/// Comma separated, header row, LF line endings.
pub fn render_csv(header: &[String], rows: &[Vec<String>]) -> Result<String, RenderError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| RenderError::Csv(e.into_error().into()))?;
    String::from_utf8(bytes).map_err(|_| RenderError::Utf8)
}

/// Header and rows of a CSV document produced by [`render_csv`].
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>), RenderError> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = r.headers()?.iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|rec| rec.iter().map(str::to_string).collect()))
        .collect::<Result<_, _>>()?;
    Ok((header, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use umbraldob_core::poly::qpoly;

    #[test]
    fn json_shape() {
        let rec = OutputRecord::new("cigl-q-bell", &[("n", "3".into())], RecordValue::polynomial(&qpoly(&[2, 1, 1, 1])));
        let text = render_json(&[rec.clone()]).unwrap();
        assert!(text.starts_with('['));
        assert!(text.contains("\"2/1\""));
        assert!(text.contains("\"type\": \"polynomial\""));
        assert_eq!(parse_json(&text).unwrap(), vec![rec]);
    }

    #[test]
    fn csv_round_trip() {
        let header = vec!["n".to_string(), "value".to_string()];
        let rows = vec![vec!["5".to_string(), "52".to_string()], vec!["6".into(), "1/2 3/4".into()]];
        let text = render_csv(&header, &rows).unwrap();
        assert_eq!(text, "n,value\n5,52\n6,1/2 3/4\n");
        let (h, r) = parse_csv(&text).unwrap();
        assert_eq!(render_csv(&h, &r).unwrap(), text);
    }
}
