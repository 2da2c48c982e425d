//! Experiment reports and their CSV / JSON forms.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

use super::config::Format;
use crate::error::{Error, Result};

pub const COLUMNS: [&str; 7] = [
    "N",
    "empirical_sum",
    "predicted_main",
    "predicted_secondary",
    "abs_error",
    "rel_error",
    "wall_time_ms",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub n: f64,
    pub empirical_sum: f64,
    pub predicted_main: f64,
    pub predicted_secondary: f64,
    pub abs_error: f64,
    /// `None` when the prediction is zero.
    pub rel_error: Option<f64>,
    pub wall_time_ms: f64,
}

impl Row {
    pub fn new(n: f64, empirical: f64, main: f64, secondary: f64, wall_time_ms: f64) -> Self {
        let total = main + secondary;
        Row {
            n,
            empirical_sum: empirical,
            predicted_main: main,
            predicted_secondary: secondary,
            abs_error: (empirical - total).abs(),
            rel_error: (total != 0.0).then(|| (empirical - total) / total),
            wall_time_ms,
        }
    }

    pub fn predicted_total(&self) -> f64 {
        self.predicted_main + self.predicted_secondary
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// A free-form table for subcommands whose output is not a row series.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?)
            .map_err(|e| Error::Io(e.to_string()))
    }
}

fn io(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub kind: String,
    pub metadata: BTreeMap<String, String>,
    pub rows: Vec<Row>,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default)]
    pub warnings: Vec<String>,
    #[serde(default)]
    pub tables: BTreeMap<String, Table>,
}

impl Report {
    pub fn new(kind: &str) -> Self {
        Report {
            kind: kind.to_string(),
            ..Default::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.insert(key.to_string(), value.to_string());
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The row table; identical configs give identical text apart from the
    /// wall-time column.
    pub fn to_csv(&self) -> Result<String> {
        let mut t = Table::new(&COLUMNS);
        for r in &self.rows {
            t.push(vec![
                num(r.n),
                num(r.empirical_sum),
                num(r.predicted_main),
                num(r.predicted_secondary),
                num(r.abs_error),
                r.rel_error.map(num).unwrap_or_default(),
                format!("{:.3}", r.wall_time_ms),
            ]);
        }
        t.to_csv()
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Io(e.to_string()))
    }
}

/// A float rounded to 12 significant digits, printed in the shortest form
/// that reads back to the rounded value.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    format!("{r}")
}

/// The table printed as CSV: the row series, or for reports without rows
/// the named primary table, or else the checks.
fn primary_csv(report: &Report) -> Result<String> {
    if report.rows.is_empty() && report.tables.is_empty() && !report.checks.is_empty() {
        let mut t = Table::new(&["check", "passed", "detail"]);
        for c in &report.checks {
            t.push(vec![c.name.clone(), c.passed.to_string(), c.detail.clone()]);
        }
        return t.to_csv();
    }
    if !report.rows.is_empty() || report.tables.is_empty() {
        return report.to_csv();
    }
    let name = report.metadata.get("primary_table");
    let t = name
        .and_then(|n| report.tables.get(n))
        .or_else(|| report.tables.values().next())
        .expect("tables is non-empty");
    t.to_csv()
}

fn sibling(path: &Path, table: &str) -> std::path::PathBuf {
    let clean: String = table
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect();
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("report");
    path.with_file_name(format!("{stem}.{}.csv", clean.trim_matches('_')))
}

/// Renders the report and writes it when `path` is given. In CSV form the
/// tables other than the printed one go to `<stem>.<table>.csv` beside it.
pub fn emit_report(report: &Report, format: Format, path: Option<&Path>) -> Result<String> {
    let text = match format {
        Format::Csv => primary_csv(report)?,
        Format::Json => report.to_json()?,
    };
    if let Some(p) = path {
        std::fs::write(p, &text)?;
        if format == Format::Csv {
            let shown = if report.rows.is_empty() {
                report.metadata.get("primary_table")
            } else {
                None
            };
            for (name, t) in &report.tables {
                if Some(name) != shown {
                    std::fs::write(sibling(p, name), t.to_csv()?)?;
                }
            }
        }
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(0.1 + 0.2), "0.3");
        assert_eq!(num(83.72839899906339), "83.7283989991");
        assert_eq!(num(-2.5e-7), "-0.00000025");
    }

    #[test]
    fn empty_report_is_header_only() {
        let r = Report::new("pit");
        assert_eq!(
            r.to_csv().unwrap(),
            "N,empirical_sum,predicted_main,predicted_secondary,abs_error,rel_error,wall_time_ms\n"
        );
    }

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("pit");
        r.rows.push(Row::new(100.0, 83.7284, 100.0, 0.0, 1.5));
        r.rows.push(Row::new(2.0, 0.0, 0.0, 0.0, 0.1));
        r.meta("field", "Q");
        r.checks.push(Check::new("x", true, "ok"));
        let back = Report::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.rows[1].rel_error, None);
        assert!((r.rows[0].rel_error.unwrap() + 0.162716).abs() < 1e-6);
    }

    #[test]
    fn tables_go_beside_the_output() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("run.csv");
        let mut r = Report::new("sectors");
        let mut t = Table::new(&["a"]);
        t.push(vec!["1".into()]);
        r.tables.insert("main".into(), t.clone());
        r.tables.insert("cubes[N=10]".into(), t);
        r.meta("primary_table", "main");
        assert_eq!(emit_report(&r, Format::Csv, Some(&out)).unwrap(), "a\n1\n");
        assert!(dir.path().join("run.cubes_N_10.csv").exists());
        assert!(!dir.path().join("run.main.csv").exists());
    }
}
