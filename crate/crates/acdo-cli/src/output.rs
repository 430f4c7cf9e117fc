//! Table rendering: one row representation, two encodings (CSV and JSON)
//! guaranteed to carry identical values.
//!
//! Conventions:
//! - CSV: optional `# `-prefixed comment lines, then a header row, then data
//!   rows; `.` decimal point, no locale, minimal quoting (a field is quoted
//!   only if it contains a comma, quote, or newline).
//! - JSON: an array of row objects keyed by the column names. Non-finite
//!   floats become `null` (paired with a reason in an `error` column where
//!   the table has one).
//! - Floats are emitted with 17 significant digits in CSV (`{:.16e}`) and in
//!   shortest round-trip form in JSON; both parse back to the exact `f64`.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

/// Output encoding selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse_name(name: &str) -> Result<Self, String> {
        match name.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!(
                "DomainError format: expected csv or json (got {other:?})"
            )),
        }
    }
}

/// One table cell.
pub enum Cell {
    Int(i64),
    Float(f64),
    /// Static label (branch names, axis names).
    Str(&'static str),
    /// Error column: empty in CSV / `null` in JSON when absent.
    ErrorText(Option<String>),
}

/// 17-significant-digit float form used in CSV output; round-trips exactly.
pub fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.16e}")
    }
}

fn csv_field(text: &str) -> String {
    if text.contains(',') || text.contains('"') || text.contains('\n') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_float(*v),
            Cell::Str(s) => csv_field(s),
            Cell::ErrorText(None) => String::new(),
            Cell::ErrorText(Some(msg)) => csv_field(msg),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            // Value::from(f64) maps non-finite to Null.
            Cell::Float(v) => Value::from(*v),
            Cell::Str(s) => Value::from(*s),
            Cell::ErrorText(None) => Value::Null,
            Cell::ErrorText(Some(msg)) => Value::from(msg.as_str()),
        }
    }
}

/// A rectangular result table plus free-form comment lines (CSV only; the
/// JSON encoding is a bare array of row objects so downstream tools can load
/// it without stripping anything).
pub struct Table {
    pub comments: Vec<String>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        for comment in &self.comments {
            out.push_str("# ");
            out.push_str(comment);
            out.push('\n');
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            debug_assert_eq!(row.len(), self.columns.len());
            let fields: Vec<String> = row.iter().map(Cell::to_csv).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert((*name).to_string(), cell.to_json());
                }
                Value::Object(obj)
            })
            .collect();
        let mut text =
            serde_json::to_string_pretty(&Value::Array(rows)).expect("rows are valid JSON values");
        text.push('\n');
        text
    }
}

/// Write to the `--output` path, or standard output when none was given.
pub fn write_output(path: Option<&Path>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| format!("OutputError: cannot write {}: {e}", p.display())),
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            handle
                .write_all(content.as_bytes())
                .and_then(|()| handle.flush())
                .map_err(|e| format!("OutputError: cannot write standard output: {e}"))
        }
    }
}
