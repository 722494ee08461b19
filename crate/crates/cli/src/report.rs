//! One tabular result rendered either as CSV behind a `#` comment header or as JSON.
//!
//! Both renderings carry the same manifest, summary, column descriptions, notes and rows.

use std::fs;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};
use crate::manifest::RunManifest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Column {
    pub name: String,
    pub description: String,
}

impl Column {
    pub fn new(name: impl Into<String>, description: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            description: description.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub manifest: RunManifest,
    pub summary: Vec<(String, Value)>,
    pub notes: Vec<String>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
}

impl Report {
    pub fn new(manifest: RunManifest, columns: Vec<Column>) -> Self {
        Self {
            manifest,
            summary: Vec::new(),
            notes: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn summary(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.push((key.to_string(), value.into()));
    }

    pub fn push_row(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn summary_value(&self, key: &str) -> Option<&Value> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_json_value(&self) -> Value {
        let summary: Map<String, Value> = self.summary.iter().cloned().collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .map(|c| c.name.clone())
                        .zip(r.iter().cloned())
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({
            "manifest": self.manifest,
            "summary": summary,
            "notes": self.notes,
            "columns": self.columns,
            "rows": rows,
        })
    }

    pub fn to_json(&self) -> CliResult<String> {
        serde_json::to_string_pretty(&self.to_json_value()).map_err(|e| CliError::Serialize(e.to_string()))
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let m = &self.manifest;
        let mut head = String::new();
        head.push_str(&format!("# command: {}\n", m.command));
        head.push_str(&format!("# tool_version: {}\n", m.tool_version));
        head.push_str(&format!("# unit_system: {}\n", m.unit_system));
        head.push_str(&format!("# timestamp: {}\n", m.timestamp));
        for (k, v) in &m.parameters {
            head.push_str(&format!("# parameter {k}: {v}\n"));
        }
        for w in &m.warnings {
            head.push_str(&format!("# warning: {w}\n"));
        }
        for (k, v) in &self.summary {
            head.push_str(&format!("# summary {k}: {}\n", cell(v)));
        }
        for n in &self.notes {
            head.push_str(&format!("# note: {n}\n"));
        }
        for c in &self.columns {
            head.push_str(&format!("# column {}: {}\n", c.name, c.description));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        let ser = |e: csv::Error| CliError::Serialize(e.to_string());
        w.write_record(self.columns.iter().map(|c| c.name.as_str()))
            .map_err(ser)?;
        for r in &self.rows {
            w.write_record(r.iter().map(cell)).map_err(ser)?;
        }
        let body = w.into_inner().map_err(|e| CliError::Serialize(e.to_string()))?;
        Ok(head + &String::from_utf8_lossy(&body))
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Writes to `path`, creating parent directories.
pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(io)?;
    }
    let mut f = fs::File::create(path).map_err(io)?;
    f.write_all(contents.as_bytes()).map_err(io)
}

/// Shortest round-trip text of a float, switching to exponent form for very large or small values.
pub fn fmt_num(x: f64) -> String {
    num(x).to_string().trim_matches('"').to_string()
}

/// A finite f64 as a JSON number; non-finite values become strings so the JSON stays valid.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or_else(|| Value::String(x.to_string()))
}
