//! Tables, run manifests and their CSV/JSON serialization.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    /// No value, e.g. an exact column where no oracle exists.
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format::float(*v),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            // Round-trip through the fixed-precision text so JSON and CSV
            // carry identical values.
            Cell::Float(v) => format::float(*v)
                .parse::<f64>()
                .ok()
                .and_then(serde_json::Number::from_f64)
                .map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(i64::from(v))
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

/// Result of one command: named columns plus the parameters that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub parameters: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, parameters: Value, columns: Vec<&'static str>) -> Self {
        Self { command, parameters, columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Units {
    pub hbar: f64,
    pub omega: f64,
    pub k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub argv: Vec<String>,
    pub parameters: Value,
    pub units: Units,
    pub columns: Vec<&'static str>,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(table: &Table, units: Units, argv: Vec<String>) -> Self {
        Self {
            tool: "arrival",
            version: env!("CARGO_PKG_VERSION"),
            command: table.command,
            argv,
            parameters: table.parameters.clone(),
            units,
            columns: table.columns.clone(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// CSV with the manifest as a `#`-prefixed JSON line above the header.
pub fn render_csv(table: &Table, manifest: &RunManifest) -> String {
    let mut out = String::new();
    out.push_str("# ");
    out.push_str(&serde_json::to_string(manifest).expect("manifest serializes"));
    out.push('\n');
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(Cell::csv).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// `{"manifest": ..., "records": [{column: value, ...}, ...]}`.
pub fn render_json(table: &Table, manifest: &RunManifest) -> String {
    let records: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let obj: Map<String, Value> =
                table.columns.iter().zip(row).map(|(c, v)| ((*c).to_string(), v.json())).collect();
            Value::Object(obj)
        })
        .collect();
    let doc = serde_json::json!({ "manifest": manifest, "records": records });
    let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
    s.push('\n');
    s
}

pub fn render(table: &Table, manifest: &RunManifest, format: Format) -> String {
    match format {
        Format::Csv => render_csv(table, manifest),
        Format::Json => render_json(table, manifest),
    }
}

/// Relative paths are placed under `OUTPUT_DIR` when that variable is set.
pub fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os("OUTPUT_DIR") {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Sidecar manifest location `<path>.manifest.json`.
pub fn manifest_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

/// Writes the rendered table to `path` (or stdout) and, for files, the
/// manifest sidecar next to it.
pub fn emit(table: &Table, manifest: &RunManifest, format: Format, path: Option<&Path>) -> std::io::Result<()> {
    let body = render(table, manifest, format);
    match path {
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(body.as_bytes())?;
            lock.flush()
        }
        Some(p) => {
            let p = resolve_output(p);
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(&p, body)?;
            let mut sidecar = serde_json::to_string_pretty(manifest).expect("manifest serializes");
            sidecar.push('\n');
            fs::write(manifest_path(&p), sidecar)
        }
    }
}
