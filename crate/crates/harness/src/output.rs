//! CSV tables and their metadata sidecars.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::SceneConfig;
use crate::error::{HarnessError, Result};

/// Significant digits written for floating-point cells.
pub const SIGNIFICANT_DIGITS: usize = 9;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Float(x) => format_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Float(x) => Some(*x),
            Cell::Int(i) => Some(*i as f64),
            Cell::Text(_) => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Int(b as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// Scientific notation with nine significant digits. Zero keeps its sign so
/// `-0` stays distinguishable; infinities render as `inf`/`-inf`.
pub fn format_float(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
}

/// A result table with a stable header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    /// Appends a row. NaN cells are a programming error.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.header.len(), "row width differs from header");
        assert!(
            !row.iter().any(|c| matches!(c, Cell::Float(x) if x.is_nan())),
            "NaN in result row {row:?}"
        );
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// All values of a numeric column, in row order.
    pub fn values(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.column(name)?;
        self.rows.iter().map(|r| r[j].as_f64()).collect()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        let bytes = w.into_inner().map_err(|e| HarnessError::io("csv buffer", e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv_string()?).map_err(|e| HarnessError::io(path, e))
    }
}

#[derive(Debug, Serialize)]
struct Metadata<'a> {
    tool: &'static str,
    version: &'static str,
    experiment: &'a str,
    csv: String,
    rows: usize,
    columns: &'a [String],
    config_sha256: &'a str,
    config: &'a str,
}

/// `<csv>.meta.json` next to the CSV.
pub fn metadata_path(csv: &Path) -> PathBuf {
    let mut name = csv.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".meta.json");
    csv.with_file_name(name)
}

/// Writes the table and its metadata sidecar (tool version, config hash and
/// the full effective config).
pub fn emit_csv(table: &Table, path: &Path, experiment: &str, config: &SceneConfig) -> Result<()> {
    table.write_csv(path)?;
    let meta = Metadata {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        experiment,
        csv: path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default(),
        rows: table.len(),
        columns: &table.header,
        config_sha256: &config.hash,
        config: &config.canonical,
    };
    let text = serde_json::to_string_pretty(&meta).expect("metadata serializes") + "\n";
    let meta_path = metadata_path(path);
    fs::write(&meta_path, text).map_err(|e| HarnessError::io(&meta_path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ConfigFile;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_float(1.0), "1.00000000e0");
        assert_eq!(format_float(-0.000123456789123), "-1.23456789e-4");
        assert_eq!(format_float(123456789012.0), "1.23456789e11");
        assert_eq!(format_float(f64::NEG_INFINITY), "-inf");
        let parsed: f64 = format_float(std::f64::consts::PI).parse().unwrap();
        assert!((parsed - std::f64::consts::PI).abs() < 5e-9);
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = Table::new(&["a", "b"]);
        assert_eq!(t.to_csv_string().unwrap(), "a,b\n");
    }

    #[test]
    fn rows_keep_order() {
        let mut t = Table::new(&["x", "name"]);
        t.push(vec![2.0.into(), "b".into()]);
        t.push(vec![1.0.into(), "a".into()]);
        assert_eq!(t.to_csv_string().unwrap(), "x,name\n2.00000000e0,b\n1.00000000e0,a\n");
        assert_eq!(t.values("x").unwrap(), vec![2.0, 1.0]);
        assert!(t.values("name").is_none());
    }

    #[test]
    #[should_panic(expected = "NaN")]
    fn nan_rows_are_refused() {
        let mut t = Table::new(&["x"]);
        t.push(vec![f64::NAN.into()]);
    }

    #[test]
    fn sidecar_records_hash_and_version() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = ConfigFile::default().resolve().unwrap();
        let mut t = Table::new(&["x"]);
        t.push(vec![1.5.into()]);
        let path = dir.path().join("out.csv");
        emit_csv(&t, &path, "demo", &cfg).unwrap();
        let meta: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(metadata_path(&path)).unwrap()).unwrap();
        assert_eq!(meta["config_sha256"], cfg.hash.as_str());
        assert_eq!(meta["version"], env!("CARGO_PKG_VERSION"));
        assert_eq!(meta["rows"], 1);
        assert_eq!(metadata_path(&path).file_name().unwrap(), "out.csv.meta.json");
    }
}
