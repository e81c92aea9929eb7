//! Column tables written as CSV or JSON, each with a metadata sidecar.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_num(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            // JSON has no NaN; emit null.
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(serde_json::Value::Null, Into::into),
            Cell::Int(i) => (*i).into(),
            Cell::Text(s) => s.clone().into(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as u64)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_owned())
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
            .rows
            .iter()
            .map(|r| self.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect())
            .collect();
        serde_json::to_string_pretty(&rows).expect("table rows serialize")
    }
}

/// SHA-256 over git's blob framing, `blob <len>\0<bytes>`.
pub fn content_hash(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(format!("blob {}\0", bytes.len()).as_bytes());
    h.update(bytes);
    hex(&h.finalize())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Debug, Serialize)]
struct Meta<'a, C: Serialize> {
    command: &'a str,
    version: &'a str,
    seed: u64,
    config: &'a C,
    config_hash: String,
    input_hash: String,
    columns: &'a [String],
    rows: usize,
    notes: &'a [String],
}

/// Where and how a command writes its tables.
pub struct Sink<'a, C: Serialize> {
    pub dir: PathBuf,
    pub format: Format,
    pub command: &'a str,
    pub seed: u64,
    pub config: &'a C,
    /// Raw bytes of the inputs (config file, compared tables).
    pub inputs: Vec<u8>,
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

impl<C: Serialize> Sink<'_, C> {
    /// Writes `<stem>.csv|json` and `<stem>.<ext>.meta.json`; returns the
    /// table path.
    pub fn write(&self, stem: &str, table: &Table, notes: &[String]) -> Result<PathBuf> {
        std::fs::create_dir_all(&self.dir).map_err(|e| CliError::io(&self.dir, e))?;
        let (ext, body) = match self.format {
            Format::Csv => ("csv", table.to_csv()),
            Format::Json => ("json", table.to_json()),
        };
        let path = self.dir.join(format!("{stem}.{ext}"));
        write_file(&path, &body)?;
        let config_json = serde_json::to_vec(self.config).expect("config serializes");
        let meta = Meta {
            command: self.command,
            version: env!("CARGO_PKG_VERSION"),
            seed: self.seed,
            config: self.config,
            config_hash: content_hash(&config_json),
            input_hash: content_hash(&self.inputs),
            columns: &table.columns,
            rows: table.rows.len(),
            notes,
        };
        let meta_path = self.dir.join(format!("{stem}.{ext}.meta.json"));
        write_file(&meta_path, &serde_json::to_string_pretty(&meta).expect("meta serializes"))?;
        Ok(path)
    }
}

/// A table read back from CSV.
#[derive(Debug, Clone)]
pub struct ReadTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ReadTable {
    pub fn read(path: &Path) -> Result<(Self, Vec<u8>)> {
        let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
        let mut rdr = csv::Reader::from_reader(bytes.as_slice());
        let bad = |e: csv::Error| CliError::Schema(format!("{}: {e}", path.display()));
        let columns = rdr.headers().map_err(bad)?.iter().map(str::to_owned).collect();
        let rows = rdr
            .records()
            .map(|r| r.map(|r| r.iter().map(str::to_owned).collect()).map_err(bad))
            .collect::<Result<Vec<Vec<String>>>>()?;
        Ok((Self { columns, rows }, bytes))
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn num(&self, row: usize, col: usize) -> Result<f64> {
        let s = &self.rows[row][col];
        s.parse()
            .map_err(|_| CliError::Schema(format!("column {} row {row}: not a number: {s:?}", self.columns[col])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, f64::MIN_POSITIVE] {
            assert_eq!(format_num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_num(f64::NAN), "NaN");
        assert_eq!(format_num(f64::NAN).parse::<f64>().unwrap().is_nan(), true);
    }

    #[test]
    fn git_blob_framing() {
        // `printf 'hello\n' | git hash-object --object-format=sha256 --stdin`
        assert_eq!(
            content_hash(b"hello\n"),
            "2cf8d83d9ee29543b34a87727421fdecb7e3f3a183d337639025de576db9ebb4"
        );
    }

    #[test]
    fn csv_and_json_shapes() {
        let mut t = Table::new(["t", "n", "tag"]);
        t.push(vec![0.5.into(), 3usize.into(), "x".into()]);
        assert_eq!(t.to_csv(), "t,n,tag\n5.0000000000000000e-1,3,x\n");
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v[0]["n"], 3);
    }
}
