//! Deterministic CSV artifacts.
//!
//! Floats are written with 17 significant digits (`{:.16e}`), which
//! round-trips every finite `f64` bit-exactly.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
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

pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(f) => format_float(*f),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// Writes a header row and `rows`; every row must match the header width.
pub fn write_csv<W: Write>(writer: W, header: &[&str], rows: &[Vec<Cell>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(header)?;
    for (i, row) in rows.iter().enumerate() {
        if row.len() != header.len() {
            return Err(Error::InvalidParameter(format!("row {i} has {} cells, header has {}", row.len(), header.len())));
        }
        w.write_record(row.iter().map(Cell::render))?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(path: &Path, header: &[&str], rows: &[Vec<Cell>]) -> Result<()> {
    let mut buf = Vec::new();
    write_csv(&mut buf, header, rows)?;
    File::create(path)?.write_all(&buf)?;
    Ok(())
}

/// Header plus rows of raw fields; rows must all match the header width.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn floats(&self, name: &str) -> Result<Vec<f64>> {
        let c = self.column(name).ok_or_else(|| Error::InvalidParameter(format!("no column `{name}`")))?;
        self.rows
            .iter()
            .map(|r| r[c].trim().parse::<f64>().map_err(|e| Error::InvalidParameter(format!("column `{name}`: {e}"))))
            .collect()
    }
}

pub fn parse_csv(text: &str) -> Result<CsvTable> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).flexible(false).from_reader(text.as_bytes());
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    let rows = r.records().map(|rec| rec.map(|rec| rec.iter().map(str::to_string).collect())).collect::<std::result::Result<Vec<Vec<String>>, _>>()?;
    Ok(CsvTable { header, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_rows_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &["omega", "p0"], &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "omega,p0\n");
    }

    #[test]
    fn single_row_round_trips() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &["k", "v"], &[vec![Cell::Int(0), Cell::Float(1.0)]]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        let t = parse_csv(&text).unwrap();
        assert_eq!(t.floats("v").unwrap()[0].to_bits(), 1.0f64.to_bits());
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(write_csv(Vec::new(), &["a", "b"], &[vec![Cell::Int(1)]]).is_err());
        assert!(parse_csv("a,b\n1\n").is_err());
    }

    #[test]
    fn awkward_floats_round_trip() {
        for v in [0.1 + 0.2, -1e-300, 5e-324, f64::MAX, std::f64::consts::PI] {
            assert_eq!(format_float(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }
}
