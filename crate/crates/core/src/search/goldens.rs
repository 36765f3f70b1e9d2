//! Golden forb values stored as CSV.
//!
//! Columns: `family_spec,m,value,status,witness_file`. Witness files are
//! matrix text files named relative to the CSV's directory.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub family_spec: String,
    pub m: usize,
    pub value: usize,
    pub status: String,
    pub witness_file: String,
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn read_goldens(path: &Path) -> Result<Vec<GoldenRow>> {
    let mut rdr = csv::Reader::from_path(path).map_err(csv_err)?;
    rdr.deserialize().map(|r| r.map_err(csv_err)).collect()
}

pub fn write_goldens(path: &Path, rows: &[GoldenRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// The stored witness of a row, resolved against the CSV location.
pub fn witness_path(csv_path: &Path, row: &GoldenRow) -> PathBuf {
    csv_path.parent().unwrap_or(Path::new(".")).join(&row.witness_file)
}

pub fn read_witness(csv_path: &Path, row: &GoldenRow) -> Result<Matrix> {
    let p = witness_path(csv_path, row);
    let text = std::fs::read_to_string(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
    Matrix::from_text(&text)
}

/// A file name derived from the spec, safe on common file systems.
pub fn witness_file_name(family_spec: &str, m: usize) -> String {
    let slug: String = family_spec
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    format!("{slug}_m{m}.mat")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.csv");
        let rows = vec![GoldenRow {
            family_spec: "Q9,1(4,1)".into(),
            m: 8,
            value: 22,
            status: "exact".into(),
            witness_file: witness_file_name("Q9,1(4,1)", 8),
        }];
        write_goldens(&path, &rows).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("family_spec,m,value,status,witness_file\n"));
        assert!(text.contains("\"Q9,1(4,1)\""));
        assert_eq!(read_goldens(&path).unwrap(), rows);
        assert_eq!(rows[0].witness_file, "Q9_1_4_1__m8.mat");
    }
}
