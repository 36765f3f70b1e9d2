use crate::canon::{canonicalize, Configuration};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// A named configuration.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub config: Configuration,
    /// Which list the configuration belongs to.
    pub group: &'static str,
}

const QUAD: &str = "minimal quadratic";
const CUBIC4: &str = "minimal simple cubic, 4 rows";
const CUBIC4C: &str = "minimal simple cubic, 4 rows (complement)";
const CUBIC6: &str = "minimal simple cubic, 6 rows";
const CAND6: &str = "6-rowed cubic candidate";
const HYPER: &str = "3-uniform hypergraph example";

const ENTRIES: &[(&str, &str, &[&str])] = &[
    ("131", QUAD, &["1", "1", "1"]),
    ("122", QUAD, &["11", "11"]),
    ("I3", QUAD, &["100", "010", "001"]),
    ("Q3", QUAD, &["000111", "011001"]),
    ("Q8", QUAD, &["0011", "1010", "0101"]),
    ("Q9", QUAD, &["10", "10", "01", "01"]),
    ("141", CUBIC4, &["1", "1", "1", "1"]),
    ("F9", CUBIC4, &["100", "010", "001", "001"]),
    ("F10", CUBIC4, &["100", "010", "001", "000"]),
    ("F11", CUBIC4, &["1010", "1001", "0110", "0101"]),
    ("F12", CUBIC4, &["1001", "0101", "0011", "1110"]),
    ("F13", CUBIC4, &["1100", "0110", "0101", "0011"]),
    ("041", CUBIC4C, &["0", "0", "0", "0"]),
    ("F9c", CUBIC4C, &["011", "101", "110", "110"]),
    ("F10c", CUBIC4C, &["011", "101", "110", "111"]),
    ("F12c", CUBIC4C, &["0110", "1010", "1100", "0001"]),
    ("F14", CUBIC6, &["10", "10", "10", "01", "01", "01"]),
    ("F15", CUBIC6, &["100", "010", "001", "011", "101", "110"]),
    ("F16", CAND6, &["111", "111", "100", "010", "001", "000"]),
    ("F16c", CAND6, &["000", "000", "011", "101", "110", "111"]),
    ("F17", CAND6, &["111", "110", "100", "010", "001", "001"]),
    ("F17c", CAND6, &["000", "001", "011", "101", "110", "110"]),
    ("Fhyp", HYPER, &["111", "011", "101", "110"]),
];

/// Every catalog name, in catalog order.
pub fn catalog_names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.0).collect()
}

/// Looks up a named configuration.
pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let Some(&(name, group, rows)) = ENTRIES.iter().find(|e| e.0 == name) else {
        return Err(Error::UnknownCatalogEntry {
            name: name.to_string(),
            known: catalog_names().join(", "),
        });
    };
    let config = canonicalize(&Matrix::from_row_strs(rows)?)?;
    Ok(CatalogEntry { name, config, group })
}
