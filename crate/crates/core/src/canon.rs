//! Configurations: matrices up to row and column permutation.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::{BitColumn, Matrix};

/// Row counts up to this bound are minimized over every row permutation.
pub const EXACT_ROW_LIMIT: usize = 8;
/// Canonicalization is refused above this many rows.
pub const MAX_ROWS: usize = 12;
const MAX_REFINED_PERMUTATIONS: u64 = 1 << 22;

/// A (0,1)-matrix regarded up to row and column permutations.
///
/// The matrix as given is kept for reporting; equality and hashing use
/// only the canonical key.
#[derive(Clone)]
pub struct Configuration {
    matrix: Matrix,
    col_multiset: BTreeMap<BitColumn, usize>,
    canon_key: Vec<u8>,
}

impl Configuration {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    /// Column count including repeats.
    pub fn ncols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn col_multiset(&self) -> &BTreeMap<BitColumn, usize> {
        &self.col_multiset
    }

    pub fn canon_key(&self) -> &[u8] {
        &self.canon_key
    }

    /// The complementary configuration.
    pub fn complement(&self) -> Configuration {
        canonicalize(&self.matrix.complement()).expect("row count already accepted")
    }

    /// The canonical representative: rows permuted to the minimizing order,
    /// columns sorted.
    pub fn canonical_matrix(&self) -> Matrix {
        let k = self.rows();
        let n = self.ncols();
        let mut vals = Vec::with_capacity(n);
        for pair in self.canon_key[4..].chunks(2) {
            vals.push(u16::from_be_bytes([pair[0], pair[1]]));
        }
        let cols = vals
            .into_iter()
            .map(|v| BitColumn::from_u64(k, v as u64).expect("fits"))
            .collect();
        Matrix::new(k, cols).expect("consistent widths")
    }
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.canon_key == other.canon_key
    }
}

impl Eq for Configuration {}

impl std::hash::Hash for Configuration {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canon_key.hash(state);
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({:?})", self.matrix)
    }
}

/// Computes the canonical key of `m`.
///
/// The key is the lexicographically least sorted column-value sequence over
/// all row orders. Above eight rows the row orders are restricted to those
/// that sort rows by their sum, which is still a complete invariant.
pub fn canonicalize(m: &Matrix) -> Result<Configuration> {
    let k = m.rows();
    if k > MAX_ROWS {
        return Err(Error::TooManyRows(k));
    }
    let mut col_multiset = BTreeMap::new();
    for c in m.cols() {
        *col_multiset.entry(c.clone()).or_insert(0) += 1;
    }
    let values: Vec<u16> = m.cols().iter().map(|c| c.as_u64().unwrap() as u16).collect();
    let best = if k <= EXACT_ROW_LIMIT {
        minimize(&values, (0..k).permutations(k))
    } else {
        let classes = row_classes(m);
        let count: u64 = classes.iter().map(|c| (1..=c.len() as u64).product::<u64>()).product();
        if count > MAX_REFINED_PERMUTATIONS {
            return Err(Error::TooManyRows(k));
        }
        let perms = classes
            .iter()
            .map(|c| c.iter().copied().permutations(c.len()).collect::<Vec<_>>())
            .multi_cartesian_product()
            .map(|parts| parts.concat());
        minimize(&values, perms)
    };
    let mut canon_key = Vec::with_capacity(4 + 2 * best.len());
    canon_key.extend_from_slice(&(k as u16).to_be_bytes());
    canon_key.extend_from_slice(&(m.ncols() as u16).to_be_bytes());
    for v in best {
        canon_key.extend_from_slice(&v.to_be_bytes());
    }
    Ok(Configuration {
        matrix: m.clone(),
        col_multiset,
        canon_key,
    })
}

/// Rows grouped by row sum, groups in ascending sum order.
fn row_classes(m: &Matrix) -> Vec<Vec<usize>> {
    let mut by_sum: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for r in 0..m.rows() {
        by_sum.entry(m.row_sum(r)).or_default().push(r);
    }
    by_sum.into_values().collect()
}

/// `perm[i]` is the old row placed at new row `i`.
fn minimize<I: Iterator<Item = Vec<usize>>>(values: &[u16], perms: I) -> Vec<u16> {
    let mut best: Option<Vec<u16>> = None;
    let mut cur = vec![0u16; values.len()];
    for perm in perms {
        for (slot, &v) in cur.iter_mut().zip(values) {
            let mut out = 0u16;
            for (i, &old) in perm.iter().enumerate() {
                out |= ((v >> old) & 1) << i;
            }
            *slot = out;
        }
        cur.sort_unstable();
        if best.as_ref().is_none_or(|b| cur < *b) {
            best = Some(cur.clone());
        }
    }
    best.unwrap_or_default()
}
