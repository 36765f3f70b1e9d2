use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// How a row looks on a set of columns, relative to a threshold `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowClass {
    /// No 1 on the columns (this includes the empty column set).
    Identically0,
    /// No 0 and at least one 1.
    Identically1,
    /// At least one 0 but fewer than `t`.
    Sparse,
    /// At least one 1 and at least `t` 0's.
    Dense,
}

impl fmt::Display for RowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowClass::Identically0 => "identically0",
            RowClass::Identically1 => "identically1",
            RowClass::Sparse => "sparse",
            RowClass::Dense => "dense",
        })
    }
}

pub(crate) fn classify(zeros: usize, ones: usize, t: usize) -> RowClass {
    if ones == 0 {
        RowClass::Identically0
    } else if zeros == 0 {
        RowClass::Identically1
    } else if zeros < t {
        RowClass::Sparse
    } else {
        RowClass::Dense
    }
}

fn check_cols(m: &Matrix, cols: &[usize]) -> Result<()> {
    match cols.iter().find(|&&c| c >= m.ncols()) {
        Some(&c) => Err(Error::IndexOutOfRange {
            what: "column",
            index: c,
            len: m.ncols(),
        }),
        None => Ok(()),
    }
}

/// The class of every row of `m` restricted to `cols`.
pub fn classify_rows(m: &Matrix, cols: &[usize], t: usize) -> Result<Vec<RowClass>> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("row classes need t >= 2, got {t}")));
    }
    check_cols(m, cols)?;
    Ok((0..m.rows())
        .map(|r| {
            let ones = cols.iter().filter(|&&c| m.get(r, c)).count();
            classify(cols.len() - ones, ones, t)
        })
        .collect())
}

/// For each column of `cols`, the first row among `rows` that is sparse on
/// `cols` and has a 0 in that column.
pub fn identifying_rows(m: &Matrix, rows: &[usize], cols: &[usize], t: usize) -> Result<Vec<Option<usize>>> {
    let classes = classify_rows(m, cols, t)?;
    Ok(cols
        .iter()
        .map(|&c| {
            rows.iter()
                .copied()
                .find(|&r| classes[r] == RowClass::Sparse && !m.get(r, c))
        })
        .collect())
}

/// Rows `R` together with one column per row such that `B` restricted to
/// them is `I^c_{|R|}`: row `rows[i]` has its only 0 in `cols[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvoidingRows {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Extracts rows carrying a complemented identity from a matrix whose rows
/// have few 0's.
///
/// Every row of `b` must have fewer than `t` 0's and every column at least
/// one 0. The result satisfies `|R| >= 2^(2-t) * |B|`.
pub fn avoiding_rows(b: &Matrix, t: usize) -> Result<AvoidingRows> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("avoiding_rows needs t >= 2, got {t}")));
    }
    for r in 0..b.rows() {
        let zeros = b.ncols() - b.row_sum(r);
        if zeros >= t {
            return Err(Error::Precondition(format!(
                "row {r} has {zeros} zeros, expected fewer than {t}"
            )));
        }
    }
    if let Some(c) = (0..b.ncols()).find(|&c| b.col(c).count_ones() == b.rows()) {
        return Err(Error::Precondition(format!("column {c} has no 0")));
    }
    let rows: Vec<usize> = (0..b.rows()).collect();
    let cols: Vec<usize> = (0..b.ncols()).collect();
    Ok(extract(b, &rows, &cols, t))
}

/// Every row of `rows` has fewer than `t` 0's on `cols`, and every column
/// has a 0 in `rows`.
fn extract(b: &Matrix, rows: &[usize], cols: &[usize], t: usize) -> AvoidingRows {
    let zero_rows = |c: usize| rows.iter().copied().filter(move |&r| !b.get(r, c));
    if t <= 2 {
        // Each row has at most one 0 here, so distinct columns get distinct rows.
        let picked = cols.iter().map(|&c| zero_rows(c).next().expect("identified")).collect();
        return AvoidingRows {
            rows: picked,
            cols: cols.to_vec(),
        };
    }
    let mut b1 = Vec::new();
    let mut b2 = Vec::new();
    let mut rest: Vec<usize> = cols.to_vec();
    while let Some((&c, tail)) = rest.split_first() {
        b1.push(c);
        let (shared, keep): (Vec<usize>, Vec<usize>) = tail.iter().partition(|&&d| zero_rows(c).any(|r| !b.get(r, d)));
        b2.extend(shared);
        rest = keep;
    }
    if b1.len() >= b2.len() {
        extract(b, rows, &b1, 2)
    } else {
        // Only rows with a 0 in `b1` are guaranteed at most `t - 2` 0's on
        // `b2`; every column of `b2` still has a 0 among them.
        let kept: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|&r| b1.iter().any(|&c| !b.get(r, c)))
            .collect();
        extract(b, &kept, &b2, t - 1)
    }
}
