//! Bit-level (0,1)-matrices.
//!
//! A [`Matrix`] is an ordered list of [`BitColumn`]s of a common width. Row `i`
//! of a column is bit `i`, so the numeric value of a column (for widths up to
//! 64) has row 0 as its least significant bit.
//!
//! The text interchange format writes one matrix row per line using the
//! characters `0` and `1`; a blank line ends a matrix.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use smallvec::SmallVec;

use crate::error::{Error, Result};

type Words = SmallVec<[u64; 1]>;

fn word_count(width: usize) -> usize {
    width.div_ceil(64).max(1)
}

/// One column of an `m`-rowed (0,1)-matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitColumn {
    words: Words,
    width: usize,
}

impl BitColumn {
    /// The all-zero column of the given width.
    pub fn zeros(width: usize) -> Self {
        BitColumn {
            words: smallvec::smallvec![0; word_count(width)],
            width,
        }
    }

    /// The all-ones column of the given width.
    pub fn ones(width: usize) -> Self {
        Self::zeros(width).complement()
    }

    /// Builds a column from a value whose bit `i` is row `i`.
    ///
    /// Bits at positions `>= width` must be clear.
    pub fn from_u64(width: usize, value: u64) -> Result<Self> {
        if width < 64 && value >> width != 0 {
            return Err(Error::InvalidParameter(format!(
                "value {value:#b} does not fit in {width} rows"
            )));
        }
        let mut c = Self::zeros(width);
        c.words[0] = value;
        Ok(c)
    }

    /// Builds a column from the rows that carry a 1.
    pub fn from_ones<I: IntoIterator<Item = usize>>(width: usize, ones: I) -> Result<Self> {
        let mut c = Self::zeros(width);
        for r in ones {
            if r >= width {
                return Err(Error::IndexOutOfRange {
                    what: "row",
                    index: r,
                    len: width,
                });
            }
            c.set(r, true);
        }
        Ok(c)
    }

    /// Builds a column from booleans listed top to bottom.
    pub fn from_bools(bits: &[bool]) -> Self {
        let mut c = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            c.set(i, b);
        }
        c
    }

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn get(&self, row: usize) -> bool {
        debug_assert!(row < self.width);
        self.words[row / 64] >> (row % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, bit: bool) {
        debug_assert!(row < self.width);
        let mask = 1u64 << (row % 64);
        if bit {
            self.words[row / 64] |= mask;
        } else {
            self.words[row / 64] &= !mask;
        }
    }

    /// Column sum.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The value of the column when it fits a single word.
    pub fn as_u64(&self) -> Option<u64> {
        (self.width <= 64).then(|| self.words[0])
    }

    pub fn complement(&self) -> Self {
        let mut c = self.clone();
        for w in c.words.iter_mut() {
            *w = !*w;
        }
        c.clear_tail();
        c
    }

    fn clear_tail(&mut self) {
        let used = self.width % 64;
        if used != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << used) - 1;
        }
        if self.width == 0 {
            self.words[0] = 0;
        }
    }

    /// Rows holding a 1, ascending.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width).filter(move |&r| self.get(r))
    }

    /// The column restricted to `rows`, in the given order.
    pub fn restrict(&self, rows: &[usize]) -> Self {
        let mut c = Self::zeros(rows.len());
        for (i, &r) in rows.iter().enumerate() {
            c.set(i, self.get(r));
        }
        c
    }

    /// This column placed on top of `below`.
    pub fn stack(&self, below: &BitColumn) -> Self {
        let mut c = Self::zeros(self.width + below.width);
        for r in self.ones_iter() {
            c.set(r, true);
        }
        for r in below.ones_iter() {
            c.set(self.width + r, true);
        }
        c
    }

    /// Rows where `self` has a 1 and `other` has a 1.
    pub fn intersection_size(&self, other: &BitColumn) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
}

impl Ord for BitColumn {
    /// Width first, then numeric value.
    fn cmp(&self, other: &Self) -> Ordering {
        self.width
            .cmp(&other.width)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for BitColumn {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.width {
            f.write_str(if self.get(r) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// A general (0,1)-matrix; columns may repeat.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: Vec<BitColumn>,
}

impl Matrix {
    pub fn new(rows: usize, cols: Vec<BitColumn>) -> Result<Self> {
        if let Some(c) = cols.iter().find(|c| c.width() != rows) {
            return Err(Error::WidthMismatch {
                expected: rows,
                found: c.width(),
            });
        }
        Ok(Matrix { rows, cols })
    }

    /// A matrix with no columns.
    pub fn empty(rows: usize) -> Self {
        Matrix { rows, cols: Vec::new() }
    }

    /// Parses row strings such as `["100", "011"]`.
    pub fn from_row_strs<S: AsRef<str>>(lines: &[S]) -> Result<Self> {
        let rows = lines.len();
        let width = lines.first().map_or(0, |l| l.as_ref().trim().len());
        let mut cols = vec![BitColumn::zeros(rows); width];
        for (r, line) in lines.iter().enumerate() {
            let line = line.as_ref().trim();
            if line.len() != width {
                return Err(Error::Parse(format!(
                    "row {r} has {} entries, expected {width}",
                    line.len()
                )));
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => cols[c].set(r, true),
                    other => return Err(Error::Parse(format!("unexpected character `{other}` in row {r}"))),
                }
            }
        }
        Ok(Matrix { rows, cols })
    }

    /// Parses the first matrix of a text block.
    pub fn from_text(text: &str) -> Result<Self> {
        parse_matrices(text)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Parse("no matrix found".into()))
    }

    /// Row-major text, newline-terminated.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols.len() + 1));
        for r in 0..self.rows {
            for c in &self.cols {
                s.push(if c.get(r) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns, written `|A|`.
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn cols(&self) -> &[BitColumn] {
        &self.cols
    }

    pub fn col(&self, j: usize) -> &BitColumn {
        &self.cols[j]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.cols[c].get(r)
    }

    pub fn row(&self, r: usize) -> Vec<bool> {
        self.cols.iter().map(|c| c.get(r)).collect()
    }

    pub fn row_sum(&self, r: usize) -> usize {
        self.cols.iter().filter(|c| c.get(r)).count()
    }

    pub fn into_cols(self) -> Vec<BitColumn> {
        self.cols
    }

    pub fn push(&mut self, col: BitColumn) -> Result<()> {
        if col.width() != self.rows {
            return Err(Error::WidthMismatch {
                expected: self.rows,
                found: col.width(),
            });
        }
        self.cols.push(col);
        Ok(())
    }

    /// Entrywise `1 - M`.
    pub fn complement(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols.iter().map(BitColumn::complement).collect(),
        }
    }

    pub fn is_simple(&self) -> bool {
        self.first_repeat().is_none()
    }

    fn first_repeat(&self) -> Option<usize> {
        let mut seen = std::collections::HashSet::with_capacity(self.cols.len());
        self.cols.iter().position(|c| !seen.insert(c))
    }

    /// Drops repeated columns, keeping first occurrences in order.
    pub fn simplify(&self) -> SimpleMatrix {
        let mut seen = std::collections::HashSet::with_capacity(self.cols.len());
        let cols = self.cols.iter().filter(|c| seen.insert(*c)).cloned().collect();
        SimpleMatrix(Matrix { rows: self.rows, cols })
    }

    /// The submatrix on `row_subset` x `col_subset`, in the given orders.
    pub fn restrict(&self, row_subset: &[usize], col_subset: &[usize]) -> Result<Matrix> {
        check_indices("row", row_subset, self.rows)?;
        check_indices("column", col_subset, self.cols.len())?;
        Ok(Matrix {
            rows: row_subset.len(),
            cols: col_subset.iter().map(|&j| self.cols[j].restrict(row_subset)).collect(),
        })
    }

    /// Restriction to a row subset, keeping every column (repeats allowed).
    pub fn restrict_rows(&self, row_subset: &[usize]) -> Result<Matrix> {
        let all: Vec<usize> = (0..self.cols.len()).collect();
        self.restrict(row_subset, &all)
    }

    /// Columns whose sum satisfies `pred`, order preserved.
    pub fn select_by_sum<P: Fn(usize) -> bool>(&self, pred: P) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols.iter().filter(|c| pred(c.count_ones())).cloned().collect(),
        }
    }

    /// Columns of `self` followed by those of `other`.
    pub fn hconcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::WidthMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Ok(Matrix { rows: self.rows, cols })
    }

    /// Row-major bitsets over the columns.
    pub fn transposed(&self) -> RowBits {
        RowBits::from_matrix(self)
    }
}

fn check_indices(what: &'static str, idx: &[usize], len: usize) -> Result<()> {
    let mut seen = vec![false; len];
    for &i in idx {
        if i >= len {
            return Err(Error::IndexOutOfRange { what, index: i, len });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::RepeatedIndex { what, index: i });
        }
    }
    Ok(())
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols.len())?;
        for (i, c) in self.cols.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c:?}")?;
        }
        f.write_str("]")
    }
}

/// Parses every matrix in `text`; matrices are separated by blank lines and
/// lines starting with `#` are ignored.
pub fn parse_matrices(text: &str) -> Result<Vec<Matrix>> {
    let mut out = Vec::new();
    let mut block: Vec<&str> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            if !block.is_empty() {
                out.push(Matrix::from_row_strs(&block)?);
                block.clear();
            }
        } else {
            block.push(line);
        }
    }
    if !block.is_empty() {
        out.push(Matrix::from_row_strs(&block)?);
    }
    Ok(out)
}

/// A matrix with pairwise distinct columns.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimpleMatrix(Matrix);

impl SimpleMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        match m.first_repeat() {
            Some(j) => Err(Error::NotSimple(j)),
            None => Ok(SimpleMatrix(m)),
        }
    }

    pub fn empty(rows: usize) -> Self {
        SimpleMatrix(Matrix::empty(rows))
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn complement(&self) -> SimpleMatrix {
        SimpleMatrix(self.0.complement())
    }

    pub fn select_by_sum<P: Fn(usize) -> bool>(&self, pred: P) -> SimpleMatrix {
        SimpleMatrix(self.0.select_by_sum(pred))
    }
}

impl Deref for SimpleMatrix {
    type Target = Matrix;
    fn deref(&self) -> &Matrix {
        &self.0
    }
}

impl TryFrom<Matrix> for SimpleMatrix {
    type Error = Error;
    fn try_from(m: Matrix) -> Result<Self> {
        SimpleMatrix::new(m)
    }
}

impl fmt::Display for SimpleMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Row-major view: one bitset over the columns per row.
#[derive(Clone, Debug)]
pub struct RowBits {
    rows: usize,
    ncols: usize,
    words: usize,
    data: Vec<u64>,
}

impl RowBits {
    /// An empty view able to hold up to `capacity` columns.
    pub fn with_capacity(rows: usize, capacity: usize) -> Self {
        let words = capacity.div_ceil(64).max(1);
        RowBits {
            rows,
            ncols: 0,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        let mut rb = Self::with_capacity(m.rows(), m.ncols());
        for c in m.cols() {
            rb.push(c);
        }
        rb
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    /// Appends a column; grows the storage when full.
    pub fn push(&mut self, col: &BitColumn) {
        debug_assert_eq!(col.width(), self.rows);
        if self.ncols == self.words * 64 {
            self.grow();
        }
        let (w, b) = (self.ncols / 64, self.ncols % 64);
        for r in col.ones_iter() {
            self.data[r * self.words + w] |= 1 << b;
        }
        self.ncols += 1;
    }

    /// Removes the last column.
    pub fn pop(&mut self) {
        debug_assert!(self.ncols > 0);
        self.ncols -= 1;
        let (w, b) = (self.ncols / 64, self.ncols % 64);
        for r in 0..self.rows {
            self.data[r * self.words + w] &= !(1 << b);
        }
    }

    fn grow(&mut self) {
        let new_words = self.words * 2;
        let mut data = vec![0; self.rows * new_words];
        for r in 0..self.rows {
            data[r * new_words..r * new_words + self.words]
                .copy_from_slice(&self.data[r * self.words..(r + 1) * self.words]);
        }
        self.words = new_words;
        self.data = data;
    }

    /// Mask of the live columns.
    pub fn live_mask(&self) -> Vec<u64> {
        let mut m = vec![0u64; self.words];
        for (w, slot) in m.iter_mut().enumerate() {
            let lo = w * 64;
            if self.ncols >= lo + 64 {
                *slot = u64::MAX;
            } else if self.ncols > lo {
                *slot = (1u64 << (self.ncols - lo)) - 1;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> Matrix {
        Matrix::from_row_strs(rows).unwrap()
    }

    #[test]
    fn complement_of_identity() {
        let i3 = m(&["100", "010", "001"]);
        let c = i3.complement();
        let cols: Vec<String> = c.cols().iter().map(|c| c.to_string()).collect();
        assert_eq!(cols, ["011", "101", "110"]);
        assert_eq!(c.complement(), i3);
    }

    #[test]
    fn complement_of_ones_and_triangle() {
        assert_eq!(m(&["11", "11"]).complement(), m(&["00", "00"]));
        let t2 = m(&["11", "01"]);
        let cols: Vec<String> = t2.complement().cols().iter().map(|c| c.to_string()).collect();
        assert_eq!(cols, ["01", "00"]);
    }

    #[test]
    fn complement_clears_tail_bits() {
        let c = BitColumn::zeros(70).complement();
        assert_eq!(c.count_ones(), 70);
        assert_eq!(BitColumn::zeros(5).complement().as_u64(), Some(0b11111));
    }

    #[test]
    fn simplify_keeps_first_occurrence() {
        let a = m(&["110", "001"]);
        let s = a.simplify();
        assert_eq!(s.as_matrix(), &m(&["10", "01"]));
        let i2 = m(&["10", "01"]);
        assert_eq!(i2.simplify().as_matrix(), &i2);
        let e = Matrix::empty(3).simplify();
        assert_eq!((e.rows(), e.ncols()), (3, 0));
    }

    #[test]
    fn restrict_examples() {
        let t3 = m(&["111", "011", "001"]);
        let r = t3.restrict(&[2, 0], &[1]).unwrap();
        assert_eq!(r, m(&["0", "1"]));
        assert_eq!(t3.restrict(&[0, 1, 2], &[0, 1, 2]).unwrap(), t3);
        let z = t3.restrict(&[], &[]).unwrap();
        assert_eq!((z.rows(), z.ncols()), (0, 0));
    }

    #[test]
    fn restrict_rejects_bad_indices() {
        let t3 = m(&["111", "011", "001"]);
        assert!(matches!(t3.restrict(&[3], &[0]), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(t3.restrict(&[0, 0], &[0]), Err(Error::RepeatedIndex { .. })));
        assert!(matches!(t3.restrict(&[0], &[1, 1]), Err(Error::RepeatedIndex { .. })));
    }

    #[test]
    fn select_by_sum_examples() {
        let t3 = m(&["111", "011", "001"]);
        assert_eq!(t3.select_by_sum(|s| s == 3), m(&["1", "1", "1"]));
        let i4 = m(&["1000", "0100", "0010", "0001"]);
        assert_eq!(i4.select_by_sum(|s| s == 1), i4);
        assert_eq!(i4.select_by_sum(|s| s >= 2).ncols(), 0);
    }

    #[test]
    fn text_round_trip_and_blank_line_separation() {
        let text = "# two matrices\n10\n01\n\n111\n";
        let ms = parse_matrices(text).unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[0].to_text(), "10\n01\n");
        assert_eq!(ms[1].ncols(), 3);
        assert!(Matrix::from_row_strs(&["10", "1"]).is_err());
        assert!(Matrix::from_row_strs(&["12"]).is_err());
    }

    #[test]
    fn column_order_is_numeric() {
        let a = BitColumn::from_u64(4, 3).unwrap();
        let b = BitColumn::from_u64(4, 4).unwrap();
        assert!(a < b);
        let hi = BitColumn::from_ones(70, [65]).unwrap();
        let lo = BitColumn::from_ones(70, [0, 1, 2]).unwrap();
        assert!(lo < hi);
    }

    #[test]
    fn row_bits_push_pop() {
        let mut rb = RowBits::with_capacity(2, 1);
        for v in 0..130u64 {
            rb.push(&BitColumn::from_u64(2, v % 4).unwrap());
        }
        assert_eq!(rb.ncols(), 130);
        assert!(rb.words() >= 3);
        // column 129 has value 1: row 0 set, row 1 clear
        assert_eq!(rb.row(0)[2] >> 1 & 1, 1);
        rb.pop();
        assert_eq!(rb.row(0)[2] >> 1 & 1, 0);
        assert_eq!(rb.live_mask()[2], 0b1);
    }

    #[test]
    fn simple_matrix_rejects_repeats() {
        assert_eq!(SimpleMatrix::new(m(&["11"])), Err(Error::NotSimple(1)));
    }
}
