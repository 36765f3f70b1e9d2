use std::fmt;

use crate::canon::canonicalize;
use crate::constructions::{catalog, Block};
use crate::containment::{contains, Certificate};
use crate::error::{Error, Result};
use crate::matrix::{BitColumn, Matrix, SimpleMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Q9Type {
    /// `I` over all-ones over all-zeros.
    Type1,
    /// `I^c` over all-ones over all-zeros.
    Type2,
}

impl fmt::Display for Q9Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Q9Type::Type1 => "type1",
            Q9Type::Type2 => "type2",
        })
    }
}

/// Row partition for the `t`-columns of a matrix avoiding `Q_9`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q9TypePartition {
    pub t: usize,
    pub kind: Q9Type,
    /// Rows carrying the identity (or its complement), in column order:
    /// `a_rows[i]` is the distinguished row of the `i`-th `t`-column.
    pub a_rows: Vec<usize>,
    pub b_rows: Vec<usize>,
    pub c_rows: Vec<usize>,
    /// Indices of the `t`-columns in the input.
    pub columns: Vec<usize>,
}

impl Q9TypePartition {
    /// The block matrix `[I or I^c ; 1 ; 0]` the partition describes.
    pub fn block_matrix(&self) -> Result<Matrix> {
        let n = self.a_rows.len();
        let rows = n + self.b_rows.len() + self.c_rows.len();
        let cols = (0..n)
            .map(|i| {
                let top = (0..n).filter(|&j| (j == i) == (self.kind == Q9Type::Type1));
                let ones = top.chain(n..n + self.b_rows.len());
                BitColumn::from_ones(rows, ones)
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(rows, cols)
    }

    /// Re-checks the partition against the `t`-columns of `a`.
    pub fn verify(&self, a: &Matrix) -> bool {
        let mut all: Vec<usize> = self
            .a_rows
            .iter()
            .chain(&self.b_rows)
            .chain(&self.c_rows)
            .copied()
            .collect();
        all.sort_unstable();
        if all != (0..a.rows()).collect::<Vec<_>>() {
            return false;
        }
        let order: Vec<usize> = self
            .a_rows
            .iter()
            .chain(&self.b_rows)
            .chain(&self.c_rows)
            .copied()
            .collect();
        let Ok(sub) = a.restrict(&order, &self.columns) else {
            return false;
        };
        let Ok(expected) = self.block_matrix() else {
            return false;
        };
        // Entrywise agreement, and the configurations coincide.
        sub == expected
            && match (canonicalize(&sub), canonicalize(&expected)) {
                (Ok(x), Ok(y)) => x == y,
                _ => sub.rows() > crate::canon::MAX_ROWS,
            }
    }
}

/// Result of [`q9_classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Q9Outcome {
    Partition(Q9TypePartition),
    /// `A` contains `Q_9`.
    Contains(Certificate),
}

/// Classifies the `t`-columns of `a` into one of the two block shapes, or
/// returns a copy of `Q_9` in `a`.
pub fn q9_classify(a: &SimpleMatrix, t: usize) -> Result<Q9Outcome> {
    let m = a.rows();
    if t < 2 || t + 1 > m {
        return Err(Error::InvalidParameter(format!(
            "classification needs 2 <= t <= m-1, got t={t}, m={m}"
        )));
    }
    let q9 = catalog("Q9")?.config;
    if let Some(cert) = contains(q9.matrix(), a) {
        return Ok(Q9Outcome::Contains(cert));
    }
    let columns: Vec<usize> = (0..a.ncols()).filter(|&j| a.col(j).count_ones() == t).collect();
    let n = columns.len();
    let all_ones: Vec<usize> = (0..m).filter(|&r| columns.iter().all(|&j| a.get(r, j))).collect();
    let all_zeros: Vec<usize> = (0..m).filter(|&r| columns.iter().all(|&j| !a.get(r, j))).collect();
    let mixed: Vec<usize> = (0..m)
        .filter(|r| !all_ones.contains(r) && !all_zeros.contains(r))
        .collect();

    let partition = |kind: Q9Type, a_rows: Vec<usize>| {
        let b_rows = all_ones.iter().copied().filter(|r| !a_rows.contains(r)).collect();
        let c_rows = all_zeros.iter().copied().filter(|r| !a_rows.contains(r)).collect();
        Q9TypePartition {
            t,
            kind,
            a_rows,
            b_rows,
            c_rows,
            columns: columns.clone(),
        }
    };

    let candidates: Vec<Q9TypePartition> = match n {
        // Every row is vacuously constant; call them all zero rows.
        0 => vec![Q9TypePartition {
            t,
            kind: Q9Type::Type1,
            a_rows: Vec::new(),
            b_rows: Vec::new(),
            c_rows: (0..m).collect(),
            columns: Vec::new(),
        }],
        // A single column is I_1 on one of its 1's, or I_1^c on one of its 0's.
        1 => vec![
            partition(Q9Type::Type1, vec![all_ones[0]]),
            partition(Q9Type::Type2, vec![all_zeros[0]]),
        ],
        _ => {
            let mut out = Vec::new();
            for kind in [Q9Type::Type1, Q9Type::Type2] {
                // Row of column i is the row where it alone has a 1 (or 0).
                let rows: Option<Vec<usize>> = columns
                    .iter()
                    .map(|&j| mixed.iter().copied().find(|&r| a.get(r, j) == (kind == Q9Type::Type1)))
                    .collect();
                if let Some(rows) = rows {
                    if rows.len() == mixed.len() {
                        out.push(partition(kind, rows));
                    }
                }
            }
            out
        }
    };
    candidates
        .into_iter()
        .find(|p| p.verify(a))
        .map(Q9Outcome::Partition)
        .ok_or_else(|| {
            Error::Invariant(format!(
                "the {t}-columns of a Q9-avoiding matrix fit neither block shape"
            ))
        })
}

/// The `t`-columns with 1's in rows `0..t-1` plus one further row: a type 1
/// example.
pub fn type1_example(m: usize, t: usize) -> Result<SimpleMatrix> {
    if t < 1 || t > m {
        return Err(Error::InvalidParameter(format!("need 1 <= t <= m, got t={t}, m={m}")));
    }
    let cols = (t - 1..m)
        .map(|r| BitColumn::from_ones(m, (0..t - 1).chain([r])))
        .collect::<Result<Vec<_>>>()?;
    SimpleMatrix::new(Matrix::new(m, cols)?)
}

/// `I_k^c` as a simple matrix; its `(k-1)`-columns are of type 2.
pub fn type2_example(k: usize) -> Result<SimpleMatrix> {
    SimpleMatrix::new(Block::Ic(k).matrix()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::product_of;
    use crate::search::forb;
    use proptest::prelude::*;

    fn partition(o: Q9Outcome) -> Q9TypePartition {
        match o {
            Q9Outcome::Partition(p) => p,
            Q9Outcome::Contains(c) => panic!("unexpected Q9: {c}"),
        }
    }

    #[test]
    fn common_row_columns_are_type1() {
        let a = type1_example(5, 2).unwrap();
        let p = partition(q9_classify(&a, 2).unwrap());
        assert_eq!(p.kind, Q9Type::Type1);
        assert_eq!(p.b_rows, [0]);
        assert_eq!(p.a_rows, [1, 2, 3, 4]);
        assert!(p.c_rows.is_empty());
    }

    #[test]
    fn complement_identity_is_type2() {
        let a = type2_example(4).unwrap();
        let p = partition(q9_classify(&a, 3).unwrap());
        assert_eq!(p.kind, Q9Type::Type2);
        assert_eq!(p.a_rows.len(), 4);
        assert!(p.b_rows.is_empty() && p.c_rows.is_empty());
    }

    #[test]
    fn type2_with_all_rows() {
        // I_4^c on top of a zero row: the 3-columns use every row of I_4^c.
        let ic = Block::Ic(4).matrix().unwrap();
        let cols = ic.cols().iter().map(|c| c.stack(&BitColumn::zeros(1))).collect();
        let a = SimpleMatrix::new(Matrix::new(5, cols).unwrap()).unwrap();
        let p = partition(q9_classify(&a, 3).unwrap());
        assert_eq!(p.kind, Q9Type::Type2);
        assert_eq!(p.a_rows.len(), 4);
        assert!(p.b_rows.is_empty());
        assert_eq!(p.c_rows, [4]);
    }

    #[test]
    fn product_of_identities_is_refuted() {
        let i2 = Block::I(2).matrix().unwrap();
        let a = SimpleMatrix::new(product_of(&i2, &i2)).unwrap();
        assert!(matches!(q9_classify(&a, 2).unwrap(), Q9Outcome::Contains(_)));
    }

    #[test]
    fn out_of_range_t() {
        let a = type1_example(4, 2).unwrap();
        assert!(q9_classify(&a, 4).is_err());
        assert!(q9_classify(&a, 1).is_err());
    }

    #[test]
    fn extremal_witness_classifies_at_every_t() {
        let q9 = vec![catalog("Q9").unwrap().config];
        let w = forb(6, &q9).unwrap().witness;
        for t in 2..=4 {
            let p = partition(q9_classify(&w, t).unwrap());
            assert!(p.verify(&w));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn random_avoiders_classify(m in 4usize..=7, t in 2usize..=5, mask in any::<u64>()) {
            prop_assume!(t + 2 <= m);
            let cols: Vec<BitColumn> = (0u64..1 << m)
                .filter(|v| v.count_ones() as usize == t)
                .enumerate()
                .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
                .map(|(_, v)| BitColumn::from_u64(m, v).unwrap())
                .collect();
            let a = SimpleMatrix::new(Matrix::new(m, cols).unwrap()).unwrap();
            match q9_classify(&a, t).unwrap() {
                Q9Outcome::Partition(p) => prop_assert!(p.verify(&a)),
                Q9Outcome::Contains(c) => prop_assert!(c.verify(catalog("Q9").unwrap().config.matrix(), &a)),
            }
        }
    }
}
