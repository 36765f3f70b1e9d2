use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matrix::{BitColumn, Matrix, SimpleMatrix};

/// The split of a simple matrix at one row.
///
/// With row `r` deleted, `c` holds the columns that occurred under both a 0
/// and a 1 in row `r`, `b` those seen only under 0 and `d` those seen only
/// under 1. All three have `m - 1` rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub b: SimpleMatrix,
    pub c: SimpleMatrix,
    pub d: SimpleMatrix,
}

impl Decomposition {
    /// `|B| + 2|C| + |D|`, which equals the column count of the input.
    pub fn weighted_size(&self) -> usize {
        self.b.ncols() + 2 * self.c.ncols() + self.d.ncols()
    }
}

pub fn induction_decompose(a: &SimpleMatrix, r: usize) -> Result<Decomposition> {
    let m = a.rows();
    if r >= m {
        return Err(Error::IndexOutOfRange {
            what: "row",
            index: r,
            len: m,
        });
    }
    let keep: Vec<usize> = (0..m).filter(|&i| i != r).collect();
    let mut zero = BTreeSet::new();
    let mut one = BTreeSet::new();
    let mut order: Vec<BitColumn> = Vec::new();
    for c in a.cols() {
        let rest = c.restrict(&keep);
        if !zero.contains(&rest) && !one.contains(&rest) {
            order.push(rest.clone());
        }
        if c.get(r) {
            one.insert(rest);
        } else {
            zero.insert(rest);
        }
    }
    let pick = |f: &dyn Fn(&BitColumn) -> bool| -> Result<SimpleMatrix> {
        SimpleMatrix::new(Matrix::new(m - 1, order.iter().filter(|c| f(c)).cloned().collect())?)
    };
    Ok(Decomposition {
        b: pick(&|c| zero.contains(c) && !one.contains(c))?,
        c: pick(&|c| zero.contains(c) && one.contains(c))?,
        d: pick(&|c| one.contains(c) && !zero.contains(c))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{product_of, Block};
    use proptest::prelude::*;

    #[test]
    fn identity_split() {
        let i2 = SimpleMatrix::new(Block::I(2).matrix().unwrap()).unwrap();
        let d = induction_decompose(&i2, 0).unwrap();
        assert_eq!(d.b.to_text(), "1\n");
        assert_eq!(d.c.ncols(), 0);
        assert_eq!(d.d.to_text(), "0\n");
    }

    #[test]
    fn full_cube_repeats_everything() {
        let b01 = Block::B01.matrix().unwrap();
        let cube = SimpleMatrix::new(product_of(&b01, &b01)).unwrap();
        let d = induction_decompose(&cube, 0).unwrap();
        assert_eq!(d.c.ncols(), 2);
        assert_eq!(d.b.ncols() + d.d.ncols(), 0);
    }

    #[test]
    fn bad_row() {
        let a = SimpleMatrix::empty(3);
        assert!(induction_decompose(&a, 3).is_err());
    }

    proptest! {
        #[test]
        fn weighted_size_identity(m in 2usize..7, seed in proptest::collection::vec(any::<bool>(), 128), r in 0usize..7) {
            let r = r % m;
            let cols: Vec<BitColumn> = (0u64..1 << m)
                .filter(|&v| seed[v as usize])
                .map(|v| BitColumn::from_u64(m, v).unwrap())
                .collect();
            let a = SimpleMatrix::new(Matrix::new(m, cols).unwrap()).unwrap();
            let d = induction_decompose(&a, r).unwrap();
            prop_assert_eq!(d.weighted_size(), a.ncols());
            let joined = d.b.hconcat(&d.c).unwrap().hconcat(&d.d).unwrap();
            prop_assert!(joined.is_simple());
        }
    }
}
