//! Lower-bound constructions for exact forb values.
//!
//! Every construction checks its own column count and avoidance before it
//! is returned. Rows are 0-indexed.

use crate::canon::{canonicalize, Configuration};
use crate::constructions::{catalog, Block};
use crate::containment::contains_any;
use crate::error::{Error, Result};
use crate::matrix::{BitColumn, Matrix, SimpleMatrix};

/// Parameters of the parametrized constructions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExtremalParams {
    pub k: Option<usize>,
    pub l: Option<usize>,
}

impl ExtremalParams {
    pub fn k(k: usize) -> Self {
        ExtremalParams { k: Some(k), l: None }
    }

    pub fn kl(k: usize, l: usize) -> Self {
        ExtremalParams { k: Some(k), l: Some(l) }
    }
}

const NAMES: &[(&str, &str)] = &[
    ("c2", "zero column and I_m; avoids {1(2,1), F9}; m+1 columns"),
    ("c3", "avoids {1(3,1), F9}; m+2 columns"),
    ("c4", "avoids {1(4,1), F9}; m+5 columns"),
    (
        "f9_ell",
        "k in {2,3}, l >= 2; avoids {1(k,l), F9}; m+c_(k+1)+l-1 columns",
    ),
    (
        "q9_smallt",
        "k >= 2, m >= 2k; avoids {Q9, 1(k,1)}; 1+(k-1)m-C(k-1,2) columns",
    ),
    ("q9_ell2", "k >= 1; avoids {Q9, 1(k,2)}; one more than q9_smallt(k+1)"),
    (
        "q9_ell_ge3",
        "k >= 2, l >= 3, m > (l+1)(k+l)+k; avoids {Q9, 1(k,l)}; q9_smallt(k+1)+2l-5 columns",
    ),
    (
        "q9_ell_ge3_large_k",
        "l = 3 <= k or k >= l-1 >= 3; avoids {Q9, 1(k,l)}; q9_smallt(k+1)+2l-3 columns",
    ),
    ("sec5_counterexample", "m >= 3; avoids {1(2,2), Q9}; 2m+1 columns"),
];

/// Names of the available constructions with a one-line description.
pub fn extremal_names() -> &'static [(&'static str, &'static str)] {
    NAMES
}

fn col(m: usize, ones: impl IntoIterator<Item = usize>) -> BitColumn {
    BitColumn::from_ones(m, ones).expect("rows in range")
}

fn ones_block(k: usize, l: usize) -> Configuration {
    canonicalize(&Block::Ones(k, l).matrix().expect("positive")).expect("small")
}

fn named(name: &str) -> Configuration {
    catalog(name).expect("catalog entry").config
}

fn need(what: &str, param: Option<usize>) -> Result<usize> {
    param.ok_or_else(|| Error::InvalidParameter(format!("construction needs parameter `{what}`")))
}

fn threshold(name: &str, min: usize, m: usize) -> Result<()> {
    if m < min {
        return Err(Error::BelowThreshold {
            what: name.to_string(),
            min,
            m,
        });
    }
    Ok(())
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn c_const(k: usize) -> usize {
    match k {
        2 => 1,
        3 => 2,
        4 => 5,
        _ => unreachable!("only small cases are constructed"),
    }
}

fn c2(m: usize) -> Vec<BitColumn> {
    let mut cols = vec![BitColumn::zeros(m)];
    cols.extend((0..m).map(|i| col(m, [i])));
    cols
}

fn c3(m: usize) -> Vec<BitColumn> {
    let mut cols = vec![BitColumn::zeros(m), col(m, [0]), col(m, [1])];
    cols.extend((1..m).map(|j| col(m, [0, j])));
    cols
}

fn c4(m: usize) -> Vec<BitColumn> {
    let mut cols = Vec::new();
    for v in 0u64..8 {
        if v.count_ones() <= 2 {
            cols.push(BitColumn::from_u64(m, v).expect("fits"));
        }
    }
    cols.extend((2..m).map(|r| col(m, [0, 1, r])));
    cols
}

/// Sum-0 and sum-1 columns, and for `t = 2..k-1` the columns with ones on
/// rows `0..t-1` plus one further row.
fn q9_smallt(m: usize, k: usize) -> Vec<BitColumn> {
    let mut cols = c2(m);
    for t in 2..k {
        for r in t - 1..m {
            cols.push(col(m, (0..t - 1).chain([r])));
        }
    }
    cols
}

fn q9_smallt_size(m: usize, k: usize) -> usize {
    1 + (k - 1) * m - binom(k - 1, 2)
}

/// Builds and self-checks the named construction.
pub fn extremal_construction(name: &str, m: usize, params: ExtremalParams) -> Result<SimpleMatrix> {
    let (cols, family, expected): (Vec<BitColumn>, Vec<Configuration>, usize) = match name {
        "c2" => {
            threshold(name, 1, m)?;
            (c2(m), vec![ones_block(2, 1), named("F9")], m + 1)
        }
        "c3" => {
            threshold(name, 2, m)?;
            (c3(m), vec![ones_block(3, 1), named("F9")], m + 2)
        }
        "c4" => {
            threshold(name, 3, m)?;
            (c4(m), vec![ones_block(4, 1), named("F9")], m + 5)
        }
        "f9_ell" => {
            let k = need("k", params.k)?;
            let l = need("l", params.l)?;
            if !(2..=3).contains(&k) || l < 2 {
                return Err(Error::InvalidParameter(format!(
                    "f9_ell is available for k in {{2,3}} and l >= 2, got k={k}, l={l}"
                )));
            }
            threshold(name, (k + 3).max(l - 1), m)?;
            let mut cols = if k == 2 { c3(m) } else { c4(m) };
            // Every base column with k ones contains row 0, so the first
            // added column misses all of them.
            cols.extend((0..l - 1).map(|z| col(m, (0..m).filter(|&r| r != z))));
            (cols, vec![ones_block(k, l), named("F9")], m + c_const(k + 1) + l - 1)
        }
        "q9_smallt" => {
            let k = need("k", params.k)?;
            if k < 2 {
                return Err(Error::InvalidParameter("q9_smallt needs k >= 2".into()));
            }
            threshold(name, 2 * k, m)?;
            (
                q9_smallt(m, k),
                vec![named("Q9"), ones_block(k, 1)],
                q9_smallt_size(m, k),
            )
        }
        "q9_ell2" => {
            let k = need("k", params.k)?;
            if k < 1 {
                return Err(Error::InvalidParameter("q9_ell2 needs k >= 1".into()));
            }
            threshold(name, 2 * (k + 1), m)?;
            let mut cols = q9_smallt(m, k + 1);
            cols.push(col(m, 1..m));
            (cols, vec![named("Q9"), ones_block(k, 2)], q9_smallt_size(m, k + 1) + 1)
        }
        "q9_ell_ge3" => {
            let k = need("k", params.k)?;
            let l = need("l", params.l)?;
            if k < 2 || l < 3 {
                return Err(Error::InvalidParameter(format!(
                    "q9_ell_ge3 needs k >= 2 and l >= 3, got k={k}, l={l}"
                )));
            }
            threshold(name, (l + 1) * (k + l) + k + 1, m)?;
            let mut cols = q9_smallt(m, k + 1);
            cols.extend((k..k + l - 2).map(|r| col(m, (0..k).chain([r]))));
            let top = k + l - 2;
            cols.extend((0..l - 3).map(|i| col(m, (0..top).filter(|&r| r != k - 1).chain([top + i]))));
            (
                cols,
                vec![named("Q9"), ones_block(k, l)],
                q9_smallt_size(m, k + 1) + 2 * l - 5,
            )
        }
        "q9_ell_ge3_large_k" => {
            let k = need("k", params.k)?;
            let l = need("l", params.l)?;
            if !((l == 3 && k >= 3) || (l >= 4 && k + 1 >= l)) {
                return Err(Error::InvalidParameter(format!(
                    "q9_ell_ge3_large_k needs l = 3 <= k or k >= l-1 >= 3, got k={k}, l={l}"
                )));
            }
            threshold(name, (2 * (k + 1)).max(k + l), m)?;
            let mut cols = q9_smallt(m, k + 1);
            cols.extend((k..k + l - 2).map(|r| col(m, (0..k).chain([r]))));
            cols.extend((0..l - 1).map(|z| col(m, (0..m).filter(|&r| r != z))));
            (
                cols,
                vec![named("Q9"), ones_block(k, l)],
                q9_smallt_size(m, k + 1) + 2 * l - 3,
            )
        }
        "sec5_counterexample" => {
            threshold(name, 3, m)?;
            let mut cols = c2(m);
            cols.extend((1..m).map(|j| col(m, [0, j])));
            cols.push(col(m, 1..m));
            (cols, vec![ones_block(2, 2), named("Q9")], 2 * m + 1)
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown construction `{other}`; known: {}",
                NAMES.iter().map(|n| n.0).collect::<Vec<_>>().join(", ")
            )))
        }
    };
    let check = |reason: String| Error::SelfCheck {
        name: name.to_string(),
        reason,
    };
    let matrix = SimpleMatrix::new(Matrix::new(m, cols)?).map_err(|e| check(e.to_string()))?;
    if matrix.ncols() != expected {
        return Err(check(format!("{} columns, expected {expected}", matrix.ncols())));
    }
    if let Some((i, cert)) = contains_any(&family, &matrix) {
        return Err(check(format!("contains family member {i}:\n{}", cert.to_text())));
    }
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_f9_constructions() {
        assert_eq!(
            extremal_construction("c3", 6, ExtremalParams::default())
                .unwrap()
                .ncols(),
            8
        );
        assert_eq!(
            extremal_construction("c4", 6, ExtremalParams::default())
                .unwrap()
                .ncols(),
            11
        );
        assert_eq!(
            extremal_construction("f9_ell", 7, ExtremalParams::kl(2, 2))
                .unwrap()
                .ncols(),
            10
        );
        assert_eq!(
            extremal_construction("f9_ell", 9, ExtremalParams::kl(3, 4))
                .unwrap()
                .ncols(),
            17
        );
    }

    #[test]
    fn q9_constructions() {
        assert_eq!(
            extremal_construction("q9_smallt", 6, ExtremalParams::k(3))
                .unwrap()
                .ncols(),
            12
        );
        assert_eq!(
            extremal_construction("q9_smallt", 8, ExtremalParams::k(4))
                .unwrap()
                .ncols(),
            22
        );
        assert_eq!(
            extremal_construction("q9_ell2", 8, ExtremalParams::k(3))
                .unwrap()
                .ncols(),
            23
        );
        let m = 4 * 5 + 2 + 1;
        assert_eq!(
            extremal_construction("q9_ell_ge3", m, ExtremalParams::kl(2, 3))
                .unwrap()
                .ncols(),
            2 * m + 1
        );
        assert_eq!(
            extremal_construction("q9_ell_ge3_large_k", 10, ExtremalParams::kl(3, 3))
                .unwrap()
                .ncols(),
            q9_smallt_size(10, 4) + 3
        );
    }

    #[test]
    fn counterexample_sizes() {
        for m in 3..=8 {
            assert_eq!(
                extremal_construction("sec5_counterexample", m, ExtremalParams::default())
                    .unwrap()
                    .ncols(),
                2 * m + 1
            );
        }
    }

    #[test]
    fn thresholds_and_names() {
        assert!(matches!(
            extremal_construction("q9_smallt", 5, ExtremalParams::k(3)),
            Err(Error::BelowThreshold { min: 6, .. })
        ));
        assert!(extremal_construction("nope", 5, ExtremalParams::default()).is_err());
        assert!(extremal_construction("f9_ell", 8, ExtremalParams::k(2)).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(2, 3), 0);
        assert_eq!(binom(3, 0), 1);
    }
}
