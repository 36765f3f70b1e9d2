//! Building blocks, products and named matrices.

mod catalog;
mod extremal;

pub use catalog::{catalog, catalog_names, CatalogEntry};
pub use extremal::{extremal_construction, extremal_names, ExtremalParams};

use std::fmt;

use crate::canon::{canonicalize, Configuration};
use crate::error::{Error, Result};
use crate::matrix::{BitColumn, Matrix, SimpleMatrix};

/// Default cap on the number of columns a product may have.
pub const DEFAULT_PRODUCT_CAP: usize = 1 << 20;

/// One factor of a product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    /// Identity `I_k`.
    I(usize),
    /// Complemented identity `I_k^c`.
    Ic(usize),
    /// Upper triangular `T_k`; column `i` has ones in rows `0..=i`.
    T(usize),
    /// All-ones `1_{k,l}`.
    Ones(usize, usize),
    /// All-zeros `0_{k,l}`.
    Zeros(usize, usize),
    /// The 1x2 matrix `[0 1]`.
    B01,
    Literal(Matrix),
}

impl Block {
    pub fn matrix(&self) -> Result<Matrix> {
        let positive = |k: usize| {
            if k == 0 {
                Err(Error::InvalidParameter(format!(
                    "block size must be at least 1 in {self}"
                )))
            } else {
                Ok(k)
            }
        };
        let cols = match *self {
            Block::I(k) => (0..positive(k)?)
                .map(|i| BitColumn::from_ones(k, [i]))
                .collect::<Result<Vec<_>>>()?,
            Block::Ic(k) => (0..positive(k)?)
                .map(|i| BitColumn::from_ones(k, [i]).map(|c| c.complement()))
                .collect::<Result<Vec<_>>>()?,
            Block::T(k) => (0..positive(k)?)
                .map(|i| BitColumn::from_ones(k, 0..=i))
                .collect::<Result<Vec<_>>>()?,
            Block::Ones(k, l) => vec![BitColumn::ones(positive(k)?); positive(l)?],
            Block::Zeros(k, l) => vec![BitColumn::zeros(positive(k)?); positive(l)?],
            Block::B01 => vec![BitColumn::zeros(1), BitColumn::ones(1)],
            Block::Literal(ref m) => return Ok(m.clone()),
        };
        Matrix::new(self.rows(), cols)
    }

    pub fn rows(&self) -> usize {
        match *self {
            Block::I(k) | Block::Ic(k) | Block::T(k) | Block::Ones(k, _) | Block::Zeros(k, _) => k,
            Block::B01 => 1,
            Block::Literal(ref m) => m.rows(),
        }
    }

    pub fn ncols(&self) -> usize {
        match *self {
            Block::I(k) | Block::Ic(k) | Block::T(k) => k,
            Block::Ones(_, l) | Block::Zeros(_, l) => l,
            Block::B01 => 2,
            Block::Literal(ref m) => m.ncols(),
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::I(k) => write!(f, "I({k})"),
            Block::Ic(k) => write!(f, "Ic({k})"),
            Block::T(k) => write!(f, "T({k})"),
            Block::Ones(k, l) => write!(f, "1({k},{l})"),
            Block::Zeros(k, l) => write!(f, "0({k},{l})"),
            Block::B01 => f.write_str("b01"),
            Block::Literal(m) => {
                f.write_str("[")?;
                for r in 0..m.rows() {
                    if r > 0 {
                        f.write_str(";")?;
                    }
                    for c in m.cols() {
                        f.write_str(if c.get(r) { "1" } else { "0" })?;
                    }
                }
                f.write_str("]")
            }
        }
    }
}

/// The matrix of a single block.
pub fn block(b: &Block) -> Result<Matrix> {
    b.matrix()
}

/// A product `A_1 x A_2 x ... x A_p` of blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductExpr {
    factors: Vec<Block>,
}

impl ProductExpr {
    pub fn new(factors: Vec<Block>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidParameter("a product needs at least one factor".into()));
        }
        Ok(ProductExpr { factors })
    }

    pub fn factors(&self) -> &[Block] {
        &self.factors
    }

    pub fn rows(&self) -> usize {
        self.factors.iter().map(Block::rows).sum()
    }

    pub fn evaluate(&self) -> Result<Matrix> {
        product_with_cap(self, DEFAULT_PRODUCT_CAP)
    }
}

impl fmt::Display for ProductExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Evaluates a product with the default column cap.
///
/// Columns are listed lexicographically by factor column index, first
/// factor most significant; factor rows are stacked top to bottom.
pub fn product(expr: &ProductExpr) -> Result<Matrix> {
    product_with_cap(expr, DEFAULT_PRODUCT_CAP)
}

pub fn product_with_cap(expr: &ProductExpr, cap: usize) -> Result<Matrix> {
    let count: u128 = expr.factors.iter().map(|b| b.ncols() as u128).product();
    if count > cap as u128 {
        return Err(Error::ProductTooLarge(count, cap));
    }
    let mut acc = expr.factors[0].matrix()?;
    for b in &expr.factors[1..] {
        acc = product_of(&acc, &b.matrix()?);
    }
    Ok(acc)
}

/// The 2-fold product of two matrices.
pub fn product_of(a: &Matrix, b: &Matrix) -> Matrix {
    let mut cols = Vec::with_capacity(a.ncols() * b.ncols());
    for x in a.cols() {
        for y in b.cols() {
            cols.push(x.stack(y));
        }
    }
    Matrix::new(a.rows() + b.rows(), cols).expect("stacked widths agree")
}

/// A bipartite graph between the columns of two matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn complete(left: usize, right: usize) -> Self {
        let edges = (0..left).flat_map(|a| (0..right).map(move |b| (a, b))).collect();
        BipartiteGraph { left, right, edges }
    }
}

/// `A x_G B`: the column of `a` stacked on the column of `b` for every edge
/// `(a, b)` of `g`, in edge order.
pub fn graph_product(a: &SimpleMatrix, b: &SimpleMatrix, g: &BipartiteGraph) -> Result<SimpleMatrix> {
    if g.left != a.ncols() || g.right != b.ncols() {
        return Err(Error::SizeMismatch(format!(
            "graph has classes of size {} and {}, matrices have {} and {} columns",
            g.left,
            g.right,
            a.ncols(),
            b.ncols()
        )));
    }
    let mut cols = Vec::with_capacity(g.edges.len());
    for &(x, y) in &g.edges {
        if x >= g.left || y >= g.right {
            return Err(Error::IndexOutOfRange {
                what: "graph vertex",
                index: x.max(y),
                len: g.left.max(g.right),
            });
        }
        cols.push(a.col(x).stack(b.col(y)));
    }
    SimpleMatrix::new(Matrix::new(a.rows() + b.rows(), cols)?)
}

fn q3_matrix(t: usize, with_ones: bool) -> Result<Matrix> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("Q3(t) needs t >= 2, got {t}")));
    }
    let mut cols = vec![BitColumn::zeros(2)];
    cols.extend(std::iter::repeat_n(BitColumn::from_u64(2, 0b01)?, t));
    cols.extend(std::iter::repeat_n(BitColumn::from_u64(2, 0b10)?, t));
    if with_ones {
        cols.push(BitColumn::ones(2));
    }
    Matrix::new(2, cols)
}

/// `Q_3(t)`: one `(0,0)`, `t` copies each of `(1,0)` and `(0,1)`, one `(1,1)`.
pub fn q3t(t: usize) -> Result<Configuration> {
    canonicalize(&q3_matrix(t, true)?)
}

/// `Q_3(t)` without its column of ones.
pub fn q3t0(t: usize) -> Result<Configuration> {
    canonicalize(&q3_matrix(t, false)?)
}

/// `t·I_k`: every column of `I_k` repeated `t` times.
pub fn t_identity(t: usize, k: usize) -> Matrix {
    let cols = (0..k)
        .flat_map(|i| std::iter::repeat_n(BitColumn::from_ones(k, [i]).expect("in range"), t))
        .collect();
    Matrix::new(k, cols).expect("consistent widths")
}

/// A hypergraph on vertices `0..vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub vertices: usize,
    pub edges: Vec<Vec<usize>>,
}

/// Vertex-edge incidence matrix; one column per edge.
pub fn incidence_matrix(h: &Hypergraph) -> Result<SimpleMatrix> {
    let cols = h
        .edges
        .iter()
        .map(|e| BitColumn::from_ones(h.vertices, e.iter().copied()))
        .collect::<Result<Vec<_>>>()?;
    if let Some((i, e)) = h.edges.iter().enumerate().find(|(_, e)| {
        let mut s = (*e).clone();
        s.sort_unstable();
        s.windows(2).any(|w| w[0] == w[1])
    }) {
        return Err(Error::InvalidParameter(format!("edge {i} ({e:?}) repeats a vertex")));
    }
    SimpleMatrix::new(Matrix::new(h.vertices, cols)?).map_err(|e| match e {
        Error::NotSimple(j) => Error::InvalidParameter(format!("edge {j} is repeated")),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::containment::{contains, contains_any};

    fn expr(bs: &[Block]) -> ProductExpr {
        ProductExpr::new(bs.to_vec()).unwrap()
    }

    fn cfg(rows: &[&str]) -> Configuration {
        canonicalize(&Matrix::from_row_strs(rows).unwrap()).unwrap()
    }

    #[test]
    fn triangle_columns() {
        let t3 = Block::T(3).matrix().unwrap();
        let cols: Vec<String> = t3.cols().iter().map(|c| c.to_string()).collect();
        assert_eq!(cols, ["100", "110", "111"]);
        assert_eq!(Block::I(1).matrix().unwrap(), Block::T(1).matrix().unwrap());
        assert_eq!(Block::Ones(2, 2).matrix().unwrap().to_text(), "11\n11\n");
        assert!(Block::I(0).matrix().is_err());
    }

    #[test]
    fn i2_times_i2_is_f11() {
        let p = product(&expr(&[Block::I(2), Block::I(2)])).unwrap();
        assert_eq!(canonicalize(&p).unwrap(), cfg(&["1010", "1001", "0110", "0101"]));
    }

    #[test]
    fn product_shapes() {
        let p = product(&expr(&[Block::B01, Block::I(3)])).unwrap();
        assert_eq!((p.rows(), p.ncols()), (4, 6));
        let p = product(&expr(&[Block::I(3), Block::T(2)])).unwrap();
        assert_eq!((p.rows(), p.ncols()), (5, 6));
        assert!(p.is_simple());
    }

    #[test]
    fn product_cap() {
        let e = expr(&[Block::I(64), Block::I(64), Block::I(64), Block::I(64)]);
        assert!(matches!(product(&e), Err(Error::ProductTooLarge(..))));
        assert!(product_with_cap(&expr(&[Block::I(2), Block::I(2)]), 3).is_err());
    }

    #[test]
    fn graph_product_extremes() {
        let a = SimpleMatrix::new(Block::I(3).matrix().unwrap()).unwrap();
        let b = SimpleMatrix::new(Block::T(2).matrix().unwrap()).unwrap();
        let full = graph_product(&a, &b, &BipartiteGraph::complete(3, 2)).unwrap();
        let p = product(&expr(&[Block::I(3), Block::T(2)])).unwrap();
        assert_eq!(full.as_matrix(), &p);
        let empty = BipartiteGraph {
            left: 3,
            right: 2,
            edges: vec![],
        };
        let e = graph_product(&a, &b, &empty).unwrap();
        assert_eq!((e.rows(), e.ncols()), (5, 0));
        let bad = BipartiteGraph {
            left: 2,
            right: 2,
            edges: vec![],
        };
        assert!(matches!(graph_product(&a, &b, &bad), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn c4_free_graph_product_avoids_q3_and_f11() {
        // The 6-cycle as a bipartite graph between 3 and 3 vertices.
        let g = BipartiteGraph {
            left: 3,
            right: 3,
            edges: vec![(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)],
        };
        let a = SimpleMatrix::new(Block::I(3).matrix().unwrap()).unwrap();
        let b = SimpleMatrix::new(Block::Ic(3).matrix().unwrap()).unwrap();
        let p = graph_product(&a, &b, &g).unwrap();
        let fam = [q3t(2).unwrap(), cfg(&["1010", "1001", "0110", "0101"])];
        assert!(contains_any(&fam, &p).is_none());
    }

    #[test]
    fn q3_family() {
        assert_eq!(q3t(2).unwrap(), cfg(&["000111", "011001"]));
        assert_eq!(q3t(5).unwrap().ncols(), 12);
        let z = q3t0(3).unwrap();
        let counts: Vec<usize> = z.col_multiset().values().copied().collect();
        assert_eq!(counts, [1, 3, 3]);
        assert!(q3t(1).is_err());
    }

    #[test]
    fn incidence_examples() {
        let two = Hypergraph {
            vertices: 4,
            edges: vec![vec![0, 1], vec![2, 3]],
        };
        let m = incidence_matrix(&two).unwrap();
        assert_eq!(canonicalize(&m).unwrap(), cfg(&["10", "10", "01", "01"]));
        let k22 = Hypergraph {
            vertices: 4,
            edges: vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
        };
        let p = product(&expr(&[Block::I(2), Block::I(2)])).unwrap();
        assert_eq!(
            canonicalize(&incidence_matrix(&k22).unwrap()).unwrap(),
            canonicalize(&p).unwrap()
        );
        let e = Hypergraph {
            vertices: 3,
            edges: vec![vec![0, 1, 2]],
        };
        assert_eq!(
            incidence_matrix(&e).unwrap().as_matrix(),
            &Block::Ones(3, 1).matrix().unwrap()
        );
        let rep = Hypergraph {
            vertices: 3,
            edges: vec![vec![0, 1], vec![1, 0]],
        };
        assert!(incidence_matrix(&rep).is_err());
    }

    #[test]
    fn t_identity_shape() {
        let m = t_identity(2, 3);
        assert_eq!((m.rows(), m.ncols()), (3, 6));
        assert!(contains(&t_identity(2, 2), &m).is_some());
    }
}
