//! Configuration containment `F ≺ A`.
//!
//! The search assigns rows of `F` to rows of `A` one at a time, densest `F`
//! rows first. After each assignment the columns of `F` fall into classes by
//! their pattern on the rows placed so far, and each class corresponds to the
//! set of `A` columns showing the same pattern on the chosen rows. Distinct
//! classes have disjoint column sets, so the assignment extends to a column
//! injection exactly when every class set is at least as large as the class.

use std::fmt;

use itertools::Itertools;

use crate::canon::Configuration;
use crate::error::{Error, Result};
use crate::matrix::{BitColumn, Matrix, RowBits};

/// Evidence for or against a containment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `F[i][j] == A[row_map[i]][col_map[j]]` for every entry of `F`.
    Containment { row_map: Vec<usize>, col_map: Vec<usize> },
    /// A note describing the exhaustive check that found no copy.
    Avoidance { checked_universe: String },
}

impl Certificate {
    /// Re-checks a containment certificate entrywise. Avoidance
    /// certificates carry no checkable data and return `false`.
    pub fn verify(&self, f: &Matrix, a: &Matrix) -> bool {
        let Certificate::Containment { row_map, col_map } = self else {
            return false;
        };
        if row_map.len() != f.rows() || col_map.len() != f.ncols() {
            return false;
        }
        if row_map.iter().any(|&r| r >= a.rows()) || col_map.iter().any(|&c| c >= a.ncols()) {
            return false;
        }
        if !row_map.iter().all_unique() || !col_map.iter().all_unique() {
            return false;
        }
        (0..f.rows()).all(|i| (0..f.ncols()).all(|j| f.get(i, j) == a.get(row_map[i], col_map[j])))
    }

    pub fn is_containment(&self) -> bool {
        matches!(self, Certificate::Containment { .. })
    }

    /// Text block form, one `key: value` line per field.
    pub fn to_text(&self) -> String {
        match self {
            Certificate::Containment { row_map, col_map } => format!(
                "kind: containment\nrow_map: {}\ncol_map: {}\n",
                map_text(row_map),
                map_text(col_map)
            ),
            Certificate::Avoidance { checked_universe } => {
                format!("kind: avoidance\nchecked_universe: {checked_universe}\n")
            }
        }
    }

    /// Parses the output of [`Certificate::to_text`].
    pub fn from_text(text: &str) -> Result<Self> {
        let mut fields = std::collections::HashMap::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("certificate line `{line}` lacks `:`")))?;
            fields.insert(k.trim(), v.trim());
        }
        let get = |k: &str| {
            fields
                .get(k)
                .copied()
                .ok_or_else(|| Error::Parse(format!("certificate lacks `{k}`")))
        };
        match get("kind")? {
            "containment" => Ok(Certificate::Containment {
                row_map: parse_map(get("row_map")?)?,
                col_map: parse_map(get("col_map")?)?,
            }),
            "avoidance" => Ok(Certificate::Avoidance {
                checked_universe: get("checked_universe")?.to_string(),
            }),
            other => Err(Error::Parse(format!("unknown certificate kind `{other}`"))),
        }
    }
}

fn map_text(map: &[usize]) -> String {
    map.iter().enumerate().map(|(i, t)| format!("{i}->{t}")).join(" ")
}

fn parse_map(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (pos, item) in s.split_whitespace().enumerate() {
        let (i, t) = item
            .split_once("->")
            .ok_or_else(|| Error::Parse(format!("bad map entry `{item}`")))?;
        let bad = || Error::Parse(format!("bad map entry `{item}`"));
        if i.parse::<usize>().map_err(|_| bad())? != pos {
            return Err(bad());
        }
        out.push(t.parse().map_err(|_| bad())?);
    }
    Ok(out)
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Debug)]
struct Class {
    parent: usize,
    bit: bool,
    demand: usize,
}

/// A configuration preprocessed for repeated containment queries.
#[derive(Clone, Debug)]
pub struct Pattern {
    matrix: Matrix,
    /// `order[d]` is the `F` row placed at depth `d`.
    order: Vec<usize>,
    same_as_prev: Vec<bool>,
    /// Classes after placing rows `0..=d`. Parents index `levels[d - 1]`,
    /// or the single root class at depth 0.
    levels: Vec<Vec<Class>>,
    /// `F` columns belonging to each class of the last level.
    leaf_cols: Vec<Vec<usize>>,
}

impl Pattern {
    pub fn new(f: &Matrix) -> Self {
        let k = f.rows();
        let rows: Vec<Vec<bool>> = (0..k).map(|r| f.row(r)).collect();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| {
            let sa = rows[a].iter().filter(|&&x| x).count();
            let sb = rows[b].iter().filter(|&&x| x).count();
            sb.cmp(&sa).then_with(|| rows[b].cmp(&rows[a])).then(a.cmp(&b))
        });
        let same_as_prev = (0..k).map(|d| d > 0 && rows[order[d]] == rows[order[d - 1]]).collect();

        let mut levels = Vec::with_capacity(k);
        let mut groups: Vec<Vec<usize>> = vec![(0..f.ncols()).collect()];
        for &r in &order {
            let mut next = Vec::new();
            let mut classes = Vec::new();
            for (p, g) in groups.iter().enumerate() {
                for bit in [false, true] {
                    let part: Vec<usize> = g.iter().copied().filter(|&j| f.get(r, j) == bit).collect();
                    if !part.is_empty() {
                        classes.push(Class {
                            parent: p,
                            bit,
                            demand: part.len(),
                        });
                        next.push(part);
                    }
                }
            }
            levels.push(classes);
            groups = next;
        }
        Pattern {
            matrix: f.clone(),
            order,
            same_as_prev,
            levels,
            leaf_cols: groups,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn ncols(&self) -> usize {
        self.matrix.ncols()
    }

    /// Finds a copy of the pattern in `a`. With `required = Some(c)` only
    /// copies using column `c` of `a` are accepted.
    pub fn find(&self, a: &RowBits, required: Option<usize>, scratch: &mut Scratch) -> Option<Certificate> {
        let k = self.rows();
        let l = self.ncols();
        if k > a.rows() || l > a.ncols() {
            return None;
        }
        if k == 0 {
            let mut col_map: Vec<usize> = Vec::with_capacity(l);
            if let Some(c) = required {
                if l == 0 {
                    return None;
                }
                col_map.push(c);
            }
            col_map.extend((0..a.ncols()).filter(|&j| Some(j) != required).take(l - col_map.len()));
            return Some(Certificate::Containment {
                row_map: Vec::new(),
                col_map,
            });
        }
        scratch.prepare(self, a);
        if !self.dfs(a, 0, required, scratch) {
            return None;
        }
        Some(self.witness(a, required, scratch))
    }

    fn dfs(&self, a: &RowBits, d: usize, required: Option<usize>, s: &mut Scratch) -> bool {
        if d == self.levels.len() {
            return true;
        }
        let w = s.words;
        let lo = if self.same_as_prev[d] { s.row_map[d - 1] + 1 } else { 0 };
        let classes = &self.levels[d];
        for ar in lo..a.rows() {
            if s.used[ar] {
                continue;
            }
            let row = a.row(ar);
            let (before, after) = s.sets.split_at_mut(d + 1);
            let parent_sets = &before[d];
            let cur = &mut after[0];
            let mut ok = true;
            let mut has_required = required.is_none();
            for (ci, class) in classes.iter().enumerate() {
                let ps = &parent_sets[class.parent * w..(class.parent + 1) * w];
                let out = &mut cur[ci * w..(ci + 1) * w];
                let mut count = 0usize;
                for i in 0..w {
                    let v = if class.bit { ps[i] & row[i] } else { ps[i] & !row[i] };
                    out[i] = v;
                    count += v.count_ones() as usize;
                }
                if count < class.demand {
                    ok = false;
                    break;
                }
                if let Some(c) = required {
                    if out[c / 64] >> (c % 64) & 1 == 1 {
                        has_required = true;
                    }
                }
            }
            if !ok || !has_required {
                continue;
            }
            s.used[ar] = true;
            s.row_map[d] = ar;
            if self.dfs(a, d + 1, required, s) {
                return true;
            }
            s.used[ar] = false;
        }
        false
    }

    fn witness(&self, a: &RowBits, required: Option<usize>, s: &Scratch) -> Certificate {
        let k = self.rows();
        let w = s.words;
        let mut row_map = vec![0; k];
        for d in 0..k {
            row_map[self.order[d]] = s.row_map[d];
        }
        let leaf = &s.sets[k];
        let mut col_map = vec![usize::MAX; self.ncols()];
        for (ci, cols) in self.leaf_cols.iter().enumerate() {
            let set = &leaf[ci * w..(ci + 1) * w];
            let mut picks: Vec<usize> = Vec::with_capacity(cols.len());
            if let Some(c) = required {
                if set[c / 64] >> (c % 64) & 1 == 1 {
                    picks.push(c);
                }
            }
            let mut j = 0;
            while picks.len() < cols.len() && j < a.ncols() {
                if set[j / 64] >> (j % 64) & 1 == 1 && Some(j) != required {
                    picks.push(j);
                }
                j += 1;
            }
            for (&fc, &ac) in cols.iter().zip(&picks) {
                col_map[fc] = ac;
            }
        }
        Certificate::Containment { row_map, col_map }
    }
}

/// Reusable working memory for [`Pattern::find`].
#[derive(Clone, Debug, Default)]
pub struct Scratch {
    words: usize,
    sets: Vec<Vec<u64>>,
    used: Vec<bool>,
    row_map: Vec<usize>,
}

impl Scratch {
    pub fn new() -> Self {
        Self::default()
    }

    fn prepare(&mut self, p: &Pattern, a: &RowBits) {
        let w = a.words();
        let k = p.rows();
        self.words = w;
        self.sets.resize_with(k + 1, Vec::new);
        self.sets[0].clear();
        self.sets[0].extend(a.live_mask());
        for (set, level) in self.sets[1..].iter_mut().zip(&p.levels) {
            set.resize(level.len() * w, 0);
        }
        self.used.clear();
        self.used.resize(a.rows(), false);
        self.row_map.clear();
        self.row_map.resize(k, 0);
    }
}

/// Returns a witness that `f ≺ a`, or `None`.
pub fn contains(f: &Matrix, a: &Matrix) -> Option<Certificate> {
    if f.rows() > a.rows() || f.ncols() > a.ncols() {
        return None;
    }
    Pattern::new(f).find(&a.transposed(), None, &mut Scratch::new())
}

/// The first family member (in order) contained in `a`.
pub fn contains_any(family: &[Configuration], a: &Matrix) -> Option<(usize, Certificate)> {
    let rb = a.transposed();
    let mut scratch = Scratch::new();
    family.iter().enumerate().find_map(|(i, f)| {
        if f.rows() > a.rows() || f.ncols() > a.ncols() {
            return None;
        }
        Pattern::new(f.matrix()).find(&rb, None, &mut scratch).map(|c| (i, c))
    })
}

/// Checks whether appending `c` to `a` creates a copy of a family member.
/// Any witness returned uses the new column, which has index `a.ncols()`.
///
/// `a` is assumed to avoid the family already.
pub fn contains_incremental(
    family: &[Configuration],
    a: &Matrix,
    c: &BitColumn,
) -> Result<Option<(usize, Certificate)>> {
    if c.width() != a.rows() {
        return Err(Error::WidthMismatch {
            expected: a.rows(),
            found: c.width(),
        });
    }
    if a.cols().contains(c) {
        return Err(Error::Precondition(format!(
            "column {c} is already present in the matrix"
        )));
    }
    let mut rb = a.transposed();
    rb.push(c);
    let new = a.ncols();
    let mut scratch = Scratch::new();
    Ok(family.iter().enumerate().find_map(|(i, f)| {
        if f.rows() > rb.rows() || f.ncols() > rb.ncols() {
            return None;
        }
        Pattern::new(f.matrix())
            .find(&rb, Some(new), &mut scratch)
            .map(|cert| (i, cert))
    }))
}

/// Reference implementation: every ordered row injection, then a plain
/// backtracking search for a column injection. Intended for small inputs.
pub fn naive_contains(f: &Matrix, a: &Matrix) -> Option<Certificate> {
    let k = f.rows();
    let l = f.ncols();
    if k > a.rows() || l > a.ncols() {
        return None;
    }
    for rows in (0..a.rows()).permutations(k) {
        let mut col_map = Vec::with_capacity(l);
        let mut used = vec![false; a.ncols()];
        if naive_cols(f, a, &rows, 0, &mut used, &mut col_map) {
            return Some(Certificate::Containment { row_map: rows, col_map });
        }
    }
    None
}

fn naive_cols(f: &Matrix, a: &Matrix, rows: &[usize], j: usize, used: &mut [bool], col_map: &mut Vec<usize>) -> bool {
    if j == f.ncols() {
        return true;
    }
    for ac in 0..a.ncols() {
        if used[ac] || !(0..f.rows()).all(|i| f.get(i, j) == a.get(rows[i], ac)) {
            continue;
        }
        used[ac] = true;
        col_map.push(ac);
        if naive_cols(f, a, rows, j + 1, used, col_map) {
            return true;
        }
        col_map.pop();
        used[ac] = false;
    }
    false
}
