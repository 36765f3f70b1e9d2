//! `t·I_k` detection and the layered structure of `Q_3(t)`-avoiding matrices.

use std::fmt::Write as _;

use crate::analysis::rows::{classify, RowClass};
use crate::constructions::{q3t, t_identity};
use crate::containment::{contains, Certificate};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Largest `k` with `t·I_k ≺ a`, plus a witness when `k > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TIkResult {
    pub k: usize,
    pub witness: Option<Certificate>,
}

pub fn find_t_ik(a: &Matrix, t: usize) -> Result<TIkResult> {
    find_t_ik_capped(a, t, usize::MAX)
}

/// As [`find_t_ik`] but never reports more than `cap`.
///
/// `t·I_{k+1}` contains `t·I_k`, so the search goes up from `k = 1` and
/// stops at the first failure.
pub fn find_t_ik_capped(a: &Matrix, t: usize, cap: usize) -> Result<TIkResult> {
    if t < 1 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    let limit = cap.min(a.rows()).min(a.ncols() / t);
    let mut best = TIkResult { k: 0, witness: None };
    for k in 1..=limit {
        match contains(&t_identity(t, k), a) {
            Some(c) => best = TIkResult { k, witness: Some(c) },
            None => break,
        }
    }
    Ok(best)
}

/// Tunable thresholds of the decomposition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StabilityParams {
    /// Rows with fewer 1's than this on the current columns are set aside;
    /// `None` means `3t - 2`.
    pub few_ones: Option<usize>,
}

/// Columns set aside while building one layer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Discarded {
    /// Columns with a 1 in a row that had few 1's.
    pub few_ones: usize,
    /// Columns with two or more 1's on the base rows.
    pub multi_base: usize,
    /// Columns with a 1 in a dense row outside its group.
    pub bad: usize,
    /// Columns not identified by any sparse row.
    pub unidentified: usize,
}

impl Discarded {
    pub fn total(&self) -> usize {
        self.few_ones + self.multi_base + self.bad + self.unidentified
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub k: usize,
    /// Largest `k` available before the halving cap was applied.
    pub found_k: usize,
    /// `base_rows[i]` carries column `i` of `I_k`.
    pub base_rows: Vec<usize>,
    /// Column indices of `A` in each group, one group per base row.
    pub groups: Vec<Vec<usize>>,
    /// Rows of the layer's configuration.
    pub rows: Vec<usize>,
    /// Rows dropped because they were dense on some group.
    pub dense_rows: Vec<usize>,
    pub discarded: Discarded,
}

impl Layer {
    pub fn size(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityDecomposition {
    pub t: usize,
    pub rows: usize,
    pub columns: usize,
    pub layers: Vec<Layer>,
    /// Columns still unassigned when no further `t·I_k` was usable.
    pub leftover: usize,
}

impl StabilityDecomposition {
    pub fn kept(&self) -> usize {
        self.layers.iter().map(Layer::size).sum()
    }

    pub fn discarded(&self) -> usize {
        self.layers.iter().map(|l| l.discarded.total()).sum::<usize>() + self.leftover
    }

    /// `|A| / Σ|A'_j|`, reported but never asserted.
    pub fn ratio(&self) -> Option<f64> {
        let kept = self.kept();
        (kept > 0).then(|| self.columns as f64 / kept as f64)
    }

    /// Re-checks the layer shrinkage, the identity structure on the base
    /// rows, and the no-dense / identified structure of every group.
    pub fn check_conditions(&self, a: &Matrix) -> std::result::Result<(), String> {
        let t = self.t;
        if self.kept() + self.discarded() != self.columns {
            return Err(format!(
                "accounting: {} kept + {} discarded != {} columns",
                self.kept(),
                self.discarded(),
                self.columns
            ));
        }
        let max_layers = (self.rows.max(1) as f64).log2().floor() as usize + 1;
        if self.layers.len() > max_layers {
            return Err(format!("{} layers exceed log2(m)+1 = {max_layers}", self.layers.len()));
        }
        for (j, w) in self.layers.windows(2).enumerate() {
            if 2 * w[1].k > w[0].k {
                return Err(format!("layer {}: k = {} exceeds half of {}", j + 1, w[1].k, w[0].k));
            }
        }
        let mut seen = vec![false; a.ncols()];
        for (j, layer) in self.layers.iter().enumerate() {
            if layer.base_rows.len() != layer.k || layer.groups.len() != layer.k {
                return Err(format!("layer {j}: base does not have {} rows", layer.k));
            }
            for (i, group) in layer.groups.iter().enumerate() {
                for &c in group {
                    if std::mem::replace(&mut seen[c], true) {
                        return Err(format!("column {c} appears twice"));
                    }
                    for (i2, &b) in layer.base_rows.iter().enumerate() {
                        if a.get(b, c) != (i2 == i) {
                            return Err(format!(
                                "layer {j}: column {c} is not column {i} of I_{} on the base rows",
                                layer.k
                            ));
                        }
                    }
                }
                for &r in &layer.rows {
                    let ones = group.iter().filter(|&&c| a.get(r, c)).count();
                    if classify(group.len() - ones, ones, t) == RowClass::Dense {
                        return Err(format!("layer {j}: row {r} is dense on group {i}"));
                    }
                }
                for &c in group {
                    let identified = layer.rows.iter().any(|&r| {
                        let ones = group.iter().filter(|&&d| a.get(r, d)).count();
                        !a.get(r, c) && classify(group.len() - ones, ones, t) == RowClass::Sparse
                    });
                    if !identified {
                        return Err(format!("layer {j}: column {c} of group {i} is not identified"));
                    }
                }
            }
        }
        Ok(())
    }

    /// One block per layer.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "t: {}", self.t);
        let _ = writeln!(s, "columns: {}", self.columns);
        for (j, l) in self.layers.iter().enumerate() {
            let _ = writeln!(s, "layer {j}");
            let _ = writeln!(s, "  k: {} (largest available {})", l.k, l.found_k);
            let _ = writeln!(s, "  base_rows: {:?}", l.base_rows);
            let sizes: Vec<usize> = l.groups.iter().map(Vec::len).collect();
            let _ = writeln!(s, "  group_sizes: {sizes:?}");
            let _ = writeln!(s, "  dense_rows: {:?}", l.dense_rows);
            let d = l.discarded;
            let _ = writeln!(
                s,
                "  discarded: few_ones={} multi_base={} bad={} unidentified={}",
                d.few_ones, d.multi_base, d.bad, d.unidentified
            );
        }
        let _ = writeln!(s, "leftover: {}", self.leftover);
        let _ = writeln!(s, "kept: {}", self.kept());
        match self.ratio() {
            Some(r) => {
                let _ = writeln!(s, "ratio |A|/sum|A'_j|: {r:.3} (reported only)");
            }
            None => {
                let _ = writeln!(s, "ratio |A|/sum|A'_j|: undefined (nothing kept)");
            }
        }
        s
    }
}

fn ones_on(a: &Matrix, r: usize, cols: &[usize]) -> usize {
    cols.iter().filter(|&&c| a.get(r, c)).count()
}

/// Peels `Q_3(t)`-avoiding `a` into layers built on `t·I_k` copies.
///
/// Each layer sets aside rows with few 1's, takes the largest `t·I_k` (at
/// most half the previous `k`), groups columns by the base row holding their
/// 1, drops dense rows and the columns they spoil, and keeps the columns
/// identified by sparse rows. Columns with no 1 on the base go to the next
/// layer.
pub fn q3_stability_decompose(a: &Matrix, t: usize, params: StabilityParams) -> Result<StabilityDecomposition> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("Q3(t) needs t >= 2, got {t}")));
    }
    let q = q3t(t)?;
    if let Some(cert) = contains(q.matrix(), a) {
        return Err(Error::Precondition(format!(
            "matrix contains Q3({t}):\n{}",
            cert.to_text()
        )));
    }
    let few = params.few_ones.unwrap_or(3 * t - 2);
    let m = a.rows();
    let mut used_rows = vec![false; m];
    let mut cols: Vec<usize> = (0..a.ncols()).collect();
    let mut layers: Vec<Layer> = Vec::new();
    let mut leftover = 0;

    while !cols.is_empty() {
        let active: Vec<usize> = (0..m).filter(|&r| !used_rows[r]).collect();
        let (few_rows, rows_j): (Vec<usize>, Vec<usize>) = active.iter().partition(|&&r| ones_on(a, r, &cols) < few);
        let (spoiled, s1): (Vec<usize>, Vec<usize>) =
            cols.iter().partition(|&&c| few_rows.iter().any(|&r| a.get(r, c)));

        let sub = a.restrict(&rows_j, &cols)?;
        let cap = layers.last().map_or(usize::MAX, |l| l.k / 2);
        let found = find_t_ik(&sub, t)?;
        let chosen = if found.k <= cap {
            found.clone()
        } else {
            find_t_ik_capped(&sub, t, cap)?
        };
        if chosen.k == 0 {
            leftover += cols.len();
            break;
        }
        let k = chosen.k;
        let Some(Certificate::Containment { row_map, .. }) = &chosen.witness else {
            return Err(Error::Invariant("t·I_k found without a witness".into()));
        };
        let base_rows: Vec<usize> = (0..k).map(|i| rows_j[row_map[i]]).collect();

        let mut discarded = Discarded {
            few_ones: spoiled.len(),
            ..Discarded::default()
        };
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut next = Vec::new();
        for &c in &s1 {
            let hits: Vec<usize> = (0..k).filter(|&i| a.get(base_rows[i], c)).collect();
            match hits[..] {
                [] => next.push(c),
                [i] => groups[i].push(c),
                _ => discarded.multi_base += 1,
            }
        }

        let others: Vec<usize> = rows_j.iter().copied().filter(|r| !base_rows.contains(r)).collect();
        let mut dense_rows = Vec::new();
        let mut bad = vec![false; a.ncols()];
        for &r in &others {
            let mut dense = false;
            for group in &groups {
                let ones = ones_on(a, r, group);
                if classify(group.len() - ones, ones, t) != RowClass::Dense {
                    continue;
                }
                dense = true;
                let outside: Vec<usize> = cols.iter().copied().filter(|c| !group.contains(c)).collect();
                if ones_on(a, r, &outside) < outside.len() {
                    for &c in &outside {
                        if a.get(r, c) {
                            bad[c] = true;
                        }
                    }
                }
            }
            if dense {
                dense_rows.push(r);
            }
        }
        for group in groups.iter_mut() {
            let before = group.len();
            group.retain(|&c| !bad[c]);
            discarded.bad += before - group.len();
        }
        let rows: Vec<usize> = rows_j.iter().copied().filter(|r| !dense_rows.contains(r)).collect();
        for group in groups.iter_mut() {
            let sparse: Vec<usize> = rows
                .iter()
                .copied()
                .filter(|&r| {
                    let ones = ones_on(a, r, group);
                    classify(group.len() - ones, ones, t) == RowClass::Sparse
                })
                .collect();
            let before = group.len();
            let snapshot = group.clone();
            group.retain(|&c| sparse.iter().any(|&r| !a.get(r, c)));
            debug_assert!(snapshot.len() >= group.len());
            discarded.unidentified += before - group.len();
        }

        for &b in &base_rows {
            used_rows[b] = true;
        }
        layers.push(Layer {
            k,
            found_k: found.k,
            base_rows,
            groups,
            rows,
            dense_rows,
            discarded,
        });
        cols = next;
    }
    Ok(StabilityDecomposition {
        t,
        rows: m,
        columns: a.ncols(),
        layers,
        leftover,
    })
}
