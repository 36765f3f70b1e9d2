//! Brute-force Turán numbers for small host sizes.
//!
//! Host edges are the k-subsets of `0..m` in lexicographic order, packed
//! into one `u64`, so the host may have at most 64 possible edges. This
//! code path shares nothing with the forb engine and serves as its oracle.

use std::collections::HashSet;

use itertools::Itertools;

use crate::constructions::Hypergraph;
use crate::error::{Error, Result};

/// Largest host for [`ex_graph`].
pub const MAX_GRAPH_VERTICES: usize = 10;
/// Largest host for [`ex_hypergraph`] with `k = 3`.
pub const MAX_HYPERGRAPH_VERTICES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuranResult {
    pub value: usize,
    pub witness: Hypergraph,
    pub nodes: u64,
}

/// `ex(m, g)`: the most edges of a graph on `m` vertices with no copy of `g`.
pub fn ex_graph(m: usize, g: &Hypergraph) -> Result<TuranResult> {
    if m > MAX_GRAPH_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "exhaustive ex(m, G) supports m <= {MAX_GRAPH_VERTICES}, got {m}"
        )));
    }
    ex_hypergraph(m, 2, g)
}

/// `ex^(k)(m, h)` for a k-uniform `h`.
pub fn ex_hypergraph(m: usize, k: usize, h: &Hypergraph) -> Result<TuranResult> {
    if k == 0 {
        return Err(Error::InvalidParameter("edge size must be positive".into()));
    }
    if let Some(e) = h
        .edges
        .iter()
        .find(|e| e.len() != k || e.iter().any(|&v| v >= h.vertices))
    {
        return Err(Error::InvalidParameter(format!(
            "forbidden hypergraph must be {k}-uniform on 0..{}, found edge {e:?}",
            h.vertices
        )));
    }
    let host: Vec<Vec<usize>> = (0..m).combinations(k).collect();
    if host.len() > 64 {
        return Err(Error::InvalidParameter(format!(
            "exhaustive search needs at most 64 possible edges; C({m},{k}) = {}",
            host.len()
        )));
    }
    if k == 3 && m > MAX_HYPERGRAPH_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "exhaustive 3-uniform search supports m <= {MAX_HYPERGRAPH_VERTICES}, got {m}"
        )));
    }
    let index = |e: &[usize]| -> usize {
        let mut s = e.to_vec();
        s.sort_unstable();
        host.iter().position(|x| *x == s).expect("k-subset")
    };
    let all: u64 = if host.len() == 64 {
        u64::MAX
    } else {
        (1u64 << host.len()) - 1
    };

    let mut copies: HashSet<u64> = HashSet::new();
    if h.vertices <= m {
        for map in (0..m).permutations(h.vertices) {
            let mask = h
                .edges
                .iter()
                .map(|e| {
                    let img: Vec<usize> = e.iter().map(|&v| map[v]).collect();
                    1u64 << index(&img)
                })
                .fold(0, |a, b| a | b);
            copies.insert(mask);
        }
    }
    if copies.contains(&0) {
        // An edgeless forbidden graph fits in every host.
        return Ok(TuranResult {
            value: 0,
            witness: Hypergraph {
                vertices: m,
                edges: Vec::new(),
            },
            nodes: 0,
        });
    }
    let mut copies: Vec<u64> = copies.into_iter().collect();
    copies.sort_unstable();
    let mut by_edge = vec![Vec::new(); host.len()];
    for (i, &c) in copies.iter().enumerate() {
        for (e, list) in by_edge.iter_mut().enumerate() {
            if c >> e & 1 == 1 {
                list.push(i);
            }
        }
    }
    let mut s = State {
        copies: &copies,
        by_edge: &by_edge,
        best: 0,
        best_mask: 0,
        nodes: 0,
    };
    s.expand(0, all, true);
    let edges = (0..host.len())
        .filter(|&e| s.best_mask >> e & 1 == 1)
        .map(|e| host[e].clone())
        .collect();
    Ok(TuranResult {
        value: s.best,
        witness: Hypergraph { vertices: m, edges },
        nodes: s.nodes,
    })
}

struct State<'a> {
    copies: &'a [u64],
    by_edge: &'a [Vec<usize>],
    best: usize,
    best_mask: u64,
    nodes: u64,
}

impl State<'_> {
    fn expand(&mut self, chosen: u64, mut cand: u64, root: bool) {
        loop {
            self.nodes += 1;
            let have = chosen.count_ones() as usize;
            if cand == 0 {
                if have > self.best {
                    self.best = have;
                    self.best_mask = chosen;
                }
                return;
            }
            if have + self.packing_bound(chosen, cand) <= self.best {
                return;
            }
            let e = cand.trailing_zeros() as usize;
            cand &= !(1 << e);
            // Relabel vertices so that some chosen edge is the first one.
            if root && e != 0 {
                continue;
            }
            let now = chosen | 1 << e;
            let mut next = cand;
            for &c in &self.by_edge[e] {
                let missing = self.copies[c] & !now;
                if missing.count_ones() == 1 {
                    next &= !missing;
                }
            }
            self.expand(now, next, false);
        }
    }

    /// Candidates minus a greedy packing of copies that could still be
    /// completed; each packed copy loses at least one edge.
    fn packing_bound(&self, chosen: u64, cand: u64) -> usize {
        let mut used = 0u64;
        let mut lost = 0;
        for &c in self.copies {
            let open = c & !chosen;
            if open != 0 && open & !cand == 0 && open & used == 0 {
                used |= open;
                lost += 1;
            }
        }
        cand.count_ones() as usize - lost
    }
}

/// Parses a small graph or hypergraph.
///
/// Forms: `K(n)`, `K(r,s)`, `C(n)`, `P(n)` (path on n vertices), `M(k)`
/// (k disjoint edges), and `E(n; 0-1-2, 1-2-3)` for an explicit edge list.
pub fn parse_graph(spec: &str) -> Result<Hypergraph> {
    let bad = || {
        Error::Parse(format!(
            "cannot parse graph `{spec}`; expected K(n), K(r,s), C(n), P(n), M(k) or E(n; a-b, ...)"
        ))
    };
    let s = spec.trim();
    let (head, body) = s.split_once('(').ok_or_else(bad)?;
    let body = body.strip_suffix(')').ok_or_else(bad)?;
    let nums = |t: &str| -> Result<Vec<usize>> {
        t.split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
            .collect()
    };
    let edges: Vec<Vec<usize>>;
    let vertices;
    match head.trim() {
        "K" => {
            let a = nums(body)?;
            match a[..] {
                [n] => {
                    vertices = n;
                    edges = (0..n).combinations(2).collect();
                }
                [r, t] => {
                    vertices = r + t;
                    edges = (0..r).flat_map(|x| (r..r + t).map(move |y| vec![x, y])).collect();
                }
                _ => return Err(bad()),
            }
        }
        "C" | "P" | "M" => {
            let [n] = nums(body)?[..] else { return Err(bad()) };
            match head.trim() {
                "C" if n >= 3 => {
                    vertices = n;
                    edges = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
                }
                "P" if n >= 2 => {
                    vertices = n;
                    edges = (0..n - 1).map(|i| vec![i, i + 1]).collect();
                }
                "M" => {
                    vertices = 2 * n;
                    edges = (0..n).map(|i| vec![2 * i, 2 * i + 1]).collect();
                }
                _ => return Err(bad()),
            }
        }
        "E" => {
            let (n, list) = body.split_once(';').ok_or_else(bad)?;
            vertices = n.trim().parse().map_err(|_| bad())?;
            edges = list
                .split(',')
                .map(|e| {
                    e.trim()
                        .split('-')
                        .map(|v| v.trim().parse::<usize>().map_err(|_| bad()))
                        .collect()
                })
                .collect::<Result<_>>()?;
            if edges.iter().flatten().any(|&v| v >= vertices) {
                return Err(bad());
            }
        }
        _ => return Err(bad()),
    }
    let edges = edges
        .into_iter()
        .map(|mut e: Vec<usize>| {
            e.sort_unstable();
            e
        })
        .collect();
    Ok(Hypergraph { vertices, edges })
}
