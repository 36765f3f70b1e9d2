//! Exact forb values by branch and bound.
//!
//! The candidate columns are indexed in ascending (sum, value) order. Every
//! copy of a family member inside the candidate universe becomes a
//! hyperedge over candidate indices; the answer is then a maximum
//! independent set of that hypergraph. Two-element hyperedges form a
//! conflict graph used for a clique-cover bound, larger ones are enforced
//! by forward checking. Members with too many copies to list are instead
//! checked with [`Pattern::find`] whenever a column is added.

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use smallvec::SmallVec;

use crate::canon::Configuration;
use crate::containment::{contains_any, Pattern, Scratch};
use crate::error::{Error, Result};
use crate::matrix::{BitColumn, Matrix, RowBits, SimpleMatrix};

/// Largest row count for which the column universe is enumerated.
pub const MAX_SEARCH_ROWS: usize = 16;
/// Members whose copies in the universe exceed this count are checked
/// lazily instead of being listed.
pub const COPY_LIST_CAP: u64 = 400_000;
const CLOCK_EVERY: u64 = 1024;

/// Column sums allowed in the search universe, inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SumRange {
    pub min: usize,
    pub max: usize,
}

impl SumRange {
    pub const ALL: SumRange = SumRange {
        min: 0,
        max: usize::MAX,
    };

    pub fn eq(n: usize) -> Self {
        SumRange { min: n, max: n }
    }

    pub fn at_least(n: usize) -> Self {
        SumRange {
            min: n,
            max: usize::MAX,
        }
    }

    pub fn at_most(n: usize) -> Self {
        SumRange { min: 0, max: n }
    }

    pub fn contains(&self, s: usize) -> bool {
        self.min <= s && s <= self.max
    }
}

impl fmt::Display for SumRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.min, self.max) {
            (0, usize::MAX) => f.write_str("all"),
            (a, b) if a == b => write!(f, "={a}"),
            (a, usize::MAX) => write!(f, ">={a}"),
            (0, b) => write!(f, "<={b}"),
            (a, b) => write!(f, "{a}..={b}"),
        }
    }
}

impl std::str::FromStr for SumRange {
    type Err = Error;

    /// Parses the [`Display`](fmt::Display) forms, and `a..b` as `a..=b`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || {
            Error::Parse(format!(
                "cannot parse sum range `{s}`; expected all, =n, >=n, <=n or a..=b"
            ))
        };
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        let r = if t == "all" {
            SumRange::ALL
        } else if let Some(x) = t.strip_prefix(">=") {
            SumRange::at_least(num(x)?)
        } else if let Some(x) = t.strip_prefix("<=") {
            SumRange::at_most(num(x)?)
        } else if let Some(x) = t.strip_prefix('=') {
            SumRange::eq(num(x)?)
        } else if let Some((a, b)) = t.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            SumRange {
                min: num(a)?,
                max: num(b)?,
            }
        } else {
            SumRange::eq(num(t)?)
        };
        if r.min > r.max {
            return Err(bad());
        }
        Ok(r)
    }
}

/// Which columns may be used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColumnUniverse {
    /// Every column whose sum lies in the range.
    Sums(SumRange),
    /// An explicit list of columns. Disables symmetry pruning.
    Columns(Vec<BitColumn>),
}

impl Default for ColumnUniverse {
    fn default() -> Self {
        ColumnUniverse::Sums(SumRange::ALL)
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub universe: ColumnUniverse,
    pub time_budget: Option<Duration>,
    pub symmetry_pruning: bool,
    /// A known avoiding matrix; the search then only looks for larger ones.
    pub initial_lower_bound: Option<SimpleMatrix>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            universe: ColumnUniverse::default(),
            time_budget: None,
            symmetry_pruning: true,
            initial_lower_bound: None,
        }
    }
}

impl SearchOptions {
    pub fn with_sums(mut self, sums: SumRange) -> Self {
        self.universe = ColumnUniverse::Sums(sums);
        self
    }

    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.time_budget = Some(budget);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    /// The search space was exhausted.
    Exact,
    /// The value is a lower bound that no search improved on or refuted.
    LowerBoundOnly,
    /// The time budget ran out; the value is the best found.
    Timeout,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Exact => "exact",
            Status::LowerBoundOnly => "lower_bound_only",
            Status::Timeout => "timeout",
        })
    }
}

impl std::str::FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Status::Exact),
            "lower_bound_only" => Ok(Status::LowerBoundOnly),
            "timeout" => Ok(Status::Timeout),
            _ => Err(Error::Parse(format!("unknown status `{s}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub value: usize,
    pub witness: SimpleMatrix,
    pub status: Status,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// `forb(m, family)` over all columns.
pub fn forb(m: usize, family: &[Configuration]) -> Result<SearchResult> {
    forb_exact(m, family, &SearchOptions::default())
}

/// `forb(m, family)` restricted to columns whose sum satisfies `sums`.
pub fn forb_restricted(m: usize, family: &[Configuration], sums: SumRange) -> Result<SearchResult> {
    forb_exact(m, family, &SearchOptions::default().with_sums(sums))
}

/// Runs the branch and bound described in the module docs.
pub fn forb_exact(m: usize, family: &[Configuration], opts: &SearchOptions) -> Result<SearchResult> {
    let start = Instant::now();
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if m > MAX_SEARCH_ROWS {
        return Err(Error::InvalidParameter(format!(
            "exact search enumerates all columns and supports m <= {MAX_SEARCH_ROWS}, got {m}"
        )));
    }
    let (universe, symmetric) = match &opts.universe {
        ColumnUniverse::Sums(r) => {
            let mut cols: Vec<BitColumn> = (0u64..1 << m)
                .filter(|v| r.contains(v.count_ones() as usize))
                .map(|v| BitColumn::from_u64(m, v).expect("fits"))
                .collect();
            sort_candidates(&mut cols);
            (cols, opts.symmetry_pruning)
        }
        ColumnUniverse::Columns(cols) => {
            for c in cols {
                if c.width() != m {
                    return Err(Error::WidthMismatch {
                        expected: m,
                        found: c.width(),
                    });
                }
            }
            let mut cols = cols.clone();
            sort_candidates(&mut cols);
            cols.dedup();
            (cols, false)
        }
    };

    let mut best: Vec<BitColumn> = Vec::new();
    if let Some(lb) = &opts.initial_lower_bound {
        if lb.rows() != m {
            return Err(Error::WidthMismatch {
                expected: m,
                found: lb.rows(),
            });
        }
        if let Some((i, _)) = contains_any(family, lb) {
            return Err(Error::Precondition(format!(
                "initial lower bound contains family member {i}"
            )));
        }
        if let Some(c) = lb
            .cols()
            .iter()
            .find(|c| universe.binary_search_by(|u| cmp_candidate(u, c)).is_err())
        {
            return Err(Error::Precondition(format!(
                "initial lower bound uses column {c} outside the universe"
            )));
        }
        best = lb.cols().to_vec();
    }

    let problem = Problem::build(m, universe, family);
    let mut search = Search::new(&problem, best.len(), opts, start, symmetric);
    if problem.trivially_zero {
        search.finished = true;
    } else {
        search.run();
    }

    let (cols, status) = match search.best_set.take() {
        Some(set) => (
            set.iter().map(|&i| problem.universe[i].clone()).collect(),
            search.status(),
        ),
        None => (best, search.status()),
    };
    let witness = SimpleMatrix::new(Matrix::new(m, cols)?)
        .map_err(|e| Error::Invariant(format!("search witness is not simple: {e}")))?;
    if let Some((i, cert)) = contains_any(family, &witness) {
        return Err(Error::Invariant(format!(
            "search witness contains family member {i}:\n{}",
            cert.to_text()
        )));
    }
    Ok(SearchResult {
        value: witness.ncols(),
        witness,
        status,
        nodes: search.nodes,
        elapsed: start.elapsed(),
    })
}

fn cmp_candidate(a: &BitColumn, b: &BitColumn) -> std::cmp::Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| a.cmp(b))
}

fn sort_candidates(cols: &mut [BitColumn]) {
    cols.sort_by(cmp_candidate);
}

/// Whether `c` is the least column of its sum under the row order, which
/// means its ones occupy the first rows.
fn is_prefix_column(c: &BitColumn) -> bool {
    let s = c.count_ones();
    c.ones_iter().eq(0..s)
}

type Edge = SmallVec<[u32; 6]>;

/// The search instance after copy enumeration.
struct Problem {
    m: usize,
    universe: Vec<BitColumn>,
    words: usize,
    /// Candidates that survive single-column members.
    alive: Vec<u64>,
    adj: Vec<u64>,
    edges: Vec<Edge>,
    edges_of: Vec<Vec<u32>>,
    lazy: Vec<Pattern>,
    /// Some member has no columns and fits, so only the empty matrix avoids.
    trivially_zero: bool,
}

impl Problem {
    fn build(m: usize, universe: Vec<BitColumn>, family: &[Configuration]) -> Problem {
        let n = universe.len();
        let words = n.div_ceil(64).max(1);
        let mut alive = vec![0u64; words];
        for i in 0..n {
            alive[i / 64] |= 1 << (i % 64);
        }
        let values: Vec<u64> = universe.iter().map(|c| c.as_u64().expect("m <= 64")).collect();
        let mut trivially_zero = false;

        let mut members: Vec<&Configuration> = Vec::new();
        let mut seen = HashSet::new();
        for f in family {
            if f.rows() <= m && seen.insert(f.canon_key().to_vec()) {
                if f.ncols() == 0 {
                    trivially_zero = true;
                }
                members.push(f);
            }
        }

        // Single-column members only delete candidates.
        for f in members.iter().filter(|f| f.ncols() == 1) {
            let pat = f.matrix().col(0);
            let ones = pat.count_ones();
            let zeros = f.rows() - ones;
            for (i, c) in universe.iter().enumerate() {
                if c.count_ones() >= ones && m - c.count_ones() >= zeros {
                    alive[i / 64] &= !(1 << (i % 64));
                }
            }
        }
        let live: Vec<usize> = (0..n).filter(|&i| alive[i / 64] >> (i % 64) & 1 == 1).collect();

        let mut edge_set: HashSet<Edge> = HashSet::new();
        let mut lazy = Vec::new();
        for f in members.iter().filter(|f| f.ncols() >= 2) {
            match copies(f.matrix(), m, &values, &live) {
                Some(list) => edge_set.extend(list),
                None => lazy.push(Pattern::new(f.matrix())),
            }
        }

        let mut adj = vec![0u64; n * words];
        for e in edge_set.iter().filter(|e| e.len() == 2) {
            let (a, b) = (e[0] as usize, e[1] as usize);
            adj[a * words + b / 64] |= 1 << (b % 64);
            adj[b * words + a / 64] |= 1 << (a % 64);
        }
        let is_adj = |a: u32, b: u32| adj[a as usize * words + b as usize / 64] >> (b % 64) & 1 == 1;
        let mut edges: Vec<Edge> = edge_set
            .iter()
            .filter(|e| e.len() > 2)
            .filter(|e| !(0..e.len()).any(|i| (i + 1..e.len()).any(|j| is_adj(e[i], e[j]))))
            .cloned()
            .collect();
        let big: HashSet<Edge> = edges.iter().cloned().collect();
        edges.retain(|e| !has_listed_proper_subset(e, &big));
        edges.sort();
        let mut edges_of = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            for &v in e {
                edges_of[v as usize].push(id as u32);
            }
        }
        Problem {
            m,
            universe,

            words,
            alive,
            adj,
            edges,
            edges_of,
            lazy,
            trivially_zero,
        }
    }

    fn adj(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }
}

fn has_listed_proper_subset(e: &Edge, set: &HashSet<Edge>) -> bool {
    let s = e.len();
    if s <= 3 {
        return false;
    }
    // Subsets with at least three elements and at least one element missing.
    (1u32..(1 << s) - 1).any(|mask| {
        mask.count_ones() >= 3 && {
            let sub: Edge = (0..s).filter(|&i| mask >> i & 1 == 1).map(|i| e[i]).collect();
            set.contains(&sub)
        }
    })
}

/// Every set of candidates forming a copy of `f`, or `None` when there
/// would be more than [`COPY_LIST_CAP`] of them.
fn copies(f: &Matrix, m: usize, values: &[u64], live: &[usize]) -> Option<Vec<Edge>> {
    let k = f.rows();
    let rows: Vec<Vec<bool>> = (0..k).map(|r| f.row(r)).collect();
    // Distinct F columns with their multiplicity, as k-bit values.
    let mut demand: Vec<(u64, usize)> = Vec::new();
    for c in f.cols() {
        let v = c.as_u64().expect("small");
        match demand.iter_mut().find(|d| d.0 == v) {
            Some(d) => d.1 += 1,
            None => demand.push((v, 1)),
        }
    }
    let mut out: Vec<Edge> = Vec::new();
    let mut total: u64 = 0;
    let mut inj = Vec::with_capacity(k);
    let mut used = vec![false; m];
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); 1 << k];
    let ok = injections(k, m, &rows, &mut inj, &mut used, &mut |inj| {
        for b in buckets.iter_mut() {
            b.clear();
        }
        for &i in live {
            let v = values[i];
            let mut r = 0usize;
            for (bit, &row) in inj.iter().enumerate() {
                r |= ((v >> row & 1) as usize) << bit;
            }
            buckets[r].push(i as u32);
        }
        let mut count: u64 = 1;
        for &(v, d) in &demand {
            count = count.saturating_mul(binom(buckets[v as usize].len(), d));
        }
        if count == 0 {
            return true;
        }
        total = total.saturating_add(count);
        if total > COPY_LIST_CAP {
            return false;
        }
        let mut cur: Edge = Edge::new();
        choose_columns(&demand, &buckets, 0, 0, &mut cur, &mut out);
        true
    });
    if !ok {
        return None;
    }
    Some(out)
}

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Enumerates ordered row injections, keeping equal pattern rows in
/// increasing order. Stops early when `visit` returns false.
fn injections(
    k: usize,
    m: usize,
    rows: &[Vec<bool>],
    inj: &mut Vec<usize>,
    used: &mut [bool],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let d = inj.len();
    if d == k {
        return visit(inj);
    }
    let lo = (0..d).rev().find(|&p| rows[p] == rows[d]).map_or(0, |p| inj[p] + 1);
    for r in lo..m {
        if used[r] {
            continue;
        }
        used[r] = true;
        inj.push(r);
        let go_on = injections(k, m, rows, inj, used, visit);
        inj.pop();
        used[r] = false;
        if !go_on {
            return false;
        }
    }
    true
}

fn choose_columns(
    demand: &[(u64, usize)],
    buckets: &[Vec<u32>],
    which: usize,
    from: usize,
    cur: &mut Edge,
    out: &mut Vec<Edge>,
) {
    if which == demand.len() {
        let mut e = cur.clone();
        e.sort_unstable();
        out.push(e);
        return;
    }
    let (v, d) = demand[which];
    let bucket = &buckets[v as usize];
    let taken = cur.len() - demand[..which].iter().map(|x| x.1).sum::<usize>();
    if taken == d {
        choose_columns(demand, buckets, which + 1, 0, cur, out);
        return;
    }
    for i in from..bucket.len() {
        if bucket.len() - i < d - taken {
            break;
        }
        cur.push(bucket[i]);
        choose_columns(demand, buckets, which, i + 1, cur, out);
        cur.pop();
    }
}

struct Search<'a> {
    p: &'a Problem,
    chosen: Vec<usize>,
    chosen_bits: Vec<u64>,
    rowbits: RowBits,
    scratch: Scratch,
    best: usize,
    best_set: Option<Vec<usize>>,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
    finished: bool,
    symmetric: bool,
    pool: Vec<Vec<u64>>,
    seeded: bool,
}

impl<'a> Search<'a> {
    fn new(p: &'a Problem, lower: usize, opts: &SearchOptions, start: Instant, symmetric: bool) -> Self {
        Search {
            p,
            chosen: Vec::new(),
            chosen_bits: vec![0; p.words],
            rowbits: RowBits::with_capacity(p.m, 64),
            scratch: Scratch::new(),
            best: lower,
            best_set: None,
            nodes: 0,
            deadline: opts.time_budget.map(|b| start + b),
            timed_out: false,
            finished: false,
            symmetric,
            pool: Vec::new(),
            seeded: lower > 0,
        }
    }

    fn status(&self) -> Status {
        if self.timed_out {
            Status::Timeout
        } else {
            Status::Exact
        }
    }

    fn run(&mut self) {
        let cand = self.p.alive.clone();
        if !self.seeded {
            // The empty matrix always avoids.
            self.best_set = Some(Vec::new());
        }
        self.expand(0, cand);
        self.finished = !self.timed_out;
    }

    fn take_buffer(&mut self, depth: usize) -> Vec<u64> {
        if self.pool.len() <= depth {
            self.pool.resize_with(depth + 1, Vec::new);
        }
        std::mem::take(&mut self.pool[depth])
    }

    fn expand(&mut self, depth: usize, mut cand: Vec<u64>) {
        let w = self.p.words;
        loop {
            self.nodes += 1;
            if self.nodes.is_multiple_of(CLOCK_EVERY) {
                if let Some(d) = self.deadline {
                    if Instant::now() >= d {
                        self.timed_out = true;
                    }
                }
            }
            if self.timed_out {
                break;
            }
            let remaining: usize = cand.iter().map(|x| x.count_ones() as usize).sum();
            if remaining == 0 {
                if self.chosen.len() > self.best {
                    self.best = self.chosen.len();
                    self.best_set = Some(self.chosen.clone());
                }
                break;
            }
            if self.chosen.len() + remaining <= self.best {
                break;
            }
            if self.chosen.len() + self.clique_cover(&cand) <= self.best {
                break;
            }
            let v = first_bit(&cand);
            cand[v / 64] &= !(1 << (v % 64));
            if depth == 0 && self.symmetric && !is_prefix_column(&self.p.universe[v]) {
                continue;
            }
            if !self.lazy_ok(v) {
                continue;
            }
            let mut next = self.take_buffer(depth + 1);
            next.clear();
            next.extend(cand.iter().zip(self.p.adj(v)).map(|(c, a)| c & !a));
            self.include(v);
            self.propagate(v, &mut next);
            self.expand(depth + 1, next);
            self.exclude(v);
            if self.timed_out {
                break;
            }
        }
        debug_assert_eq!(cand.len(), w);
        if self.pool.len() > depth {
            self.pool[depth] = cand;
        }
    }

    fn include(&mut self, v: usize) {
        self.chosen.push(v);
        self.chosen_bits[v / 64] |= 1 << (v % 64);
        if !self.p.lazy.is_empty() {
            self.rowbits.push(&self.p.universe[v]);
        }
    }

    fn exclude(&mut self, v: usize) {
        self.chosen.pop();
        self.chosen_bits[v / 64] &= !(1 << (v % 64));
        if !self.p.lazy.is_empty() {
            self.rowbits.pop();
        }
    }

    /// Whether adding `v` keeps the lazily checked members absent.
    fn lazy_ok(&mut self, v: usize) -> bool {
        if self.p.lazy.is_empty() {
            return true;
        }
        self.rowbits.push(&self.p.universe[v]);
        let c = self.rowbits.ncols() - 1;
        let hit = self
            .p
            .lazy
            .iter()
            .any(|pat| pat.find(&self.rowbits, Some(c), &mut self.scratch).is_some());
        self.rowbits.pop();
        !hit
    }

    /// After `v` joins, any listed copy missing only one column loses it.
    fn propagate(&self, v: usize, cand: &mut [u64]) {
        for &id in &self.p.edges_of[v] {
            let mut missing = None;
            let mut count = 0;
            for &u in &self.p.edges[id as usize] {
                let u = u as usize;
                if self.chosen_bits[u / 64] >> (u % 64) & 1 == 0 {
                    count += 1;
                    missing = Some(u);
                }
            }
            if count == 1 {
                let u = missing.expect("counted");
                cand[u / 64] &= !(1 << (u % 64));
            }
        }
    }

    /// Greedy cover of the candidates by cliques of the conflict graph; an
    /// independent set meets each clique at most once.
    fn clique_cover(&mut self, cand: &[u64]) -> usize {
        let w = self.p.words;
        let mut rest = cand.to_vec();
        let mut p = vec![0u64; w];
        let mut count = 0;
        while let Some(v) = try_first_bit(&rest) {
            count += 1;
            rest[v / 64] &= !(1 << (v % 64));
            for i in 0..w {
                p[i] = rest[i] & self.p.adj(v)[i];
            }
            while let Some(u) = try_first_bit(&p) {
                rest[u / 64] &= !(1 << (u % 64));
                let au = self.p.adj(u);
                for i in 0..w {
                    p[i] &= au[i];
                }
            }
        }
        count
    }
}

fn try_first_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, &x)| x != 0)
        .map(|(i, x)| i * 64 + x.trailing_zeros() as usize)
}

fn first_bit(bits: &[u64]) -> usize {
    try_first_bit(bits).expect("nonempty")
}
