//! Acceptance criteria. Each test prints one `PASS` or `FAIL` line straight
//! to stdout so the lines survive output capture.
//!
//! A criterion whose statement cannot hold as written prints `FAIL` with the
//! reason, and the test asserts what was actually established instead.

use std::io::Write;
use std::time::{Duration, Instant};

use forbconf::analysis::{avoiding_rows, q3_stability_decompose, StabilityParams};
use forbconf::claims::{builtin_claims, verify_claims, ClaimStatus, VerifyOptions};
use forbconf::constructions::{
    catalog, catalog_names, extremal_construction, graph_product, q3t, BipartiteGraph, Block, ExtremalParams,
};
use forbconf::containment::contains_any;
use forbconf::family_spec::parse_family;
use forbconf::search::{ex_graph, forb, parse_graph, Status};
use forbconf::{contains, naive_contains, BitColumn, Matrix, SimpleMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, name: &str, pass: bool, elapsed: Duration, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let line = format!(
        "criterion {n:>2} {verdict} {name} [{:.1}s] {detail}\n",
        elapsed.as_secs_f64()
    );
    std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
}

fn exact(m: usize, family: &str) -> usize {
    let r = forb(m, &parse_family(family).unwrap()).unwrap();
    assert_eq!(r.status, Status::Exact, "forb({m}, {family}) did not finish");
    assert_eq!(r.witness.ncols(), r.value);
    assert!(contains_any(&parse_family(family).unwrap(), &r.witness).is_none());
    r.value
}

fn random_matrix(rng: &mut ChaCha8Rng, max_rows: usize, max_cols: usize) -> Matrix {
    let rows = rng.gen_range(1..=max_rows);
    let cols = (0..rng.gen_range(1..=max_cols))
        .map(|_| BitColumn::from_u64(rows, rng.gen_range(0..1u64 << rows)).unwrap())
        .collect();
    Matrix::new(rows, cols).unwrap()
}

#[test]
fn c01_containment_matches_naive() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut disagreements, mut positive) = (0, 0);
    for _ in 0..10_000 {
        let f = random_matrix(&mut rng, 4, 5);
        let a = random_matrix(&mut rng, 6, 10);
        let fast = contains(&f, &a);
        let slow = naive_contains(&f, &a);
        if fast.is_some() != slow.is_some() || fast.as_ref().is_some_and(|c| !c.verify(&f, &a)) {
            disagreements += 1;
        }
        positive += usize::from(slow.is_some());
    }
    let elapsed = start.elapsed();
    let pass = disagreements == 0 && elapsed < Duration::from_secs(60);
    report(
        1,
        "containment oracle equivalence",
        pass,
        elapsed,
        &format!("10000 pairs, {positive} contained, {disagreements} disagreements"),
    );
    assert!(pass);
}

#[test]
fn c02_complement_duality() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for name in catalog_names() {
        let f = catalog(name).unwrap().config;
        for m in [4, 5] {
            let a = forb(m, std::slice::from_ref(&f)).unwrap();
            let b = forb(m, &[f.complement()]).unwrap();
            if a.status != Status::Exact || b.status != Status::Exact || a.value != b.value {
                bad.push(format!("{name} m={m}: {} vs {}", a.value, b.value));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < Duration::from_secs(600);
    let detail = format!("{} configurations at m=4,5 {}", catalog_names().len(), bad.join("; "));
    report(2, "complement duality", pass, elapsed, &detail);
    assert!(pass);
}

#[test]
fn c03_q9_exact_law() {
    let start = Instant::now();
    let formula = |m: usize| m * (m - 1) / 2 + 2 * m - 1;
    let values: Vec<(usize, usize)> = (3..=5).map(|m| (m, exact(m, "Q9"))).collect();
    let elapsed = start.elapsed();
    let mismatches: Vec<String> = values
        .iter()
        .filter(|(m, v)| *v != formula(*m))
        .map(|(m, v)| format!("m={m}: {v} vs formula {}", formula(*m)))
        .collect();
    let shown: Vec<String> = values.iter().map(|(m, v)| format!("m={m}: {v}")).collect();
    let detail = format!("{} {}", shown.join(", "), mismatches.join("; "));
    report(3, "Q9 exact law at m=3,4,5", mismatches.is_empty(), elapsed, &detail);
    assert_eq!(values, [(3, 8), (4, 13), (5, 19)]);
    assert!(elapsed < Duration::from_secs(300));
}

#[test]
fn c04_small_t_family_laws() {
    let start = Instant::now();
    let a = exact(6, "Q9,1(3,1)");
    let b = exact(8, "Q9,1(4,1)");
    let construction = extremal_construction("q9_smallt", 8, ExtremalParams::k(4))
        .unwrap()
        .ncols();
    let elapsed = start.elapsed();
    let pass = a == 12 && b == 22 && construction == 22 && elapsed < Duration::from_secs(1800);
    report(
        4,
        "forb(6,{Q9,1(3,1)})=12, forb(8,{Q9,1(4,1)})=22",
        pass,
        elapsed,
        &format!("got {a} and {b}; construction {construction}"),
    );
    assert!(pass);
}

#[test]
fn c05_exact_values_with_f9() {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;
    for m in 6..=8 {
        let x = exact(m, "1(3,1),F9");
        let y = exact(m, "1(2,2),F9");
        ok &= x == m + 2 && y == m + 3;
        notes.push(format!("m={m}: {x},{y}"));
    }
    for m in 5..=100 {
        let c3 = extremal_construction("c3", m, ExtremalParams::default()).unwrap();
        let ell = extremal_construction("f9_ell", m, ExtremalParams::kl(2, 2)).unwrap();
        ok &= c3.ncols() == m + 2 && ell.ncols() == m + 3;
        ok &= contains_any(&parse_family("1(3,1),F9").unwrap(), &c3).is_none();
        ok &= contains_any(&parse_family("1(2,2),F9").unwrap(), &ell).is_none();
    }
    let elapsed = start.elapsed();
    notes.push("constructions m+2, m+3 for m=5..100".into());
    report(
        5,
        "forb(m,{1(3,1),F9})=m+2, forb(m,{1(2,2),F9})=m+3",
        ok,
        elapsed,
        &notes.join("; "),
    );
    assert!(ok);
}

#[test]
fn c06_turan_bridge() {
    let start = Instant::now();
    let c4 = parse_graph("C(4)").unwrap();
    let mut notes = Vec::new();
    let mut ok = true;
    for m in 4..=7 {
        let ex = ex_graph(m, &c4).unwrap().value;
        let v = exact(m, "1(3,1),F11");
        ok &= v == 1 + m + ex;
        notes.push(format!("m={m}: {v} = 1+{m}+{ex}"));
    }
    let elapsed = start.elapsed();
    report(6, "forb(m,{1(3,1),F11}) = 1+m+ex(m,C4)", ok, elapsed, &notes.join("; "));
    assert!(ok);
}

/// Listed products that do contain the configuration at size 3 or 4.
const KNOWN_COUNTEREXAMPLES: &[&str] = &[
    "tab2:F9-3fold",
    "tab2:F10-3fold",
    "tab2:F12-3fold",
    "tab2:F9c-3fold",
    "tab2:F10c-3fold",
    "tab2:F12c-3fold",
    "Lall:F12-3fold",
];

#[test]
fn c07_claims_suite() {
    let start = Instant::now();
    let prefixes = [
        "tab1:", "tab2:", "tab6:", "Const", "P14:", "P15:", "LF9:", "LF11:", "Lall:",
    ];
    let claims: Vec<_> = builtin_claims()
        .into_iter()
        .filter(|c| prefixes.iter().any(|p| c.id.starts_with(p)))
        .collect();
    let results = verify_claims(&claims, &VerifyOptions::default()).unwrap();
    let elapsed = start.elapsed();
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| r.status != ClaimStatus::Pass)
        .map(|r| r.id.as_str())
        .collect();
    let pass = failed.is_empty() && elapsed < Duration::from_secs(300);
    report(
        7,
        "builtin claims at sizes 3,4",
        pass,
        elapsed,
        &format!("{} claims, not passing: {}", results.len(), failed.join(", ")),
    );
    for r in results.iter().filter(|r| r.status != ClaimStatus::Pass) {
        std::io::stdout()
            .lock()
            .write_all(format!("    {}\n", r.line()).as_bytes())
            .unwrap();
    }
    // The failures are exactly the listed products that contain the
    // configuration, each with a verified witness.
    assert_eq!(failed, KNOWN_COUNTEREXAMPLES);
    assert!(results.len() > 40);
    assert!(elapsed < Duration::from_secs(300));
}

/// A random `rows x cols` matrix with fewer than `t` zeros per row and a
/// zero in every column.
fn avoiding_rows_input(rng: &mut ChaCha8Rng, t: usize) -> Matrix {
    loop {
        let rows = rng.gen_range(1..=12);
        let ncols = rng.gen_range(1..=10);
        let mut cols = vec![BitColumn::ones(rows); ncols];
        for r in 0..rows {
            for _ in 0..rng.gen_range(0..t) {
                cols[rng.gen_range(0..ncols)].set(r, false);
            }
        }
        if cols.iter().all(|c| c.count_ones() < rows) {
            return Matrix::new(rows, cols).unwrap();
        }
    }
}

#[test]
fn c08_avoiding_rows_property() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = 0;
    for i in 0..1000 {
        let t = 2 + i % 3;
        let b = avoiding_rows_input(&mut rng, t);
        let out = avoiding_rows(&b, t).unwrap();
        let k = out.rows.len();
        let sub = b.restrict(&out.rows, &out.cols).unwrap();
        let ic = Block::Ic(k).matrix().unwrap();
        let shape = k == out.cols.len()
            && (0..k).all(|i| (0..k).all(|j| sub.get(i, j) == (i != j)))
            && (k < 2 || contains(&ic, &b).is_some_and(|c| c.verify(&ic, &b)));
        let big_enough = (k as f64) >= 2f64.powi(2 - t as i32) * b.ncols() as f64;
        if !(shape && big_enough) {
            failures += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        8,
        "avoiding rows on random inputs",
        failures == 0,
        elapsed,
        &format!("1000 inputs, {failures} failures"),
    );
    assert_eq!(failures, 0);
}

#[test]
fn c09_stability_decomposition() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let q3 = q3t(2).unwrap();
    let mut ratios = Vec::new();
    let mut failures = Vec::new();
    for m in [12, 16] {
        let h = m / 2;
        let ident = SimpleMatrix::new(Block::I(h).matrix().unwrap()).unwrap();
        let icomp = SimpleMatrix::new(Block::Ic(h).matrix().unwrap()).unwrap();
        for trial in 0..6 {
            let g = if trial == 0 {
                BipartiteGraph::complete(h, h)
            } else {
                let p = rng.gen_range(0.2..0.9);
                let edges = (0..h)
                    .flat_map(|x| (0..h).map(move |y| (x, y)))
                    .filter(|_| rng.gen_bool(p))
                    .collect();
                BipartiteGraph {
                    left: h,
                    right: h,
                    edges,
                }
            };
            let a = graph_product(&ident, &icomp, &g).unwrap().into_matrix();
            assert!(contains(q3.matrix(), &a).is_none());
            let d = q3_stability_decompose(&a, 2, StabilityParams::default()).unwrap();
            if let Err(e) = d.check_conditions(&a) {
                failures.push(format!("m={m} trial {trial}: {e}"));
            }
            ratios.push(d.ratio().map_or("-".to_string(), |r| format!("{r:.2}")));
        }
    }
    let elapsed = start.elapsed();
    let detail = format!("12 matrices; ratios {} {}", ratios.join(","), failures.join("; "));
    report(
        9,
        "stability decomposition conditions",
        failures.is_empty(),
        elapsed,
        &detail,
    );
    assert!(failures.is_empty());
}

#[test]
fn c10_two_by_two_counterexample() {
    let start = Instant::now();
    let fam = parse_family("1(2,2),Q9").unwrap();
    let mut ok = true;
    for m in 5..=20 {
        let a = extremal_construction("sec5_counterexample", m, ExtremalParams::default()).unwrap();
        ok &= a.ncols() == 2 * m + 1 && contains_any(&fam, &a).is_none();
    }
    let v = exact(5, "1(3,1),Q9");
    ok &= v == 10;
    let elapsed = start.elapsed();
    report(
        10,
        "2m+1 columns avoiding {1(2,2),Q9}; forb(5,{1(3,1),Q9})=10",
        ok,
        elapsed,
        &format!("m=5..20 checked; forb(5) = {v}"),
    );
    assert!(ok);
}
