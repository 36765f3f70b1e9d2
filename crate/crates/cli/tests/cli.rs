use std::process::{Command, Output};

fn forbconf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forbconf"))
        .args(args)
        .env_remove("FORBCONF_TIME_BUDGET")
        .output()
        .expect("run forbconf")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn contained_with_certificate() {
    let o = forbconf(&["contain", "F9", "b01 x I(3)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("CONTAINED"), "{out}");
    assert!(out.contains("row_map:") && out.contains("col_map:"), "{out}");
}

#[test]
fn avoided_exits_one() {
    let o = forbconf(&["contain", "1(4,1)", "I(3) x I(3) x I(3)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("AVOIDED"));
}

#[test]
fn product_of_two_towers_contains_f14() {
    let o = forbconf(&["contain", "F14", "T(4) x T(4)"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn forb_csv() {
    let o = forbconf(&["forb", "--family", "Q9", "--m", "4..6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let values: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(values, ["13", "19", "26"]);
    assert!(out.lines().skip(1).all(|l| l.contains(",exact,")), "{out}");
}

#[test]
fn forb_markdown_and_single_m() {
    let o = forbconf(&["forb", "--family", "1(1,1)", "--m", "5", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("| 5 | 1 |"));
}

#[test]
fn forb_restricted_sums() {
    // Every column with two 1's contains 1(2,1).
    let o = forbconf(&["forb", "--family", "1(2,1)", "--m", "4", "--sums", "=2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("4,0,"), "{}", stdout(&o));
}

#[test]
fn goldens_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("forb.csv");
    let g = g.to_str().unwrap();
    let o = forbconf(&[
        "forb",
        "--family",
        "Q9",
        "--m",
        "4..5",
        "--goldens",
        g,
        "--regenerate-goldens",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = forbconf(&["forb", "--family", "Q9", "--m", "4..5", "--goldens", g]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches(": ok").count(), 2);

    // A tampered value is reported.
    let text = std::fs::read_to_string(g).unwrap().replace(",13,", ",14,");
    std::fs::write(g, text).unwrap();
    let o = forbconf(&["forb", "--family", "Q9", "--m", "4", "--goldens", g]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn regenerate_needs_goldens() {
    let o = forbconf(&["forb", "--family", "Q9", "--m", "4", "--regenerate-goldens"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_selected_claims() {
    let o = forbconf(&["verify", "--id", "P14", "--id", "tab1:Q9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(
        out.lines().any(|l| l.starts_with("tab1:Q9") && l.contains(" PASS ")),
        "{out}"
    );
    assert!(out.ends_with("4 claims: 4 passed, 0 failed, 0 skipped\n"), "{out}");
}

#[test]
fn verify_reports_failures() {
    let o = forbconf(&["verify", "--id", "tab2:F9-3fold"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_claims_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("claims.txt");
    std::fs::write(&p, "avoid a 141 : IxIxI\ncontain b F14 : TxT\n").unwrap();
    let o = forbconf(&["verify", "--claims", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn construct_named_and_spec() {
    let o = forbconf(&["construct", "c3", "--m", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = forbconf(&["construct", "I(3)xIc(3)"]);
    assert!(stdout(&o).contains("rows=6 columns=9"), "{}", stdout(&o));
    let o = forbconf(&["construct", "--list"]);
    assert!(stdout(&o).contains("c3"));
}

#[test]
fn turan_numbers() {
    let o = forbconf(&["ex", "C(4)", "--m", "4..5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains('4') && out.contains('6'), "{out}");
}

#[test]
fn classify_and_decompose() {
    let o = forbconf(&["classify", "Ic(4)", "--t", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("type2"));
    let o = forbconf(&["classify", "I(2)xI(2)", "--t", "2"]);
    assert_eq!(o.status.code(), Some(1));

    let o = forbconf(&["decompose", "induction", "I(4)", "--row", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = forbconf(&["decompose", "stability", "I(3)xIc(3)", "--t", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(forbconf(&["forb", "--family", "Q9"]).status.code(), Some(2));
    assert_eq!(
        forbconf(&["forb", "--family", "nonsense(", "--m", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        forbconf(&["forb", "--family", "Q9", "--m", "5..3"]).status.code(),
        Some(2)
    );
    assert_eq!(forbconf(&["contain", "F9"]).status.code(), Some(2));
}

#[test]
fn tiny_budget_gives_lower_bound() {
    let o = forbconf(&["--budget", "0", "forb", "--family", "Q9", "--m", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(!out.contains(",exact,"), "{out}");
}
