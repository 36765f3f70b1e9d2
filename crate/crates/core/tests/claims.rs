use std::time::Duration;

use forbconf::claims::{builtin_claims, table3, verify_claims, ClaimStatus, Table3Options, VerifyOptions};

fn check(prefix: &str) -> Vec<forbconf::claims::ClaimResult> {
    let claims: Vec<_> = builtin_claims()
        .into_iter()
        .filter(|c| c.id.starts_with(prefix))
        .collect();
    assert!(!claims.is_empty(), "no claim {prefix}");
    verify_claims(&claims, &VerifyOptions::default()).unwrap()
}

#[test]
fn exact_formulas_hold() {
    for r in check("exact:").into_iter().chain(check("bridge:")) {
        assert_eq!(r.status, ClaimStatus::Pass, "{}", r.line());
    }
}

#[test]
fn large_m_claims() {
    let one = check("tab3:1F9").remove(0);
    assert_eq!(one.status, ClaimStatus::Pass, "{}", one.line());
    assert!(
        one.detail.contains("stated for large m, judged at m=8"),
        "{}",
        one.detail
    );

    let two = check("tab3:122F9").remove(0);
    assert_eq!(two.status, ClaimStatus::Pass, "{}", two.line());

    // forb(m, {1(4,1), F9}) stays at 14 for m <= 8, short of m+5.
    let four = check("tab3:141F9").remove(0);
    assert_eq!(four.status, ClaimStatus::Skipped, "{}", four.line());
    assert!(four.detail.contains("m=7: 14"), "{}", four.detail);
}

#[test]
fn selected_claims_pass() {
    for id in ["Lall:F13-2fold", "P15:IxIc", "tab1:Q9", "ConstF9:b01xI3"] {
        let r = check(id).remove(0);
        assert_eq!(r.status, ClaimStatus::Pass, "{}", r.line());
    }
}

#[test]
fn results_table() {
    let opts = Table3Options {
        ms: 4..=4,
        time_budget: Some(Duration::from_secs(5)),
        ..Table3Options::default()
    };
    let t = table3(&opts).unwrap();
    let lines: Vec<&str> = t.lines().collect();
    assert_eq!(lines.len(), 2 + 100);
    let row = |pair: &str| *lines.iter().find(|l| l.starts_with(pair)).unwrap();
    assert!(row("| (Q8, F14) |").ends_with("| OPEN |"));
    assert!(row("| (131, F9) |").contains("| m+2 | 8 | c3: 6 columns at m=4"));
    assert!(row("| (Q3, F11) |").contains("52 columns at m=26"));
    assert!(row("| (122, F11) |").contains("Θ(m^3/2)"));
}
