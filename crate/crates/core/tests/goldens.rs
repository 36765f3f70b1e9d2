use std::path::PathBuf;

use forbconf::contains_any;
use forbconf::family_spec::parse_family;
use forbconf::search::goldens::{read_goldens, read_witness};
use forbconf::search::{forb, Status};

fn golden_csv() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../goldens/forb.csv")
}

#[test]
fn stored_witnesses_are_valid() {
    let path = golden_csv();
    let rows = read_goldens(&path).unwrap();
    assert!(rows.len() >= 20);
    for g in &rows {
        let family = parse_family(&g.family_spec).unwrap();
        let w = read_witness(&path, g).unwrap();
        assert_eq!(w.rows(), g.m, "{}", g.family_spec);
        assert!(w.is_simple(), "{} m={}", g.family_spec, g.m);
        assert_eq!(w.ncols(), g.value, "{} m={}", g.family_spec, g.m);
        assert!(contains_any(&family, &w).is_none(), "{} m={}", g.family_spec, g.m);
    }
}

#[test]
fn small_goldens_are_reproduced() {
    let path = golden_csv();
    for g in read_goldens(&path).unwrap().iter().filter(|g| g.m <= 6) {
        let r = forb(g.m, &parse_family(&g.family_spec).unwrap()).unwrap();
        assert_eq!(r.status, Status::Exact);
        assert_eq!(r.status.to_string(), g.status);
        assert_eq!(r.value, g.value, "{} m={}", g.family_spec, g.m);
    }
}
