//! The shipped generator files load, preserve the form and re-certify to
//! their claimed orders.

use std::path::PathBuf;

use oddfact::atlas::{load_group, Provenance};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

#[test]
fn every_file_recertifies() {
    let mut files: Vec<PathBuf> = std::fs::read_dir(data_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "gens"))
        .collect();
    files.sort();
    assert!(files.len() >= 30, "only {} data files", files.len());
    for path in files {
        let g = load_group(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let claimed = g.claimed_order.clone().expect("claimed order");
        let b = g.certify(7).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(b.order(), claimed, "{}", path.display());
        if let Some(space) = &g.space {
            assert!(g.gens.iter().all(|m| space.is_isometry(m)), "{}", path.display());
        }
        if g.name.contains('#') || g.name.contains("SL2(13)") || g.name.contains("L3(4)") {
            assert!(matches!(g.provenance, Provenance::Discovered(_)), "{}", path.display());
        }
    }
}
