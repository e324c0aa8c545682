use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn oddfact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddfact"))
        .args(args)
        .env_remove("ODDFACT_CACHE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report_ids(o: &Output) -> Vec<(String, String)> {
    let doc: Value = serde_json::from_str(&stdout(o)).unwrap();
    assert_eq!(doc["schemaVersion"], "oddfact-report/1");
    doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["caseId"].as_str().unwrap().to_string(),
                r["verdict"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

#[test]
fn orders_command() {
    let cases = [
        (&["orders", "G2", "3"][..], "4245696"),
        (&["orders", "OmegaOdd", "3", "3"], "4585351680"),
        (&["orders", "SL", "1", "9"], "1"),
    ];
    for (args, want) in cases {
        let o = oddfact(args);
        assert!(o.status.success());
        assert_eq!(stdout(&o).lines().next(), Some(want));
    }
    let o = oddfact(&["orders", "G2", "3"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("= 3^6 * (3^6-1) * (3^2-1)"));
    assert_eq!(oddfact(&["orders", "E8", "3"]).status.code(), Some(2));
}

#[test]
fn verify_row2_has_five_holding_cases() {
    let o = oddfact(&["verify", "--rows", "2", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<_> = report_ids(&o)
        .into_iter()
        .filter(|(id, _)| id.starts_with("row2/"))
        .collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|(_, v)| v == "holds"));
}

#[test]
fn verify_row6_is_skipped_under_the_cap() {
    let o = oddfact(&["verify", "--rows", "6", "--q", "3", "--mode", "constructive"]);
    assert_eq!(o.status.code(), Some(0));
    let ids = report_ids(&o);
    assert_eq!(ids.len(), 1);
    assert!(ids[0].1.starts_with("skipped("));
}

#[test]
fn verify_row1_m3_sub_cases() {
    let o = oddfact(&[
        "verify",
        "--rows",
        "1",
        "--q",
        "3",
        "--m",
        "3",
        "--mode",
        "constructive",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut ab: Vec<(u64, u64, String)> = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["params"]["a"].as_u64().unwrap(),
                r["params"]["b"].as_u64().unwrap(),
                r["verdict"].as_str().unwrap().into(),
            )
        })
        .collect();
    ab.sort();
    assert_eq!(ab, vec![(1, 3, "fails".into()), (3, 1, "holds".into())]);
}

#[test]
fn verify_rejects_unknown_rows() {
    assert_eq!(oddfact(&["verify", "--rows", "12"]).status.code(), Some(2));
}

#[test]
fn discover_exit_codes_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(oddfact(&["discover", "11", "--hints", "11"]).status.code(), Some(2));
    let miss = dir.path().join("miss.gens");
    let o = oddfact(&[
        "discover",
        "7",
        "--hints",
        "2",
        "--attempts",
        "5",
        "--out",
        miss.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!miss.exists());
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("found{i}.gens"))).collect();
    for p in &paths {
        let o = oddfact(&["discover", "13", "--hints", "13", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let fp: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(fp["order"], "13");
    }
    let (a, b) = (fs::read(&paths[0]).unwrap(), fs::read(&paths[1]).unwrap());
    assert_eq!(a, b);
    assert!(String::from_utf8(a)
        .unwrap()
        .contains("PROVENANCE discovered seed=20240601"));
}

#[test]
fn orbit_of_a_singular_vector() {
    // Ω7(3) is transitive on the q^6 - 1 nonzero singular vectors.
    let o = oddfact(&["orbit", "--group", "omega", "--point", "1,0,0,0,0,0,0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "728");
    let o = oddfact(&["orbit", "--group", "omega", "--point", "1,0,0,0,0,0,0", "--lines"]);
    assert_eq!(stdout(&o).trim(), "364");
}

#[test]
fn bsgs_cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let check = || oddfact(&["bsgs-cache", "check", "--cache-dir", d]);
    assert_eq!(check().status.code(), Some(1));
    assert!(oddfact(&["bsgs-cache", "build", "--cache-dir", d]).status.success());
    let o = check();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Omega7(3): hit, order 4585351680"));
    // The environment variable takes precedence over the flag.
    let env = Command::new(env!("CARGO_BIN_EXE_oddfact"))
        .args(["bsgs-cache", "check", "--cache-dir", "/nonexistent"])
        .env("ODDFACT_CACHE", d)
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(0));
    assert!(oddfact(&["bsgs-cache", "clear", "--cache-dir", d]).status.success());
    assert_eq!(check().status.code(), Some(1));
    assert_eq!(oddfact(&["bsgs-cache", "clear"]).status.code(), Some(2));
}

#[test]
fn cache_leaves_reports_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let plain = oddfact(&["verify", "--rows", "3,4", "--q", "3"]);
    let cold = oddfact(&["verify", "--rows", "3,4", "--q", "3", "--cache-dir", d]);
    let warm = oddfact(&["verify", "--rows", "3,4", "--q", "3", "--cache-dir", d]);
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(plain.stdout, warm.stdout);
}

#[test]
fn export_reproduces_the_shipped_data() {
    let dir = tempfile::tempdir().unwrap();
    assert!(oddfact(&["export", "--out", dir.path().to_str().unwrap()])
        .status
        .success());
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let mut n = 0;
    for entry in fs::read_dir(dir.path()).unwrap() {
        let p = entry.unwrap().path();
        let name = p.file_name().unwrap();
        assert_eq!(fs::read(&p).unwrap(), fs::read(shipped.join(name)).unwrap(), "{name:?}");
        n += 1;
    }
    assert_eq!(n, fs::read_dir(&shipped).unwrap().count());
}
