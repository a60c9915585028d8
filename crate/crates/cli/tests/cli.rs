use std::path::Path;
use std::process::{Command, Output};

use lagrangian_cli::{build_matrix, from_sms, to_sms, Kind};
use proptest::prelude::*;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lagrangian"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn build_m2_bytes() {
    let o = run(&["build", "M", "--m", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 2 M\n1 1 1\n1 2 1\n0 0 0\n");
}

#[test]
fn build_l3_and_b4() {
    let l3 = stdout(&run(&["build", "L", "--k", "3"]));
    assert!(l3.starts_with("4 6 M\n"));
    assert_eq!(l3.lines().count(), 1 + 12 + 1);
    let b4 = stdout(&run(&["build", "B", "--n", "4"]));
    assert!(b4.starts_with("28 70 M\n"));
}

#[test]
fn build_to_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.sms");
    let o = run(&["build", "A", "--k", "4", "--level", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let on_disk = std::fs::read_to_string(&out).unwrap();
    assert_eq!(on_disk, stdout(&run(&["build", "A", "--k", "4", "--level", "1"])));
    let m = from_sms(&on_disk).unwrap();
    assert_eq!(m, build_matrix(Kind::A { k: 4, level: 1 }).unwrap());
}

#[test]
fn csv_format() {
    let o = run(&["build", "M", "--m", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "1,1\n");
}

#[test]
fn invalid_parameters_fail() {
    for args in [
        &["build", "M", "--m", "3"][..],
        &["build", "L", "--k", "1"],
        &["build", "B"],
        &["verify", "--n", "3"],
        &["verify", "--n", "9"],
        &["rank-table", "--n", "6", "--chars", "4"],
    ] {
        let o = run(args);
        assert!(!o.status.success(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_n4_passes() {
    let o = run(&["verify", "--n", "4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["parity"], "even");
    for ch in ["0", "3", "5", "7"] {
        assert_eq!(v["ranks"][ch]["direct"], 28);
    }
    assert_eq!(v["zero_columns"], 16);
    assert!(v["discrepancies"].as_array().unwrap().is_empty());
}

#[test]
fn verify_n6_matches_census() {
    let o = run(&["verify", "--n", "6", "--chars", "0,2,3,5"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["paper_census_match"], true);
    let direct: Vec<u64> = ["0", "2", "3", "5"]
        .iter()
        .map(|c| v["ranks"][c]["direct"].as_u64().unwrap())
        .collect();
    assert_eq!(direct, [495, 430, 494, 495]);
    assert_eq!(v["lemma_Lk_eq_Mm"].as_array().unwrap().len(), 3);
}

#[test]
fn rank_table_rows() {
    let o = run(&["rank-table", "--n", "6", "--chars", "0,2,3,5"]);
    assert_eq!(
        stdout(&o),
        "matrix,0,2,3,5\nB,495,430,494,495\nL_2,1,1,1,1\nL_3,4,3,4,4\nL_4,15,10,14,15\n"
    );
    let o = run(&["rank-table", "--n", "5", "--chars", "0,2,3"]);
    let text = stdout(&o);
    assert!(text.contains("\nL_3,4,3,4\n"), "{text}");
    // Published n=5 ranks of B disagree with the computed ones.
    assert!(String::from_utf8_lossy(&o.stderr).contains("published 27"));
}

#[test]
fn check_point_cases() {
    let dir = tempfile::tempdir().unwrap();
    let lagr = write(dir.path(), "l.txt", "# e_{12345}\n1 2 3 4 5 1\n");
    let o = run(&["check-point", "--n", "5", "--file", &lagr]);
    assert_eq!(stdout(&o), "IN KERNEL\n");
    assert!(o.status.success());

    let rel = write(dir.path(), "r.txt", "1 4 1\n2 3 -1\n");
    let o = run(&["check-point", "--n", "2", "--file", &rel, "--convention", "unsigned"]);
    assert!(o.status.success());

    let single = write(dir.path(), "s.txt", "1 2 7 8 1\n");
    let o = run(&["check-point", "--n", "4", "--file", &single]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("violation at (1,8): 1"), "{text}");
    assert!(text.contains("violation at (2,7): 1"), "{text}");

    let bad = write(dir.path(), "b.txt", "1 2 7 8 1\n1 2 9 8 1\n");
    let o = run(&["check-point", "--n", "4", "--file", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn sms_round_trip_named_matrices() {
    for kind in [
        Kind::B { n: 5 },
        Kind::L { k: 5 },
        Kind::M { m: 8 },
        Kind::A { k: 5, level: 0 },
    ] {
        let m = build_matrix(kind).unwrap();
        assert_eq!(from_sms(&to_sms(&m)).unwrap(), m, "{kind:?}");
    }
}

proptest! {
    #[test]
    fn sms_round_trip(rows in (1usize..10, 1usize..20).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(0u8..2, c), r)
    })) {
        let m = lagrangian_core::linalg::BinaryMatrix::from_rows(&rows).unwrap();
        let text = to_sms(&m);
        prop_assert_eq!(from_sms(&text).unwrap(), m.clone());
        prop_assert_eq!(text.lines().count(), m.nnz() + 2);
    }
}
