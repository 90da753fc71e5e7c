use std::process::Command;

use sym2_cli::report::{AnalysisReport, GroupoidReport, TableReport};

fn sym2(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sym2")).args(args).output().expect("run sym2");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn analyze_dihedral_8_json_round_trips() {
    let (code, out, _) = sym2(&["analyze", "dihedral:8", "--json", "--method", "all"]);
    assert_eq!(code, 3);
    let r: AnalysisReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.schema, 1);
    assert_eq!(r.split, Some(false));
    assert_eq!(r.verdicts.len(), 3);
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", out);
    assert!(out.contains("[φ(1,3)]"));
    let (_, again, _) = sym2(&["analyze", "dihedral:8", "--json", "--method", "all"]);
    assert_eq!(out, again);
}

#[test]
fn trivial_and_symmetric_six() {
    let (code, out, _) = sym2(&["analyze", "cyclic:1", "--json"]);
    assert_eq!(code, 0);
    let r: AnalysisReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.invariants.equivalent_to.as_deref(), Some("1"));
    let (code, out, _) = sym2(&["analyze", "symmetric:6", "--json"]);
    assert_eq!(code, 0);
    let r: AnalysisReport = serde_json::from_str(&out).unwrap();
    assert_eq!((r.invariants.pi0.as_str(), r.invariants.pi1.as_str()), ("Z2", "1"));
    assert!(r.timing_ms.is_none());
}

#[test]
fn errors() {
    let (code, _, err) = sym2(&["analyze", "product(cyclic:2,, cyclic:3)"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 17"), "{err}");
    let (code, _, err) = sym2(&["analyze", "symmetric:4", "--cap-order", "10"]);
    assert_eq!(code, 2);
    assert!(err.contains("exceeds cap: 24 > 10"), "{err}");
    assert_eq!(sym2(&["frobnicate"]).0, 2);
}

#[test]
fn groupoids() {
    assert_eq!(sym2(&["groupoid", "1×dihedral:4"]).0, 0);
    assert_eq!(sym2(&["groupoid", "2×dihedral:8"]).0, 3);
    let (code, out, _) = sym2(&["groupoid", r#"[{"n": 2, "group": "dihedral:4"}, {"n": 1, "group": "dihedral:6"}]"#, "--json"]);
    assert_eq!(code, 0);
    let r: GroupoidReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.components.len(), 2);
    assert_eq!(r.assembled.unwrap().class_trivial, Some(true));
    let (_, out, _) = sym2(&["groupoid", "1x symmetric:0..3", "--json"]);
    let r: GroupoidReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.truncations, vec!["symmetric:0..3".to_string()]);
}

#[test]
fn tables() {
    let (code, out, _) = sym2(&["table", "cyclic", "1..10", "--json"]);
    assert_eq!(code, 0);
    let r: TableReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.rows.len(), 10);
    assert!(r.rows.iter().all(|row| row.split == Some(true)));
    let (_, out, _) = sym2(&["table", "dihedral", "4..8", "even", "--json"]);
    let r: TableReport = serde_json::from_str(&out).unwrap();
    let splits: Vec<Option<bool>> = r.rows.iter().map(|row| row.split).collect();
    assert_eq!(splits, vec![Some(true), Some(true), Some(false)]);
}

#[test]
fn table_file_input() {
    let g = sym2_core::group::dihedral(4).unwrap();
    let path = std::env::temp_dir().join(format!("sym2-d4-{}.json", std::process::id()));
    std::fs::write(&path, g.to_json().unwrap()).unwrap();
    let arg = format!("table:@{}", path.display());
    let (code, out, _) = sym2(&["analyze", &arg, "--json"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    let r: AnalysisReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.group.out, 2);
}

#[test]
fn check_suites() {
    let (code, out, _) = sym2(&["check", "--seed", "7", "--trials", "10"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
}
