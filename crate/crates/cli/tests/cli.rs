use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const F1: &str = r#"{"quiver": {"vertices": 2, "arrows": [[1, 2]]}, "e_vertices": [2], "seed": 3}"#;

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn recoll(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recoll")).args(args).output().unwrap()
}

fn verify(file: &Path, report: &Path) -> Output {
    recoll(&["verify", file.to_str().unwrap(), "--report", report.to_str().unwrap(), "--quiet"])
}

fn report_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn f1_passes_with_all_diagrams() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f1.json", F1);
    let rp = dir.path().join("r.json");
    let out = verify(&f, &rp);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let r = report_json(&rp);
    assert_eq!(r["summary"]["fail"], 0);
    assert_eq!(r["summary"]["inconclusive"], 0);
    let diagrams: Vec<&str> = r["cells"].as_array().unwrap().iter().map(|c| c["diagram"].as_str().unwrap()).collect();
    for d in ["original", "upper", "lower"] {
        assert!(diagrams.contains(&d), "{d}");
    }
    assert_eq!(r["scenario"]["p"], 32003);
}

#[test]
fn text_summary_is_printed_without_quiet() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f1.json", F1);
    let out = recoll(&["verify", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().last().unwrap().starts_with("PASS"));
    assert!(text.contains("original:"));
}

#[test]
fn whole_algebra_idempotent_is_invalid() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "all.json", r#"{"quiver": {"vertices": 2, "arrows": [[1, 2]]}, "e_vertices": [1, 2]}"#);
    let out = verify(&f, &dir.path().join("r.json"));
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("whole algebra"));
}

#[test]
fn other_invalid_scenarios() {
    let dir = TempDir::new().unwrap();
    for (name, body) in [
        ("cyclic", r#"{"quiver": {"vertices": 2, "arrows": [[1, 2], [2, 1]]}, "e_vertices": [2]}"#),
        ("range", r#"{"quiver": {"vertices": 2, "arrows": [[1, 3]]}, "e_vertices": [2]}"#),
        ("prime", r#"{"p": 32004, "quiver": {"vertices": 2, "arrows": [[1, 2]]}, "e_vertices": [2]}"#),
        ("syntax", r#"{"quiver": "#),
        ("field", r#"{"quiver": {"vertices": 1}, "e_vertices": [1], "colour": 1}"#),
        ("menu", r#"{"quiver": {"vertices": 2, "arrows": [[1, 2]]}, "e_vertices": [2], "menu": ["T:Q9"]}"#),
    ] {
        let f = write(&dir, name, body);
        let out = verify(&f, &dir.path().join("r.json"));
        assert_eq!(out.status.code(), Some(3), "{name}");
    }
    let out = recoll(&["verify", "/nonexistent/scenario.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn zero_attempts_is_inconclusive() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"quiver": {"vertices": 2, "arrows": [[1, 2]]}, "e_vertices": [2], "caps": {"attempts": 0}}"#;
    let f = write(&dir, "zero.json", body);
    let rp = dir.path().join("r.json");
    let out = verify(&f, &rp);
    assert_eq!(out.status.code(), Some(2));
    let r = report_json(&rp);
    assert_eq!(r["summary"]["fail"], 0);
    let inconclusive: Vec<&str> = r["cells"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["verdict"] == "inconclusive")
        .map(|c| c["axiom"].as_str().unwrap())
        .collect();
    assert!(inconclusive.iter().any(|a| a.starts_with("triangle")));
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", r#"{"quiver": {"vertices": 3, "arrows": [[1, 2], [2, 3]]}, "e_vertices": [3], "seed": 11}"#);
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    assert_eq!(verify(&f, &a).status.code(), Some(0));
    assert_eq!(verify(&f, &b).status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn restricted_and_empty_menus() {
    let dir = TempDir::new().unwrap();
    let body = r#"{"quiver": {"vertices": 2, "arrows": [[1, 2]]}, "e_vertices": [2], "menu": ["T:P1", "T:S2", "S:S1", "U:P2"], "variants": ["original"]}"#;
    let f = write(&dir, "small.json", body);
    let rp = dir.path().join("r.json");
    assert_eq!(verify(&f, &rp).status.code(), Some(0));
    let r = report_json(&rp);
    assert!(r["cells"].as_array().unwrap().iter().all(|c| c["diagram"] != "upper"));

    let body = r#"{"quiver": {"vertices": 2, "arrows": [[1, 2]]}, "e_vertices": [2], "menu": []}"#;
    let f = write(&dir, "empty.json", body);
    let out = verify(&f, &rp);
    assert_eq!(out.status.code(), Some(0));
    let r = report_json(&rp);
    assert!(!r["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn apply_prints_homology() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f1.json", F1);
    let f = f.to_str().unwrap();
    let run = |functor: &str, object: &str| {
        let out = recoll(&["apply", f, functor, object]);
        (out.status.code(), String::from_utf8(out.stdout).unwrap().trim().to_string())
    };
    assert_eq!(run("T", "P1"), (Some(0), "{0: 2}".into()));
    assert_eq!(run("j^*", "P1"), (Some(0), "{}".into()));
    assert_eq!(run("T~", "I1"), (Some(0), "{0: 1}".into()));
    assert_eq!(run("T\u{303}", "T:I2"), (Some(0), "{0: 2}".into()));
    assert_eq!(run("S", "S1"), (Some(0), "{0: 1}".into()));
    assert_eq!(run("S~", "S1"), (Some(0), "{0: 1}".into()));
    assert_eq!(run("i_!", "S1").0, Some(0));
    assert_eq!(run("j^?", "P2").0, Some(0));
    assert_eq!(run("X", "P1").0, Some(3));
    assert_eq!(run("T", "P9").0, Some(3));
    assert_eq!(run("T", "S:P1").0, Some(3));
}
