use std::path::Path;
use std::process::{Command, Output};

fn heptile(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heptile"))
        .args(args)
        .current_dir(dir)
        .env("HEPTILE_OUT_DIR", dir.join("out"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn matrix_square_of_minimal_seed() {
    let dir = tempfile::tempdir().unwrap();
    let o = heptile(dir.path(), &["matrix", "--seed", "2,1,0", "--power", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[[5,4,1],[4,6,5],[1,5,10]]"));
}

#[test]
fn matrix_identity_group() {
    let dir = tempfile::tempdir().unwrap();
    let o = heptile(dir.path(), &["matrix", "--seed", "A"]);
    let s = stdout(&o);
    assert!(o.status.success());
    assert!(s.contains("[[1,0,0],[0,1,0],[0,0,1]]"));
    assert!(s.contains("delta = 1.000000"));
    assert!(s.contains("tiles (sum of entries) = 3"));
}

#[test]
fn matrix_json_is_parseable() {
    let dir = tempfile::tempdir().unwrap();
    let o = heptile(dir.path(), &["matrix", "--seed", "H", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tiles"], 41);
    assert_eq!(v["eigen_ok"], true);
}

#[test]
fn tables_pass_and_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = heptile(dir.path(), &["tables"]);
    let b = heptile(dir.path(), &["tables"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("overall: PASS"));
    let j = heptile(dir.path(), &["tables", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["constants"].as_array().unwrap().len(), 12);
    assert_eq!(v["summary"].as_array().unwrap().len(), 13);
}

#[test]
fn coronacci_first_step() {
    let dir = tempfile::tempdir().unwrap();
    let o = heptile(dir.path(), &["coronacci", "--seed", "5,9,11", "-n", "1"]);
    let s = stdout(&o);
    let line = s.lines().find(|l| l.trim_start().starts_with("1 ")).unwrap();
    let cols: Vec<&str> = line.split_whitespace().collect();
    assert_eq!(&cols[..4], &["1", "9", "16", "20"]);
}

#[test]
fn generate_then_verify_patch_area() {
    let dir = tempfile::tempdir().unwrap();
    let o = heptile(dir.path(), &["generate", "--group", "E", "--type", "A", "--gen", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let patch = dir.path().join("out/group-E-A-gen3.json");
    assert!(patch.exists());
    let v = heptile(dir.path(), &["verify", "--patch", patch.to_str().unwrap()]);
    let s = stdout(&v);
    assert!(v.status.success());
    // (Φ+2)³ = 7 + 14Φ + 7Φ² in A units.
    assert!(s.contains("area 7 + 14·PHI + 7·PHI^2"));
    assert!(s.contains("area = delta^6 * area(A): ok"));
}

#[test]
fn generate_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    heptile(dir.path(), &["generate", "--group", "E", "--type", "C", "--gen", "2", "--out", "a.json"]);
    heptile(dir.path(), &["generate", "--group", "E", "--type", "C", "--gen", "2", "--out", "b.json"]);
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.json")).unwrap());
}

#[test]
fn tampered_patch_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    heptile(dir.path(), &["generate", "--group", "E", "--type", "B", "--gen", "1", "--out", "p.json"]);
    let path = dir.path().join("p.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let first = lines.iter().position(|l| l.contains("\"type\"")).unwrap();
    lines.remove(first);
    let fixed = lines.join("\n").replace("],\n  ]", "]\n  ]");
    std::fs::write(&path, fixed).unwrap();
    let o = heptile(dir.path(), &["verify", "--patch", "p.json"]);
    assert!(!o.status.success());
}

#[test]
fn bundled_rules_verify() {
    let dir = tempfile::tempdir().unwrap();
    for g in ["E", "F"] {
        let o = heptile(dir.path(), &["verify", "--group", g]);
        assert!(o.status.success(), "{g}");
        assert!(stdout(&o).contains("PASS"));
    }
}

#[test]
fn broken_rule_file_fails() {
    let dir = tempfile::tempdir().unwrap();
    let text = include_str!("../../core/data/rules/group_e.json");
    let mut lines: Vec<&str> = text.lines().collect();
    let child = lines.iter().position(|l| l.contains("\"rot\":27")).unwrap();
    lines.remove(child);
    std::fs::write(dir.path().join("bad.json"), lines.join("\n")).unwrap();
    let o = heptile(dir.path(), &["verify", "--rules", "bad.json"]);
    assert_eq!(o.status.code(), Some(1));
    let g = heptile(dir.path(), &["generate", "--rules", "bad.json", "--type", "A", "--gen", "1"]);
    assert_eq!(g.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&g.stderr).contains("verification"));
}

#[test]
fn search_outcomes_and_fragment_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = heptile(dir.path(), &["search", "--seed", "E", "--type", "A", "--expect", "found"]);
    assert!(o.status.success());
    let frag = dir.path().join("out/search-2-1-0-A-0.json");
    assert!(frag.exists());
    let v = heptile(dir.path(), &["verify", "--rules", frag.to_str().unwrap(), "--parent", "A"]);
    assert!(v.status.success());
    let d = heptile(dir.path(), &["search", "--seed", "1,0,1", "--type", "A", "--expect", "exhausted"]);
    assert!(d.status.success());
    assert!(stdout(&d).contains("status: exhausted"));
    let wrong = heptile(dir.path(), &["search", "--seed", "D", "--type", "A", "--expect", "found", "--no-write"]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn render_patch_and_mandala() {
    let dir = tempfile::tempdir().unwrap();
    heptile(dir.path(), &["generate", "--group", "E", "--type", "B", "--gen", "2", "--out", "b.json"]);
    let a = heptile(dir.path(), &["render", "--in", "b.json", "--out", "b1.svg"]);
    assert!(a.status.success());
    heptile(dir.path(), &["render", "--in", "b.json", "--out", "b2.svg"]);
    let one = std::fs::read_to_string(dir.path().join("b1.svg")).unwrap();
    assert_eq!(one, std::fs::read_to_string(dir.path().join("b2.svg")).unwrap());
    assert!(one.contains("version=\"1.1\""));
    let m = heptile(dir.path(), &["render", "--in", "b.json", "--mandala"]);
    assert!(m.status.success());
    let rosette = std::fs::read_to_string(dir.path().join("out/b-mandala.svg")).unwrap();
    assert_eq!(rosette.matches("<polygon").count(), 7 * one.matches("<polygon").count());
    let sheet = heptile(dir.path(), &["render", "--group", "E", "--type", "C", "--labels"]);
    assert!(sheet.status.success());
    assert!(dir.path().join("out/group-E-C.svg").exists());
}

#[test]
fn bad_input_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(heptile(dir.path(), &["matrix", "--seed", "1,2"]).status.code(), Some(2));
    assert_eq!(heptile(dir.path(), &["matrix", "--seed", "1,0,0", "--bogus"]).status.code(), Some(2));
    assert_eq!(heptile(dir.path(), &["render", "--in", "missing.json"]).status.code(), Some(1));
    let z = heptile(dir.path(), &["coronacci", "--seed", "0,0,0"]);
    assert_eq!(z.status.code(), Some(1));
    assert!(!z.stderr.is_empty());
}
