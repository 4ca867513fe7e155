use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_endofusion"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

#[test]
fn tube_reports_dimension() {
    let o = run(&["tube", "--fixture", "rep_S3_self"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().next().unwrap().ends_with(" 43"), "{}", stdout(&o));
    assert!(stdout(&o).contains("pair basis: 683"));
}

#[test]
fn fusion_of_vec_s3_is_rep_s3() {
    let o = run(&["fusion", "--fixture", "vec_S3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("x1 x x1 = 1\n"), "{out}");
    assert!(out.contains("x2 x x2 = 1 + x1 + x2\n"), "{out}");
}

#[test]
fn endomorphize_vec_z2_writes_trivial_z2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let report = dir.path().join("report.json");
    let o = run(&["endomorphize", "--fixture", "vec_Z2", "-o", out.to_str().unwrap(), "--report", report.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let file: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(file["labels"].as_array().unwrap().len(), 2);
    let f = file["f"].as_array().unwrap();
    assert_eq!(f.len(), 8);
    for r in f {
        assert!((r["re"].as_f64().unwrap() - 1.0).abs() <= 1e-10 && r["im"].as_f64().unwrap().abs() <= 1e-10);
    }
    let rep: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(rep["tube_dimension"], 2);
    // the written file loads back and validates
    let v = run(&["validate", out.to_str().unwrap()]);
    assert!(v.status.success(), "{}", String::from_utf8_lossy(&v.stderr));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for k in 0..2 {
        let out = dir.path().join(format!("run{k}.json"));
        let rep = dir.path().join(format!("rep{k}.json"));
        let o = run(&["endomorphize", "--fixture", "rep_S3_self", "--seed", "3", "-o", out.to_str().unwrap(), "--report", rep.to_str().unwrap()]);
        assert!(o.status.success());
        outputs.push((std::fs::read(&out).unwrap(), std::fs::read(&rep).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn file_inputs_match_fixture_inputs() {
    let a = run(&["fusion", &data("repS3.json"), &data("repS3_self_module.json")]);
    let b = run(&["fusion", "--fixture", "rep_S3_self"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn plot_is_deterministic_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    for ext in ["svg", "pgm"] {
        let mut seen = Vec::new();
        for k in 0..2 {
            let p = dir.path().join(format!("plot{k}.{ext}"));
            let o = run(&["plot", "--fixture", "rep_S3", "-o", p.to_str().unwrap()]);
            assert!(o.status.success());
            seen.push(std::fs::read(&p).unwrap());
        }
        assert_eq!(seen[0], seen[1]);
    }
}

#[test]
fn exit_codes_follow_failure_kind() {
    let dir = tempfile::tempdir().unwrap();
    // validation failure: unit axiom broken
    let text = std::fs::read_to_string(data("vecZ2.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["fusion"].as_array_mut().unwrap().push(serde_json::json!({"a": "0", "b": "1", "c": "0", "n": 1}));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("UnitAxiom") && err.contains("[load]"), "{err}");

    // unreadable file
    let o = run(&["validate", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));

    // computation failure: unitary mode on data outside a unitary gauge
    let text = std::fs::read_to_string(data("vecZ2.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["unitary"] = serde_json::json!(false);
    let nonu = dir.path().join("nonunitary.json");
    std::fs::write(&nonu, v.to_string()).unwrap();
    let o = run(&["endomorphize", nonu.to_str().unwrap(), "--unitary", "on", "-o", dir.path().join("x.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}
