use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use xlab_core::families::make_complete_split;

fn xlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xlab"))
        .args(args)
        .env_remove("XLAB_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn without_runtime(mut v: Value) -> Value {
    match &mut v {
        Value::Array(items) => items.iter_mut().for_each(|r| {
            r.as_object_mut().unwrap().remove("runtime");
        }),
        Value::Object(map) => {
            map.remove("runtime");
        }
        _ => {}
    }
    v
}

#[test]
fn rho_of_s_minus_48() {
    let v = json(&xlab(&["rho", "--family", "S-,n=48,k=2"]));
    let rho = v["rho"].as_f64().unwrap();
    assert!((rho - 10.026_40).abs() < 1e-5, "{rho}");
    assert_eq!(v["m"], 92);
    assert!(v["converged"].as_bool().unwrap());
    assert!(v["residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn construct_round_trips() {
    let v = json(&xlab(&["construct", "--family", "theta,p=3,q=3"]));
    assert_eq!((v["n"].as_u64(), v["m"].as_u64()), (Some(6), Some(7)));
    let g6 = v["graph6"].as_str().unwrap();
    let again = json(&xlab(&["construct", "--graph6", g6]));
    assert_eq!(again["edges"], v["edges"]);
}

#[test]
fn threshold_sweep_all_pass() {
    let v = json(&xlab(&["verify", "--lemma", "2.6", "--m-range", "6:200:2"]));
    let records = v.as_array().unwrap();
    assert_eq!(records.len(), 98);
    assert!(records.iter().all(|r| r["check"]["holds"] == Value::Bool(true)));
}

#[test]
fn rotation_sweep_never_fails() {
    let out = xlab(&["verify", "--lemma", "2.1", "--family", "theta,p=3,q=3"]);
    let v = json(&out);
    let records = v.as_array().unwrap();
    assert!(!records.is_empty());
    assert!(records.iter().all(|r| r["check"]["holds"] != Value::Bool(false)));
}

#[test]
fn quotient_and_bipartite_checks() {
    let v = json(&xlab(&["verify", "--lemma", "2.3", "--family", "G4,r=10,t=2"]));
    assert_eq!(v[0]["divides"], true);
    assert_eq!(v[0]["root_matches"], true);
    let v = json(&xlab(&["verify", "--lemma", "2.5", "--family", "star,r=4"]));
    assert_eq!(v[0]["holds"], true);
    // the triangle is not bipartite
    assert_eq!(xlab(&["verify", "--lemma", "2.5", "--graph6", "Bw"]).status.code(), Some(2));
}

#[test]
fn w_edge_bound_fixture() {
    let mut g = make_complete_split(3, 8).unwrap();
    let w = g.add_vertex().unwrap();
    g.add_edge(3, w).unwrap();
    let v = json(&xlab(&["verify", "--lemma", "2.7", "--graph6", &g.to_graph6()]));
    let records = v.as_array().unwrap();
    assert!(!records.is_empty());
    assert!(records.iter().any(|r| r["v"] == w && r["check"]["holds"] == true));
}

#[test]
fn equation_checks() {
    let v = json(&xlab(&["verify", "--eq", "4", "--family", "S-,n=48,k=2"]));
    assert_eq!(v[0]["holds"], true);
    let v = json(&xlab(&["verify", "--eq", "1", "--family", "G4,r=10,t=3"]));
    assert_eq!(v[0]["holds"], true);
}

#[test]
fn decompose_reports_layers() {
    let v = json(&xlab(&["decompose", "--family", "S-,n=10,k=2"]));
    assert_eq!(v["apex"], 0);
    assert_eq!(v["N0"], serde_json::json!([9]));
    assert_eq!(v["c"], 1);
}

#[test]
fn free_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_xlab"))
        .args(["free", "--theta", "3,3"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let theta = json(&xlab(&["construct", "--family", "theta,p=3,q=3"]));
    let line = format!("Bw\n\n{}\n", theta["graph6"].as_str().unwrap());
    child.stdin.take().unwrap().write_all(line.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let v = json(&out);
    let verdicts: Vec<bool> = v.as_array().unwrap().iter().map(|r| r["free"].as_bool().unwrap()).collect();
    assert_eq!(verdicts, vec![true, false]);
}

#[test]
fn bad_input_exits_2() {
    for args in [
        &["rho", "--family", "S-,n=1,k=9"][..],
        &["rho", "--graph6", "\u{1}"],
        &["rho"],
        &["verify", "--lemma", "2.6", "--m-range", "9:3:1"],
        &["verify", "--lemma", "2.6", "--m", "7"],
        &["verify", "--lemma", "9.9", "--m", "6"],
        &["search", "--m", "4", "--theta", "three"],
        &["rho", "--family", "star,r=3", "--tol", "-1"],
    ] {
        let out = xlab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rho.json");
    let out = xlab(&["rho", "--family", "star,r=5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file, json(&xlab(&["rho", "--family", "star,r=5", "--out", "-"])));
}

#[test]
fn search_independent_of_jobs() {
    let one = json(&xlab(&["search", "--m-range", "4:8:2", "--jobs", "1"]));
    let eight = json(&xlab(&["search", "--m-range", "4:8:2", "--jobs", "8"]));
    assert_eq!(without_runtime(one.clone()), without_runtime(eight));
    assert_eq!(one[2]["argmax"], serde_json::json!(["DN{"]));
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cold = json(&xlab(&["search", "--m", "8", "--cache-dir", dir.path().to_str().unwrap()]));
    assert!(dir.path().join("search_m8_p3_q3.json").exists());
    let warm = json(&xlab(&["search", "--m", "8", "--cache-dir", dir.path().to_str().unwrap()]));
    let fresh = json(&xlab(&["search", "--m", "8"]));
    assert_eq!(without_runtime(cold.clone()), without_runtime(warm));
    assert_eq!(without_runtime(cold), without_runtime(fresh));

    // env var default, and a corrupt entry is recomputed
    std::fs::write(dir.path().join("search_m8_p3_q3.json"), "{not json").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_xlab"))
        .args(["search", "--m", "8"])
        .env("XLAB_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    let v = json(&out);
    assert_eq!(v["survivors"], 491);
}
