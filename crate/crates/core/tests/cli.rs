use quasifree::cli::{dispatch, EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_PASS};
use quasifree::io::{read_kernel, KernelFile};
use quasifree::Statistics;
use serde_json::Value;
use std::path::Path;

fn run(args: &[&str]) -> i32 {
    dispatch(std::iter::once("quasifree").chain(args.iter().copied()))
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn write_grid(dir: &Path) -> String {
    let path = dir.join("f.json");
    let p = path.to_str().unwrap().to_string();
    assert_eq!(run(&["gen-kernel", "--family", "gaussian-grid", "--sites", "3", "--out", &p]), EXIT_PASS);
    p
}

#[test]
fn verify_ktransform_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    assert_eq!(
        run(&["verify", "--suite", "ktransform", "--sites", "6", "--seed", "1", "--out", out.to_str().unwrap()]),
        EXIT_PASS
    );
    let report = &json(&out)["report"];
    assert_eq!(report["passed"], Value::Bool(true));
    assert_eq!(report["seed"], 1);
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["passed"] == Value::Bool(true)));
}

#[test]
fn distribution_is_normalized() {
    let dir = tempfile::tempdir().unwrap();
    let kernel = write_grid(dir.path());
    let out = dir.path().join("d.json");
    assert_eq!(run(&["distribution", "--kernel", &kernel, "--window", "1,2", "--out", out.to_str().unwrap()]), EXIT_PASS);
    let doc = json(&out);
    let table = doc["result"]["table"].as_array().unwrap();
    assert_eq!(table.len(), 4);
    let total: f64 = table.iter().map(|e| e["value"].as_f64().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-12);
    assert_eq!(doc["result"]["tail_mass"].as_f64().unwrap(), 0.0);
}

#[test]
fn invalid_kernel_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"sites":["a","b"],"sigma":[1,1],"matrix":[[0.5,0.4],[0.1,0.5]],"statistics":{"family":"fermion"}}"#)
        .unwrap();
    assert_eq!(run(&["verify", "--suite", "all", "--kernel", bad.to_str().unwrap()]), EXIT_INVALID);
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(run(&["correlations", "--kernel", bad.to_str().unwrap()]), EXIT_INVALID);
    std::fs::write(&bad, r#"{"sites":["a"],"sigma":[1],"matrix":[[2.0]],"statistics":{"family":"fermion"}}"#).unwrap();
    assert_eq!(run(&["correlations", "--kernel", bad.to_str().unwrap()]), EXIT_INVALID);
    std::fs::write(&bad, r#"{"sites":["a"],"sigma":[1],"matrix":[[0.2]],"statistics":{"family":"fermion"},"x":1}"#)
        .unwrap();
    assert_eq!(run(&["correlations", "--kernel", bad.to_str().unwrap()]), EXIT_INVALID);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]), EXIT_INVALID);
    assert_eq!(run(&["verify", "--no-such-flag"]), EXIT_INVALID);
    assert_eq!(run(&["verify", "--suite", "nope"]), EXIT_INVALID);
    assert_eq!(run(&["gen-kernel", "--family", "diagonal"]), EXIT_INVALID);
}

#[test]
fn failed_check_exits_one() {
    // fifty samples cannot resolve the cardinality law to one percent
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.json");
    let code = run(&["verify", "--suite", "samplers", "--count", "50", "--seed", "1", "--out", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert_eq!(json(&out)["report"]["passed"], Value::Bool(false));
    let kernel = write_grid(dir.path());
    assert_eq!(run(&["characteristic", "--kernel", &kernel, "--window", "0;1,2", "--y", "0.3,-1.1", "--tol", "0"]), EXIT_INVALID);
}

#[test]
fn gen_kernel_families() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("k.json");
    let ps = p.to_str().unwrap();
    assert_eq!(
        run(&["gen-kernel", "--family", "diagonal", "--values", "0.2,0.9", "--statistics", "fermion_like", "--l", "2", "--out", ps]),
        EXIT_PASS
    );
    let model = read_kernel(&p, None).unwrap();
    assert_eq!(model.statistics(), Statistics::FermionLike(2));
    assert_eq!(model.matrix()[(1, 1)], 0.9);
    assert_eq!(run(&["gen-kernel", "--family", "random-psd", "--sites", "4", "--seed", "3", "--out", ps]), EXIT_PASS);
    let file = KernelFile::parse(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(file.sites.len(), 4);
    let m = read_kernel(&p, None).unwrap();
    assert!(m.eigenvalues().iter().all(|&v| (0.0..=1.0).contains(&v)));
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let kernel = write_grid(dir.path());
    let out = dir.path().join("a.json");
    let once = || {
        let code = run(&["estimate", "--kernel", &kernel, "--count", "2000", "--seed", "5", "--out", out.to_str().unwrap()]);
        assert_eq!(code, EXIT_PASS);
        let mut v = json(&out);
        v["report"]["wall_time_s"] = Value::Null;
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(once(), once());
    let (s1, s2) = (dir.path().join("s1.jsonl"), dir.path().join("s2.jsonl"));
    for out in [&s1, &s2] {
        assert_eq!(run(&["sample", "--kernel", &kernel, "--count", "500", "--seed", "5", "--out", out.to_str().unwrap()]), EXIT_PASS);
    }
    assert_eq!(std::fs::read(&s1).unwrap(), std::fs::read(&s2).unwrap());
    let est = dir.path().join("e.json");
    assert_eq!(
        run(&["estimate", "--kernel", &kernel, "--samples", s1.to_str().unwrap(), "--out", est.to_str().unwrap()]),
        EXIT_PASS
    );
    assert_eq!(json(&est)["result"]["samples"], 500);
}

#[test]
fn tables_as_csv() {
    let dir = tempfile::tempdir().unwrap();
    let kernel = write_grid(dir.path());
    let out = dir.path().join("c.csv");
    assert_eq!(
        run(&["correlations", "--kernel", &kernel, "--statistics", "boson_like", "--l", "2", "--cap", "2", "--format", "csv", "--out", out.to_str().unwrap()]),
        EXIT_PASS
    );
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("configuration,correlation"));
    // ∅, three singletons, three doubled sites, three pairs
    assert_eq!(lines.count(), 10);
}

#[test]
fn spectral_command() {
    let dir = tempfile::tempdir().unwrap();
    let kernel = write_grid(dir.path());
    let out = dir.path().join("s.json");
    assert_eq!(run(&["spectral", "--kernel", &kernel, "--window", "0,1;1,2", "--out", out.to_str().unwrap()]), EXIT_PASS);
    let doc = json(&out);
    let total: f64 = doc["result"]["atoms"].as_array().unwrap().iter().map(|a| a["weight"].as_f64().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-10);
}
