use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whcenter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn write(dir: &Path, name: &str, body: &[u8]) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn exponents_counts_for_n1() {
    let v = stdout_json(&run(&["exponents", "--n", "1"]));
    assert_eq!(v["cardinality"], 6);
    assert_eq!(v["repeated"], 2);
    assert_eq!(v["distinct_exponents"], 4);
    assert_eq!(v["upper_bound_zeros"], 3);
    assert_eq!(v["lower_bound_zeros"], 2);
    let o = run(&["exponents", "--n", "1", "--format", "csv"]);
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        "cardinality,repeated,distinct,upper,lower\n6,2,4,3,2\n"
    );
    let v = stdout_json(&run(&["exponents", "--d", "3"]));
    assert_eq!(v["cardinality"], 14);
    assert_eq!(v["bound"], 13);
}

#[test]
fn family_then_detect_weights_and_monodromy() {
    let dir = tempfile::tempdir().unwrap();
    let fam = run(&["family", "--n", "1", "--c", "-1"]);
    assert!(fam.status.success());
    let path = write(dir.path(), "fam.json", &fam.stdout);
    let w = stdout_json(&run(&["detect-weights", &path]));
    assert_eq!(w["signature"], serde_json::json!(["1/1", "2/1", "1/1"]));
    let m = stdout_json(&run(&["monodromy", &path]));
    assert_eq!(m["branch"], "a");
    assert_eq!(m["discriminant"], "-12/1");
    assert_eq!(m["monodromic"], true);
}

#[test]
fn construct_matches_family() {
    let dir = tempfile::tempdir().unwrap();
    let spec = br#"{"h1": [[0,1,"1"],[2,0,"1/2"]], "h2": [[2,0,"1/2"]], "h2_scale_sq": "3", "sigma_a": "1", "sigma_t": "1"}"#;
    let path = write(dir.path(), "spec.json", spec);
    let built = stdout_json(&run(&["construct", &path]));
    let fam = stdout_json(&run(&["family", "--n", "1", "--c", "-1"]));
    for key in ["f", "g", "v_poly", "signature"] {
        assert_eq!(built[key], fam[key], "{key}");
    }
    assert_eq!(fam["g"], serde_json::json!([[3, 0, "-2/1"]]));
}

#[test]
fn exit_codes_and_error_json() {
    let o = run(&["family", "--n", "1", "--c", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"], "BadRational");

    let o = run(&["family", "--n", "1", "--c", "-1/8"]);
    assert_eq!(o.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"], "InvalidC");

    let dir = tempfile::tempdir().unwrap();
    let mixed = write(dir.path(), "mixed.json", br#"{"f": [[0,1,"1"],[2,0,"1"]], "g": [[1,0,"-1"]]}"#);
    let o = run(&["detect-weights", &mixed]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["detect-weights", "/nonexistent/system.json"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["verify-lemmas", "--n", "1", "--c", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let table = String::from_utf8(o.stdout).unwrap();
    assert!(!table.contains("FAIL") && table.contains("PASS"));
}

#[test]
fn design_shoot_pipeline_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let out_s = out.to_string_lossy().into_owned();
    let a = run(&["design", "--n", "1", "--c", "-1", "--zeros", "1,2", "--out", &out_s]);
    let b = run(&["design", "--n", "1", "--c", "-1", "--zeros", "1,2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let pert = out.join("pert.json").to_string_lossy().into_owned();

    let m = run(&["melnikov", "--n", "1", "--c", "-1", "--pert", &pert, "--format", "csv"]);
    let csv = String::from_utf8(m.stdout).unwrap();
    assert!(csv.starts_with("h_zero,refined,caveat\n"));
    assert_eq!(csv.lines().count(), 3);

    let args = [
        "shoot", "--n", "1", "--c", "-1", "--pert", &pert, "--epsilon", "1e-3", "--grid", "128", "--out", &out_s,
        "--plot",
    ];
    let s1 = run(&args);
    let s2 = run(&args);
    assert_eq!(s1.stdout, s2.stdout);
    let v = stdout_json(&s1);
    let cycles = v["cycles"].as_array().unwrap();
    assert_eq!(cycles.len(), 2);
    for (c, t) in cycles.iter().zip([1.0, 2.0]) {
        let h = c["h_star"].as_f64().unwrap();
        assert!((h - t).abs() < 0.05 * t, "{h}");
    }
    assert!(out.join("plot_displacement.py").exists());
    let shoot_csv = std::fs::read_to_string(out.join("shoot.csv")).unwrap();
    assert!(shoot_csv.starts_with("x0,x1,displacement,flight_time\n"));
    assert_eq!(shoot_csv.lines().count(), 129);
}

#[test]
fn trace_csv_columns() {
    let o = run(&["trace", "--n", "1", "--c", "-1", "--h", "1", "--format", "csv"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x,y,H"));
    for l in lines {
        let h: f64 = l.split(',').nth(3).unwrap().parse().unwrap();
        assert!((h - 1.0).abs() < 1e-9);
    }
}
