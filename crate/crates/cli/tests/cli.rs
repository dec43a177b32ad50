//! End-to-end tests of the command-line interface: exit codes, report
//! shapes, CSV emission and byte-level determinism.

use std::process::{Command, Output};

fn esfkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_esfkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn analyze_cusp_germ() {
    let out = esfkit(&["analyze", "--germ", "x^2-y^3"]);
    let v = json_of(&out);
    let r = &v["result"];
    assert_eq!(r["label"], "A2");
    assert_eq!(r["record"]["mu"], 2);
    assert_eq!(r["record"]["delta"], 1);
    assert_eq!(r["record"]["tau"], 2);
    assert_eq!(r["record"]["nu_s"], 2);
    assert_eq!(r["record"]["deg_xs"], 5);
    assert_eq!(v["tool"], "esfkit");
}

#[test]
fn analyze_catalog_type() {
    let out = esfkit(&["analyze", "--type", "A5"]);
    let v = json_of(&out);
    assert_eq!(v["result"]["catalog"]["mu"], 5);
    assert_eq!(v["result"]["catalog"]["tau_es"], 5);
}

#[test]
fn analyze_irrational_germ_exits_2() {
    let out = esfkit(&["analyze", "--germ", "x^3-y^3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("y^2 + y + 1"), "stderr names the factor: {}", err);
    assert!(err.contains("cluster"), "stderr points at the cluster input");
}

#[test]
fn parse_error_exits_1() {
    let out = esfkit(&["analyze", "--germ", "x +"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_inline_and_csv() {
    let out = esfkit(&[
        "check", "--d", "20", "--types", "A1:20,A2:5", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("criterion,verdict,lhs,rhs"));
    assert!(text.contains("irreducibility.weak.main,Pass,340,400"));
    assert!(text.contains("smoothness.nodes_cusps,Pass,125,528"));
}

#[test]
fn check_summary_file() {
    let dir = std::env::temp_dir().join(format!("esfkit-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("summary.json");
    std::fs::write(
        &path,
        r#"{"d": 6, "singularities": [{"type": "A2", "count": 6}]}"#,
    )
    .unwrap();
    let out = esfkit(&["check", "--summary", path.to_str().unwrap()]);
    let v = json_of(&out);
    let results = v["result"]["results"].as_array().unwrap();
    let nori = results
        .iter()
        .find(|r| r["id"] == "pi1.abelian")
        .expect("group condition evaluated");
    assert_eq!(nori["verdict"], "Fail");
    assert_eq!(nori["lhs"], "36");
    assert_eq!(v["result"]["expected_dimension"]["topological"], 15);
}

#[test]
fn malformed_summary_exits_1() {
    let dir = std::env::temp_dir().join(format!("esfkit-test-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, r#"{"singularities": "oops"}"#).unwrap();
    let out = esfkit(&["check", "--summary", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn castelnuovo_profile_and_davis() {
    let dir = std::env::temp_dir().join(format!("esfkit-test-cx-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let fat = dir.join("fat.json");
    std::fs::write(&fat, r#"{"pieces": [{"kind": "fat", "at": ["0","0"], "m": 3}]}"#).unwrap();
    let out = esfkit(&["castelnuovo", "--scheme", fat.to_str().unwrap(), "--format", "csv"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("d,CX,h0,h1"));
    for line in ["0,1,0,5", "1,2,0,3", "2,3,0,0", "3,0,4,0"] {
        assert!(text.contains(line), "missing {} in {}", line, text);
    }

    // eight points on a conic, with the fixed-curve split
    let pts: Vec<serde_json::Value> = [0i64, 1, -1, 2, -2, 3, -3, 4]
        .iter()
        .map(|t| serde_json::json!({"kind": "point", "at": [t.to_string(), (t*t).to_string()]}))
        .collect();
    let conic = dir.join("conic8.json");
    std::fs::write(&conic, serde_json::json!({ "pieces": pts }).to_string()).unwrap();
    let out = esfkit(&["castelnuovo", "--scheme", conic.to_str().unwrap(), "--davis"]);
    let v = json_of(&out);
    assert_eq!(v["result"]["davis"]["fixed_degree"], 2);
    assert_eq!(v["result"]["davis"]["min_formula_holds"], true);
    assert_eq!(v["result"]["profile"]["a"], 2);

    // empty scheme is rejected
    let empty = dir.join("empty.json");
    std::fs::write(&empty, r#"{"pieces": []}"#).unwrap();
    let out = esfkit(&["castelnuovo", "--scheme", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn jet_cap_bounds_the_stabilization_search() {
    let dir = std::env::temp_dir().join(format!("esfkit-test-cap-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("deep.json");
    std::fs::write(
        &path,
        r#"{"pieces": [{"kind": "ideal", "at": ["0","0"], "gens": ["x", "y^9"]}]}"#,
    )
    .unwrap();
    let ok = esfkit(&["castelnuovo", "--scheme", path.to_str().unwrap()]);
    let v = json_of(&ok);
    assert_eq!(v["result"]["degree"], 9);
    // a cap below the stabilization order turns the run into a domain error
    let cut = esfkit(&[
        "castelnuovo", "--scheme", path.to_str().unwrap(), "--jet-cap", "12",
    ]);
    assert_eq!(cut.status.code(), Some(2));
}

#[test]
fn zariski_dimensions_and_preconditions() {
    let out = esfkit(&["zariski", "-p", "15", "-d", "91"]);
    let v = json_of(&out);
    assert_eq!(v["result"]["dimensions"]["dim_expected_family"], 1577);
    assert_eq!(v["result"]["dimensions"]["dim_assembled_family"], 1580);
    assert_eq!(v["result"]["dimensions"]["window_valid"], true);

    let out = esfkit(&["zariski", "-p", "1", "-d", "6"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn zariski_sextic_verified() {
    let out = esfkit(&["zariski", "--sextic", "--seed", "7"]);
    let v = json_of(&out);
    assert_eq!(v["result"]["sextic"]["verification"]["total_tau"], 12);
    assert_eq!(v["result"]["sextic"]["verification"]["points"], 6);
}

#[test]
fn gamma_command() {
    let out = esfkit(&["gamma", "--germ", "x^2-y^5", "--smooth"]);
    let v = json_of(&out);
    assert_eq!(v["result"]["gamma"]["lower"], "25");
    assert_eq!(v["result"]["gamma"]["exact"], true);
    assert_eq!(v["result"]["smooth_intersection"]["max"], 5);
}

#[test]
fn identical_runs_are_byte_identical() {
    let a = esfkit(&["check", "--d", "10", "--types", "A2:3", "--seed", "4"]);
    let b = esfkit(&["check", "--d", "10", "--types", "A2:3", "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let c = esfkit(&["zariski", "--sextic", "--seed", "9"]);
    let d = esfkit(&["zariski", "--sextic", "--seed", "9"]);
    assert_eq!(c.stdout, d.stdout);
}
