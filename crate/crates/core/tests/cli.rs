//! End-to-end checks of the `octo` binary: exit codes, determinism and the
//! JSON interfaces.

use std::path::Path;
use std::process::{Command, Output};

fn octo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octo"))
        .args(args)
        .env_remove("OCTO_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn table_dump_contains_pinned_products() {
    let out = octo(&["table"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["examples"]["e3*e5"], "e1");
    assert_eq!(v["examples"]["e1*e4"], "-e6");
    assert_eq!(v["triples"].as_array().unwrap().len(), 7);
}

#[test]
fn verify_is_deterministic_and_exits_zero() {
    let a = octo(&["verify", "moufang", "--seed", "42", "--samples", "200"]);
    let b = octo(&["verify", "moufang", "--seed", "42", "--samples", "200"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b), "same seed, same bytes");
    let c = octo(&["verify", "moufang", "--seed", "43", "--samples", "200"]);
    assert!(c.status.success());
    assert_ne!(stdout(&a), stdout(&c), "different seeds draw different samples");
}

#[test]
fn verify_unknown_suite_is_usage_error() {
    let out = octo(&["verify", "unknown"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_failure_exit_code() {
    // an impossible tolerance forces a check failure -> exit 1
    let out = octo(&[
        "verify",
        "lemma4",
        "--samples",
        "50",
        "--tol",
        "lemma4.real-part-identity=1e-300",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn seed_env_var_is_default() {
    let with_flag = octo(&["verify", "lemma4", "--seed", "77", "--samples", "100"]);
    let with_env = Command::new(env!("CARGO_BIN_EXE_octo"))
        .args(["verify", "lemma4", "--samples", "100"])
        .env("OCTO_SEED", "77")
        .output()
        .expect("binary runs");
    assert_eq!(stdout(&with_flag), stdout(&with_env));
}

#[test]
fn g2_tangent_reports_small_distance() {
    let out = octo(&["g2", "tangent", "--a", "e1", "--b", "e2", "--h", "1e-4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let d = v["frobenius_distance"].as_f64().unwrap();
    assert!(d < 1e-5, "distance {d}");
    assert_eq!(v["closed_form"].as_array().unwrap().len(), 8);
    // commuting parameters are a usage error
    let bad = octo(&["g2", "tangent", "--a", "e1", "--b", "e1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn g2_dump_shapes() {
    let out = octo(&["g2", "dump", "--dab", "e1", "e2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 8);
    let out = octo(&["g2", "dump", "--f", "1", "2", "4"]);
    assert!(out.status.success());
}

#[test]
fn iso_dump_level0_and_check() {
    let element = r#"{"m": {"a": [1.0], "b": [0.0], "c": [0.0], "d": [-1.0]}}"#;
    let out = octo(&["iso", "dump", "--level", "0", "--element", element]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0][2].as_f64().unwrap(), 2.0);
    assert_eq!(v[2][0].as_f64().unwrap(), 2.0);
    let out = octo(&["iso", "check", "--level", "3", "--samples", "20", "--seed", "7"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);
    let out = octo(&["iso", "check", "--level", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sl2o_word_pipeline() {
    let dir = std::env::temp_dir().join(format!("octo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // boost generator diag(sqrt2, 1/sqrt2): real entries, q unused
    let word = serde_json::json!([{
        "mu": [std::f64::consts::SQRT_2, 0.0, 0.0, 1.0 / std::f64::consts::SQRT_2],
        "nu": [0.0, 0.0, 0.0, 0.0],
        "q": [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]
    }]);
    let word_path = dir.join("word.json");
    std::fs::write(&word_path, serde_json::to_string(&word).unwrap()).unwrap();
    let vec_path = dir.join("vec.json");
    std::fs::write(&vec_path, "[1,0,0,0,0,0,0,0,0,0]").unwrap();

    let out = octo(&[
        "sl2o", "apply",
        "--word", word_path.to_str().unwrap(),
        "--vec", vec_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: Vec<f64> = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v[0] - 1.25).abs() < 1e-12);
    assert!((v[9] - 0.75).abs() < 1e-12);

    let out = octo(&["sl2o", "matrix", "--word", word_path.to_str().unwrap()]);
    assert!(out.status.success());
    let m: Vec<Vec<f64>> = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((m[0][0] - 1.25).abs() < 1e-12);
    assert!((m[0][9] - 0.75).abs() < 1e-12);
    assert!((m[9][9] - 1.25).abs() < 1e-12);

    // a lower-level vector is a usage error, not a crash
    std::fs::write(&vec_path, "[1,0,0,0]").unwrap();
    let out = octo(&[
        "sl2o", "apply",
        "--word", word_path.to_str().unwrap(),
        "--vec", vec_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&vec_path, "[1,0,0,0,0,0,0,0,0,0]").unwrap();

    // identity word echoes the vector
    std::fs::write(&word_path, "[]").unwrap();
    let out = octo(&[
        "sl2o", "apply",
        "--word", word_path.to_str().unwrap(),
        "--vec", vec_path.to_str().unwrap(),
    ]);
    let v: Vec<f64> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0], 1.0);
    assert!(v[1..].iter().all(|c| *c == 0.0));

    // --out writes the file instead of stdout
    let out_path = dir.join("matrix.json");
    let out = octo(&[
        "sl2o", "matrix",
        "--word", word_path.to_str().unwrap(),
        "--out", out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    assert!(Path::new(&out_path).exists());

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sl2o_check_det_classifies() {
    let dir = std::env::temp_dir().join(format!("octo-cli-det-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    // shared-direction generator: all entries in R + R e1
    let m = serde_json::json!({
        "a": [1.0, 2.0, 0, 0, 0, 0, 0, 0],
        "b": [0.0, -0.5, 0, 0, 0, 0, 0, 0],
        "c": [3.0, 0.0, 0, 0, 0, 0, 0, 0],
        "d": [1.0, 0.25, 0, 0, 0, 0, 0, 0]
    });
    std::fs::write(&path, serde_json::to_string(&m).unwrap()).unwrap();
    let out = octo(&["sl2o", "check-det", "--matrix", path.to_str().unwrap(), "--trials", "20"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["class"], "shared-direction");
    assert_eq!(v["violation_witnessed"], false);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sl2o_tangent_families() {
    let out = octo(&["sl2o", "tangent", "--family", "comm", "--params", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cd = v["cd"].as_array().unwrap();
    assert!((cd[1].as_f64().unwrap() - 1.0).abs() < 1e-6);
    let out = octo(&["sl2o", "tangent", "--family", "g2", "--params", "1,2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["g"].is_array());
    let bad = octo(&["sl2o", "tangent", "--family", "g2", "--params", "1"]);
    assert_eq!(bad.status.code(), Some(2));
}
