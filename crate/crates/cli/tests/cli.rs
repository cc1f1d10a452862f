use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn trumpkit(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_trumpkit"))
        .args(args)
        .env("TRUMPKIT_THREADS", "2")
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = if stdout.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&stdout).expect("stdout is JSON")
    };
    (code, json, String::from_utf8(out.stderr).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn trump_prints_a_certificate() {
    let (code, r, _) = trumpkit(&["trump", "0.4,0.4,0.1,0.1", "0.5,0.25,0.25,0", "0.6,0.4"]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], true);
    assert_eq!(r["certificate"]["z"], serde_json::json!(["3/5", "2/5"]));
    assert_eq!(r["gaps"].as_array().unwrap().len(), 7);
}

#[test]
fn majorize_reports_the_negative_gap() {
    let (code, r, _) = trumpkit(&["majorize", "0.4,0.4,0.1,0.1", "0.5,0.25,0.25,0"]);
    assert_eq!(code, 1);
    assert_eq!(r["verdict"], false);
    assert_eq!(r["gaps"][1], "-1/20");
    assert_eq!(r["violations"], serde_json::json!([2]));
}

#[test]
fn classify_rejects_a_pure_target() {
    let (code, r, _) = trumpkit(&["classify", "1,0,0,0"]);
    assert_eq!(code, 1);
    assert_eq!(r["useful"], false);

    let (code, r, _) = trumpkit(&["classify", "0.4,0.3,0.2,0.1"]);
    assert_eq!(code, 0);
    assert_eq!((r["l"].as_u64(), r["m"].as_u64()), (Some(2), Some(3)));
}

#[test]
fn certificates_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["trump", "0.4,0.4,0.1,0.1", "0.5,0.25,0.25,0", "0.6,0.4"],
        vec!["separate", "0.4,0.3,0.2,0.1"],
        vec!["demo-nonuniform", "0.7,0.3"],
        vec!["geo-catalyst", "0.3,0.3,0.2,0.2", "0.4,0.3,0.2,0.1"],
        vec![
            "find-catalyst",
            "0.4,0.4,0.1,0.1",
            "0.5,0.25,0.25,0",
            "--kmax",
            "2",
        ],
    ] {
        let (code, r, _) = trumpkit(&args);
        assert_eq!(code, 0, "{args:?}");
        let cert = write(dir.path(), "cert.json", &r["certificate"].to_string());
        let (code, again, _) = trumpkit(&["trump", "--certificate", &cert]);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(again["certificate"], r["certificate"]);
        assert_eq!(again["gaps"], r["certificate"]["gaps"]);
    }
}

#[test]
fn forged_certificates_fail() {
    let dir = tempfile::tempdir().unwrap();
    let (_, r, _) = trumpkit(&["trump", "0.4,0.4,0.1,0.1", "0.5,0.25,0.25,0", "0.6,0.4"]);
    let mut cert = r["certificate"].clone();
    cert["z"] = serde_json::json!(["1/2", "1/2"]);
    let path = write(dir.path(), "bad.json", &cert.to_string());
    let (code, r, _) = trumpkit(&["trump", "--certificate", &path]);
    assert_eq!(code, 1);
    assert_eq!(r["verdict"], false);
}

#[test]
fn vector_documents_and_normalization() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(
        dir.path(),
        "x.json",
        r#"{"name":"x","components":["2/5","0.4","0.1","1/10"]}"#,
    );
    let y = write(dir.path(), "y.json", r#"{"components":["2","1","1","0"]}"#);
    let (code, _, err) = trumpkit(&["majorize", &x, &y]);
    assert_eq!(code, 2);
    assert!(err.contains("error"));
    let (code, r, _) = trumpkit(&["majorize", "--normalize", &x, &y]);
    assert_eq!(code, 1);
    assert_eq!(r["gaps"], serde_json::json!(["1/10", "-1/20", "1/10"]));
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        vec!["majorize", "0.5,0.5", "0.5,0.25,0.25"],
        vec!["majorize", "0.5,0.6", "0.5,0.5"],
        vec!["majorize", "a,b", "1"],
        vec!["geo-catalyst", "0.4,0.3,0.2,0.1", "0.4,0.3,0.2,0.1"],
        vec!["trump", "0.5,0.5"],
        vec!["no-such-command"],
    ] {
        let (code, _, _) = trumpkit(&args);
        assert_eq!(code, 2, "{args:?}");
    }
}

#[test]
fn padding_is_opt_in() {
    let (code, r, _) = trumpkit(&["majorize", "--pad", "0.5,0.5", "1,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(r["gaps"], serde_json::json!(["1/2", "0/1"]));
}

#[test]
fn majorize_witness_is_doubly_stochastic() {
    let (code, r, _) = trumpkit(&[
        "majorize",
        "--witness",
        "0.3,0.3,0.2,0.2",
        "0.4,0.3,0.2,0.1",
    ]);
    assert_eq!(code, 0);
    let rows = r["witness"]["matrix"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(!r["witness"]["transforms"].as_array().unwrap().is_empty());
}

#[test]
fn nothing_to_construct_exits_with_one() {
    let (code, r, _) = trumpkit(&["separate", "0.5,0.5,0,0"]);
    assert_eq!((code, &r["verdict"]), (1, &Value::Bool(false)));
    let (code, _, _) = trumpkit(&["demo-nonuniform", "0.5,0.5"]);
    assert_eq!(code, 1);
    let (code, r, _) = trumpkit(&["find-catalyst", "0.5,0.3,0.2", "0.45,0.45,0.1"]);
    assert_eq!(code, 1);
    assert_eq!(r["ruled_out_by_extremes"], true);
    assert_eq!(r["status"], "NotFound");
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = ["ray-probe", "0.4,0.3,0.2,0.1", "--k", "2", "--seed", "4"];
    let (code, a, _) = trumpkit(&args);
    assert_eq!(code, 0);
    let (_, b, _) = trumpkit(&args);
    assert_eq!(a, b);
    let bounds = a["bounds"].as_array().unwrap();
    assert_eq!(bounds.len(), 2);
    assert!(bounds[0]["t_float"].as_f64() <= bounds[1]["t_float"].as_f64());
}

#[test]
fn sample_region_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("region.csv");
    let out_s = out.to_string_lossy().into_owned();
    let (code, r, _) = trumpkit(&[
        "sample-region",
        "0.5,0.25,0.25,0",
        "--n",
        "30",
        "--kmax",
        "2",
        "--seed",
        "3",
        "--out",
        &out_s,
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["records"], 30);
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 32);
    assert!(text.lines().next().unwrap().starts_with('#'));
}
