use std::path::PathBuf;
use std::process::{Command, Output};

fn spec(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs");
    root.join(format!("{name}.json")).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bispectral")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bispectral-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn build_emits_bundle() {
    let o = run(&["build", "--spec", &spec("worked_example")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["P"]["support"], serde_json::json!([-2, 0]));
    assert_eq!(v["L"]["support"], serde_json::json!([-1, 1]));
    assert_eq!(v["jordan"].as_array().unwrap().len(), 2);
}

#[test]
fn trivial_spec_echoes_jacobi_operator() {
    let o = run(&["build", "--spec", &spec("trivial")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["P"]["support"], serde_json::json!([0, 0]));
    let p = bispectral_core::ParamSet::new(
        bispectral_core::exact::rat::rat(1, 2),
        bispectral_core::exact::rat::rat(1, 3),
        bispectral_core::exact::rat::rat(1, 5),
    )
    .unwrap();
    let l0 = bispectral_core::jacobi::jacobi_l(&p);
    let l: bispectral_core::json::DiffOpJson = serde_json::from_value(v["L"].clone()).unwrap();
    assert_eq!(l.to_op().unwrap(), l0);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["build", "--spec", &spec("bad_conditions")]), Some(2));
    let o = run(&["build", "--spec", &spec("inadmissible")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n = 1"));
    let o = run(&["dual", "--spec", &spec("out_of_scope")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("two Jordan blocks"));
    assert_eq!(code(&["build", "--spec", "/does/not/exist.json"]), Some(1));
    assert_eq!(code(&["build"]), Some(1));
    assert_eq!(code(&["verify", "--spec", &spec("trivial"), "--order", "4"]), Some(1));
    let garbage = tmp("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(code(&["build", "--spec", garbage.to_str().unwrap()]), Some(1));
}

#[test]
fn build_then_verify_round_trip() {
    let o = run(&["build", "--spec", &spec("mixed_1111")]);
    assert_eq!(o.status.code(), Some(0));
    let path = tmp("bundle.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let v = run(&["verify", "--spec", path.to_str().unwrap(), "--order", "16", "--window", "-3", "3"]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    let rep: serde_json::Value = serde_json::from_slice(&v.stdout).unwrap();
    assert_eq!(rep["ok"], true);
    assert!(rep["suites"].as_array().unwrap().iter().any(|s| s["suite"] == "round_trip"));

    // mutate one coefficient of L: the failures name the suites involved
    let mut b: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    b["L"]["coeffs"][0]["even"]["num"][0] = serde_json::json!("12345");
    let bad = tmp("bad_bundle.json");
    std::fs::write(&bad, serde_json::to_string_pretty(&b).unwrap()).unwrap();
    let v = run(&["verify", "--spec", bad.to_str().unwrap(), "--order", "16", "--window", "-3", "3", "--format", "text"]);
    assert_eq!(v.status.code(), Some(4));
    let text = stdout(&v);
    assert!(text.contains("FAIL round_trip"));
    assert!(text.contains("FAIL intertwining"));
    assert!(text.contains("PASS kernel"));
}

#[test]
fn odd_spec_notes_lift() {
    let v = run(&["verify", "--spec", &spec("odd_10"), "--order", "16", "--window", "-2", "2", "--format", "text"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).contains("auto-lift"));
}

#[test]
fn dual_certificates() {
    let o = run(&["dual", "--spec", &spec("trivial"), "--order", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["eigen"], serde_json::json!(["1"]));
    assert_eq!(v["B"]["order"], 0);
    let o = run(&["dual", "--spec", &spec("worked_example"), "--order", "24", "--window", "-3", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verified_order"], 24);
    assert_eq!(v["shift"], 1);
}

#[test]
fn reproduce_example() {
    let args = ["reproduce-example", "--eps", "1/3", "--b0", "2", "--b1", "5/7", "--order", "40", "--window", "-6", "6", "--format", "text"];
    let o = run(&args);
    // the published dual operator and F forms do not match as printed
    assert_eq!(o.status.code(), Some(4));
    let text = stdout(&o);
    assert!(text.contains("PASS printed/psi_plus_1"));
    assert!(text.contains("FAIL printed/B_and_h"));
    assert!(text.contains("PASS derived/B_and_h"));
    let mut corrected = args.to_vec();
    corrected.push("--corrected");
    assert_eq!(run(&corrected).status.code(), Some(0));
}
