//! End-to-end tests of the `conegeom` binary: record streams, determinism,
//! exit codes, CSV output.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_conegeom"))
}

fn write_body(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("conegeom-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

fn disk() -> PathBuf {
    write_body(
        "disk.json",
        r#"{"kind":"ball","params":{"radius":1,"dim":2}}"#,
    )
}

fn lr3() -> PathBuf {
    write_body("lr3.json", r#"{"kind":"lr_ball","params":{"r":3,"dim":2}}"#)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid JSON record"))
        .collect()
}

#[test]
fn asp_of_disk_is_perimeter() {
    let body = disk();
    let out = run(&["asp", "--body", body.to_str().unwrap(), "--p", "1"]);
    assert!(out.status.success());
    let recs = stdout_lines(&out);
    assert_eq!(recs.len(), 1);
    let v = recs[0]["value"].as_f64().unwrap();
    assert!((v - 2.0 * std::f64::consts::PI).abs() < 1e-9);
    assert_eq!(recs[0]["classification"], "finite:computed");
}

#[test]
fn renyi_matches_oracle_record() {
    let body = lr3();
    let out = run(&[
        "renyi",
        "--body",
        body.to_str().unwrap(),
        "--alpha",
        "0.5",
        "--dir",
        "QP",
    ]);
    assert!(out.status.success());
    let quad = stdout_lines(&out)[0]["value"].as_f64().unwrap();
    let out = run(&[
        "oracle", "--kind", "lr-renyi", "--n", "2", "--r", "3", "--alpha", "0.5", "--dir", "QP",
    ]);
    assert!(out.status.success());
    let oracle = stdout_lines(&out)[0]["value"].as_f64().unwrap();
    assert!((quad - oracle).abs() < 1e-6 * oracle.abs());
}

#[test]
fn infinite_values_classified_in_records() {
    let body = lr3();
    let out = run(&[
        "renyi",
        "--body",
        body.to_str().unwrap(),
        "--alpha",
        "2",
        "--dir",
        "QP",
    ]);
    assert!(out.status.success());
    let recs = stdout_lines(&out);
    assert_eq!(recs[0]["value"], "+inf");
    assert_eq!(recs[0]["classification"], "plus_infinity:nonintegrable");
}

#[test]
fn record_stream_is_deterministic() {
    let body = lr3();
    let args = [
        "renyi",
        "--body",
        body.to_str().unwrap(),
        "--alpha",
        "0.25,0.5,2",
        "--dir",
        "QP",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "record streams must be byte-identical");
    // sequential mode must not change the values either
    let mut args_seq = args.to_vec();
    args_seq.push("--sequential");
    let c = run(&args_seq);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn invalid_input_exits_2() {
    let out = run(&["renyi", "--body", "/nonexistent.json", "--alpha", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let body = write_body("bad.json", r#"{"kind":"frisbee","params":{}}"#);
    let out = run(&["asp", "--body", body.to_str().unwrap(), "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // origin not interior
    let body = write_body(
        "shifted.json",
        r#"{"kind":"polar","body":{"kind":"linear_image","params":{"matrix":[[1,0],[1,1]]},"body":{"kind":"ball","params":{"dim":2,"radius":0}}}}"#,
    );
    let out = run(&["asp", "--body", body.to_str().unwrap(), "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn polytope_descriptor_recenters_and_classifies() {
    let body = write_body(
        "square_shifted.json",
        r#"{"kind":"polytope","params":{"vertices":[[3,1],[1,1],[1,-1],[3,-1]]}}"#,
    );
    let out = run(&["asp", "--body", body.to_str().unwrap(), "--p", "0,1,-1"]);
    assert!(out.status.success());
    let recs = stdout_lines(&out);
    assert_eq!(recs[0]["value"].as_f64().unwrap(), 8.0);
    assert_eq!(recs[1]["value"].as_f64().unwrap(), 0.0);
    assert_eq!(recs[2]["value"], "+inf");
    assert_eq!(recs[2]["classification"], "plus_infinity:polytope_rule");
}

#[test]
fn surface_body_emits_plot_csv() {
    let body = disk();
    let csv = std::env::temp_dir().join("conegeom-cli-tests/plot.csv");
    let out = run(&[
        "surface-body",
        "--body",
        body.to_str().unwrap(),
        "--weight",
        "const",
        "--s-grid",
        "0.1:0.5:4",
        "--cells",
        "4096",
        "--directions",
        "64",
        "--plot-out",
        csv.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let recs = stdout_lines(&out);
    // one record per s plus the summary
    assert_eq!(recs.len(), 5);
    assert_eq!(recs[4]["command"], "surface-body-limit");
    let limit = recs[4]["value"].as_f64().unwrap();
    assert!((limit - 2.0 * std::f64::consts::PI).abs() < 0.1);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("s,volume,quotient"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn verify_polytope_suite_passes() {
    let out = run(&["verify", "--suite", "polytope"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS"), "{text}");
    // unknown suite is invalid input
    let out = run(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn timings_flag_adds_wall_time() {
    let body = disk();
    let out = run(&[
        "asp",
        "--body",
        body.to_str().unwrap(),
        "--p",
        "1",
        "--timings",
    ]);
    let recs = stdout_lines(&out);
    assert!(recs[0]["wall_time"].as_f64().is_some());
    let out = run(&["asp", "--body", body.to_str().unwrap(), "--p", "1"]);
    let recs = stdout_lines(&out);
    assert!(recs[0].get("wall_time").is_none());
}
