//! End-to-end tests of the binary: output shapes and the exit-code contract
//! (0 ok, 1 parse, 2 resonance, 3 degenerate leading coefficient, 4 corpus
//! mismatch).

use std::process::{Command, Output};

fn gevrey(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gevrey"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn solve_prints_coefficient_tables() {
    let out = gevrey(&["solve", "--corpus", "P5-A-7", "-N", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines().skip_while(|l| !l.contains("exponent"));
    lines.next();
    let first: Vec<&str> = lines.next().unwrap().split_whitespace().collect();
    let second: Vec<&str> = lines.next().unwrap().split_whitespace().collect();
    assert_eq!(first, ["0", "-1"]);
    assert_eq!(second, ["-1", "4"]);

    let out = gevrey(&["solve", "--corpus", "P5-A-6-l2", "-N", "3"]);
    let text = stdout(&out);
    assert!(text.contains("-1  2"), "table starts with 2: {text}");
    assert!(text.contains("-2  -6"), "then -6: {text}");
}

#[test]
fn malformed_input_exits_one() {
    let out = gevrey(&["solve", "--equation", "z*(", "--seed", "-1=1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("parse error at byte"), "{err}");

    let out = gevrey(&["solve"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn resonance_exits_two() {
    let out = gevrey(&["solve", "--equation", "z*w' - 2*w", "--seed", "3=1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resonance"));
}

#[test]
fn degenerate_leading_coefficient_exits_three() {
    // w = 1 solves (w−1)w'' + w − 1 = 0 exactly, and ∂F/∂w'' vanishes on it
    let out = gevrey(&[
        "classify",
        "--equation",
        "(w-1)*w'' + w - 1",
        "--seed",
        "0=1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn classify_reports_candidates_and_support() {
    let out = gevrey(&["classify", "--corpus", "P3-A-13-l4", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["gevrey_candidates"], serde_json::json!(["0", "1"]));
    assert_eq!(v["positive_slopes"], serde_json::json!(["1"]));

    let out = gevrey(&["classify", "--corpus", "P5-C-9-l3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        v["support"],
        serde_json::json!([[0, "-1"], [1, "1"], [2, "1"]])
    );
    assert_eq!(
        v["reported_support"],
        serde_json::json!([[0, "-4"], [1, "-2"], [2, "-2"]])
    );
    assert_eq!(v["ramification"], 2);
    assert_eq!(v["coefficients"][0]["exponent"], "-1/2");
}

#[test]
fn euler_control_case_has_no_positive_slopes() {
    let out = gevrey(&[
        "classify",
        "--equation",
        "z*w' + w",
        "--seed",
        "-1=1",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["gevrey_candidates"], serde_json::json!(["0"]));
    assert_eq!(v["positive_slopes"], serde_json::json!([]));
}

#[test]
fn variation_prints_the_linearization() {
    let out = gevrey(&[
        "variation",
        "--equation",
        "-z*w*w'' + z*w'^2 - w*w' + w*(4*w^2+8) + z*w^4 - 16*z",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("d^2/dz^2"), "{text}");
    assert!(text.contains("2*z*w' - w"), "{text}");
    assert!(text.contains("-z*w"), "{text}");
}

#[test]
fn polygon_from_explicit_support() {
    let out = gevrey(&["polygon", "--support", "0:-1,1:1,2:1", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["positive_slopes"], serde_json::json!(["1"]));
    assert_eq!(v["gevrey_candidates"], serde_json::json!(["0", "1"]));

    let out = gevrey(&["polygon", "--support", "0:0"]);
    assert!(stdout(&out).contains("gevrey candidates: 0"));

    let out = gevrey(&["polygon", "--support", "0:-1,1:-1/2,4:3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["positive_slopes"], serde_json::json!(["1/2", "7/6"]));
}

#[test]
fn svg_and_report_files_are_written() {
    let dir = std::env::temp_dir().join(format!("gevrey-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let svg = dir.join("polygon.svg");
    let json = dir.join("report.json");
    let out = gevrey(&[
        "classify",
        "--corpus",
        "P5-A-6-l1",
        "--svg",
        svg.to_str().unwrap(),
        "--out",
        json.to_str().unwrap(),
        "--ascii",
    ]);
    assert!(out.status.success());
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<svg"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["case_id"], "P5-A-6-l1");
    assert!(stdout(&out).contains('*'));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn corpus_check_passes_clean_and_flags_corruption() {
    let out = gevrey(&["corpus-check"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("all 15 cases pass"));

    let out = gevrey(&["corpus-check", "--filter", "no-such-case"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("warning: no cases matched"));

    // an external case with a corrupted expected support must fail by name
    let dir = std::env::temp_dir().join(format!("gevrey-cases-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cases.json");
    std::fs::write(
        &path,
        serde_json::json!([{
            "case_id": "ext-euler-good",
            "equation": "z*w' + w",
            "ramification": 1,
            "branch": 0,
            "seed": [{"exponent": "-1", "value": {"re": "1", "im": "0"}}],
            "support": [[0, "0"], [1, "0"]],
            "positive_slopes": [],
            "gevrey_candidates": ["0"],
        }, {
            "case_id": "ext-euler-corrupt",
            "equation": "z*w' + w",
            "ramification": 1,
            "branch": 0,
            "seed": [{"exponent": "-1", "value": {"re": "1", "im": "0"}}],
            "support": [[0, "0"], [1, "5"]],
            "positive_slopes": [],
            "gevrey_candidates": ["0"],
        }])
        .to_string(),
    )
    .unwrap();
    let out = gevrey(&[
        "corpus-check",
        "--filter",
        "ext-euler",
        "--cases",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    let text = stdout(&out);
    assert!(text.contains("ok   ext-euler-good"), "{text}");
    assert!(text.contains("mismatched cases: ext-euler-corrupt"), "{text}");
    std::fs::remove_dir_all(&dir).ok();
}
