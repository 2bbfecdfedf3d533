//! End-to-end tests of the command-line contract: exit codes, output
//! shapes, and canonical JSON round-tripping.

use std::path::PathBuf;
use std::process::{Command, Output};

fn golden_corpus() -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.push("../../corpus/golden.json");
    path.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steenrod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn homology_table_for_torus() {
    let corpus = golden_corpus();
    let out = run(&["homology", "torus", "--corpus", &corpus, "--ring", "Z"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("H_0 = Z"), "{text}");
    assert!(text.contains("H_1 = Z^2"), "{text}");
    assert!(text.contains("H_2 = Z"), "{text}");
}

#[test]
fn homology_with_coefficient_module() {
    let corpus = golden_corpus();
    let out = run(&[
        "homology",
        "rp2",
        "--corpus",
        &corpus,
        "--ring",
        "Z",
        "--coefficients",
        "Z/2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("H_2 = Z/2"), "{text}");
    // coefficients require the integral ring
    let out = run(&[
        "homology",
        "rp2",
        "--corpus",
        &corpus,
        "--ring",
        "Q",
        "--coefficients",
        "Z/2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn degree_command_prints_the_integer() {
    let corpus = golden_corpus();
    let out = run(&["degree", "wrap3", "--corpus", &corpus]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3");
    let out = run(&["degree", "collapse", "--corpus", &corpus]);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn json_output_round_trips_byte_identically() {
    let corpus = golden_corpus();
    for args in [
        vec!["homology", "torus", "--corpus", &corpus, "--emit", "json"],
        vec!["pair-les", "disk2", "--corpus", &corpus, "--emit", "json"],
        vec![
            "mayer-vietoris",
            "circle-arcs",
            "--corpus",
            &corpus,
            "--emit",
            "json",
        ],
        vec![
            "excision",
            "sphere-disks",
            "--corpus",
            &corpus,
            "--emit",
            "json",
        ],
        vec![
            "cellular",
            "torus-skeletal",
            "--corpus",
            &corpus,
            "--emit",
            "json",
        ],
        vec!["degree", "wrap2", "--corpus", &corpus, "--emit", "json"],
    ] {
        let out = run(&args);
        assert!(out.status.success(), "{args:?}");
        let rendered = stdout(&out);
        let rendered = rendered.trim_end();
        // serde_json's default map is ordered, so re-encoding a canonical
        // (key-sorted) document reproduces it byte for byte
        let value: serde_json::Value = serde_json::from_str(rendered).expect("valid json");
        let re_rendered = serde_json::to_string(&value).expect("re-encodes");
        assert_eq!(re_rendered, rendered, "{args:?}");
    }
}

#[test]
fn verify_axioms_passes_on_the_golden_corpus() {
    let corpus = golden_corpus();
    let out = run(&["verify-axioms", &corpus, "--ring", "Z"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("all checks passed"), "{text}");
    assert!(!text.contains("FAIL "), "{text}");
    // a second ring for good measure
    let out = run(&["verify-axioms", &corpus, "--ring", "Fp:3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_axioms_is_deterministic_under_threads() {
    let corpus = golden_corpus();
    let single = Command::new(env!("CARGO_BIN_EXE_steenrod"))
        .args(["verify-axioms", &corpus, "--ring", "Z", "--emit", "json"])
        .env("STEENROD_THREADS", "1")
        .output()
        .expect("binary runs");
    let threaded = Command::new(env!("CARGO_BIN_EXE_steenrod"))
        .args(["verify-axioms", &corpus, "--ring", "Z", "--emit", "json"])
        .env("STEENROD_THREADS", "4")
        .output()
        .expect("binary runs");
    let strip_timing = |raw: &[u8]| {
        let value: serde_json::Value = serde_json::from_slice(raw).expect("valid json");
        let mut value = value;
        value.as_object_mut().unwrap().remove("elapsed_ms");
        for check in value["checks"].as_array_mut().unwrap() {
            check.as_object_mut().unwrap().remove("elapsed_ms");
        }
        value
    };
    assert_eq!(strip_timing(&single.stdout), strip_timing(&threaded.stdout));
}

#[test]
fn exit_code_one_on_axiom_failure() {
    // a filtration whose first stage is the closure of one torus triangle:
    // H_1 of that stage is nonzero, so it is not a good filtration
    let dir = std::env::temp_dir().join("steenrod-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("failing.json");
    std::fs::write(
        &path,
        r#"{
            "format_version": 1,
            "items": [
                {"kind": "delta_complex", "name": "torus", "builder": "torus"},
                {"kind": "filtration", "name": "bad", "total": "torus",
                 "stages": [
                    [[true], [true, true, true], [true, false]],
                    [[true], [true, true, true], [true, true]]
                 ]}
            ]
        }"#,
    )
    .unwrap();
    let out = run(&["verify-axioms", path.to_str().unwrap(), "--ring", "Z"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"), "{}", stdout(&out));
    // the same filtration makes `cellular` refuse with exit code 2
    let out = run(&["cellular", "bad", "--corpus", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_two_on_input_errors() {
    let corpus = golden_corpus();
    // unknown item
    let out = run(&["homology", "nothing", "--corpus", &corpus]);
    assert_eq!(out.status.code(), Some(2));
    // ring parse failure
    let out = run(&["homology", "torus", "--corpus", &corpus, "--ring", "GF(9)"]);
    assert_eq!(out.status.code(), Some(2));
    // malformed corpus
    let dir = std::env::temp_dir().join("steenrod-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["verify-axioms", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // wrong item kind
    let out = run(&["degree", "torus", "--corpus", &corpus]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariant_violations_name_the_offender() {
    let dir = std::env::temp_dir().join("steenrod-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("invalid-simplex.json");
    std::fs::write(
        &path,
        r#"{
            "format_version": 1,
            "items": [
                {"kind": "delta_complex", "name": "mangled",
                 "counts": [2, 2, 1],
                 "faces": [[], [[1, 0], [1, 0]], [[0, 1, 0]]]}
            ]
        }"#,
    )
    .unwrap();
    let out = run(&["verify-axioms", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("mangled"), "{err}");
}
