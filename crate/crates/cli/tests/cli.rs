//! End-to-end tests of the sympdec binary: golden payloads, exit codes,
//! cache behaviour and output invariants.

use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sympdec"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn golden(name: &str) -> Value {
    let path = format!("{}/tests/golden/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    serde_json::from_str(&text).expect("valid golden JSON")
}

#[test]
fn decompose_matches_golden_fixtures() {
    for k in 2..=6u32 {
        for alg in ["h", "lie"] {
            let env = run_json(&[
                "decompose",
                "--algebra",
                alg,
                "--degree",
                &k.to_string(),
                "--no-cache",
            ]);
            assert_eq!(
                env["payload"],
                golden(&format!("decompose-{alg}-{k}")),
                "algebra {alg}, degree {k}"
            );
        }
    }
    for k in 1..=3u32 {
        let env = run_json(&[
            "decompose",
            "--algebra",
            "assoc",
            "--degree",
            &k.to_string(),
            "--no-cache",
        ]);
        assert_eq!(env["payload"], golden(&format!("decompose-assoc-{k}")));
    }
}

#[test]
fn envelope_shape_and_roundtrip() {
    let out = run(&["decompose", "--algebra", "h", "--degree", "2", "--no-cache"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed: Value = serde_json::from_str(text.trim()).unwrap();
    // Re-serializing the parsed value reproduces the emitted bytes exactly.
    assert_eq!(serde_json::to_string(&parsed).unwrap(), text.trim());
    assert_eq!(parsed["schema_version"], 1);
    assert_eq!(parsed["command"], "decompose");
    assert!(parsed["timing_ms"].is_u64());
    assert!(parsed["engine_version"].is_string());
    assert_eq!(parsed["parameters"]["algebra"], "h");
}

#[test]
fn genus_annotation_adds_dimensions() {
    let env = run_json(&[
        "decompose",
        "--algebra",
        "h",
        "--degree",
        "3",
        "--genus",
        "2",
        "--no-cache",
    ]);
    let p = &env["payload"];
    assert_eq!(p["total_dimension"], "36");
    assert_eq!(p["entries"][0]["gl_dimension"], "36");
}

#[test]
fn symmetry_exit_codes_and_expectations() {
    let ok = run(&["symmetry", "--algebra", "h", "--degree", "6", "--no-cache"]);
    assert_eq!(ok.status.code(), Some(0));
    let env: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(env["payload"]["expected"], "guaranteed");
    assert_eq!(env["payload"]["symmetric"], true);

    let broken = run(&["symmetry", "--algebra", "h", "--degree", "4", "--no-cache"]);
    assert_eq!(broken.status.code(), Some(2));
    let env: Value = serde_json::from_slice(&broken.stdout).unwrap();
    assert_eq!(env["payload"]["expected"], "not-guaranteed");
    assert_eq!(env["payload"]["symmetric"], false);
    assert!(!env["payload"]["violations"].as_array().unwrap().is_empty());

    let lie = run(&["symmetry", "--algebra", "lie", "--degree", "5", "--no-cache"]);
    assert_eq!(lie.status.code(), Some(0));
    let env: Value = serde_json::from_slice(&lie.stdout).unwrap();
    assert_eq!(env["payload"]["expected"], "guaranteed");
}

#[test]
fn invariants_published_values() {
    let env = run_json(&["invariants", "--degree", "18", "--stable"]);
    assert_eq!(env["payload"]["values"][0]["dimension"], "1729657");
    assert_eq!(env["payload"]["values"][0]["method"], "stable-even-column");

    let env = run_json(&["invariants", "--degree", "20", "--genus", "1"]);
    assert_eq!(env["payload"]["values"][0]["dimension"], "108");
    assert_eq!(env["payload"]["values"][0]["method"], "genus-one");

    let env = run_json(&["invariants", "--degree", "3", "--stable"]);
    assert_eq!(env["payload"]["values"][0]["dimension"], "0");

    let env = run_json(&["invariants", "--degree", "18", "--genus", "4"]);
    assert_eq!(env["payload"]["values"][0]["dimension"], "1548984");
    assert_eq!(env["payload"]["values"][0]["method"], "unstable");
}

#[test]
fn character_values_and_exponent_syntax() {
    let env = run_json(&["character", "--kind", "w", "--degree", "2"]);
    let values = env["payload"]["values"].as_array().unwrap();
    // Canonical order: [4], [3,1], [2,2], [1,1,1,1] restricted to support.
    assert_eq!(values.len(), 3);
    assert_eq!(values[0]["class"], serde_json::json!([3, 1]));
    assert_eq!(values[0]["value"], "-1");
    assert_eq!(values[1]["class"], serde_json::json!([2, 2]));
    assert_eq!(values[1]["value"], "2");
    assert_eq!(values[2]["class"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(values[2]["value"], "2");

    let env = run_json(&[
        "character",
        "--kind",
        "irreducible",
        "--lambda",
        "4^2,1^4",
        "--class",
        "12",
    ]);
    assert_eq!(env["payload"]["lambda"], serde_json::json!([4, 4, 1, 1, 1, 1]));
    let env2 = run_json(&[
        "character",
        "--kind",
        "irreducible",
        "--lambda",
        "6,2^3",
        "--class",
        "12",
    ]);
    // Conjugate diagram on a single full cycle: values agree up to the
    // class sign, which is -1 for a 12-cycle; both must be integers.
    let v1: i64 = env["payload"]["value"].as_str().unwrap().parse().unwrap();
    let v2: i64 = env2["payload"]["value"].as_str().unwrap().parse().unwrap();
    assert_eq!(v1, -v2);
}

#[test]
fn verify_all_passes_and_encodes_exit() {
    let out = run(&["verify", "--suite", "all", "--max-degree", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let env: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(env["payload"]["passed"], true);
    assert_eq!(env["payload"]["suites"].as_array().unwrap().len(), 4);
}

#[test]
fn oracle_commands() {
    let env = run_json(&["oracle", "kernel", "--genus", "2", "--degree", "3"]);
    assert_eq!(env["payload"]["kernel_dimension"], "36");
    assert_eq!(env["payload"]["method"], "oracle");

    let env = run_json(&["oracle", "sp-invariants", "--genus", "1", "--degree", "2"]);
    assert_eq!(env["payload"]["dimension"], "1");

    let env = run_json(&["oracle", "assoc", "--degree", "1"]);
    assert_eq!(env["payload"]["method"], "oracle");
    assert_eq!(env["payload"]["entries"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_code_1_on_usage_and_3_on_resource_cap() {
    let usage = run(&["decompose", "--algebra", "h"]);
    assert_eq!(usage.status.code(), Some(1));

    let usage2 = run(&["invariants", "--degree", "4"]);
    assert_eq!(usage2.status.code(), Some(1));

    let capped = run(&["oracle", "kernel", "--genus", "3", "--degree", "9"]);
    assert_eq!(capped.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&capped.stderr);
    assert!(msg.contains("resource cap"), "stderr: {msg}");
}

#[test]
fn assoc_over_caps_exits_3() {
    let out = run(&["decompose", "--algebra", "assoc", "--degree", "13", "--no-cache"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn warm_cache_returns_identical_payloads() {
    let dir = std::env::temp_dir().join(format!("sympdec-test-cache-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let run_cached = || {
        let out = bin()
            .args(["decompose", "--algebra", "h", "--degree", "7"])
            .env("SYMPDEC_CACHE_DIR", &dir)
            .output()
            .unwrap();
        assert!(out.status.success());
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v["payload"].clone()
    };
    let cold = run_cached();
    assert!(
        std::fs::read_dir(&dir).map(|d| d.count()).unwrap_or(0) > 0,
        "cache file written"
    );
    let warm = run_cached();
    assert_eq!(cold, warm);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn table_format_renders() {
    let out = run(&[
        "decompose",
        "--algebra",
        "h",
        "--degree",
        "2",
        "--format",
        "table",
        "--no-cache",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("partition"));
    assert!(text.contains("[2,2]"));
}
