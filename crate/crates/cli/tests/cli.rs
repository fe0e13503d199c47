use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Runs the binary with `--out`, returning the exit code, the document and
/// the human summary.
fn run(args: &[&str]) -> (i32, Value, String) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let args: Vec<String> = args
        .iter()
        .map(|a| if a.ends_with(".json") { fixture(a).display().to_string() } else { a.to_string() })
        .collect();
    let output = Command::new(env!("CARGO_BIN_EXE_preheap")).args(&args).arg("--out").arg(&out).output().unwrap();
    let doc = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    (output.status.code().unwrap(), doc, String::from_utf8(output.stdout).unwrap())
}

#[test]
fn boolean_quotient_is_verified() {
    let (code, doc, summary) =
        run(&["--theory", "bool", "--op", "solve-right", "--a", "bool_p.json", "--b", "bool_q.json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["result"]["members"], serde_json::json!(["q"]));
    assert_eq!(doc["verification"]["method"], "exhaustive");
    assert_eq!(doc["verification"]["holds"], true);
    assert!(summary.contains("{q}") && summary.contains("verified"));
}

#[test]
fn large_universes_are_marked_unverified_unless_forced() {
    let args = ["--theory", "bool", "--a", "bool11_a.json", "--b", "bool11_b.json", "--op"];
    let (code, doc, _) = run(&[&args[..], &["solve-right"]].concat());
    assert_eq!(code, 0);
    assert_eq!(doc["verification"]["method"], "unverified");
    assert!(doc["verification"]["reason"].as_str().unwrap().contains("11 atoms"));
    let (code, doc, _) = run(&[&args[..], &["oracle-verify"]].concat());
    assert_eq!(code, 0);
    assert_eq!(doc["verification"]["holds"], true);
}

#[test]
fn malformed_contract_is_a_validation_failure() {
    let (code, doc, _) = run(&["--theory", "agc", "--op", "solve-right", "--a", "agc_bad.json", "--b", "agc_b.json"]);
    assert_eq!(code, 2);
    assert_eq!(doc["status"], "invalid");
    assert_eq!(doc["error"]["name"], "NotCovering");
    assert_eq!(doc["result"], Value::Null);
}

#[test]
fn unreadable_inputs_are_validation_failures() {
    let (code, doc, _) = run(&["--theory", "bool", "--op", "compose", "--a", "broken.json", "--b", "bool_q.json"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["name"], "Parse");
    let (code, doc, _) = run(&["--theory", "bool", "--op", "compose", "--a", "missing.json", "--b", "bool_q.json"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["name"], "Io");
    let (code, doc, _) = run(&["--theory", "bool", "--op", "compose", "--a", "bool_p.json"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["name"], "MissingOperand");
}

#[test]
fn contract_operations() {
    let base = ["--theory", "agc", "--a", "agc_a.json", "--b", "agc_b.json", "--op"];
    for op in ["compose", "merge", "separate", "solve-left"] {
        let (code, doc, _) = run(&[&base[..], &[op]].concat());
        assert_eq!(code, 0, "{op}");
        assert!(doc["result"]["universe"].is_array(), "{op}");
    }
    let (code, doc, _) = run(&[&base[..], &["refine"]].concat());
    assert_eq!(code, 0);
    assert!(doc["result"]["holds"].is_boolean());
    let (code, doc, _) = run(&["--theory", "agc", "--op", "axioms", "--a", "agc_a.json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["carrier"], 27);
}

#[test]
fn worked_language_example() {
    let (code, doc, _) =
        run(&["--theory", "lang-sync", "--op", "compose", "--a", "lang_l1.json", "--b", "lang_l2.json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["words"], serde_json::json!(["(a,c)"]));
    let (code, doc, _) =
        run(&["--theory", "lang-async", "--op", "compose", "--a", "lang_l1_union.json", "--b", "lang_l2_union.json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["words"], serde_json::json!(["ac", "ca", "aac", "aca", "caa"]));
}

#[test]
fn language_quotient_carries_a_maximality_report() {
    let args = ["--theory", "lang-sync", "--a", "lang_l1.json", "--b", "lang_l2.json", "--bound", "3", "--op"];
    let (code, right, _) = run(&[&args[..], &["solve-right"]].concat());
    assert_eq!(code, 0);
    assert_eq!(right["verification"]["method"], "pointwise");
    assert_eq!(right["verification"]["bound"], 3);
    assert_eq!(right["verification"]["holds"], true);
    let (code, left, _) = run(&[&args[..], &["solve-left"]].concat());
    assert_eq!(code, 0);
    assert_eq!(left["result"]["words"], right["result"]["words"]);
}

#[test]
fn sieve_descriptions_are_checked_against_the_theory() {
    let args = ["--a", "lang_l1.json", "--b", "lang_l2.json", "--op", "compose", "--sieve"];
    let (code, _, _) = run(&[&args[..], &["sieve_sync.json", "--theory", "lang-sync"]].concat());
    assert_eq!(code, 0);
    let (code, doc, _) = run(&[&args[..], &["sieve_union.json", "--theory", "lang-sync"]].concat());
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["name"], "KindMismatch");
    let (code, _, _) =
        run(&["--theory", "lang-async", "--op", "compose", "--a", "lang_l1.json", "--b", "lang_l2.json"]);
    assert_eq!(code, 2);
}

#[test]
fn language_axioms_run_on_the_sieve() {
    let (code, doc, _) =
        run(&["--theory", "lang-sync", "--op", "axioms", "--a", "lang_l1.json", "--sieve", "sieve_sync.json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["carrier"], 27);
    assert_eq!(doc["verification"]["holds"], true);
}

#[test]
fn interface_incompatibility_is_a_theory_error() {
    let (code, doc, _) = run(&["--theory", "ia", "--op", "solve-right", "--a", "ia_emits_o.json", "--b", "ia_p.json"]);
    assert_eq!(code, 3);
    assert_eq!(doc["status"], "undefined");
    assert_eq!(doc["error"]["name"], "Incompatible");
}

/// The serial quotient is a solution, but sampling finds unknowns that solve
/// the inequality without refining it, so verification fails loudly.
#[test]
fn interface_quotient_verification_reports_sampled_counterexamples() {
    let args = ["--theory", "ia", "--op", "solve-right", "--a", "ia_q.json", "--b", "ia_p.json"];
    let (code, doc, summary) = run(&args);
    assert_eq!(code, 4);
    assert_eq!(doc["status"], "verification-failed");
    assert_eq!(doc["verification"]["solution"]["holds"], true);
    assert!(doc["verification"]["maximality_failures"].as_u64().unwrap() > 0);
    assert!(!doc["verification"]["witnesses"].as_array().unwrap().is_empty());
    assert!(summary.contains("FAILED"));
    assert_eq!(doc["result"]["inputs"], serde_json::json!(["i", "u"]));

    let (code, doc, _) = run(&[&args[..], &["--no-verify"]].concat());
    assert_eq!(code, 0);
    assert_eq!(doc["verification"], Value::Null);
}

#[test]
fn interface_operations() {
    let base = ["--theory", "ia", "--a", "ia_p.json", "--b", "ia_q.json", "--op"];
    let (code, doc, _) = run(&[&base[..], &["compose"]].concat());
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["states"].as_array().unwrap().len(), 4);
    let (code, doc, _) = run(&["--theory", "ia", "--op", "refine", "--a", "ia_p.json", "--b", "ia_p.json"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["holds"], true);
    for op in ["merge", "separate"] {
        let (code, _, _) = run(&[&base[..], &[op]].concat());
        assert_eq!(code, 0, "{op}");
    }
}

#[test]
fn without_out_the_document_goes_to_standard_output() {
    let output = Command::new(env!("CARGO_BIN_EXE_preheap"))
        .args(["--theory", "bool", "--op", "refine", "--a"])
        .arg(fixture("bool_p.json"))
        .arg("--b")
        .arg(fixture("bool_q.json"))
        .output()
        .unwrap();
    assert!(output.status.success());
    let doc: Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(doc["result"]["holds"], false);
    assert!(String::from_utf8(output.stderr).unwrap().contains("Refine"));
}
