//! End-to-end tests of the `qpmet` binary: exit-code contract, worked
//! values through the command surface, determinism, and the agreement of
//! text and JSON renderings.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn qpmet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpmet"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("output is UTF-8")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal termination")
}

fn write_file(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).expect("temp files are writable");
    path
}

fn export_corpus(dir: &Path, id: &str) -> PathBuf {
    let output = qpmet(&["corpus", "export", id]);
    assert_eq!(exit_code(&output), 0, "corpus export {id} succeeds");
    write_file(dir, &format!("{id}.json"), stdout_of(&output))
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    let valid = export_corpus(dir.path(), "two-point");
    assert_eq!(exit_code(&qpmet(&["validate", valid.to_str().unwrap()])), 0);

    let broken_diagonal = write_file(
        dir.path(),
        "diag.json",
        r#"{"points":["a","b"],"dist":[["1","0"],["0","0"]]}"#,
    );
    let output = qpmet(&["validate", broken_diagonal.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 1, "axiom violations exit 1");
    assert!(stdout_of(&output).contains("valid: false"));
    assert!(stdout_of(&output).contains("nonzero diagonal"));

    let garbage = write_file(dir.path(), "garbage.json", "not json");
    assert_eq!(exit_code(&qpmet(&["validate", garbage.to_str().unwrap()])), 2);

    let unknown_key = write_file(
        dir.path(),
        "unknown.json",
        r#"{"points":["a"],"dist":[["0"]],"surprise":1}"#,
    );
    assert_eq!(
        exit_code(&qpmet(&["validate", unknown_key.to_str().unwrap()])),
        2,
        "grammar violations exit 2"
    );

    let unquoted = write_file(
        dir.path(),
        "unquoted.json",
        r#"{"points":["a"],"dist":[[0]]}"#,
    );
    let output = qpmet(&["validate", unquoted.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    assert!(String::from_utf8_lossy(&output.stderr).contains("quoted"));

    let empty_image = write_file(
        dir.path(),
        "empty_image.json",
        r#"{"points":["a"],"dist":[["0"]],"F":{"a":[]}}"#,
    );
    assert_eq!(
        exit_code(&qpmet(&["validate", empty_image.to_str().unwrap()])),
        2,
        "empty images exit 2"
    );

    assert_eq!(exit_code(&qpmet(&["validate", "/nonexistent/file"])), 2);
    assert_eq!(exit_code(&qpmet(&["corpus", "export", "nonesuch"])), 2);
    assert_eq!(
        exit_code(&qpmet(&["lab", "run", "nonesuch", "--trials", "1"])),
        2
    );
}

#[test]
fn corpus_export_is_deterministic_and_revalidates() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["two-point", "three-point", "harmonic-1", "harmonic-5"] {
        let first = qpmet(&["corpus", "export", id]);
        let second = qpmet(&["corpus", "export", id]);
        assert_eq!(first.stdout, second.stdout, "{id} export is byte-stable");
        let path = write_file(dir.path(), &format!("{id}.json"), stdout_of(&first));
        assert_eq!(
            exit_code(&qpmet(&["validate", path.to_str().unwrap()])),
            0,
            "{id} export passes validation"
        );
    }
    let out_path = dir.path().join("written.json");
    let output = qpmet(&[
        "corpus",
        "export",
        "three-point",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 0);
    let written = std::fs::read(&out_path).unwrap();
    assert_eq!(
        written,
        qpmet(&["corpus", "export", "three-point"]).stdout,
        "--out writes exactly the stdout bytes"
    );
}

#[test]
fn analyze_reports_the_worked_classification_in_both_renderings() {
    let dir = tempfile::tempdir().unwrap();
    let file = export_corpus(dir.path(), "three-point");
    let path = file.to_str().unwrap();

    let json_output = qpmet(&["analyze", path, "--output", "json"]);
    assert_eq!(exit_code(&json_output), 0);
    let value: Value = serde_json::from_str(stdout_of(&json_output)).unwrap();
    assert_eq!(value["approx_start"]["value"], "0");
    assert_eq!(value["approx_start"]["witness"], "0");
    assert_eq!(value["approx_end"]["value"], "1");
    assert_eq!(value["approx_end"]["witness"], "2");
    let startpoints: Vec<&str> = value["classifications"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|row| row["startpoint"] == Value::Bool(true))
        .map(|row| row["point"].as_str().unwrap())
        .collect();
    assert_eq!(startpoints, ["0"], "0 is the unique startpoint");
    assert!(
        value["classifications"]
            .as_array()
            .unwrap()
            .iter()
            .all(|row| row["endpoint"] == Value::Bool(false)),
        "no endpoints"
    );

    let text_output = qpmet(&["analyze", path]);
    assert_eq!(exit_code(&text_output), 0);
    let text = stdout_of(&text_output);
    for needle in ["approx_start", "approx_end", "value: 0", "value: 1"] {
        assert!(text.contains(needle), "text rendering mentions {needle:?}");
    }
}

#[test]
fn hausdorff_reports_the_set_distance_with_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let file = export_corpus(dir.path(), "two-point");
    let output = qpmet(&[
        "hausdorff",
        file.to_str().unwrap(),
        "1",
        "0,1",
        "--output",
        "json",
    ]);
    assert_eq!(exit_code(&output), 0);
    let value: Value = serde_json::from_str(stdout_of(&output)).unwrap();
    assert_eq!(value["distance"]["value"], "1");
    assert_eq!(
        exit_code(&qpmet(&["hausdorff", file.to_str().unwrap(), "1", "zzz"])),
        2,
        "unknown labels exit 2"
    );
}

#[test]
fn solve_startpoint_walks_the_chain_in_one_step() {
    let dir = tempfile::tempdir().unwrap();
    let file = export_corpus(dir.path(), "harmonic-3");
    let path = file.to_str().unwrap();
    let output = qpmet(&[
        "solve",
        "startpoint",
        path,
        "--seed-point",
        "1",
        "--c",
        "1/2",
        "--output",
        "json",
    ]);
    assert_eq!(exit_code(&output), 0);
    let value: Value = serde_json::from_str(stdout_of(&output)).unwrap();
    assert_eq!(value["status"], "converged");
    assert_eq!(value["terminal"], "1/3");
    assert_eq!(value["steps"].as_array().unwrap().len(), 1);
    assert_eq!(value["terminal_classification"]["startpoint"], true);

    let from_bottom = qpmet(&[
        "solve",
        "startpoint",
        path,
        "--seed-point",
        "1/3",
        "--output",
        "json",
    ]);
    assert_eq!(exit_code(&from_bottom), 0);
    let value: Value = serde_json::from_str(stdout_of(&from_bottom)).unwrap();
    assert_eq!(value["steps"].as_array().unwrap().len(), 0);
    assert_eq!(value["terminal"], "1/3");
}

#[test]
fn solve_exits_one_when_no_feasible_successor_exists() {
    let dir = tempfile::tempdir().unwrap();
    // Two points swapping under F at symmetric distance 1: every start
    // value is 1, and no image point beats the contraction bound.
    let file = write_file(
        dir.path(),
        "swap.json",
        r#"{
            "points": ["a", "b"],
            "dist": [["0", "1"], ["1", "0"]],
            "F": {"a": ["b"], "b": ["a"]}
        }"#,
    );
    let output = qpmet(&[
        "solve",
        "startpoint",
        file.to_str().unwrap(),
        "--seed-point",
        "a",
        "--c",
        "1/2",
        "--output",
        "json",
    ]);
    assert_eq!(exit_code(&output), 1, "non-convergence exits 1");
    let value: Value = serde_json::from_str(stdout_of(&output)).unwrap();
    assert_eq!(value["status"], "hypothesis-violated");
    assert_eq!(value["violation"]["kind"], "no-feasible-successor");
}

#[test]
fn lab_reports_are_byte_identical_across_runs_with_one_seed() {
    let args = [
        "lab",
        "run",
        "startpoint",
        "--trials",
        "25",
        "--seed",
        "2024",
        "--output",
        "json",
    ];
    let first = qpmet(&args);
    let second = qpmet(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout, "reports are byte-identical");
    let value: Value = serde_json::from_str(stdout_of(&first)).unwrap();
    assert_eq!(value["passed"], true);
    assert_eq!(value["trials_run"], 25);

    let other_seed = qpmet(&[
        "lab",
        "run",
        "startpoint",
        "--trials",
        "25",
        "--seed",
        "2025",
        "--output",
        "json",
    ]);
    assert_ne!(
        first.stdout, other_seed.stdout,
        "a different seed draws different instances"
    );
}

#[test]
fn lab_and_corpus_listings_name_every_entry() {
    let suites = qpmet(&["lab", "list"]);
    assert_eq!(exit_code(&suites), 0);
    let text = stdout_of(&suites);
    for id in [
        "picard",
        "startpoint",
        "endpoint-duality",
        "fixed-sym",
        "mix-equivalence",
        "single-map",
        "hyperspace",
        "cauchy-hierarchy",
        "eps-lattice",
        "semicontinuity",
    ] {
        assert!(text.contains(id), "suite listing mentions {id}");
    }
    let corpus = qpmet(&["corpus", "list"]);
    assert_eq!(exit_code(&corpus), 0);
    for id in ["two-point", "three-point", "harmonic-N"] {
        assert!(stdout_of(&corpus).contains(id), "corpus listing mentions {id}");
    }
}

#[test]
fn picard_solve_enforces_the_seed_weight_gate() {
    let dir = tempfile::tempdir().unwrap();
    // Weights propagate (f is constant at b, and w(b, b) = 1) but the seed
    // a starts below weight 1, so the orbit must refuse it.
    let file = write_file(
        dir.path(),
        "gated.json",
        r#"{
            "points": ["a", "b"],
            "dist": [["0", "1"], ["0", "0"]],
            "f": {"a": "b", "b": "b"},
            "alpha": [["0", "0"], ["0", "1"]],
            "gamma": {"kind": "linear", "c": "1/2"}
        }"#,
    );
    let path = file.to_str().unwrap();
    let refused = qpmet(&[
        "solve", "picard", path, "--seed-point", "a", "--output", "json",
    ]);
    assert_eq!(exit_code(&refused), 1);
    let value: Value = serde_json::from_str(stdout_of(&refused)).unwrap();
    assert_eq!(value["status"], "hypothesis-violated");
    assert_eq!(value["violation"]["kind"], "seed-weight");

    let accepted = qpmet(&[
        "solve", "picard", path, "--seed-point", "b", "--output", "json",
    ]);
    assert_eq!(exit_code(&accepted), 0);
    let value: Value = serde_json::from_str(stdout_of(&accepted)).unwrap();
    assert_eq!(value["status"], "converged");
    assert_eq!(value["terminal"], "b");
}
