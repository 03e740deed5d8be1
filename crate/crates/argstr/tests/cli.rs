//! End-to-end CLI behaviour: exit codes, JSON reports, determinism, DOT
//! output, and the seed override.

use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn argstr(args: &[&str]) -> Run {
    argstr_with_env(args, &[])
}

fn argstr_with_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_argstr"));
    cmd.args(args);
    cmd.env_remove("ARGSTR_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let output = cmd.output().expect("binary runs");
    Run {
        code: output.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&output.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&output.stderr).into_owned(),
    }
}

fn json_of(run: &Run) -> serde_json::Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", run.stdout))
}

#[test]
fn check_accepts_valid_theories_and_rejects_invalid_ones() {
    let ok = argstr(&["check", data("tweety.wat").to_str().unwrap()]);
    assert_eq!(ok.code, 0, "{}", ok.stderr);
    assert!(ok.stdout.contains("valid theory"));

    // Weight 1 on an ordinary premise: a parse-level diagnostic, exit 2.
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.wat");
    std::fs::write(&bad, "prem p: q w=1.0\n").unwrap();
    let run = argstr(&["check", bad.to_str().unwrap()]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("1:1"), "span missing: {}", run.stderr);

    // Parseable but semantically broken: exit 1 with a violation listing.
    let invalid = dir.path().join("invalid.wat");
    std::fs::write(&invalid, "axiom k1: a\naxiom k2: ~a\n").unwrap();
    let run = argstr(&["check", invalid.to_str().unwrap()]);
    assert_eq!(run.code, 1);
    assert!(
        run.stdout.contains("indirectly inconsistent"),
        "{}",
        run.stdout
    );

    let missing = argstr(&["check", "/nonexistent/file.wat"]);
    assert_eq!(missing.code, 2);
}

#[test]
fn enumerate_reports_strengths_and_dot_trees() {
    let file = data("four_argument.wat");
    let run = argstr(&[
        "enumerate",
        file.to_str().unwrap(),
        "--budget",
        "2",
        "--method",
        "sp",
        "--json",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report = json_of(&run);
    let args = report["results"]["arguments"].as_array().unwrap();
    assert_eq!(args.len(), 4);
    let mut strengths: Vec<f64> = args
        .iter()
        .map(|a| a["strength"].as_f64().unwrap())
        .collect();
    strengths.sort_by(f64::total_cmp);
    assert_eq!(strengths, vec![0.125, 0.25, 0.5, 1.0]);

    let wl = argstr(&[
        "enumerate",
        file.to_str().unwrap(),
        "--budget",
        "2",
        "--method",
        "wl",
        "--json",
    ]);
    let report = json_of(&wl);
    let mut strengths: Vec<f64> = report["results"]["arguments"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["strength"].as_f64().unwrap())
        .collect();
    strengths.sort_by(f64::total_cmp);
    assert_eq!(strengths, vec![0.25, 0.25, 0.5, 1.0]);

    let ham = argstr(&[
        "enumerate",
        file.to_str().unwrap(),
        "--method",
        "hamacher",
        "--json",
    ]);
    let report = json_of(&ham);
    let mut strengths: Vec<f64> = report["results"]["arguments"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["strength"].as_f64().unwrap())
        .collect();
    strengths.sort_by(f64::total_cmp);
    assert!((strengths[0] - 0.2).abs() < 1e-12, "{strengths:?}");

    let dot = argstr(&["enumerate", file.to_str().unwrap(), "--dot"]);
    assert_eq!(dot.code, 0);
    assert!(dot.stdout.starts_with("digraph arguments"));
    assert!(dot.stdout.contains("subgraph cluster_3"));
    assert!(dot.stdout.contains("->"));

    let unknown = argstr(&["enumerate", file.to_str().unwrap(), "--method", "nope"]);
    assert_eq!(unknown.code, 2);
    assert!(unknown.stderr.contains("unknown method"));
}

#[test]
fn degrees_and_grounded_reproduce_the_example_graph() {
    let file = data("five_node.wag.json");
    let run = argstr(&["degrees", file.to_str().unwrap(), "--json"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report = json_of(&run);
    let degrees = &report["results"]["degrees"];
    assert!((degrees["a"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((degrees["b"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    assert!((degrees["c"].as_f64().unwrap() - 0.4).abs() < 1e-9);
    assert!((degrees["e"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-9);

    let grounded = argstr(&[
        "degrees",
        file.to_str().unwrap(),
        "--semantics",
        "grounded",
        "--json",
    ]);
    let report = json_of(&grounded);
    assert_eq!(
        report["results"]["accepted"],
        serde_json::json!(["a", "d", "e"])
    );
    assert_eq!(report["results"]["rejected"], serde_json::json!(["b", "c"]));

    let direct = argstr(&["grounded", file.to_str().unwrap(), "--json"]);
    let report = json_of(&direct);
    assert_eq!(
        report["results"]["accepted"],
        serde_json::json!(["a", "d", "e"])
    );

    // One iteration cannot converge on an attacked graph: domain failure.
    let starved = argstr(&[
        "degrees",
        file.to_str().unwrap(),
        "--eps",
        "1e-12",
        "--max-iter",
        "1",
    ]);
    assert_eq!(starved.code, 1);
    assert!(
        starved.stderr.contains("no convergence"),
        "{}",
        starved.stderr
    );

    let bad_semantics = argstr(&["degrees", file.to_str().unwrap(), "--semantics", "stable"]);
    assert_eq!(bad_semantics.code, 2);

    let garbage = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(garbage.path(), "{not json").unwrap();
    let run = argstr(&["degrees", garbage.path().to_str().unwrap()]);
    assert_eq!(run.code, 2);
}

#[test]
fn eval_seeds_a_graph_from_strengths() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("seeded.json");
    let run = argstr(&[
        "eval",
        data("four_argument.wat").to_str().unwrap(),
        "--method",
        "wl",
        "--attacks",
        data("attacks.json").to_str().unwrap(),
        "--wag-out",
        out.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report = json_of(&run);
    let graph = &report["results"]["graph"];
    assert_eq!(graph["arguments"].as_array().unwrap().len(), 4);
    assert_eq!(graph["attacks"].as_array().unwrap().len(), 1);
    let mut sigmas: Vec<f64> = graph["arguments"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n["weight"].as_f64().unwrap())
        .collect();
    sigmas.sort_by(f64::total_cmp);
    assert_eq!(sigmas, vec![0.25, 0.25, 0.5, 1.0]);

    // The emitted file is a valid graph for the degrees command.
    let degrees = argstr(&["degrees", out.to_str().unwrap(), "--json"]);
    assert_eq!(degrees.code, 0, "{}", degrees.stderr);

    // Unknown ids in the attack list are input errors.
    let bogus = dir.path().join("bogus.json");
    std::fs::write(&bogus, r#"{"attacks": [{"from": "zzz", "to": "A1"}]}"#).unwrap();
    let run = argstr(&[
        "eval",
        data("four_argument.wat").to_str().unwrap(),
        "--attacks",
        bogus.to_str().unwrap(),
    ]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("unknown argument id"), "{}", run.stderr);
}

#[test]
fn principles_single_probe_and_unknowns() {
    let run = argstr(&[
        "principles",
        "--method",
        "lukasiewicz",
        "--principle",
        "resilience",
        "--trials",
        "600",
        "--seed",
        "3",
        "--json",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report = json_of(&run);
    let rows = report["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert!(
        rows[0]["verdict"]["falsified"]["witness"].is_object(),
        "{rows:?}"
    );

    let unknown = argstr(&["principles", "--method", "sp", "--principle", "nope"]);
    assert_eq!(unknown.code, 2);
}

#[test]
fn principles_reports_are_deterministic_and_seed_sensitive() {
    let args = [
        "principles",
        "--method",
        "wl",
        "--principle",
        "proportionality",
        "--trials",
        "300",
        "--seed",
        "9",
        "--json",
    ];
    let first = argstr(&args);
    let second = argstr(&args);
    assert_eq!(first.code, 0);
    assert_eq!(
        first.stdout, second.stdout,
        "same inputs and seed, same bytes"
    );

    // The environment variable overrides --seed.
    let overridden = argstr_with_env(&args, &[("ARGSTR_SEED", "10")]);
    assert_eq!(json_of(&overridden)["seed"], serde_json::json!(10));

    let bad_env = argstr_with_env(&args, &[("ARGSTR_SEED", "not-a-number")]);
    assert_eq!(bad_env.code, 2);
}

#[test]
fn wellbehaved_certifies_builtins_and_falsifies_mean() {
    for name in ["prod-prod", "min-min", "hamacher", "lukasiewicz"] {
        let run = argstr(&["wellbehaved", "--method", name, "--json"]);
        assert_eq!(run.code, 0, "{name}: {}", run.stderr);
        let report = json_of(&run);
        assert_eq!(
            report["results"]["verdict"],
            serde_json::json!("Certified"),
            "{name}"
        );
    }

    let grid = argstr(&["wellbehaved", "--method", "prod-min", "--grid", "--json"]);
    assert_eq!(grid.code, 0);
    let report = json_of(&grid);
    assert!(report["results"]["verdict"]["NoViolationFound"].is_object());

    let mean = argstr(&["wellbehaved", "--method", "prod-mean", "--json"]);
    assert_eq!(mean.code, 1);
    let report = json_of(&mean);
    let violations = report["results"]["verdict"]["Falsified"]["violations"]
        .as_array()
        .unwrap();
    assert!(violations
        .iter()
        .any(|v| v["clause"] == serde_json::json!(7)));

    let direct = argstr(&["wellbehaved", "--method", "sp"]);
    assert_eq!(direct.code, 2);
}

#[test]
fn expect_paper_matrix_passes_at_low_trials() {
    // The acceptance suite runs the 10,000-trial version; this smoke keeps
    // the flag wired.
    for method in ["sp", "wl"] {
        let run = argstr(&[
            "principles",
            "--method",
            method,
            "--trials",
            "800",
            "--seed",
            "2",
            "--expect-paper",
        ]);
        assert_eq!(run.code, 0, "{method}: {}", run.stderr);
        assert!(
            run.stdout.contains("FALSIFIED"),
            "{method} must find witnesses"
        );
    }
}
