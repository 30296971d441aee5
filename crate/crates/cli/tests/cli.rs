//! End-to-end tests of the binary: golden stdout bytes, exit-code
//! contract (0 pass / 1 fail / 2 usage), and file output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sugawara"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawning the binary")
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "golden", name]
        .iter()
        .collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {path:?}: {e}"))
}

fn stdout_of(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).expect("utf-8 stdout")
}

#[test]
fn compute_matches_golden_bytes() {
    for (args, file) in [
        (vec!["compute", "--n", "2", "--family", "cdet"], "cdet-n2.json"),
        (vec!["compute", "--n", "3", "--family", "cdet"], "cdet-n3.json"),
        (
            vec!["compute", "--n", "3", "--family", "trace", "--k", "3"],
            "trace-n3-k3.json",
        ),
    ] {
        let out = run(&args);
        assert!(out.status.success());
        assert_eq!(stdout_of(&out).trim_end_matches('\n'), golden(file), "{args:?}");
    }
}

#[test]
fn compute_is_deterministic() {
    let a = run(&["compute", "--n", "3", "--family", "trace", "--k", "2"]);
    let b = run(&["compute", "--n", "3", "--family", "trace", "--k", "2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn compute_rank_one_text() {
    let out = run(&["compute", "--n", "1", "--family", "cdet", "--format", "text"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim(), "S_1 = e_{11}[-1]");
}

#[test]
fn walgebra_matches_golden_bytes() {
    let out = run(&["walgebra", "--n", "3", "--action", "miura"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).trim_end_matches('\n'), golden("miura-n3.json"));
}

#[test]
fn verify_all_passes_and_exits_zero() {
    let out = run(&["verify", "--n", "2", "--suite", "all"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let reports: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    let arr = reports.as_array().unwrap();
    assert!(!arr.is_empty());
    for rep in arr {
        assert_eq!(rep["passed"], serde_json::Value::Bool(true), "{rep}");
        assert_eq!(rep["n"], 2);
        assert!(rep["check"].is_string() && rep["wall_ms"].is_number());
    }
}

#[test]
fn gaudin_exit_codes_reflect_convention() {
    let pass = run(&["gaudin", "--n", "2", "--sites", "0,1"]);
    assert_eq!(pass.status.code(), Some(0));
    // the untransposed convention fails the commutativity check
    let fail = run(&[
        "gaudin", "--n", "2", "--sites", "0,1", "--transpose-convention", "off",
    ]);
    assert_eq!(fail.status.code(), Some(1));
    // with both conventions the run records which passes and exits 0
    let both = run(&[
        "gaudin", "--n", "2", "--sites", "0,1", "--transpose-convention", "both",
    ]);
    assert_eq!(both.status.code(), Some(0));
    let reports: serde_json::Value = serde_json::from_str(stdout_of(&both)).unwrap();
    assert_eq!(reports[0]["passed"], serde_json::Value::Bool(true));
    assert_eq!(reports[1]["passed"], serde_json::Value::Bool(false));
}

#[test]
fn gaudin_rejects_duplicate_points() {
    let out = run(&["gaudin", "--n", "2", "--sites", "0,0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--n", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--n", "2", "--suite", "bogus"]).status.code(),
        Some(2)
    );
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("sugawara-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cdet-n2.json");
    let out = run(&[
        "compute", "--n", "2", "--family", "cdet", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden("cdet-n2.json"));
}

#[test]
fn eigenvalue_from_character_file() {
    let dir = std::env::temp_dir().join("sugawara-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let chi = dir.join("chi.json");
    std::fs::write(
        &chi,
        r#"[{"coeffs":{"0":"3"},"min_r":0,"max_r":0},{"coeffs":{"0":"7"},"min_r":0,"max_r":0}]"#,
    )
    .unwrap();
    let out = run(&[
        "eigenvalue", "--chi", chi.to_str().unwrap(), "--order", "-2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // (d + 7/z)(d + 3/z) = d^2 + 10/z d + (21 - 3)/z^2
    let v: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(v[0]["d_power"], 0);
    assert_eq!(v[0]["series"]["coeffs"]["-2"], "18");
    assert_eq!(v[1]["series"]["coeffs"]["-1"], "10");
    assert_eq!(v[2]["series"]["coeffs"]["0"], "1");

    // requesting more depth than the file provides is a hard error
    let deep = run(&["eigenvalue", "--chi", chi.to_str().unwrap(), "--order", "5"]);
    assert_eq!(deep.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&deep.stderr).contains("truncation"));
}

#[test]
fn gaudin_dump_ops_is_valid_json() {
    let dir = std::env::temp_dir().join("sugawara-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ops.json");
    let out = run(&[
        "gaudin", "--n", "2", "--sites", "0,1", "--dump-ops",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let ops = v.as_array().unwrap();
    assert!(!ops.is_empty());
    for op in ops {
        assert_eq!(op["dim"], 4);
        assert_eq!(op["rows"].as_array().unwrap().len(), 4);
    }
}
