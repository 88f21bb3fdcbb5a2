//! CLI surface behavior: exit codes, JSON determinism, and the invariant
//! that every factorization file shipped with the repository validates.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabcoh")).args(args).output().unwrap()
}

fn run_on(file: &str, args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_stabcoh"));
    cmd.arg(args[0]).arg(data_dir().join(file)).args(&args[1..]);
    cmd.output().unwrap()
}

#[test]
fn every_shipped_example_validates() {
    let mut seen = 0;
    for entry in std::fs::read_dir(data_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("mf") {
            continue;
        }
        seen += 1;
        let out = Command::new(env!("CARGO_BIN_EXE_stabcoh"))
            .arg("validate")
            .arg(&path)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{} failed validate", path.display());
    }
    assert!(seen >= 3, "expected shipped example files");
}

#[test]
fn json_output_is_byte_deterministic() {
    let args = ["slc", "--from", "-15", "--to", "0", "--basis", "--json"];
    let a = run_on("xy_rx.mf", &args);
    let b = run_on("xy_rx.mf", &args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let args = ["verify", "--suite", "duality_oracle", "--from", "-15", "--to", "0", "--json"];
    let a = run_on("x2y2_knoerrer.mf", &args);
    let b = run_on("x2y2_knoerrer.mf", &args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn hilbert_object_selector() {
    let coker = run_on("xy_rx.mf", &["hilbert", "--from", "-3", "--to", "3", "--json"]);
    assert!(coker.status.success());
    let v: serde_json::Value = serde_json::from_slice(&coker.stdout).unwrap();
    assert_eq!(v["construction"], "cokernel_hilbert");
    // M = R/(x) = k[y]: dimension one in every non-negative degree.
    for row in v["rows"].as_array().unwrap() {
        let (j, d) = (row[0].as_i64().unwrap(), row[1].as_u64().unwrap());
        assert_eq!(d, u64::from(j >= 0));
    }
    let slc = run_on(
        "xy_rx.mf",
        &["hilbert", "--object", "slc", "--from", "-5", "--to", "0", "--json"],
    );
    let v: serde_json::Value = serde_json::from_slice(&slc.stdout).unwrap();
    assert_eq!(v["construction"], "gamma_stab_max");
    let toplc = run_on(
        "xy_rx.mf",
        &["hilbert", "--object", "toplc", "--from", "-5", "--to", "0", "--json"],
    );
    let v: serde_json::Value = serde_json::from_slice(&toplc.stdout).unwrap();
    assert_eq!(v["construction"], "top_local_cohomology");
}

#[test]
fn reduce_emits_reparsable_document() {
    let dir = std::env::temp_dir().join(format!("stabcoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // Pad the xy example with a trivial block, reduce, re-validate.
    let padded = r#"
field = "QQ"
vars = [x, y]
f = "x*y"
A = [["x", "0"], ["0", "1"]]
B = [["y", "0"], ["0", "x*y"]]
s = [0, 0]
t = [1, 0]
"#;
    let input = dir.join("padded.mf");
    std::fs::write(&input, padded).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_stabcoh"))
        .arg("reduce")
        .arg(&input)
        .output()
        .unwrap();
    assert!(out.status.success());
    let reduced_path = dir.join("reduced.mf");
    std::fs::write(&reduced_path, &out.stdout).unwrap();
    let check = Command::new(env!("CARGO_BIN_EXE_stabcoh"))
        .arg("validate")
        .arg(&reduced_path)
        .output()
        .unwrap();
    assert_eq!(check.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("A = [[\"x\"]]"), "unexpected reduction:\n{text}");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn verify_additivity_with_two_files() {
    let out = Command::new(env!("CARGO_BIN_EXE_stabcoh"))
        .arg("verify")
        .arg(data_dir().join("xy_rx.mf"))
        .arg(data_dir().join("xy_rx.mf"))
        .args(["--suite", "additivity", "--from", "-10", "--to", "0"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // Two files only make sense for additivity.
    let out = Command::new(env!("CARGO_BIN_EXE_stabcoh"))
        .arg("verify")
        .arg(data_dir().join("xy_rx.mf"))
        .arg(data_dir().join("x2_k.mf"))
        .args(["--suite", "coincide"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_command_passes_on_examples() {
    for file in ["x2_k.mf", "xy_rx.mf", "x2y2_knoerrer.mf", "x3y3_gf7.mf"] {
        let out = run_on(file, &["oracle", "--from", "-12", "--to", "0"]);
        assert_eq!(out.status.code(), Some(0), "oracle failed on {file}");
    }
}

#[test]
fn input_errors_exit_2() {
    // Unreadable file.
    let out = run(&["validate", "/nonexistent/path.mf"]);
    assert_eq!(out.status.code(), Some(2));
    // Window cap.
    let out = run_on("xy_rx.mf", &["slc", "--from", "-520", "--to", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("cap"), "{msg}");
    // Raising the cap makes the same window legal.
    let out = run_on("xy_rx.mf", &["slc", "--from", "-520", "--to", "0", "--max-width", "600"]);
    assert_eq!(out.status.code(), Some(0));
    // Reversed window.
    let out = run_on("xy_rx.mf", &["slc", "--from", "0", "--to", "-5"]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown suite.
    let out = run_on("xy_rx.mf", &["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn default_window_is_dimension_aware() {
    // Without --from/--to the window is [-2n - 10, 0].
    let out = run_on("xy_rx.mf", &["slc", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["window"][0], -14);
    assert_eq!(v["window"][1], 0);
}
