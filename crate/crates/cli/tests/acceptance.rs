//! CLI acceptance: the generate -> solve -> check pipeline and the
//! exit-code contract, exercised against the built binary.

use std::path::Path;
use std::process::{Command, Output};

fn ccm(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccm"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("failed to launch ccm")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process terminated by signal")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

const IDENTITY_2: &str =
    r#"{"n":2,"re":[[1.0,0.0],[0.0,1.0]],"im":[[0.0,0.0],[0.0,0.0]],"label":"identity"}"#;
const KERNEL_2: &str =
    r#"{"n":2,"re":[[1.0,-1.0],[-1.0,1.0]],"im":[[0.0,0.0],[0.0,0.0]],"label":"kernel"}"#;
const NON_HERMITIAN_2: &str = r#"{"n":2,"re":[[1.0,2.0],[3.0,1.0]],"im":[[0.0,0.0],[0.0,0.0]]}"#;

#[test]
fn criterion_10_pipeline_and_corrupted_input() {
    let dir = tempfile::tempdir().unwrap();

    let generate = ccm(
        &[
            "generate",
            "--kind",
            "random-hermitian",
            "--n",
            "3",
            "--seed",
            "7",
            "--out",
            "a.json",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&generate), 0, "generate: {generate:?}");

    let solve = ccm(
        &[
            "solve",
            "--matrix",
            "a.json",
            "--seed",
            "1",
            "--grad-tol",
            "1e-6",
            "--out",
            "report.json",
            "--trace-csv",
            "trace.csv",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&solve), 0, "solve: {solve:?}");

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["status"], "converged");
    for field in [
        "instance",
        "config",
        "status",
        "cost_final",
        "grad_norm_final",
        "iterations",
        "wall_time_seconds",
        "trace",
    ] {
        assert!(!report[field].is_null(), "missing report field {field}");
    }
    let csv = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    assert!(csv.starts_with("iter,cost,grad_norm,step,backtracks\n"));

    let check = ccm(
        &["check", "--matrix", "a.json", "--trials", "20"],
        dir.path(),
    );
    assert_eq!(exit_code(&check), 0, "check: {}", stdout(&check));
    assert!(stdout(&check).contains("all checks passed"));

    // Negative leg: corrupted (non-Hermitian) input must exit with the
    // input-error code and write no report.
    std::fs::write(dir.path().join("bad.json"), NON_HERMITIAN_2).unwrap();
    let solve_bad = ccm(
        &[
            "solve",
            "--matrix",
            "bad.json",
            "--seed",
            "1",
            "--out",
            "bad_report.json",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&solve_bad), 4);
    assert!(!dir.path().join("bad_report.json").exists());
    let stderr = String::from_utf8_lossy(&solve_bad.stderr).into_owned();
    assert!(stderr.contains("Hermitian"), "stderr: {stderr}");

    println!(
        "[PASS] criterion 10: generate -> solve -> check pipeline exits 0, corrupted input exits 4"
    );
}

#[test]
fn exit_code_identity_converges_immediately() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("identity.json"), IDENTITY_2).unwrap();
    let solve = ccm(
        &[
            "solve",
            "--matrix",
            "identity.json",
            "--seed",
            "3",
            "--out",
            "report.json",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&solve), 0);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["iterations"], 0);
    assert!((report["cost_final"].as_f64().unwrap() - 2.0).abs() <= 1e-12);
}

#[test]
fn exit_code_max_iters_is_2() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("kernel.json"), KERNEL_2).unwrap();
    let solve = ccm(
        &[
            "solve",
            "--matrix",
            "kernel.json",
            "--seed",
            "5",
            "--max-iters",
            "1",
            "--grad-tol",
            "1e-300",
            "--out",
            "report.json",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&solve), 2);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["status"], "max_iters");
    // Schema-complete on failure statuses too.
    for field in [
        "instance",
        "config",
        "status",
        "cost_final",
        "grad_norm_final",
        "iterations",
        "wall_time_seconds",
        "trace",
    ] {
        assert!(!report[field].is_null(), "missing report field {field}");
    }
}

#[test]
fn exit_code_line_search_failed_is_3() {
    // An unreachable gradient tolerance drives the iterate to the cost's
    // rounding floor, where no strictly decreasing step exists.
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("kernel.json"), KERNEL_2).unwrap();
    let solve = ccm(
        &[
            "solve",
            "--matrix",
            "kernel.json",
            "--seed",
            "5",
            "--grad-tol",
            "1e-300",
            "--out",
            "report.json",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&solve), 3);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["status"], "line_search_failed");
    // The report is schema-complete on failures too.
    assert!(!report["trace"].as_array().unwrap().is_empty());
}

#[test]
fn exit_code_input_errors_are_4() {
    let dir = tempfile::tempdir().unwrap();

    let missing = ccm(
        &[
            "solve",
            "--matrix",
            "nope.json",
            "--seed",
            "1",
            "--out",
            "r.json",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&missing), 4);

    std::fs::write(dir.path().join("garbage.json"), "not json at all").unwrap();
    let garbage = ccm(
        &[
            "solve",
            "--matrix",
            "garbage.json",
            "--seed",
            "1",
            "--out",
            "r.json",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&garbage), 4);

    let bad_flag = ccm(&["solve", "--definitely-not-a-flag"], dir.path());
    assert_eq!(exit_code(&bad_flag), 4);

    let both_sources = ccm(
        &[
            "check", "--matrix", "a.json", "--random", "3", "--trials", "5",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&both_sources), 4);

    let bad_param = ccm(
        &[
            "generate",
            "--kind",
            "steering",
            "--n",
            "3",
            "--angles",
            "0.0",
            "--weights",
            "-1.0",
            "--out",
            "s.json",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&bad_param), 4);
}

#[test]
fn check_on_random_instance_passes_and_negative_control_fails() {
    let dir = tempfile::tempdir().unwrap();

    let clean = ccm(
        &["check", "--random", "5", "--seed", "1", "--trials", "20"],
        dir.path(),
    );
    assert_eq!(exit_code(&clean), 0, "{}", stdout(&clean));

    let single = ccm(
        &["check", "--random", "1", "--seed", "2", "--trials", "10"],
        dir.path(),
    );
    assert_eq!(exit_code(&single), 0, "n=1: {}", stdout(&single));

    let perturbed = ccm(
        &[
            "check",
            "--random",
            "4",
            "--seed",
            "3",
            "--trials",
            "5",
            "--perturb-modulus",
            "1.1",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&perturbed), 1);
    let out = stdout(&perturbed);
    assert!(
        out.contains("projection-tangency") && out.contains("FAIL"),
        "negative control output: {out}"
    );
}

#[test]
fn generate_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["one.json", "two.json"] {
        let generate = ccm(
            &[
                "generate",
                "--kind",
                "random-hermitian",
                "--n",
                "4",
                "--seed",
                "42",
                "--out",
                name,
            ],
            dir.path(),
        );
        assert_eq!(exit_code(&generate), 0);
    }
    let one = std::fs::read(dir.path().join("one.json")).unwrap();
    let two = std::fs::read(dir.path().join("two.json")).unwrap();
    assert_eq!(one, two);
}

#[test]
fn generated_steering_instance_checks_out() {
    let dir = tempfile::tempdir().unwrap();
    let generate = ccm(
        &[
            "generate",
            "--kind",
            "steering",
            "--n",
            "4",
            "--angles",
            "0,0.5236",
            "--weights",
            "1,1",
            "--out",
            "steer.json",
        ],
        dir.path(),
    );
    assert_eq!(exit_code(&generate), 0);
    let check = ccm(
        &["check", "--matrix", "steer.json", "--trials", "10"],
        dir.path(),
    );
    assert_eq!(exit_code(&check), 0, "{}", stdout(&check));
}
