use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn msgkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msgkit"))
        .args(args)
        .env_remove("MSGKIT_BUDGET")
        .output()
        .expect("spawn msgkit")
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Compares against `tests/golden/<name>`, writing the file on first use.
fn golden(name: &str, bytes: &[u8]) {
    let path: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    match fs::read(&path) {
        Ok(expected) => assert!(
            expected == bytes,
            "output differs from {}:\n{}",
            path.display(),
            String::from_utf8_lossy(bytes)
        ),
        Err(_) => {
            fs::create_dir_all(path.parent().unwrap()).unwrap();
            fs::write(&path, bytes).unwrap();
        }
    }
}

#[test]
fn rho_single_value() {
    let out = msgkit(&["rho", "--r", "2", "--d", "8", "--g", "5", "--k", "2", "--variant", "fixed", "--format", "plain"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "8\n");
}

#[test]
fn rho_canonical_grid() {
    let out = msgkit(&["rho", "--r", "2", "--d", "2g-2", "--g", "2..10", "--k", "0..5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["command"], "rho");
    assert_eq!(v["input"]["d"], "2g-2");
    let rows = v["result"].as_array().unwrap();
    assert_eq!(rows.len(), 9 * 6);
    for row in rows {
        let (g, k) = (row["g"].as_i64().unwrap(), row["k"].as_i64().unwrap());
        assert_eq!(row["d"].as_i64().unwrap(), 2 * g - 2);
        assert_eq!(row["rho_fixed"].as_i64().unwrap(), 3 * g - 3 - k * k);
        assert_eq!(row["rho_full"].as_i64().unwrap() - row["rho_fixed"].as_i64().unwrap(), g);
    }
}

#[test]
fn rho_csv_with_special_bound() {
    let out = msgkit(&[
        "rho", "--r", "2", "--d", "2g-2", "--g", "4", "--k", "3", "--m", "1", "--variant", "full", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    // rho_full = 13 - 3 * 3 = 4; special = 3g - 3 - C(4, 2) = 3.
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "r,d,k,g,m,rho_full,special_full\n2,6,3,4,1,4,3\n"
    );
}

#[test]
fn rho_input_errors_exit_2() {
    assert_eq!(msgkit(&["rho", "--r", "2", "--d", "8", "--k", "2"]).status.code(), Some(2));
    assert_eq!(msgkit(&["rho", "--r", "2", "--d", "8", "--k", "2", "--g", "1"]).status.code(), Some(2));
    assert_eq!(msgkit(&["rho", "--r", "2", "--d", "8x", "--k", "2", "--g", "3"]).status.code(), Some(2));
    assert_eq!(
        msgkit(&["rho", "--r", "2", "--d", "8", "--k", "2", "--g", "3", "--variant", "both"]).status.code(),
        Some(2)
    );
}

#[test]
fn check_point_degenerate() {
    let out = msgkit(&["check-point", "--input", &data("degenerate_point.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let r = &v["result"];
    assert_eq!(r["tangent_dim"], 3);
    assert_eq!(r["expected_dim"], 2);
    assert_eq!(r["phi_kernel"].as_array().unwrap().len(), 1);
    assert_eq!(r["pencil_degenerate"], true);
    let w = r["degenerate_witnesses"].as_array().unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(w[0]["lambda"], serde_json::json!([1, -1]));
    assert_eq!(w[0]["subspace"], serde_json::json!([[1, 0, 0, 0], [0, 1, 0, 0]]));
    assert_eq!(v["field"]["kind"], "rational");
    assert_eq!(v["input"]["n"], 4);
    golden("check_point_degenerate.json", &out.stdout);
}

#[test]
fn check_point_lagrangian() {
    let out = msgkit(&["check-point", "--input", &data("lagrangian_point.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = &stdout_json(&out)["result"];
    assert_eq!(r["tangent_dim"], r["expected_dim"]);
    assert_eq!(r["tangent_dim"], 3);
    assert!(r["phi_kernel"].as_array().unwrap().is_empty());
    assert!(r["pencil_degenerate"].is_null());
}

#[test]
fn check_point_bad_inputs_exit_2() {
    let out = msgkit(&["check-point", "--input", &data("not_isotropic_point.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("form 0") && err.contains("0 and 1"), "{err}");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"field\": ").unwrap();
    assert_eq!(msgkit(&["check-point", "--input", bad.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(msgkit(&["check-point", "--input", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = msgkit(&[
        "check-point",
        "--input",
        &data("degenerate_point.json"),
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["tangent_dim"], 3);
}

#[test]
fn normal_form_examples() {
    let out = msgkit(&["normal-form", "--input", &data("standard_form.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = &stdout_json(&out)["result"];
    assert_eq!(r["rank"], 4);
    assert_eq!(r["transform"], serde_json::json!([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]));

    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.json");
    fs::write(&zero, r#"{"field": {"kind": "prime", "p": 3}, "matrix": [[0, 0, 0], [0, 0, 0], [0, 0, 0]]}"#).unwrap();
    let out = msgkit(&["normal-form", "--input", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["result"]["rank"], 0);

    let out = msgkit(&["normal-form", "--input", &data("skew_6x6.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = &stdout_json(&out)["result"];
    assert_eq!(r["rank"], 6);
    assert_eq!(
        r["canonical"],
        serde_json::json!([
            [0, 1, 0, 0, 0, 0],
            [6, 0, 0, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 6, 0, 0, 0],
            [0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 6, 0]
        ])
    );

    assert_eq!(msgkit(&["normal-form", "--input", &data("symmetric.json")]).status.code(), Some(2));
}

#[test]
fn scan_single_form_has_no_excess() {
    let out = msgkit(&["scan", "--n", "6", "--k", "2", "--m", "1", "--p", "3", "--samples", "100", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &stdout_json(&out)["result"];
    assert_eq!(r["excess_dim_histogram"], serde_json::json!({"0": r["points"]}));
}

#[test]
fn scan_golden_and_worker_independence() {
    let base = ["scan", "--n", "4", "--k", "2", "--m", "2", "--p", "3", "--samples", "1000", "--seed", "0"];
    let one = msgkit(&[&base[..], &["--workers", "1"]].concat());
    let four = msgkit(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let v = stdout_json(&one);
    assert_eq!(v["seed"], 0);
    assert_eq!(v["input"]["samples"], 1000);
    let hist = v["result"]["excess_dim_histogram"].as_object().unwrap();
    assert!(hist.keys().any(|k| k != "0"), "no point with excess tangent dimension");
    golden("scan_n4_k2_m2_p3_seed0.json", &one.stdout);
}

#[test]
fn verify_golden_and_exit_codes() {
    let base = ["verify", "--n", "4", "--k", "2", "--p", "3", "--pairs", "20", "--scope", "exhaustive", "--seed", "0"];
    let one = msgkit(&[&base[..], &["--workers", "1"]].concat());
    let four = msgkit(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let r = &stdout_json(&one)["result"];
    assert!(r["mismatches"].as_array().unwrap().is_empty());
    assert_eq!(r["pairs"].as_array().unwrap().len(), 20);
    golden("verify_n4_k2_p3_pairs20_seed0.json", &one.stdout);
}

#[test]
fn verify_lines_pass_trivially() {
    let out = msgkit(&["verify", "--n", "4", "--k", "1", "--p", "3", "--pairs", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["result"]["points_checked"], 5 * 40);
}

#[test]
fn verify_sampled_scope() {
    let out = msgkit(&[
        "verify", "--n", "6", "--k", "2", "--p", "3", "--pairs", "4", "--scope", "sampled", "--samples", "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = &stdout_json(&out)["result"];
    assert_eq!(
        r["points_checked"].as_u64().unwrap() + r["sampler_failures"].as_u64().unwrap(),
        40
    );
}

#[test]
fn verify_injected_fault_exits_1() {
    let out = msgkit(&["verify", "--n", "4", "--k", "2", "--p", "3", "--pairs", "5", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    let r = &stdout_json(&out)["result"];
    let m = &r["mismatches"].as_array().unwrap()[0];
    assert_eq!(m["forms"].as_array().unwrap().len(), 2);
    assert_eq!(m["subspace"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_budget_exceeded_exits_2_before_work() {
    let out = Command::new(env!("CARGO_BIN_EXE_msgkit"))
        .args(["verify", "--n", "4", "--k", "2", "--p", "3", "--pairs", "100"])
        .env("MSGKIT_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("13000"));
    assert_eq!(
        msgkit(&["verify", "--n", "4", "--k", "2", "--field", "Q", "--pairs", "1"]).status.code(),
        Some(2)
    );
}
