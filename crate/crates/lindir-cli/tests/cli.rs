//! End-to-end tests of the `lindir` binary: exit codes, payload shape,
//! flag/config layering, and byte-level reproducibility of reports.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lindir"))
}

fn write_config(dir: &Path, body: &serde_json::Value) -> PathBuf {
    let path = dir.join("run.json");
    std::fs::write(&path, serde_json::to_vec_pretty(body).unwrap()).unwrap();
    path
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn sin_index_config() -> serde_json::Value {
    serde_json::json!({
        "fixture": {"name": "sin_linear", "params": {"c": [[1.0, 0.0]]}},
        "weight": "const:1",
        "direction": [[1.0, 0.0]],
        "operation": {
            "name": "estimate-index",
            "m_cap": 8,
            "grid": {"reach": 4.0, "bases": 4, "t_per_base": 2, "seed": 7}
        }
    })
}

#[test]
fn identical_configs_produce_identical_report_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), &sin_index_config());

    let first = bin().arg("--config").arg(&config).output().unwrap();
    let second = bin().arg("--config").arg(&config).output().unwrap();
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, second.stdout, "reports differ between runs");

    // Two file-bound runs produce identical files, and the computed result
    // matches the stdout runs (the config echo differs by the output path).
    let out_path = dir.path().join("report.json");
    let third = bin()
        .arg("--config")
        .arg(&config)
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(third.status.success());
    assert!(third.stdout.is_empty(), "--out should silence stdout");
    let file_bytes = std::fs::read(&out_path).unwrap();
    let fourth = bin()
        .arg("--config")
        .arg(&config)
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(fourth.status.success());
    assert_eq!(std::fs::read(&out_path).unwrap(), file_bytes);
    let from_file: serde_json::Value = serde_json::from_slice(&file_bytes).unwrap();
    let from_stdout: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(from_file["result"], from_stdout["result"]);
}

#[test]
fn the_payload_embeds_config_tool_and_result() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), &sin_index_config());
    let out = bin().arg("--config").arg(&config).output().unwrap();
    assert!(out.status.success());

    let payload = stdout_json(&out);
    assert_eq!(payload["schema_version"], 1);
    assert_eq!(payload["tool"]["name"], "lindir");
    assert!(payload["tool"]["version"].is_string());
    assert_eq!(payload["config"]["operation"]["name"], "estimate-index");
    assert_eq!(payload["result"]["name"], "estimate-index");
    assert_eq!(payload["result"]["estimate"]["global"]["status"], "bounded");
    assert_eq!(payload["result"]["estimate"]["global"]["n"], 1);
}

#[test]
fn subcommands_replace_the_configured_operation() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), &sin_index_config());
    let out = bin()
        .arg("--config")
        .arg(&config)
        .args(["zeros", "--radius", "4.5"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let payload = stdout_json(&out);
    assert_eq!(payload["result"]["name"], "zeros");
    // sin has zeros at 0 and +-pi inside radius 4.5.
    assert_eq!(payload["result"]["zeros"]["zeros"].as_array().unwrap().len(), 3);
}

#[test]
fn flags_build_a_run_without_any_config_file() {
    let out = bin()
        .args([
            "--fixture",
            "sin_linear",
            "--fixture-params",
            r#"{"c": [[1.0, 0.0]]}"#,
            "--weight",
            "const:1",
            "--direction",
            "1",
            "zeros",
            "--radius",
            "7",
            "--count-t0",
            "0",
            "--count-r",
            "6.5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let payload = stdout_json(&out);
    assert_eq!(payload["result"]["count"]["count"], 5);
}

#[test]
fn malformed_configs_exit_with_the_usage_code() {
    let dir = tempfile::tempdir().unwrap();

    // Unknown field: rejected at parse time with its path.
    let mut bad = sin_index_config();
    bad["operation"]["m_xap"] = serde_json::json!(8);
    let path = write_config(dir.path(), &bad);
    let out = bin().arg("--config").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("m_xap"), "stderr: {stderr}");

    // Bad value: rejected at validation time with its path.
    let mut bad = sin_index_config();
    bad["operation"]["grid"]["reach"] = serde_json::json!(-1.0);
    let path = write_config(dir.path(), &bad);
    let out = bin().arg("--config").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("operation.grid"), "stderr: {stderr}");

    // Missing requirement: the operation needs a weight.
    let mut bad = sin_index_config();
    bad.as_object_mut().unwrap().remove("weight");
    let path = write_config(dir.path(), &bad);
    let out = bin().arg("--config").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("weight"), "stderr: {stderr}");

    // Flag misuse.
    let out = bin()
        .args(["--fixture-params", "{}", "list-fixtures"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // No subcommand and no config.
    let out = bin().output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unreadable_config_exits_with_the_io_code() {
    let out = bin()
        .args(["--config", "/nonexistent/run.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn runtime_failures_exit_three_with_a_structured_payload() {
    // Count disk beyond the searched radius: valid config, failing run.
    let out = bin()
        .args([
            "--fixture",
            "sin_linear",
            "--fixture-params",
            r#"{"c": [[1.0, 0.0]]}"#,
            "--weight",
            "const:1",
            "--direction",
            "1",
            "zeros",
            "--radius",
            "2",
            "--count-t0",
            "0",
            "--count-r",
            "9",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let payload = stdout_json(&out);
    assert_eq!(payload["error"]["kind"], "input");
    assert!(payload["error"]["message"].as_str().unwrap().contains("radius"));
    assert_eq!(payload["config"]["operation"]["name"], "zeros");
}

#[test]
fn list_fixtures_includes_builtins_and_the_configured_custom_entry() {
    let out = bin().arg("list-fixtures").output().unwrap();
    assert!(out.status.success());
    let payload = stdout_json(&out);
    let names: Vec<&str> = payload["result"]["fixtures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["name"].as_str().unwrap())
        .collect();
    for expected in ["exp_linear", "sin_linear", "gauss_square"] {
        assert!(names.contains(&expected), "missing {expected} in {names:?}");
    }

    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        &serde_json::json!({
            "fixture": {"name": "polynomial", "params": {"n": 1, "terms": [
                {"powers": [2], "coeff": [1.0, 0.0]}
            ]}},
            "operation": {"name": "list-fixtures"}
        }),
    );
    let out = bin().arg("--config").arg(&config).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let payload = stdout_json(&out);
    let fixtures = payload["result"]["fixtures"].as_array().unwrap();
    assert!(
        fixtures.iter().any(|f| f["name"] == "polynomial"),
        "custom fixture missing from {fixtures:?}"
    );
}

#[test]
fn csv_tables_are_written_next_to_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), &sin_index_config());
    let csv_dir = dir.path().join("tables");
    let out = bin()
        .arg("--config")
        .arg(&config)
        .arg("--csv-dir")
        .arg(&csv_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let per_point = std::fs::read_to_string(csv_dir.join("per_point.csv")).unwrap();
    let mut lines = per_point.lines();
    assert_eq!(
        lines.next().unwrap(),
        "direction,base_index,t_re,t_im,status,n",
        "unexpected header"
    );
    assert!(lines.next().is_some(), "table has no data rows");
}

#[test]
fn the_seed_flag_changes_sampled_grids() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), &sin_index_config());
    let base = bin().arg("--config").arg(&config).output().unwrap();
    let reseeded = bin()
        .arg("--config")
        .arg(&config)
        .args(["--seed", "99"])
        .output()
        .unwrap();
    assert!(base.status.success() && reseeded.status.success());
    let a = stdout_json(&base);
    let b = stdout_json(&reseeded);
    assert_eq!(a["config"]["operation"]["grid"]["seed"], 7);
    assert_eq!(b["config"]["operation"]["grid"]["seed"], 99);
    // Same verdict from different samples.
    assert_eq!(
        a["result"]["estimate"]["global"],
        b["result"]["estimate"]["global"]
    );
    assert_ne!(
        a["result"]["estimate"]["per_point"],
        b["result"]["estimate"]["per_point"]
    );
}

#[test]
fn version_flag_prints_tool_identity() {
    let out = bin().arg("--version").output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("lindir"));
}
