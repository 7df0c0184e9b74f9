//! End-to-end tests of the `projave` binary: config loading, seed
//! overrides, report formats, exit codes, fixture validation and bitwise
//! reproducibility across separate process invocations.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn projave() -> Command {
    Command::new(env!("CARGO_BIN_EXE_projave"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("projave-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run_ok(output: &Output) {
    assert!(
        output.status.success(),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
}

fn constants_config(seed: u64) -> String {
    format!(
        r#"{{
  "command": "constants",
  "n_min": 3,
  "n_max": 5,
  "p_list": [1.0, 2.0],
  "quadrature": {{
    "radial_nodes": 32, "sphere_samples": 100, "grassmann_samples": 100,
    "seed": {seed}, "target_rel_error": 0.01
  }}
}}"#
    )
}

fn chain_config(seed: u64) -> String {
    format!(
        r#"{{
  "command": "chain",
  "profile": {{
    "variant": "affine_extremizer", "n": 3, "p": 2.0, "a": 1.0,
    "matrix": [[2.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.5]]
  }},
  "p": 2.0,
  "quadrature": {{
    "radial_nodes": 48, "sphere_samples": 4000, "grassmann_samples": 2000,
    "seed": {seed}, "target_rel_error": 0.05
  }}
}}"#
    )
}

#[test]
fn constants_runs_and_passes() {
    let config = write_temp("constants.json", &constants_config(7));
    let output = projave()
        .args(["constants", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    run_ok(&output);
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.starts_with("# projave-report-version: 1"));
    assert!(text.contains("index,case,value,std_error,reference,margin,status,note"));
    assert!(text.contains("anchor c(3,2)"));
    assert!(!text.contains(",fail,"));
}

#[test]
fn chain_reports_reproduce_bitwise_across_processes() {
    let config = write_temp("chain.json", &chain_config(99));
    let out_a = std::env::temp_dir().join("projave-cli-tests/chain_a.csv");
    let out_b = std::env::temp_dir().join("projave-cli-tests/chain_b.csv");
    for out in [&out_a, &out_b] {
        let output = projave()
            .args(["chain", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(out)
            .output()
            .unwrap();
        run_ok(&output);
    }
    let strip_header = |p: &Path| -> String {
        std::fs::read_to_string(p)
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip_header(&out_a), strip_header(&out_b));
}

#[test]
fn seed_override_changes_rows() {
    let config = write_temp("chain_seed.json", &chain_config(99));
    let base = projave()
        .args(["chain", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    let overridden = projave()
        .args(["chain", "--config"])
        .arg(&config)
        .args(["--seed", "100"])
        .output()
        .unwrap();
    run_ok(&base);
    run_ok(&overridden);
    assert_ne!(base.stdout, overridden.stdout);
    assert!(String::from_utf8_lossy(&overridden.stdout).contains("# seed: 100"));
}

#[test]
fn json_format_is_parseable() {
    let config = write_temp("constants_json.json", &constants_config(7));
    let output = projave()
        .args(["constants", "--config"])
        .arg(&config)
        .args(["--format", "json"])
        .output()
        .unwrap();
    run_ok(&output);
    let parsed: serde_json::Value =
        serde_json::from_slice(&output.stdout).expect("valid JSON report");
    assert_eq!(parsed["header"]["command"], "constants");
    assert!(parsed["rows"].as_array().unwrap().len() > 5);
}

#[test]
fn mismatched_subcommand_is_a_usage_error() {
    let config = write_temp("constants_mismatch.json", &constants_config(7));
    let output = projave()
        .args(["chain", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("does not match"));
}

#[test]
fn failing_rows_exit_one_but_keep_all_rows() {
    // p = 3.5 exceeds n = 3: that row errors, the rest still run
    let config = write_temp(
        "constants_fail.json",
        &constants_config(7).replace("[1.0, 2.0]", "[1.0, 3.5]"),
    );
    let output = projave()
        .args(["constants", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains(",fail,"));
    assert!(text.contains(",pass,"));
}

#[test]
fn validate_fixture_accepts_bundled_and_rejects_broken() {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in ["cube.poly", "simplex.poly", "cross.poly"] {
        let output = projave()
            .args(["validate-fixture", "--path"])
            .arg(fixtures.join(name))
            .output()
            .unwrap();
        run_ok(&output);
        assert!(String::from_utf8_lossy(&output.stdout).starts_with("valid:"));
    }
    let broken = write_temp(
        "broken.poly",
        "dim 3\nvertices 1\n1 0 0\nfacets 1\n1 0 0 2.0 0\n",
    );
    let output = projave()
        .args(["validate-fixture", "--path"])
        .arg(&broken)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("invalid fixture"));
}

#[test]
fn missing_seed_in_config_is_rejected() {
    let config = write_temp(
        "no_seed.json",
        &constants_config(7).replace("\"seed\": 7, ", ""),
    );
    let output = projave()
        .args(["constants", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}
