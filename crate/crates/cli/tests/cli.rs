//! End-to-end tests of the command-line interface: exit codes, JSON shape,
//! and determinism of the report stream.

use std::process::{Command, Output};

fn jtwist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jtwist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn expand_first_order_series() {
    let out = jtwist(&["expand", "fgz_inv", "--N", "1"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "1 ⊗ 1 + u*t·D ⊗ P + (u*t - t)·P ⊗ D"
    );

    let out = jtwist(&["expand", "f0_inv", "--N", "0"]);
    assert_eq!(stdout(&out).trim(), "1 ⊗ 1");
}

#[test]
fn expand_rejects_unknown_series() {
    let out = jtwist(&["expand", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_emits_one_json_object_per_check() {
    let out = jtwist(&["verify", "ode", "--N", "2"]);
    assert!(out.status.success());
    let lines: Vec<_> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    for line in &lines {
        let doc: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(doc["check"], "ode");
        assert_eq!(doc["pass"], true);
        assert!(doc["residual_terms"].as_array().unwrap().is_empty());
        assert!(doc["ms"].is_number());
    }
}

#[test]
fn verify_reports_are_deterministic_modulo_wall_time() {
    let strip_ms = |text: &str| -> Vec<serde_json::Value> {
        text.lines()
            .map(|line| {
                let mut doc: serde_json::Value = serde_json::from_str(line).unwrap();
                doc.as_object_mut().unwrap().remove("ms");
                doc
            })
            .collect()
    };
    let a = jtwist(&["verify", "cocycle", "--N", "3"]);
    let b = jtwist(&["verify", "cocycle", "--N", "3"]);
    assert_eq!(strip_ms(&stdout(&a)), strip_ms(&stdout(&b)));
}

#[test]
fn verify_exit_codes() {
    let ok = jtwist(&["verify", "counital", "--N", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = jtwist(&["verify", "counital", "--N", "2", "--corrupted"]);
    assert_eq!(bad.status.code(), Some(1));
    let usage = jtwist(&["verify", "not-a-suite"]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn verify_all_passes_and_orders_output_by_suite_name() {
    let out = jtwist(&["verify", "all", "--N", "2", "--samples", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let checks: Vec<String> = stdout(&out)
        .lines()
        .map(|line| {
            let doc: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(doc["pass"], true, "failing check in: {line}");
            doc["check"].as_str().unwrap().to_string()
        })
        .collect();
    let mut sorted = checks.clone();
    sorted.sort();
    assert_eq!(checks, sorted, "report stream not ordered by check name");
    assert!(checks.len() >= 13);
}

#[test]
fn verify_rejects_floating_point_parameters() {
    let out = jtwist(&["verify", "cocycle", "--u", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = jtwist(&["star", "--u", "1/2", "--kappa", "1.5", "--v", "1", "--k", "1", "--q", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = std::env::temp_dir().join("jtwist-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("config.json");
    std::fs::write(&path, r#"{"N": 2, "u": "1/3"}"#).unwrap();

    let out = jtwist(&["verify", "cocycle", "--config", path.to_str().unwrap()]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert_eq!(doc["params"]["N"], "2");

    let out = jtwist(&[
        "verify",
        "cocycle",
        "--config",
        path.to_str().unwrap(),
        "--N",
        "3",
    ]);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert_eq!(doc["params"]["N"], "3");
}

#[test]
fn star_plane_wave_output() {
    let out = jtwist(&["star", "--u", "1/2", "--kappa", "1", "--v", "1", "--k", "1", "--q", "1"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["momentum"], serde_json::json!(["8/5"]));
    assert_eq!(doc["prefactor"], "4/5");

    // u = 0 never produces a prefactor correction
    let out = jtwist(&["star", "--u", "0", "--kappa", "1", "--v", "1", "--k", "7/2", "--q", "-4"]);
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["prefactor"], "1");
}

#[test]
fn star_singular_denominator_is_a_usage_error() {
    let out = jtwist(&["star", "--u", "1/2", "--kappa", "1", "--v", "1", "--k", "2", "--q", "-2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("singular denominator"), "stderr: {err}");
}

#[test]
fn star_polynomials_roundtrip_json() {
    // 1 * (x0 x1 + 3 x1) = x0 x1 + 3 x1 by counitality
    let f = r#"{"terms":[{"exps":[0,0],"coeff":"1"}]}"#;
    let g = r#"{"terms":[{"exps":[1,1],"coeff":"1"},{"exps":[0,1],"coeff":"3"}]}"#;
    let out = jtwist(&[
        "star", "--u", "1/2", "--kappa", "1", "--v", "1,0", "--f", f, "--g", g,
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let terms = doc["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["exps"], serde_json::json!([0, 1]));
    assert_eq!(terms[0]["coeff"], "3");
    assert_eq!(terms[1]["exps"], serde_json::json!([1, 1]));
    assert_eq!(terms[1]["coeff"], "1");
}

#[test]
fn xhat_sources_agree() {
    let closed = jtwist(&["xhat", "--mu", "0", "--u", "1/4", "--source", "closed"]);
    let gz = jtwist(&["xhat", "--mu", "0", "--u", "1/4", "--source", "gz"]);
    let r = jtwist(&["xhat", "--mu", "0", "--u", "1/4", "--source", "r"]);
    assert_eq!(stdout(&closed), stdout(&gz));
    assert_eq!(stdout(&closed), stdout(&r));
}

#[test]
fn lemma_summary_shape() {
    let out = jtwist(&["lemma", "--max", "2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(doc["tuples_checked"], 36);
    assert_eq!(doc["failures"], 0);
}
