//! Exercises the CLI surface against the sample configs: exit codes, JSON
//! shapes, and the documented worked examples.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cremona"))
}

fn cfg(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn json_stdout(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn verify_family_4_passes() {
    let out = bin().args(["verify", "--family", "4"]).output().unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("pass"));
    assert!(text.contains("0 fail"));
}

#[test]
fn verify_family_7_with_config_passes() {
    let out = bin()
        .args(["verify", "--family", "7", "--config"])
        .arg(cfg("one-pair.json"))
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_family_7_json_output() {
    let out = bin()
        .args(["verify", "--family", "7", "--json", "--config"])
        .arg(cfg("one-pair.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let suite = json_stdout(&out);
    assert_eq!(suite["suite"], "family7");
    assert!(suite["checks"].as_array().unwrap().len() > 10);
}

#[test]
fn verify_rejects_real_point_config() {
    let out = bin()
        .args(["verify", "--family", "7", "--config"])
        .arg(cfg("real-point.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "a real point in a pair config is a usage error");
}

#[test]
fn verify_rejects_family_mismatch() {
    let out = bin()
        .args(["verify", "--family", "8", "--config"])
        .arg(cfg("one-pair.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_family_6_hirzebruch_index() {
    let out = bin()
        .args(["verify", "--family", "6", "--config"])
        .arg(cfg("hirzebruch-3.json"))
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn conjugate_detects_the_scaling_pair() {
    let out = bin()
        .args(["conjugate", "--family", "7", "--a"])
        .arg(cfg("one-pair.json"))
        .arg("--b")
        .arg(cfg("scaled-pair.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = json_stdout(&out);
    assert_eq!(v["conjugate"], true);
    assert_eq!(v["witness"]["lambda"], "2");
    assert_eq!(v["witness"]["inverted"], false);
}

#[test]
fn conjugate_rejects_inequivalent_pairs() {
    let out = bin()
        .args(["conjugate", "--family", "7", "--a"])
        .arg(cfg("one-pair.json"))
        .arg("--b")
        .arg(cfg("different-pair.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = json_stdout(&out);
    assert_eq!(v["conjugate"], false);
    assert!(v.get("witness").is_none());
}

#[test]
fn conjugate_detects_the_fibre_translation() {
    let out = bin()
        .args(["conjugate", "--family", "8", "--a"])
        .arg(cfg("mixed-fibres.json"))
        .arg("--b")
        .arg(cfg("translated-fibres.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = json_stdout(&out);
    assert_eq!(v["conjugate"], true, "witness: {v}");
}

#[test]
fn abelianize_swap_and_kernel() {
    let out = bin()
        .args(["abelianize", "--element", "phi", "--config"])
        .arg(cfg("one-pair.json"))
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json_stdout(&out)["support"], serde_json::json!(["1"]));

    let out = bin()
        .args(["abelianize", "--element", "circle_scaling", "--config"])
        .arg(cfg("one-pair.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json_stdout(&out)["support"], serde_json::json!([]));
}

#[test]
fn abelianize_literal_remark_diverges_on_phi() {
    let out = bin()
        .args(["abelianize", "--literal-remark", "--element", "phi", "--config"])
        .arg(cfg("one-pair.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    // phi acts fibrewise, so the printed coset rule sends it to zero while
    // the section-swap rule charges e_1.
    assert_eq!(json_stdout(&out)["support"], serde_json::json!([]));
}

#[test]
fn abelianize_mixed_fibre_config() {
    let out = bin()
        .args(["abelianize", "--element", "phi", "--config"])
        .arg(cfg("mixed-fibres.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json_stdout(&out)["support"], serde_json::json!(["2"]));
}

#[test]
fn abelianize_rejects_unknown_element() {
    let out = bin()
        .args(["abelianize", "--element", "nonsense", "--config"])
        .arg(cfg("one-pair.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn picard_reports_the_x4_lattice() {
    let out = bin().args(["picard", "--surface", "X4"]).output().unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = json_stdout(&out);
    assert_eq!(v["model"], "X4");
    assert_eq!(v["hexagon"].as_array().unwrap().len(), 6);
    assert_eq!(v["sigma"]["invariant_rank"], 4);
    assert!(v["generators"]["alpha1"]["class"].as_str().unwrap().contains("rotation"));
}

#[test]
fn picard_rejects_models_without_a_hexagon() {
    let out = bin().args(["picard", "--surface", "P2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn catalog_lists_models_curves_and_generators() {
    let out = bin().arg("catalog").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in
        ["P2", "Q31", "P1xP1_sigmaS", "P1xP1_sigmaC", "X2_P3xP1", "X2_P2xP2", "X3Q", "X3F0", "X4", "Fn(2)"]
    {
        assert!(text.contains(name), "catalog is missing {name}");
    }
    for curve in ["E_p", "f_p", "g_p", "eps_s", "E_n", "s_n"] {
        assert!(text.contains(curve), "catalog is missing curve {curve}");
    }
    assert!(text.contains("alpha1"));
    assert!(text.contains("circle_scaling"));
}
