//! End-to-end acceptance gate. Each test is one criterion and drives the
//! built binary the way a user would; the full healthy report is run once
//! and shared. Criterion 6 additionally exercises the bundle group law
//! in-process for higher degrees.

use std::process::{Command, Output};
use std::sync::OnceLock;

use serde_json::Value;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cremona"))
}

fn healthy() -> &'static (Value, String) {
    static RUN: OnceLock<(Value, String)> = OnceLock::new();
    RUN.get_or_init(|| {
        let out = binary().arg("report-all").output().expect("binary runs");
        assert!(
            out.status.success(),
            "healthy report-all must exit 0; stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let text = String::from_utf8(out.stdout).expect("utf-8 report");
        let json: Value = serde_json::from_str(&text).expect("JSON report");
        (json, text)
    })
}

fn suite<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["suites"]
        .as_array()
        .expect("suites array")
        .iter()
        .find(|s| s["suite"] == name)
        .unwrap_or_else(|| panic!("missing suite {name}"))
}

fn checks(suite: &Value) -> &Vec<Value> {
    suite["checks"].as_array().expect("checks array")
}

fn assert_all_pass(s: &Value) {
    for c in checks(s) {
        assert_eq!(
            c["status"], "pass",
            "check {} did not pass: {}",
            c["id"], c["detail"]
        );
    }
}

fn row<'a>(s: &'a Value, id: &str) -> &'a Value {
    checks(s)
        .iter()
        .find(|c| c["id"] == id)
        .unwrap_or_else(|| panic!("missing check {id}"))
}

fn assert_row_pass(s: &Value, id: &str) {
    assert_eq!(row(s, id)["status"], "pass", "check {id} failed");
}

fn has_prefixed(s: &Value, prefix: &str) -> bool {
    checks(s).iter().any(|c| c["id"].as_str().unwrap_or("").starts_with(prefix))
}

#[test]
fn criterion_01_isomorphism_suite() {
    let s = suite(&healthy().0, "isomorphism");
    assert_eq!(checks(s).len(), 3);
    assert_row_pass(s, "iso.round_trip_on_product");
    assert_row_pass(s, "iso.round_trip_on_quadric");
    assert_row_pass(s, "iso.intertwines_real_structures");
}

#[test]
fn criterion_02_degree6_relations_12_of_12() {
    let s = suite(&healthy().0, "relations");
    assert_eq!(checks(s).len(), 12, "exactly twelve printed relations");
    assert_all_pass(s);
    for id in ["X2_P2xP2", "X3Q", "X3F0", "X4"] {
        assert_row_pass(s, &format!("rel.{id}.alpha1_power"));
        assert_row_pass(s, &format!("rel.{id}.alpha2_power"));
        assert_row_pass(s, &format!("rel.{id}.braid_squared"));
    }
}

#[test]
fn criterion_03_picard_ranks_and_group_orders() {
    let s = suite(&healthy().0, "picard");
    assert_all_pass(s);
    for id in ["X2_P3xP1", "X2_P2xP2", "X3Q", "X3F0", "X4"] {
        assert_row_pass(s, &format!("picard.{id}.sigma_invariant_rank"));
    }
    assert_row_pass(s, "picard.X3F0.alpha2_rotation_order_6");
    for id in ["X2_P2xP2", "X3Q", "X3F0", "X4"] {
        assert_row_pass(s, &format!("picard.{id}.lattice_image_order"));
    }
}

#[test]
fn criterion_04_hexagon_vertex_orbits() {
    let s = suite(&healthy().0, "orbits");
    assert_eq!(checks(s).len(), 2);
    assert_row_pass(s, "orbits.X3F0.vertices_form_a_single_orbit");
    assert_row_pass(s, "orbits.X4.vertices_form_a_single_orbit");
}

#[test]
fn criterion_05_pair_family_suite() {
    let s = suite(&healthy().0, "family7");
    assert_all_pass(s);
    for prefix in ["n1", "n2"] {
        assert_row_pass(s, &format!("{prefix}.relation.phi_involution"));
        assert_row_pass(s, &format!("{prefix}.relation.phi_fibrewise"));
        assert_row_pass(s, &format!("{prefix}.base_locus.generic_point_defined"));
        assert_row_pass(s, &format!("{prefix}.quotient.phi_swaps_sections"));
        assert_row_pass(s, &format!("{prefix}.kernel.circle_scaling.identity_specialization"));
        assert_row_pass(s, &format!("{prefix}.kernel.nonunit_scaling_rejected"));
        assert_row_pass(s, &format!("{prefix}.lift.unit_scaling"));
        assert_row_pass(s, &format!("{prefix}.lift.nonunit_scaling_rejected"));
        assert_row_pass(s, &format!("{prefix}.cover.nonzero"));
        assert_row_pass(s, &format!("{prefix}.cover.fixed_up_to_cofactor"));
        assert_row_pass(s, &format!("{prefix}.cover.generic_fibre_splits"));
        assert!(has_prefixed(s, &format!("{prefix}.base_locus.point_")));
        assert!(has_prefixed(s, &format!("{prefix}.cover.tangent_over_")));
    }
    assert_row_pass(s, "n1.cover.equation_shape");
}

#[test]
fn criterion_06_fibre_family_suite_and_group_law() {
    let s = suite(&healthy().0, "family8");
    assert_all_pass(s);
    for prefix in ["mixed", "real"] {
        assert_row_pass(s, &format!("{prefix}.relation.phi_involution"));
        assert_row_pass(s, &format!("{prefix}.quotient.phi_swaps_sections"));
        assert_row_pass(s, &format!("{prefix}.kernel.fibre_scaling.fixes_named_curves"));
        assert_row_pass(s, &format!("{prefix}.kernel.fibre_scaling.fibrewise"));
        assert!(has_prefixed(s, &format!("{prefix}.base_locus.fibre_")));
    }
    let law = row(s, "law.random_pairs_match_composition");
    assert_eq!(law["detail"], "20/20");
    assert_row_pass(s, "law.scalar_matrices_act_trivially");

    // The report covers n=2; spot-check the law at higher degree in-process.
    use cremona::family::{fn_compose, fn_element, fn_to_map};
    use cremona::Rat;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let ri = |k: i64| Rat::from_integer(k.into());
    for n in [3u32, 4] {
        for _ in 0..5 {
            let mut draw = || {
                loop {
                    let mat = [
                        [ri(rng.gen_range(-2..=2)), ri(rng.gen_range(-2..=2))],
                        [ri(rng.gen_range(-2..=2)), ri(rng.gen_range(-2..=2))],
                    ];
                    let t: Vec<Rat> = (0..=n).map(|_| ri(rng.gen_range(-2..=2))).collect();
                    if let Ok(e) = fn_element(n, mat, t) {
                        return e;
                    }
                }
            };
            let g1 = draw();
            let g2 = draw();
            let lhs = fn_to_map(&fn_compose(&g2, &g1).unwrap()).unwrap();
            let rhs = fn_to_map(&g2).unwrap().after(&fn_to_map(&g1).unwrap()).unwrap();
            assert!(lhs.equal_on_variety(&rhs).unwrap(), "law mismatch at degree {n}");
        }
    }
}

#[test]
fn criterion_07_abelianization_suite() {
    let s = suite(&healthy().0, "abelian");
    assert_all_pass(s);
    assert_row_pass(s, "nu.formula_example");
    assert_row_pass(s, "nu.invariant_under_base_symmetries");
    assert_row_pass(s, "abelian.swap_involution_hits_e1");
    assert_row_pass(s, "abelian.kernel_maps_to_zero");
    assert_row_pass(s, "abelian.coincident_indices_cancel");
    assert_row_pass(s, "abelian.coincident_config_swap_is_zero");
    assert_row_pass(s, "abelian.literal_rule_diverges_on_phi");
    for k in 0..3 {
        assert_row_pass(s, &format!("abelian.fresh_index_case_{k}"));
    }
}

#[test]
fn criterion_08_conjugacy_suite() {
    let s = suite(&healthy().0, "conjugacy");
    assert_all_pass(s);
    assert_row_pass(s, "conj7.scaling_example");
    assert_row_pass(s, "conj7.inversion_example");
    assert_row_pass(s, "conj7.negative_example");
    assert_row_pass(s, "conj7.canonical_representatives");
    assert_row_pass(s, "conj8.translation_example");
    assert_row_pass(s, "conj8.cross_ratio_negative_example");
    assert_row_pass(s, "conj.reflexive_on_random_configs");
    let planted = row(s, "conj.planted_pairs_detected");
    assert_eq!(planted["detail"], "detected 100/100");
    assert_row_pass(s, "conj.symmetric_on_detected_pairs");
    assert_row_pass(s, "conj.nu_multiset_invariant");
    assert_row_pass(s, "conj.transitive_on_planted_chains");
}

#[test]
fn criterion_09_negative_controls() {
    let out: Output = binary()
        .args(["report-all", "--corrupt"])
        .output()
        .expect("binary runs");
    assert!(!out.status.success(), "corrupted run must exit nonzero");
    let json: Value =
        serde_json::from_slice(&out.stdout).expect("corrupted run still emits a JSON report");
    for s in json["suites"].as_array().expect("suites") {
        let has_fail = checks(s).iter().any(|c| c["status"] == "fail");
        assert!(has_fail, "suite {} missed its corrupted fixture", s["suite"]);
    }
}

#[test]
fn criterion_10_deterministic_report() {
    let first = &healthy().1;
    let out = binary().arg("report-all").output().expect("binary runs");
    assert!(out.status.success());
    let second = String::from_utf8(out.stdout).expect("utf-8 report");
    assert_eq!(first, &second, "report-all must be byte-identical across runs");
}
