//! Structured pass/fail records for the builtin verification suites.
//!
//! Output is deterministic: suites and checks come in fixed order, every
//! randomized check uses a fixed seed, and rationals are printed as `p/q`
//! strings.  The `corrupt` flag swaps one deliberately broken fixture into
//! each suite; a healthy pipeline must then report failures.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abelian::{abel_image, fresh_index, nu, AbImage};
use crate::catalog;
use crate::config::FamilyConfig;
use crate::conjugacy::{canonical_pairs, conjugate_fibre_sets, conjugate_pairs, Mobius, ScaleWitness};
use crate::error::Result;
use crate::family::{fn_compose, fn_element, fn_identity, fn_to_map, Family, FnElement};
use crate::fixtures;
use crate::gauss::{GaussRat, P1Pt, Rat};
use crate::map::{RationalMap, SemilinearMap, Verdict};
use crate::model::{ModelId, SurfaceModel};
use crate::param::{circle_system, circle_value};
use crate::picard;
use crate::poly::MultiPoly;

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub claim: String,
    pub status: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FullReport {
    pub suites: Vec<SuiteReport>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == "pass")
    }
}

impl FullReport {
    pub fn passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.inconclusive == 0
    }

    pub fn to_json(&self) -> String {
        // serde_json maps preserve insertion order of these plain structs;
        // all containers underneath are ordered, so the bytes are stable.
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

fn record(id: impl Into<String>, claim: impl Into<String>, v: &Verdict) -> CheckRecord {
    let (status, detail) = match v {
        Verdict::Holds => ("pass", String::new()),
        Verdict::Fails(why) => ("fail", why.join("; ")),
        Verdict::Inconclusive => ("inconclusive", String::new()),
    };
    CheckRecord { id: id.into(), claim: claim.into(), status: status.into(), detail }
}

fn bool_record(id: impl Into<String>, claim: impl Into<String>, ok: bool, why: &str) -> CheckRecord {
    let v = if ok { Verdict::Holds } else { Verdict::Fails(vec![why.to_string()]) };
    record(id, claim, &v)
}

/// Runs a fallible boolean check; an error is a failure with the error text
/// in the detail.  Corrupted fixtures often fail by erroring rather than by
/// returning false, and both must count.
fn try_record(
    id: impl Into<String>,
    claim: impl Into<String>,
    why: &str,
    f: impl FnOnce() -> Result<bool>,
) -> CheckRecord {
    let v = match f() {
        Ok(true) => Verdict::Holds,
        Ok(false) => Verdict::Fails(vec![why.to_string()]),
        Err(e) => Verdict::Fails(vec![format!("{why}: {e}")]),
    };
    record(id, claim, &v)
}

fn humanize(id: &str) -> String {
    id.replace(['.', '_'], " ")
}

fn fold(checks: &mut Vec<CheckRecord>, prefix: &str, rows: Vec<(String, Verdict)>) {
    for (id, v) in rows {
        let claim = humanize(&id);
        checks.push(record(format!("{prefix}{id}"), claim, &v));
    }
}

fn pow(f: &RationalMap, k: u32) -> Result<RationalMap> {
    let mut acc = f.clone();
    for _ in 1..k {
        acc = acc.after(f)?;
    }
    Ok(acc)
}

fn is_identity(f: &RationalMap) -> Result<bool> {
    f.equal_on_variety(&RationalMap::identity(f.source())?)
}

/// All rows for one family instance: relations, exact sequence layers, base
/// locus, lifts, and for the conic bundle families the fixed double cover of
/// the marked involution.
pub fn family_rows(fam: &Family) -> Result<Vec<CheckRecord>> {
    let mut checks = Vec::new();
    checks.push(CheckRecord {
        id: "structure.identity_component".into(),
        claim: "identity component of the family".into(),
        status: "pass".into(),
        detail: fam.identity_component(),
    });
    checks.push(CheckRecord {
        id: "structure.component_group".into(),
        claim: "component group of the family".into(),
        status: "pass".into(),
        detail: fam.component_group(),
    });
    fold(&mut checks, "", fam.verify_relations()?);
    fold(&mut checks, "", fam.verify_exact_sequence()?);
    fold(&mut checks, "", fam.indeterminacy_checks()?);
    fold(&mut checks, "", fam.lift_checks()?);
    match fam {
        Family::Pairs(p) => {
            let dc = p.fixed_double_cover(p.phi())?;
            fold(&mut checks, "", dc.checks);
            let support = p.abelian_support(p.phi(), false)?;
            checks.push(bool_record(
                "abelian.swap_charges_all_invariants",
                "the section swap maps to the full invariant sum",
                support == expected_support(&p.invariants()?),
                "wrong abelianization support",
            ));
        }
        Family::Fibres(f) => {
            let dc = f.fixed_double_cover(f.phi())?;
            fold(&mut checks, "", dc.checks);
            let support = f.abelian_support(f.phi(), false)?;
            checks.push(bool_record(
                "abelian.swap_charges_all_invariants",
                "the section swap maps to the full invariant sum",
                support == expected_support(&f.invariants()?),
                "wrong abelianization support",
            ));
        }
        _ => {}
    }
    Ok(checks)
}

fn expected_support(invariants: &[Rat]) -> AbImage {
    invariants
        .iter()
        .fold(AbImage::zero(), |acc, v| acc.add(&AbImage::singleton(v.clone())))
}

/// The verification suite for one family configuration, as run by the CLI.
pub fn family_suite(cfg: &FamilyConfig) -> Result<SuiteReport> {
    let fam = Family::build(cfg)?;
    Ok(SuiteReport { suite: format!("family{}", fam.index()), checks: family_rows(&fam)? })
}

fn suite_models(corrupt: bool) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let ids = ModelId::catalog();
    checks.push(bool_record(
        "models.count",
        "the builtin catalog lists ten models",
        ids.len() == 10,
        "wrong model count",
    ));
    for id in &ids {
        let m = catalog::model(*id)?;
        checks.push(try_record(
            format!("models.{id}.sigma_involution"),
            "the real structure squares to the identity",
            "sigma is not an involution",
            || m.sigma.after(&m.sigma)?.is_identity(),
        ));
        checks.push(try_record(
            format!("models.{id}.sigma_curve_arrows"),
            "the real structure permutes the named curves as catalogued",
            "sigma moves a curve off its catalogued image",
            || sigma_arrows_hold(&m),
        ));
        let corrupt_here = corrupt && *id == ModelId::X4;
        checks.push(try_record(
            format!("models.{id}.generators_are_real_automorphisms"),
            "every catalogued generator preserves the equations and the real structure",
            "a generator is broken",
            || {
                for (name, g) in &m.generators {
                    let g = if corrupt_here && name == "alpha1" {
                        fixtures::sign_flipped(g)
                    } else {
                        g.clone()
                    };
                    g.validated()?;
                    if !g.is_real()? {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        ));
    }
    Ok(SuiteReport { suite: "models".into(), checks })
}

fn sigma_arrows_hold(m: &SurfaceModel) -> Result<bool> {
    for (src, dst) in &m.sigma_arrows {
        match m.sigma.image_of_curve(m.curve(src)?)? {
            crate::map::CurveImage::Named(n) if &n == dst => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

fn suite_isomorphism(corrupt: bool) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let q2p = if corrupt {
        fixtures::sign_flipped(&catalog::quadric_to_product()?)
    } else {
        catalog::quadric_to_product()?
    };
    let p2q = catalog::product_to_quadric()?;
    checks.push(try_record(
        "iso.round_trip_on_product",
        "quadric-to-product composed with its inverse is the identity of the product",
        "round trip is not the identity",
        || is_identity(&q2p.after(&p2q)?),
    ));
    checks.push(try_record(
        "iso.round_trip_on_quadric",
        "product-to-quadric composed with its inverse is the identity of the quadric",
        "round trip is not the identity",
        || is_identity(&p2q.after(&q2p)?),
    ));
    checks.push(try_record(
        "iso.intertwines_real_structures",
        "the isomorphism carries the quadric's real structure to the product's",
        "real structures are not intertwined",
        || {
            let q = catalog::model(ModelId::Q31)?;
            let p = catalog::model(ModelId::P1xP1SigmaS)?;
            let f = SemilinearMap::holomorphic(q2p.clone());
            f.after(&q.sigma)?.equal(&p.sigma.after(&f)?)
        },
    ));
    Ok(SuiteReport { suite: "isomorphism".into(), checks })
}

fn suite_relations(corrupt: bool) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    // (model, alpha1 exponent, alpha2 exponent, apply alpha2 before alpha1
    // in the braid) for the four hexagon surfaces.
    let table = [
        (ModelId::X2P2xP2, 2u32, 2u32, false),
        (ModelId::X3Q, 2, 2, false),
        (ModelId::X3F0, 2, 6, true),
        (ModelId::X4, 6, 2, false),
    ];
    for (id, e1, e2, braid_a2_first) in table {
        let m = catalog::model(id)?;
        let a1 = m.generator("alpha1")?.clone();
        let a2 = if corrupt && id == ModelId::X4 {
            fixtures::sign_flipped(m.generator("alpha2")?)
        } else {
            m.generator("alpha2")?.clone()
        };
        checks.push(try_record(
            format!("rel.{id}.alpha1_power"),
            format!("alpha1^{e1} is the identity"),
            "relation fails",
            || is_identity(&pow(&a1, e1)?),
        ));
        checks.push(try_record(
            format!("rel.{id}.alpha2_power"),
            format!("alpha2^{e2} is the identity"),
            "relation fails",
            || is_identity(&pow(&a2, e2)?),
        ));
        let braid = if braid_a2_first { a1.after(&a2)? } else { a2.after(&a1)? };
        checks.push(try_record(
            format!("rel.{id}.braid_squared"),
            "the product of the two generators is an involution",
            "relation fails",
            || is_identity(&pow(&braid, 2)?),
        ));
    }
    Ok(SuiteReport { suite: "relations".into(), checks })
}

fn suite_picard(corrupt: bool) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let ranks = [
        (ModelId::X2P3xP1, 2usize),
        (ModelId::X2P2xP2, 2),
        (ModelId::X3Q, 3),
        (ModelId::X3F0, 3),
        (ModelId::X4, 4),
    ];
    for (id, want) in ranks {
        let m = catalog::model(id)?;
        checks.push(try_record(
            format!("picard.{id}.sigma_invariant_rank"),
            format!("the real structure fixes a rank {want} sublattice"),
            "wrong invariant rank",
            || Ok(picard::sigma_action(&m)?.invariant_rank() == want),
        ));
    }
    checks.push(try_record(
        "picard.X3F0.alpha2_rotation_order_6",
        "alpha2 rotates the hexagon by one step",
        "not an order 6 rotation",
        || {
            let m = catalog::model(ModelId::X3F0)?;
            let g = if corrupt {
                fixtures::sign_flipped(m.generator("alpha2")?)
            } else {
                m.generator("alpha2")?.clone()
            };
            let act = picard::automorphism_action(&m, &g)?;
            Ok(matches!(
                picard::classify_dihedral(&act)?,
                picard::DihedralClass::Rotation { order: 6 }
            ))
        },
    ));
    let orders = [
        (ModelId::X2P2xP2, 4usize),
        (ModelId::X3Q, 4),
        (ModelId::X3F0, 12),
        (ModelId::X4, 12),
    ];
    for (id, want) in orders {
        let m = catalog::model(id)?;
        checks.push(try_record(
            format!("picard.{id}.lattice_image_order"),
            format!("the generators give a hexagon symmetry group of order {want}"),
            "wrong group order",
            || {
                let a1 = picard::automorphism_action(&m, m.generator("alpha1")?)?;
                let a2 = picard::automorphism_action(&m, m.generator("alpha2")?)?;
                Ok(picard::generated_perms(&[a1, a2]).len() == want)
            },
        ));
    }
    Ok(SuiteReport { suite: "picard".into(), checks })
}

fn suite_orbits(corrupt: bool) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for id in [ModelId::X3F0, ModelId::X4] {
        let m = catalog::model(id)?;
        checks.push(try_record(
            format!("orbits.{id}.vertices_form_a_single_orbit"),
            "the six hexagon vertices form one orbit with no smaller invariant subset",
            "orbit structure is wrong",
            || {
                let a1 = if corrupt && id == ModelId::X4 {
                    fixtures::sign_flipped(m.generator("alpha1")?)
                } else {
                    m.generator("alpha1")?.clone()
                };
                let gens = vec![a1, m.generator("alpha2")?.clone()];
                let verts = picard::vertex_points(&m)?;
                for k in 0..verts.len() {
                    if picard::point_orbit(&gens, &verts, k)?.len() != verts.len() {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        ));
    }
    Ok(SuiteReport { suite: "orbits".into(), checks })
}

fn pair_cfg(pairs: &[GaussRat]) -> FamilyConfig {
    let mut cfg = FamilyConfig::bare(7);
    cfg.pairs = pairs.to_vec();
    cfg
}

fn fibre_cfg(reals: &[Rat], pairs: &[GaussRat]) -> FamilyConfig {
    let mut cfg = FamilyConfig::bare(8);
    cfg.reals = reals.to_vec();
    cfg.pairs = pairs.to_vec();
    cfg
}

fn gi(a: i64, b: i64) -> GaussRat {
    GaussRat::from_parts(a, b)
}

fn ri(k: i64) -> Rat {
    Rat::from_integer(k.into())
}

fn suite_family7(corrupt: bool) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let one = Family::build(&pair_cfg(&[gi(1, 1)]))?;
    for c in family_rows(&one)? {
        checks.push(CheckRecord { id: format!("n1.{}", c.id), ..c });
    }
    // Frozen shape of the fixed curve of the plain involution, rebuilt here
    // from scratch as an independent oracle.
    if let Family::Pairs(p) = &one {
        let dc = p.fixed_double_cover(p.phi())?;
        let blocks = catalog::model(ModelId::P1xP1SigmaC)?.blocks.clone();
        let v = |n: &str| MultiPoly::var(&blocks, n);
        let z = gi(1, 1);
        let p_poly = v("u0")?.sub(&v("u1")?.mul_scalar(&z));
        let p_bar = v("u0")?.sub(&v("u1")?.mul_scalar(&z.conj()));
        let expected = v("u0")?
            .mul(&v("v0")?.pow(2))
            .mul(&p_poly)
            .sub(&v("u1")?.mul(&v("v1")?.pow(2)).mul(&p_bar));
        checks.push(bool_record(
            "n1.cover.equation_shape",
            "the fixed curve has the catalogued bidegree (1,2) equation",
            expected.sub(&dc.equation).is_zero(),
            "unexpected fixed curve equation",
        ));
        if corrupt {
            let bad = fixtures::swapped_components(p.phi());
            checks.push(try_record(
                "n1.negative_control.involution",
                "a corrupted involution still squares to the identity",
                "corrupted fixture detected",
                || is_identity(&bad.after(&bad)?),
            ));
        }
    }
    let two = Family::build(&pair_cfg(&[gi(1, 1), gi(2, 1)]))?;
    for c in family_rows(&two)? {
        checks.push(CheckRecord { id: format!("n2.{}", c.id), ..c });
    }
    Ok(SuiteReport { suite: "family7".into(), checks })
}

fn suite_family8(corrupt: bool) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let mixed = Family::build(&fibre_cfg(&[ri(0), ri(1)], &[gi(2, 1)]))?;
    for c in family_rows(&mixed)? {
        checks.push(CheckRecord { id: format!("mixed.{}", c.id), ..c });
    }
    let all_real = Family::build(&fibre_cfg(&[ri(0), ri(1), ri(2), ri(3)], &[]))?;
    for c in family_rows(&all_real)? {
        checks.push(CheckRecord { id: format!("real.{}", c.id), ..c });
    }
    if let Family::Fibres(f) = &all_real {
        let dc = f.fixed_double_cover(f.phi())?;
        let blocks = catalog::model(ModelId::Fn(2))?.blocks.clone();
        let v = |n: &str| MultiPoly::var(&blocks, n);
        let u = v("u")?;
        let vv = v("v")?;
        let mut p_poly = vv.clone();
        for k in [1i64, 2, 3] {
            p_poly = p_poly.mul(&vv.sub(&u.mul_scalar(&GaussRat::from_int(k))));
        }
        let expected = v("x1")?.pow(2).mul(&p_poly).sub(&v("x0")?.pow(2).mul(&u.pow(4)));
        checks.push(bool_record(
            "real.cover.equation_shape",
            "the fixed curve of the plain involution has the catalogued equation",
            expected.sub(&dc.equation).is_zero(),
            "unexpected fixed curve equation",
        ));
        if corrupt {
            let bad = fixtures::swapped_components(f.phi());
            checks.push(try_record(
                "real.negative_control.involution",
                "a corrupted involution still squares to the identity",
                "corrupted fixture detected",
                || is_identity(&bad.after(&bad)?),
            ));
        }
    }
    // Group law against map composition on seeded random elements, plus the
    // scalar matrix identification.
    let mut rng = ChaCha8Rng::seed_from_u64(0x6c61_7721);
    let mut law_ok = 0usize;
    let mut first_bad = String::new();
    for _ in 0..20 {
        let g1 = random_fn_element(&mut rng, 2);
        let g2 = random_fn_element(&mut rng, 2);
        let lhs = fn_to_map(&fn_compose(&g2, &g1)?)?;
        let rhs = fn_to_map(&g2)?.after(&fn_to_map(&g1)?)?;
        if lhs.equal_on_variety(&rhs)? {
            law_ok += 1;
        } else if first_bad.is_empty() {
            first_bad = format!("law mismatch at {g1:?}, {g2:?}");
        }
    }
    let mut law = bool_record(
        "law.random_pairs_match_composition",
        "the bundle group law agrees with rational map composition on 20 seeded pairs",
        law_ok == 20,
        &first_bad,
    );
    if law.status == "pass" {
        law.detail = "20/20".into();
    }
    checks.push(law);
    checks.push(try_record(
        "law.scalar_matrices_act_trivially",
        "minus the identity matrix gives the identity element and the identity map",
        "scalar identification fails",
        || {
            let neg = fn_element(2, [[-ri(1), ri(0)], [ri(0), -ri(1)]], vec![ri(0); 3])?;
            Ok(neg == fn_identity(2) && is_identity(&fn_to_map(&neg)?)?)
        },
    ));
    Ok(SuiteReport { suite: "family8".into(), checks })
}

fn random_fn_element(rng: &mut impl Rng, n: u32) -> FnElement {
    loop {
        let mat = [
            [ri(rng.gen_range(-3..=3)), ri(rng.gen_range(-3..=3))],
            [ri(rng.gen_range(-3..=3)), ri(rng.gen_range(-3..=3))],
        ];
        let t: Vec<Rat> = (0..=n).map(|_| ri(rng.gen_range(-3..=3))).collect();
        if let Ok(e) = fn_element(n, mat, t) {
            return e;
        }
    }
}

fn rand_rat(rng: &mut impl Rng, lo: i64, hi: i64, max_den: i64) -> Rat {
    Rat::new(rng.gen_range(lo..=hi).into(), rng.gen_range(1..=max_den).into())
}

fn rand_upper(rng: &mut impl Rng) -> GaussRat {
    GaussRat::new(rand_rat(rng, -4, 4, 2), rand_rat(rng, 1, 4, 2))
}

fn upper(z: &GaussRat) -> GaussRat {
    if z.im.is_negative() {
        z.conj()
    } else {
        z.clone()
    }
}

fn normalized_pairs(pts: &[GaussRat]) -> Vec<GaussRat> {
    let mut v: Vec<GaussRat> = pts.iter().map(upper).collect();
    v.sort();
    v.dedup();
    v
}

fn rand_config7(rng: &mut impl Rng) -> Vec<GaussRat> {
    loop {
        let n = rng.gen_range(1..=3);
        let pts: Vec<GaussRat> = (0..n).map(|_| rand_upper(rng)).collect();
        let norm = normalized_pairs(&pts);
        if norm.len() == pts.len() {
            return norm;
        }
    }
}

fn suite_abelian(corrupt: bool) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    checks.push(try_record(
        "nu.formula_example",
        "nu of [2+3i : 1] is 2/3",
        "wrong value",
        || Ok(nu(&P1Pt::Finite(gi(2, 3)))? == Rat::new(2.into(), 3.into())),
    ));
    checks.push(try_record(
        "nu.imaginary_axis",
        "nu of [i : 1] is 0",
        "wrong value",
        || Ok(nu(&P1Pt::Finite(gi(0, 1)))?.is_zero()),
    ));
    checks.push(try_record(
        "nu.normalizes_coordinates",
        "nu of [2+2i : 2] is 1",
        "wrong value",
        || {
            let pt = P1Pt::from_coords(&gi(2, 2), &GaussRat::from_int(2))?;
            Ok(nu(&pt)?.is_one())
        },
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e75_5f21);
    let mut inv_ok = 0usize;
    for _ in 0..50 {
        let z = rand_upper(&mut rng);
        let lam = rand_rat(&mut rng, 1, 9, 4);
        let scaled = z.scale(&lam);
        let inverted = GaussRat::from_rat(lam.clone()).div(&z)?;
        let base = nu(&P1Pt::Finite(z.clone()))?;
        if nu(&P1Pt::Finite(upper(&scaled)))? == base && nu(&P1Pt::Finite(upper(&inverted)))? == base
        {
            inv_ok += 1;
        }
    }
    checks.push(bool_record(
        "nu.invariant_under_base_symmetries",
        "nu is unchanged by positive scalings and inversions on 50 seeded cases",
        inv_ok == 50,
        "an invariance case failed",
    ));

    let fam = Family::build(&pair_cfg(&[gi(1, 1)]))?;
    if let Family::Pairs(p) = &fam {
        let phi = if corrupt {
            fixtures::swapped_last_block(p.phi())
        } else {
            p.phi().clone()
        };
        checks.push(try_record(
            "abelian.swap_involution_hits_e1",
            "the section swap of the single-pair family maps to e_1",
            "wrong image",
            || Ok(p.abelian_support(&phi, false)? == AbImage::singleton(ri(1))),
        ));
        let kernel = p.beta(&circle_value(&circle_system("a"), "a")?)?;
        checks.push(try_record(
            "abelian.kernel_maps_to_zero",
            "circle scalings map to zero",
            "kernel image is not zero",
            || Ok(p.abelian_support(&kernel, false)?.is_zero()),
        ));
        checks.push(try_record(
            "abelian.literal_rule_diverges_on_phi",
            "the fibrewise-coset reading disagrees with the swap reading on phi (flagged)",
            "expected divergence is absent",
            || p.abelian_divergence(p.phi()),
        ));
    }
    checks.push(bool_record(
        "abelian.coincident_indices_cancel",
        "two pairs with equal nu produce the zero image under the swap",
        abel_image(&[ri(1), ri(1)], true).is_zero(),
        "no cancellation",
    ));
    let coincident = Family::build(&pair_cfg(&[gi(0, 1), gi(0, 2)]))?;
    if let Family::Pairs(p) = &coincident {
        checks.push(try_record(
            "abelian.coincident_config_swap_is_zero",
            "the swap involution of a coincident-index configuration maps to zero",
            "image is not zero",
            || Ok(p.abelian_support(p.phi(), false)?.is_zero()),
        ));
    }

    let cases = [
        (vec![ri(0), ri(1)], Rat::new(1.into(), 2.into())),
        (vec![ri(0), Rat::new(1.into(), 2.into()), ri(1)], ri(2)),
        (vec![], ri(0)),
    ];
    for (k, (taken, want)) in cases.iter().enumerate() {
        let set: BTreeSet<Rat> = taken.iter().cloned().collect();
        checks.push(bool_record(
            format!("abelian.fresh_index_case_{k}"),
            "the countability witness returns the first enumeration gap",
            fresh_index(&set) == *want,
            "wrong fresh index",
        ));
    }
    Ok(SuiteReport { suite: "abelian".into(), checks })
}

fn closure8(vals: &[GaussRat]) -> Vec<GaussRat> {
    let mut out = Vec::new();
    for v in vals {
        out.push(v.clone());
        if !v.is_real() {
            out.push(v.conj());
        }
    }
    out.sort();
    out.dedup();
    out
}

fn rand_config8(rng: &mut impl Rng) -> Vec<GaussRat> {
    loop {
        let (n_real, n_pairs) = match rng.gen_range(0..4) {
            0 => (0, 2),
            1 => (2, 1),
            2 => (4, 0),
            _ => (2, 2),
        };
        let mut vals: Vec<GaussRat> = (0..n_real)
            .map(|_| GaussRat::from_rat(rand_rat(rng, -6, 6, 2)))
            .collect();
        vals.extend((0..n_pairs).map(|_| rand_upper(rng)));
        let cl = closure8(&vals);
        if cl.len() == n_real + 2 * n_pairs {
            return vals;
        }
    }
}

fn rand_mobius(rng: &mut impl Rng) -> Mobius {
    loop {
        let m = Mobius {
            a: ri(rng.gen_range(-3..=3)),
            b: ri(rng.gen_range(-3..=3)),
            c: ri(rng.gen_range(-3..=3)),
            d: ri(rng.gen_range(-3..=3)),
        };
        if !m.det().is_zero() {
            return m;
        }
    }
}

fn nu_multiset(pts: &[GaussRat]) -> Result<Vec<Rat>> {
    let mut out = Vec::new();
    for z in pts {
        if !z.is_real() {
            out.push(nu(&P1Pt::Finite(upper(z)))?);
        }
    }
    out.sort();
    Ok(out)
}

fn suite_conjugacy(corrupt: bool) -> Result<SuiteReport> {
    let mut checks = Vec::new();

    checks.push(try_record(
        "conj7.scaling_example",
        "the single pairs 1+i and 2+2i are equivalent by the scaling by 2",
        "wrong answer or witness",
        || {
            let w = conjugate_pairs(&[gi(1, 1)], &[gi(2, 2)])?;
            Ok(matches!(w, Some(w) if w.lambda == ri(2) && !w.inverted))
        },
    ));
    checks.push(try_record(
        "conj7.inversion_example",
        "the single pairs 2i and i/2 are equivalent by the unit inversion",
        "wrong answer or witness",
        || {
            let half_i = GaussRat::new(ri(0), Rat::new(1.into(), 2.into()));
            let w = conjugate_pairs(&[gi(0, 2)], &[half_i])?;
            Ok(matches!(w, Some(w) if w.lambda.is_one() && w.inverted))
        },
    ));
    checks.push(try_record(
        "conj7.negative_example",
        "the single pairs 1+i and 1+2i are not equivalent",
        "false positive",
        || Ok(conjugate_pairs(&[gi(1, 1)], &[gi(1, 2)])?.is_none()),
    ));
    checks.push(try_record(
        "conj7.canonical_representatives",
        "canonical forms collapse scaled configurations",
        "canonicalization mismatch",
        || {
            let c1 = canonical_pairs(&[gi(2, 2)])?;
            let c2 = canonical_pairs(&[gi(0, 1), gi(0, 2)])?;
            let c3 = canonical_pairs(&[gi(0, 2), gi(0, 4)])?;
            Ok(c1 == vec![gi(1, 1)] && c2 == c3 && c2 == vec![gi(0, 1), gi(0, 2)])
        },
    ));
    checks.push(try_record(
        "conj8.translation_example",
        "the fibre sets {0,1,2+i} and {1,2,3+i} are equivalent",
        "wrong answer",
        || {
            let a = [GaussRat::zero(), GaussRat::one(), gi(2, 1)];
            let b = [GaussRat::one(), GaussRat::from_int(2), gi(3, 1)];
            match conjugate_fibre_sets(&a, &b)? {
                Some(m) => {
                    let moved: Vec<GaussRat> =
                        closure8(&a).iter().map(|z| m.apply(z).unwrap_or(gi(9, 9))).collect();
                    Ok(closure8(&moved) == closure8(&b))
                }
                None => Ok(false),
            }
        },
    ));
    checks.push(try_record(
        "conj8.cross_ratio_negative_example",
        "the fibre sets {0,1,2,3} and {0,1,2,4} are not equivalent",
        "false positive",
        || {
            let a: Vec<GaussRat> = [0, 1, 2, 3].iter().map(|&k| GaussRat::from_int(k)).collect();
            let b: Vec<GaussRat> = [0, 1, 2, 4].iter().map(|&k| GaussRat::from_int(k)).collect();
            Ok(conjugate_fibre_sets(&a, &b)?.is_none())
        },
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(0x636f_6e6a);
    let mut refl_ok = 0usize;
    for _ in 0..50 {
        let c = rand_config7(&mut rng);
        if matches!(conjugate_pairs(&c, &c)?, Some(w) if w.lambda.is_one() && !w.inverted) {
            refl_ok += 1;
        }
    }
    for _ in 0..50 {
        let c = rand_config8(&mut rng);
        if conjugate_fibre_sets(&c, &c)?.map_or(false, |m| m.is_identity()) {
            refl_ok += 1;
        }
    }
    checks.push(bool_record(
        "conj.reflexive_on_random_configs",
        "every configuration is equivalent to itself by the identity, 100 seeded cases",
        refl_ok == 100,
        "reflexivity failed",
    ));

    let mut planted_ok = 0usize;
    let mut planted_total = 0usize;
    let mut sym_ok = 0usize;
    let mut nu_ok = 0usize;
    // One planted target is deliberately perturbed in corrupt mode.  Shifting
    // every point by its own imaginary part bumps each invariant by one, so
    // the perturbed target can never be equivalent to the source.
    let mut corrupt_pending = corrupt;
    while planted_total < 50 {
        let c1 = rand_config7(&mut rng);
        let w = ScaleWitness { lambda: rand_rat(&mut rng, 1, 9, 3), inverted: rng.gen_bool(0.5) };
        let mut c2: Vec<GaussRat> = Vec::new();
        for z in &c1 {
            c2.push(upper(&w.apply(z)?));
        }
        c2.sort();
        c2.dedup();
        if c2.len() != c1.len() {
            continue;
        }
        planted_total += 1;
        let target = if std::mem::take(&mut corrupt_pending) {
            let mut t: Vec<GaussRat> =
                c2.iter().map(|z| GaussRat::new(&z.re + &z.im, z.im.clone())).collect();
            t.sort();
            t
        } else {
            c2
        };
        if let Some(found) = conjugate_pairs(&c1, &target)? {
            let mut moved: Vec<GaussRat> = Vec::new();
            for z in &c1 {
                moved.push(upper(&found.apply(z)?));
            }
            moved.sort();
            if moved == target {
                planted_ok += 1;
            }
            if conjugate_pairs(&target, &c1)?.is_some() {
                sym_ok += 1;
            }
            if nu_multiset(&c1)? == nu_multiset(&target)? {
                nu_ok += 1;
            }
        }
    }
    while planted_total < 100 {
        let c1 = rand_config8(&mut rng);
        let m = rand_mobius(&mut rng);
        let full = closure8(&c1);
        let moved: Option<Vec<GaussRat>> = full.iter().map(|z| m.apply(z)).collect();
        let Some(moved) = moved else { continue };
        let mut c2: Vec<GaussRat> =
            moved.iter().filter(|z| z.is_real() || z.im.is_positive()).cloned().collect();
        c2.sort();
        c2.dedup();
        if closure8(&c2).len() != full.len() {
            continue;
        }
        planted_total += 1;
        if let Some(found) = conjugate_fibre_sets(&c1, &c2)? {
            let applied: Option<Vec<GaussRat>> = full.iter().map(|z| found.apply(z)).collect();
            let ok = applied.map_or(false, |mut v| {
                v.sort();
                v.dedup();
                v == closure8(&c2)
            });
            if ok {
                planted_ok += 1;
            }
            if conjugate_fibre_sets(&c2, &c1)?.is_some() {
                sym_ok += 1;
            }
            if nu_multiset(&full)? == nu_multiset(&closure8(&c2))? {
                nu_ok += 1;
            }
        }
    }
    let expected_ok = if corrupt { 99 } else { 100 };
    let mut planted = bool_record(
        "conj.planted_pairs_detected",
        "every planted equivalent pair is detected with a verified witness",
        planted_ok == 100,
        "a planted pair was missed or its witness failed",
    );
    planted.detail = format!("detected {planted_ok}/100");
    checks.push(planted);
    checks.push(bool_record(
        "conj.symmetric_on_detected_pairs",
        "equivalence is symmetric on all detected pairs",
        sym_ok == expected_ok,
        "symmetry failed",
    ));
    checks.push(bool_record(
        "conj.nu_multiset_invariant",
        "the nu multiset agrees on all detected pairs",
        nu_ok == expected_ok,
        "nu multiset moved",
    ));

    let mut trans_ok = 0usize;
    let mut trans_total = 0usize;
    while trans_total < 20 {
        let c1 = rand_config7(&mut rng);
        let w1 = ScaleWitness { lambda: rand_rat(&mut rng, 1, 6, 2), inverted: rng.gen_bool(0.5) };
        let w2 = ScaleWitness { lambda: rand_rat(&mut rng, 1, 6, 2), inverted: rng.gen_bool(0.5) };
        let step = |c: &[GaussRat], w: &ScaleWitness| -> Result<Vec<GaussRat>> {
            let mut out = Vec::new();
            for z in c {
                out.push(upper(&w.apply(z)?));
            }
            out.sort();
            out.dedup();
            Ok(out)
        };
        let c2 = step(&c1, &w1)?;
        let c3 = step(&c2, &w2)?;
        if c2.len() != c1.len() || c3.len() != c1.len() {
            continue;
        }
        trans_total += 1;
        if conjugate_pairs(&c1, &c2)?.is_some()
            && conjugate_pairs(&c2, &c3)?.is_some()
            && conjugate_pairs(&c1, &c3)?.is_some()
        {
            trans_ok += 1;
        }
    }
    checks.push(bool_record(
        "conj.transitive_on_planted_chains",
        "equivalence composes along 20 planted chains",
        trans_ok == 20,
        "transitivity failed",
    ));

    Ok(SuiteReport { suite: "conjugacy".into(), checks })
}

/// Runs every builtin suite in a fixed order.
pub fn run_all(corrupt: bool) -> Result<FullReport> {
    let suites = vec![
        suite_models(corrupt)?,
        suite_isomorphism(corrupt)?,
        suite_relations(corrupt)?,
        suite_picard(corrupt)?,
        suite_orbits(corrupt)?,
        suite_family7(corrupt)?,
        suite_family8(corrupt)?,
        suite_abelian(corrupt)?,
        suite_conjugacy(corrupt)?,
    ];
    let mut summary = Summary { total: 0, pass: 0, fail: 0, inconclusive: 0 };
    for s in &suites {
        for c in &s.checks {
            summary.total += 1;
            match c.status.as_str() {
                "pass" => summary.pass += 1,
                "fail" => summary.fail += 1,
                _ => summary.inconclusive += 1,
            }
        }
    }
    Ok(FullReport { suites, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn healthy_run_passes_everywhere() {
        let report = run_all(false).unwrap();
        for s in &report.suites {
            for c in &s.checks {
                assert_eq!(c.status, "pass", "{}::{} failed: {}", s.suite, c.id, c.detail);
            }
        }
        assert!(report.passed());
    }

    #[test]
    fn corrupted_run_fails_every_suite() {
        let report = run_all(true).unwrap();
        for s in &report.suites {
            assert!(!s.passed(), "suite {} missed its corrupted fixture", s.suite);
        }
        assert!(!report.passed());
    }

    #[test]
    fn report_serialization_is_deterministic() {
        let a = run_all(false).unwrap().to_json();
        let b = run_all(false).unwrap().to_json();
        assert_eq!(a, b);
    }
}
