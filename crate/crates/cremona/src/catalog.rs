//! The builtin surface models.
//!
//! Builders here use unchecked constructors on purpose: a checked
//! `RationalMap::new` consults the catalog for its source and target models,
//! which would recurse into the registry mid-build.  Every piece of data in
//! this file is re-verified through the public checked APIs by the model
//! verification suite, so a typo here fails loudly there.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::expr::{split_top, strip_outer};
use crate::gauss::{parse_gauss, GaussRat, P1Pt};
use crate::map::{RationalMap, SemilinearMap};
use crate::model::{CurveOnModel, ModelId, ModelPoint, SurfaceModel};
use crate::param::ParamSystem;
use crate::poly::{MultiPoly, VarBlocks};

static REGISTRY: Lazy<Mutex<BTreeMap<ModelId, Arc<SurfaceModel>>>> =
    Lazy::new(|| Mutex::new(BTreeMap::new()));

/// Returns the cached model, building it on first use.
pub fn model(id: ModelId) -> Result<Arc<SurfaceModel>> {
    if let Some(m) = REGISTRY.lock().unwrap().get(&id) {
        return Ok(m.clone());
    }
    let built = Arc::new(build(id)?);
    let mut reg = REGISTRY.lock().unwrap();
    Ok(reg.entry(id).or_insert(built).clone())
}

fn vars(groups: &[&[&str]]) -> Arc<VarBlocks> {
    VarBlocks::new(groups)
}

fn pp(on: &Arc<VarBlocks>, src: &str) -> MultiPoly {
    MultiPoly::parse(on, &ParamSystem::empty(), src).expect("builtin polynomial")
}

fn rep(on: &Arc<VarBlocks>, src: &str) -> Vec<Vec<MultiPoly>> {
    let inner = strip_outer(src, '(', ')').expect("builtin tuple");
    split_top(inner, ',')
        .iter()
        .map(|part| {
            let body = strip_outer(part, '[', ']').expect("builtin block");
            split_top(body, ':').iter().map(|e| pp(on, e)).collect()
        })
        .collect()
}

fn rmap(on: &Arc<VarBlocks>, source: ModelId, target: ModelId, lits: &[&str]) -> RationalMap {
    RationalMap::new_unchecked(source, target, lits.iter().map(|l| rep(on, l)).collect())
}

fn line_map(target: ModelId, lit: &str) -> RationalMap {
    let line = vars(&[&["t0", "t1"]]);
    RationalMap::new_unchecked(ModelId::P1, target, vec![rep(&line, lit)])
}

fn curve(
    on: &Arc<VarBlocks>,
    id: ModelId,
    name: &str,
    eqs: &[&str],
    param: &str,
) -> CurveOnModel {
    CurveOnModel {
        name: name.to_string(),
        model: id,
        equations: eqs.iter().map(|e| pp(on, e)).collect(),
        param: line_map(id, param),
    }
}

fn point(id: ModelId, lit: &str) -> ModelPoint {
    let inner = strip_outer(lit, '(', ')').expect("builtin point");
    let coords = split_top(inner, ',')
        .iter()
        .map(|part| {
            let body = strip_outer(part, '[', ']').expect("builtin point block");
            split_top(body, ':')
                .iter()
                .map(|e| parse_gauss(e).expect("builtin coordinate"))
                .collect()
        })
        .collect();
    ModelPoint { model: id, coords }
}

fn identity_rep(blocks: &Arc<VarBlocks>) -> Vec<Vec<MultiPoly>> {
    (0..blocks.block_count())
        .map(|b| {
            blocks
                .block_names(b)
                .iter()
                .map(|n| MultiPoly::var(blocks, n).expect("declared variable"))
                .collect()
        })
        .collect()
}

fn std_conj(id: ModelId, blocks: &Arc<VarBlocks>) -> SemilinearMap {
    SemilinearMap {
        map: RationalMap::new_unchecked(id, id, vec![identity_rep(blocks)]),
        conj: true,
    }
}

fn arrows(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

/// A model with no equations, the standard conjugation, and itself as
/// parameter space.
fn plain(id: ModelId, groups: &[&[&str]]) -> SurfaceModel {
    let blocks = vars(groups);
    let ident = RationalMap::new_unchecked(id, id, vec![identity_rep(&blocks)]);
    SurfaceModel {
        id,
        blocks: blocks.clone(),
        equations: vec![],
        sigma: std_conj(id, &blocks),
        param: ident.clone(),
        param_inverse: ident,
        curves: vec![],
        aliases: vec![],
        points: vec![],
        generators: vec![],
        sigma_arrows: vec![],
        projection: None,
        fibre_data: vec![],
    }
}

fn build(id: ModelId) -> Result<SurfaceModel> {
    Ok(match id {
        ModelId::P1 => plain(id, &[&["t0", "t1"]]),
        ModelId::P2 => {
            let mut m = plain(id, &[&["x0", "x1", "x2"]]);
            let b = m.blocks.clone();
            m.generators = vec![
                ("swap01".into(), rmap(&b, id, id, &["([x1:x0:x2])"])),
                ("cycle012".into(), rmap(&b, id, id, &["([x1:x2:x0])"])),
                (
                    "quadratic_involution".into(),
                    rmap(&b, id, id, &["([x1^2+x2^2 : x0*x2 : x0*x1])"]),
                ),
            ];
            m
        }
        ModelId::P1xP1Std => {
            let mut m = plain(id, &[&["u0", "u1"], &["v0", "v1"]]);
            let b = m.blocks.clone();
            m.generators =
                vec![("swap_factors".into(), rmap(&b, id, id, &["([v0:v1],[u0:u1])"]))];
            m.projection = Some(rmap(&b, id, ModelId::P1, &["([u0:u1])"]));
            m
        }
        ModelId::Q31 => {
            let b = vars(&[&["w", "x", "y", "z"]]);
            let prod = vars(&[&["u0", "u1"], &["v0", "v1"]]);
            SurfaceModel {
                id,
                blocks: b.clone(),
                equations: vec![pp(&b, "w^2 - x^2 - y^2 - z^2")],
                sigma: std_conj(id, &b),
                param: rmap(
                    &prod,
                    ModelId::P1xP1Std,
                    id,
                    &["([u0*v0+u1*v1 : i*(u0*v1-u1*v0) : u0*v1+u1*v0 : u0*v0-u1*v1])"],
                ),
                param_inverse: rmap(
                    &b,
                    id,
                    ModelId::P1xP1Std,
                    &[
                        "([w+z : y+i*x],[w+z : y-i*x])",
                        "([y-i*x : w-z],[y+i*x : w-z])",
                    ],
                ),
                curves: vec![],
                aliases: vec![],
                points: vec![("pole".into(), point(id, "([1:0:0:1])"))],
                generators: vec![
                    ("reflect_x".into(), rmap(&b, id, id, &["([w:-x:y:z])"])),
                    ("swap_xy".into(), rmap(&b, id, id, &["([w:y:x:z])"])),
                ],
                sigma_arrows: vec![],
                projection: None,
                fibre_data: vec![],
            }
        }
        ModelId::P1xP1SigmaS => {
            let b = vars(&[&["u0", "u1"], &["v0", "v1"]]);
            let ident = RationalMap::new_unchecked(ModelId::P1xP1Std, id, vec![identity_rep(&b)]);
            let ident_back = RationalMap::new_unchecked(id, ModelId::P1xP1Std, vec![identity_rep(&b)]);
            SurfaceModel {
                id,
                blocks: b.clone(),
                equations: vec![],
                sigma: SemilinearMap {
                    map: rmap(&b, id, id, &["([v0:v1],[u0:u1])"]),
                    conj: true,
                },
                param: ident,
                param_inverse: ident_back,
                curves: vec![],
                aliases: vec![],
                points: vec![
                    ("p".into(), point(id, "([0:1],[1:0])")),
                    ("p_bar".into(), point(id, "([1:0],[0:1])")),
                ],
                generators: vec![(
                    "swap_factors".into(),
                    rmap(&b, id, id, &["([v0:v1],[u0:u1])"]),
                )],
                sigma_arrows: vec![],
                projection: None,
                fibre_data: vec![],
            }
        }
        ModelId::P1xP1SigmaC => {
            let b = vars(&[&["u0", "u1"], &["v0", "v1"]]);
            let ident = RationalMap::new_unchecked(ModelId::P1xP1Std, id, vec![identity_rep(&b)]);
            let ident_back = RationalMap::new_unchecked(id, ModelId::P1xP1Std, vec![identity_rep(&b)]);
            SurfaceModel {
                id,
                blocks: b.clone(),
                equations: vec![],
                sigma: SemilinearMap {
                    map: rmap(&b, id, id, &["([u0:u1],[u1*v1 : u0*v0])"]),
                    conj: true,
                },
                param: ident,
                param_inverse: ident_back,
                curves: vec![
                    curve(&b, id, "eps_s", &["v1"], "([t0:t1],[1:0])"),
                    curve(&b, id, "eps_s_bar", &["v0"], "([t0:t1],[0:1])"),
                ],
                aliases: vec![],
                points: vec![
                    ("special0".into(), point(id, "([1:0],[0:1])")),
                    ("special1".into(), point(id, "([0:1],[1:0])")),
                ],
                generators: vec![],
                sigma_arrows: arrows(&[("eps_s", "eps_s_bar"), ("eps_s_bar", "eps_s")]),
                projection: Some(rmap(&b, id, ModelId::P1, &["([u0:u1])"])),
                fibre_data: vec![],
            }
        }
        ModelId::X2P3xP1 => {
            let b = vars(&[&["w", "x", "y", "z"], &["u", "v"]]);
            let prod = vars(&[&["u0", "u1"], &["v0", "v1"]]);
            SurfaceModel {
                id,
                blocks: b.clone(),
                equations: vec![pp(&b, "w*z - x^2 - y^2"), pp(&b, "u*z - v*w")],
                sigma: std_conj(id, &b),
                param: rmap(
                    &prod,
                    ModelId::P1xP1Std,
                    id,
                    &["([2*u0*v0 : i*(u0*v1-u1*v0) : u0*v1+u1*v0 : 2*u1*v1],[u0*v0 : u1*v1])"],
                ),
                param_inverse: rmap(
                    &b,
                    id,
                    ModelId::P1xP1Std,
                    &["([w : y+i*x],[w : y-i*x])", "([y-i*x : z],[y+i*x : z])"],
                ),
                curves: vec![
                    curve(&b, id, "E_r", &["w", "z", "y-i*x"], "([0:1:i:0],[t0:t1])"),
                    curve(&b, id, "E_r_bar", &["w", "z", "y+i*x"], "([0:1:-i:0],[t0:t1])"),
                    curve(&b, id, "f_0", &["w", "x-i*y", "u"], "([0 : i*t0 : t0 : t1],[0:1])"),
                    curve(&b, id, "f_0_bar", &["w", "x+i*y", "u"], "([0 : -i*t0 : t0 : t1],[0:1])"),
                    curve(&b, id, "f_inf", &["z", "x-i*y", "v"], "([t1 : i*t0 : t0 : 0],[1:0])"),
                    curve(&b, id, "f_inf_bar", &["z", "x+i*y", "v"], "([t1 : -i*t0 : t0 : 0],[1:0])"),
                ],
                aliases: vec![],
                points: vec![
                    ("r".into(), point(id, "([0:1:i:0],[1:0])")),
                    ("r_bar".into(), point(id, "([0:1:-i:0],[1:0])")),
                ],
                generators: vec![
                    ("alpha1".into(), rmap(&b, id, id, &["([z:-x:y:w],[v:u])"])),
                    ("alpha2".into(), rmap(&b, id, id, &["([w:-x:y:z],[u:v])"])),
                ],
                sigma_arrows: arrows(&[
                    ("E_r", "E_r_bar"),
                    ("E_r_bar", "E_r"),
                    ("f_0", "f_0_bar"),
                    ("f_0_bar", "f_0"),
                    ("f_inf", "f_inf_bar"),
                    ("f_inf_bar", "f_inf"),
                ]),
                projection: Some(rmap(&b, id, ModelId::P1, &["([u:v])"])),
                fibre_data: vec![
                    (P1Pt::Finite(GaussRat::zero()), vec!["f_0".into(), "f_0_bar".into()]),
                    (P1Pt::Inf, vec!["f_inf".into(), "f_inf_bar".into()]),
                ],
            }
        }
        ModelId::X2P2xP2 => {
            let b = vars(&[&["x0", "x1", "x2"], &["y0", "y1", "y2"]]);
            let prod = vars(&[&["u0", "u1"], &["v0", "v1"]]);
            SurfaceModel {
                id,
                blocks: b.clone(),
                equations: vec![pp(&b, "x0*y0 - x1*y1"), pp(&b, "x1*y1 - x2*y2")],
                sigma: SemilinearMap {
                    map: rmap(&b, id, id, &["([y1:y0:y2],[x1:x0:x2])"]),
                    conj: true,
                },
                param: rmap(
                    &prod,
                    ModelId::P1xP1SigmaC,
                    id,
                    &["([u0*v1 : u1*v1 : u0*v0],[u1*v0 : u0*v0 : u1*v1])"],
                ),
                param_inverse: rmap(
                    &b,
                    id,
                    ModelId::P1xP1SigmaC,
                    &["([x0:x1],[x2:x0])", "([y1:y0],[y0:y2])"],
                ),
                curves: vec![
                    curve(&b, id, "s", &["x0", "x1"], "([0:0:1],[t0:t1:0])"),
                    curve(&b, id, "s_bar", &["y0", "y1"], "([t0:t1:0],[0:0:1])"),
                    curve(&b, id, "f_p", &["y1", "y2"], "([0:t0:t1],[1:0:0])"),
                    curve(&b, id, "f_p_bar", &["x0", "x2"], "([0:1:0],[t0:0:t1])"),
                    curve(&b, id, "f_q", &["x1", "x2"], "([1:0:0],[0:t0:t1])"),
                    curve(&b, id, "f_q_bar", &["y0", "y2"], "([t0:0:t1],[0:1:0])"),
                ],
                aliases: vec![
                    ("E_p".into(), "s".into()),
                    ("E_p_bar".into(), "s_bar".into()),
                ],
                points: vec![],
                generators: vec![
                    ("alpha1".into(), rmap(&b, id, id, &["([y0:y1:y2],[x0:x1:x2])"])),
                    ("alpha2".into(), rmap(&b, id, id, &["([y1:y0:y2],[x1:x0:x2])"])),
                ],
                sigma_arrows: arrows(&[
                    ("s", "s_bar"),
                    ("s_bar", "s"),
                    ("f_p", "f_p_bar"),
                    ("f_p_bar", "f_p"),
                    ("f_q", "f_q_bar"),
                    ("f_q_bar", "f_q"),
                ]),
                projection: Some(rmap(&b, id, ModelId::P1, &["([x0:x1])", "([y1:y0])"])),
                fibre_data: vec![
                    (P1Pt::Finite(GaussRat::zero()), vec!["f_p".into(), "f_p_bar".into()]),
                    (P1Pt::Inf, vec!["f_q".into(), "f_q_bar".into()]),
                ],
            }
        }
        ModelId::X3Q => {
            let b = vars(&[&["x0", "x1", "x2"], &["y0", "y1", "y2"]]);
            let plane = vars(&[&["x0", "x1", "x2"]]);
            SurfaceModel {
                id,
                blocks: b.clone(),
                equations: vec![pp(&b, "x0*y0 - x1*y2 - x2*y1"), pp(&b, "x1*y1 - x2*y2")],
                sigma: std_conj(id, &b),
                param: rmap(
                    &plane,
                    ModelId::P2,
                    id,
                    &["([x0:x1:x2],[x1^2+x2^2 : x0*x2 : x0*x1])"],
                ),
                param_inverse: rmap(&b, id, ModelId::P2, &["([x0:x1:x2])"]),
                curves: vec![
                    curve(&b, id, "E_p", &["x1", "x2"], "([1:0:0],[0:t0:t1])"),
                    curve(&b, id, "E_q", &["y1", "y2"], "([0:t0:t1],[1:0:0])"),
                    curve(&b, id, "f_p", &["y0", "y2-i*y1"], "([t0 : t1 : -i*t1],[0:1:i])"),
                    curve(&b, id, "f_p_bar", &["y0", "y2+i*y1"], "([t0 : t1 : i*t1],[0:1:-i])"),
                    curve(&b, id, "f_q", &["x0", "x2-i*x1"], "([0:1:i],[t0 : t1 : -i*t1])"),
                    curve(&b, id, "f_q_bar", &["x0", "x2+i*x1"], "([0:1:-i],[t0 : t1 : i*t1])"),
                ],
                aliases: vec![],
                points: vec![],
                generators: vec![
                    ("alpha1".into(), rmap(&b, id, id, &["([y0:y1:y2],[x0:x1:x2])"])),
                    ("alpha2".into(), rmap(&b, id, id, &["([x0:x2:x1],[y0:y2:y1])"])),
                ],
                sigma_arrows: arrows(&[
                    ("E_p", "E_p"),
                    ("E_q", "E_q"),
                    ("f_p", "f_p_bar"),
                    ("f_p_bar", "f_p"),
                    ("f_q", "f_q_bar"),
                    ("f_q_bar", "f_q"),
                ]),
                projection: None,
                fibre_data: vec![],
            }
        }
        ModelId::X3F0 => {
            let b = vars(&[&["x0", "x1"], &["y0", "y1"], &["z0", "z1"]]);
            let prod = vars(&[&["u0", "u1"], &["v0", "v1"]]);
            SurfaceModel {
                id,
                blocks: b.clone(),
                equations: vec![pp(&b, "x0*y0*z1 + x0*y1*z0 + x1*y0*z0 - x1*y1*z1")],
                sigma: std_conj(id, &b),
                param: rmap(
                    &prod,
                    ModelId::P1xP1Std,
                    id,
                    &["([u0:u1],[v0:v1],[u1*v1-u0*v0 : u0*v1+u1*v0])"],
                ),
                param_inverse: rmap(&b, id, ModelId::P1xP1Std, &["([x0:x1],[y0:y1])"]),
                curves: vec![
                    curve(&b, id, "E_p", &["x1-i*x0", "y1+i*y0"], "([1:i],[1:-i],[t0:t1])"),
                    curve(&b, id, "E_p_bar", &["x1+i*x0", "y1-i*y0"], "([1:-i],[1:i],[t0:t1])"),
                    curve(&b, id, "f_p", &["x1-i*x0", "z1+i*z0"], "([1:i],[t0:t1],[1:-i])"),
                    curve(&b, id, "f_p_bar", &["x1+i*x0", "z1-i*z0"], "([1:-i],[t0:t1],[1:i])"),
                    curve(&b, id, "g_p", &["y1+i*y0", "z1-i*z0"], "([t0:t1],[1:-i],[1:i])"),
                    curve(&b, id, "g_p_bar", &["y1-i*y0", "z1+i*z0"], "([t0:t1],[1:i],[1:-i])"),
                ],
                aliases: vec![],
                points: vec![
                    ("vertex0".into(), point(id, "([1:i],[1:-i],[1:i])")),
                    ("vertex1".into(), point(id, "([1:-i],[1:-i],[1:i])")),
                    ("vertex2".into(), point(id, "([1:-i],[1:i],[1:i])")),
                    ("vertex3".into(), point(id, "([1:-i],[1:i],[1:-i])")),
                    ("vertex4".into(), point(id, "([1:i],[1:i],[1:-i])")),
                    ("vertex5".into(), point(id, "([1:i],[1:-i],[1:-i])")),
                ],
                generators: vec![
                    ("alpha1".into(), rmap(&b, id, id, &["([y0:y1],[x0:x1],[z0:z1])"])),
                    ("alpha2".into(), rmap(&b, id, id, &["([z1:z0],[x0:-x1],[y1:y0])"])),
                ],
                sigma_arrows: arrows(&[
                    ("E_p", "E_p_bar"),
                    ("E_p_bar", "E_p"),
                    ("f_p", "f_p_bar"),
                    ("f_p_bar", "f_p"),
                    ("g_p", "g_p_bar"),
                    ("g_p_bar", "g_p"),
                ]),
                projection: None,
                fibre_data: vec![],
            }
        }
        ModelId::X4 => {
            let b = vars(&[&["x0", "x1", "x2"], &["y0", "y1", "y2"]]);
            let prod = vars(&[&["u0", "u1"], &["v0", "v1"]]);
            SurfaceModel {
                id,
                blocks: b.clone(),
                equations: vec![pp(&b, "x0*y0 - x1*y1"), pp(&b, "x1*y1 - x2*y2")],
                sigma: std_conj(id, &b),
                param: rmap(
                    &prod,
                    ModelId::P1xP1Std,
                    id,
                    &["([u0*v1 : u1*v1 : u0*v0],[u1*v0 : u0*v0 : u1*v1])"],
                ),
                param_inverse: rmap(
                    &b,
                    id,
                    ModelId::P1xP1Std,
                    &["([x0:x1],[x2:x0])", "([y1:y0],[y0:y2])"],
                ),
                curves: vec![
                    curve(&b, id, "E_1", &["x1", "x2"], "([1:0:0],[0:t0:t1])"),
                    curve(&b, id, "E_2", &["x0", "x2"], "([0:1:0],[t0:0:t1])"),
                    curve(&b, id, "E_3", &["x0", "x1"], "([0:0:1],[t0:t1:0])"),
                    curve(&b, id, "L_12", &["y0", "y1"], "([t0:t1:0],[0:0:1])"),
                    curve(&b, id, "L_13", &["y0", "y2"], "([t0:0:t1],[0:1:0])"),
                    curve(&b, id, "L_23", &["y1", "y2"], "([0:t0:t1],[1:0:0])"),
                ],
                aliases: vec![],
                points: vec![
                    ("vertex0".into(), point(id, "([0:0:1],[1:0:0])")),
                    ("vertex1".into(), point(id, "([0:1:0],[1:0:0])")),
                    ("vertex2".into(), point(id, "([0:1:0],[0:0:1])")),
                    ("vertex3".into(), point(id, "([1:0:0],[0:0:1])")),
                    ("vertex4".into(), point(id, "([1:0:0],[0:1:0])")),
                    ("vertex5".into(), point(id, "([0:0:1],[0:1:0])")),
                ],
                generators: vec![
                    ("alpha1".into(), rmap(&b, id, id, &["([y2:y0:y1],[x2:x0:x1])"])),
                    ("alpha2".into(), rmap(&b, id, id, &["([x1:x0:x2],[y1:y0:y2])"])),
                ],
                sigma_arrows: arrows(&[
                    ("E_1", "E_1"),
                    ("E_2", "E_2"),
                    ("E_3", "E_3"),
                    ("L_12", "L_12"),
                    ("L_13", "L_13"),
                    ("L_23", "L_23"),
                ]),
                projection: None,
                fibre_data: vec![],
            }
        }
        ModelId::Fn(n) => {
            if n == 0 {
                return Err(Error::UnknownModel("Fn(0)".into()));
            }
            let b = vars(&[&["x0", "x1", "x2"], &["u", "v"]]);
            let prod = vars(&[&["u0", "u1"], &["v0", "v1"]]);
            let eq = pp(&b, "u")
                .pow(n)
                .mul(&pp(&b, "x2"))
                .sub(&pp(&b, "v").pow(n).mul(&pp(&b, "x1")));
            SurfaceModel {
                id,
                blocks: b.clone(),
                equations: vec![eq],
                sigma: std_conj(id, &b),
                param: rmap(
                    &prod,
                    ModelId::P1xP1Std,
                    id,
                    &[&format!("([u0*v0^{n} : u1*v0^{n} : u1*v1^{n}],[v0:v1])")],
                ),
                param_inverse: rmap(&b, id, ModelId::P1xP1Std, &["([x0:x1],[u:v])"]),
                curves: vec![
                    curve(&b, id, "E_n", &["x1", "x2"], "([1:0:0],[t0:t1])"),
                    curve(
                        &b,
                        id,
                        "s_n",
                        &["x0"],
                        &format!("([0 : t0^{n} : t1^{n}],[t0:t1])"),
                    ),
                ],
                aliases: vec![],
                points: vec![],
                generators: vec![],
                sigma_arrows: arrows(&[("E_n", "E_n"), ("s_n", "s_n")]),
                projection: Some(rmap(&b, id, ModelId::P1, &["([u:v])"])),
                fibre_data: vec![],
            }
        }
    })
}

/// The real isomorphism from the quadric to the product of lines with the
/// factor-swapping structure, built through the fully checked constructor.
pub fn quadric_to_product() -> Result<RationalMap> {
    let q = model(ModelId::Q31)?;
    let rep1 = rep(&q.blocks, "([w+z : y+i*x],[w+z : y-i*x])");
    let rep2 = rep(&q.blocks, "([y-i*x : w-z],[y+i*x : w-z])");
    RationalMap::new(ModelId::Q31, ModelId::P1xP1SigmaS, rep1)?.with_rep(rep2)
}

/// Inverse direction of [`quadric_to_product`].
pub fn product_to_quadric() -> Result<RationalMap> {
    let p = model(ModelId::P1xP1SigmaS)?;
    let comps = rep(
        &p.blocks,
        "([u0*v0+u1*v1 : i*(u0*v1-u1*v0) : u0*v1+u1*v0 : u0*v0-u1*v1])",
    );
    RationalMap::new(ModelId::P1xP1SigmaS, ModelId::Q31, comps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_lists_ten_models() {
        assert_eq!(ModelId::catalog().len(), 10);
        for id in ModelId::catalog() {
            assert!(model(id).is_ok(), "{id} must build");
        }
    }

    #[test]
    fn named_curves_resolve_with_aliases() {
        let m = model(ModelId::X2P2xP2).unwrap();
        assert_eq!(m.curve("E_p").unwrap().name, "s");
        assert_eq!(m.curve("s_bar").unwrap().name, "s_bar");
        assert!(m.curve("E_q").is_err());
    }

    #[test]
    fn hirzebruch_rejects_index_zero() {
        assert!(matches!(model(ModelId::Fn(0)), Err(Error::UnknownModel(_))));
    }
}
