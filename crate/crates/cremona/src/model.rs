//! Surface models: ambient variable blocks, defining equations, a real
//! structure, a rational parameterization, and the named curves, points and
//! generators that the verification suites talk about.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{split_top, strip_outer};
use crate::gauss::{parse_gauss, GaussRat, P1Pt};
use crate::map::{RationalMap, SemilinearMap};
use crate::poly::{MultiPoly, VarBlocks};

/// Identifier of a builtin model.  The first two and `P1xP1` are plain
/// parameter spaces; the rest carry real structures of interest.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ModelId {
    /// The projective line with the standard real structure.
    P1,
    /// The projective plane with the standard real structure.
    P2,
    /// `P1 x P1`, coordinatewise conjugation; auxiliary parameter space.
    P1xP1Std,
    /// The real quadric `w^2 = x^2 + y^2 + z^2` in `P3`.
    Q31,
    /// `P1 x P1` with the factor-swapping real structure.
    P1xP1SigmaS,
    /// `P1 x P1` with the antiholomorphic structure that has no real points;
    /// the structure is birational with two special base points.
    P1xP1SigmaC,
    /// Degree-six del Pezzo in `P3 x P1`, fibred over `P1`.
    X2P3xP1,
    /// Degree-six del Pezzo in `P2 x P2`, real structure swapping factors.
    X2P2xP2,
    /// Degree-six del Pezzo in `P2 x P2` fibred over the plane.
    X3Q,
    /// Degree-six del Pezzo in `P1 x P1 x P1`.
    X3F0,
    /// Degree-six del Pezzo in `P2 x P2`, standard conjugation; split form.
    X4,
    /// The Hirzebruch surface of index `n` as `P(O + O(n))`.
    Fn(u32),
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelId::P1 => write!(f, "P1"),
            ModelId::P2 => write!(f, "P2"),
            ModelId::P1xP1Std => write!(f, "P1xP1"),
            ModelId::Q31 => write!(f, "Q31"),
            ModelId::P1xP1SigmaS => write!(f, "P1xP1_sigmaS"),
            ModelId::P1xP1SigmaC => write!(f, "P1xP1_sigmaC"),
            ModelId::X2P3xP1 => write!(f, "X2_P3xP1"),
            ModelId::X2P2xP2 => write!(f, "X2_P2xP2"),
            ModelId::X3Q => write!(f, "X3Q"),
            ModelId::X3F0 => write!(f, "X3F0"),
            ModelId::X4 => write!(f, "X4"),
            ModelId::Fn(n) => write!(f, "Fn({n})"),
        }
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ModelId> {
        let t = s.trim();
        Ok(match t {
            "P1" => ModelId::P1,
            "P2" => ModelId::P2,
            "P1xP1" => ModelId::P1xP1Std,
            "Q31" => ModelId::Q31,
            "P1xP1_sigmaS" => ModelId::P1xP1SigmaS,
            "P1xP1_sigmaC" => ModelId::P1xP1SigmaC,
            "X2_P3xP1" => ModelId::X2P3xP1,
            "X2_P2xP2" => ModelId::X2P2xP2,
            "X3Q" => ModelId::X3Q,
            "X3F0" => ModelId::X3F0,
            "X4" => ModelId::X4,
            _ => {
                let inner = t
                    .strip_prefix("Fn(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::UnknownModel(s.to_string()))?;
                let n: u32 =
                    inner.trim().parse().map_err(|_| Error::UnknownModel(s.to_string()))?;
                ModelId::Fn(n)
            }
        })
    }
}

impl ModelId {
    /// The ten catalog entries; the Hirzebruch family is listed at `n = 2`.
    pub fn catalog() -> Vec<ModelId> {
        vec![
            ModelId::P2,
            ModelId::Q31,
            ModelId::P1xP1SigmaS,
            ModelId::P1xP1SigmaC,
            ModelId::X2P3xP1,
            ModelId::X2P2xP2,
            ModelId::X3Q,
            ModelId::X3F0,
            ModelId::X4,
            ModelId::Fn(2),
        ]
    }
}

/// A closed point of a model, one coordinate vector per block.
#[derive(Clone, Debug)]
pub struct ModelPoint {
    pub model: ModelId,
    pub coords: Vec<Vec<GaussRat>>,
}

impl ModelPoint {
    /// Validates block shapes, rejects all-zero blocks, and checks the model
    /// equations.
    pub fn new(model: ModelId, coords: Vec<Vec<GaussRat>>) -> Result<ModelPoint> {
        let m = crate::catalog::model(model)?;
        if coords.len() != m.blocks.block_count() {
            return Err(Error::BlockMismatch);
        }
        for (b, c) in coords.iter().enumerate() {
            if c.len() != m.blocks.block_len(b) {
                return Err(Error::BlockMismatch);
            }
            if c.iter().all(|x| x.is_zero()) {
                return Err(Error::ZeroBlock);
            }
        }
        let pt = ModelPoint { model, coords };
        for eq in &m.equations {
            let v = eq.eval_point(&pt.coords)?;
            if !v.is_zero() {
                return Err(Error::PointOffModel);
            }
        }
        Ok(pt)
    }

    /// Parses `([a:b],[c:d:e])` style literals.
    pub fn parse(model: ModelId, src: &str) -> Result<ModelPoint> {
        let inner = strip_outer(src, '(', ')')?;
        let mut coords = Vec::new();
        for part in split_top(inner, ',') {
            let body = strip_outer(&part, '[', ']')?;
            let mut block = Vec::new();
            for entry in split_top(body, ':') {
                block.push(parse_gauss(&entry)?);
            }
            coords.push(block);
        }
        ModelPoint::new(model, coords)
    }

    /// A point of the auxiliary line model.
    pub fn from_p1(pt: &P1Pt) -> ModelPoint {
        let (a, b) = pt.coords();
        ModelPoint { model: ModelId::P1, coords: vec![vec![a, b]] }
    }

    /// Interprets a one-block, two-coordinate point as a point of the line.
    pub fn to_p1(&self) -> Result<P1Pt> {
        if self.coords.len() != 1 || self.coords[0].len() != 2 {
            return Err(Error::Unsupported("not a point of the line".into()));
        }
        P1Pt::from_coords(&self.coords[0][0], &self.coords[0][1])
    }

    /// Coordinatewise complex conjugate.  Not necessarily on the same real
    /// form; used to build the antiholomorphic actions.
    pub fn conj(&self) -> ModelPoint {
        ModelPoint {
            model: self.model,
            coords: self.coords.iter().map(|b| b.iter().map(|x| x.conj()).collect()).collect(),
        }
    }

    /// Projective equality block by block.
    pub fn proj_eq(&self, other: &ModelPoint) -> bool {
        if self.model != other.model || self.coords.len() != other.coords.len() {
            return false;
        }
        for (a, b) in self.coords.iter().zip(&other.coords) {
            if a.len() != b.len() {
                return false;
            }
            for i in 0..a.len() {
                for j in (i + 1)..a.len() {
                    if &a[i] * &b[j] != &a[j] * &b[i] {
                        return false;
                    }
                }
            }
            // proportional and both blocks nonzero, but guard against the
            // degenerate pairing of a zero vector with anything
            if a.iter().all(|x| x.is_zero()) != b.iter().all(|x| x.is_zero()) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for ModelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .coords
            .iter()
            .map(|b| {
                let entries: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                format!("[{}]", entries.join(":"))
            })
            .collect();
        write!(f, "({})", blocks.join(","))
    }
}

/// A named rational curve on a model: equations in the ambient coordinates
/// plus a parameterization by the line.
#[derive(Clone, Debug)]
pub struct CurveOnModel {
    pub name: String,
    pub model: ModelId,
    pub equations: Vec<MultiPoly>,
    pub param: RationalMap,
}

impl CurveOnModel {
    /// Whether the (already validated) point lies on the curve.
    pub fn contains(&self, pt: &ModelPoint) -> Result<bool> {
        if pt.model != self.model {
            return Err(Error::ModelMismatch);
        }
        for eq in &self.equations {
            if !eq.eval_point(&pt.coords)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The curve point at a parameter value.
    pub fn at(&self, t: &P1Pt) -> Result<ModelPoint> {
        self.param.apply(&ModelPoint::from_p1(t))
    }
}

/// A builtin surface model.
#[derive(Debug)]
pub struct SurfaceModel {
    pub id: ModelId,
    pub blocks: Arc<VarBlocks>,
    pub equations: Vec<MultiPoly>,
    /// The real structure, always antiholomorphic.
    pub sigma: SemilinearMap,
    /// Parameterization from a plain model (`P1`, `P2`, a product of lines);
    /// dominant, used for all vanishing tests.
    pub param: RationalMap,
    /// Birational inverse of `param`.
    pub param_inverse: RationalMap,
    pub curves: Vec<CurveOnModel>,
    /// `(alias, canonical)` pairs for curves with a second customary name.
    pub aliases: Vec<(String, String)>,
    pub points: Vec<(String, ModelPoint)>,
    pub generators: Vec<(String, RationalMap)>,
    /// Expected image curve of each named curve under the real structure.
    pub sigma_arrows: Vec<(String, String)>,
    /// Conic-bundle projection to the line, when the model carries one.
    pub projection: Option<RationalMap>,
    /// Base points with reducible fibres and the fibre component names.
    pub fibre_data: Vec<(P1Pt, Vec<String>)>,
}

impl SurfaceModel {
    /// Resolves a curve name, following aliases.
    pub fn curve(&self, name: &str) -> Result<&CurveOnModel> {
        let canonical = self
            .aliases
            .iter()
            .find(|(a, _)| a == name)
            .map(|(_, c)| c.as_str())
            .unwrap_or(name);
        self.curves
            .iter()
            .find(|c| c.name == canonical)
            .ok_or_else(|| Error::UnknownCurve(name.to_string()))
    }

    pub fn point(&self, name: &str) -> Result<&ModelPoint> {
        self.points
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn generator(&self, name: &str) -> Result<&RationalMap> {
        self.generators
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Whether `p` vanishes identically on the model: its pullback along the
    /// dominant parameterization is the zero polynomial.
    pub fn vanishes(&self, p: &MultiPoly) -> Result<bool> {
        let pulled = p.substitute(&self.param.flat_components(0))?;
        Ok(pulled.is_zero())
    }

    /// Reducible fibres of the conic-bundle projection; errors when the model
    /// has no projection.
    pub fn singular_fibres(&self) -> Result<&[(P1Pt, Vec<String>)]> {
        if self.projection.is_none() {
            return Err(Error::NoProjection);
        }
        Ok(&self.fibre_data)
    }

    /// The fibre of the projection through a given point, as a curve.  Only
    /// models whose fibres are lines in their ambient blocks support this.
    pub fn fibre_through(&self, pt: &ModelPoint) -> Result<CurveOnModel> {
        let proj = self.projection.as_ref().ok_or(Error::NoProjection)?;
        let base = proj.apply(pt)?;
        let b = &base.coords[0];
        match self.id {
            ModelId::P1xP1SigmaC | ModelId::P1xP1Std => {
                // fibre {u = b} x P1, parameterized by the second factor
                let eq = MultiPoly::var(&self.blocks, "u0")?
                    .mul_scalar(&b[1])
                    .sub(&MultiPoly::var(&self.blocks, "u1")?.mul_scalar(&b[0]));
                let line = crate::catalog::model(ModelId::P1)?;
                let t0 = MultiPoly::var(&line.blocks, "t0")?;
                let t1 = MultiPoly::var(&line.blocks, "t1")?;
                let c0 = MultiPoly::constant(&line.blocks, crate::param::ParamPoly::constant(b[0].clone()));
                let c1 = MultiPoly::constant(&line.blocks, crate::param::ParamPoly::constant(b[1].clone()));
                let param = RationalMap::new(
                    ModelId::P1,
                    self.id,
                    vec![vec![c0, c1], vec![t0, t1]],
                )?;
                Ok(CurveOnModel {
                    name: format!("fibre over {base}"),
                    model: self.id,
                    equations: vec![eq],
                    param,
                })
            }
            ModelId::Fn(n) => {
                // points ([s0 : b0^n s1 : b1^n s1], [b0 : b1])
                let eq = MultiPoly::var(&self.blocks, "u")?
                    .mul_scalar(&b[1])
                    .sub(&MultiPoly::var(&self.blocks, "v")?.mul_scalar(&b[0]));
                let line = crate::catalog::model(ModelId::P1)?;
                let t0 = MultiPoly::var(&line.blocks, "t0")?;
                let t1 = MultiPoly::var(&line.blocks, "t1")?;
                let pow = |x: &GaussRat| {
                    let mut acc = GaussRat::one();
                    for _ in 0..n {
                        acc = &acc * x;
                    }
                    acc
                };
                let cst = |v: GaussRat| {
                    MultiPoly::constant(&line.blocks, crate::param::ParamPoly::constant(v))
                };
                let param = RationalMap::new(
                    ModelId::P1,
                    self.id,
                    vec![
                        vec![t0, t1.mul_scalar(&pow(&b[0])), t1.mul_scalar(&pow(&b[1]))],
                        vec![cst(b[0].clone()), cst(b[1].clone())],
                    ],
                )?;
                Ok(CurveOnModel {
                    name: format!("fibre over {base}"),
                    model: self.id,
                    equations: vec![eq],
                    param,
                })
            }
            _ => Err(Error::Unsupported(format!("no fibre construction on {}", self.id))),
        }
    }
}
