//! Rational maps between surface models.
//!
//! A map stores one or more representatives, each a tuple of component
//! polynomials per target block.  Several representatives are essential, not
//! an optimization: a birational map between complete surfaces is typically
//! defined away from a finite set per representative, and only the union of
//! representative domains is the true domain.  Every indeterminacy question
//! below quantifies over all stored representatives.
//!
//! Antiholomorphic maps (real structures, and compositions with them) are
//! [`SemilinearMap`]s: a rational part plus a conjugation flag, composing by
//! twisting coefficients and xoring flags.

use std::fmt;

use crate::binform::BinForm;
use crate::catalog::model;
use crate::error::{Error, Result};
use crate::expr::{split_top, strip_outer};
use crate::gauss::{GaussRat, P1Pt};
use crate::model::{CurveOnModel, ModelId, ModelPoint};
use crate::param::{ParamPoly, ParamSystem};
use crate::poly::{normalize_tuple, MultiPoly, Multidegree};

/// Outcome of a check that can fail to be decidable by exact factoring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Vec<String>),
    Inconclusive,
}

/// Image of a curve under a rational map.
#[derive(Clone, Debug)]
pub enum CurveImage {
    /// The curve is contracted to this point.
    Point(ModelPoint),
    /// The image is the named curve of the target model.
    Named(String),
    /// The image is a curve the target model does not name.
    Unnamed,
}

/// A rational map with one or more stored representatives.
#[derive(Clone, Debug)]
pub struct RationalMap {
    source: ModelId,
    target: ModelId,
    reps: Vec<Vec<Vec<MultiPoly>>>,
}

fn validate_shape(
    source: ModelId,
    target: ModelId,
    comps: &[Vec<MultiPoly>],
) -> Result<()> {
    let sm = model(source)?;
    let tm = model(target)?;
    if comps.len() != tm.blocks.block_count() {
        return Err(Error::BlockMismatch);
    }
    for (b, block) in comps.iter().enumerate() {
        if block.len() != tm.blocks.block_len(b) {
            return Err(Error::BlockMismatch);
        }
        let mut degree: Option<Vec<u32>> = None;
        let mut all_zero = true;
        for c in block {
            if c.blocks() != &sm.blocks && !c.is_zero() {
                return Err(Error::BlockMismatch);
            }
            if c.is_zero() {
                continue;
            }
            all_zero = false;
            match c.multidegree()? {
                Multidegree::Homogeneous(d) => match &degree {
                    None => degree = Some(d),
                    Some(prev) if *prev == d => {}
                    Some(_) => return Err(Error::NotMultihomogeneous(c.to_string())),
                },
                Multidegree::Mixed => return Err(Error::NotMultihomogeneous(c.to_string())),
            }
        }
        if all_zero {
            return Err(Error::IdenticallyZeroBlock(b));
        }
    }
    Ok(())
}

fn normalize_rep(comps: Vec<Vec<MultiPoly>>) -> Result<Vec<Vec<MultiPoly>>> {
    comps
        .into_iter()
        .enumerate()
        .map(|(b, block)| normalize_tuple(&block).map_err(|e| match e {
            Error::AllZeroTuple => Error::IdenticallyZeroBlock(b),
            other => other,
        }))
        .collect()
}

impl RationalMap {
    /// Validates and normalizes a single-representative map: block shapes,
    /// multihomogeneity, no identically-zero block, and the target equations
    /// pull back to zero on the source model.
    pub fn new(source: ModelId, target: ModelId, comps: Vec<Vec<MultiPoly>>) -> Result<Self> {
        validate_shape(source, target, &comps)?;
        let comps = normalize_rep(comps)?;
        let map = RationalMap { source, target, reps: vec![comps] };
        map.check_target_equations(0)?;
        Ok(map)
    }

    /// Builds without validation; used for catalog data that is re-verified
    /// by the model suite, and for deliberately corrupted fixtures.
    pub(crate) fn new_unchecked(
        source: ModelId,
        target: ModelId,
        reps: Vec<Vec<Vec<MultiPoly>>>,
    ) -> Self {
        RationalMap { source, target, reps }
    }

    /// Adds another representative, which must agree with the first on the
    /// source model.
    pub fn with_rep(mut self, comps: Vec<Vec<MultiPoly>>) -> Result<Self> {
        validate_shape(self.source, self.target, &comps)?;
        let comps = normalize_rep(comps)?;
        let probe = RationalMap {
            source: self.source,
            target: self.target,
            reps: vec![comps.clone()],
        };
        probe.check_target_equations(0)?;
        if !self.agrees_with_rep(&comps)? {
            return Err(Error::RepMismatch);
        }
        self.reps.push(comps);
        Ok(self)
    }

    /// Re-runs every construction check, including pairwise agreement of all
    /// stored representatives.  Catalog maps are built unchecked and pass
    /// through here in the model suite.
    pub fn validated(&self) -> Result<()> {
        for (k, rep) in self.reps.iter().enumerate() {
            validate_shape(self.source, self.target, rep)?;
            self.check_target_equations(k)?;
        }
        for rep in &self.reps[1..] {
            if !self.agrees_with_rep(rep)? {
                return Err(Error::RepMismatch);
            }
        }
        Ok(())
    }

    fn check_target_equations(&self, rep: usize) -> Result<()> {
        let tm = model(self.target)?;
        let sm = model(self.source)?;
        let flat = self.flat_components(rep);
        for eq in &tm.equations {
            let pulled = eq.substitute(&flat)?;
            if !sm.vanishes(&pulled)? {
                return Err(Error::EquationNotPreserved(eq.to_string()));
            }
        }
        Ok(())
    }

    fn agrees_with_rep(&self, comps: &[Vec<MultiPoly>]) -> Result<bool> {
        let sm = model(self.source)?;
        for (ba, bb) in self.reps[0].iter().zip(comps.iter()) {
            for i in 0..ba.len() {
                for j in (i + 1)..ba.len() {
                    let cross = ba[i].mul(&bb[j]).sub(&ba[j].mul(&bb[i]));
                    if !sm.vanishes(&cross)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Parses `([f1:f2],[g1:g2:g3])` over the source model's variables.
    pub fn parse(source: ModelId, target: ModelId, src: &str) -> Result<Self> {
        Self::parse_with_sys(source, target, &ParamSystem::empty(), src)
    }

    /// Same, allowing parameter symbols from `sys` in the components.
    pub fn parse_with_sys(
        source: ModelId,
        target: ModelId,
        sys: &std::sync::Arc<ParamSystem>,
        src: &str,
    ) -> Result<Self> {
        let sm = model(source)?;
        let inner = strip_outer(src, '(', ')')?;
        let mut comps = Vec::new();
        for part in split_top(inner, ',') {
            let body = strip_outer(&part, '[', ']')?;
            let mut block = Vec::new();
            for entry in split_top(body, ':') {
                block.push(MultiPoly::parse(&sm.blocks, sys, &entry)?);
            }
            comps.push(block);
        }
        Self::new(source, target, comps)
    }

    /// The identity map of a model.
    pub fn identity(m: ModelId) -> Result<Self> {
        let sm = model(m)?;
        let mut comps = Vec::new();
        for b in 0..sm.blocks.block_count() {
            let block: Result<Vec<MultiPoly>> = sm
                .blocks
                .block_names(b)
                .iter()
                .map(|n| MultiPoly::var(&sm.blocks, n))
                .collect();
            comps.push(block?);
        }
        Ok(RationalMap { source: m, target: m, reps: vec![comps] })
    }

    pub fn source(&self) -> ModelId {
        self.source
    }

    pub fn target(&self) -> ModelId {
        self.target
    }

    pub fn rep_count(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, k: usize) -> &[Vec<MultiPoly>] {
        &self.reps[k]
    }

    /// Components of representative `k` flattened across target blocks, in
    /// target variable order.
    pub fn flat_components(&self, k: usize) -> Vec<MultiPoly> {
        self.reps[k].iter().flatten().cloned().collect()
    }

    /// Conjugates every coefficient of every representative.
    pub fn conj_map(&self) -> Self {
        let reps = self
            .reps
            .iter()
            .map(|rep| {
                rep.iter().map(|b| b.iter().map(|c| c.conj_coeffs()).collect()).collect()
            })
            .collect();
        RationalMap { source: self.source, target: self.target, reps }
    }

    /// Composition `self` after `g`.  All representative pairs are composed;
    /// pairs that produce an identically-zero block are dropped, and only if
    /// every pair degenerates is that an error.
    pub fn after(&self, g: &RationalMap) -> Result<RationalMap> {
        if g.target != self.source {
            return Err(Error::ModelMismatch);
        }
        let mut out: Vec<Vec<Vec<MultiPoly>>> = Vec::new();
        let mut last_zero_block = 0usize;
        for gi in 0..g.reps.len() {
            let gflat = g.flat_components(gi);
            for fi in 0..self.reps.len() {
                let mut blocks_out = Vec::new();
                let mut dead = None;
                for (b, block) in self.reps[fi].iter().enumerate() {
                    let composed: Result<Vec<MultiPoly>> =
                        block.iter().map(|c| c.substitute(&gflat)).collect();
                    let composed = composed?;
                    match normalize_tuple(&composed) {
                        Ok(n) => blocks_out.push(n),
                        Err(Error::AllZeroTuple) => {
                            dead = Some(b);
                            break;
                        }
                        Err(e) => return Err(e),
                    }
                }
                match dead {
                    Some(b) => last_zero_block = b,
                    None => {
                        if !out.contains(&blocks_out) && out.len() < 4 {
                            out.push(blocks_out);
                        }
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(Error::IdenticallyZeroBlock(last_zero_block));
        }
        Ok(RationalMap { source: g.source, target: self.target, reps: out })
    }

    /// Equality as rational maps: the defining cross products vanish on the
    /// source model.  Complete because the comparison happens after pulling
    /// back along the dominant parameterization, where it is a polynomial
    /// identity.
    pub fn equal_on_variety(&self, other: &RationalMap) -> Result<bool> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ModelMismatch);
        }
        let sm = model(self.source)?;
        let pf = sm.param.flat_components(0);
        for (ba, bb) in self.reps[0].iter().zip(other.reps[0].iter()) {
            let pa: Result<Vec<MultiPoly>> = ba.iter().map(|c| c.substitute(&pf)).collect();
            let pb: Result<Vec<MultiPoly>> = bb.iter().map(|c| c.substitute(&pf)).collect();
            let (pa, pb) = (pa?, pb?);
            for i in 0..pa.len() {
                for j in (i + 1)..pa.len() {
                    if !pa[i].mul(&pb[j]).sub(&pa[j].mul(&pb[i])).is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Whether the map commutes with the real structures of its source and
    /// target.
    pub fn is_real(&self) -> Result<bool> {
        let ss = model(self.source)?.sigma.clone();
        let st = model(self.target)?.sigma.clone();
        let f = SemilinearMap::holomorphic(self.clone());
        let left = st.after(&f)?;
        let right = f.after(&ss)?;
        left.equal(&right)
    }

    pub fn is_involution(&self) -> Result<bool> {
        if self.source != self.target {
            return Err(Error::ModelMismatch);
        }
        self.after(self)?.equal_on_variety(&Self::identity(self.source)?)
    }

    /// True when every representative has some target block with all
    /// components vanishing at `pt`.  Symbolic coefficients are carried
    /// through, so a parametric family is undefined only when it is undefined
    /// for generic parameter values.
    pub fn undefined_at(&self, pt: &ModelPoint) -> Result<bool> {
        if pt.model != self.source {
            return Err(Error::ModelMismatch);
        }
        for rep in &self.reps {
            let mut rep_dead = false;
            for block in rep {
                let mut all_zero = true;
                for c in block {
                    if !c.eval_point(&pt.coords)?.is_zero() {
                        all_zero = false;
                        break;
                    }
                }
                if all_zero {
                    rep_dead = true;
                    break;
                }
            }
            if !rep_dead {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Evaluates at a point, using the first representative defined there.
    /// The result is validated against the target model.
    pub fn apply(&self, pt: &ModelPoint) -> Result<ModelPoint> {
        let raw = self.apply_raw(pt)?;
        let coords: Result<Vec<Vec<GaussRat>>> = raw
            .into_iter()
            .map(|block| {
                // Scaling a projective block by the inverse of any invertible
                // entry is harmless and lets unit-parameter images (say
                // `[0 : a]` with `a` on the unit circle) collapse to constants.
                let scaled = match block.iter().find_map(|v| {
                    if v.is_zero() {
                        None
                    } else {
                        v.inverse()
                    }
                }) {
                    Some(inv) => block.iter().map(|v| v.mul(&inv)).collect(),
                    None => block,
                };
                scaled
                    .into_iter()
                    .map(|v| {
                        v.as_constant().ok_or_else(|| {
                            Error::Unsupported("symbolic coordinates in image point".into())
                        })
                    })
                    .collect()
            })
            .collect();
        ModelPoint::new(self.target, coords?)
    }

    /// Evaluates at a point, keeping symbolic coefficients; picks the first
    /// representative with no vanishing block.
    pub fn apply_raw(&self, pt: &ModelPoint) -> Result<Vec<Vec<ParamPoly>>> {
        if pt.model != self.source {
            return Err(Error::ModelMismatch);
        }
        'rep: for rep in &self.reps {
            let mut out = Vec::with_capacity(rep.len());
            for block in rep {
                let vals: Result<Vec<ParamPoly>> =
                    block.iter().map(|c| c.eval_point(&pt.coords)).collect();
                let vals = vals?;
                if vals.iter().all(|v| v.is_zero()) {
                    continue 'rep;
                }
                out.push(vals);
            }
            return Ok(out);
        }
        Err(Error::UndefinedAtPoint(pt.to_string()))
    }

    /// Checks that along `curve` the map is defined away from `allowed`.
    ///
    /// The first representative that does not vanish outright on the curve is
    /// pulled back; the single gcd of all its component pullbacks cuts out the
    /// base points on the curve.  The verdict is `Holds` only when that gcd's
    /// roots are exactly found and all land in `allowed`; a gcd that does not
    /// factor completely gives `Inconclusive`, never a silent pass.
    pub fn defined_along_curve_except(
        &self,
        curve: &CurveOnModel,
        allowed: &[ModelPoint],
    ) -> Result<Verdict> {
        if curve.model != self.source {
            return Err(Error::ModelMismatch);
        }
        let cf = curve.param.flat_components(0);
        let mut chosen: Option<Vec<MultiPoly>> = None;
        for rep in &self.reps {
            let pulled: Result<Vec<MultiPoly>> = rep
                .iter()
                .flatten()
                .map(|c| c.substitute(&cf))
                .collect();
            let pulled = pulled?;
            if pulled.iter().any(|p| !p.is_zero()) {
                chosen = Some(pulled);
                break;
            }
        }
        let pulled = chosen.ok_or(Error::CurveInBaseLocus)?;
        let mut forms = Vec::new();
        for p in pulled.iter().filter(|p| !p.is_zero()) {
            match to_binform_up_to_unit(p) {
                Some(f) => forms.push(f),
                None => return Ok(Verdict::Inconclusive),
            }
        }
        let g = BinForm::gcd_all(forms.iter()).expect("some nonzero pullback");
        if g.degree() == 0 {
            return Ok(Verdict::Holds);
        }
        let Some(roots) = g.roots() else {
            return Ok(Verdict::Inconclusive);
        };
        let mut bad = Vec::new();
        for (root, _) in roots {
            let pt = curve.at(&root)?;
            if !allowed.iter().any(|a| a.proj_eq(&pt)) {
                bad.push(pt.to_string());
            }
        }
        if bad.is_empty() {
            Ok(Verdict::Holds)
        } else {
            Ok(Verdict::Fails(bad))
        }
    }

    /// Image of a curve: a contracted point, a named curve of the target, or
    /// an unnamed curve.
    pub fn image_of_curve(&self, curve: &CurveOnModel) -> Result<CurveImage> {
        self.image_of_curve_via(curve, false)
    }

    fn image_of_curve_via(&self, curve: &CurveOnModel, conj_first: bool) -> Result<CurveImage> {
        if curve.model != self.source {
            return Err(Error::ModelMismatch);
        }
        let mut cf = curve.param.flat_components(0);
        if conj_first {
            cf = cf.into_iter().map(|c| c.conj_coeffs()).collect();
        }
        let mut chosen: Option<Vec<Vec<MultiPoly>>> = None;
        'rep: for rep in &self.reps {
            let mut blocks_out = Vec::new();
            for block in rep {
                let pulled: Result<Vec<MultiPoly>> =
                    block.iter().map(|c| c.substitute(&cf)).collect();
                let pulled = pulled?;
                if pulled.iter().all(|p| p.is_zero()) {
                    continue 'rep;
                }
                blocks_out.push(pulled);
            }
            chosen = Some(blocks_out);
            break;
        }
        let composite = chosen.ok_or(Error::CurveInBaseLocus)?;

        let contracted = composite.iter().all(|b| block_projectively_constant(b));

        if contracted {
            let pt = extract_constant_point(self.target, &composite)?;
            return Ok(CurveImage::Point(pt));
        }
        let tm = model(self.target)?;
        let flat: Vec<MultiPoly> = composite.iter().flatten().cloned().collect();
        for named in &tm.curves {
            let mut on_curve = true;
            for eq in &named.equations {
                if !eq.substitute(&flat)?.is_zero() {
                    on_curve = false;
                    break;
                }
            }
            if on_curve {
                return Ok(CurveImage::Named(named.name.clone()));
            }
        }
        Ok(CurveImage::Unnamed)
    }
}

/// A nonzero tuple of equal-degree forms is projectively constant exactly
/// when every component is a scalar multiple of the first nonzero one.
fn block_projectively_constant(block: &[MultiPoly]) -> bool {
    let pivot = block.iter().find(|c| !c.is_zero()).expect("nonzero block");
    for c in block {
        if c.is_zero() || std::ptr::eq(c, pivot) {
            continue;
        }
        match c.divide_exact(pivot) {
            Some(q) => {
                let scalar = matches!(
                    q.multidegree(),
                    Ok(Multidegree::Homogeneous(d)) if d.iter().all(|&k| k == 0)
                );
                if !scalar {
                    return false;
                }
            }
            None => return false,
        }
    }
    true
}

/// Converts a pullback component to a binary form, allowing one invertible
/// symbolic scalar in front.
fn to_binform_up_to_unit(p: &MultiPoly) -> Option<BinForm> {
    if let Ok(f) = BinForm::from_multipoly(p) {
        return Some(f);
    }
    let (_, lead) = p.leading_term()?;
    let inv = lead.inverse()?;
    BinForm::from_multipoly(&p.scale_param(&inv)).ok()
}

/// Finds the constant direction of a tuple of projectively-constant blocks by
/// sampling parameter values until every block is nonzero.
fn extract_constant_point(
    target: ModelId,
    composite: &[Vec<MultiPoly>],
) -> Result<ModelPoint> {
    let mut samples: Vec<P1Pt> = vec![P1Pt::Inf];
    for k in 0..48i64 {
        samples.push(P1Pt::Finite(GaussRat::from_int(k)));
    }
    'sample: for t in &samples {
        let (a, b) = t.coords();
        let coords_t = vec![vec![a, b]];
        let mut out = Vec::new();
        for block in composite {
            let vals: Result<Vec<ParamPoly>> =
                block.iter().map(|c| c.eval_point(&coords_t)).collect();
            let vals = vals?;
            if vals.iter().all(|v| v.is_zero()) {
                continue 'sample;
            }
            let consts: Option<Vec<GaussRat>> = vals.iter().map(|v| v.as_constant()).collect();
            match consts {
                Some(c) => out.push(c),
                None => {
                    return Err(Error::Unsupported(
                        "symbolic coordinates in contracted image".into(),
                    ))
                }
            }
        }
        return ModelPoint::new(target, out);
    }
    Err(Error::Internal("could not sample a defined parameter value".into()))
}

/// A holomorphic or antiholomorphic map: rational part plus conjugation flag.
#[derive(Clone, Debug)]
pub struct SemilinearMap {
    pub map: RationalMap,
    pub conj: bool,
}

impl SemilinearMap {
    pub fn holomorphic(map: RationalMap) -> Self {
        SemilinearMap { map, conj: false }
    }

    pub fn antiholomorphic(map: RationalMap) -> Self {
        SemilinearMap { map, conj: true }
    }

    /// Composition `self` after `other`; flags xor, and `self`'s conjugation
    /// twists the coefficients of `other`'s rational part.
    pub fn after(&self, other: &SemilinearMap) -> Result<SemilinearMap> {
        let inner = if self.conj { other.map.conj_map() } else { other.map.clone() };
        Ok(SemilinearMap { map: self.map.after(&inner)?, conj: self.conj ^ other.conj })
    }

    /// Equal when the conjugation flags agree and the rational parts agree on
    /// the source model.
    pub fn equal(&self, other: &SemilinearMap) -> Result<bool> {
        if self.conj != other.conj {
            return Ok(false);
        }
        self.map.equal_on_variety(&other.map)
    }

    pub fn is_identity(&self) -> Result<bool> {
        if self.conj {
            return Ok(false);
        }
        self.map.equal_on_variety(&RationalMap::identity(self.map.source())?)
    }

    pub fn apply(&self, pt: &ModelPoint) -> Result<ModelPoint> {
        let arg = if self.conj { pt.conj() } else { pt.clone() };
        self.map.apply(&arg)
    }

    pub fn fixes_point(&self, pt: &ModelPoint) -> Result<bool> {
        Ok(self.apply(pt)?.proj_eq(pt))
    }

    pub fn image_of_curve(&self, curve: &CurveOnModel) -> Result<CurveImage> {
        self.map.image_of_curve_via(curve, self.conj)
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rep = &self.reps[0];
        let blocks: Vec<String> = rep
            .iter()
            .map(|b| {
                let entries: Vec<String> = b.iter().map(|c| c.to_string()).collect();
                format!("[{}]", entries.join(" : "))
            })
            .collect();
        write!(f, "({})", blocks.join(", "))
    }
}
