//! Sparse multivariate polynomials over blocks of projective variables.
//!
//! A polynomial lives on a fixed [`VarBlocks`] declaration, one block per
//! projective factor of the ambient space, and has [`ParamPoly`] coefficients
//! so that symbolic parameters flow through every operation.  Monomials are
//! compared block by block, graded lexicographically inside each block; this
//! order is compatible with multiplication, which is what the exact division
//! routine relies on.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::expr::{parse_expr, ExprValue};
use crate::gauss::{GaussRat, Rat};
use crate::param::{ParamPoly, ParamSystem};

type Mono = Box<[u16]>;

/// Declaration of the projective variable blocks of an ambient space.
#[derive(Debug, PartialEq, Eq)]
pub struct VarBlocks {
    blocks: Vec<Vec<String>>,
    offsets: Vec<usize>,
    flat: Vec<String>,
}

impl VarBlocks {
    pub fn new(groups: &[&[&str]]) -> Arc<VarBlocks> {
        let blocks: Vec<Vec<String>> =
            groups.iter().map(|g| g.iter().map(|s| s.to_string()).collect()).collect();
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut flat = Vec::new();
        for b in &blocks {
            offsets.push(flat.len());
            flat.extend(b.iter().cloned());
        }
        let names: BTreeSet<&String> = flat.iter().collect();
        assert_eq!(names.len(), flat.len(), "variable names must be distinct");
        Arc::new(VarBlocks { blocks, offsets, flat })
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_len(&self, b: usize) -> usize {
        self.blocks[b].len()
    }

    pub fn block_names(&self, b: usize) -> &[String] {
        &self.blocks[b]
    }

    pub fn flat_len(&self) -> usize {
        self.flat.len()
    }

    pub fn flat_names(&self) -> &[String] {
        &self.flat
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.flat.iter().position(|n| n == name)
    }

    /// Flat index range of block `b`.
    pub fn range(&self, b: usize) -> std::ops::Range<usize> {
        let start = self.offsets[b];
        start..start + self.blocks[b].len()
    }

    fn block_degrees(&self, m: &[u16]) -> Vec<u32> {
        (0..self.block_count())
            .map(|b| m[self.range(b)].iter().map(|&e| e as u32).sum())
            .collect()
    }
}

fn compatible_blocks(a: &Arc<VarBlocks>, b: &Arc<VarBlocks>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Block-by-block graded lexicographic comparison.
fn cmp_mono(blocks: &VarBlocks, a: &[u16], b: &[u16]) -> std::cmp::Ordering {
    for bl in 0..blocks.block_count() {
        let r = blocks.range(bl);
        let da: u32 = a[r.clone()].iter().map(|&e| e as u32).sum();
        let db: u32 = b[r.clone()].iter().map(|&e| e as u32).sum();
        let c = da.cmp(&db).then_with(|| a[r.clone()].cmp(&b[r]));
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    std::cmp::Ordering::Equal
}

/// Degree pattern of a nonzero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Multidegree {
    /// Every monomial has these per-block degrees.
    Homogeneous(Vec<u32>),
    /// Monomials of different block degrees occur.
    Mixed,
}

/// A polynomial over a block declaration, reduced coefficients, no zero terms.
#[derive(Clone)]
pub struct MultiPoly {
    blocks: Arc<VarBlocks>,
    terms: BTreeMap<Mono, ParamPoly>,
}

impl MultiPoly {
    pub fn zero(blocks: &Arc<VarBlocks>) -> Self {
        MultiPoly { blocks: blocks.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(blocks: &Arc<VarBlocks>, c: ParamPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0u16; blocks.flat_len()].into_boxed_slice(), c);
        }
        MultiPoly { blocks: blocks.clone(), terms }
    }

    pub fn var(blocks: &Arc<VarBlocks>, name: &str) -> Result<Self> {
        let idx = blocks.find(name).ok_or_else(|| Error::UndeclaredSymbol(name.into()))?;
        let mut m = vec![0u16; blocks.flat_len()];
        m[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(m.into_boxed_slice(), ParamPoly::one());
        Ok(MultiPoly { blocks: blocks.clone(), terms })
    }

    /// Parses an expression whose identifiers are block variables, parameter
    /// symbols of `sys`, or the imaginary unit `i`.
    pub fn parse(blocks: &Arc<VarBlocks>, sys: &Arc<ParamSystem>, src: &str) -> Result<Self> {
        parse_expr(
            src,
            &mut |name| {
                if name == "i" {
                    return Ok(Self::constant(blocks, ParamPoly::constant(GaussRat::i())));
                }
                if blocks.find(name).is_some() {
                    return Self::var(blocks, name);
                }
                if sys.find(name).is_some() {
                    return Ok(Self::constant(blocks, ParamPoly::var(sys, name)?));
                }
                Err(Error::UndeclaredSymbol(name.to_string()))
            },
            &mut |r| Self::constant(blocks, ParamPoly::from_rat(r)),
        )
    }

    pub fn blocks(&self) -> &Arc<VarBlocks> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_term(terms: &mut BTreeMap<Mono, ParamPoly>, m: Mono, c: ParamPoly) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(compatible_blocks(&self.blocks, &other.blocks), "mixed variable blocks");
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_term(&mut terms, m.clone(), c.clone());
        }
        MultiPoly { blocks: self.blocks.clone(), terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        MultiPoly { blocks: self.blocks.clone(), terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(compatible_blocks(&self.blocks, &other.blocks), "mixed variable blocks");
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Mono = ma
                    .iter()
                    .zip(mb.iter())
                    .map(|(&x, &y)| x.checked_add(y).expect("exponent overflow"))
                    .collect();
                Self::insert_term(&mut terms, m, ca.mul(cb));
            }
        }
        MultiPoly { blocks: self.blocks.clone(), terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(&self.blocks, ParamPoly::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn mul_scalar(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.blocks);
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k.mul_scalar(c))).collect();
        MultiPoly { blocks: self.blocks.clone(), terms }
    }

    pub fn scale_param(&self, c: &ParamPoly) -> Self {
        let mut terms = BTreeMap::new();
        for (m, k) in &self.terms {
            Self::insert_term(&mut terms, m.clone(), k.mul(c));
        }
        MultiPoly { blocks: self.blocks.clone(), terms }
    }

    /// Conjugates every coefficient; variables are untouched.
    pub fn conj_coeffs(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect();
        MultiPoly { blocks: self.blocks.clone(), terms }
    }

    /// Per-block degree pattern; the zero polynomial has none.
    pub fn multidegree(&self) -> Result<Multidegree> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroPolynomial)?;
        let degs = self.blocks.block_degrees(first);
        for m in it {
            if self.blocks.block_degrees(m) != degs {
                return Ok(Multidegree::Mixed);
            }
        }
        Ok(Multidegree::Homogeneous(degs))
    }

    /// Substitutes `images[v]` for the `v`-th flat variable.  All images must
    /// live on one common block declaration, which becomes the result's.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<Self> {
        if images.len() != self.blocks.flat_len() {
            return Err(Error::Internal(format!(
                "expected {} images, got {}",
                self.blocks.flat_len(),
                images.len()
            )));
        }
        let target = images
            .first()
            .map(|p| p.blocks.clone())
            .ok_or_else(|| Error::Internal("substitution needs at least one variable".into()))?;
        for p in images {
            if !compatible_blocks(&p.blocks, &target) {
                return Err(Error::BlockMismatch);
            }
        }
        let mut acc = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut prod = MultiPoly::constant(&target, ParamPoly::one());
            for (v, &e) in m.iter().enumerate() {
                if e > 0 {
                    prod = prod.mul(&images[v].pow(e as u32));
                }
            }
            acc = acc.add(&prod.scale_param(c));
        }
        Ok(acc)
    }

    /// Substitution by variable name; every variable that occurs in `self`
    /// must have an image.
    pub fn substitute_named(&self, images: &BTreeMap<String, MultiPoly>) -> Result<Self> {
        let target = images
            .values()
            .next()
            .map(|p| p.blocks.clone())
            .ok_or_else(|| Error::Internal("substitution needs at least one image".into()))?;
        let mut vec_images = Vec::with_capacity(self.blocks.flat_len());
        for name in self.blocks.flat_names() {
            match images.get(name) {
                Some(p) => vec_images.push(p.clone()),
                None => {
                    if self.terms.keys().any(|m| m[self.blocks.find(name).unwrap()] > 0) {
                        return Err(Error::MissingImage(name.clone()));
                    }
                    vec_images.push(MultiPoly::zero(&target));
                }
            }
        }
        self.substitute(&vec_images)
    }

    /// Evaluates at a numeric point, one coordinate vector per block.
    pub fn eval_point(&self, coords: &[Vec<GaussRat>]) -> Result<ParamPoly> {
        if coords.len() != self.blocks.block_count() {
            return Err(Error::Internal("wrong number of coordinate blocks".into()));
        }
        let mut flat = Vec::with_capacity(self.blocks.flat_len());
        for (b, c) in coords.iter().enumerate() {
            if c.len() != self.blocks.block_len(b) {
                return Err(Error::Internal("wrong coordinate block length".into()));
            }
            flat.extend(c.iter().cloned());
        }
        let mut acc = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut factor = GaussRat::one();
            for (v, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    factor = &factor * &flat[v];
                }
            }
            acc = acc.add(&c.mul_scalar(&factor));
        }
        Ok(acc)
    }

    /// Evaluates all parameter symbols at real values, leaving a polynomial
    /// with constant coefficients.
    pub fn eval_params(&self, vals: &[Rat]) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = c.eval(vals)?;
            Self::insert_term(&mut terms, m.clone(), ParamPoly::constant(v));
        }
        Ok(MultiPoly { blocks: self.blocks.clone(), terms })
    }

    /// Leading term under the block graded-lex order.
    pub fn leading_term(&self) -> Option<(&Mono, &ParamPoly)> {
        self.terms.iter().max_by(|(a, _), (b, _)| cmp_mono(&self.blocks, a, b))
    }

    /// Read-only view of the term map.
    pub(crate) fn term_view(&self) -> impl Iterator<Item = (&Mono, &ParamPoly)> {
        self.terms.iter()
    }

    /// The greatest monomial dividing every term; `None` for zero.
    pub fn content_mono(&self) -> Option<Vec<u16>> {
        let mut it = self.terms.keys();
        let mut content: Vec<u16> = it.next()?.to_vec();
        for m in it {
            for (c, &e) in content.iter_mut().zip(m.iter()) {
                *c = (*c).min(e);
            }
        }
        Some(content)
    }

    /// Divides every term by `m`, which must divide the content.
    pub fn divide_by_mono(&self, m: &[u16]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(mo, c)| {
                let d: Mono = mo
                    .iter()
                    .zip(m.iter())
                    .map(|(&x, &y)| x.checked_sub(y).expect("monomial does not divide"))
                    .collect();
                (d, c.clone())
            })
            .collect();
        MultiPoly { blocks: self.blocks.clone(), terms }
    }

    /// Exact multivariate division: `Some(q)` with `self = q * div` when the
    /// division comes out exact, `None` otherwise.  Correct as a divisibility
    /// test because the term order is compatible with multiplication: if
    /// `self = q * div` then the leading term of `self` is the product of the
    /// leading terms of `q` and `div`, so the greedy step never misses.
    pub fn divide_exact(&self, div: &Self) -> Option<Self> {
        assert!(compatible_blocks(&self.blocks, &div.blocks), "mixed variable blocks");
        let (dm, dc) = div.leading_term()?;
        let dm = dm.clone();
        let dc_inv = dc.inverse()?;
        let mut rem = self.clone();
        let mut quo = MultiPoly::zero(&self.blocks);
        while !rem.is_zero() {
            let (rm, rc) = rem.leading_term().expect("nonzero");
            let qm: Vec<u16> = rm
                .iter()
                .zip(dm.iter())
                .map(|(&a, &b)| a.checked_sub(b))
                .collect::<Option<_>>()?;
            let qc = rc.mul(&dc_inv);
            let mut qterms = BTreeMap::new();
            qterms.insert(qm.into_boxed_slice(), qc);
            let qterm = MultiPoly { blocks: self.blocks.clone(), terms: qterms };
            rem = rem.sub(&qterm.mul(div));
            quo = quo.add(&qterm);
        }
        Some(quo)
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        compatible_blocks(&self.blocks, &other.blocks) && self.sub(other).is_zero()
    }
}

impl Eq for MultiPoly {}

impl ExprValue for MultiPoly {
    fn e_add(self, other: Self) -> Self {
        self.add(&other)
    }
    fn e_sub(self, other: Self) -> Self {
        self.sub(&other)
    }
    fn e_mul(self, other: Self) -> Self {
        self.mul(&other)
    }
    fn e_neg(self) -> Self {
        self.neg()
    }
    fn e_pow(self, k: u32) -> Self {
        self.pow(k)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| cmp_mono(&self.blocks, b, a));
        let mut out = String::new();
        for (idx, (m, c)) in terms.into_iter().enumerate() {
            let mut mono_parts = Vec::new();
            for (name, &e) in self.blocks.flat_names().iter().zip(m.iter()) {
                match e {
                    0 => {}
                    1 => mono_parts.push(name.clone()),
                    _ => mono_parts.push(format!("{name}^{e}")),
                }
            }
            let mono = mono_parts.join("*");
            let piece = match (c.as_constant(), mono.is_empty()) {
                (Some(k), true) => {
                    if k.re.is_zero() || k.im.is_zero() {
                        format!("{k}")
                    } else {
                        format!("({k})")
                    }
                }
                (None, true) => format!("({c})"),
                (Some(k), false) if k == GaussRat::one() => mono,
                (Some(k), false) if k == -&GaussRat::one() => format!("-{mono}"),
                (Some(k), false) if k.im.is_zero() || k.re.is_zero() => format!("{k}*{mono}"),
                _ => format!("({c})*{mono}"),
            };
            if idx == 0 {
                out.push_str(&piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&piece);
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Normalizes a tuple of polynomials up to the common scalar: divides out the
/// shared monomial content, then rescales so the leading coefficient of the
/// first nonzero component is 1.  Never divides by a polynomial factor, so
/// tuples from actual computations keep their geometric content.
pub fn normalize_tuple(polys: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    let nonzero: Vec<&MultiPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::AllZeroTuple);
    }
    let mut content = nonzero[0].content_mono().expect("nonzero");
    for p in &nonzero[1..] {
        for (c, e) in content.iter_mut().zip(p.content_mono().expect("nonzero")) {
            *c = (*c).min(e);
        }
    }
    let lead = nonzero[0]
        .divide_by_mono(&content)
        .leading_term()
        .map(|(_, c)| c.lead_coeff())
        .expect("nonzero");
    let scale = lead.inv()?;
    Ok(polys
        .iter()
        .map(|p| {
            if p.is_zero() {
                p.clone()
            } else {
                p.divide_by_mono(&content).mul_scalar(&scale)
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::circle_system;

    fn xy() -> Arc<VarBlocks> {
        VarBlocks::new(&[&["x0", "x1"], &["y0", "y1"]])
    }

    fn p(blocks: &Arc<VarBlocks>, s: &str) -> MultiPoly {
        MultiPoly::parse(blocks, &ParamSystem::empty(), s).unwrap()
    }

    #[test]
    fn multidegree_patterns() {
        let b = xy();
        assert_eq!(
            p(&b, "x0*y1 + x1*y0").multidegree().unwrap(),
            Multidegree::Homogeneous(vec![1, 1])
        );
        let plane = VarBlocks::new(&[&["x0", "x1", "x2"]]);
        assert_eq!(
            p(&plane, "x0^2 + x1*x2").multidegree().unwrap(),
            Multidegree::Homogeneous(vec![2])
        );
        assert_eq!(p(&b, "x0 + x0*y0").multidegree().unwrap(), Multidegree::Mixed);
        assert!(matches!(
            MultiPoly::zero(&b).multidegree(),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let b = xy();
        let uv = VarBlocks::new(&[&["u0", "u1"], &["v0", "v1"]]);
        let f = p(&b, "x0*y0");
        let mut images = BTreeMap::new();
        images.insert("x0".to_string(), p(&uv, "u0*v0"));
        images.insert("x1".to_string(), p(&uv, "u1*v1"));
        images.insert("y0".to_string(), p(&uv, "u1*v1"));
        images.insert("y1".to_string(), p(&uv, "u0*v0"));
        let g = f.substitute_named(&images).unwrap();
        assert_eq!(g, p(&uv, "u0*u1*v0*v1"));

        let mut missing = images.clone();
        missing.remove("y0");
        assert!(matches!(
            f.substitute_named(&missing),
            Err(Error::MissingImage(name)) if name == "y0"
        ));
    }

    #[test]
    fn tuple_normalization() {
        let plane = VarBlocks::new(&[&["x0", "x1", "x2"]]);
        let t = normalize_tuple(&[p(&plane, "2*x0*x1"), p(&plane, "2*x0*x2")]).unwrap();
        assert_eq!(t, vec![p(&plane, "x1"), p(&plane, "x2")]);

        let t = normalize_tuple(&[p(&plane, "i*x0"), p(&plane, "i*x1")]).unwrap();
        assert_eq!(t, vec![p(&plane, "x0"), p(&plane, "x1")]);

        let t =
            normalize_tuple(&[p(&plane, "x0"), MultiPoly::zero(&plane), p(&plane, "x1")]).unwrap();
        assert_eq!(t, vec![p(&plane, "x0"), MultiPoly::zero(&plane), p(&plane, "x1")]);

        assert!(matches!(
            normalize_tuple(&[MultiPoly::zero(&plane)]),
            Err(Error::AllZeroTuple)
        ));
    }

    #[test]
    fn exact_division() {
        let plane = VarBlocks::new(&[&["x0", "x1", "x2"]]);
        let f = p(&plane, "x0^2 - x1^2");
        let d = p(&plane, "x0 - x1");
        assert_eq!(f.divide_exact(&d), Some(p(&plane, "x0 + x1")));
        assert_eq!(f.divide_exact(&p(&plane, "x0 - x2")), None);
        // Coefficient params survive division.
        let sys = circle_system("a");
        let fa = MultiPoly::parse(&plane, &sys, "(a_re + i*a_im)*x0*x1").unwrap();
        let da = MultiPoly::parse(&plane, &sys, "(a_re + i*a_im)*x1").unwrap();
        let q = fa.divide_exact(&da).unwrap();
        assert_eq!(q, MultiPoly::parse(&plane, &sys, "x0").unwrap());
    }

    #[test]
    fn conjugation_of_coefficients() {
        let b = xy();
        assert_eq!(p(&b, "i*x0 + x1").conj_coeffs(), p(&b, "-i*x0 + x1"));
    }

    #[test]
    fn eval_at_points() {
        let b = xy();
        let f = p(&b, "x0*y0 - x1*y1");
        let v = f
            .eval_point(&[
                vec![GaussRat::from_int(2), GaussRat::from_int(3)],
                vec![GaussRat::from_int(1), GaussRat::i()],
            ])
            .unwrap();
        // 2*1 - 3*i
        assert_eq!(v.as_constant(), Some(GaussRat::new(crate::gauss::rat_int(2), crate::gauss::rat_int(-3))));
    }
}
