//! Deciding when two marked-point configurations are equivalent under the
//! normalizer of the ambient group, and producing an explicit witness.
//!
//! Configurations of non-real conjugate pairs are acted on by `z -> l*z` and
//! `z -> l/z` with `l` a positive rational.  Configurations of fibre values
//! on a Hirzebruch model are acted on by real Mobius transformations.  Both
//! deciders work with the full conjugation-closed point set.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gauss::{fmt_rat, GaussRat, Rat};
use crate::linalg::nullspace_gauss;

fn closure(pts: &[GaussRat]) -> BTreeSet<GaussRat> {
    let mut s = BTreeSet::new();
    for p in pts {
        s.insert(p.clone());
        s.insert(p.conj());
    }
    s
}

fn require_nonreal(pts: &[GaussRat]) -> Result<()> {
    for p in pts {
        if p.is_real() {
            return Err(Error::RealPoint(p.to_string()));
        }
    }
    Ok(())
}

/// Witness for equivalence of two pair configurations: `z -> lambda * z`,
/// or `z -> lambda / z` when `inverted` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleWitness {
    pub lambda: Rat,
    pub inverted: bool,
}

impl std::fmt::Display for ScaleWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let l = fmt_rat(&self.lambda);
        if self.inverted {
            write!(f, "z -> {l}/z")
        } else if self.lambda.is_one() {
            write!(f, "z -> z")
        } else {
            write!(f, "z -> {l}*z")
        }
    }
}

impl ScaleWitness {
    pub fn apply(&self, z: &GaussRat) -> Result<GaussRat> {
        let l = GaussRat::from_rat(self.lambda.clone());
        if self.inverted {
            l.div(z)
        } else {
            Ok(&l * z)
        }
    }

    /// Sort key for picking the canonical witness: least displacement first,
    /// plain scalings before inversions, then the smaller scale factor.
    fn preference(&self) -> (Rat, bool, Rat) {
        let stretch = if self.lambda >= Rat::one() {
            self.lambda.clone()
        } else {
            Rat::one() / self.lambda.clone()
        };
        (stretch, self.inverted, self.lambda.clone())
    }
}

/// Decides equivalence of two configurations of non-real conjugate pairs,
/// each given by one representative per pair.  Returns the canonical witness
/// if the configurations are equivalent.
pub fn conjugate_pairs(a: &[GaussRat], b: &[GaussRat]) -> Result<Option<ScaleWitness>> {
    require_nonreal(a)?;
    require_nonreal(b)?;
    let fa = closure(a);
    let fb = closure(b);
    if fa.len() != fb.len() {
        return Err(Error::SizeMismatch(fa.len(), fb.len()));
    }
    let z0 = fa.iter().next().expect("configurations are nonempty");
    let mut found: Vec<ScaleWitness> = Vec::new();
    for w in &fb {
        // A scaling must send z0 somewhere in the target set.
        let lam = w.div(z0)?;
        if lam.is_real() && lam.re.is_positive() {
            let cand = ScaleWitness { lambda: lam.re.clone(), inverted: false };
            if maps_onto(&cand, &fa, &fb)? {
                found.push(cand);
            }
        }
        // An inversion sends z0 to lambda / z0.
        let lam = w * z0;
        if lam.is_real() && lam.re.is_positive() {
            let cand = ScaleWitness { lambda: lam.re.clone(), inverted: true };
            if maps_onto(&cand, &fa, &fb)? {
                found.push(cand);
            }
        }
    }
    found.sort_by_key(|w| w.preference());
    found.dedup();
    Ok(found.into_iter().next())
}

fn maps_onto(
    w: &ScaleWitness,
    from: &BTreeSet<GaussRat>,
    to: &BTreeSet<GaussRat>,
) -> Result<bool> {
    let mut image = BTreeSet::new();
    for z in from {
        image.insert(w.apply(z)?);
    }
    Ok(&image == to)
}

/// All self-equivalences of a pair configuration.
pub fn pair_symmetries(pts: &[GaussRat]) -> Result<Vec<ScaleWitness>> {
    require_nonreal(pts)?;
    let f = closure(pts);
    let z0 = f.iter().next().expect("configuration is nonempty");
    let mut out = Vec::new();
    for w in &f {
        let lam = w.div(z0)?;
        if lam.is_real() && lam.re.is_positive() {
            let cand = ScaleWitness { lambda: lam.re.clone(), inverted: false };
            if maps_onto(&cand, &f, &f)? {
                out.push(cand);
            }
        }
        let lam = w * z0;
        if lam.is_real() && lam.re.is_positive() {
            let cand = ScaleWitness { lambda: lam.re.clone(), inverted: true };
            if maps_onto(&cand, &f, &f)? {
                out.push(cand);
            }
        }
    }
    out.sort_by_key(|w| w.preference());
    out.dedup();
    Ok(out)
}

/// Canonical representative of a pair configuration under scalings and
/// inversions: for each of the two orientations, the unique positive scale
/// makes every point a Gaussian integer with no common integer factor; the
/// lexicographically smaller of the two resulting sets wins.  Returns sorted
/// upper-half representatives.
pub fn canonical_pairs(pts: &[GaussRat]) -> Result<Vec<GaussRat>> {
    require_nonreal(pts)?;
    let f = closure(pts);
    let direct: Vec<GaussRat> = f.iter().cloned().collect();
    let inverted: Result<Vec<GaussRat>> =
        f.iter().map(|z| GaussRat::one().div(z)).collect();
    let mut best: Option<Vec<GaussRat>> = None;
    for set in [direct, inverted?] {
        let scaled = primitive_scale(&set);
        let reps = upper_reps(&scaled);
        if best.as_ref().map_or(true, |b| reps < *b) {
            best = Some(reps);
        }
    }
    Ok(best.expect("both orientations produce a candidate"))
}

/// Scales a set by the unique positive rational making all coordinates
/// integers with overall content one.
fn primitive_scale(set: &[GaussRat]) -> Vec<GaussRat> {
    let mut lcm = BigInt::one();
    for z in set {
        lcm = lcm.lcm(z.re.denom());
        lcm = lcm.lcm(z.im.denom());
    }
    let l = Rat::from_integer(lcm);
    let mut content = BigInt::zero();
    for z in set {
        content = content.gcd((&z.re * &l).numer());
        content = content.gcd((&z.im * &l).numer());
    }
    if content.is_zero() {
        content = BigInt::one();
    }
    let factor = l / Rat::from_integer(content);
    set.iter().map(|z| z.scale(&factor)).collect()
}

fn upper_reps(set: &[GaussRat]) -> Vec<GaussRat> {
    let mut reps: BTreeSet<GaussRat> = BTreeSet::new();
    for z in set {
        if z.im.is_positive() {
            reps.insert(z.clone());
        }
    }
    reps.into_iter().collect()
}

/// A Mobius transformation `z -> (a z + b) / (c z + d)` with rational
/// coefficients, stored in primitive integer form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mobius {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl Mobius {
    pub fn identity() -> Self {
        Mobius { a: Rat::one(), b: Rat::zero(), c: Rat::zero(), d: Rat::one() }
    }

    pub fn is_identity(&self) -> bool {
        self.a == self.d && self.b.is_zero() && self.c.is_zero() && !self.a.is_zero()
    }

    pub fn det(&self) -> Rat {
        &self.a * &self.d - &self.b * &self.c
    }

    /// `None` when `z` is the pole.
    pub fn apply(&self, z: &GaussRat) -> Option<GaussRat> {
        let num = &(&GaussRat::from_rat(self.a.clone()) * z) + &GaussRat::from_rat(self.b.clone());
        let den = &(&GaussRat::from_rat(self.c.clone()) * z) + &GaussRat::from_rat(self.d.clone());
        num.div(&den).ok()
    }

    /// Clears denominators, removes the content, and fixes the sign so the
    /// denominator's leading coefficient is positive.
    fn normalize(mut self) -> Self {
        let mut lcm = BigInt::one();
        for r in [&self.a, &self.b, &self.c, &self.d] {
            lcm = lcm.lcm(r.denom());
        }
        let l = Rat::from_integer(lcm);
        let ints: Vec<BigInt> =
            [&self.a, &self.b, &self.c, &self.d].iter().map(|r| (*r * &l).numer().clone()).collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if content.is_zero() {
            content = BigInt::one();
        }
        let lead_negative = if self.c.is_zero() { ints[3].is_negative() } else { ints[2].is_negative() };
        if lead_negative {
            content = -content;
        }
        let factor = l / Rat::from_integer(content);
        self.a = &self.a * &factor;
        self.b = &self.b * &factor;
        self.c = &self.c * &factor;
        self.d = &self.d * &factor;
        self
    }
}

fn linear_str(p: &Rat, q: &Rat) -> String {
    if p.is_zero() {
        return fmt_rat(q);
    }
    let zpart = if p.is_one() {
        "z".to_string()
    } else if (-p).is_one() {
        "-z".to_string()
    } else {
        format!("{}*z", fmt_rat(p))
    };
    if q.is_zero() {
        zpart
    } else if q.is_positive() {
        format!("{zpart}+{}", fmt_rat(q))
    } else {
        format!("{zpart}-{}", fmt_rat(&-q))
    }
}

impl std::fmt::Display for Mobius {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.c.is_zero() {
            if self.d.is_one() {
                write!(f, "{}", linear_str(&self.a, &self.b))
            } else {
                write!(f, "({})/{}", linear_str(&self.a, &self.b), fmt_rat(&self.d))
            }
        } else {
            write!(f, "({})/({})", linear_str(&self.a, &self.b), linear_str(&self.c, &self.d))
        }
    }
}

/// Decides equivalence of two fibre-value configurations under real Mobius
/// transformations.  Inputs carry one representative per conjugate pair;
/// real values may be included directly.  A size mismatch simply means the
/// configurations are not equivalent.
pub fn conjugate_fibre_sets(a: &[GaussRat], b: &[GaussRat]) -> Result<Option<Mobius>> {
    let fa: Vec<GaussRat> = closure(a).into_iter().collect();
    let fb: Vec<GaussRat> = closure(b).into_iter().collect();
    if fa.len() != fb.len() {
        return Ok(None);
    }
    if fa.len() < 3 {
        return Err(Error::DegenerateTriple(fa.len()));
    }
    Ok(mobius_search(&fa, &fb))
}

/// All real Mobius transformations preserving a fibre-value configuration.
pub fn fibre_set_symmetries(pts: &[GaussRat]) -> Result<Vec<Mobius>> {
    let f: Vec<GaussRat> = closure(pts).into_iter().collect();
    if f.len() < 3 {
        return Err(Error::DegenerateTriple(f.len()));
    }
    let mut out = Vec::new();
    mobius_collect(&f, &f, &mut |m| {
        if !out.contains(&m) {
            out.push(m);
        }
        true
    });
    Ok(out)
}

fn mobius_search(fa: &[GaussRat], fb: &[GaussRat]) -> Option<Mobius> {
    let mut hit = None;
    mobius_collect(fa, fb, &mut |m| {
        hit = Some(m);
        false
    });
    hit
}

/// Tries every ordered triple of targets for the first three source points,
/// in lexicographic order, solving for the unique Mobius map; each real
/// solution carrying the whole source set onto the target set is offered to
/// `sink`, which returns `false` to stop the search.  Sorted inputs make the
/// identity the first witness found when the sets coincide.
fn mobius_collect(fa: &[GaussRat], fb: &[GaussRat], sink: &mut dyn FnMut(Mobius) -> bool) {
    let n = fb.len();
    let src: [&GaussRat; 3] = [&fa[0], &fa[1], &fa[2]];
    for i in 0..n {
        for j in 0..n {
            if j == i {
                continue;
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let tgt = [&fb[i], &fb[j], &fb[k]];
                let Some(m) = mobius_through(src, tgt) else { continue };
                if m.det().is_zero() {
                    continue;
                }
                if carries_onto(&m, fa, fb) && !sink(m) {
                    return;
                }
            }
        }
    }
}

/// The Mobius map sending three given points to three given points, if it is
/// real up to a complex scalar.
fn mobius_through(src: [&GaussRat; 3], tgt: [&GaussRat; 3]) -> Option<Mobius> {
    let mut rows = Vec::with_capacity(3);
    for (v, w) in src.iter().zip(tgt.iter()) {
        // a v + b - w (c v + d) = 0
        rows.push(vec![(*v).clone(), GaussRat::one(), -&(*w * *v), -&(*w).clone()]);
    }
    let ns = nullspace_gauss(rows);
    if ns.len() != 1 {
        return None;
    }
    let vec = &ns[0];
    let pivot = vec.iter().find(|e| !e.is_zero())?;
    let inv = pivot.inv().ok()?;
    let scaled: Vec<GaussRat> = vec.iter().map(|e| e * &inv).collect();
    if scaled.iter().any(|e| !e.is_real()) {
        return None;
    }
    let m = Mobius {
        a: scaled[0].re.clone(),
        b: scaled[1].re.clone(),
        c: scaled[2].re.clone(),
        d: scaled[3].re.clone(),
    };
    Some(m.normalize())
}

fn carries_onto(m: &Mobius, fa: &[GaussRat], fb: &[GaussRat]) -> bool {
    let mut image = BTreeSet::new();
    for z in fa {
        match m.apply(z) {
            Some(w) => {
                image.insert(w);
            }
            None => return false,
        }
    }
    let target: BTreeSet<GaussRat> = fb.iter().cloned().collect();
    image == target
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::{parse_gauss, rat_int};

    fn g(s: &str) -> GaussRat {
        parse_gauss(s).unwrap()
    }

    #[test]
    fn scaling_witness_is_preferred_over_inversion() {
        let w = conjugate_pairs(&[g("1+i")], &[g("2+2*i")]).unwrap().unwrap();
        assert_eq!(w, ScaleWitness { lambda: rat_int(2), inverted: false });
    }

    #[test]
    fn inversion_with_unit_stretch_beats_a_quarter_scaling() {
        let w = conjugate_pairs(&[g("2*i")], &[g("1/2*i")]).unwrap().unwrap();
        assert_eq!(w, ScaleWitness { lambda: rat_int(1), inverted: true });
    }

    #[test]
    fn inequivalent_pairs_and_size_mismatch() {
        assert!(conjugate_pairs(&[g("1+i")], &[g("1+2*i")]).unwrap().is_none());
        assert!(matches!(
            conjugate_pairs(&[g("1+i")], &[g("1+i"), g("2+i")]),
            Err(Error::SizeMismatch(2, 4))
        ));
    }

    #[test]
    fn canonical_pair_forms() {
        assert_eq!(canonical_pairs(&[g("2+2*i")]).unwrap(), vec![g("1+i")]);
        assert_eq!(canonical_pairs(&[g("1+i")]).unwrap(), vec![g("1+i")]);
        let a = canonical_pairs(&[g("i"), g("2*i")]).unwrap();
        let b = canonical_pairs(&[g("2*i"), g("4*i")]).unwrap();
        assert_eq!(a, vec![g("i"), g("2*i")]);
        assert_eq!(a, b);
    }

    #[test]
    fn fibre_translation_witness() {
        let m = conjugate_fibre_sets(&[g("0"), g("1"), g("2+i")], &[g("1"), g("2"), g("3+i")])
            .unwrap()
            .unwrap();
        assert_eq!(m.to_string(), "z+1");
        let id = conjugate_fibre_sets(&[g("0"), g("1"), g("2+i")], &[g("0"), g("1"), g("2+i")])
            .unwrap()
            .unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn fibre_sets_that_differ_in_cross_ratio() {
        let r = conjugate_fibre_sets(
            &[g("0"), g("1"), g("2"), g("3")],
            &[g("0"), g("1"), g("2"), g("4")],
        )
        .unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn four_real_points_admit_the_flip() {
        let syms = fibre_set_symmetries(&[g("0"), g("1"), g("2"), g("3")]).unwrap();
        assert!(syms.iter().any(|m| m.is_identity()));
        let flip = Mobius { a: -Rat::one(), b: rat_int(3), c: Rat::zero(), d: Rat::one() };
        let flip = flip.normalize();
        assert!(syms.contains(&flip));
    }
}
