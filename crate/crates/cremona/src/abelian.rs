//! The abelian invariant attached to a non-real base point and the group it
//! lands in.
//!
//! The target group is the direct sum, over all rational values of the
//! invariant, of copies of Z/2.  An element is the finite set of values whose
//! coordinate is 1; addition is symmetric difference.  The group is not
//! finitely generated, which is witnessed by producing, for any finite set of
//! values, a rational value outside it.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gauss::{fmt_rat, P1Pt, Rat};

/// Invariant of a non-real point `[a+bi : 1]`: the quotient `a / |b|`.
///
/// Real points and the point at infinity carry no invariant and are
/// rejected.
pub fn nu(p: &P1Pt) -> Result<Rat> {
    match p {
        P1Pt::Inf => Err(Error::InfinitePoint),
        P1Pt::Finite(z) => {
            if z.is_real() {
                return Err(Error::RealPoint(z.to_string()));
            }
            Ok(&z.re / z.im.abs())
        }
    }
}

/// An element of the direct sum of Z/2 indexed by Q: the set of indices
/// with a nonzero coordinate.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AbImage(pub BTreeSet<Rat>);

impl AbImage {
    pub fn zero() -> Self {
        AbImage::default()
    }

    pub fn singleton(v: Rat) -> Self {
        let mut s = BTreeSet::new();
        s.insert(v);
        AbImage(s)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Group law: symmetric difference of supports.
    pub fn add(&self, other: &Self) -> Self {
        AbImage(self.0.symmetric_difference(&other.0).cloned().collect())
    }
}

impl std::fmt::Display for AbImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|v| format!("e[{}]", fmt_rat(v))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Image of a fibration automorphism in the abelianized group.
///
/// An element that preserves each of the two disjoint sections contributes
/// nothing.  An element that exchanges them contributes one generator per
/// conjugate pair of marked points, indexed by the invariant of the pair;
/// pairs sharing an invariant cancel two by two.
pub fn abel_image(invariants: &[Rat], swaps_sections: bool) -> AbImage {
    if !swaps_sections {
        return AbImage::zero();
    }
    invariants
        .iter()
        .fold(AbImage::zero(), |acc, v| acc.add(&AbImage::singleton(v.clone())))
}

/// Variant rule keyed to the fibrewise property instead of the section swap:
/// elements acting trivially on the base map to zero, everything else to the
/// full sum.  Kept separate so reports can flag where the two rules disagree.
pub fn abel_image_literal(invariants: &[Rat], fibrewise: bool) -> AbImage {
    if fibrewise {
        return AbImage::zero();
    }
    invariants
        .iter()
        .fold(AbImage::zero(), |acc, v| acc.add(&AbImage::singleton(v.clone())))
}

/// Whether two non-real points lie on a common index class: `q` is a positive
/// real multiple of `p` or of its conjugate.  Errors on real or infinite
/// input, matching [`nu`].
pub fn nu_class_equal(p: &P1Pt, q: &P1Pt) -> Result<bool> {
    Ok(nu(p)? == nu(q)?)
}

/// First rational in a fixed enumeration of the non-negative rationals that
/// avoids `taken`.  Exhibits a fresh index for any finite support, which is
/// what makes the target group infinitely generated.
pub fn fresh_index(taken: &BTreeSet<Rat>) -> Rat {
    let mut q: Rat = Zero::zero();
    loop {
        if !taken.contains(&q) {
            return q;
        }
        // Calkin-Wilf step, extended to start from zero.
        let next = Rat::from_integer(1.into()) / (Rat::from_integer(2.into()) * q.floor() - &q
            + Rat::from_integer(1.into()));
        q = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::{parse_gauss, rat, rat_int, GaussRat};

    fn pt(s: &str) -> P1Pt {
        P1Pt::Finite(parse_gauss(s).unwrap())
    }

    #[test]
    fn nu_classes_are_positive_ray_classes() {
        // Over a small corpus, nu agrees exactly with the relation
        // "q = lambda p or lambda conj(p) for some lambda > 0".
        let mut corpus = Vec::new();
        for re in -2i64..=2 {
            for im in [1i64, 2, 3] {
                let z = GaussRat { re: rat_int(re), im: rat(im, 2) };
                corpus.push(P1Pt::Finite(z));
            }
        }
        for p in &corpus {
            for q in &corpus {
                let (zp, zq) = match (p, q) {
                    (P1Pt::Finite(a), P1Pt::Finite(b)) => (a, b),
                    _ => unreachable!(),
                };
                let same_ray = |a: &GaussRat, b: &GaussRat| {
                    // b = lambda a with lambda > 0 real
                    let lam_re = &b.re * &a.re + &b.im * &a.im;
                    let cross = &b.im * &a.re - &b.re * &a.im;
                    cross.is_zero() && lam_re > Zero::zero()
                };
                let related = same_ray(zp, zq) || same_ray(&zp.conj(), zq);
                assert_eq!(
                    nu_class_equal(p, q).unwrap(),
                    related,
                    "class test at {zp} vs {zq}"
                );
            }
        }
    }

    #[test]
    fn literal_rule_keys_on_fibrewise_flag() {
        let inv = [rat_int(1)];
        assert!(abel_image_literal(&inv, true).is_zero());
        assert_eq!(abel_image_literal(&inv, false), abel_image(&inv, true));
    }

    #[test]
    fn nu_values() {
        assert_eq!(nu(&pt("2+3*i")).unwrap(), rat(2, 3));
        assert_eq!(nu(&pt("i")).unwrap(), rat_int(0));
        // [2+2i : 2] normalises to 1+i.
        let p = P1Pt::from_coords(
            &parse_gauss("2+2*i").unwrap(),
            &parse_gauss("2").unwrap(),
        )
        .unwrap();
        assert_eq!(nu(&p).unwrap(), rat_int(1));
        // Negative imaginary part is folded away.
        assert_eq!(nu(&pt("2-3*i")).unwrap(), rat(2, 3));
    }

    #[test]
    fn nu_rejects_degenerate_points() {
        assert!(matches!(nu(&pt("3")), Err(Error::RealPoint(_))));
        assert!(matches!(nu(&P1Pt::Inf), Err(Error::InfinitePoint)));
    }

    #[test]
    fn image_addition_cancels_in_pairs() {
        let e1 = AbImage::singleton(rat_int(1));
        assert!(e1.add(&e1).is_zero());
        let e2 = AbImage::singleton(rat(1, 2));
        let sum = e1.add(&e2);
        assert_eq!(sum.0.len(), 2);
        assert_eq!(sum.add(&e1), e2);
    }

    #[test]
    fn fresh_index_walks_the_enumeration() {
        let mut taken = BTreeSet::new();
        assert_eq!(fresh_index(&taken), rat_int(0));
        taken.insert(rat_int(0));
        taken.insert(rat_int(1));
        assert_eq!(fresh_index(&taken), rat(1, 2));
        taken.insert(rat(1, 2));
        assert_eq!(fresh_index(&taken), rat_int(2));
    }
}
