//! Binary forms on the projective line and exact root extraction over `Q(i)`.
//!
//! Restrictions of maps to rational curves produce binary forms in the curve
//! parameter.  Base points along the curve are the common roots of those
//! forms, so the workhorse here is the gcd followed by complete factorization
//! into linear factors.  Factoring is exact: linear and quadratic polynomials
//! always factor (or provably do not split over `Q(i)`), higher degrees go
//! through squarefree reduction and then root peeling with candidates from
//! the rational root theorem over `Z[i]`.  When factoring fails the caller
//! reports an inconclusive result rather than guessing.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gauss::{gauss_sqrt, GaussRat, P1Pt, Rat};
use crate::poly::MultiPoly;

/// Dense univariate polynomial over `Q(i)`, coefficients in ascending degree,
/// no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct UniPoly {
    c: Vec<GaussRat>,
}

impl UniPoly {
    pub fn new(mut c: Vec<GaussRat>) -> Self {
        while c.last().map(|x| x.is_zero()) == Some(true) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.c
    }

    fn lead(&self) -> &GaussRat {
        self.c.last().expect("nonzero")
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().expect("nonzero lead");
        UniPoly::new(self.c.iter().map(|x| x * &inv).collect())
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, x)| x.scale(&crate::gauss::rat_int(k as i64)))
            .collect();
        UniPoly::new(c)
    }

    pub fn divrem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let mut rem = self.c.clone();
        let dlen = div.c.len();
        if rem.len() < dlen {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![GaussRat::zero(); rem.len() - dlen + 1];
        let lead_inv = div.lead().inv().expect("nonzero lead");
        for k in (0..quo.len()).rev() {
            let q = &rem[k + dlen - 1] * &lead_inv;
            if !q.is_zero() {
                for (j, d) in div.c.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&q * d);
                }
            }
            quo[k] = q;
        }
        rem.truncate(dlen - 1);
        (UniPoly::new(quo), UniPoly::new(rem))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divides by `s - r`; `None` when `r` is not a root.
    fn div_by_root(&self, r: &GaussRat) -> Option<Self> {
        let (q, rem) = self.divrem(&UniPoly::new(vec![-r, GaussRat::one()]));
        if rem.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// All roots in `Q(i)`, each once, provided the polynomial can be shown
    /// to split completely at this degree.
    fn distinct_roots(&self) -> Option<Vec<GaussRat>> {
        match self.degree() {
            None => panic!("roots of the zero polynomial"),
            Some(0) => Some(Vec::new()),
            Some(1) => {
                let r = (-&self.c[0]).div(&self.c[1]).expect("nonzero lead");
                Some(vec![r])
            }
            Some(2) => {
                let (a, b, c) = (&self.c[2], &self.c[1], &self.c[0]);
                let disc = &(b * b) - &(&(a * c).scale(&crate::gauss::rat_int(4)));
                let sq = gauss_sqrt(&disc)?;
                let two_a_inv = a.scale(&crate::gauss::rat_int(2)).inv().expect("nonzero lead");
                let r1 = &(&sq - b) * &two_a_inv;
                let r2 = &(&(-&sq) - b) * &two_a_inv;
                if r1 == r2 {
                    Some(vec![r1])
                } else {
                    Some(vec![r1, r2])
                }
            }
            Some(_) => {
                let g = self.gcd(&self.derivative());
                if g.degree() == Some(0) {
                    self.split_squarefree()
                } else {
                    let (sf, rem) = self.divrem(&g);
                    debug_assert!(rem.is_zero());
                    sf.distinct_roots()
                }
            }
        }
    }

    /// Splits a squarefree polynomial of degree at least three: roots from
    /// the `Z[i]` rational root theorem are peeled off one by one, and a
    /// quadratic tail goes through the discriminant.  Candidates cover every
    /// root in `Q(i)`, so a remainder of degree three or more proves the
    /// polynomial does not split.
    fn split_squarefree(&self) -> Option<Vec<GaussRat>> {
        let mut rest = self.clone();
        let mut found = Vec::new();
        if rest.c[0].is_zero() {
            rest = rest.div_by_root(&GaussRat::zero()).expect("zero constant term");
            found.push(GaussRat::zero());
        }
        for cand in root_candidates(&rest)? {
            if rest.degree() < Some(3) {
                break;
            }
            if let Some(q) = rest.div_by_root(&cand) {
                rest = q;
                found.push(cand);
            }
        }
        if rest.degree() > Some(2) {
            return None;
        }
        found.extend(rest.distinct_roots()?);
        Some(found)
    }

    /// Complete factorization into linear factors: `(root, multiplicity)`
    /// pairs with multiplicities summing to the degree, or `None` when the
    /// polynomial does not visibly split over `Q(i)`.
    pub fn factor_complete(&self) -> Option<Vec<(GaussRat, usize)>> {
        let roots = self.distinct_roots()?;
        let mut out = Vec::with_capacity(roots.len());
        let mut rest = self.clone();
        for r in roots {
            let mut mult = 0usize;
            while let Some(q) = rest.div_by_root(&r) {
                rest = q;
                mult += 1;
            }
            debug_assert!(mult > 0);
            out.push((r, mult));
        }
        if rest.degree() == Some(0) {
            Some(out)
        } else {
            None
        }
    }
}

/// Gaussian integer, real and imaginary parts.
type GInt = (BigInt, BigInt);

fn gnorm(z: &GInt) -> BigInt {
    &z.0 * &z.0 + &z.1 * &z.1
}

fn gmul(a: &GInt, b: &GInt) -> GInt {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

/// Nearest integer to `a / b` for `b > 0`.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a * 2u32 + b).div_floor(&(b * 2u32))
}

/// Euclidean gcd in `Z[i]`, normalized only up to units.
fn gauss_gcd(mut a: GInt, mut b: GInt) -> GInt {
    while !(b.0.is_zero() && b.1.is_zero()) {
        let n = gnorm(&b);
        let re = &a.0 * &b.0 + &a.1 * &b.1;
        let im = &a.1 * &b.0 - &a.0 * &b.1;
        let q = (round_div(&re, &n), round_div(&im, &n));
        let qb = gmul(&q, &b);
        let r = (&a.0 - &qb.0, &a.1 - &qb.1);
        a = b;
        b = r;
    }
    a
}

fn gauss_div_exact(a: &GInt, b: &GInt) -> Option<GInt> {
    let n = gnorm(b);
    if n.is_zero() {
        return None;
    }
    let re = &a.0 * &b.0 + &a.1 * &b.1;
    let im = &a.1 * &b.0 - &a.0 * &b.1;
    let (qr, rr) = re.div_rem(&n);
    let (qi, ri) = im.div_rem(&n);
    (rr.is_zero() && ri.is_zero()).then_some((qr, qi))
}

/// Trial division; `None` when a cofactor beyond the trial bound remains
/// composite, since its factors cannot be recovered.
fn factor_integer(mut n: BigInt) -> Option<Vec<(BigInt, u32)>> {
    debug_assert!(n.is_positive());
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let bound = BigInt::from(1_000_000u32);
    let mut d = BigInt::from(2u32);
    while &d * &d <= n && d <= bound {
        let mut e = 0u32;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += if d == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if n > BigInt::one() {
        if &d * &d > n {
            out.push((n, 1));
        } else {
            return None;
        }
    }
    Some(out)
}

/// A square root of `-1` modulo a prime `p = 1 mod 4`, found from the first
/// quadratic nonresidue.
fn sqrt_minus_one(p: &BigInt) -> Option<BigInt> {
    let pm1 = p - BigInt::one();
    let leg = &pm1 >> 1;
    let quarter = &pm1 >> 2;
    let mut a = BigInt::from(2u32);
    for _ in 0..64 {
        if a.modpow(&leg, p) == pm1 {
            return Some(a.modpow(&quarter, p));
        }
        a += 1u32;
    }
    None
}

/// Products of the Gaussian prime powers seen in the norm of `z`, up to
/// units: a superset of the divisors of `z`, which is all the candidate
/// machinery needs.
fn gauss_divisors(z: &GInt) -> Option<Vec<GInt>> {
    let mut primes: Vec<(GInt, u32)> = Vec::new();
    for (p, e) in factor_integer(gnorm(z))? {
        if p == BigInt::from(2u32) {
            primes.push(((BigInt::one(), BigInt::one()), e));
        } else if (&p % BigInt::from(4u32)) == BigInt::from(3u32) {
            primes.push(((p, BigInt::zero()), e / 2));
        } else {
            let x = sqrt_minus_one(&p)?;
            let pi = gauss_gcd((p.clone(), BigInt::zero()), (x, BigInt::one()));
            let bar = (pi.0.clone(), -&pi.1);
            primes.push((pi, e));
            primes.push((bar, e));
        }
    }
    let mut out: Vec<GInt> = vec![(BigInt::one(), BigInt::zero())];
    for (pi, e) in primes {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = gmul(&acc, &pi);
                next.push(acc.clone());
            }
        }
        out = next;
        if out.len() > 4096 {
            return None;
        }
    }
    Some(out)
}

/// Candidate roots `u * p / q` of a polynomial with nonzero ends: `p` runs
/// over divisors of the constant term and `q` over divisors of the leading
/// term of an integral model, `u` over the units of `Z[i]`.
fn root_candidates(poly: &UniPoly) -> Option<Vec<GaussRat>> {
    let mut scale = BigInt::one();
    for c in &poly.c {
        scale = scale.lcm(c.re.denom());
        scale = scale.lcm(c.im.denom());
    }
    let ints: Vec<GInt> = poly
        .c
        .iter()
        .map(|c| {
            (
                c.re.numer() * &scale / c.re.denom(),
                c.im.numer() * &scale / c.im.denom(),
            )
        })
        .collect();
    let mut content = (BigInt::zero(), BigInt::zero());
    for z in &ints {
        content = gauss_gcd(content, z.clone());
    }
    let first = gauss_div_exact(ints.first()?, &content)?;
    let last = gauss_div_exact(ints.last()?, &content)?;
    let d0 = gauss_divisors(&first)?;
    let dd = gauss_divisors(&last)?;
    if d0.len() * dd.len() > 4096 {
        return None;
    }
    let mut out = BTreeSet::new();
    for p in &d0 {
        let pg = GaussRat::new(Rat::from_integer(p.0.clone()), Rat::from_integer(p.1.clone()));
        for q in &dd {
            let qg =
                GaussRat::new(Rat::from_integer(q.0.clone()), Rat::from_integer(q.1.clone()));
            let mut cand = pg.div(&qg).ok()?;
            for _ in 0..4 {
                out.insert(cand.clone());
                cand = &cand * &GaussRat::i();
            }
        }
    }
    Some(out.into_iter().collect())
}

/// A binary form `sum c_k t0^(d-k) t1^k` of formal degree `d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinForm {
    /// `coeffs[k]` multiplies `t0^(d-k) t1^k`; length `d + 1`.
    pub coeffs: Vec<GaussRat>,
}

impl BinForm {
    /// Reads a homogeneous polynomial on a single two-variable block with
    /// constant coefficients.
    pub fn from_multipoly(p: &MultiPoly) -> Result<BinForm> {
        if p.blocks().flat_len() != 2 || p.blocks().block_count() != 1 {
            return Err(Error::Unsupported("binary form needs one block of two variables".into()));
        }
        let d = match p.multidegree()? {
            crate::poly::Multidegree::Homogeneous(v) => v[0] as usize,
            crate::poly::Multidegree::Mixed => {
                return Err(Error::NotMultihomogeneous(p.to_string()))
            }
        };
        let mut coeffs = vec![GaussRat::zero(); d + 1];
        for (m, c) in p.term_view() {
            let k = m[1] as usize;
            let val = c
                .as_constant()
                .ok_or_else(|| Error::Unsupported("binary form needs constant coefficients".into()))?;
            coeffs[k] = val;
        }
        Ok(BinForm { coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Formal degree.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Dehomogenization `h(s) = F(s, 1)`, ascending coefficients.
    fn dehom(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Multiplicity of the root `[1:0]`.
    fn inf_mult(&self) -> usize {
        match self.dehom().degree() {
            Some(d) => self.degree() - d,
            None => 0,
        }
    }

    fn from_parts(h: &UniPoly, inf: usize) -> BinForm {
        // F = t1^inf * homogenization of h in s = t0/t1.
        let d = h.degree().expect("nonzero") + inf;
        let mut coeffs = vec![GaussRat::zero(); d + 1];
        for (j, c) in h.coeffs().iter().enumerate() {
            // s^j contributes t0^j t1^(deg h - j) * t1^inf, i.e. k = d - j.
            coeffs[d - j] = c.clone();
        }
        BinForm { coeffs }
    }

    /// Monic gcd; either argument may be zero.
    pub fn gcd(&self, other: &BinForm) -> BinForm {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let g = self.dehom().gcd(&other.dehom());
        let inf = self.inf_mult().min(other.inf_mult());
        BinForm::from_parts(&g, inf)
    }

    /// Gcd of a family, skipping zero forms; `None` when all are zero.
    pub fn gcd_all<'a>(forms: impl IntoIterator<Item = &'a BinForm>) -> Option<BinForm> {
        let mut acc: Option<BinForm> = None;
        for f in forms {
            if f.is_zero() {
                continue;
            }
            acc = Some(match acc {
                None => f.clone(),
                Some(g) => g.gcd(f),
            });
        }
        acc
    }

    /// Exact roots with multiplicities, or `None` when complete factorization
    /// over `Q(i)` is out of reach.
    pub fn roots(&self) -> Option<Vec<(P1Pt, usize)>> {
        assert!(!self.is_zero(), "roots of the zero form");
        let h = self.dehom();
        let inf = self.inf_mult();
        let mut out = Vec::new();
        if inf > 0 {
            out.push((P1Pt::Inf, inf));
        }
        if h.degree() == Some(0) {
            return Some(out);
        }
        let fin = h.factor_complete()?;
        out.extend(fin.into_iter().map(|(r, m)| (P1Pt::Finite(r), m)));
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::rat_int;
    use crate::param::ParamSystem;
    use crate::poly::VarBlocks;

    fn form(src: &str) -> BinForm {
        let b = VarBlocks::new(&[&["t0", "t1"]]);
        BinForm::from_multipoly(&MultiPoly::parse(&b, &ParamSystem::empty(), src).unwrap())
            .unwrap()
    }

    fn eval(p: &UniPoly, z: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for x in p.coeffs().iter().rev() {
            acc = &(&acc * z) + x;
        }
        acc
    }

    #[test]
    fn sum_of_squares_has_conjugate_roots() {
        let f = form("t0^2 + t1^2");
        let mut roots = f.roots().unwrap();
        roots.sort();
        assert_eq!(
            roots,
            vec![
                (P1Pt::Finite(GaussRat::from_parts(0, -1)), 1),
                (P1Pt::Finite(GaussRat::from_parts(0, 1)), 1),
            ]
        );
    }

    #[test]
    fn gcd_strips_unshared_factors() {
        let a = form("(t0^2 + t1^2)*t1");
        let b = form("(t0^2 + t1^2)*t0");
        let g = a.gcd(&b);
        assert_eq!(g, form("t0^2 + t1^2"));
    }

    #[test]
    fn infinity_and_repeated_roots() {
        let f = form("t1^2*t0 - 2*t1^3");
        let mut roots = f.roots().unwrap();
        roots.sort();
        assert!(roots.contains(&(P1Pt::Inf, 2)));
        assert!(roots.contains(&(P1Pt::Finite(GaussRat::from_int(2)), 1)));

        let sq = form("(t0 - t1)^2*(t0^2 + t1^2)");
        let r = sq.roots().unwrap();
        assert!(r.contains(&(P1Pt::Finite(GaussRat::from_int(1)), 2)));
    }

    #[test]
    fn irrational_roots_stay_unfactored() {
        // s^3 = 2 has no solution in Q(i).
        assert_eq!(form("t0^3 - 2*t1^3").roots(), None);
        // s^2 = i has no solution in Q(i) either.
        assert_eq!(form("t0^2 - i*t1^2").roots(), None);
    }

    #[test]
    fn squarefree_quartics_split_by_root_peeling() {
        let f = form("(t0 - t1)*(t0 - 2*t1)*(t0 - (1+i)*t1)*(t0 - (1-i)*t1)");
        let roots = f.roots().unwrap();
        assert_eq!(roots.len(), 4);
        assert!(roots.contains(&(P1Pt::Finite(GaussRat::from_parts(1, 1)), 1)));
        assert!(roots.contains(&(P1Pt::Finite(GaussRat::from_int(2)), 1)));
        // One factor staying irreducible spoils the whole factorization.
        assert_eq!(form("(t0^2 - 2*t1^2)*(t0^2 - t1^2)").roots(), None);
    }

    #[test]
    fn unipoly_division() {
        let p = UniPoly::new(vec![
            GaussRat::from_int(-2),
            GaussRat::from_int(0),
            GaussRat::from_int(1),
        ]);
        let d = UniPoly::new(vec![GaussRat::from_int(1), GaussRat::from_int(1)]);
        let (q, r) = p.divrem(&d);
        // s^2 - 2 = (s + 1)(s - 1) - 1
        assert_eq!(q, UniPoly::new(vec![GaussRat::from_int(-1), GaussRat::from_int(1)]));
        assert_eq!(r, UniPoly::new(vec![GaussRat::from_int(-1)]));
        assert_eq!(eval(&p, &GaussRat::from_int(3)), GaussRat::from_rat(rat_int(7)));
    }
}
