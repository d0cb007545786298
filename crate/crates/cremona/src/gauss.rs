//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with positive denominator
/// (both invariants are maintained by the backing implementation).
pub type Rat = BigRational;

/// Rational `n/d`.  Panics when `d == 0`; only used with literal arguments.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q` with optional sign.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational literal `{s}`"));
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (t, None),
    };
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = match den {
        Some(b) => BigInt::from_str(b).map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rat::new(n, d))
}

/// Formats as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact square root of a nonnegative rational, when it is a perfect square.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Exact `n`-th root of a rational, when one exists in `Q`.  For even `n` the
/// argument must be nonnegative and the nonnegative root is returned; for odd
/// `n` the sign carries through.
pub fn rat_nth_root(r: &Rat, n: u32) -> Option<Rat> {
    assert!(n > 0);
    if n == 1 {
        return Some(r.clone());
    }
    if r.is_negative() {
        if n % 2 == 0 {
            return None;
        }
        return rat_nth_root(&-r, n).map(|x| -x);
    }
    let nu = r.numer().nth_root(n);
    let de = r.denom().nth_root(n);
    if &num_traits::pow(nu.clone(), n as usize) == r.numer()
        && &num_traits::pow(de.clone(), n as usize) == r.denom()
    {
        Some(Rat::new(nu, de))
    } else {
        None
    }
}

/// An element of `Q(i)`.  Ordered lexicographically by `(re, im)`; the order
/// is used only to keep containers and printed output deterministic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat { re, im: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    /// `a + b i` from integer parts.
    pub fn from_parts(a: i64, b: i64) -> Self {
        GaussRat { re: rat_int(a), im: rat_int(b) }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GaussRat { re: Rat::zero(), im: Rat::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -&self.im }
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(GaussRat { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        GaussRat { re: &self.re * r, im: &self.im * r }
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -&self.re, im: -&self.im }
    }
}

/// Exact square root in `Q(i)`, when one exists.  For a nonzero result the
/// representative with positive real part (or, on the imaginary axis,
/// positive imaginary part) is returned.
pub fn gauss_sqrt(z: &GaussRat) -> Option<GaussRat> {
    if z.is_zero() {
        return Some(GaussRat::zero());
    }
    if z.im.is_zero() {
        return if z.re.is_positive() {
            rat_sqrt(&z.re).map(GaussRat::from_rat)
        } else {
            rat_sqrt(&-&z.re).map(|s| GaussRat::new(Rat::zero(), s))
        };
    }
    let n = rat_sqrt(&z.norm())?;
    let x = rat_sqrt(&((&z.re + &n) / rat_int(2)))?;
    if x.is_zero() {
        return None;
    }
    let y = &z.im / (rat_int(2) * &x);
    let w = GaussRat::new(x, y);
    debug_assert_eq!(&(&w * &w), z);
    Some(w)
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let im_part = |r: &Rat| -> String {
            if r.is_one() {
                "i".into()
            } else if (-r).is_one() {
                "-i".into()
            } else {
                format!("{}*i", fmt_rat(r))
            }
        };
        if self.re.is_zero() {
            return write!(f, "{}", im_part(&self.im));
        }
        if self.im.is_negative() {
            let pos = -&self.im;
            if pos.is_one() {
                write!(f, "{}-i", fmt_rat(&self.re))
            } else {
                write!(f, "{}-{}*i", fmt_rat(&self.re), fmt_rat(&pos))
            }
        } else {
            write!(f, "{}+{}", fmt_rat(&self.re), im_part(&self.im))
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl crate::expr::ExprValue for GaussRat {
    fn e_add(self, other: Self) -> Self {
        &self + &other
    }
    fn e_sub(self, other: Self) -> Self {
        &self - &other
    }
    fn e_mul(self, other: Self) -> Self {
        &self * &other
    }
    fn e_neg(self) -> Self {
        -&self
    }
    fn e_pow(self, k: u32) -> Self {
        let mut acc = GaussRat::one();
        for _ in 0..k {
            acc = &acc * &self;
        }
        acc
    }
}

/// Parses a closed-form scalar such as `2`, `-1/2`, `1+i`, or `(2-3*i)^2`.
pub fn parse_gauss(src: &str) -> Result<GaussRat> {
    crate::expr::parse_expr(
        src,
        &mut |name| {
            if name == "i" {
                Ok(GaussRat::i())
            } else {
                Err(Error::UndeclaredSymbol(name.to_string()))
            }
        },
        &mut |r| GaussRat::from_rat(r),
    )
}

/// A point of the projective line over `Q(i)`: either `[z : 1]` or `[1 : 0]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum P1Pt {
    Finite(GaussRat),
    Inf,
}

impl P1Pt {
    /// Normalizes homogeneous coordinates `[a : b]`.
    pub fn from_coords(a: &GaussRat, b: &GaussRat) -> Result<P1Pt> {
        if b.is_zero() {
            if a.is_zero() {
                return Err(Error::ZeroBlock);
            }
            Ok(P1Pt::Inf)
        } else {
            Ok(P1Pt::Finite(a.div(b)?))
        }
    }

    /// Homogeneous coordinates `[a : b]`.
    pub fn coords(&self) -> (GaussRat, GaussRat) {
        match self {
            P1Pt::Finite(z) => (z.clone(), GaussRat::one()),
            P1Pt::Inf => (GaussRat::one(), GaussRat::zero()),
        }
    }

    pub fn conj(&self) -> P1Pt {
        match self {
            P1Pt::Finite(z) => P1Pt::Finite(z.conj()),
            P1Pt::Inf => P1Pt::Inf,
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            P1Pt::Finite(z) => z.is_real(),
            P1Pt::Inf => true,
        }
    }
}

impl fmt::Display for P1Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Pt::Finite(z) => write!(f, "[{z}:1]"),
            P1Pt::Inf => write!(f, "[1:0]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GaussRat {
        GaussRat::from_parts(a, b)
    }

    #[test]
    fn conjugation_and_norm() {
        let z = g(2, 3);
        assert_eq!(z.conj(), g(2, -3));
        assert_eq!(z.norm(), rat_int(13));
        assert_eq!(&z * &z.conj(), GaussRat::from_rat(rat_int(13)));
    }

    #[test]
    fn inverse_of_one_plus_i() {
        let z = g(1, 1);
        let w = z.inv().unwrap();
        assert_eq!(w, GaussRat::new(rat(1, 2), rat(-1, 2)));
        assert_eq!(&z * &w, GaussRat::one());
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(matches!(GaussRat::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn order_is_lexicographic() {
        assert!(g(1, 5) < g(2, 0));
        assert!(g(1, -1) < g(1, 1));
    }

    #[test]
    fn rational_parsing_and_formatting() {
        assert_eq!(parse_rat("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(fmt_rat(&rat(-1, 2)), "-1/2");
        assert_eq!(fmt_rat(&rat_int(7)), "7");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&rat_int(2)), None);
        // (1+i)^2 = 2i
        assert_eq!(gauss_sqrt(&g(0, 2)), Some(g(1, 1)));
        // sqrt(-4) = 2i
        assert_eq!(gauss_sqrt(&g(-4, 0)), Some(g(0, 2)));
        // sqrt(i) is not in Q(i)
        assert_eq!(gauss_sqrt(&GaussRat::i()), None);
        // (3+2i)^2 = 5+12i
        assert_eq!(gauss_sqrt(&g(5, 12)), Some(g(3, 2)));
    }

    #[test]
    fn exact_nth_roots() {
        assert_eq!(rat_nth_root(&rat(27, 8), 3), Some(rat(3, 2)));
        assert_eq!(rat_nth_root(&rat_int(-8), 3), Some(rat_int(-2)));
        assert_eq!(rat_nth_root(&rat_int(-4), 2), None);
        assert_eq!(rat_nth_root(&rat_int(5), 2), None);
        assert_eq!(rat_nth_root(&rat(16, 81), 4), Some(rat(2, 3)));
    }

    #[test]
    fn p1_points() {
        let p = P1Pt::from_coords(&g(2, 2), &g(2, 0)).unwrap();
        assert_eq!(p, P1Pt::Finite(g(1, 1)));
        assert_eq!(P1Pt::from_coords(&g(1, 0), &g(0, 0)).unwrap(), P1Pt::Inf);
        assert!(P1Pt::from_coords(&g(0, 0), &g(0, 0)).is_err());
        assert!(!p.is_real());
        assert_eq!(p.conj(), P1Pt::Finite(g(1, -1)));
    }
}
