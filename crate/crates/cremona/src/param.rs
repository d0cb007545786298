//! Symbolic real parameters with a terminating rewrite system.
//!
//! Continuous families of automorphisms carry real parameters: a point on the
//! unit circle, a scale factor together with its inverse, coefficients of a
//! translation.  A [`ParamSystem`] declares the symbols and the algebraic
//! relations among them.  Exactly two rule shapes are allowed:
//!
//! - a power of one symbol rewrites to a polynomial in the others, e.g.
//!   `a_im^2 -> 1 - a_re^2`;
//! - a product of two symbols rewrites to 1, e.g. `r * r_inv -> 1`.
//!
//! Every rule must strictly decrease the graded lexicographic order induced
//! by the declaration order of the symbols.  Reduction therefore terminates,
//! and reduced forms are the canonical representatives: a polynomial is zero
//! on the parameter variety exactly when its reduced form has no terms.
//! All symbols denote real quantities; complex parameters are split into
//! real and imaginary parts by the caller.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::expr::{parse_expr, ExprValue};
use crate::gauss::{GaussRat, Rat};

type Mono = Box<[u16]>;
type Terms = BTreeMap<Mono, GaussRat>;

/// Graded lexicographic comparison; earlier symbols are more significant.
pub(crate) fn gl_cmp(a: &[u16], b: &[u16]) -> std::cmp::Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, PartialEq)]
enum Rule {
    /// `sym^exp -> rhs`.
    Power { sym: usize, exp: u16, rhs: Vec<(Mono, GaussRat)> },
    /// `a * b -> 1`.
    ProductUnit { a: usize, b: usize },
}

/// A set of real parameter symbols together with their rewrite rules.
#[derive(Debug, PartialEq)]
pub struct ParamSystem {
    names: Vec<String>,
    rules: Vec<Rule>,
}

static EMPTY: Lazy<Arc<ParamSystem>> =
    Lazy::new(|| Arc::new(ParamSystem { names: Vec::new(), rules: Vec::new() }));

impl ParamSystem {
    /// The system with no symbols; every polynomial over it is a constant.
    pub fn empty() -> Arc<ParamSystem> {
        EMPTY.clone()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// For a symbol taking part in a product-unit rule, its partner.
    fn unit_partner(&self, sym: usize) -> Option<usize> {
        self.rules.iter().find_map(|r| match r {
            Rule::ProductUnit { a, b } if *a == sym => Some(*b),
            Rule::ProductUnit { a, b } if *b == sym => Some(*a),
            _ => None,
        })
    }

    fn first_applicable(&self, m: &[u16]) -> Option<&Rule> {
        self.rules.iter().find(|r| match r {
            Rule::Power { sym, exp, .. } => m[*sym] >= *exp,
            Rule::ProductUnit { a, b } => m[*a] >= 1 && m[*b] >= 1,
        })
    }

    /// Rewrites a bag of terms to its canonical reduced form.  Terminates
    /// because every rule strictly decreases the graded-lex order.
    fn reduce_terms(&self, raw: Vec<(Mono, GaussRat)>) -> Terms {
        let mut out: Terms = BTreeMap::new();
        let mut work = raw;
        while let Some((m, c)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            match self.first_applicable(&m) {
                None => {
                    let entry = out.entry(m).or_insert_with(GaussRat::zero);
                    *entry = &*entry + &c;
                    // prune exact cancellations lazily at the end
                }
                Some(Rule::Power { sym, exp, rhs }) => {
                    let mut base = m.to_vec();
                    base[*sym] -= exp;
                    for (rm, rc) in rhs {
                        let mono: Mono = base
                            .iter()
                            .zip(rm.iter())
                            .map(|(&x, &y)| x.checked_add(y).expect("exponent overflow"))
                            .collect();
                        work.push((mono, &c * rc));
                    }
                }
                Some(Rule::ProductUnit { a, b }) => {
                    let mut base = m.to_vec();
                    base[*a] -= 1;
                    base[*b] -= 1;
                    work.push((base.into_boxed_slice(), c));
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// Declares symbols and rules, then validates and freezes them.
#[derive(Default)]
pub struct ParamSystemBuilder {
    names: Vec<String>,
    pending: Vec<Pending>,
}

enum Pending {
    Power { head: String, exp: u16, rhs: String },
    Unit { a: String, b: String },
}

/// Raw polynomial used while the system itself is still under construction.
#[derive(Clone)]
struct RawPoly {
    width: usize,
    terms: Vec<(Mono, GaussRat)>,
}

impl RawPoly {
    fn constant(width: usize, c: GaussRat) -> Self {
        RawPoly { width, terms: vec![(vec![0; width].into_boxed_slice(), c)] }
    }

    fn var(width: usize, idx: usize) -> Self {
        let mut m = vec![0u16; width];
        m[idx] = 1;
        RawPoly { width, terms: vec![(m.into_boxed_slice(), GaussRat::one())] }
    }
}

impl ExprValue for RawPoly {
    fn e_add(mut self, other: Self) -> Self {
        self.terms.extend(other.terms);
        self
    }
    fn e_sub(self, other: Self) -> Self {
        self.e_add(other.e_neg())
    }
    fn e_mul(self, other: Self) -> Self {
        let mut terms = Vec::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Mono = ma.iter().zip(mb.iter()).map(|(&x, &y)| x + y).collect();
                terms.push((m, ca * cb));
            }
        }
        RawPoly { width: self.width, terms }
    }
    fn e_neg(mut self) -> Self {
        for (_, c) in &mut self.terms {
            *c = -&*c;
        }
        self
    }
    fn e_pow(self, k: u32) -> Self {
        let mut acc = RawPoly::constant(self.width, GaussRat::one());
        for _ in 0..k {
            acc = acc.e_mul(self.clone());
        }
        acc
    }
}

fn parse_raw(src: &str, names: &[String]) -> Result<RawPoly> {
    let width = names.len();
    parse_expr(
        src,
        &mut |name| {
            if name == "i" {
                return Ok(RawPoly::constant(width, GaussRat::i()));
            }
            match names.iter().position(|n| n == name) {
                Some(idx) => Ok(RawPoly::var(width, idx)),
                None => Err(Error::UndeclaredSymbol(name.to_string())),
            }
        },
        &mut |r| RawPoly::constant(width, GaussRat::from_rat(r)),
    )
}

impl ParamSystemBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn symbol(mut self, name: &str) -> Self {
        self.names.push(name.to_string());
        self
    }

    /// `head^exp -> rhs`; `rhs` is parsed over the declared symbols.
    pub fn power_rule(mut self, head: &str, exp: u16, rhs: &str) -> Self {
        self.pending.push(Pending::Power { head: head.into(), exp, rhs: rhs.into() });
        self
    }

    /// `a * b -> 1`.
    pub fn product_unit(mut self, a: &str, b: &str) -> Self {
        self.pending.push(Pending::Unit { a: a.into(), b: b.into() });
        self
    }

    pub fn build(self) -> Result<Arc<ParamSystem>> {
        let names = self.names;
        for (i, n) in names.iter().enumerate() {
            if n == "i" {
                return Err(Error::BadRule("`i` is reserved".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::BadRule(format!("duplicate symbol `{n}`")));
            }
        }
        let find = |n: &str| -> Result<usize> {
            names
                .iter()
                .position(|x| x == n)
                .ok_or_else(|| Error::UndeclaredSymbol(n.to_string()))
        };
        let mut rules = Vec::new();
        let mut constrained = vec![false; names.len()];
        for p in &self.pending {
            match p {
                Pending::Power { head, exp, rhs } => {
                    let sym = find(head)?;
                    if *exp == 0 {
                        return Err(Error::BadRule("power rule needs a positive exponent".into()));
                    }
                    let raw = parse_raw(rhs, &names)?;
                    let mut head_mono = vec![0u16; names.len()];
                    head_mono[sym] = *exp;
                    for (m, _) in &raw.terms {
                        if gl_cmp(m, &head_mono) != std::cmp::Ordering::Less {
                            return Err(Error::BadRule(format!(
                                "`{head}^{exp} -> {rhs}` does not decrease"
                            )));
                        }
                    }
                    if constrained[sym] {
                        return Err(Error::BadRule(format!("`{head}` already constrained")));
                    }
                    constrained[sym] = true;
                    rules.push(Rule::Power { sym, exp: *exp, rhs: raw.terms });
                }
                Pending::Unit { a, b } => {
                    let ia = find(a)?;
                    let ib = find(b)?;
                    if ia == ib {
                        return Err(Error::BadRule("product-unit symbols must differ".into()));
                    }
                    if constrained[ia] || constrained[ib] {
                        return Err(Error::BadRule(format!("`{a}` or `{b}` already constrained")));
                    }
                    constrained[ia] = true;
                    constrained[ib] = true;
                    rules.push(Rule::ProductUnit { a: ia, b: ib });
                }
            }
        }
        let sys = ParamSystem { names, rules };
        // Right-hand sides must themselves be in normal form, so a single
        // bottom-up pass over any input is canonical.
        for rule in &sys.rules {
            if let Rule::Power { rhs, .. } = rule {
                let reduced = sys.reduce_terms(rhs.clone());
                let as_map: Terms = rhs.clone().into_iter().collect();
                if reduced != as_map {
                    return Err(Error::BadRule("rule right-hand side is not reduced".into()));
                }
            }
        }
        Ok(Arc::new(sys))
    }
}

/// A polynomial in the parameter symbols with `Q(i)` coefficients, kept in
/// reduced canonical form.  Zero is the empty sum.
#[derive(Clone)]
pub struct ParamPoly {
    sys: Arc<ParamSystem>,
    terms: Terms,
}

fn compatible(a: &Arc<ParamSystem>, b: &Arc<ParamSystem>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Picks the common system of two operands, lifting constants out of the
/// empty system.  Structurally different systems are a programming error.
fn unify(a: &ParamPoly, b: &ParamPoly) -> Arc<ParamSystem> {
    if compatible(&a.sys, &b.sys) {
        a.sys.clone()
    } else if a.sys.is_empty() {
        b.sys.clone()
    } else if b.sys.is_empty() {
        a.sys.clone()
    } else {
        panic!("mixed parameter systems: {:?} vs {:?}", a.sys.names(), b.sys.names());
    }
}

impl ParamPoly {
    fn from_raw(sys: Arc<ParamSystem>, raw: Vec<(Mono, GaussRat)>) -> Self {
        let terms = sys.reduce_terms(raw);
        ParamPoly { sys, terms }
    }

    pub fn zero() -> Self {
        ParamPoly { sys: ParamSystem::empty(), terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new().into_boxed_slice(), c);
        }
        ParamPoly { sys: ParamSystem::empty(), terms }
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::constant(GaussRat::from_rat(r))
    }

    pub fn var(sys: &Arc<ParamSystem>, name: &str) -> Result<Self> {
        let idx = sys.find(name).ok_or_else(|| Error::UndeclaredSymbol(name.into()))?;
        let mut m = vec![0u16; sys.len()];
        m[idx] = 1;
        Ok(Self::from_raw(sys.clone(), vec![(m.into_boxed_slice(), GaussRat::one())]))
    }

    /// Parses and reduces an expression over the system's symbols; `i` is the
    /// imaginary unit.
    pub fn parse(sys: &Arc<ParamSystem>, src: &str) -> Result<Self> {
        let raw = parse_raw(src, sys.names())?;
        Ok(Self::from_raw(sys.clone(), raw.terms))
    }

    pub fn sys(&self) -> &Arc<ParamSystem> {
        &self.sys
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, when no symbol occurs.
    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.terms.is_empty() {
            return Some(GaussRat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// Widens a constant into `sys`.  Identity when the systems agree.
    fn lifted(&self, sys: &Arc<ParamSystem>) -> ParamPoly {
        if compatible(&self.sys, sys) {
            return self.clone();
        }
        assert!(self.sys.is_empty(), "lift only applies to constants");
        let width = sys.len();
        let terms: Terms = self
            .terms
            .values()
            .map(|c| (vec![0u16; width].into_boxed_slice(), c.clone()))
            .collect();
        ParamPoly { sys: sys.clone(), terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        let sys = unify(self, other);
        let a = self.lifted(&sys);
        let b = other.lifted(&sys);
        let mut raw: Vec<(Mono, GaussRat)> = a.terms.into_iter().collect();
        raw.extend(b.terms);
        Self::from_raw(sys, raw)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        ParamPoly { sys: self.sys.clone(), terms }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let sys = unify(self, other);
        let a = self.lifted(&sys);
        let b = other.lifted(&sys);
        let mut raw = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m: Mono = ma
                    .iter()
                    .zip(mb.iter())
                    .map(|(&x, &y)| x.checked_add(y).expect("exponent overflow"))
                    .collect();
                raw.push((m, ca * cb));
            }
        }
        Self::from_raw(sys, raw)
    }

    pub fn mul_scalar(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return ParamPoly { sys: self.sys.clone(), terms: BTreeMap::new() };
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        ParamPoly { sys: self.sys.clone(), terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = ParamPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Complex conjugation of the coefficients.  The symbols are real, so
    /// this is the full conjugate.
    pub fn conj(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect();
        ParamPoly { sys: self.sys.clone(), terms }
    }

    /// Evaluates at real values for all symbols, in declaration order.  A
    /// constant over the empty system accepts any value list, matching the
    /// unification rule for mixed operands.
    pub fn eval(&self, vals: &[Rat]) -> Result<GaussRat> {
        if !self.sys.is_empty() && vals.len() != self.sys.len() {
            return Err(Error::Internal(format!(
                "expected {} parameter values, got {}",
                self.sys.len(),
                vals.len()
            )));
        }
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut factor = Rat::one();
            for (e, v) in m.iter().zip(vals) {
                for _ in 0..*e {
                    factor = &factor * v;
                }
            }
            acc = &acc + &c.scale(&factor);
        }
        Ok(acc)
    }

    /// The coefficient of the graded-lex leading term; zero for zero.
    pub fn lead_coeff(&self) -> GaussRat {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| gl_cmp(a, b))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(GaussRat::zero)
    }

    /// A multiplicative inverse, when one can be found: constants, elements
    /// with constant norm (circle parameters), and monomials whose symbols
    /// all have product-unit partners.
    pub fn inverse(&self) -> Option<ParamPoly> {
        if let Some(c) = self.as_constant() {
            return c.inv().ok().map(ParamPoly::constant);
        }
        let conj = self.conj();
        let prod = self.mul(&conj);
        if let Some(c) = prod.as_constant() {
            if let Ok(cinv) = c.inv() {
                return Some(conj.mul_scalar(&cinv));
            }
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let mut partner = vec![0u16; self.sys.len()];
            for (sym, &e) in m.iter().enumerate() {
                if e > 0 {
                    let p = self.sys.unit_partner(sym)?;
                    partner[p] = partner[p].checked_add(e)?;
                }
            }
            let cand = ParamPoly {
                sys: self.sys.clone(),
                terms: [(partner.into_boxed_slice(), c.inv().ok()?)].into_iter().collect(),
            };
            if self.mul(&cand).as_constant().map(|c| c == GaussRat::one()) == Some(true) {
                return Some(cand);
            }
        }
        None
    }
}

impl PartialEq for ParamPoly {
    fn eq(&self, other: &Self) -> bool {
        if compatible(&self.sys, &other.sys) {
            self.terms == other.terms
        } else {
            self.sub(other).is_zero()
        }
    }
}

impl Eq for ParamPoly {}

impl ExprValue for ParamPoly {
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

fn fmt_mono(names: &[String], m: &[u16]) -> String {
    let mut parts = Vec::new();
    for (name, &e) in names.iter().zip(m) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| gl_cmp(b, a));
        let mut out = String::new();
        for (idx, (m, c)) in terms.into_iter().enumerate() {
            let mono = fmt_mono(self.sys.names(), m);
            let piece = if mono.is_empty() {
                format!("{c}")
            } else if *c == GaussRat::one() {
                mono
            } else if *c == -&GaussRat::one() {
                format!("-{mono}")
            } else if c.re.is_zero() || c.im.is_zero() {
                format!("{c}*{mono}")
            } else {
                format!("({c})*{mono}")
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

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The system for one point on the unit circle: symbols `<stem>_re`,
/// `<stem>_im` with `im^2 -> 1 - re^2`.
pub fn circle_system(stem: &str) -> Arc<ParamSystem> {
    let im = format!("{stem}_im");
    let re = format!("{stem}_re");
    ParamSystemBuilder::new()
        .symbol(&im)
        .symbol(&re)
        .power_rule(&im, 2, &format!("1 - {re}^2"))
        .build()
        .expect("circle system is valid")
}

/// The complex unit-circle value `<stem>_re + i*<stem>_im` in its system.
pub fn circle_value(sys: &Arc<ParamSystem>, stem: &str) -> Result<ParamPoly> {
    ParamPoly::parse(sys, &format!("{stem}_re + i*{stem}_im"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::rat;

    fn circle() -> Arc<ParamSystem> {
        circle_system("a")
    }

    #[test]
    fn circle_relation_reduces_to_zero() {
        let sys = circle();
        let p = ParamPoly::parse(&sys, "a_im^2 + a_re^2 - 1").unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn product_unit_cancels() {
        let sys = ParamSystemBuilder::new()
            .symbol("r")
            .symbol("r_inv")
            .symbol("x")
            .product_unit("r", "r_inv")
            .build()
            .unwrap();
        let p = ParamPoly::parse(&sys, "r*r_inv*x - x").unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn odd_powers_keep_one_factor() {
        let sys = circle();
        let p = ParamPoly::parse(&sys, "a_im^3").unwrap();
        let q = ParamPoly::parse(&sys, "a_im - a_re^2*a_im").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn reduction_is_idempotent() {
        let sys = circle();
        let p = ParamPoly::parse(&sys, "(a_re + i*a_im)*(a_re - i*a_im)").unwrap();
        assert_eq!(p.as_constant(), Some(GaussRat::one()));
        let again = ParamPoly::from_raw(sys.clone(), p.terms.clone().into_iter().collect());
        assert_eq!(again, p);
    }

    #[test]
    fn eval_on_pythagorean_point() {
        // (3/5, 4/5) satisfies the circle relation, so reduced and raw
        // evaluations agree.
        let sys = circle();
        let p = ParamPoly::parse(&sys, "a_im^3").unwrap();
        let v = p.eval(&[rat(4, 5), rat(3, 5)]).unwrap();
        assert_eq!(v, GaussRat::from_rat(rat(64, 125)));
    }

    #[test]
    fn nondecreasing_rule_is_rejected() {
        // With `a` declared after `b`, `a^2 -> b^2` increases the order.
        let r = ParamSystemBuilder::new()
            .symbol("b")
            .symbol("a")
            .power_rule("a", 2, "b^2")
            .build();
        assert!(r.is_err());
    }

    #[test]
    fn circle_inverse_is_conjugate() {
        let sys = circle();
        let a = circle_value(&sys, "a").unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(inv, a.conj());
        assert_eq!(a.mul(&inv).as_constant(), Some(GaussRat::one()));
    }

    #[test]
    fn unit_monomial_inverse() {
        let sys = ParamSystemBuilder::new()
            .symbol("r")
            .symbol("r_inv")
            .product_unit("r", "r_inv")
            .build()
            .unwrap();
        let r2 = ParamPoly::parse(&sys, "3*r^2").unwrap();
        let inv = r2.inverse().unwrap();
        assert_eq!(r2.mul(&inv), ParamPoly::one());
        assert!(ParamPoly::parse(&sys, "1 + r").unwrap().inverse().is_none());
    }

    #[test]
    fn display_is_readable() {
        let sys = circle();
        let p = ParamPoly::parse(&sys, "a_im^3 - 2").unwrap();
        assert_eq!(p.to_string(), "-a_im*a_re^2 + a_im - 2");
    }
}
