//! Tiny recursive-descent parser shared by the parameter and polynomial
//! layers.  Grammar: `+ - * ^` with parentheses; `/` appears only inside
//! rational literals (`3/4`), never as an operator on expressions.

use num_bigint::BigInt;
use num_traits::One;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gauss::Rat;

/// Value the parser builds.
pub(crate) trait ExprValue: Clone {
    fn e_add(self, other: Self) -> Self;
    fn e_sub(self, other: Self) -> Self;
    fn e_mul(self, other: Self) -> Self;
    fn e_neg(self) -> Self;
    fn e_pow(self, k: u32) -> Self;
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut it = src.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                it.next();
            }
            '+' => {
                it.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                it.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                it.next();
                toks.push(Tok::Star);
            }
            '^' => {
                it.next();
                toks.push(Tok::Caret);
            }
            '/' => {
                it.next();
                toks.push(Tok::Slash);
            }
            '(' => {
                it.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                it.next();
                toks.push(Tok::RParen);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Int(BigInt::from_str(&s).expect("digits")));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(s));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(toks)
}

/// Splits at top level on `sep`, ignoring separators inside `()` and `[]`.
pub(crate) fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '[' => {
                depth += 1;
                cur.push(c);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(c);
            }
            c if c == sep && depth == 0 => {
                out.push(std::mem::take(&mut cur));
            }
            c => cur.push(c),
        }
    }
    out.push(cur);
    out
}

/// Removes one required layer of `open...close` around the trimmed input.
pub(crate) fn strip_outer(s: &str, open: char, close: char) -> Result<&str> {
    let t = s.trim();
    if t.starts_with(open) && t.ends_with(close) && t.len() >= 2 {
        Ok(&t[open.len_utf8()..t.len() - close.len_utf8()])
    } else {
        Err(Error::Parse(format!("expected `{open}...{close}` around `{s}`")))
    }
}

pub(crate) struct Parser<'a, V> {
    toks: Vec<Tok>,
    pos: usize,
    atom: &'a mut dyn FnMut(&str) -> Result<V>,
    lit: &'a mut dyn FnMut(Rat) -> V,
}

/// Parses `src`, resolving identifiers through `atom` and rational literals
/// through `lit`.
pub(crate) fn parse_expr<V: ExprValue>(
    src: &str,
    atom: &mut dyn FnMut(&str) -> Result<V>,
    lit: &mut dyn FnMut(Rat) -> V,
) -> Result<V> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, atom, lit };
    let v = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(v)
}

impl<V: ExprValue> Parser<'_, V> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.bump() {
            Some(got) if got == t => Ok(()),
            got => Err(Error::Parse(format!("expected {t:?}, got {got:?}"))),
        }
    }

    fn sum(&mut self) -> Result<V> {
        let mut neg = false;
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            neg = true;
        } else if let Some(Tok::Plus) = self.peek() {
            self.bump();
        }
        let mut acc = self.product()?;
        if neg {
            acc = acc.e_neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.product()?;
                    acc = acc.e_add(rhs);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.product()?;
                    acc = acc.e_sub(rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<V> {
        let mut acc = self.power()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            let rhs = self.power()?;
            acc = acc.e_mul(rhs);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<V> {
        let base = self.primary()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let k = u32::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.e_pow(k))
                }
                got => Err(Error::Parse(format!("expected integer exponent, got {got:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<V> {
        match self.bump() {
            Some(Tok::LParen) => {
                let v = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Some(Tok::Ident(name)) => (self.atom)(&name),
            Some(Tok::Int(n)) => {
                // A rational literal is `p` or `p/q`; `/` binds only here.
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d == BigInt::from(0) {
                                return Err(Error::DivisionByZero);
                            }
                            Ok((self.lit)(Rat::new(n, d)))
                        }
                        got => Err(Error::Parse(format!(
                            "expected denominator after `/`, got {got:?}"
                        ))),
                    }
                } else {
                    Ok((self.lit)(Rat::new(n, BigInt::one())))
                }
            }
            got => Err(Error::Parse(format!("unexpected token {got:?}"))),
        }
    }
}
