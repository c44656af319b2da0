//! Recursive-descent parser for polynomial expressions such as
//! `3*X^2 - X + 1`, `(X^2 - X)/2`, `1 + 4X + 2C(X,2)` or `X^4 + Y^4 + 1`.
//!
//! Division is only allowed by nonzero constants. `C(X, n)` denotes the
//! binomial polynomial `X(X-1)...(X-n+1)/n!`. Juxtaposition multiplies.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bipoly::BiPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vars {
    X,
    XY,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(char),
    Binom,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(digits.parse().expect("ascii digits")));
            }
            'x' | 'X' => out.push(Tok::Var('X')),
            'y' | 'Y' => out.push(Tok::Var('Y')),
            'C' => out.push(Tok::Binom),
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            ',' => out.push(Tok::Comma),
            other => return Err(Error::Parse(format!("unexpected character {other:?} in {s:?}"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: Vars,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in {:?}", self.src))
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.bump() {
            Some(ref got) if *got == t => Ok(()),
            _ => Err(self.err(&format!("expected {t:?}"))),
        }
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(self.err("division only by nonzero constants"));
                    }
                    acc = acc.scale(&d.constant_term().recip());
                }
                Some(Tok::Num(_) | Tok::Var(_) | Tok::Binom | Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let e = self.small_uint()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn small_uint(&mut self) -> Result<u32> {
        match self.bump() {
            Some(Tok::Num(n)) => u32::try_from(n)
                .ok()
                .filter(|&e| e <= 4096)
                .ok_or_else(|| self.err("exponent too large")),
            _ => Err(self.err("expected a nonnegative integer")),
        }
    }

    fn atom(&mut self) -> Result<BiPoly> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(BiPoly::constant(BigRational::from_integer(n))),
            Some(Tok::Var('X')) => Ok(BiPoly::x()),
            Some(Tok::Var(_)) => {
                if self.vars == Vars::XY {
                    Ok(BiPoly::y())
                } else {
                    Err(self.err("variable Y not allowed here"))
                }
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Binom) => {
                self.expect(Tok::LParen)?;
                let arg = self.expr()?;
                self.expect(Tok::Comma)?;
                let n = self.small_uint()?;
                self.expect(Tok::RParen)?;
                Ok(binomial_of(&arg, n))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

/// `C(p, n) = p(p-1)...(p-n+1)/n!`.
pub fn binomial_of(p: &BiPoly, n: u32) -> BiPoly {
    let mut acc = BiPoly::one();
    let mut fact = BigInt::one();
    for k in 0..n {
        acc = acc.mul(&p.sub(&BiPoly::constant(BigRational::from_integer(k.into()))));
        fact *= BigInt::from(k + 1);
    }
    acc.scale(&BigRational::new(BigInt::one(), fact))
}

pub fn parse_poly(s: &str, vars: Vars) -> Result<BiPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        src: s,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Optional-sign decimal integer.
pub fn parse_integer(s: &str) -> Result<BigInt> {
    let t = s.trim();
    let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("not an integer: {s:?}")));
    }
    t.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// `p/q` or an integer; the result is reduced with positive denominator.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_integer(s)?)),
        Some((n, d)) => {
            let n = parse_integer(n)?;
            let d = parse_integer(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(n, d))
        }
    }
}
