//! Parsing of the canonical text forms.
//!
//! Rational functions are ordinary expressions in `T` with integer literals
//! (reduced into the prime field), the generator `g`, `+ - * / ^` and
//! parentheses, e.g. `-(T+1)`, `(T^2+1)/T`, `g^2*T^3+g*T+1`. Additive
//! polynomials add the symbol `t` for the Frobenius `x -> x^q`, written to the
//! right of its coefficient: `T + (T+1)*t + t^2`.

use crate::error::{Error, Result};
use crate::field::FqField;
use crate::poly::Poly;
use crate::ratfn::RatFn;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    T,
    Tau,
    Gen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '0'..='9' => {
                let mut n: i64 = 0;
                while let Some(&d) = chars.peek() {
                    let Some(v) = d.to_digit(10) else { break };
                    n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(v as i64))
                        .ok_or_else(|| Error::Parse(format!("integer literal too large in {s:?}")))?;
                    chars.next();
                }
                out.push(Tok::Num(n));
            }
            _ => {
                chars.next();
                out.push(match c {
                    'T' => Tok::T,
                    't' => Tok::Tau,
                    'g' => Tok::Gen,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => return Err(Error::Parse(format!("unexpected character {other:?} in {s:?}"))),
                });
            }
        }
    }
    Ok(out)
}

/// Polynomial in the formal symbol `t` with coefficients written on the left.
type TPoly = Vec<RatFn>;

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a FqField,
    allow_tau: bool,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in {:?}", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn constant(&self, x: RatFn) -> TPoly {
        vec![x]
    }

    fn trim(mut v: TPoly) -> TPoly {
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
        v
    }

    fn add(&self, a: TPoly, b: TPoly, negate: bool) -> TPoly {
        let n = a.len().max(b.len());
        let zero = RatFn::zero(self.field);
        Self::trim(
            (0..n)
                .map(|i| {
                    let x = a.get(i).unwrap_or(&zero);
                    let y = b.get(i).unwrap_or(&zero);
                    if negate {
                        x.sub_ref(y)
                    } else {
                        x.add_ref(y)
                    }
                })
                .collect(),
        )
    }

    fn mul(&self, a: TPoly, b: TPoly) -> Result<TPoly> {
        if a.len() > 1 && b.len() > 1 {
            return Err(self.err("product of two expressions in t is ambiguous"));
        }
        let (scalar, other) = if a.len() == 1 { (&a[0], b) } else { (&b[0], a) };
        Ok(Self::trim(other.iter().map(|x| x.mul_ref(scalar)).collect()))
    }

    fn expr(&mut self) -> Result<TPoly> {
        let mut acc = self.term()?;
        while let Some(op @ (Tok::Plus | Tok::Minus)) = self.peek().cloned() {
            self.bump();
            let rhs = self.term()?;
            acc = self.add(acc, rhs, op == Tok::Minus);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<TPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = self.mul(acc, rhs)?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs = self.unary()?;
                    if rhs.len() > 1 {
                        return Err(self.err("cannot divide by an expression in t"));
                    }
                    let inv = rhs[0].inv().map_err(|_| self.err("division by zero"))?;
                    acc = self.mul(acc, vec![inv])?;
                }
                // juxtaposition such as `2T` or `(T+1)(T+2)`
                Some(Tok::Num(_) | Tok::T | Tok::Tau | Tok::Gen | Tok::LParen) => {
                    let rhs = self.power()?;
                    acc = self.mul(acc, rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<TPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                let v = self.unary()?;
                Ok(v.iter().map(RatFn::neg_ref).collect())
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let neg = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::LParen) => {
                self.bump();
                let e = self.exponent()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(self.err("expected ')' after exponent"));
                }
                return Ok(e);
            }
            _ => false,
        };
        match self.bump() {
            Some(Tok::Num(n)) => Ok(if neg { -n } else { n }),
            _ => Err(self.err("expected integer exponent")),
        }
    }

    fn power(&mut self) -> Result<TPoly> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let e = self.exponent()?;
        if base.len() == 1 {
            let v = base[0].pow(e).map_err(|_| self.err("zero to a negative power"))?;
            return Ok(vec![v]);
        }
        // only a bare t may be raised to a power
        let is_tau = base.len() == 2 && base[0].is_zero() && base[1].is_one();
        if !is_tau || e < 0 {
            return Err(self.err("only t itself may carry an exponent"));
        }
        let mut v = vec![RatFn::zero(self.field); e as usize + 1];
        v[e as usize] = RatFn::one(self.field);
        Ok(Self::trim(v))
    }

    fn primary(&mut self) -> Result<TPoly> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(self.constant(RatFn::constant(self.field, self.field.from_int(n)))),
            Some(Tok::T) => Ok(self.constant(RatFn::t(self.field))),
            Some(Tok::Gen) => Ok(self.constant(RatFn::constant(self.field, self.field.generator()))),
            Some(Tok::Tau) if self.allow_tau => Ok(vec![RatFn::zero(self.field), RatFn::one(self.field)]),
            Some(Tok::Tau) => Err(self.err("unexpected 't'")),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(t) => Err(self.err(&format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn run(field: &FqField, s: &str, allow_tau: bool) -> Result<TPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, field, allow_tau, src: s };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

pub fn parse_ratfn(field: &FqField, s: &str) -> Result<RatFn> {
    let v = run(field, s, false)?;
    Ok(v.into_iter().next().unwrap())
}

pub fn parse_poly(field: &FqField, s: &str) -> Result<Poly> {
    let x = parse_ratfn(field, s)?;
    x.as_poly().cloned().ok_or_else(|| Error::Parse(format!("{s:?} is not a polynomial")))
}

/// Coefficients `a_0, ..., a_r` of an additive polynomial written with `t`.
pub fn parse_additive(field: &FqField, s: &str) -> Result<Vec<RatFn>> {
    run(field, s, true)
}

/// Splits on commas that are not inside parentheses.
pub fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

/// A comma separated list of rational functions.
pub fn parse_ratfn_list(field: &FqField, s: &str) -> Result<Vec<RatFn>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(s).into_iter().map(|part| parse_ratfn(field, part)).collect()
}
