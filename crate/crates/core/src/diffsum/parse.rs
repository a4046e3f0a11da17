//! Recursive-descent parser for differential sums.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! sum      := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' ['-'] integer)?
//! base     := rational | 'i' | 'z' | 't' | wderiv | '(' sum ')' | param
//! wderiv   := 'w' ("'"* | "'{" integer '}')
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! `param` is a single letter bound to an exact constant at parse time;
//! unbound letters are rejected. Derivative orders above 9 are rejected.
//! Negative exponents are allowed on `z`/`t` and on rationals, not on `w`
//! factors or parenthesized sums.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exponent::RamifiedExponent;
use crate::gaussian::GaussianRational;

use super::{DiffMonomial, DiffSum, Var};

pub type Bindings = BTreeMap<char, GaussianRational>;

pub fn parse_diffsum(text: &str) -> Result<DiffSum> {
    parse_diffsum_with(text, &Bindings::new())
}

pub fn parse_diffsum_with(text: &str, bindings: &Bindings) -> Result<DiffSum> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        bindings,
        var: None,
    };
    let sum = p.parse_sum()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    let var = p.var.unwrap_or(Var::Z);
    Ok(sum.with_var(var))
}

enum Base {
    Coeff(GaussianRational),
    Variable,
    Deriv(u8),
    Group(DiffSum),
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    bindings: &'a Bindings,
    var: Option<Var>,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_sum(&mut self) -> Result<DiffSum> {
        let mut acc = DiffSum::zero(Var::Z);
        let mut sign = 1i64;
        if self.eat(b'+') {
        } else if self.eat(b'-') {
            sign = -1;
        }
        loop {
            let term = self.parse_term()?;
            acc = if sign < 0 {
                acc.sub(&term)
            } else {
                acc.add(&term)
            };
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn parse_term(&mut self) -> Result<DiffSum> {
        let mut acc = self.parse_factor()?;
        while self.eat(b'*') {
            let f = self.parse_factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<DiffSum> {
        let base = self.parse_base()?;
        let exp = if self.eat(b'^') {
            let neg = self.eat(b'-');
            let n = self.parse_uint()? as i64;
            Some(if neg { -n } else { n })
        } else {
            None
        };
        match base {
            Base::Coeff(c) => {
                let value = match exp {
                    None => c,
                    Some(e) if e >= 0 => c.pow(e as u32),
                    Some(e) => {
                        if c.is_zero() {
                            return Err(self.err("zero raised to a negative power"));
                        }
                        c.inv().pow((-e) as u32)
                    }
                };
                Ok(DiffSum::from_monomials(
                    Var::Z,
                    [DiffMonomial::constant(value)],
                ))
            }
            Base::Variable => {
                let e = exp.unwrap_or(1);
                Ok(DiffSum::from_monomials(
                    Var::Z,
                    [DiffMonomial::new(
                        GaussianRational::one(),
                        RamifiedExponent::from_int(e),
                        BTreeMap::new(),
                    )],
                ))
            }
            Base::Deriv(order) => {
                let mult = match exp {
                    None => 1,
                    Some(e) if e >= 0 => e as u32,
                    Some(_) => return Err(self.err("negative power of a derivative factor")),
                };
                Ok(DiffSum::from_monomials(
                    Var::Z,
                    [DiffMonomial::new(
                        GaussianRational::one(),
                        RamifiedExponent::zero(),
                        BTreeMap::from([(order, mult)]),
                    )],
                ))
            }
            Base::Group(s) => match exp {
                None => Ok(s),
                Some(e) if e >= 0 => Ok(s.pow(e as u32)),
                Some(_) => Err(self.err("negative power of a parenthesized sum")),
            },
        }
    }

    fn parse_base(&mut self) -> Result<Base> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_sum()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(Base::Group(inner))
            }
            Some(b'0'..=b'9') => {
                let num = self.parse_uint()? as i64;
                if self.eat(b'/') {
                    let den = self.parse_uint()? as i64;
                    if den == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    Ok(Base::Coeff(GaussianRational::from_ratio(num, den)))
                } else {
                    Ok(Base::Coeff(GaussianRational::from_int(num)))
                }
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Base::Coeff(GaussianRational::i()))
            }
            Some(b'z') => {
                self.pos += 1;
                self.set_var(Var::Z)?;
                Ok(Base::Variable)
            }
            Some(b't') => {
                self.pos += 1;
                self.set_var(Var::T)?;
                Ok(Base::Variable)
            }
            Some(b'w') => {
                self.pos += 1;
                self.parse_deriv_order().map(Base::Deriv)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let ch = c as char;
                match self.bindings.get(&ch) {
                    Some(value) => {
                        self.pos += 1;
                        Ok(Base::Coeff(value.clone()))
                    }
                    None => Err(self.err(format!("unbound parameter `{ch}`"))),
                }
            }
            Some(c) => Err(self.err(format!("unexpected character `{}`", c as char))),
        }
    }

    /// Primes or `'{k}` after a `w`.
    fn parse_deriv_order(&mut self) -> Result<u8> {
        let mut primes = 0u32;
        while self.bytes.get(self.pos) == Some(&b'\'') {
            self.pos += 1;
            primes += 1;
        }
        if primes == 1 && self.bytes.get(self.pos) == Some(&b'{') {
            self.pos += 1;
            let order = self.parse_uint()?;
            if !self.eat(b'}') {
                return Err(self.err("expected `}`"));
            }
            if order > 9 {
                return Err(self.err("derivative order above 9"));
            }
            return Ok(order as u8);
        }
        if primes > 9 {
            return Err(self.err("derivative order above 9"));
        }
        Ok(primes as u8)
    }

    fn parse_uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(d) = self.bytes.get(self.pos).copied() {
            if !d.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(d - b'0')))
                .ok_or_else(|| Error::Parse {
                    pos: start,
                    msg: "integer literal too large".into(),
                })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        Ok(value)
    }

    fn set_var(&mut self, v: Var) -> Result<()> {
        match self.var {
            None => {
                self.var = Some(v);
                Ok(())
            }
            Some(existing) if existing == v => Ok(()),
            Some(_) => Err(self.err("mixed independent variables `z` and `t`")),
        }
    }
}
