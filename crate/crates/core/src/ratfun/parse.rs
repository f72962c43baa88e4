//! Parser for scalar expressions: symbols, integers, `+ - * / ^`, parentheses.

use super::scalar::Scalar;
use super::symbols;
use super::RatfunError;
use std::collections::BTreeSet;

/// The set of parameter symbols an expression may use besides `h1, h2, h3`.
#[derive(Clone, Debug, Default)]
pub struct Context {
    declared: BTreeSet<String>,
}

impl Context {
    pub fn new<S: AsRef<str>>(params: &[S]) -> Context {
        let mut c = Context::default();
        for p in params {
            c.declare(p.as_ref());
        }
        c
    }

    pub fn declare(&mut self, name: &str) {
        assert!(symbols::valid_name(name), "bad symbol name {name:?}");
        assert!(!matches!(name, "h1" | "h2" | "h3"), "{name} is built in");
        symbols::intern(name);
        self.declared.insert(name.to_string());
    }

    pub fn is_declared(&self, name: &str) -> bool {
        matches!(name, "h1" | "h2" | "h3") || self.declared.contains(name)
    }

    pub fn parse(&self, src: &str) -> Result<Scalar, RatfunError> {
        let mut p = Parser { s: src.as_bytes(), pos: 0, ctx: self };
        let v = p.expr()?;
        p.ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    ctx: &'a Context,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> RatfunError {
        RatfunError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, RatfunError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, RatfunError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.try_div(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, RatfunError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar, RatfunError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            self.ws();
            let e = self.integer()?;
            let e = i32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            if neg {
                if base.is_zero() {
                    return Err(RatfunError::DivisionByZero);
                }
                return Ok(base.pow(-e));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, RatfunError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| self.err("integer out of range"))
    }

    fn atom(&mut self) -> Result<Scalar, RatfunError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(Scalar::int(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                if !self.ctx.is_declared(name) {
                    return Err(RatfunError::UndeclaredSymbol(name.to_string()));
                }
                Ok(Scalar::sym(name))
            }
            _ => Err(self.err("expected a number, symbol or '('")),
        }
    }
}
