//! Arithmetic expression grammar shared by the data files.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '·' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | ident | '(' expr ')'
//! ```

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use num_bigint::BigInt;

use crate::error::Error;
use crate::exactnum::{Rational, Ring};

#[derive(Clone, PartialEq, Debug)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, Error> {
        Err(Error::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some('*') | Some('·') => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some('/') => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        if self.peek() == Some('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, Error> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        let neg = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let Ok(k) = self.src[start..self.pos].parse::<i64>() else {
            return self.err("expected integer exponent");
        };
        Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.bump() != Some(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                Ok(Expr::Int(self.src[start..self.pos].parse().expect("digits")))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.peek_raw(), Some(c) if c.is_alphanumeric() || c == '_') {
                    self.pos += self.peek_raw().map_or(1, char::len_utf8);
                }
                Ok(Expr::Var(self.src[start..self.pos].to_string()))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, Error> {
        let mut p = Parser { src, pos: 0 };
        let e = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(e)
    }

    /// Evaluates in any ring; `lookup` resolves identifiers.
    pub fn eval<R: Ring, F: Fn(&str) -> Option<R>>(&self, lookup: &F) -> Result<R, Error> {
        Ok(match self {
            Expr::Int(n) => R::from_rational(&Rational::from_integer(n.clone())),
            Expr::Var(v) => lookup(v).ok_or_else(|| Error::UnknownVariable(v.clone()))?,
            Expr::Neg(a) => -a.eval(lookup)?,
            Expr::Add(a, b) => a.eval(lookup)? + b.eval(lookup)?,
            Expr::Sub(a, b) => a.eval(lookup)? - b.eval(lookup)?,
            Expr::Mul(a, b) => a.eval(lookup)? * b.eval(lookup)?,
            Expr::Div(a, b) => {
                let d: R = b.eval(lookup)?;
                a.eval(lookup)? * d.try_inv().ok_or(Error::DivisionByZero)?
            }
            Expr::Pow(a, k) => {
                let base: R = a.eval(lookup)?;
                let base = if *k < 0 { base.try_inv().ok_or(Error::DivisionByZero)? } else { base };
                let mut acc = R::one();
                for _ in 0..k.unsigned_abs() {
                    acc = acc * base.clone();
                }
                acc
            }
        })
    }
}

/// Parses and evaluates in one step.
pub fn eval_str<R: Ring, F: Fn(&str) -> Option<R>>(src: &str, lookup: &F) -> Result<R, Error> {
    Expr::parse(src)?.eval(lookup)
}
