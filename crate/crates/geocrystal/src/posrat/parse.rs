//! Recursive-descent parser for the positive expression grammar.
//!
//! ```text
//! expr   := term { "+" term }
//! term   := factor { ("*" | "/") factor }
//! factor := base [ "^" posint ]
//! base   := posrational | ident | "(" expr ")"
//! ```
//!
//! Division is left associative, so `x/2/3` is `(x/2)/3`. A literal
//! `p/q` with both sides integer literals folds into one rational constant.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Expr, Node, PosRatError};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub fn parse(text: &str) -> Result<Expr, PosRatError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

fn syntax(pos: usize, msg: &str) -> PosRatError {
    PosRatError::Syntax { pos, msg: msg.to_string() }
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> PosRatError {
        match self.src.get(self.pos) {
            Some(b'-') => PosRatError::NegativeNotAllowed { pos: self.pos },
            Some(&c) => syntax(self.pos, &alloc::format!("unexpected `{}`", c as char)),
            None => syntax(self.pos, "unexpected end of input"),
        }
    }

    fn expr(&mut self) -> Result<Expr, PosRatError> {
        let mut terms = alloc::vec![self.term()?];
        while self.peek() == Some(b'+') {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(Expr::sum(terms))
    }

    fn term(&mut self) -> Result<Expr, PosRatError> {
        let mut acc = self.factor()?;
        let mut factors: Vec<Expr> = Vec::new();
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    factors.push(acc);
                    acc = self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let den = self.factor()?;
                    acc = match (acc.node(), den.node()) {
                        (Node::Const(p), Node::Const(q)) if p.is_integer() && q.is_integer() => {
                            Expr::constant(p / q)
                        }
                        _ => Expr::quot(acc, den),
                    };
                }
                _ => break,
            }
        }
        factors.push(acc);
        Ok(Expr::product(factors))
    }

    fn factor(&mut self) -> Result<Expr, PosRatError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(match self.src.get(self.pos) {
                    Some(b'-') => PosRatError::NegativeNotAllowed { pos: self.pos },
                    _ => syntax(start, "expected a positive integer exponent"),
                });
            }
            let k: u32 = digits.parse().map_err(|_| syntax(start, "exponent too large"))?;
            if k == 0 {
                return Err(syntax(start, "exponent must be positive"));
            }
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<Expr, PosRatError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(syntax(self.pos, "expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let d = self.digits();
                let value: BigInt = d.parse().map_err(|_| syntax(start, "bad integer"))?;
                if value.is_zero() {
                    return Err(PosRatError::NegativeNotAllowed { pos: start });
                }
                let q = BigRational::from_integer(value);
                debug_assert!(q.is_positive());
                Ok(Expr::constant(q))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(Expr::var(name))
            }
            _ => Err(self.unexpected()),
        }
    }
}
