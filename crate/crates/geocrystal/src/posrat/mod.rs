//! Subtraction-free rational expressions.
//!
//! An [`Expr`] is an immutable DAG: cloning is a reference-count bump and
//! composition shares untouched subtrees. Every constant is strictly
//! positive, so every expression is a positive rational function.

mod parse;
mod poly;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use parse::parse;
pub use poly::{Canonicalizer, EqualityConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosRatError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("subtraction or nonpositive constant at byte {pos}")]
    NegativeNotAllowed { pos: usize },
    #[error("variable `{0}` has no value")]
    MissingVariable(String),
    #[error("a denominator vanishes at the evaluation point")]
    DivisionByZero,
    #[error("expansion needs {terms} terms, cap is {cap}")]
    ExpansionTooLarge { terms: usize, cap: usize },
}

/// Node kinds of the DAG.
#[derive(Debug)]
pub enum Node {
    Var(Arc<str>),
    Const(BigRational),
    Sum(Vec<Expr>),
    Prod(Vec<Expr>),
    Quot(Expr, Expr),
    Pow(Expr, u32),
}

#[derive(Clone)]
pub struct Expr(Arc<Node>);

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

pub(crate) fn ptr(e: &Expr) -> usize {
    Arc::as_ptr(&e.0) as usize
}

impl Expr {
    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn var(name: &str) -> Expr {
        Expr(Arc::new(Node::Var(name.into())))
    }

    /// A positive rational constant. Panics on zero or negative input.
    pub fn constant(q: BigRational) -> Expr {
        assert!(q.is_positive(), "constants must be positive");
        Expr(Arc::new(Node::Const(q)))
    }

    pub fn int(k: u64) -> Expr {
        Expr::constant(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn ratio(p: u64, q: u64) -> Expr {
        Expr::constant(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn sum<I: IntoIterator<Item = Expr>>(items: I) -> Expr {
        let mut out = Vec::new();
        for e in items {
            match e.node() {
                Node::Sum(xs) => out.extend(xs.iter().cloned()),
                _ => out.push(e),
            }
        }
        match out.len() {
            0 => panic!("empty sum has no positive value"),
            1 => out.pop().unwrap(),
            _ => Expr(Arc::new(Node::Sum(out))),
        }
    }

    pub fn product<I: IntoIterator<Item = Expr>>(items: I) -> Expr {
        let mut out = Vec::new();
        for e in items {
            match e.node() {
                Node::Prod(xs) => out.extend(xs.iter().cloned()),
                Node::Const(q) if q.is_one() => {}
                _ => out.push(e),
            }
        }
        match out.len() {
            0 => Expr::one(),
            1 => out.pop().unwrap(),
            _ => Expr(Arc::new(Node::Prod(out))),
        }
    }

    pub fn quot(num: Expr, den: Expr) -> Expr {
        if let Node::Const(q) = den.node() {
            if q.is_one() {
                return num;
            }
        }
        Expr(Arc::new(Node::Quot(num, den)))
    }

    pub fn pow(&self, k: u32) -> Expr {
        match k {
            0 => Expr::one(),
            1 => self.clone(),
            _ => Expr(Arc::new(Node::Pow(self.clone(), k))),
        }
    }

    /// Integer power; negative exponents become a quotient.
    pub fn powi(&self, k: i64) -> Expr {
        if k >= 0 {
            self.pow(k as u32)
        } else {
            Expr::quot(Expr::one(), self.pow((-k) as u32))
        }
    }

    pub fn recip(&self) -> Expr {
        Expr::quot(Expr::one(), self.clone())
    }

    /// Identity of the underlying node, for memo tables.
    pub fn id(&self) -> usize {
        ptr(self)
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        let mut stack = alloc::vec![self.clone()];
        while let Some(e) = stack.pop() {
            if !seen.insert(ptr(&e)) {
                continue;
            }
            match e.node() {
                Node::Var(v) => {
                    out.insert(v.to_string());
                }
                Node::Const(_) => {}
                Node::Sum(xs) | Node::Prod(xs) => stack.extend(xs.iter().cloned()),
                Node::Quot(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
                Node::Pow(b, _) => stack.push(b.clone()),
            }
        }
        out
    }

    /// Exact value at a point. Shared nodes are evaluated once.
    pub fn eval(&self, point: &BTreeMap<String, BigRational>) -> Result<BigRational, PosRatError> {
        self.eval_with(&|name| point.get(name).cloned())
    }

    pub fn eval_with(
        &self,
        lookup: &dyn Fn(&str) -> Option<BigRational>,
    ) -> Result<BigRational, PosRatError> {
        let mut memo = BTreeMap::new();
        eval_memo(self, lookup, &mut memo)
    }

    /// Structural substitution. Unmapped variables pass through and
    /// untouched subtrees are shared with the input.
    pub fn compose(&self, sub: &BTreeMap<String, Expr>) -> Expr {
        let mut memo = BTreeMap::new();
        compose_memo(self, sub, &mut memo)
    }

    /// Node count of the DAG, counting shared nodes once.
    pub fn size(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut stack = alloc::vec![self.clone()];
        while let Some(e) = stack.pop() {
            if !seen.insert(ptr(&e)) {
                continue;
            }
            stack.extend(children(&e));
        }
        seen.len()
    }
}

pub(crate) fn children(e: &Expr) -> Vec<Expr> {
    match e.node() {
        Node::Var(_) | Node::Const(_) => Vec::new(),
        Node::Sum(xs) | Node::Prod(xs) => xs.clone(),
        Node::Quot(a, b) => alloc::vec![a.clone(), b.clone()],
        Node::Pow(b, _) => alloc::vec![b.clone()],
    }
}

fn eval_memo(
    e: &Expr,
    lookup: &dyn Fn(&str) -> Option<BigRational>,
    memo: &mut BTreeMap<usize, BigRational>,
) -> Result<BigRational, PosRatError> {
    if let Some(v) = memo.get(&ptr(e)) {
        return Ok(v.clone());
    }
    let v = match e.node() {
        Node::Var(name) => lookup(name).ok_or_else(|| PosRatError::MissingVariable(name.to_string()))?,
        Node::Const(q) => q.clone(),
        Node::Sum(xs) => {
            let mut acc = BigRational::zero();
            for x in xs {
                acc += eval_memo(x, lookup, memo)?;
            }
            acc
        }
        Node::Prod(xs) => {
            let mut acc = BigRational::one();
            for x in xs {
                acc *= eval_memo(x, lookup, memo)?;
            }
            acc
        }
        Node::Quot(a, b) => {
            let den = eval_memo(b, lookup, memo)?;
            if den.is_zero() {
                return Err(PosRatError::DivisionByZero);
            }
            eval_memo(a, lookup, memo)? / den
        }
        Node::Pow(b, k) => num_traits::pow(eval_memo(b, lookup, memo)?, *k as usize),
    };
    memo.insert(ptr(e), v.clone());
    Ok(v)
}

fn compose_memo(e: &Expr, sub: &BTreeMap<String, Expr>, memo: &mut BTreeMap<usize, Expr>) -> Expr {
    if let Some(v) = memo.get(&ptr(e)) {
        return v.clone();
    }
    let out = match e.node() {
        Node::Var(name) => sub.get(&**name).cloned().unwrap_or_else(|| e.clone()),
        Node::Const(_) => e.clone(),
        Node::Sum(xs) => Expr::sum(xs.iter().map(|x| compose_memo(x, sub, memo))),
        Node::Prod(xs) => Expr::product(xs.iter().map(|x| compose_memo(x, sub, memo))),
        Node::Quot(a, b) => Expr::quot(compose_memo(a, sub, memo), compose_memo(b, sub, memo)),
        Node::Pow(b, k) => compose_memo(b, sub, memo).pow(*k),
    };
    memo.insert(ptr(e), out.clone());
    out
}

/// Decides whether two expressions denote the same rational function.
///
/// Uses a fresh [`Canonicalizer`] with the default configuration.
pub fn equal(a: &Expr, b: &Expr) -> Result<bool, PosRatError> {
    Canonicalizer::new(EqualityConfig::default()).equal(a, b)
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::sum([self, rhs])
    }
}

impl ops::Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        Expr::sum([self.clone(), rhs.clone()])
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::product([self, rhs])
    }
}

impl ops::Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        Expr::product([self.clone(), rhs.clone()])
    }
}

impl ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::quot(self, rhs)
    }
}

impl ops::Div for &Expr {
    type Output = Expr;
    fn div(self, rhs: &Expr) -> Expr {
        Expr::quot(self.clone(), rhs.clone())
    }
}

fn prec(e: &Expr) -> u8 {
    match e.node() {
        Node::Sum(_) => 0,
        Node::Prod(_) | Node::Quot(..) => 1,
        Node::Pow(..) => 2,
        Node::Var(_) => 3,
        Node::Const(q) => {
            if q.is_integer() {
                3
            } else {
                1
            }
        }
    }
}

fn write_wrapped(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Var(v) => f.write_str(v),
            Node::Const(q) => write!(f, "{q}"),
            Node::Sum(xs) => {
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Node::Prod(xs) => {
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        f.write_str("*")?;
                    }
                    // a non-integer constant prints as p/q and must be fenced
                    let min = if matches!(x.node(), Node::Const(q) if !q.is_integer()) { 2 } else { 1 };
                    write_wrapped(f, x, min)?;
                }
                Ok(())
            }
            Node::Quot(a, b) => {
                write_wrapped(f, a, 1)?;
                f.write_str("/")?;
                write_wrapped(f, b, 2)
            }
            Node::Pow(b, k) => {
                write_wrapped(f, b, 3)?;
                write!(f, "^{k}")
            }
        }
    }
}

#[cfg(test)]
mod tests;
