//! Affine geometric crystals on the charts `V(g)` of `W(varpi_1)`, plus the
//! generic action on a Schubert cell.

mod charts;
mod fund;
mod schubert;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero as _};
use thiserror::Error;

use crate::cartan::{data, CartanData, Family, TypeLabel};
use crate::posrat::{parse, Expr, PosRatError};

pub use charts::geometry;
pub use fund::{fund_module, label_name, sigma_label, FundLabel, FundModule};
pub use schubert::{schubert_chart, schubert_e, schubert_stats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("e_{i} is not defined on chart {chart}")]
    UndefinedOnChart { i: usize, chart: u8 },
    #[error("chart {0} does not exist for this type")]
    NoSuchChart(u8),
    #[error("coordinate `{0}` is missing")]
    MissingCoordinate(String),
    #[error(transparent)]
    Eval(#[from] PosRatError),
}

/// Coefficients of a [`FundVec`]: exact rationals or positive expressions.
pub trait Coeff: Clone + Debug {
    fn from_u64(k: u64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn powi(&self, k: i64) -> Self;
    fn div_u64(&self, k: u64) -> Self;
}

impl Coeff for BigRational {
    fn from_u64(k: u64) -> Self {
        BigRational::from_integer(BigInt::from(k))
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn powi(&self, k: i64) -> Self {
        let p = num_traits::pow(self.clone(), k.unsigned_abs() as usize);
        if k < 0 {
            p.recip()
        } else {
            p
        }
    }
    fn div_u64(&self, k: u64) -> Self {
        self / BigRational::from_integer(BigInt::from(k))
    }
}

impl Coeff for Expr {
    fn from_u64(k: u64) -> Self {
        Expr::int(k)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn powi(&self, k: i64) -> Self {
        Expr::powi(self, k)
    }
    fn div_u64(&self, k: u64) -> Self {
        Expr::quot(self.clone(), Expr::int(k))
    }
}

/// Sparse vector of `W(varpi_1)`; absent labels are zero.
pub type FundVec<T> = BTreeMap<FundLabel, T>;

fn add_into<T: Coeff>(v: &mut FundVec<T>, b: FundLabel, c: T) {
    let next = match v.remove(&b) {
        Some(old) => old.add(&c),
        None => c,
    };
    v.insert(b, next);
}

/// `Y_i(c) = exp(f_i / c) alpha_i^vee(c)` applied to `v`.
pub fn y_action<T: Coeff>(m: &FundModule, i: usize, c: &T, v: &FundVec<T>) -> FundVec<T> {
    let mut scaled: FundVec<T> = BTreeMap::new();
    for (b, x) in v {
        let k = m.wt[b][i];
        let y = if k == 0 { x.clone() } else { x.mul(&c.powi(k)) };
        scaled.insert(*b, y);
    }
    let mut out = scaled.clone();
    let mut term = scaled;
    let mut k = 0u64;
    loop {
        k += 1;
        let mut next: FundVec<T> = BTreeMap::new();
        for (b, x) in &term {
            for (b2, mult) in m.fund_f(i, *b) {
                let y = x.mul(&c.powi(-1));
                let y = if mult == 1 { y } else { y.mul(&T::from_u64(mult)) };
                add_into(&mut next, b2, y.div_u64(k));
            }
        }
        if next.is_empty() {
            return out;
        }
        for (b, x) in &next {
            add_into(&mut out, *b, x.clone());
        }
        term = next;
    }
}

/// `Y_{i_1}(x_1) ... Y_{i_k}(x_k) [start]`.
pub fn v_matrix<T: Coeff>(m: &FundModule, word: &[usize], start: FundLabel, coords: &[T]) -> FundVec<T> {
    assert_eq!(word.len(), coords.len());
    let mut v = BTreeMap::new();
    v.insert(start, T::from_u64(1));
    for (i, c) in word.iter().zip(coords).rev() {
        v = y_action(m, *i, c, &v);
    }
    v
}

/// A coordinate transformation: every output coordinate as an expression
/// in the input coordinates (and `c` where it is an action).
pub type Subst = BTreeMap<String, Expr>;

/// Values for named coordinates.
pub type ChartPoint = BTreeMap<String, BigRational>;

pub(crate) fn ex(s: &str) -> Expr {
    match parse(s) {
        Ok(e) => e,
        Err(err) => panic!("bad table entry `{s}`: {err}"),
    }
}

/// Replaces `c` in every formula.
pub fn with_c(map: &Subst, c: &Expr) -> Subst {
    let mut sub = BTreeMap::new();
    sub.insert("c".to_string(), c.clone());
    map.iter().map(|(k, v)| (k.clone(), v.compose(&sub))).collect()
}

/// Runs `first`, then `second`: each output of `second` with its inputs
/// replaced by the outputs of `first`.
pub fn then(first: &Subst, second: &Subst) -> Subst {
    second.iter().map(|(k, v)| (k.clone(), v.compose(first))).collect()
}

/// Identity on the given coordinates.
pub fn identity(vars: &[String]) -> Subst {
    vars.iter().map(|v| (v.clone(), Expr::var(v))).collect()
}

/// One chart: its coordinates, the word it comes from, the explicit
/// actions and statistics, and the closed form of `v`.
#[derive(Clone, Debug)]
pub struct Chart {
    pub label: TypeLabel,
    pub chart: u8,
    /// Coordinates in tuple order.
    pub vars: Vec<String>,
    pub word: Vec<usize>,
    /// The coordinate attached to each letter of `word`.
    pub word_vars: Vec<String>,
    pub start: FundLabel,
    /// `e_i^c` as full maps on `vars`, mentioning `c`.
    pub e: BTreeMap<usize, Subst>,
    pub eps: BTreeMap<usize, Expr>,
    pub gamma: BTreeMap<usize, Expr>,
    pub v_closed: FundVec<Expr>,
}

impl Chart {
    pub fn indices(&self) -> Vec<usize> {
        self.e.keys().copied().collect()
    }

    fn undefined(&self, i: usize) -> GeomError {
        GeomError::UndefinedOnChart { i, chart: self.chart }
    }

    pub fn e_map(&self, i: usize) -> Result<&Subst, GeomError> {
        self.e.get(&i).ok_or_else(|| self.undefined(i))
    }

    /// `e_i^c` at a point.
    pub fn geom_e(&self, i: usize, c: &BigRational, x: &ChartPoint) -> Result<ChartPoint, GeomError> {
        let map = self.e_map(i)?;
        let mut pt = self.checked(x)?;
        pt.insert("c".into(), c.clone());
        let mut out = BTreeMap::new();
        for (k, f) in map {
            out.insert(k.clone(), f.eval(&pt)?);
        }
        Ok(out)
    }

    /// `(eps_i, gamma_i)` for every index the chart defines.
    pub fn geom_stats(&self, x: &ChartPoint) -> Result<Vec<(usize, BigRational, BigRational)>, GeomError> {
        let pt = self.checked(x)?;
        let mut out = Vec::new();
        for (&i, eps) in &self.eps {
            out.push((i, eps.eval(&pt)?, self.gamma[&i].eval(&pt)?));
        }
        Ok(out)
    }

    fn checked(&self, x: &ChartPoint) -> Result<ChartPoint, GeomError> {
        let mut pt = BTreeMap::new();
        for v in &self.vars {
            let val = x.get(v).ok_or_else(|| GeomError::MissingCoordinate(v.clone()))?;
            if val.is_zero() {
                return Err(GeomError::Eval(PosRatError::DivisionByZero));
            }
            pt.insert(v.clone(), val.clone());
        }
        Ok(pt)
    }

    /// The coordinates in word order, as expressions.
    pub fn word_exprs(&self) -> Vec<Expr> {
        self.word_vars.iter().map(|v| Expr::var(v)).collect()
    }

    pub fn v_symbolic(&self, m: &FundModule) -> FundVec<Expr> {
        v_matrix(m, &self.word, self.start, &self.word_exprs())
    }

    pub fn v_numeric(&self, m: &FundModule, x: &ChartPoint) -> Result<FundVec<BigRational>, GeomError> {
        let pt = self.checked(x)?;
        let coords: Vec<BigRational> = self.word_vars.iter().map(|v| pt[v].clone()).collect();
        Ok(v_matrix(m, &self.word, self.start, &coords))
    }

    pub fn v_closed_at(&self, x: &ChartPoint) -> Result<FundVec<BigRational>, GeomError> {
        let pt = self.checked(x)?;
        let mut out = BTreeMap::new();
        for (b, e) in &self.v_closed {
            out.insert(*b, e.eval(&pt)?);
        }
        Ok(out)
    }
}

/// `sigma_bar`: the factor `a` and the target coordinates, both as
/// expressions in the source coordinates.
#[derive(Clone, Debug)]
pub struct SigmaBar {
    pub a: Option<Expr>,
    pub map: Subst,
}

/// Everything attached to one type label.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub label: TypeLabel,
    pub cartan: CartanData,
    pub fund: Option<FundModule>,
    pub main: Chart,
    /// The second chart of `A2dag`.
    pub second: Option<Chart>,
    pub sigma_bar: Option<SigmaBar>,
    /// Inverse of `sigma_bar`; equal to it where `sigma_bar` is an involution.
    pub sigma_inv: Option<SigmaBar>,
}

impl Geometry {
    pub fn chart(&self, k: u8) -> Result<&Chart, GeomError> {
        match k {
            1 => Ok(&self.main),
            2 => self.second.as_ref().ok_or(GeomError::NoSuchChart(2)),
            _ => Err(GeomError::NoSuchChart(k)),
        }
    }

    /// The chart `sigma_bar` lands on.
    pub fn sigma_target(&self) -> &Chart {
        self.second.as_ref().unwrap_or(&self.main)
    }

    /// `e_0` as `sigma_bar^{-1} . e_{sigma(0)} . sigma_bar`.
    pub fn e0_conjugated(&self) -> Option<Subst> {
        let s = self.sigma_bar.as_ref()?;
        let inv = self.sigma_inv.as_ref()?;
        let j = self.sigma_of(0);
        let inner = self.sigma_target().e.get(&j)?;
        Some(then(&then(&s.map, inner), &inv.map))
    }

    /// `sigma(i)`; for `A2dag` the chart change fixes every index.
    pub fn sigma_of(&self, i: usize) -> usize {
        match &self.cartan.sigma {
            Some(s) => s[i],
            None => i,
        }
    }

    /// `sigma_bar` at a point: `(a(x), y)`.
    pub fn sigma_at(&self, x: &ChartPoint) -> Result<(BigRational, ChartPoint), GeomError> {
        let s = self.sigma_bar.as_ref().ok_or(GeomError::NoSuchChart(2))?;
        let pt = self.main.checked(x)?;
        let a = s.a.as_ref().map(|a| a.eval(&pt)).transpose()?.unwrap_or_else(BigRational::one);
        let mut y = BTreeMap::new();
        for (k, f) in &s.map {
            y.insert(k.clone(), f.eval(&pt)?);
        }
        Ok((a, y))
    }

    /// `sigma_bar^{-1}` at a point of the target chart.
    pub fn sigma_inv_at(&self, y: &ChartPoint) -> Result<ChartPoint, GeomError> {
        let s = self.sigma_inv.as_ref().ok_or(GeomError::NoSuchChart(2))?;
        let pt = self.sigma_target().checked(y)?;
        let mut x = BTreeMap::new();
        for (k, f) in &s.map {
            x.insert(k.clone(), f.eval(&pt)?);
        }
        Ok(x)
    }
}

/// The geometry for a family and rank. Panics on a bad rank.
pub fn geometry_of(family: Family, rank: usize) -> Geometry {
    let t = TypeLabel::new(family, rank).expect("valid rank");
    geometry(&data(t.family, t.rank))
}

#[cfg(test)]
mod tests;
