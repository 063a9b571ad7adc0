//! The crystal contract, tensor products, `T_lambda`, axiom checks and
//! crystal graph export.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Sub};

use crate::cartan::CartanData;
use crate::report::{Mode, Report};

/// An integer or `-infinity`; arithmetic with `-infinity` absorbs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
}

impl ExtInt {
    pub fn fin(self) -> Option<i64> {
        match self {
            ExtInt::Fin(v) => Some(v),
            ExtInt::NegInf => None,
        }
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtInt::NegInf, ExtInt::NegInf) => Ordering::Equal,
            (ExtInt::NegInf, _) => Ordering::Less,
            (_, ExtInt::NegInf) => Ordering::Greater,
            (ExtInt::Fin(a), ExtInt::Fin(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<i64> for ExtInt {
    type Output = ExtInt;
    fn add(self, k: i64) -> ExtInt {
        match self {
            ExtInt::Fin(v) => ExtInt::Fin(v + k),
            ExtInt::NegInf => ExtInt::NegInf,
        }
    }
}

impl Sub<i64> for ExtInt {
    type Output = ExtInt;
    fn sub(self, k: i64) -> ExtInt {
        self + (-k)
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Fin(v)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Fin(v) => write!(f, "{v}"),
            ExtInt::NegInf => f.write_str("-inf"),
        }
    }
}

/// Which Kashiwara operator to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    E,
    F,
}

/// The maps that make a set into a crystal. `wt` is written in the
/// fundamental weights, so `<alpha_i^vee, wt(b)>` is `wt(b)[i]`.
pub trait CrystalOps {
    type Elt: Clone + Ord + fmt::Debug;

    /// Number of indices, `n + 1`.
    fn size(&self) -> usize;
    fn wt(&self, b: &Self::Elt) -> Vec<i64>;
    fn eps(&self, i: usize, b: &Self::Elt) -> ExtInt;
    fn phi(&self, i: usize, b: &Self::Elt) -> ExtInt;
    fn e(&self, i: usize, b: &Self::Elt) -> Option<Self::Elt>;
    fn f(&self, i: usize, b: &Self::Elt) -> Option<Self::Elt>;
    fn validate(&self, b: &Self::Elt) -> bool;

    fn apply(&self, op: Op, i: usize, b: &Self::Elt) -> Option<Self::Elt> {
        match op {
            Op::E => self.e(i, b),
            Op::F => self.f(i, b),
        }
    }
}

impl<C: CrystalOps + ?Sized> CrystalOps for &C {
    type Elt = C::Elt;
    fn size(&self) -> usize {
        (**self).size()
    }
    fn wt(&self, b: &Self::Elt) -> Vec<i64> {
        (**self).wt(b)
    }
    fn eps(&self, i: usize, b: &Self::Elt) -> ExtInt {
        (**self).eps(i, b)
    }
    fn phi(&self, i: usize, b: &Self::Elt) -> ExtInt {
        (**self).phi(i, b)
    }
    fn e(&self, i: usize, b: &Self::Elt) -> Option<Self::Elt> {
        (**self).e(i, b)
    }
    fn f(&self, i: usize, b: &Self::Elt) -> Option<Self::Elt> {
        (**self).f(i, b)
    }
    fn validate(&self, b: &Self::Elt) -> bool {
        (**self).validate(b)
    }
}

/// The one-element crystal `T_lambda`.
#[derive(Clone, Debug)]
pub struct TLambda {
    pub lambda: Vec<i64>,
}

impl CrystalOps for TLambda {
    type Elt = ();
    fn size(&self) -> usize {
        self.lambda.len()
    }
    fn wt(&self, _: &()) -> Vec<i64> {
        self.lambda.clone()
    }
    fn eps(&self, _: usize, _: &()) -> ExtInt {
        ExtInt::NegInf
    }
    fn phi(&self, _: usize, _: &()) -> ExtInt {
        ExtInt::NegInf
    }
    fn e(&self, _: usize, _: &()) -> Option<()> {
        None
    }
    fn f(&self, _: usize, _: &()) -> Option<()> {
        None
    }
    fn validate(&self, _: &()) -> bool {
        true
    }
}

/// Which factor of `b1 (x) b2` an operator acts on.
fn routes_left<A: CrystalOps, B: CrystalOps>(op: Op, i: usize, b1: &A::Elt, b2: &B::Elt, c1: &A, c2: &B) -> bool {
    let phi1 = c1.phi(i, b1);
    let eps2 = c2.eps(i, b2);
    match op {
        Op::F => phi1 > eps2,
        Op::E => phi1 >= eps2,
    }
}

/// Applies `e_i` or `f_i` to `b1 (x) b2` by the signature rule.
pub fn tensor_apply<A: CrystalOps, B: CrystalOps>(
    op: Op,
    i: usize,
    pair: &(A::Elt, B::Elt),
    c1: &A,
    c2: &B,
) -> Option<(A::Elt, B::Elt)> {
    let (b1, b2) = pair;
    if routes_left(op, i, b1, b2, c1, c2) {
        c1.apply(op, i, b1).map(|x| (x, b2.clone()))
    } else {
        c2.apply(op, i, b2).map(|y| (b1.clone(), y))
    }
}

/// `(wt_i, eps_i, phi_i)` of `b1 (x) b2`.
pub fn tensor_stats<A: CrystalOps, B: CrystalOps>(
    i: usize,
    pair: &(A::Elt, B::Elt),
    c1: &A,
    c2: &B,
) -> (i64, ExtInt, ExtInt) {
    let (b1, b2) = pair;
    let w1 = c1.wt(b1)[i];
    let w2 = c2.wt(b2)[i];
    let eps = c1.eps(i, b1).max(c2.eps(i, b2) - w1);
    let phi = c2.phi(i, b2).max(c1.phi(i, b1) + w2);
    (w1 + w2, eps, phi)
}

/// The tensor product crystal `A (x) B`.
#[derive(Clone, Debug)]
pub struct Tensor<A, B> {
    pub left: A,
    pub right: B,
}

impl<A: CrystalOps, B: CrystalOps> CrystalOps for Tensor<A, B> {
    type Elt = (A::Elt, B::Elt);

    fn size(&self) -> usize {
        self.left.size()
    }
    fn wt(&self, b: &Self::Elt) -> Vec<i64> {
        let w1 = self.left.wt(&b.0);
        let w2 = self.right.wt(&b.1);
        w1.iter().zip(&w2).map(|(x, y)| x + y).collect()
    }
    fn eps(&self, i: usize, b: &Self::Elt) -> ExtInt {
        tensor_stats(i, b, &self.left, &self.right).1
    }
    fn phi(&self, i: usize, b: &Self::Elt) -> ExtInt {
        tensor_stats(i, b, &self.left, &self.right).2
    }
    fn e(&self, i: usize, b: &Self::Elt) -> Option<Self::Elt> {
        tensor_apply(Op::E, i, b, &self.left, &self.right)
    }
    fn f(&self, i: usize, b: &Self::Elt) -> Option<Self::Elt> {
        tensor_apply(Op::F, i, b, &self.left, &self.right)
    }
    fn validate(&self, b: &Self::Elt) -> bool {
        self.left.validate(&b.0) && self.right.validate(&b.1)
    }
}

/// Checks the crystal axioms on a sample, for every index.
///
/// Per element and index: `phi_i = eps_i + <alpha_i^vee, wt>`; `e_i` and
/// `f_i` are mutually inverse where defined; `e_i` raises the weight by
/// `cl(alpha_i)` (column `i` of the Cartan matrix), lowers `eps_i` by one and
/// raises `phi_i` by one, and `f_i` does the opposite; images stay valid.
pub fn check_axioms<C: CrystalOps>(ops: &C, cartan: &CartanData, sample: &[C::Elt], seed: u64) -> Report {
    let mut report = Report::new("crystal-axioms", Some(cartan.label), Mode::Sampled, seed);
    report.sample_size = sample.len();
    let show = |b: &C::Elt| format!("{b:?}");
    for b in sample {
        if !ops.validate(b) {
            report.fail(show(b), None, "valid".into(), "invalid".into());
            continue;
        }
        let wt = ops.wt(b);
        for i in 0..ops.size() {
            let (eps, phi) = (ops.eps(i, b), ops.phi(i, b));
            let expected = eps + wt[i];
            report.expect_eq(|| show(b), Some(i), phi, expected);
            let alpha = cartan.cl_alpha(i);
            for (op, sign) in [(Op::E, 1i64), (Op::F, -1i64)] {
                let Some(b2) = ops.apply(op, i, b) else { continue };
                if !ops.validate(&b2) {
                    report.fail(show(b), Some(i), format!("{op:?} image valid"), format!("{b2:?}"));
                    continue;
                }
                let back = match op {
                    Op::E => ops.f(i, &b2),
                    Op::F => ops.e(i, &b2),
                };
                report.expect_eq(|| show(b), Some(i), back.as_ref(), Some(b));
                let moved: Vec<i64> = wt.iter().zip(&alpha).map(|(w, a)| w + sign * a).collect();
                report.expect_eq(|| show(b), Some(i), ops.wt(&b2), moved);
                report.expect_eq(|| show(b), Some(i), ops.eps(i, &b2), eps - sign);
                report.expect_eq(|| show(b), Some(i), ops.phi(i, &b2), phi + sign);
            }
        }
    }
    report
}

/// How edges are labelled in DOT output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeLabel {
    /// `label="i"` on every edge.
    Index,
    /// A colour per index and no text.
    Colour,
}

const PALETTE: [&str; 8] = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"];

/// The `f_i`-graph within `radius` steps of the seeds, as a DOT digraph.
/// Nodes are listed in element order, edges in (source, index) order.
pub fn graph_dot<C: CrystalOps>(
    ops: &C,
    seeds: &[C::Elt],
    radius: usize,
    mode: EdgeLabel,
    name: impl Fn(&C::Elt) -> String,
) -> String {
    let mut seen: BTreeSet<C::Elt> = seeds.iter().cloned().collect();
    let mut frontier: Vec<C::Elt> = seen.iter().cloned().collect();
    let mut edges: BTreeMap<(C::Elt, usize), C::Elt> = BTreeMap::new();
    for _ in 0..radius {
        let mut next = Vec::new();
        for b in &frontier {
            for i in 0..ops.size() {
                if let Some(b2) = ops.f(i, b) {
                    edges.insert((b.clone(), i), b2.clone());
                    if seen.insert(b2.clone()) {
                        next.push(b2);
                    }
                }
            }
        }
        frontier = next;
    }
    let ids: BTreeMap<&C::Elt, usize> = seen.iter().enumerate().map(|(k, b)| (b, k)).collect();
    let mut out = String::from("digraph crystal {\n");
    for (b, k) in &ids {
        out += &format!("  n{k} [label=\"{}\"];\n", name(b).replace('"', "\\\""));
    }
    for ((b, i), b2) in &edges {
        let attr = match mode {
            EdgeLabel::Index => format!("label=\"{i}\""),
            EdgeLabel::Colour => format!("color={}", PALETTE[i % PALETTE.len()]),
        };
        out += &format!("  n{} -> n{} [{attr}];\n", ids[b], ids[b2]);
    }
    out.push_str("}\n");
    out
}
