//! Ultra-discretization: the structural map from positive expressions to
//! max-plus expressions, and integer evaluation.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::posrat::{Expr, Node};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TropError {
    #[error("variable `{0}` has no value")]
    MissingVariable(String),
}

#[derive(Debug)]
pub enum TNode {
    Var(Arc<str>),
    Zero,
    Const(i64),
    Add(Vec<TropExpr>),
    Neg(TropExpr),
    Scale(i64, TropExpr),
    Max(Vec<TropExpr>),
}

/// A piecewise-linear expression. Cheap to clone; subtrees are shared.
#[derive(Clone)]
pub struct TropExpr(Arc<TNode>);

impl fmt::Debug for TropExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TropExpr({self})")
    }
}

fn tid(t: &TropExpr) -> usize {
    Arc::as_ptr(&t.0) as usize
}

impl TropExpr {
    pub fn node(&self) -> &TNode {
        &self.0
    }

    fn wrap(n: TNode) -> TropExpr {
        TropExpr(Arc::new(n))
    }

    pub fn var(name: &str) -> TropExpr {
        TropExpr::wrap(TNode::Var(name.into()))
    }

    pub fn zero() -> TropExpr {
        TropExpr::wrap(TNode::Zero)
    }

    pub fn constant(k: i64) -> TropExpr {
        if k == 0 {
            return TropExpr::zero();
        }
        TropExpr::wrap(TNode::Const(k))
    }

    pub fn add<I: IntoIterator<Item = TropExpr>>(items: I) -> TropExpr {
        let xs: Vec<TropExpr> = items.into_iter().collect();
        match xs.len() {
            0 => TropExpr::zero(),
            1 => xs.into_iter().next().unwrap(),
            _ => TropExpr::wrap(TNode::Add(xs)),
        }
    }

    pub fn neg(&self) -> TropExpr {
        TropExpr::wrap(TNode::Neg(self.clone()))
    }

    pub fn scale(&self, k: i64) -> TropExpr {
        TropExpr::wrap(TNode::Scale(k, self.clone()))
    }

    /// Panics on an empty list: `max()` has no value.
    pub fn max<I: IntoIterator<Item = TropExpr>>(items: I) -> TropExpr {
        let xs: Vec<TropExpr> = items.into_iter().collect();
        assert!(!xs.is_empty(), "max of nothing");
        if xs.len() == 1 {
            return xs.into_iter().next().unwrap();
        }
        TropExpr::wrap(TNode::Max(xs))
    }

    /// `a - b`.
    pub fn sub(&self, other: &TropExpr) -> TropExpr {
        TropExpr::add([self.clone(), other.neg()])
    }

    /// `(self)_+ = max(self, 0)`.
    pub fn pos(&self) -> TropExpr {
        TropExpr::max([self.clone(), TropExpr::zero()])
    }

    pub fn id(&self) -> usize {
        tid(self)
    }

    pub fn teval(&self, point: &BTreeMap<String, i64>) -> Result<i64, TropError> {
        self.teval_with(&|v| point.get(v).copied())
    }

    pub fn teval_with(&self, lookup: &dyn Fn(&str) -> Option<i64>) -> Result<i64, TropError> {
        let mut memo = BTreeMap::new();
        teval_memo(self, lookup, &mut memo)
    }

    pub fn children(&self) -> Vec<TropExpr> {
        match self.node() {
            TNode::Var(_) | TNode::Zero | TNode::Const(_) => Vec::new(),
            TNode::Add(xs) | TNode::Max(xs) => xs.clone(),
            TNode::Neg(x) | TNode::Scale(_, x) => alloc::vec![x.clone()],
        }
    }
}

fn teval_memo(
    t: &TropExpr,
    lookup: &dyn Fn(&str) -> Option<i64>,
    memo: &mut BTreeMap<usize, i64>,
) -> Result<i64, TropError> {
    if let Some(v) = memo.get(&tid(t)) {
        return Ok(*v);
    }
    let v = match t.node() {
        TNode::Var(name) => lookup(name).ok_or_else(|| TropError::MissingVariable(name.to_string()))?,
        TNode::Zero => 0,
        TNode::Const(k) => *k,
        TNode::Add(xs) => {
            let mut acc = 0;
            for x in xs {
                acc += teval_memo(x, lookup, memo)?;
            }
            acc
        }
        TNode::Neg(x) => -teval_memo(x, lookup, memo)?,
        TNode::Scale(k, x) => k * teval_memo(x, lookup, memo)?,
        TNode::Max(xs) => {
            let mut best = i64::MIN;
            for x in xs {
                best = best.max(teval_memo(x, lookup, memo)?);
            }
            best
        }
    };
    memo.insert(tid(t), v);
    Ok(v)
}

/// The structural image: products add, quotients subtract, sums take the
/// maximum, powers scale, and positive constants vanish.
pub fn tropicalize(e: &Expr) -> TropExpr {
    let mut memo: BTreeMap<usize, (Expr, TropExpr)> = BTreeMap::new();
    trop_memo(e, &mut memo)
}

fn trop_memo(e: &Expr, memo: &mut BTreeMap<usize, (Expr, TropExpr)>) -> TropExpr {
    if let Some((_, t)) = memo.get(&e.id()) {
        return t.clone();
    }
    let t = match e.node() {
        Node::Var(v) => TropExpr::var(v),
        Node::Const(_) => TropExpr::zero(),
        Node::Sum(xs) => TropExpr::max(xs.iter().map(|x| trop_memo(x, memo))),
        Node::Prod(xs) => TropExpr::add(xs.iter().map(|x| trop_memo(x, memo))),
        Node::Quot(a, b) => TropExpr::add([trop_memo(a, memo), trop_memo(b, memo).neg()]),
        Node::Pow(b, k) => trop_memo(b, memo).scale(*k as i64),
    };
    memo.insert(e.id(), (e.clone(), t.clone()));
    t
}

fn is_atom(t: &TropExpr) -> bool {
    match t.node() {
        TNode::Const(k) => *k >= 0,
        TNode::Var(_) | TNode::Zero | TNode::Max(_) => true,
        _ => false,
    }
}

impl fmt::Display for TropExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            TNode::Var(v) => f.write_str(v),
            TNode::Zero => f.write_str("0"),
            TNode::Const(k) => write!(f, "{k}"),
            TNode::Add(xs) => {
                for (k, x) in xs.iter().enumerate() {
                    match x.node() {
                        TNode::Neg(inner) if k > 0 => {
                            f.write_str(" - ")?;
                            if is_atom(inner) || matches!(inner.node(), TNode::Scale(..)) {
                                write!(f, "{inner}")?;
                            } else {
                                write!(f, "({inner})")?;
                            }
                        }
                        _ => {
                            if k > 0 {
                                f.write_str(" + ")?;
                            }
                            write!(f, "{x}")?;
                        }
                    }
                }
                Ok(())
            }
            TNode::Neg(x) => {
                if is_atom(x) {
                    write!(f, "-{x}")
                } else {
                    write!(f, "-({x})")
                }
            }
            TNode::Scale(k, x) => {
                if is_atom(x) {
                    write!(f, "{k}{x}")
                } else {
                    write!(f, "{k}({x})")
                }
            }
            TNode::Max(xs) => {
                f.write_str("max(")?;
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::posrat::{equal, parse};
    use alloc::format;
    use alloc::vec;
    use proptest::prelude::*;

    fn pt(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn ratio_identity() {
        let t = tropicalize(&parse("(c*x+y)/(x+y)").unwrap());
        assert_eq!(format!("{t}"), "max(c + x, y) - max(x, y)");
        assert_eq!(t.teval(&pt(&[("c", 1), ("x", 2), ("y", 5)])).unwrap(), 0);
        assert_eq!(t.teval(&pt(&[("c", 1), ("x", 5), ("y", 2)])).unwrap(), 1);
    }

    #[test]
    fn constants_vanish() {
        let t = tropicalize(&parse("7").unwrap());
        assert_eq!(t.teval(&BTreeMap::new()).unwrap(), 0);
        let t = tropicalize(&parse("x^2*y/z").unwrap());
        assert_eq!(t.teval(&pt(&[("x", 3), ("y", -1), ("z", 4)])).unwrap(), 2 * 3 - 1 - 4);
    }

    #[test]
    fn a1_eps_n() {
        let t = tropicalize(&parse("1/x3").unwrap());
        assert_eq!(t.teval(&pt(&[("x3", 5)])).unwrap(), -5);
        assert_eq!(t.teval(&BTreeMap::new()), Err(TropError::MissingVariable("x3".into())));
    }

    #[test]
    fn display_forms() {
        let t = TropExpr::add([TropExpr::var("a"), TropExpr::var("b").scale(2).neg()]).pos();
        assert_eq!(format!("{t}"), "max(a - 2b, 0)");
    }

    fn arb() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (1u64..4).prop_map(Expr::int),
            prop::sample::select(vec!["x", "y", "z"]).prop_map(Expr::var),
        ];
        leaf.prop_recursive(4, 20, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::sum),
                prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::product),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::quot(a, b)),
                (inner, 2u32..4).prop_map(|(a, k)| a.pow(k)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn homomorphism(a in arb(), b in arb(), x in -20i64..=20, y in -20i64..=20, z in -20i64..=20) {
            let p = pt(&[("x", x), ("y", y), ("z", z)]);
            let ta = tropicalize(&a).teval(&p).unwrap();
            let tb = tropicalize(&b).teval(&p).unwrap();
            prop_assert_eq!(tropicalize(&(&a * &b)).teval(&p).unwrap(), ta + tb);
            prop_assert_eq!(tropicalize(&(&a / &b)).teval(&p).unwrap(), ta - tb);
            prop_assert_eq!(tropicalize(&(&a + &b)).teval(&p).unwrap(), ta.max(tb));
        }

        #[test]
        fn constants_evaluate_to_zero(k in 1u64..1000, m in 1u64..1000) {
            let e = Expr::sum([Expr::int(k), Expr::product([Expr::int(m), Expr::int(k)])]);
            prop_assert_eq!(tropicalize(&e).teval(&BTreeMap::new()).unwrap(), 0);
        }
    }

    #[test]
    fn representation_independence() {
        // pairs of equal positive expressions with different shapes
        let pairs = [
            ("(x^3+y^3)/(x+y) + x*y", "x^2 + y^2"),
            ("1/(1/x + 1/y)", "x*y/(x+y)"),
            ("(x+y)^2/(x+y)", "x + y"),
            ("(x*z + y*z)/(x + y)", "z"),
        ];
        for (a, b) in pairs {
            let (ea, eb) = (parse(a).unwrap(), parse(b).unwrap());
            assert!(equal(&ea, &eb).unwrap());
            let (ta, tb) = (tropicalize(&ea), tropicalize(&eb));
            for x in -20..=20 {
                for y in (-20..=20).step_by(2) {
                    for z in [-7, 0, 11] {
                        let p = pt(&[("x", x), ("y", y), ("z", z)]);
                        assert_eq!(ta.teval(&p).unwrap(), tb.teval(&p).unwrap(), "{a} at {x},{y},{z}");
                    }
                }
            }
        }
    }
}
