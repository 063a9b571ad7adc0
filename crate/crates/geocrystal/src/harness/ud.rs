//! Piecewise-linear crystals on `Z^m` obtained by ultra-discretizing the
//! charts, written out per family, and the maps `mu` onto `B_infinity` of
//! the Langlands dual.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::b_infinity::{coord_len, BElt, Half};
use crate::cartan::{langlands_dual, Family, TypeLabel};
use crate::tropic::TropExpr;

use Family::*;

/// Integer point keyed by coordinate name.
pub type LatticePoint = BTreeMap<String, i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Ge,
    Lt,
    Eq,
}

/// One branch of `e~_i`: when `lhs cmp rhs` holds, add `delta`.
#[derive(Clone, Debug)]
pub struct Branch {
    pub lhs: TropExpr,
    pub cmp: Cmp,
    pub rhs: TropExpr,
    pub delta: BTreeMap<String, i64>,
}

impl Branch {
    fn holds(&self, x: &LatticePoint) -> bool {
        let (l, r) = (self.lhs.teval(x).unwrap(), self.rhs.teval(x).unwrap());
        match self.cmp {
            Cmp::Ge => l >= r,
            Cmp::Lt => l < r,
            Cmp::Eq => l == r,
        }
    }

    fn shift(&self, x: &LatticePoint, sign: i64) -> LatticePoint {
        let mut y = x.clone();
        for (k, d) in &self.delta {
            *y.get_mut(k).expect("delta names a coordinate") += sign * d;
        }
        y
    }
}

/// An entry of the inverse of `mu`: the coordinate equals `expr / div`,
/// with `expr` read on doubled `B_infinity` coordinates.
#[derive(Clone, Debug)]
pub struct InvEntry {
    pub var: String,
    pub expr: TropExpr,
    pub div: i64,
}

/// The piecewise-linear crystal of one chart together with `mu`.
#[derive(Clone, Debug)]
pub struct UdTable {
    pub label: TypeLabel,
    pub vars: Vec<String>,
    pub e: BTreeMap<usize, Vec<Branch>>,
    pub wt: BTreeMap<usize, TropExpr>,
    pub eps: BTreeMap<usize, TropExpr>,
    pub target: TypeLabel,
    /// Doubled `B_infinity` coordinates in storage order.
    pub mu: Vec<(String, TropExpr)>,
    pub mu_inv: Vec<InvEntry>,
}

impl UdTable {
    pub fn e_tilde(&self, i: usize, x: &LatticePoint) -> Option<LatticePoint> {
        let br = self.e.get(&i)?.iter().find(|b| b.holds(x))?;
        Some(br.shift(x, 1))
    }

    /// The inverse of `e~_i`: the unique branch whose condition holds at
    /// the preimage it proposes.
    pub fn f_tilde(&self, i: usize, y: &LatticePoint) -> Option<LatticePoint> {
        let branches = self.e.get(&i)?;
        for (k, br) in branches.iter().enumerate() {
            let x = br.shift(y, -1);
            if branches.iter().position(|b| b.holds(&x)) == Some(k) {
                return Some(x);
            }
        }
        None
    }

    pub fn wt_at(&self, i: usize, x: &LatticePoint) -> i64 {
        self.wt[&i].teval(x).unwrap()
    }

    pub fn eps_at(&self, i: usize, x: &LatticePoint) -> i64 {
        self.eps[&i].teval(x).unwrap()
    }

    pub fn mu_at(&self, x: &LatticePoint) -> BElt {
        BElt { label: self.target, coords: self.mu.iter().map(|(_, t)| Half(t.teval(x).unwrap())).collect() }
    }

    /// `None` when some coordinate is not an integer.
    pub fn mu_inv_at(&self, b: &BElt) -> Option<LatticePoint> {
        let names = binf_names(self.target);
        let pt: LatticePoint = names.into_iter().zip(b.coords.iter().map(|h| h.0)).collect();
        let mut out = BTreeMap::new();
        for entry in &self.mu_inv {
            let v = entry.expr.teval(&pt).ok()?;
            if v % entry.div != 0 {
                return None;
            }
            out.insert(entry.var.clone(), v / entry.div);
        }
        Some(out)
    }
}

/// Names of the `B_infinity` coordinates in storage order.
pub fn binf_names(t: TypeLabel) -> Vec<String> {
    let n = t.rank;
    let mut v: Vec<String> = (1..=n).map(|i| format!("b{i}")).collect();
    match t.family {
        A1 => v.push(format!("b{}", n + 1)),
        D1 => v.extend((1..n).rev().map(|i| format!("bb{i}"))),
        _ => v.extend((1..=n).rev().map(|i| format!("bb{i}"))),
    }
    assert_eq!(v.len(), coord_len(t));
    v
}

fn var(s: &str) -> TropExpr {
    TropExpr::var(s)
}

fn x(i: usize) -> TropExpr {
    var(&format!("x{i}"))
}

fn xb(i: usize) -> TropExpr {
    var(&format!("xb{i}"))
}

fn sum<const K: usize>(xs: [TropExpr; K]) -> TropExpr {
    TropExpr::add(xs)
}

fn zero() -> TropExpr {
    TropExpr::zero()
}

fn delta(pairs: &[(String, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().cloned().collect()
}

fn branch(lhs: TropExpr, cmp: Cmp, rhs: TropExpr, d: BTreeMap<String, i64>) -> Branch {
    Branch { lhs, cmp, rhs, delta: d }
}

fn always(d: BTreeMap<String, i64>) -> Vec<Branch> {
    alloc::vec![branch(zero(), Cmp::Ge, zero(), d)]
}

fn a1(t: TypeLabel) -> UdTable {
    let n = t.rank;
    let vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut e = BTreeMap::new();
    let mut wt = BTreeMap::new();
    let mut eps = BTreeMap::new();
    e.insert(0, always(vars.iter().map(|v| (v.clone(), -1)).collect()));
    wt.insert(0, sum([x(1).neg(), x(n).neg()]));
    eps.insert(0, x(1));
    for i in 1..=n {
        e.insert(i, always(delta(&[(format!("x{i}"), 1)])));
        let mut w = alloc::vec![x(i).scale(2)];
        if i > 1 {
            w.push(x(i - 1).neg());
        }
        if i < n {
            w.push(x(i + 1).neg());
        }
        wt.insert(i, TropExpr::add(w));
        eps.insert(i, if i < n { x(i + 1).sub(&x(i)) } else { x(n).neg() });
    }
    let mut mu = alloc::vec![("b1".into(), x(1).scale(2))];
    for i in 2..=n {
        mu.push((format!("b{i}"), x(i).sub(&x(i - 1)).scale(2)));
    }
    mu.push((format!("b{}", n + 1), x(n).scale(-2)));
    let mut mu_inv = Vec::new();
    let mut acc = Vec::new();
    for i in 1..=n {
        acc.push(var(&format!("b{i}")));
        mu_inv.push(InvEntry { var: format!("x{i}"), expr: TropExpr::add(acc.clone()), div: 2 });
    }
    UdTable { label: t, vars, e, wt, eps, target: langlands_dual(t), mu, mu_inv }
}

fn classical(t: TypeLabel) -> UdTable {
    let n = t.rank;
    let fam = t.family;
    let ls = if fam == D1 { n - 2 } else { n - 1 };
    let has_x0 = matches!(fam, C1 | D2 | A2dag);
    let q = |i: usize| sum([x(i), xb(i)]);
    // the max-plus counterpart of x_i xb_i, with the family's two ends
    let r = |i: usize| -> TropExpr {
        if i == 0 {
            return match fam {
                B1 | D1 | A2odd => zero(),
                C1 | A2dag => x(0),
                _ => x(0).scale(2),
            };
        }
        if i == ls + 1 {
            return match fam {
                C1 | A2odd => x(n),
                D1 => sum([x(n - 1), x(n)]),
                _ => x(n).scale(2),
            };
        }
        q(i)
    };
    let lead = |i: usize| if i >= 2 { x(i - 1) } else { r(0) };

    let mut vars: Vec<String> = Vec::new();
    if has_x0 {
        vars.push("x0".into());
    }
    vars.extend((1..=n).map(|i| format!("x{i}")));
    vars.extend((1..=ls).rev().map(|i| format!("xb{i}")));

    let mut e = BTreeMap::new();
    let mut wt = BTreeMap::new();
    let mut eps = BTreeMap::new();
    for i in 1..=ls {
        e.insert(
            i,
            alloc::vec![
                branch(q(i), Cmp::Ge, r(i + 1), delta(&[(format!("x{i}"), 1)])),
                branch(q(i), Cmp::Lt, r(i + 1), delta(&[(format!("xb{i}"), 1)])),
            ],
        );
        wt.insert(i, TropExpr::add([r(i - 1).neg(), q(i).scale(2), r(i + 1).neg()]));
        eps.insert(i, TropExpr::add([lead(i), x(i).neg(), r(i + 1).sub(&q(i)).pos()]));
    }
    match fam {
        D1 => {
            for k in [n - 1, n] {
                e.insert(k, always(delta(&[(format!("x{k}"), 1)])));
                wt.insert(k, x(k).scale(2).sub(&q(n - 2)));
                eps.insert(k, x(n - 2).sub(&x(k)));
            }
        }
        _ => {
            e.insert(n, always(delta(&[(format!("x{n}"), 1)])));
            match fam {
                C1 | A2odd => {
                    wt.insert(n, x(n).scale(2).sub(&q(n - 1).scale(2)));
                    eps.insert(n, x(n - 1).scale(2).sub(&x(n)));
                }
                _ => {
                    wt.insert(n, x(n).scale(2).sub(&q(n - 1)));
                    eps.insert(n, x(n - 1).sub(&x(n)));
                }
            }
        }
    }

    let all_but = |skip: &[&str], by: i64, special: Option<(&str, i64)>| -> BTreeMap<String, i64> {
        vars.iter()
            .filter(|v| !skip.contains(&v.as_str()))
            .map(|v| match special {
                Some((s, k)) if s == v => (v.clone(), k),
                _ => (v.clone(), by),
            })
            .collect()
    };
    let xn = format!("x{n}");
    match fam {
        B1 | D1 | A2odd => {
            let special = if fam == A2odd { Some((xn.as_str(), -2)) } else { None };
            e.insert(
                0,
                alloc::vec![
                    branch(q(1), Cmp::Ge, q(2), all_but(&["x1"], -1, special)),
                    branch(q(1), Cmp::Lt, q(2), all_but(&["xb1"], -1, special)),
                ],
            );
            wt.insert(0, q(2).neg());
            eps.insert(0, sum([xb(1), q(2).sub(&q(1)).pos()]));
        }
        C1 | A2dag => {
            let special = if fam == C1 { Some((xn.as_str(), -2)) } else { None };
            e.insert(
                0,
                alloc::vec![
                    branch(x(0), Cmp::Ge, q(1), delta(&[("x0".into(), 1)])),
                    branch(x(0), Cmp::Lt, q(1), all_but(&[], -1, special)),
                ],
            );
            wt.insert(0, x(0).scale(2).sub(&q(1).scale(2)));
            eps.insert(0, sum([x(0).neg(), q(1).sub(&x(0)).pos().scale(2)]));
        }
        D2 => {
            let two_x0 = x(0).scale(2);
            let mut far = all_but(&[], -2, None);
            far.insert("x0".into(), -1);
            e.insert(
                0,
                alloc::vec![
                    branch(two_x0.clone(), Cmp::Ge, q(1), delta(&[("x0".into(), 1)])),
                    branch(sum([two_x0.clone(), TropExpr::constant(1)]), Cmp::Eq, q(1), all_but(&["x0"], -1, None)),
                    branch(sum([two_x0.clone(), TropExpr::constant(1)]), Cmp::Lt, q(1), far),
                ],
            );
            wt.insert(0, two_x0.sub(&q(1)));
            eps.insert(0, sum([x(0).neg(), q(1).sub(&two_x0).pos()]));
        }
        _ => unreachable!(),
    }

    let (mu, mu_inv) = mu_tables(fam, n);
    UdTable { label: t, vars, e, wt, eps, target: langlands_dual(t), mu, mu_inv }
}

/// `mu` and its inverse for the families other than `A1`.
fn mu_tables(fam: Family, n: usize) -> (Vec<(String, TropExpr)>, Vec<InvEntry>) {
    let ls = if fam == D1 { n - 2 } else { n - 1 };
    let b = |i: usize| var(&format!("b{i}"));
    let bb = |i: usize| var(&format!("bb{i}"));
    let mut mu: Vec<(String, TropExpr)> = Vec::new();
    // b_1 .. b_n
    mu.push(("b1".into(), xb(1).scale(2)));
    for i in 2..=ls {
        mu.push((format!("b{i}"), xb(i).sub(&xb(i - 1)).scale(2)));
    }
    match fam {
        D1 => {
            mu.push((format!("b{}", n - 1), x(n - 1).sub(&xb(n - 2)).scale(2)));
            mu.push((format!("b{n}"), x(n).sub(&x(n - 1)).scale(2)));
        }
        C1 | A2odd => mu.push((format!("b{n}"), x(n).sub(&xb(n - 1).scale(2)))),
        _ => mu.push((format!("b{n}"), x(n).sub(&xb(n - 1)).scale(2))),
    }
    // bb_n .. bb_1
    let first = |i: usize| -> TropExpr {
        match fam {
            C1 | A2dag => x(0),
            D2 => x(0).scale(2),
            _ => zero(),
        }
        .sub(&x(i))
    };
    let lower = |i: usize| if i == 1 { first(1) } else { x(i - 1).sub(&x(i)) };
    match fam {
        D1 => {
            mu.push((format!("bb{}", n - 1), x(n - 2).sub(&x(n)).scale(2)));
            for i in (1..=n - 2).rev() {
                mu.push((format!("bb{i}"), lower(i).scale(2)));
            }
        }
        C1 | A2odd => {
            mu.push((format!("bb{n}"), x(n - 1).scale(2).sub(&x(n))));
            for i in (1..n).rev() {
                mu.push((format!("bb{i}"), lower(i).scale(2)));
            }
        }
        _ => {
            for i in (1..=n).rev() {
                mu.push((format!("bb{i}"), lower(i).scale(2)));
            }
        }
    }

    // inverse, built on doubled values: dxb[i] = 2 xb_i, dx[i] = 2 x_i
    let mut inv = Vec::new();
    let mut dxb: Vec<TropExpr> = alloc::vec![zero()];
    for i in 1..=ls {
        let prev = dxb[i - 1].clone();
        dxb.push(sum([prev, b(i)]));
        inv.push(InvEntry { var: format!("xb{i}"), expr: dxb[i].clone(), div: 2 });
    }
    let mut dx: BTreeMap<usize, TropExpr> = BTreeMap::new();
    match fam {
        B1 | D1 | A2odd => {
            // from the bottom: x_1 = -bb_1, x_i = x_{i-1} - bb_i
            let top = if fam == D1 { n - 2 } else { n - 1 };
            dx.insert(1, bb(1).neg());
            for i in 2..=top {
                dx.insert(i, dx[&(i - 1)].sub(&bb(i)));
            }
            match fam {
                D1 => {
                    dx.insert(n - 1, sum([b(n - 1), dxb[n - 2].clone()]));
                    dx.insert(n, sum([b(n), dx[&(n - 1)].clone()]));
                }
                A2odd => {
                    dx.insert(n, sum([b(n), dxb[n - 1].clone()]).scale(2));
                }
                _ => {
                    dx.insert(n, sum([b(n), dxb[n - 1].clone()]));
                }
            }
        }
        C1 => {
            // x_n = 2 (b_n + xb_{n-1}), x_{n-1} = bb_n + x_n / 2, x_{i-1} = x_i + bb_i
            let half_xn = sum([b(n), dxb[n - 1].clone()]);
            dx.insert(n, half_xn.scale(2));
            dx.insert(n - 1, sum([bb(n), half_xn]));
            for i in (1..n).rev() {
                dx.insert(i - 1, sum([dx[&i].clone(), bb(i)]));
            }
        }
        D2 | A2dag => {
            dx.insert(n, sum([b(n), dxb[n - 1].clone()]));
            let bottom = if fam == D2 { 2 } else { 1 };
            for i in (bottom..=n).rev() {
                dx.insert(i - 1, sum([dx[&i].clone(), bb(i)]));
            }
        }
        _ => unreachable!(),
    }
    for (i, e) in &dx {
        inv.push(InvEntry { var: format!("x{i}"), expr: e.clone(), div: 2 });
    }
    if fam == D2 {
        // 2 x_0 = bb_1 + x_1
        inv.push(InvEntry { var: "x0".into(), expr: sum([bb(1), dx[&1].clone()]), div: 4 });
    }
    (mu, inv)
}

/// The piecewise-linear crystal and `mu` for a family with a chart.
pub fn ud_table(t: TypeLabel) -> UdTable {
    assert!(t.family.has_chart(), "A2even has no chart");
    if t.family == A1 {
        a1(t)
    } else {
        classical(t)
    }
}
