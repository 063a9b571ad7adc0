//! The limit perfect crystals `B_infinity(g)` for the seven families.
//!
//! Coordinates are stored in the conventional order: `(b_1, .., b_{n+1})` for
//! `A1`, `(b_1, .., b_n, bb_{n-1}, .., bb_1)` for `D1`, and
//! `(b_1, .., b_n, bb_n, .., bb_1)` otherwise. Every coordinate lives in
//! `1/2 Z`; only `B1` and `D2` actually use the halves.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::cartan::{cartan_data, CartanData, Family, RankError, TypeLabel};
use crate::crystal_core::{CrystalOps, ExtInt, Op};

/// A number in `1/2 Z`, stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Half(pub i64);

impl Half {
    pub fn int(k: i64) -> Half {
        Half(2 * k)
    }

    pub fn is_int(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn doubled(self) -> i64 {
        self.0
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_int() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not an integer or half-integer")]
pub struct HalfParseError(pub String);

impl FromStr for Half {
    type Err = HalfParseError;
    fn from_str(s: &str) -> Result<Half, HalfParseError> {
        let bad = || HalfParseError(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            None => s.parse::<i64>().map(Half::int).map_err(|_| bad()),
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                match q.trim().parse::<i64>().map_err(|_| bad())? {
                    1 => Ok(Half::int(p)),
                    2 => Ok(Half(p)),
                    -1 => Ok(Half::int(-p)),
                    -2 => Ok(Half(-p)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BinfError {
    #[error("index {i} out of range 0..={n}")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("element is not in B_infinity({0})")]
    Invalid(TypeLabel),
}

/// An element of `B_infinity`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BElt {
    pub label: TypeLabel,
    pub coords: Vec<Half>,
}

impl BElt {
    pub fn from_ints(label: TypeLabel, xs: &[i64]) -> BElt {
        BElt { label, coords: xs.iter().map(|&k| Half::int(k)).collect() }
    }

    pub fn zero(label: TypeLabel) -> BElt {
        BElt { label, coords: alloc::vec![Half(0); coord_len(label)] }
    }
}

impl fmt::Display for BElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for BElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Number of coordinates of an element.
pub fn coord_len(t: TypeLabel) -> usize {
    match t.family {
        Family::A1 => t.rank + 1,
        Family::D1 => 2 * t.rank - 1,
        _ => 2 * t.rank,
    }
}

/// Index of `b_i`, `1 <= i`.
fn ib(i: usize) -> usize {
    i - 1
}

/// Index of `bb_i`.
fn ibb(t: TypeLabel, i: usize) -> usize {
    match t.family {
        Family::D1 => 2 * t.rank - 1 - i,
        _ => 2 * t.rank - i,
    }
}

/// `B_infinity(g)` for one type label. `A2dag` has no `B_infinity`.
#[derive(Clone, Debug)]
pub struct BInfinity {
    pub cartan: CartanData,
}

impl BInfinity {
    pub fn new(t: TypeLabel) -> Result<BInfinity, RankError> {
        assert!(t.family != Family::A2dag, "A2dag has no B_infinity");
        Ok(BInfinity { cartan: cartan_data(t)? })
    }

    pub fn label(&self) -> TypeLabel {
        self.cartan.label
    }

    fn n(&self) -> usize {
        self.cartan.label.rank
    }

    fn b(&self, x: &BElt, i: usize) -> i64 {
        x.coords[ib(i)].0
    }

    fn bb(&self, x: &BElt, i: usize) -> i64 {
        x.coords[ibb(self.label(), i)].0
    }

    /// Applies `e_i` or `f_i`; both are total on `B_infinity`.
    pub fn apply(&self, op: Op, i: usize, x: &BElt) -> Result<BElt, BinfError> {
        let n = self.n();
        if i > n {
            return Err(BinfError::IndexOutOfRange { i, n });
        }
        if x.label != self.label() || !self.validate(x) {
            return Err(BinfError::Invalid(self.label()));
        }
        let t = self.label();
        let mut y = x.clone();
        // `shift(slot, amount)` adds `amount` (in halves) to one coordinate
        let mut moves: Vec<(usize, i64)> = Vec::new();
        let s: i64 = if op == Op::E { 1 } else { -1 };
        match t.family {
            Family::A1 => {
                if i == 0 {
                    moves.push((ib(1), -2 * s));
                    moves.push((ib(n + 1), 2 * s));
                } else {
                    moves.push((ib(i), 2 * s));
                    moves.push((ib(i + 1), -2 * s));
                }
            }
            f => {
                let last_std = if f == Family::D1 { n - 2 } else { n - 1 };
                if i == 0 {
                    self.zero_moves(op, x, &mut moves);
                } else if i <= last_std {
                    // e: b_{i+1} > bb_{i+1} moves (b_i, b_{i+1}); f: b_{i+1} >= bb_{i+1}
                    let (u, v) = (self.b(x, i + 1), self.bb(x, i + 1));
                    let left = if op == Op::E { u > v } else { u >= v };
                    if left {
                        moves.push((ib(i), 2 * s));
                        moves.push((ib(i + 1), -2 * s));
                    } else {
                        moves.push((ibb(t, i + 1), 2 * s));
                        moves.push((ibb(t, i), -2 * s));
                    }
                } else if f == Family::D1 {
                    if i == n - 1 {
                        moves.push((ib(n - 1), 2 * s));
                        moves.push((ib(n), -2 * s));
                    } else {
                        moves.push((ib(n), 2 * s));
                        moves.push((ibb(t, n - 1), -2 * s));
                    }
                } else {
                    let step = if matches!(f, Family::B1 | Family::D2) { 1 } else { 2 };
                    moves.push((ib(n), step * s));
                    moves.push((ibb(t, n), -step * s));
                }
            }
        }
        for (slot, d) in moves {
            y.coords[slot].0 += d;
        }
        Ok(y)
    }

    fn zero_moves(&self, op: Op, x: &BElt, moves: &mut Vec<(usize, i64)>) {
        let t = self.label();
        let (b1, bb1) = (ib(1), ibb(t, 1));
        match t.family {
            Family::B1 | Family::D1 | Family::A2odd => {
                let (u, v) = (self.b(x, 2), self.bb(x, 2));
                match op {
                    Op::E if u > v => moves.extend([(ib(2), -2), (bb1, 2)]),
                    Op::E => moves.extend([(b1, -2), (ibb(t, 2), 2)]),
                    Op::F if u >= v => moves.extend([(ib(2), 2), (bb1, -2)]),
                    Op::F => moves.extend([(b1, 2), (ibb(t, 2), -2)]),
                }
            }
            Family::C1 => {
                let d = (self.b(x, 1) - self.bb(x, 1)) / 2;
                match op {
                    Op::E if d > 1 => moves.push((b1, -4)),
                    Op::E if d == 1 => moves.extend([(b1, -2), (bb1, 2)]),
                    Op::E => moves.push((bb1, 4)),
                    Op::F if d >= 0 => moves.push((b1, 4)),
                    Op::F if d == -1 => moves.extend([(b1, 2), (bb1, -2)]),
                    Op::F => moves.push((bb1, -4)),
                }
            }
            Family::D2 | Family::A2even => {
                let (u, v) = (self.b(x, 1), self.bb(x, 1));
                match op {
                    Op::E if u > v => moves.push((b1, -2)),
                    Op::E => moves.push((bb1, 2)),
                    Op::F if u >= v => moves.push((b1, 2)),
                    Op::F => moves.push((bb1, -2)),
                }
            }
            Family::A1 | Family::A2dag => unreachable!(),
        }
    }

    /// `(wt, eps, phi)`, each a vector over `I`. All values are integers on
    /// valid elements.
    pub fn stats(&self, x: &BElt) -> (Vec<i64>, Vec<i64>, Vec<i64>) {
        let n = self.n();
        let t = self.label();
        let mut eps2 = alloc::vec![0i64; n + 1];
        let mut phi2 = alloc::vec![0i64; n + 1];
        let b = |i: usize| self.b(x, i);
        let bb = |i: usize| self.bb(x, i);
        let pos = |v: i64| v.max(0);
        if t.family == Family::A1 {
            eps2[0] = b(1);
            phi2[0] = b(n + 1);
            for i in 1..=n {
                eps2[i] = b(i + 1);
                phi2[i] = b(i);
            }
        } else {
            let last_std = if t.family == Family::D1 { n - 2 } else { n - 1 };
            for i in 1..=last_std {
                eps2[i] = bb(i) + pos(b(i + 1) - bb(i + 1));
                phi2[i] = b(i) + pos(bb(i + 1) - b(i + 1));
            }
            let l: i64 = (1..=n).map(b).sum::<i64>() + (1..=n).filter(|&i| t.family != Family::D1 || i < n).map(bb).sum::<i64>();
            match t.family {
                Family::B1 | Family::D1 | Family::A2odd => {
                    eps2[0] = b(1) + pos(b(2) - bb(2));
                    phi2[0] = bb(1) + pos(bb(2) - b(2));
                }
                Family::C1 => {
                    eps2[0] = -l / 2 + pos(b(1) - bb(1));
                    phi2[0] = -l / 2 + pos(bb(1) - b(1));
                }
                _ => {
                    eps2[0] = -l + 2 * pos(b(1) - bb(1));
                    phi2[0] = -l + 2 * pos(bb(1) - b(1));
                }
            }
            match t.family {
                Family::B1 | Family::D2 => {
                    eps2[n] = 2 * bb(n);
                    phi2[n] = 2 * b(n);
                }
                Family::D1 => {
                    eps2[n - 1] = b(n) + bb(n - 1);
                    phi2[n - 1] = b(n - 1);
                    eps2[n] = bb(n - 1);
                    phi2[n] = b(n - 1) + b(n);
                }
                _ => {
                    eps2[n] = bb(n);
                    phi2[n] = b(n);
                }
            }
        }
        let halve = |v: Vec<i64>| -> Vec<i64> {
            v.into_iter()
                .map(|d| {
                    debug_assert!(d % 2 == 0, "non-integer statistic");
                    d / 2
                })
                .collect()
        };
        let eps = halve(eps2);
        let phi = halve(phi2);
        let wt = phi.iter().zip(&eps).map(|(p, e)| p - e).collect();
        (wt, eps, phi)
    }

    /// The weight from the family's closed-form `wt(b)`, independent of
    /// `phi - eps`.
    pub fn wt_direct(&self, x: &BElt) -> Vec<i64> {
        let n = self.n();
        let t = self.label();
        let b = |i: usize| self.b(x, i);
        let bb = |i: usize| self.bb(x, i);
        let mut w = alloc::vec![0i64; n + 1];
        if t.family == Family::A1 {
            w[0] = b(n + 1) - b(1);
            for (i, wi) in w.iter_mut().enumerate().skip(1) {
                *wi = b(i) - b(i + 1);
            }
        } else {
            let last_std = if t.family == Family::D1 { n - 2 } else { n - 1 };
            for (i, wi) in w.iter_mut().enumerate().take(last_std + 1).skip(1) {
                *wi = b(i) - bb(i) + bb(i + 1) - b(i + 1);
            }
            w[0] = match t.family {
                Family::B1 | Family::D1 | Family::A2odd => bb(1) - b(1) + bb(2) - b(2),
                Family::C1 => bb(1) - b(1),
                _ => 2 * (bb(1) - b(1)),
            };
            match t.family {
                Family::B1 | Family::D2 => w[n] = 2 * (b(n) - bb(n)),
                Family::D1 => {
                    w[n - 1] = b(n - 1) - bb(n - 1) - b(n);
                    w[n] = b(n - 1) - bb(n - 1) + b(n);
                }
                _ => w[n] = b(n) - bb(n),
            }
        }
        w.into_iter().map(|d| d / 2).collect()
    }

    pub fn validate(&self, x: &BElt) -> bool {
        let t = self.label();
        if x.label != t || x.coords.len() != coord_len(t) {
            return false;
        }
        let n = t.rank;
        let total: i64 = x.coords.iter().map(|c| c.0).sum();
        let halves_ok = |allowed: &[usize]| {
            x.coords.iter().enumerate().all(|(k, c)| c.is_int() || allowed.contains(&k))
        };
        match t.family {
            Family::A1 | Family::D1 | Family::A2odd => halves_ok(&[]) && total == 0,
            Family::A2even => halves_ok(&[]),
            Family::C1 => halves_ok(&[]) && (total / 2) % 2 == 0,
            Family::B1 | Family::D2 => {
                let pair = self.b(x, n) + self.bb(x, n);
                let ok = halves_ok(&[ib(n), ibb(t, n)]) && pair % 2 == 0;
                ok && (t.family == Family::D2 || total == 0)
            }
            Family::A2dag => false,
        }
    }

    /// A random valid element with coordinates roughly in `[-radius, radius]`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, radius: i64) -> BElt {
        let t = self.label();
        let n = t.rank;
        let len = coord_len(t);
        let mut c: Vec<i64> = (0..len).map(|_| 2 * rng.gen_range(-radius..=radius)).collect();
        if matches!(t.family, Family::B1 | Family::D2) && rng.gen_bool(0.5) {
            c[ib(n)] += 1;
            c[ibb(t, n)] -= 1;
        }
        let total: i64 = c.iter().sum();
        match t.family {
            Family::A1 | Family::D1 | Family::A2odd | Family::B1 => c[0] -= total,
            Family::C1 => {
                if (total / 2) % 2 != 0 {
                    c[0] += 2;
                }
            }
            _ => {}
        }
        BElt { label: t, coords: c.into_iter().map(Half).collect() }
    }
}

impl CrystalOps for BInfinity {
    type Elt = BElt;

    fn size(&self) -> usize {
        self.n() + 1
    }
    fn wt(&self, b: &BElt) -> Vec<i64> {
        self.stats(b).0
    }
    fn eps(&self, i: usize, b: &BElt) -> ExtInt {
        ExtInt::Fin(self.stats(b).1[i])
    }
    fn phi(&self, i: usize, b: &BElt) -> ExtInt {
        ExtInt::Fin(self.stats(b).2[i])
    }
    fn e(&self, i: usize, b: &BElt) -> Option<BElt> {
        self.apply(Op::E, i, b).ok()
    }
    fn f(&self, i: usize, b: &BElt) -> Option<BElt> {
        self.apply(Op::F, i, b).ok()
    }
    fn validate(&self, b: &BElt) -> bool {
        BInfinity::validate(self, b)
    }
}

/// Families that carry a `B_infinity`.
pub const FAMILIES: [Family; 7] =
    [Family::A1, Family::B1, Family::C1, Family::D1, Family::A2odd, Family::D2, Family::A2even];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal_core::{check_axioms, graph_dot, tensor_apply, tensor_stats, EdgeLabel, Tensor};
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn binf(f: Family, n: usize) -> BInfinity {
        BInfinity::new(TypeLabel::new(f, n).unwrap()).unwrap()
    }

    fn elt(c: &BInfinity, xs: &[&str]) -> BElt {
        BElt { label: c.label(), coords: xs.iter().map(|s| s.parse().unwrap()).collect() }
    }

    #[test]
    fn a1_examples() {
        let c = binf(Family::A1, 2);
        let z = BElt::zero(c.label());
        let b = c.apply(Op::E, 1, &z).unwrap();
        assert_eq!(b, BElt::from_ints(c.label(), &[1, -1, 0]));
        let (wt, eps, phi) = c.stats(&b);
        assert_eq!(eps, vec![1, -1, 0]);
        assert_eq!(phi, vec![0, 1, -1]);
        assert_eq!(wt, vec![-1, 2, -1]);
        assert!(c.validate(&b));
        assert!(!c.validate(&BElt::from_ints(c.label(), &[1, 0, 0])));
    }

    #[test]
    fn b1_half_steps() {
        let c = binf(Family::B1, 3);
        let x = elt(&c, &["0", "0", "1/2", "1/2", "-1", "0"]);
        assert!(c.validate(&x));
        let y = c.apply(Op::E, 3, &x).unwrap();
        assert_eq!(y, elt(&c, &["0", "0", "1", "0", "-1", "0"]));
        assert_eq!(c.stats(&x).2[3], 1);
        assert!(!c.validate(&elt(&c, &["0", "0", "1/2", "0", "-1/2", "0"])));
    }

    #[test]
    fn c1_zero_cases() {
        let c = binf(Family::C1, 2);
        let x = BElt::from_ints(c.label(), &[3, 0, 0, 1]);
        assert_eq!(c.apply(Op::E, 0, &x).unwrap(), BElt::from_ints(c.label(), &[1, 0, 0, 1]));
        let x = BElt::from_ints(c.label(), &[2, 0, 0, 1]);
        assert!(!c.validate(&x));
        let x = BElt::from_ints(c.label(), &[2, 1, 0, 1]);
        assert_eq!(c.apply(Op::E, 0, &x).unwrap(), BElt::from_ints(c.label(), &[1, 1, 0, 2]));
        let x = BElt::from_ints(c.label(), &[1, 0, 0, 1]);
        assert_eq!(c.apply(Op::E, 0, &x).unwrap(), BElt::from_ints(c.label(), &[1, 0, 0, 3]));
    }

    #[test]
    fn d2_zero_and_a2even_free() {
        let c = binf(Family::D2, 2);
        assert_eq!(c.stats(&BElt::zero(c.label())).1[0], 0);
        let e = binf(Family::A2even, 3);
        assert!(e.validate(&BElt::from_ints(e.label(), &[5, -2, 7, 0, 1, 9])));
    }

    #[test]
    fn index_out_of_range() {
        let c = binf(Family::A1, 2);
        assert_eq!(
            c.apply(Op::E, 3, &BElt::zero(c.label())),
            Err(BinfError::IndexOutOfRange { i: 3, n: 2 })
        );
    }

    #[test]
    fn half_round_trip() {
        for s in ["0", "-3", "5/2", "-1/2"] {
            assert_eq!(s.parse::<Half>().unwrap().to_string(), s);
        }
        assert_eq!("4/2".parse::<Half>().unwrap(), Half::int(2));
        assert!("1/3".parse::<Half>().is_err());
    }

    #[test]
    fn axioms_all_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in FAMILIES {
            for n in f.min_rank()..=5 {
                let c = binf(f, n);
                let sample: Vec<BElt> = (0..1000).map(|_| c.sample(&mut rng, 6)).collect();
                let r = check_axioms(&c, &c.cartan, &sample, 7);
                assert!(r.pass, "{f:?} {n}: {:?}", r.first_failure());
                for b in sample.iter().take(200) {
                    assert_eq!(c.wt(b), c.wt_direct(b), "{f:?} {n} {b}");
                }
            }
        }
    }

    #[test]
    fn tensor_zero_pair() {
        let c = binf(Family::A1, 2);
        let z = BElt::zero(c.label());
        for i in 0..3 {
            let (w, e, _) = tensor_stats(i, &(z.clone(), z.clone()), &c, &c);
            assert_eq!((w, e), (0, ExtInt::Fin(0)));
        }
    }

    #[test]
    fn tensor_axioms_and_associativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in FAMILIES {
            let c = binf(f, f.min_rank());
            let pairs: Vec<(BElt, BElt)> = (0..300).map(|_| (c.sample(&mut rng, 4), c.sample(&mut rng, 4))).collect();
            let t = Tensor { left: &c, right: &c };
            let r = check_axioms(&t, &c.cartan, &pairs, 11);
            assert!(r.pass, "{f:?}: {:?}", r.first_failure());
            for (b1, b2) in &pairs {
                let s1 = t.wt(&(b1.clone(), b2.clone()));
                let s2: Vec<i64> = c.wt(b1).iter().zip(c.wt(b2)).map(|(a, b)| a + b).collect();
                assert_eq!(s1, s2);
            }
            let left = Tensor { left: Tensor { left: &c, right: &c }, right: &c };
            let right = Tensor { left: &c, right: Tensor { left: &c, right: &c } };
            for _ in 0..200 {
                let (b1, b2, b3) = (c.sample(&mut rng, 4), c.sample(&mut rng, 4), c.sample(&mut rng, 4));
                let l = ((b1.clone(), b2.clone()), b3.clone());
                let r = (b1, (b2, b3));
                for i in 0..c.size() {
                    for op in [Op::E, Op::F] {
                        let a = tensor_apply(op, i, &l, &left.left, &left.right).map(|((x, y), z)| (x, y, z));
                        let b = tensor_apply(op, i, &r, &right.left, &right.right).map(|(x, (y, z))| (x, y, z));
                        assert_eq!(a, b);
                    }
                    assert_eq!(left.eps(i, &l), right.eps(i, &r));
                    assert_eq!(left.phi(i, &l), right.phi(i, &r));
                }
            }
        }
    }

    #[test]
    fn graph_radius() {
        let c = binf(Family::A1, 2);
        let z = BElt::zero(c.label());
        let g0 = graph_dot(&c, &[z.clone()], 0, EdgeLabel::Index, |b| b.to_string());
        assert_eq!(g0.matches("->").count(), 0);
        assert_eq!(g0.matches("[label=\"(").count(), 1);
        let g1 = graph_dot(&c, &[z.clone()], 1, EdgeLabel::Index, |b| b.to_string());
        assert_eq!(g1.matches("->").count(), 3);
        assert_eq!(g1.matches("[label=\"(").count(), 4);
        for s in ["(1, 0, -1)", "(-1, 1, 0)", "(0, -1, 1)"] {
            assert!(g1.contains(s), "{s} missing from\n{g1}");
        }
        assert_eq!(g1, graph_dot(&c, &[z], 1, EdgeLabel::Index, |b| b.to_string()));
    }
}
