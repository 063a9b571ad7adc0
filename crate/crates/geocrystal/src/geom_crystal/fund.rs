//! The level-zero fundamental representation `W(varpi_1)`: labelled basis,
//! weights and the `f_i` tables.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cartan::{Family, TypeLabel};

/// A basis label: `[i]` for `i >= 1`, `[0]`, `[i bar]`, or `phi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FundLabel {
    Plain(usize),
    Zero,
    Bar(usize),
    Phi,
}

impl fmt::Display for FundLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FundLabel::Plain(i) => write!(f, "[{i}]"),
            FundLabel::Zero => f.write_str("[0]"),
            FundLabel::Bar(i) => write!(f, "[{i}b]"),
            FundLabel::Phi => f.write_str("phi"),
        }
    }
}

use FundLabel::{Bar, Phi, Plain, Zero};

/// `W(varpi_1)` for one type: basis in listing order, weights, and the
/// nonzero entries of every `f_i`.
#[derive(Clone, Debug)]
pub struct FundModule {
    pub label: TypeLabel,
    pub basis: Vec<FundLabel>,
    pub wt: BTreeMap<FundLabel, Vec<i64>>,
    pub f: BTreeMap<(usize, FundLabel), (FundLabel, u64)>,
}

impl FundModule {
    /// `f_i b` as a list of `(label, coefficient)`; empty means zero.
    pub fn fund_f(&self, i: usize, b: FundLabel) -> Vec<(FundLabel, u64)> {
        self.f.get(&(i, b)).map(|&t| vec![t]).unwrap_or_default()
    }
}

/// Builds the module. `A2even` has none and panics.
pub fn fund_module(t: TypeLabel) -> FundModule {
    use Family::*;
    let n = t.rank;
    let fam = t.family;
    assert!(fam != A2even, "A2even carries no W(varpi_1) here");

    let mut basis: Vec<FundLabel> = Vec::new();
    match fam {
        A1 => basis.extend((1..=n + 1).map(Plain)),
        _ => {
            basis.extend((1..=n).map(Plain));
            if matches!(fam, B1 | D2 | A2dag) {
                basis.push(Zero);
            }
            basis.extend((1..=n).rev().map(Bar));
            if fam == D2 {
                basis.push(Phi);
            }
        }
    }

    // Lambda_k - Lambda_l style weights
    let lam = |pairs: &[(usize, i64)]| {
        let mut w = vec![0i64; n + 1];
        for &(k, c) in pairs {
            w[k] += c;
        }
        w
    };
    let mut wt = BTreeMap::new();
    for &b in &basis {
        let w = match (fam, b) {
            (A1, Plain(i)) => lam(&[(i % (n + 1), 1), (i - 1, -1)]),
            (_, Zero) | (_, Phi) => lam(&[]),
            (B1 | D1 | A2odd, Plain(2)) => lam(&[(0, -1), (1, -1), (2, 1)]),
            (B1 | D1 | A2odd, Bar(2)) => lam(&[(0, 1), (1, 1), (2, -1)]),
            (B1 | D2 | A2dag, Plain(i)) if i == n => lam(&[(n, 2), (n - 1, -1)]),
            (B1 | D2 | A2dag, Bar(i)) if i == n => lam(&[(n - 1, 1), (n, -2)]),
            (D1, Plain(i)) if i == n - 1 => lam(&[(n - 1, 1), (n, 1), (n - 2, -1)]),
            (D1, Bar(i)) if i == n - 1 => lam(&[(n - 2, 1), (n - 1, -1), (n, -1)]),
            (D2, Plain(1)) => lam(&[(1, 1), (0, -2)]),
            (D2, Bar(1)) => lam(&[(0, 2), (1, -1)]),
            (_, Plain(i)) => lam(&[(i, 1), (i - 1, -1)]),
            (_, Bar(i)) => lam(&[(i - 1, 1), (i, -1)]),
        };
        wt.insert(b, w);
    }

    let mut f = BTreeMap::new();
    let mut put = |i: usize, from: FundLabel, to: FundLabel, k: u64| {
        f.insert((i, from), (to, k));
    };
    if fam == A1 {
        for i in 1..=n {
            put(i, Plain(i), Plain(i + 1), 1);
        }
        put(0, Plain(n + 1), Plain(1), 1);
    } else {
        for i in 1..n {
            put(i, Plain(i), Plain(i + 1), 1);
            put(i, Bar(i + 1), Bar(i), 1);
        }
        match fam {
            B1 | D2 | A2dag => {
                put(n, Plain(n), Zero, 1);
                put(n, Zero, Bar(n), 2);
            }
            C1 | A2odd => put(n, Plain(n), Bar(n), 1),
            D1 => {
                put(n, Plain(n), Bar(n - 1), 1);
                put(n, Plain(n - 1), Bar(n), 1);
            }
            _ => unreachable!(),
        }
        match fam {
            B1 | D1 | A2odd => {
                put(0, Bar(2), Plain(1), 1);
                put(0, Bar(1), Plain(2), 1);
            }
            C1 | A2dag => put(0, Bar(1), Plain(1), 1),
            D2 => {
                put(0, Bar(1), Phi, 1);
                put(0, Phi, Plain(1), 2);
            }
            _ => unreachable!(),
        }
    }
    FundModule { label: t, basis, wt, f }
}

/// The diagram automorphism `sigma` acting on basis labels.
pub fn sigma_label(t: TypeLabel, b: FundLabel) -> FundLabel {
    use Family::*;
    let n = t.rank;
    match (t.family, b) {
        (A1, Plain(i)) => Plain(i % (n + 1) + 1),
        (B1 | D1 | A2odd, Plain(1)) => Bar(1),
        (B1 | D1 | A2odd, Bar(1)) => Plain(1),
        (C1 | D2, Plain(i)) => Bar(n + 1 - i),
        (C1 | D2, Bar(i)) => Plain(n + 1 - i),
        (D2, Zero) => Phi,
        (D2, Phi) => Zero,
        (_, other) => other,
    }
}

/// Short form used in reports and the CLI.
pub fn label_name(b: FundLabel) -> String {
    alloc::format!("{b}")
}
