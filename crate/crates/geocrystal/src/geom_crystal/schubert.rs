//! The geometric crystal on a Schubert cell `B_w^-`, in the coordinates
//! `Y_{i_1}(c_1) ... Y_{i_k}(c_k)` of a reduced word.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Chart, FundLabel};
use crate::cartan::CartanData;
use crate::posrat::Expr;

fn monomial(parts: &[(Expr, i64)]) -> Expr {
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (e, k) in parts {
        match k.signum() {
            1 => num.push(e.pow(*k as u32)),
            -1 => den.push(e.pow(k.unsigned_abs() as u32)),
            _ => {}
        }
    }
    Expr::quot(Expr::product(num), Expr::product(den))
}

/// `t_m = 1 / (c_1^{a_{i_1,i}} ... c_{m-1}^{a_{i_{m-1},i}} c_m)` for the
/// positions `m` carrying the letter `i`.
fn terms(cd: &CartanData, word: &[usize], i: usize, coords: &[Expr]) -> Vec<(usize, Expr)> {
    let mut out = Vec::new();
    for m in 0..word.len() {
        if word[m] != i {
            continue;
        }
        let mut parts: Vec<(Expr, i64)> = (0..m).map(|l| (coords[l].clone(), -cd.a(word[l], i))).collect();
        parts.push((coords[m].clone(), -1));
        out.push((m, monomial(&parts)));
    }
    out
}

/// `e_i^c` on the coordinates: the new `c_j` for every position.
pub fn schubert_e(cd: &CartanData, word: &[usize], i: usize, c: &Expr, coords: &[Expr]) -> Vec<Expr> {
    let ts = terms(cd, word, i, coords);
    let mut out = coords.to_vec();
    for (j, _) in &ts {
        let j = *j;
        let side = |lower_c: &dyn Fn(usize) -> bool| {
            Expr::sum(ts.iter().map(|(m, t)| if lower_c(*m) { c * t } else { t.clone() }))
        };
        let num = side(&|m| m <= j);
        let den = side(&|m| m < j);
        out[j] = Expr::product([coords[j].clone(), Expr::quot(num, den)]);
    }
    out
}

/// `(eps_i, gamma_i)`; `eps_i` is `None` when `i` does not occur.
pub fn schubert_stats(cd: &CartanData, word: &[usize], i: usize, coords: &[Expr]) -> (Option<Expr>, Expr) {
    let ts = terms(cd, word, i, coords);
    let eps = if ts.is_empty() { None } else { Some(Expr::sum(ts.into_iter().map(|(_, t)| t))) };
    let parts: Vec<(Expr, i64)> = word.iter().zip(coords).map(|(&l, x)| (x.clone(), cd.a(l, i))).collect();
    (eps, monomial(&parts))
}

/// A chart built purely from the generic action: one named coordinate per
/// letter, every index occurring in the word.
pub fn schubert_chart(cd: &CartanData, word: &[usize], word_vars: &[String], chart: u8) -> Chart {
    let coords: Vec<Expr> = word_vars.iter().map(|v| Expr::var(v)).collect();
    let c = Expr::var("c");
    let mut e = BTreeMap::new();
    let mut eps = BTreeMap::new();
    let mut gamma = BTreeMap::new();
    for i in 0..=cd.n() {
        let (ep, g) = schubert_stats(cd, word, i, &coords);
        let Some(ep) = ep else { continue };
        let new = schubert_e(cd, word, i, &c, &coords);
        e.insert(i, word_vars.iter().cloned().zip(new).collect());
        eps.insert(i, ep);
        gamma.insert(i, g);
    }
    let mut vars = word_vars.to_vec();
    vars.sort();
    vars.dedup();
    Chart {
        label: cd.label,
        chart,
        vars,
        word: word.to_vec(),
        word_vars: word_vars.to_vec(),
        start: FundLabel::Plain(1),
        e,
        eps,
        gamma,
        v_closed: BTreeMap::new(),
    }
}
