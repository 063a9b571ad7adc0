//! Negative controls: small edits to the hand-written tables must make some
//! check fail.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ud::{Branch, LatticePoint, UdTable};
use super::{
    axioms_report, chart_report, mu_report, schubert_report, sigma_report, ud_report, ud_table, verma_report,
    HarnessError, Settings,
};
use crate::b_infinity::BInfinity;
use crate::cartan::{cartan_data, Family, TypeLabel};
use crate::geom_crystal::{geometry, Geometry};
use crate::posrat::{equal, Expr, Node};
use crate::report::{Mode, Report};
use crate::tropic::{TNode, TropExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MutKind {
    ExponentBump,
    VarSwap,
    ConstChange,
}

const KINDS: [MutKind; 3] = [MutKind::ExponentBump, MutKind::VarSwap, MutKind::ConstChange];

/// Outcome of a mutation campaign.
#[derive(Clone, Debug)]
pub struct MutationOutcome {
    pub report: Report,
    pub tried: usize,
    pub neutral: usize,
    pub killed: usize,
    /// One description of a killed mutant and the failure it caused.
    pub example: Option<(String, String)>,
}

fn applies_expr(e: &Expr, kind: MutKind) -> bool {
    match (e.node(), kind) {
        (Node::Var(v), _) => &**v != "c",
        (Node::Pow(..), MutKind::ExponentBump) => true,
        (Node::Const(_), MutKind::ConstChange) => true,
        _ => false,
    }
}

fn expr_children(e: &Expr) -> Vec<Expr> {
    match e.node() {
        Node::Var(_) | Node::Const(_) => Vec::new(),
        Node::Sum(xs) | Node::Prod(xs) => xs.clone(),
        Node::Quot(a, b) => alloc::vec![a.clone(), b.clone()],
        Node::Pow(b, _) => alloc::vec![b.clone()],
    }
}

fn count_expr(e: &Expr, kind: MutKind) -> usize {
    let here = usize::from(applies_expr(e, kind));
    here + expr_children(e).iter().map(|c| count_expr(c, kind)).sum::<usize>()
}

/// Rebuilds `e` with the `target`-th applicable node (preorder) changed.
fn rebuild_expr(e: &Expr, kind: MutKind, target: &mut isize, swap_to: &str) -> Expr {
    if applies_expr(e, kind) {
        if *target == 0 {
            *target = -1;
            return match (e.node(), kind) {
                (Node::Var(_), MutKind::ExponentBump) => e.pow(2),
                (Node::Var(_), MutKind::VarSwap) => Expr::var(swap_to),
                (Node::Var(_), MutKind::ConstChange) => Expr::product([Expr::int(2), e.clone()]),
                (Node::Pow(b, k), _) => b.pow(k + 1),
                (Node::Const(q), _) => Expr::constant(q + BigRational::one()),
                _ => unreachable!(),
            };
        }
        *target -= 1;
    }
    if *target < 0 {
        return e.clone();
    }
    match e.node() {
        Node::Var(_) | Node::Const(_) => e.clone(),
        Node::Sum(xs) => Expr::sum(xs.iter().map(|x| rebuild_expr(x, kind, target, swap_to)).collect::<Vec<_>>()),
        Node::Prod(xs) => Expr::product(xs.iter().map(|x| rebuild_expr(x, kind, target, swap_to)).collect::<Vec<_>>()),
        Node::Quot(a, b) => {
            let a = rebuild_expr(a, kind, target, swap_to);
            let b = rebuild_expr(b, kind, target, swap_to);
            Expr::quot(a, b)
        }
        Node::Pow(b, k) => rebuild_expr(b, kind, target, swap_to).pow(*k),
    }
}

/// A random single edit of `e`, or `None` if no node admits `kind`.
pub fn mutate_expr(e: &Expr, kind: MutKind, pool: &[String], rng: &mut ChaCha8Rng) -> Option<Expr> {
    let n = count_expr(e, kind);
    if n == 0 {
        return None;
    }
    let mut target = rng.gen_range(0..n) as isize;
    let swap_to = pool.choose(rng).cloned().unwrap_or_else(|| "x1".into());
    Some(rebuild_expr(e, kind, &mut target, &swap_to))
}

/// Where a geometry mutant lives.
#[derive(Clone, Debug)]
enum GeomSlot {
    E(u8, usize, String),
    Eps(u8, usize),
    Gamma(u8, usize),
    V(u8, crate::geom_crystal::FundLabel),
    SigmaMap(String),
    SigmaA,
    InvMap(String),
}

fn geom_slots(g: &Geometry) -> Vec<GeomSlot> {
    let mut out = Vec::new();
    for ch in core::iter::once(&g.main).chain(g.second.as_ref()) {
        for (i, m) in &ch.e {
            for (k, f) in m {
                // identity entries are not written anywhere
                if !matches!(f.node(), Node::Var(v) if **v == **k) {
                    out.push(GeomSlot::E(ch.chart, *i, k.clone()));
                }
            }
        }
        out.extend(ch.eps.keys().map(|i| GeomSlot::Eps(ch.chart, *i)));
        out.extend(ch.gamma.keys().map(|i| GeomSlot::Gamma(ch.chart, *i)));
        out.extend(ch.v_closed.keys().map(|b| GeomSlot::V(ch.chart, *b)));
    }
    if let Some(sb) = &g.sigma_bar {
        out.extend(sb.map.keys().map(|k| GeomSlot::SigmaMap(k.clone())));
        out.push(GeomSlot::SigmaA);
    }
    if separate_inverse(g) {
        if let Some(inv) = &g.sigma_inv {
            out.extend(inv.map.keys().map(|k| GeomSlot::InvMap(k.clone())));
        }
    }
    out
}

/// Whether `sigma_bar^{-1}` is written separately from `sigma_bar`.
fn separate_inverse(g: &Geometry) -> bool {
    matches!(g.label.family, Family::A1 | Family::A2dag)
}

fn slot_expr<'a>(g: &'a mut Geometry, slot: &GeomSlot) -> &'a mut Expr {
    let chart = |g: &'a mut Geometry, k: u8| if k == 1 { &mut g.main } else { g.second.as_mut().unwrap() };
    match slot {
        GeomSlot::E(k, i, v) => chart(g, *k).e.get_mut(i).unwrap().get_mut(v).unwrap(),
        GeomSlot::Eps(k, i) => chart(g, *k).eps.get_mut(i).unwrap(),
        GeomSlot::Gamma(k, i) => chart(g, *k).gamma.get_mut(i).unwrap(),
        GeomSlot::V(k, b) => chart(g, *k).v_closed.get_mut(b).unwrap(),
        GeomSlot::SigmaMap(v) => g.sigma_bar.as_mut().unwrap().map.get_mut(v).unwrap(),
        GeomSlot::SigmaA => g.sigma_bar.as_mut().unwrap().a.as_mut().unwrap(),
        GeomSlot::InvMap(v) => g.sigma_inv.as_mut().unwrap().map.get_mut(v).unwrap(),
    }
}

fn slot_pool(g: &Geometry, slot: &GeomSlot) -> Vec<String> {
    let ch = match slot {
        GeomSlot::E(k, ..) | GeomSlot::Eps(k, _) | GeomSlot::Gamma(k, _) | GeomSlot::V(k, _) if *k == 2 => {
            g.second.as_ref().unwrap()
        }
        GeomSlot::InvMap(_) => g.sigma_target(),
        _ => &g.main,
    };
    ch.vars.clone()
}

/// Runs the geometric checks in sampled mode; the first failure kills.
fn first_geometric_failure(g: &Geometry, seed: u64) -> Option<(String, String)> {
    let s = Settings { mode: Mode::Sampled, trials: 3, samples: 200, lattice_box: 8, seed };
    let runs: [fn(&Geometry, &Settings) -> Report; 5] =
        [verma_report, axioms_report, sigma_report, chart_report, schubert_report];
    for run in runs {
        let r = run(g, &s);
        if let Some(f) = r.first_failure() {
            return Some((r.check.clone(), format!("{} [{} vs {}]", f.element, f.lhs, f.rhs)));
        }
    }
    if g.label.family.has_chart() {
        let r = ud_report(g, &ud_table(g.label), &s);
        if let Some(f) = r.first_failure() {
            return Some((r.check.clone(), format!("{} [{} vs {}]", f.element, f.lhs, f.rhs)));
        }
    }
    None
}

/// Mutates the explicit chart data `count` times.
pub fn geometry_campaign(t: TypeLabel, count: usize, seed: u64) -> Result<MutationOutcome, HarnessError> {
    if !t.family.has_chart() {
        return Err(HarnessError::NoChart(t));
    }
    let base = geometry(&cartan_data(t)?);
    let slots = geom_slots(&base);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = MutationOutcome {
        report: Report::new("mutation-geometry", Some(t), Mode::Sampled, seed),
        tried: 0,
        neutral: 0,
        killed: 0,
        example: None,
    };
    while out.tried < count {
        let slot = slots.choose(&mut rng).unwrap().clone();
        let kind = *KINDS.choose(&mut rng).unwrap();
        let mut g = base.clone();
        let pool: Vec<String> = slot_pool(&base, &slot);
        let original = slot_expr(&mut g, &slot).clone();
        let pool: Vec<String> = pool.into_iter().filter(|v| !original.vars().contains(v) || kind != MutKind::VarSwap).collect();
        let Some(m) = mutate_expr(&original, kind, &pool, &mut rng) else { continue };
        out.tried += 1;
        let what = format!("{slot:?} {kind:?}: {original} -> {m}");
        if equal(&original, &m).unwrap_or(false) {
            out.neutral += 1;
            continue;
        }
        *slot_expr(&mut g, &slot) = m.clone();
        if matches!(slot, GeomSlot::SigmaMap(_)) && !separate_inverse(&g) {
            let GeomSlot::SigmaMap(v) = &slot else { unreachable!() };
            *g.sigma_inv.as_mut().unwrap().map.get_mut(v).unwrap() = m;
        }
        out.report.sample_size += 1;
        match first_geometric_failure(&g, seed ^ out.tried as u64) {
            Some((check, witness)) => {
                out.killed += 1;
                if out.example.is_none() {
                    out.example = Some((what, format!("{check}: {witness}")));
                }
            }
            None => out.report.fail(what, None, "survived".into(), String::new()),
        }
    }
    Ok(out)
}

fn applies_trop(t: &TropExpr, kind: MutKind) -> bool {
    matches!(
        (t.node(), kind),
        (TNode::Var(_), MutKind::VarSwap)
            | (TNode::Var(_), MutKind::ExponentBump)
            | (TNode::Scale(..), MutKind::ExponentBump)
            | (TNode::Const(_), MutKind::ConstChange)
            | (TNode::Zero, MutKind::ConstChange)
    )
}

fn count_trop(t: &TropExpr, kind: MutKind) -> usize {
    usize::from(applies_trop(t, kind)) + t.children().iter().map(|c| count_trop(c, kind)).sum::<usize>()
}

fn rebuild_trop(t: &TropExpr, kind: MutKind, target: &mut isize, swap_to: &str) -> TropExpr {
    if applies_trop(t, kind) {
        if *target == 0 {
            *target = -1;
            return match (t.node(), kind) {
                (TNode::Var(_), MutKind::VarSwap) => TropExpr::var(swap_to),
                (TNode::Var(_), _) => t.scale(2),
                (TNode::Scale(k, x), _) => x.scale(k + 1),
                (TNode::Const(k), _) => TropExpr::constant(k + 1),
                (TNode::Zero, _) => TropExpr::constant(1),
                _ => unreachable!(),
            };
        }
        *target -= 1;
    }
    if *target < 0 {
        return t.clone();
    }
    match t.node() {
        TNode::Var(_) | TNode::Zero | TNode::Const(_) => t.clone(),
        TNode::Add(xs) => TropExpr::add(xs.iter().map(|x| rebuild_trop(x, kind, target, swap_to)).collect::<Vec<_>>()),
        TNode::Max(xs) => TropExpr::max(xs.iter().map(|x| rebuild_trop(x, kind, target, swap_to)).collect::<Vec<_>>()),
        TNode::Neg(x) => rebuild_trop(x, kind, target, swap_to).neg(),
        TNode::Scale(k, x) => rebuild_trop(x, kind, target, swap_to).scale(*k),
    }
}

pub fn mutate_trop(t: &TropExpr, kind: MutKind, pool: &[String], rng: &mut ChaCha8Rng) -> Option<TropExpr> {
    let n = count_trop(t, kind);
    if n == 0 {
        return None;
    }
    let mut target = rng.gen_range(0..n) as isize;
    let swap_to = pool.choose(rng).cloned().unwrap_or_else(|| "x1".into());
    Some(rebuild_trop(t, kind, &mut target, &swap_to))
}

#[derive(Clone, Debug)]
enum UdSlot {
    Cond(usize, usize, bool),
    Delta(usize, usize),
    Wt(usize),
    Eps(usize),
    Mu(usize),
    MuInv(usize),
}

fn ud_slots(u: &UdTable) -> Vec<UdSlot> {
    let mut out = Vec::new();
    for (i, bs) in &u.e {
        for k in 0..bs.len() {
            out.push(UdSlot::Cond(*i, k, true));
            out.push(UdSlot::Cond(*i, k, false));
            out.push(UdSlot::Delta(*i, k));
        }
    }
    out.extend(u.wt.keys().map(|i| UdSlot::Wt(*i)));
    out.extend(u.eps.keys().map(|i| UdSlot::Eps(*i)));
    out.extend((0..u.mu.len()).map(UdSlot::Mu));
    out.extend((0..u.mu_inv.len()).map(UdSlot::MuInv));
    out
}

fn mutate_ud(u: &UdTable, slot: &UdSlot, kind: MutKind, rng: &mut ChaCha8Rng) -> Option<UdTable> {
    let mut m = u.clone();
    let xs = u.vars.clone();
    let bs = super::ud::binf_names(u.target);
    match slot {
        UdSlot::Cond(i, k, lhs) => {
            let b: &mut Branch = &mut m.e.get_mut(i).unwrap()[*k];
            let t = if *lhs { &mut b.lhs } else { &mut b.rhs };
            *t = mutate_trop(t, kind, &xs, rng)?;
        }
        UdSlot::Delta(i, k) => {
            let b: &mut Branch = &mut m.e.get_mut(i).unwrap()[*k];
            match kind {
                MutKind::ConstChange => {
                    let keys: Vec<String> = b.delta.keys().cloned().collect();
                    let key = keys.choose(rng)?;
                    *b.delta.get_mut(key).unwrap() += 1;
                }
                MutKind::VarSwap => {
                    let keys: Vec<String> = b.delta.keys().cloned().collect();
                    let from = keys.choose(rng)?.clone();
                    let to = xs.choose(rng)?.clone();
                    let d = b.delta.remove(&from).unwrap();
                    *b.delta.entry(to).or_insert(0) += d;
                }
                MutKind::ExponentBump => {
                    let keys: Vec<String> = b.delta.keys().cloned().collect();
                    let key = keys.choose(rng)?;
                    *b.delta.get_mut(key).unwrap() *= 2;
                }
            }
        }
        UdSlot::Wt(i) => {
            let t = m.wt.get_mut(i).unwrap();
            *t = mutate_trop(t, kind, &xs, rng)?;
        }
        UdSlot::Eps(i) => {
            let t = m.eps.get_mut(i).unwrap();
            *t = mutate_trop(t, kind, &xs, rng)?;
        }
        UdSlot::Mu(k) => {
            let t = &mut m.mu[*k].1;
            *t = mutate_trop(t, kind, &xs, rng)?;
        }
        UdSlot::MuInv(k) => {
            let t = &mut m.mu_inv[*k].expr;
            *t = mutate_trop(t, kind, &bs, rng)?;
        }
    }
    Some(m)
}

/// Whether two tables behave identically on a fresh sample.
fn ud_neutral(a: &UdTable, b: &UdTable, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let binf = BInfinity::new(a.target).expect("valid dual");
    for _ in 0..2000 {
        let x: LatticePoint = a.vars.iter().map(|v| (v.clone(), rng.gen_range(-10..=10))).collect();
        for i in a.e.keys() {
            if a.e_tilde(*i, &x) != b.e_tilde(*i, &x)
                || a.f_tilde(*i, &x) != b.f_tilde(*i, &x)
                || a.wt_at(*i, &x) != b.wt_at(*i, &x)
                || a.eps_at(*i, &x) != b.eps_at(*i, &x)
            {
                return false;
            }
        }
        if a.mu_at(&x) != b.mu_at(&x) {
            return false;
        }
        let y = binf.sample(&mut rng, 10);
        if a.mu_inv_at(&y) != b.mu_inv_at(&y) {
            return false;
        }
    }
    true
}

/// Mutates the piecewise-linear tables and `mu` `count` times.
pub fn ud_campaign(t: TypeLabel, count: usize, seed: u64) -> Result<MutationOutcome, HarnessError> {
    if !t.family.has_chart() {
        return Err(HarnessError::NoChart(t));
    }
    let g = geometry(&cartan_data(t)?);
    let base = ud_table(t);
    let slots = ud_slots(&base);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = MutationOutcome {
        report: Report::new("mutation-ud", Some(t), Mode::Sampled, seed),
        tried: 0,
        neutral: 0,
        killed: 0,
        example: None,
    };
    let s = Settings { mode: Mode::Sampled, trials: 3, samples: 500, lattice_box: 8, seed };
    while out.tried < count {
        let slot = slots.choose(&mut rng).unwrap().clone();
        let kind = *KINDS.choose(&mut rng).unwrap();
        let Some(m) = mutate_ud(&base, &slot, kind, &mut rng) else { continue };
        out.tried += 1;
        let what = format!("{slot:?} {kind:?}");
        if ud_neutral(&base, &m, seed.wrapping_add(7919 * out.tried as u64)) {
            out.neutral += 1;
            continue;
        }
        out.report.sample_size += 1;
        let s = Settings { seed: seed ^ out.tried as u64, ..s };
        let mut hit = None;
        for r in [ud_report(&g, &m, &s), mu_report(&m, &s)] {
            if let Some(f) = r.first_failure() {
                hit = Some(format!("{}: {} [{} vs {}]", r.check, f.element, f.lhs, f.rhs));
                break;
            }
        }
        match hit {
            Some(w) => {
                out.killed += 1;
                if out.example.is_none() {
                    out.example = Some((what, w));
                }
            }
            None => out.report.fail(what, None, "survived".into(), String::new()),
        }
    }
    Ok(out)
}

/// A fixed control: one exponent in `e_0` raised by one must break the
/// Verma relations, with a witness point.
pub fn e0_exponent_control(t: TypeLabel, mode: Mode, seed: u64) -> Result<Report, HarnessError> {
    let mut g = geometry(&cartan_data(t)?);
    let e0 = g.main.e.get_mut(&0).unwrap();
    let key = e0
        .iter()
        .find(|(k, f)| count_expr(f, MutKind::ExponentBump) > 0 && !matches!(f.node(), Node::Var(v) if **v == ***k))
        .map(|(k, _)| k.clone())
        .ok_or(HarnessError::NoChart(t))?;
    let f = e0[&key].clone();
    let mut target = 0isize;
    e0.insert(key, rebuild_expr(&f, MutKind::ExponentBump, &mut target, ""));
    Ok(verma_report(&g, &Settings { mode, trials: 20, seed, ..Settings::default() }))
}
