//! Verification campaigns. Each check returns a [`Report`]; every report is
//! a pure function of its arguments and seed.

pub mod mutate;
pub mod ud;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::b_infinity::BInfinity;
use crate::cartan::{pair_shape, Family, RankError, TypeLabel};
use crate::crystal_core::{check_axioms, Op};
use crate::geom_crystal::{
    geometry, identity, schubert_e, schubert_stats, then, with_c, Chart, FundLabel, Geometry, Subst,
};
use crate::posrat::{Canonicalizer, EqualityConfig, Expr, PosRatError};
use crate::report::{Mode, Report};
use crate::tropic::{tropicalize, TropExpr};

pub use ud::{ud_table, LatticePoint, UdTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Rank(#[from] RankError),
    #[error("{0} has no chart")]
    NoChart(TypeLabel),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}

/// Names accepted by [`run_check`].
pub const CHECKS: [&str; 8] = ["verma", "axioms", "sigma", "chart", "schubert", "ud", "mu", "binf"];

/// Settings shared by the checks.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub mode: Mode,
    /// Points per identity in sampled mode.
    pub trials: usize,
    /// Half-width of the integer box for lattice checks.
    pub lattice_box: i64,
    /// Lattice points (or crystal elements) per lattice check.
    pub samples: usize,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { mode: Mode::Symbolic, trials: 100, lattice_box: 8, samples: 2000, seed: 1 }
    }
}

const SAMPLE_BOUND: i64 = 1_000_000;
const RESAMPLE_CAP: usize = 1000;

/// Compares rational expressions and records failures with witnesses.
pub struct Checker {
    mode: Mode,
    trials: usize,
    rng: ChaCha8Rng,
    canon: Canonicalizer,
}

fn show_point(p: &BTreeMap<String, BigRational>) -> String {
    let parts: Vec<String> = p.iter().map(|(k, v)| format!("{k}={v}")).collect();
    parts.join(", ")
}

impl Checker {
    pub fn new(mode: Mode, trials: usize, seed: u64) -> Checker {
        let cfg = EqualityConfig { seed, ..EqualityConfig::default() };
        Checker { mode, trials, rng: ChaCha8Rng::seed_from_u64(seed), canon: Canonicalizer::new(cfg) }
    }

    fn random_point(&mut self, vars: &BTreeSet<String>) -> BTreeMap<String, BigRational> {
        vars.iter()
            .map(|v| {
                let mut k = 0;
                while k == 0 {
                    k = self.rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
                }
                (v.clone(), BigRational::from_integer(BigInt::from(k)))
            })
            .collect()
    }

    /// Evaluates both sides at fresh random points until one is defined
    /// for both; returns the point and the two values.
    fn sample(&mut self, a: &Expr, b: &Expr) -> Option<(String, BigRational, BigRational)> {
        let mut vars = a.vars();
        vars.extend(b.vars());
        for _ in 0..RESAMPLE_CAP {
            let p = self.random_point(&vars);
            if let (Ok(x), Ok(y)) = (a.eval(&p), b.eval(&p)) {
                return Some((show_point(&p), x, y));
            }
        }
        None
    }

    /// Records whether `lhs = rhs` as rational functions.
    pub fn same(&mut self, rep: &mut Report, what: &dyn Fn() -> String, index: Option<usize>, lhs: &Expr, rhs: &Expr) {
        let symbolic = match self.mode {
            Mode::Symbolic => match self.canon.equal(lhs, rhs) {
                Ok(v) => Some(v),
                Err(PosRatError::ExpansionTooLarge { .. }) => None,
                Err(e) => {
                    rep.fail(what(), index, format!("{e}"), String::new());
                    return;
                }
            },
            Mode::Sampled => None,
        };
        match symbolic {
            Some(true) => rep.sample_size += 1,
            Some(false) => {
                rep.sample_size += 1;
                for _ in 0..RESAMPLE_CAP {
                    match self.sample(lhs, rhs) {
                        Some((p, x, y)) if x != y => {
                            rep.fail(format!("{} at {p}", what()), index, x.to_string(), y.to_string());
                            return;
                        }
                        Some(_) => continue,
                        None => break,
                    }
                }
                rep.fail(format!("{} (no witness found)", what()), index, format!("{lhs}"), format!("{rhs}"));
            }
            None => {
                for _ in 0..self.trials {
                    rep.sample_size += 1;
                    match self.sample(lhs, rhs) {
                        Some((p, x, y)) => {
                            if x != y {
                                rep.fail(format!("{} at {p}", what()), index, x.to_string(), y.to_string());
                                return;
                            }
                        }
                        None => {
                            rep.fail(format!("{} (no defined point)", what()), index, String::new(), String::new());
                            return;
                        }
                    }
                }
            }
        }
    }

    /// Compares two coordinate maps entry by entry.
    pub fn same_map(&mut self, rep: &mut Report, what: &str, index: Option<usize>, lhs: &Subst, rhs: &Subst) {
        let keys: BTreeSet<&String> = lhs.keys().chain(rhs.keys()).collect();
        for k in keys {
            let (Some(a), Some(b)) = (lhs.get(k), rhs.get(k)) else {
                rep.fail(format!("{what}: coordinate {k} missing on one side"), index, String::new(), String::new());
                continue;
            };
            self.same(rep, &|| format!("{what}, coordinate {k}"), index, a, b);
        }
    }
}

fn charts(g: &Geometry) -> Vec<&Chart> {
    core::iter::once(&g.main).chain(g.second.as_ref()).collect()
}

/// The operator word `e_{i_1}^{c_1} ... e_{i_k}^{c_k}` as a coordinate map;
/// the rightmost operator acts first.
pub fn word_map(ch: &Chart, ops: &[(usize, Expr)]) -> Subst {
    let mut acc = identity(&ch.vars);
    for (i, c) in ops.iter().rev() {
        acc = then(&acc, &with_c(&ch.e[i], c));
    }
    acc
}

fn cv(name: &str) -> Expr {
    Expr::var(name)
}

/// The two sides of the Verma relation for the pair `(i, j)`, or `None`
/// when the Cartan entries have no relation in the list.
pub fn verma_sides(ch: &Chart, g: &Geometry, i: usize, j: usize) -> Option<(Subst, Subst)> {
    let (c1, c2) = (cv("c1"), cv("c2"));
    let c12 = &c1 * &c2;
    let c112 = Expr::product([c1.pow(2), c2.clone()]);
    let (i, j, shape) = match pair_shape(&g.cartan, i, j) {
        (-1, -2) => (j, i, (-2, -1)),
        s => (i, j, s),
    };
    let (l, r) = match shape {
        (0, 0) => (alloc::vec![(i, c1.clone()), (j, c2.clone())], alloc::vec![(j, c2), (i, c1)]),
        (-1, -1) => (
            alloc::vec![(i, c1.clone()), (j, c12.clone()), (i, c2.clone())],
            alloc::vec![(j, c2), (i, c12), (j, c1)],
        ),
        (-2, -1) => (
            alloc::vec![(i, c1.clone()), (j, c112.clone()), (i, c12.clone()), (j, c2.clone())],
            alloc::vec![(j, c2), (i, c12), (j, c112), (i, c1)],
        ),
        _ => return None,
    };
    Some((word_map(ch, &l), word_map(ch, &r)))
}

pub fn verma_report(g: &Geometry, s: &Settings) -> Report {
    let mut rep = Report::new("verma", Some(g.label), s.mode, s.seed);
    let mut ck = Checker::new(s.mode, s.trials, s.seed);
    for ch in charts(g) {
        let idx = ch.indices();
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                let what = format!("chart {} pair ({i},{j})", ch.chart);
                match verma_sides(ch, g, i, j) {
                    Some((l, r)) => ck.same_map(&mut rep, &what, Some(i), &l, &r),
                    None => rep.fail(format!("{what}: no relation for {:?}", pair_shape(&g.cartan, i, j)), Some(i), String::new(), String::new()),
                }
            }
        }
    }
    rep
}

pub fn verify_verma(t: TypeLabel, s: &Settings) -> Result<Report, HarnessError> {
    Ok(verma_report(&geom(t)?, s))
}

fn geom(t: TypeLabel) -> Result<Geometry, HarnessError> {
    Ok(geometry(&crate::cartan::cartan_data(t)?))
}

fn charted(t: TypeLabel) -> Result<Geometry, HarnessError> {
    if !t.family.has_chart() {
        return Err(HarnessError::NoChart(t));
    }
    geom(t)
}

pub fn axioms_report(g: &Geometry, s: &Settings) -> Report {
    let mut rep = Report::new("axioms", Some(g.label), s.mode, s.seed);
    let mut ck = Checker::new(s.mode, s.trials, s.seed);
    let c = cv("c");
    for ch in charts(g) {
        for i in ch.indices() {
            let e = &ch.e[&i];
            for j in ch.indices() {
                let lhs = ch.gamma[&j].compose(e);
                let rhs = &c.powi(g.cartan.a(i, j)) * &ch.gamma[&j];
                ck.same(&mut rep, &|| format!("chart {} gamma_{j} after e_{i}", ch.chart), Some(i), &lhs, &rhs);
            }
            let lhs = ch.eps[&i].compose(e);
            let rhs = Expr::quot(ch.eps[&i].clone(), c.clone());
            ck.same(&mut rep, &|| format!("chart {} eps_{i} after e_{i}", ch.chart), Some(i), &lhs, &rhs);
        }
    }
    sigma_eps(g, &mut ck, &mut rep);
    rep
}

pub fn verify_geom_axioms(t: TypeLabel, s: &Settings) -> Result<Report, HarnessError> {
    Ok(axioms_report(&geom(t)?, s))
}

/// `eps_{sigma(i)}(sigma_bar x) = eps_i(x)` for `i, sigma(i) != 0`.
fn sigma_eps(g: &Geometry, ck: &mut Checker, rep: &mut Report) {
    let Some(sb) = &g.sigma_bar else { return };
    let target = g.sigma_target();
    for i in g.main.indices() {
        let j = g.sigma_of(i);
        if i == 0 || j == 0 {
            continue;
        }
        let Some(ej) = target.eps.get(&j) else { continue };
        ck.same(rep, &|| format!("eps_{j} after sigma_bar vs eps_{i}"), Some(i), &ej.compose(&sb.map), &g.main.eps[&i]);
    }
}

pub fn sigma_report(g: &Geometry, s: &Settings) -> Report {
    let mut rep = Report::new("sigma", Some(g.label), s.mode, s.seed);
    let mut ck = Checker::new(s.mode, s.trials, s.seed);
    let (Some(sb), Some(inv)) = (&g.sigma_bar, &g.sigma_inv) else {
        rep.fail("no sigma_bar".into(), None, String::new(), String::new());
        return rep;
    };
    let target = g.sigma_target();
    ck.same_map(&mut rep, "sigma_bar^-1 after sigma_bar", None, &then(&sb.map, &inv.map), &identity(&g.main.vars));
    ck.same_map(&mut rep, "sigma_bar after sigma_bar^-1", None, &then(&inv.map, &sb.map), &identity(&target.vars));
    theorem_vectors(g, &mut ck, &mut rep);
    sigma_eps(g, &mut ck, &mut rep);

    // e_0, eps_0, gamma_0 against their definitions through sigma_bar
    if let Some(conj) = g.e0_conjugated() {
        ck.same_map(&mut rep, "e_0 closed form vs conjugation", Some(0), &g.main.e[&0], &conj);
    }
    let j = g.sigma_of(0);
    for (name, closed, other) in [("eps_0", &g.main.eps, &target.eps), ("gamma_0", &g.main.gamma, &target.gamma)] {
        if let Some(o) = other.get(&j) {
            ck.same(&mut rep, &|| format!("{name} vs its value through sigma_bar"), Some(0), &closed[&0], &o.compose(&sb.map));
        }
    }

    // the conditions that make the conjugated e_0 well defined
    for i in g.main.indices() {
        let j = g.sigma_of(i);
        if i == 0 || j == 0 || !target.e.contains_key(&j) {
            continue;
        }
        let conj = then(&then(&inv.map, &g.main.e[&i]), &sb.map);
        ck.same_map(&mut rep, &format!("e_{j} vs sigma_bar e_{i} sigma_bar^-1"), Some(i), &target.e[&j], &conj);
        ck.same(&mut rep, &|| format!("gamma_{i} vs gamma_{j} after sigma_bar"), Some(i), &g.main.gamma[&i], &target.gamma[&j].compose(&sb.map));
    }
    rep
}

pub fn verify_sigma(t: TypeLabel, s: &Settings) -> Result<Report, HarnessError> {
    Ok(sigma_report(&charted(t)?, s))
}

/// `v(sigma_bar x) = a(x) sigma(v(x))`, labelwise.
fn theorem_vectors(g: &Geometry, ck: &mut Checker, rep: &mut Report) {
    let Some(sb) = &g.sigma_bar else { return };
    let a = sb.a.clone().unwrap_or_else(Expr::one);
    let target = g.sigma_target();
    let moved: BTreeMap<FundLabel, Expr> = target.v_closed.iter().map(|(b, e)| (*b, e.compose(&sb.map))).collect();
    for (b, coeff) in &g.main.v_closed {
        let sbl = if g.second.is_some() { *b } else { crate::geom_crystal::sigma_label(g.label, *b) };
        match moved.get(&sbl) {
            Some(m) => ck.same(rep, &|| format!("v(y) at {sbl} vs a(x) v(x) at {b}"), None, m, &(&a * coeff)),
            None => rep.fail(format!("v(y) has no {sbl}"), None, String::new(), String::new()),
        }
    }
    if moved.len() != g.main.v_closed.len() {
        rep.fail("v(y) and v(x) have different supports".into(), None, String::new(), String::new());
    }
}

pub fn chart_report(g: &Geometry, s: &Settings) -> Report {
    let mut rep = Report::new("chart", Some(g.label), s.mode, s.seed);
    let mut ck = Checker::new(s.mode, s.trials, s.seed);
    let Some(m) = &g.fund else {
        rep.fail("no W(varpi_1)".into(), None, String::new(), String::new());
        return rep;
    };
    for ch in charts(g) {
        let v = ch.v_symbolic(m);
        let labels: BTreeSet<FundLabel> = v.keys().chain(ch.v_closed.keys()).copied().collect();
        for b in labels {
            match (v.get(&b), ch.v_closed.get(&b)) {
                (Some(x), Some(y)) => ck.same(&mut rep, &|| format!("chart {} coefficient of {b}", ch.chart), None, x, y),
                _ => rep.fail(format!("chart {} coefficient of {b} is zero on one side", ch.chart), None, String::new(), String::new()),
            }
        }
    }
    theorem_vectors(g, &mut ck, &mut rep);
    rep
}

pub fn verify_chart(t: TypeLabel, s: &Settings) -> Result<Report, HarnessError> {
    Ok(chart_report(&charted(t)?, s))
}

pub fn schubert_report(g: &Geometry, s: &Settings) -> Report {
    let mut rep = Report::new("schubert", Some(g.label), s.mode, s.seed);
    let mut ck = Checker::new(s.mode, s.trials, s.seed);
    let c = cv("c");
    for ch in charts(g) {
        let coords = ch.word_exprs();
        for i in ch.indices() {
            if i == 0 && ch.chart == 1 {
                continue;
            }
            let generic = schubert_e(&g.cartan, &ch.word, i, &c, &coords);
            let map: Subst = ch.word_vars.iter().cloned().zip(generic).collect();
            ck.same_map(&mut rep, &format!("chart {} e_{i}", ch.chart), Some(i), &ch.e[&i], &map);
            let (eps, gamma) = schubert_stats(&g.cartan, &ch.word, i, &coords);
            match eps {
                Some(eps) => ck.same(&mut rep, &|| format!("chart {} eps_{i}", ch.chart), Some(i), &ch.eps[&i], &eps),
                None => rep.fail(format!("letter {i} missing from the word"), Some(i), String::new(), String::new()),
            }
            ck.same(&mut rep, &|| format!("chart {} gamma_{i}", ch.chart), Some(i), &ch.gamma[&i], &gamma);
        }
    }
    rep
}

pub fn verify_schubert(t: TypeLabel, s: &Settings) -> Result<Report, HarnessError> {
    Ok(schubert_report(&geom(t)?, s))
}

fn lattice_point(rng: &mut ChaCha8Rng, vars: &[String], b: i64) -> LatticePoint {
    vars.iter().map(|v| (v.clone(), rng.gen_range(-b..=b))).collect()
}

fn show_lattice(x: &LatticePoint) -> String {
    let parts: Vec<String> = x.iter().map(|(k, v)| format!("{k}={v}")).collect();
    parts.join(", ")
}

/// Tropicalized chart data compared with the piecewise-linear tables.
pub fn ud_report(g: &Geometry, u: &UdTable, s: &Settings) -> Report {
    let mut rep = Report::new("ud", Some(g.label), Mode::Sampled, s.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let ch = &g.main;
    let trop_e: BTreeMap<usize, Vec<(String, TropExpr)>> = ch
        .e
        .iter()
        .map(|(i, m)| (*i, m.iter().map(|(k, v)| (k.clone(), tropicalize(v))).collect()))
        .collect();
    let trop_eps: BTreeMap<usize, TropExpr> = ch.eps.iter().map(|(i, e)| (*i, tropicalize(e))).collect();
    let trop_gamma: BTreeMap<usize, TropExpr> = ch.gamma.iter().map(|(i, e)| (*i, tropicalize(e))).collect();
    if ch.vars != u.vars {
        rep.fail("coordinate lists differ".into(), None, format!("{:?}", ch.vars), format!("{:?}", u.vars));
        return rep;
    }
    for _ in 0..s.samples {
        rep.sample_size += 1;
        let x = lattice_point(&mut rng, &ch.vars, s.lattice_box);
        for i in ch.indices() {
            for (c, op) in [(1i64, Op::E), (-1, Op::F)] {
                let mut pt = x.clone();
                pt.insert("c".into(), c);
                let got: LatticePoint = trop_e[&i].iter().map(|(k, t)| (k.clone(), t.teval(&pt).unwrap())).collect();
                let want = match op {
                    Op::E => u.e_tilde(i, &x),
                    Op::F => u.f_tilde(i, &x),
                };
                let name = if c == 1 { "e" } else { "f" };
                rep.expect_eq(|| format!("{name}_{i} at {}", show_lattice(&x)), Some(i), Some(got), want);
            }
            rep.expect_eq(|| format!("eps_{i} at {}", show_lattice(&x)), Some(i), trop_eps[&i].teval(&x).unwrap(), u.eps_at(i, &x));
            rep.expect_eq(|| format!("wt_{i} at {}", show_lattice(&x)), Some(i), trop_gamma[&i].teval(&x).unwrap(), u.wt_at(i, &x));
        }
    }
    rep
}

pub fn verify_ud(t: TypeLabel, s: &Settings) -> Result<Report, HarnessError> {
    Ok(ud_report(&charted(t)?, &ud_table(t), s))
}

/// `mu` against `B_infinity` of the dual type.
pub fn mu_report(u: &UdTable, s: &Settings) -> Report {
    let mut rep = Report::new("mu", Some(u.label), Mode::Sampled, s.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let binf = BInfinity::new(u.target).expect("dual rank is valid");
    let idx: Vec<usize> = u.e.keys().copied().collect();
    for _ in 0..s.samples {
        rep.sample_size += 1;
        let x = lattice_point(&mut rng, &u.vars, s.lattice_box);
        let at = || show_lattice(&x);
        let b = u.mu_at(&x);
        if !binf.validate(&b) {
            rep.fail(format!("mu({}) is not in B_infinity", at()), None, format!("{b}"), String::new());
            continue;
        }
        rep.expect_eq(|| format!("mu^-1 mu at {}", at()), None, u.mu_inv_at(&b), Some(x.clone()));
        let (wt, eps, _) = binf.stats(&b);
        for &i in &idx {
            rep.expect_eq(|| format!("eps_{i} at {}", at()), Some(i), eps[i], u.eps_at(i, &x));
            rep.expect_eq(|| format!("wt_{i} at {}", at()), Some(i), wt[i], u.wt_at(i, &x));
            for op in [Op::E, Op::F] {
                let moved = match op {
                    Op::E => u.e_tilde(i, &x),
                    Op::F => u.f_tilde(i, &x),
                };
                let lhs = moved.map(|y| u.mu_at(&y));
                let rhs = binf.apply(op, i, &b).ok();
                rep.expect_eq(|| format!("mu {op:?}_{i} at {}", at()), Some(i), lhs, rhs);
            }
        }
        // surjectivity: a random element of B_infinity comes from a point
        let b = binf.sample(&mut rng, s.lattice_box);
        match u.mu_inv_at(&b) {
            Some(y) => {
                rep.expect_eq(|| format!("mu mu^-1 at {b}"), None, u.mu_at(&y), b.clone());
            }
            None => rep.fail(format!("mu^-1 undefined at {b}"), None, String::new(), String::new()),
        }
    }
    rep
}

pub fn verify_mu(t: TypeLabel, s: &Settings) -> Result<Report, HarnessError> {
    if !t.family.has_chart() {
        return Err(HarnessError::NoChart(t));
    }
    Ok(mu_report(&ud_table(t), s))
}

/// Crystal axioms on `B_infinity` and on the tensor square.
pub fn verify_binf(t: TypeLabel, s: &Settings) -> Result<Report, HarnessError> {
    if t.family == Family::A2dag {
        return Err(HarnessError::NoChart(t));
    }
    let binf = BInfinity::new(t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let sample: Vec<_> = (0..s.samples).map(|_| binf.sample(&mut rng, s.lattice_box)).collect();
    let mut rep = check_axioms(&binf, &binf.cartan, &sample, s.seed);
    rep.check = "binf".into();
    let pairs: Vec<_> = sample.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    let tensor = crate::crystal_core::Tensor { left: &binf, right: &binf };
    let trep = check_axioms(&tensor, &binf.cartan, &pairs, s.seed);
    rep.absorb(trep);
    Ok(rep)
}

/// Runs a check by name.
pub fn run_check(name: &str, t: TypeLabel, s: &Settings) -> Result<Report, HarnessError> {
    match name {
        "verma" => verify_verma(t, s),
        "axioms" => verify_geom_axioms(t, s),
        "sigma" => verify_sigma(t, s),
        "chart" => verify_chart(t, s),
        "schubert" => verify_schubert(t, s),
        "ud" => verify_ud(t, s),
        "mu" => verify_mu(t, s),
        "binf" => verify_binf(t, s),
        _ => Err(HarnessError::UnknownCheck(name.to_string())),
    }
}

#[cfg(test)]
mod tests;
