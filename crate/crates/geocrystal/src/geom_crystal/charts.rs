//! The explicit charts: coordinates, `e_i^c`, `eps_i`, `gamma_i`, the closed
//! form of `v`, and `sigma_bar`, written out per family.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::fund::FundLabel::{Bar, Phi, Plain, Zero};
use super::{ex, fund_module, identity, schubert_chart, Chart, FundLabel, FundVec, Geometry, SigmaBar, Subst};
use crate::cartan::{CartanData, Family};
use crate::posrat::Expr;

use Family::*;

fn x(i: usize) -> String {
    format!("x{i}")
}

fn xb(i: usize) -> String {
    format!("xb{i}")
}

/// Shorthand for the non-`A1` families.
struct Shape {
    fam: Family,
    n: usize,
}

impl Shape {
    /// Last index with the generic two-branch action.
    fn last_std(&self) -> usize {
        if self.fam == D1 {
            self.n - 2
        } else {
            self.n - 1
        }
    }

    fn has_x0(&self) -> bool {
        matches!(self.fam, C1 | D2 | A2dag)
    }

    /// `P_i`: `x_i xb_i`, with the type-specific ends.
    fn p(&self, i: usize) -> String {
        let n = self.n;
        if i == 0 {
            return match self.fam {
                B1 | D1 | A2odd => "1".into(),
                C1 | A2dag => "x0".into(),
                _ => "x0^2".into(),
            };
        }
        if i == self.last_std() + 1 {
            return match self.fam {
                C1 | A2odd => x(n),
                D1 => format!("x{}*x{}", n - 1, n),
                _ => format!("x{n}^2"),
            };
        }
        format!("x{i}*xb{i}")
    }

    /// What stands in for `x_{i-1}`; at `i = 1` it is `1`, `x0` or `x0^2`.
    fn lead(&self, i: usize) -> String {
        if i >= 2 {
            return x(i - 1);
        }
        self.p(0)
    }

    /// `xi_i = (P_{i-1} + P_i) / x_{i-1}`, with the first one type-specific.
    fn xi(&self, i: usize) -> String {
        if i == 1 && !self.has_x0() {
            return self.p(1);
        }
        format!("(({}) + ({}))/({})", self.p(i - 1), self.p(i), self.lead(i))
    }

    fn vars(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.has_x0() {
            v.push("x0".into());
        }
        v.extend((1..=self.n).map(x));
        v.extend((1..=self.last_std()).rev().map(xb));
        v
    }

    fn std_e(&self, i: usize) -> Vec<(String, String)> {
        let (pi, pn) = (self.p(i), self.p(i + 1));
        alloc::vec![
            (x(i), format!("x{i}*(c*({pi}) + ({pn}))/(({pi}) + ({pn}))")),
            (xb(i), format!("xb{i}*c*(({pi}) + ({pn}))/(c*({pi}) + ({pn}))")),
        ]
    }
}

fn full(vars: &[String], entries: Vec<(String, String)>) -> Subst {
    let mut m = identity(vars);
    for (k, v) in entries {
        assert!(m.contains_key(&k), "unknown coordinate {k}");
        m.insert(k, ex(&v));
    }
    m
}

fn fund_vec(entries: Vec<(FundLabel, String)>) -> FundVec<Expr> {
    entries.into_iter().map(|(b, s)| (b, ex(&s))).collect()
}

fn a1(cd: &CartanData) -> Geometry {
    let n = cd.n();
    let vars: Vec<String> = (1..=n).map(x).collect();
    let mut e = BTreeMap::new();
    let mut eps = BTreeMap::new();
    let mut gamma = BTreeMap::new();
    e.insert(0, full(&vars, (1..=n).map(|i| (x(i), format!("x{i}/c"))).collect()));
    eps.insert(0, ex("x1"));
    gamma.insert(0, ex(&format!("1/(x1*x{n})")));
    for i in 1..=n {
        e.insert(i, full(&vars, alloc::vec![(x(i), format!("c*x{i}"))]));
        eps.insert(i, ex(&if i < n { format!("x{}/x{i}", i + 1) } else { format!("1/x{n}") }));
        let den = match (i > 1, i < n) {
            (true, true) => format!("(x{}*x{})", i - 1, i + 1),
            (true, false) => x(i - 1),
            (false, true) => x(i + 1),
            (false, false) => "1".into(),
        };
        gamma.insert(i, ex(&format!("x{i}^2/{den}")));
    }
    let mut v: Vec<(FundLabel, String)> = (1..=n).map(|i| (Plain(i), x(i))).collect();
    v.push((Plain(n + 1), "1".into()));
    let word_vars: Vec<String> = (1..=n).rev().map(x).collect();
    let main = Chart {
        label: cd.label,
        chart: 1,
        vars: vars.clone(),
        word: cd.word_w1.clone(),
        word_vars,
        start: Plain(1),
        e,
        eps,
        gamma,
        v_closed: fund_vec(v),
    };
    let mut fwd = alloc::vec![(x(1), format!("1/x{n}"))];
    fwd.extend((2..=n).map(|i| (x(i), format!("x{}/x{n}", i - 1))));
    let mut back = alloc::vec![(x(n), "1/x1".to_string())];
    back.extend((1..n).map(|i| (x(i), format!("x{}/x1", i + 1))));
    Geometry {
        label: cd.label,
        cartan: cd.clone(),
        fund: Some(fund_module(cd.label)),
        main,
        second: None,
        sigma_bar: Some(SigmaBar { a: Some(ex(&format!("1/x{n}"))), map: full(&vars, fwd) }),
        sigma_inv: Some(SigmaBar { a: None, map: full(&vars, back) }),
    }
}

fn classical(cd: &CartanData) -> Geometry {
    let n = cd.n();
    let fam = cd.label.family;
    let s = Shape { fam, n };
    let vars = s.vars();
    let ls = s.last_std();
    let mut e = BTreeMap::new();
    let mut eps = BTreeMap::new();
    let mut gamma = BTreeMap::new();

    for i in 1..=ls {
        e.insert(i, full(&vars, s.std_e(i)));
        eps.insert(i, ex(&format!("({})/x{i}*(1 + ({})/({}))", s.lead(i), s.p(i + 1), s.p(i))));
        gamma.insert(i, ex(&format!("({})^2/(({})*({}))", s.p(i), s.p(i - 1), s.p(i + 1))));
    }
    let pl = s.p(n - 1);
    match fam {
        D1 => {
            let pm = s.p(n - 2);
            for k in [n - 1, n] {
                e.insert(k, full(&vars, alloc::vec![(x(k), format!("c*x{k}"))]));
                eps.insert(k, ex(&format!("x{}/x{k}", n - 2)));
                gamma.insert(k, ex(&format!("x{k}^2/({pm})")));
            }
        }
        _ => {
            e.insert(n, full(&vars, alloc::vec![(x(n), format!("c*x{n}"))]));
            let (ep, g) = match fam {
                C1 | A2odd => (format!("x{}^2/x{n}", n - 1), format!("x{n}^2/({pl})^2")),
                _ => (format!("x{}/x{n}", n - 1), format!("x{n}^2/({pl})")),
            };
            eps.insert(n, ex(&ep));
            gamma.insert(n, ex(&g));
        }
    }

    // e_0 in closed form
    let (p1, p2) = (s.p(1), s.p(2));
    let scale_rest = |f: &dyn Fn(&str) -> String, skip: &[String]| -> Vec<(String, String)> {
        vars.iter().filter(|v| !skip.contains(v)).map(|v| (v.clone(), f(v))).collect()
    };
    let (e0, eps0, gamma0) = match fam {
        B1 | D1 | A2odd => {
            let mut m = alloc::vec![
                (x(1), format!("x1*(c*({p1}) + ({p2}))/(c*(({p1}) + ({p2})))")),
                (xb(1), format!("xb1*(({p1}) + ({p2}))/(c*({p1}) + ({p2}))")),
            ];
            let skip = [x(1), xb(1)];
            m.extend(scale_rest(
                &|v| if fam == A2odd && *v == x(n) { format!("{v}/c^2") } else { format!("{v}/c") },
                &skip,
            ));
            (m, format!("(({p1}) + ({p2}))/x1"), format!("1/({p2})"))
        }
        C1 | A2dag => {
            let r = format!("(c*x0 + ({p1}))/(c*(x0 + ({p1})))");
            let mut m = alloc::vec![("x0".to_string(), format!("x0*(c*x0 + ({p1}))^2/(c*(x0 + ({p1}))^2)"))];
            m.extend(scale_rest(
                &|v| {
                    if fam == C1 && *v == x(n) {
                        format!("{v}*(c*x0 + ({p1}))^2/(c^2*(x0 + ({p1}))^2)")
                    } else {
                        format!("{v}*{r}")
                    }
                },
                &["x0".to_string()],
            ));
            (m, format!("(1 + ({p1})/x0)^2/x0"), format!("x0^2/({p1})^2"))
        }
        D2 => {
            let r = format!("(c^2*x0^2 + ({p1}))/(c^2*(x0^2 + ({p1})))");
            let mut m = alloc::vec![("x0".to_string(), format!("x0*(c^2*x0^2 + ({p1}))/(c*(x0^2 + ({p1})))"))];
            m.extend(scale_rest(&|v| format!("{v}*{r}"), &["x0".to_string()]));
            (m, format!("(x0^2 + ({p1}))/x0^3"), format!("x0^2/({p1})"))
        }
        _ => unreachable!(),
    };
    e.insert(0, full(&vars, e0));
    eps.insert(0, ex(&eps0));
    gamma.insert(0, ex(&gamma0));

    // closed form of v
    let mut v: Vec<(FundLabel, String)> = Vec::new();
    for i in 1..=ls + 1 {
        v.push((Plain(i), s.xi(i)));
    }
    match fam {
        D1 => v.push((Plain(n), x(n))),
        B1 | D2 | A2dag => v.push((Zero, x(n))),
        _ => {}
    }
    for i in 1..=n {
        v.push((Bar(i), s.lead(i)));
    }
    if fam == D2 {
        v.push((Phi, "x0".into()));
    }
    let v_closed = fund_vec(v);

    let mut word_vars: Vec<String> = Vec::new();
    if s.has_x0() {
        word_vars.push("x0".into());
    }
    word_vars.extend((1..=n).map(x));
    word_vars.extend((1..=ls).rev().map(xb));

    let main = Chart {
        label: cd.label,
        chart: 1,
        vars: vars.clone(),
        word: cd.word_w1.clone(),
        word_vars,
        start: Plain(1),
        e,
        eps,
        gamma,
        v_closed,
    };

    let (sigma_bar, sigma_inv, second) = match fam {
        B1 | D1 | A2odd => {
            let m: Vec<(String, String)> = vars
                .iter()
                .map(|v| {
                    if fam == A2odd && *v == x(n) {
                        (v.clone(), format!("{v}/({p1})^2"))
                    } else {
                        (v.clone(), format!("{v}/({p1})"))
                    }
                })
                .collect();
            let sb = SigmaBar { a: Some(ex(&format!("1/({p1})"))), map: full(&vars, m) };
            (sb.clone(), sb, None)
        }
        C1 | D2 => {
            let big_a = if fam == C1 {
                format!("((({pl}) + x{n})/(x{}*x{n}))", n - 1)
            } else {
                format!("((({pl}) + x{n}^2)/(x{}*x{n}^2))", n - 1)
            };
            let mut m = Vec::new();
            if fam == C1 {
                m.push(("x0".to_string(), format!("x{n}*{big_a}^2")));
                m.push((x(n), format!("x0*{big_a}^2")));
            } else {
                m.push(("x0".to_string(), format!("{big_a}*x{n}")));
                m.push((x(n), format!("{big_a}*x0")));
            }
            for i in 1..n {
                let k = n - i;
                m.push((x(i), format!("{big_a}*{}", s.xi(k))));
                m.push((
                    xb(i),
                    format!("{big_a}*({})*({})/(({}) + ({}))", s.lead(k), s.p(k), s.p(k - 1), s.p(k)),
                ));
            }
            let sb = SigmaBar { a: Some(ex(&big_a)), map: full(&vars, m) };
            (sb.clone(), sb, None)
        }
        A2dag => {
            let (sb, inv, second) = a2dag_second(cd, &s, &vars);
            (sb, inv, Some(second))
        }
        _ => unreachable!(),
    };

    Geometry {
        label: cd.label,
        cartan: cd.clone(),
        fund: Some(fund_module(cd.label)),
        main,
        second,
        sigma_bar: Some(sigma_bar),
        sigma_inv: Some(sigma_inv),
    }
}

fn y(i: usize) -> String {
    format!("y{i}")
}

fn yb(i: usize) -> String {
    format!("yb{i}")
}

/// The second chart of `A2dag` and the maps between the two.
fn a2dag_second(cd: &CartanData, s: &Shape, xvars: &[String]) -> (SigmaBar, SigmaBar, Chart) {
    let n = s.n;
    // P'_i = y_i yb_i with P'_0 = y0 and P'_n = y_n^2; Y_i = y_i except Y_n = y_n^2
    let pp = |i: usize| -> String {
        if i == 0 {
            "y0".into()
        } else if i == n {
            format!("y{n}^2")
        } else {
            format!("y{i}*yb{i}")
        }
    };
    let yy = |i: usize| -> String { if i == n { format!("y{n}^2") } else { y(i) } };

    let mut vars: Vec<String> = (0..=n).map(y).collect();
    vars.extend((1..n).map(yb));
    let mut word_vars: Vec<String> = (1..=n).rev().map(y).collect();
    word_vars.push("y0".into());
    word_vars.extend((1..n).map(yb));

    let mut e = BTreeMap::new();
    let mut eps = BTreeMap::new();
    let mut gamma = BTreeMap::new();
    e.insert(0, full(&vars, alloc::vec![("y0".to_string(), "c*y0".to_string())]));
    eps.insert(0, ex("y1^2/y0"));
    gamma.insert(0, ex("y0^2/(y1*yb1)^2"));
    for i in 1..n {
        let (pi, pm) = (pp(i), pp(i - 1));
        e.insert(
            i,
            full(
                &vars,
                alloc::vec![
                    (y(i), format!("y{i}*(c*({pi}) + ({pm}))/(({pi}) + ({pm}))")),
                    (yb(i), format!("yb{i}*c*(({pi}) + ({pm}))/(c*({pi}) + ({pm}))")),
                ],
            ),
        );
        eps.insert(i, ex(&format!("({})/y{i}*(1 + ({pm})/({pi}))", yy(i + 1))));
        gamma.insert(i, ex(&format!("({pi})^2/(({pm})*({}))", pp(i + 1))));
    }
    let mut v: Vec<(FundLabel, String)> = (1..n).map(|i| (Plain(i), y(i))).collect();
    v.push((Plain(n), format!("y{n}^2")));
    v.push((Zero, y(n)));
    for i in 1..=n {
        v.push((Bar(i), format!("(({}) + ({}))/({})", pp(i - 1), pp(i), yy(i))));
    }
    let chart = Chart {
        label: cd.label,
        chart: 2,
        vars: vars.clone(),
        word: cd.word_w2.clone().expect("A2dag has a second word"),
        word_vars,
        start: Bar(n),
        e,
        eps,
        gamma,
        v_closed: fund_vec(v),
    };

    let big_a = format!("((({}) + x{n}^2)/(x{}*x{n}^2))", s.p(n - 1), n - 1);
    let mut fwd = alloc::vec![("y0".to_string(), format!("{big_a}^2*x0")), (y(n), format!("{big_a}*x{n}"))];
    for i in 1..n {
        fwd.push((y(i), format!("{big_a}*{}", s.xi(i))));
        fwd.push((
            yb(i),
            format!("{big_a}*({})*({})/(({}) + ({}))", s.lead(i), s.p(i), s.p(i - 1), s.p(i)),
        ));
    }
    let ay = "(y0*y1/(y0 + y1*yb1))";
    let mut back = alloc::vec![(x(n), format!("y{n}/{ay}"))];
    for i in 0..n {
        back.push((x(i), format!("(({}) + ({}))/({ay}*({}))", pp(i), pp(i + 1), yy(i + 1))));
    }
    for i in 1..n {
        back.push((xb(i), format!("({})*({})/({ay}*(({}) + ({})))", pp(i), yy(i + 1), pp(i), pp(i + 1))));
    }
    let sb = SigmaBar { a: Some(ex(&big_a)), map: full(&vars, fwd) };
    let inv = SigmaBar { a: Some(ex(ay)), map: full(xvars, back) };
    (sb, inv, chart)
}

/// `A2even` has no chart of its own; it gets the Schubert-cell action on
/// the word it shares with `A2dag`.
fn a2even(cd: &CartanData) -> Geometry {
    let n = cd.n();
    let word: Vec<usize> = core::iter::once(0).chain(1..=n).chain((1..n).rev()).collect();
    let mut word_vars: Vec<String> = alloc::vec!["x0".into()];
    word_vars.extend((1..=n).map(x));
    word_vars.extend((1..n).rev().map(xb));
    Geometry {
        label: cd.label,
        cartan: cd.clone(),
        fund: None,
        main: schubert_chart(cd, &word, &word_vars, 1),
        second: None,
        sigma_bar: None,
        sigma_inv: None,
    }
}

/// All explicit data for one type.
pub fn geometry(cd: &CartanData) -> Geometry {
    match cd.label.family {
        A1 => a1(cd),
        A2even => a2even(cd),
        _ => classical(cd),
    }
}
