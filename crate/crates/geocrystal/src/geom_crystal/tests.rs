use super::*;
use crate::cartan::Family::*;
use crate::posrat::equal;

fn q(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn point(pairs: &[(&str, i64)]) -> ChartPoint {
    pairs.iter().map(|(k, v)| (k.to_string(), q(*v))).collect()
}

fn ones(ch: &Chart) -> ChartPoint {
    ch.vars.iter().map(|v| (v.clone(), q(1))).collect()
}

#[test]
fn a1_v_matrix_example() {
    let g = geometry_of(A1, 2);
    let v = g.main.v_numeric(g.fund.as_ref().unwrap(), &point(&[("x1", 2), ("x2", 3)])).unwrap();
    let want: FundVec<BigRational> =
        [(FundLabel::Plain(1), q(2)), (FundLabel::Plain(2), q(3)), (FundLabel::Plain(3), q(1))].into();
    assert_eq!(v, want);
}

#[test]
fn y_action_single_step() {
    let m = fund_module(TypeLabel::new(A1, 3).unwrap());
    let v: FundVec<Expr> = [(FundLabel::Plain(1), Expr::one())].into();
    let out = y_action(&m, 1, &Expr::var("x1"), &v);
    assert_eq!(out.len(), 2);
    assert!(equal(&out[&FundLabel::Plain(1)], &Expr::var("x1")).unwrap());
    assert!(equal(&out[&FundLabel::Plain(2)], &Expr::one()).unwrap());
}

#[test]
fn y_action_fixed_vector() {
    let m = fund_module(TypeLabel::new(B1, 3).unwrap());
    let v: FundVec<BigRational> = [(FundLabel::Plain(1), q(5))].into();
    assert_eq!(y_action(&m, 3, &q(1), &v), v);
}

#[test]
fn b1_quadratic_term() {
    let m = fund_module(TypeLabel::new(B1, 3).unwrap());
    let v: FundVec<Expr> = [(FundLabel::Plain(3), Expr::one())].into();
    let out = y_action(&m, 3, &Expr::var("c"), &v);
    // c^2 [3] + c [0] + 1/2 * 2 [3b]
    assert!(equal(&out[&FundLabel::Plain(3)], &ex("c^2")).unwrap());
    assert!(equal(&out[&FundLabel::Zero], &ex("c")).unwrap());
    assert!(equal(&out[&FundLabel::Bar(3)], &Expr::one()).unwrap());
}

#[test]
fn closed_forms_at_ones() {
    let g = geometry_of(B1, 3);
    let v = g.main.v_closed_at(&ones(&g.main)).unwrap();
    assert_eq!(v[&FundLabel::Plain(2)], q(2));
    let stats = g.main.geom_stats(&ones(&g.main)).unwrap();
    assert_eq!(stats[1].1, q(2));
}

#[test]
fn closed_form_examples() {
    let c1 = geometry_of(C1, 2);
    assert!(equal(&c1.main.v_closed[&FundLabel::Plain(1)], &ex("(x0 + x1*xb1)/x0")).unwrap());
    assert!(equal(&c1.main.eps[&0], &ex("(1 + x1*xb1/x0)^2/x0")).unwrap());
    let d2 = geometry_of(D2, 3);
    assert!(equal(&d2.main.v_closed[&FundLabel::Bar(1)], &ex("x0^2")).unwrap());
    let a1 = geometry_of(A1, 3);
    assert!(equal(&a1.main.gamma[&0], &ex("1/(x1*x3)")).unwrap());
    let a2 = geometry_of(A2dag, 3);
    assert!(equal(a2.sigma_bar.as_ref().unwrap().a.as_ref().unwrap(), &ex("(x2*xb2 + x3^2)/(x2*x3^2)")).unwrap());
    let b1 = geometry_of(B1, 3);
    assert!(equal(&b1.main.e[&0]["x1"], &ex("x1*(c*x1*xb1 + x2*xb2)/(c*(x1*xb1 + x2*xb2))")).unwrap());
    let (eps, _) = schubert_stats(&crate::cartan::data(B1, 3), &b1.main.word, 3, &b1.main.word_exprs());
    assert!(equal(&eps.unwrap(), &b1.main.eps[&3]).unwrap());
}

#[test]
fn b1_eps_n_value() {
    let g = geometry_of(B1, 3);
    let pt = point(&[("x1", 1), ("x2", 3), ("x3", 2), ("xb2", 1), ("xb1", 1)]);
    let stats = g.main.geom_stats(&pt).unwrap();
    assert_eq!(stats[3].1, BigRational::new(BigInt::from(3), BigInt::from(2)));
}

#[test]
fn a1_sigma() {
    let g = geometry_of(A1, 3);
    let (a, y) = g.sigma_at(&point(&[("x1", 2), ("x2", 3), ("x3", 5)])).unwrap();
    let fifth = |k: i64| BigRational::new(BigInt::from(k), BigInt::from(5));
    assert_eq!(a, fifth(1));
    assert_eq!(y["x1"], fifth(1));
    assert_eq!(y["x2"], fifth(2));
    assert_eq!(y["x3"], fifth(3));
}

#[test]
fn single_letter_schubert() {
    let cd = crate::cartan::data(A1, 2);
    let out = schubert_e(&cd, &[1], 1, &Expr::var("c"), &[Expr::var("c1")]);
    assert!(equal(&out[0], &ex("c*c1")).unwrap());
    let (_, g) = schubert_stats(&cd, &[1], 1, &[Expr::var("c1")]);
    assert!(equal(&g, &ex("c1^2")).unwrap());
}

#[test]
fn identity_at_c_one() {
    for fam in Family::ALL {
        let g = geometry_of(fam, fam.min_rank());
        let pt: ChartPoint = g.main.vars.iter().enumerate().map(|(k, v)| (v.clone(), q(k as i64 + 2))).collect();
        for i in g.main.indices() {
            assert_eq!(g.main.geom_e(i, &q(1), &pt).unwrap(), pt, "{fam} e_{i}");
        }
    }
}

#[test]
fn chart_two_rejects_n() {
    let g = geometry_of(A2dag, 2);
    let ch = g.chart(2).unwrap();
    assert_eq!(ch.geom_e(2, &q(2), &ones(ch)), Err(GeomError::UndefinedOnChart { i: 2, chart: 2 }));
}

#[test]
fn matrix_equals_closed_small() {
    for fam in Family::ALL.into_iter().filter(|f| f.has_chart()) {
        let g = geometry_of(fam, fam.min_rank());
        let m = g.fund.as_ref().unwrap();
        for ch in core::iter::once(&g.main).chain(g.second.as_ref()) {
            let v = ch.v_symbolic(m);
            assert_eq!(v.keys().collect::<Vec<_>>(), ch.v_closed.keys().collect::<Vec<_>>(), "{fam}");
            for (b, e) in &v {
                assert!(equal(e, &ch.v_closed[b]).unwrap(), "{fam} chart {} {b}", ch.chart);
            }
        }
    }
}
