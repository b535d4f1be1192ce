mod common;

use adaequalitas::infinitesimal::{
    derivative_via_dual, product_rule_tlh, tlh_reduce, Dual, GradedSum, Quantity,
};
use adaequalitas::numeric::Rational;
use adaequalitas::symexpr::{Poly, VarId};
use common::{poly_in_a, poly_multi, rational, A};
use proptest::prelude::*;

fn graded_term() -> impl Strategy<Value = GradedSum> {
    let symbols = proptest::collection::vec(prop_oneof![Just('a'), Just('u'), Just('v')], 0..3);
    let diffs = proptest::collection::vec(
        (prop_oneof![Just('x'), Just('y'), Just('u')], 1u32..3),
        0..3,
    );
    (rational(), symbols, diffs).prop_map(|(c, syms, ds)| {
        let mut t = GradedSum::constant(c);
        for s in syms {
            t = &t * &GradedSum::symbol(VarId::new(s));
        }
        for (v, k) in ds {
            t = &t * &GradedSum::differential(VarId::new(v), k);
        }
        t
    })
}

fn graded_sum() -> impl Strategy<Value = GradedSum> {
    proptest::collection::vec(graded_term(), 1..6)
        .prop_map(|ts| ts.iter().fold(GradedSum::zero(), |acc, t| &acc + t))
        .prop_filter("nonzero", |s| !s.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dual_derivative_is_linear(f in poly_multi(6), g in poly_multi(6), c in rational()) {
        let d = |p: &Poly| derivative_via_dual(p, A);
        prop_assert_eq!(d(&(&f + &g)), &d(&f) + &d(&g));
        prop_assert_eq!(d(&f.scale(&c)), d(&f).scale(&c));
    }

    #[test]
    fn dual_derivative_obeys_product_rule(f in poly_in_a(5), g in poly_in_a(5)) {
        let d = |p: &Poly| derivative_via_dual(p, A);
        prop_assert_eq!(d(&(&f * &g)), &(&d(&f) * &g) + &(&f * &d(&g)));
    }

    #[test]
    fn dual_products_truncate(a in rational(), b in rational(), c in rational(), d in rational()) {
        let x = Dual::new(a.clone(), b.clone());
        let y = Dual::new(c.clone(), d.clone());
        let p = &x * &y;
        prop_assert_eq!(p.re, &a * &c);
        prop_assert_eq!(p.eps, &(&a * &d) + &(&b * &c));
    }

    #[test]
    fn tlh_is_idempotent_and_keeps_min_grade(s in graded_sum()) {
        let r = tlh_reduce(&s).unwrap();
        prop_assert_eq!(&tlh_reduce(&r).unwrap(), &r);
        prop_assert_eq!(r.min_grade(), s.min_grade());
        prop_assert_eq!(r.max_grade(), s.min_grade());
        for (coeff, tag, _) in r.terms() {
            prop_assert_eq!(coeff, &s.coefficient(tag));
        }
    }
}

#[test]
fn product_rule_shape_matches_duals() {
    // d(uv) through duals with u, v seeded in turn gives v and u; the graded
    // product rule has exactly these as coefficients of du and dv.
    let (u, v) = (VarId::new('u'), VarId::new('v'));
    let uv = &Poly::var(u) * &Poly::var(v);
    let s = product_rule_tlh(&Quantity::Symbol(u), &Quantity::Symbol(v));
    let du = GradedSum::differential(u, 1);
    let dv = GradedSum::differential(v, 1);
    let tag = |g: &GradedSum| g.terms()[0].1.to_vec();
    assert_eq!(s.coefficient(&tag(&du)), derivative_via_dual(&uv, u));
    assert_eq!(s.coefficient(&tag(&dv)), derivative_via_dual(&uv, v));
    assert_eq!(s.num_terms(), 2);
    let c = product_rule_tlh(&Quantity::Constant(Rational::from(3)), &Quantity::Symbol(v));
    assert_eq!(c, &GradedSum::constant(3) * &dv);
}
