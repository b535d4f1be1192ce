#![allow(dead_code)]

use adaequalitas::numeric::Rational;
use adaequalitas::symexpr::{Monomial, Poly, VarId};
use proptest::prelude::*;

pub const A: VarId = VarId::new('a');
pub const E: VarId = VarId::new('e');

pub fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |q| !q.is_zero())
}

/// Polynomial in `a` alone of degree at most `max_deg`.
pub fn poly_in_a(max_deg: u32) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(rational(), (max_deg + 1) as usize).prop_map(|cs| {
        Poly::from_terms(
            cs.into_iter()
                .enumerate()
                .map(|(k, c)| (Monomial::from_powers([(A, k as u32)]), c)),
        )
    })
}

/// Nonconstant polynomial in `a` alone.
pub fn nonconstant_poly_in_a(max_deg: u32) -> impl Strategy<Value = Poly> {
    poly_in_a(max_deg).prop_filter("nonconstant", |p| p.degree_in(A) > 0)
}

/// Polynomial over `a, b, c, d` (never `e`), total degree at most `max_deg`.
pub fn poly_multi(max_deg: u32) -> impl Strategy<Value = Poly> {
    let vars = [A, VarId::new('b'), VarId::new('c'), VarId::new('d')];
    let term = (proptest::collection::vec(0u32..=max_deg, 4), rational());
    proptest::collection::vec(term, 0..6).prop_map(move |terms| {
        Poly::from_terms(terms.into_iter().map(|(mut exps, c)| {
            // trim to the degree bound
            while exps.iter().sum::<u32>() > max_deg {
                let i = exps.iter().position(|&x| x > 0).unwrap();
                exps[i] -= 1;
            }
            (Monomial::from_powers(vars.iter().copied().zip(exps)), c)
        }))
    })
}
