//! Radical elimination by repeated isolate-and-square.

use std::collections::BTreeSet;

use super::KernelError;
use crate::numeric::Rational;
use crate::symexpr::{Poly, RadicalSum, MAX_RADICANDS};

/// One squaring: `isolated_lhs =AD isolated_rhs` was squared into
/// `squared_lhs =AD squared_rhs`.
///
/// `isolated_lhs − isolated_rhs` equals the previous difference divided by
/// `scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquaringRound {
    pub isolated_lhs: RadicalSum,
    pub isolated_rhs: RadicalSum,
    pub scale: Rational,
    pub squared_lhs: RadicalSum,
    pub squared_rhs: RadicalSum,
}

fn radicand_set<'a>(l: &'a RadicalSum, r: &'a RadicalSum) -> BTreeSet<&'a Poly> {
    l.radicands().chain(r.radicands()).collect()
}

/// Chooses how to square `lhs =AD rhs` next.
///
/// Two pure radical sides are squared as they stand. Otherwise the
/// smallest radicand is isolated on the left and every other term is
/// moved to the right; a constant coefficient on the isolated radical is
/// divided out first.
fn isolate(lhs: &RadicalSum, rhs: &RadicalSum) -> (RadicalSum, RadicalSum, Rational) {
    if lhs.poly_part().is_zero() && rhs.poly_part().is_zero() {
        return (lhs.clone(), rhs.clone(), Rational::one());
    }
    let diff = lhs - rhs;
    let (coeff, radicand) = diff
        .radical_terms()
        .next()
        .map(|(c, r)| (c.clone(), r.clone()))
        .expect("a radical term is present");
    let isolated = RadicalSum::radical(coeff.clone(), radicand);
    let rest = &isolated - &diff;
    match coeff.constant_value() {
        Some(c) => {
            let inv = Poly::constant(c.recip().expect("nonzero coefficient"));
            (isolated.scale(&inv), rest.scale(&inv), c)
        }
        None => (isolated, rest, Rational::one()),
    }
}

/// Squares `lhs =AD rhs` until no radical remains. The number of distinct
/// radicands must fall on every round, otherwise elimination is refused.
pub fn squaring_rounds(
    lhs: &RadicalSum,
    rhs: &RadicalSum,
) -> Result<Vec<SquaringRound>, KernelError> {
    for side in [lhs, rhs] {
        if side.num_radicals() > MAX_RADICANDS {
            return Err(KernelError::TooManyRadicals(side.num_radicals()));
        }
    }
    let mut rounds = Vec::new();
    let (mut l, mut r) = (lhs.clone(), rhs.clone());
    loop {
        let before = radicand_set(&l, &r).len();
        if before == 0 {
            return Ok(rounds);
        }
        let (il, ir, scale) = isolate(&l, &r);
        let sl = &il * &il;
        let sr = &ir * &ir;
        if radicand_set(&sl, &sr).len() >= before {
            return Err(KernelError::EliminationStalled);
        }
        l = sl.clone();
        r = sr.clone();
        rounds.push(SquaringRound {
            isolated_lhs: il,
            isolated_rhs: ir,
            scale,
            squared_lhs: sl,
            squared_rhs: sr,
        });
    }
}
