//! Polynomials extended by square-root terms, and quotients of those.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::{Poly, VarId};
use super::SymError;
use crate::numeric::Rational;

/// `poly + Σ coeff·√radicand`, radicands pairwise distinct and sorted.
///
/// Radicands are not checked for nonnegativity; callers that evaluate them
/// record that as an assumption.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RadicalSum {
    poly: Poly,
    radicals: BTreeMap<Poly, Poly>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        RadicalSum::default()
    }

    pub fn one() -> Self {
        RadicalSum::from_poly(Poly::one())
    }

    pub fn from_poly(poly: Poly) -> Self {
        RadicalSum {
            poly,
            radicals: BTreeMap::new(),
        }
    }

    /// `coeff·√radicand`; a constant square radicand is folded into the
    /// polynomial part.
    pub fn radical(coeff: Poly, radicand: Poly) -> Self {
        let mut out = RadicalSum::zero();
        out.add_radical(coeff, radicand);
        out
    }

    fn add_radical(&mut self, coeff: Poly, radicand: Poly) {
        if coeff.is_zero() || radicand.is_zero() {
            return;
        }
        if let Some(root) = radicand.constant_value().and_then(|c| c.sqrt_exact()) {
            self.poly = &self.poly + &coeff.scale(&root);
            return;
        }
        let slot = self.radicals.entry(radicand).or_default();
        *slot = &*slot + &coeff;
        if slot.is_zero() {
            self.radicals.retain(|_, c| !c.is_zero());
        }
    }

    pub fn poly_part(&self) -> &Poly {
        &self.poly
    }

    /// `(coeff, radicand)` pairs in radicand order.
    pub fn radical_terms(&self) -> impl Iterator<Item = (&Poly, &Poly)> {
        self.radicals.iter().map(|(r, c)| (c, r))
    }

    pub fn radicands(&self) -> impl Iterator<Item = &Poly> {
        self.radicals.keys()
    }

    pub fn num_radicals(&self) -> usize {
        self.radicals.len()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero() && self.radicals.is_empty()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.radicals.is_empty().then_some(&self.poly)
    }

    pub fn scale(&self, factor: &Poly) -> RadicalSum {
        let mut out = RadicalSum::from_poly(&self.poly * factor);
        for (r, c) in &self.radicals {
            out.add_radical(c * factor, r.clone());
        }
        out
    }

    pub fn pow(&self, exp: u32) -> RadicalSum {
        (0..exp).fold(RadicalSum::one(), |acc, _| &acc * self)
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.poly.contains(v)
            || self
                .radicals
                .iter()
                .any(|(r, c)| r.contains(v) || c.contains(v))
    }

    pub fn substitute(&self, v: VarId, value: &Poly) -> RadicalSum {
        let mut out = RadicalSum::from_poly(self.poly.substitute(v, value));
        for (r, c) in &self.radicals {
            out.add_radical(c.substitute(v, value), r.substitute(v, value));
        }
        out
    }

    pub fn eval(&self, assignment: &BTreeMap<VarId, Rational>) -> RadicalSum {
        let mut out = RadicalSum::from_poly(self.poly.eval(assignment));
        for (r, c) in &self.radicals {
            out.add_radical(c.eval(assignment), r.eval(assignment));
        }
        out
    }

    /// Numeric value; square roots of negative radicands give NaN.
    pub fn eval_f64(&self, value: &dyn Fn(VarId) -> f64) -> f64 {
        self.poly.eval_f64(value)
            + self
                .radicals
                .iter()
                .map(|(r, c)| c.eval_f64(value) * r.eval_f64(value).sqrt())
                .sum::<f64>()
    }
}

fn fmt_factor(p: &Poly) -> String {
    if p.num_terms() > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.poly.is_zero() || self.radicals.is_empty() {
            write!(f, "{}", self.poly)?;
            first = false;
        }
        for (r, c) in &self.radicals {
            let single_negative =
                c.num_terms() == 1 && c.leading_term().is_some_and(|(_, k)| k.is_negative());
            let mag = if single_negative { -c } else { c.clone() };
            match (first, single_negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if mag.constant_value().is_some_and(|k| k.is_one()) {
                write!(f, "sqrt({r})")?;
            } else {
                write!(f, "{}*sqrt({r})", fmt_factor(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadicalSum({self})")
    }
}

impl Add<&RadicalSum> for &RadicalSum {
    type Output = RadicalSum;
    fn add(self, rhs: &RadicalSum) -> RadicalSum {
        let mut out = self.clone();
        out.poly = &out.poly + &rhs.poly;
        for (r, c) in &rhs.radicals {
            out.add_radical(c.clone(), r.clone());
        }
        out
    }
}

impl Neg for &RadicalSum {
    type Output = RadicalSum;
    fn neg(self) -> RadicalSum {
        self.scale(&Poly::constant(-1))
    }
}

impl Sub<&RadicalSum> for &RadicalSum {
    type Output = RadicalSum;
    fn sub(self, rhs: &RadicalSum) -> RadicalSum {
        self + &-rhs
    }
}

impl Mul<&RadicalSum> for &RadicalSum {
    type Output = RadicalSum;
    fn mul(self, rhs: &RadicalSum) -> RadicalSum {
        let mut out = RadicalSum::from_poly(&self.poly * &rhs.poly);
        for (r, c) in &rhs.radicals {
            out.add_radical(&self.poly * c, r.clone());
        }
        for (r, c) in &self.radicals {
            out.add_radical(c * &rhs.poly, r.clone());
        }
        for (rl, cl) in &self.radicals {
            for (rr, cr) in &rhs.radicals {
                let coeff = cl * cr;
                if rl == rr {
                    out.poly = &out.poly + &(&coeff * rl);
                } else {
                    out.add_radical(coeff, rl * rr);
                }
            }
        }
        out
    }
}

/// A quotient `num / den` of radical sums.
///
/// Canonical form: constant denominators are folded into the numerator and a
/// polynomial denominator that divides the numerator exactly is cancelled.
/// No gcd is taken otherwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalForm {
    num: RadicalSum,
    den: RadicalSum,
}

impl RationalForm {
    pub fn new(num: RadicalSum, den: RadicalSum) -> Result<Self, SymError> {
        if den.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        Ok(RationalForm { num, den }.normalized())
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalForm::from_radical_sum(RadicalSum::from_poly(p))
    }

    pub fn from_radical_sum(num: RadicalSum) -> Self {
        RationalForm {
            num,
            den: RadicalSum::one(),
        }
    }

    fn normalized(self) -> Self {
        let RationalForm { num, den } = self;
        if num.is_zero() {
            return RationalForm::from_radical_sum(num);
        }
        if let Some(d) = den.as_poly() {
            if let Some(c) = d.constant_value() {
                let inv = Poly::constant(c.recip().expect("nonzero denominator"));
                return RationalForm::from_radical_sum(num.scale(&inv));
            }
            if let Some(q) = num.as_poly().and_then(|n| n.div_exact(d)) {
                return RationalForm::from_poly(q);
            }
            return RationalForm { num, den };
        }
        RationalForm { num, den }
    }

    pub fn num(&self) -> &RadicalSum {
        &self.num
    }

    pub fn den(&self) -> &RadicalSum {
        &self.den
    }

    pub fn has_unit_den(&self) -> bool {
        self.den == RadicalSum::one()
    }

    /// The polynomial this form equals, when it has no radicals and a unit
    /// denominator.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.has_unit_den() {
            self.num.as_poly()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.as_poly().is_some()
    }

    pub fn has_radicals(&self) -> bool {
        self.num.num_radicals() > 0 || self.den.num_radicals() > 0
    }

    /// Distinct radicands over numerator and denominator.
    pub fn radicand_count(&self) -> usize {
        let mut all: Vec<&Poly> = self.num.radicands().chain(self.den.radicands()).collect();
        all.sort();
        all.dedup();
        all.len()
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    pub fn substitute(&self, v: VarId, value: &Poly) -> Result<RationalForm, SymError> {
        RationalForm::new(self.num.substitute(v, value), self.den.substitute(v, value))
    }

    pub fn eval_f64(&self, value: &dyn Fn(VarId) -> f64) -> f64 {
        self.num.eval_f64(value) / self.den.eval_f64(value)
    }

    pub fn add(&self, rhs: &RationalForm) -> RationalForm {
        let form = if self.den == rhs.den {
            RationalForm {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            }
        } else {
            RationalForm {
                num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                den: &self.den * &rhs.den,
            }
        };
        form.normalized()
    }

    pub fn neg(&self) -> RationalForm {
        RationalForm {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &RationalForm) -> RationalForm {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &RationalForm) -> RationalForm {
        RationalForm {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
        .normalized()
    }

    pub fn div(&self, rhs: &RationalForm) -> Result<RationalForm, SymError> {
        RationalForm::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, exp: u32) -> RationalForm {
        RationalForm {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
        .normalized()
    }
}

impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.has_unit_den() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalForm({self})")
    }
}

impl From<Poly> for RationalForm {
    fn from(p: Poly) -> Self {
        RationalForm::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: char) -> Poly {
        Poly::var(VarId::new(c))
    }

    #[test]
    fn radical_products_collect() {
        let s =
            &RadicalSum::radical(Poly::one(), v('a')) + &RadicalSum::radical(Poly::one(), v('b'));
        let sq = &s * &s;
        assert_eq!(sq.poly_part(), &(&v('a') + &v('b')));
        assert_eq!(sq.num_radicals(), 1);
        assert_eq!(sq.to_string(), "a + b + 2*sqrt(a*b)");
    }

    #[test]
    fn constant_square_radicand_folds() {
        let r = RadicalSum::radical(v('a'), Poly::constant(4));
        assert_eq!(r, RadicalSum::from_poly(&v('a') * &Poly::constant(2)));
    }

    #[test]
    fn denominators_normalize() {
        let f = RationalForm::new(
            RadicalSum::from_poly(v('y')),
            RadicalSum::from_poly(&(&v('y') - &v('e')) * &Poly::constant(2)),
        )
        .unwrap();
        assert_eq!(f.to_string(), "(y)/(-2*e + 2*y)");
        let g = RationalForm::new(
            RadicalSum::from_poly(&v('a').pow(2) - &v('e').pow(2)),
            RadicalSum::from_poly(&v('a') - &v('e')),
        )
        .unwrap();
        assert_eq!(g.to_string(), "a + e");
        assert!(RationalForm::new(RadicalSum::one(), RadicalSum::zero()).is_err());
    }
}
