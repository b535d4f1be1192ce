//! Dual numbers `re + eps·ε` with `ε² = 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::InfinitesimalError;
use crate::numeric::Rational;
use crate::symexpr::{Poly, VarId};

/// Coefficient ring for [`Dual`]. Division may be partial.
pub trait DualCoeff: Clone + PartialEq + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Exact quotient, `None` if it does not exist in the ring.
    fn try_div(&self, rhs: &Self) -> Option<Self>;
}

impl DualCoeff for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs).ok()
    }
}

impl DualCoeff for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            self.div_exact(rhs)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: DualCoeff> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Dual { re, eps }
    }

    pub fn constant(re: T) -> Self {
        Dual { re, eps: T::zero() }
    }

    /// `re + ε`, a variable seeded for differentiation.
    pub fn variable(re: T) -> Self {
        Dual { re, eps: T::one() }
    }

    pub fn powi(&self, k: u32) -> Self {
        (0..k).fold(Dual::constant(T::one()), |acc, _| &acc * self)
    }

    /// `(a + bε)/(c + dε) = a/c + (bc − ad)/c² ε`.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, InfinitesimalError> {
        if rhs.re.is_zero() {
            return Err(InfinitesimalError::DivisionByInfinitesimal);
        }
        let re = self
            .re
            .try_div(&rhs.re)
            .ok_or(InfinitesimalError::InexactDivision)?;
        let num = self.eps.mul(&rhs.re).sub(&self.re.mul(&rhs.eps));
        let eps = num
            .try_div(&rhs.re.mul(&rhs.re))
            .ok_or(InfinitesimalError::InexactDivision)?;
        Ok(Dual { re, eps })
    }
}

impl<T: DualCoeff> Add for &Dual<T> {
    type Output = Dual<T>;
    fn add(self, rhs: &Dual<T>) -> Dual<T> {
        Dual::new(self.re.add(&rhs.re), self.eps.add(&rhs.eps))
    }
}

impl<T: DualCoeff> Sub for &Dual<T> {
    type Output = Dual<T>;
    fn sub(self, rhs: &Dual<T>) -> Dual<T> {
        Dual::new(self.re.sub(&rhs.re), self.eps.sub(&rhs.eps))
    }
}

/// `(a + bε)(c + dε) = ac + (ad + bc)ε`; the `bd·ε²` term vanishes.
impl<T: DualCoeff> Mul for &Dual<T> {
    type Output = Dual<T>;
    fn mul(self, rhs: &Dual<T>) -> Dual<T> {
        Dual::new(
            self.re.mul(&rhs.re),
            self.re.mul(&rhs.eps).add(&self.eps.mul(&rhs.re)),
        )
    }
}

impl<T: DualCoeff> Neg for &Dual<T> {
    type Output = Dual<T>;
    fn neg(self) -> Dual<T> {
        Dual::new(T::zero().sub(&self.re), T::zero().sub(&self.eps))
    }
}

impl<T: DualCoeff> fmt::Display for Dual<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eps.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + ({})ε", self.re, self.eps)
        }
    }
}

/// ε-coefficient of `p(unknown + ε)`, with every other variable held fixed.
pub fn derivative_via_dual(p: &Poly, unknown: VarId) -> Poly {
    let x = Dual::variable(Poly::var(unknown));
    let mut total = Dual::constant(Poly::zero());
    for (m, c) in p.terms() {
        let mut term = Dual::constant(Poly::constant(c.clone()));
        for &(v, k) in m.powers() {
            let factor = if v == unknown {
                x.powi(k)
            } else {
                Dual::constant(Poly::var(v).pow(k))
            };
            term = &term * &factor;
        }
        total = &total + &term;
    }
    total.eps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::parse_canonical;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn poly(s: &str) -> Poly {
        parse_canonical(s).unwrap().as_poly().unwrap().clone()
    }

    #[test]
    fn ring_examples() {
        let p = &Dual::new(q(2), q(3)) * &Dual::new(q(5), q(1));
        assert_eq!(p, Dual::new(q(10), q(17)));

        let x = Dual::variable(poly("x"));
        assert_eq!(x.powi(2), Dual::new(poly("x^2"), poly("2*x")));

        let s = &Dual::new(q(1), q(1)) + &Dual::new(q(1), q(-1));
        assert_eq!(s, Dual::constant(q(2)));
    }

    #[test]
    fn division() {
        let x = Dual::new(q(10), q(17));
        let y = Dual::new(q(5), q(1));
        assert_eq!(x.checked_div(&y).unwrap(), Dual::new(q(2), q(3)));
        assert_eq!(
            x.checked_div(&Dual::new(q(0), q(1))).unwrap_err(),
            InfinitesimalError::DivisionByInfinitesimal
        );
    }

    #[test]
    fn derivative_examples() {
        let x = VarId::new('x');
        let a = VarId::new('a');
        assert_eq!(
            derivative_via_dual(&poly("x^3 - 2*x"), x),
            poly("3*x^2 - 2")
        );
        assert_eq!(derivative_via_dual(&poly("b*a - a^2"), a), poly("b - 2*a"));
        assert_eq!(derivative_via_dual(&poly("7"), x), Poly::zero());
    }
}
