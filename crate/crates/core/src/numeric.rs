//! Exact numbers: arbitrary-precision integers and normalized rationals.
//!
//! A [`Rational`] is always stored gcd-reduced with a positive denominator,
//! so structural equality coincides with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal `{0}`")]
    Parse(String),
}

/// The four field operations, for callers that pick one at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

/// A normalized fraction `num/den` with `gcd(|num|, den) = 1` and `den > 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` in lowest terms.
    pub fn new(num: impl Into<Integer>, den: impl Into<Integer>) -> Result<Self, NumericError> {
        let den = den.into();
        if den.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<Integer>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, NumericError> {
        if rhs.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational, NumericError> {
        Rational::one().checked_div(self)
    }

    pub fn pow(&self, exp: u32) -> Rational {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational(BigRational::new(n, d)))
        } else {
            None
        }
    }

    pub fn floor(&self) -> Integer {
        self.0.floor().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

/// Applies one field operation; division by zero is reported, never panics.
pub fn arith(kind: ArithKind, x: &Rational, y: &Rational) -> Result<Rational, NumericError> {
    Ok(match kind {
        ArithKind::Add => x + y,
        ArithKind::Sub => x - y,
        ArithKind::Mul => x * y,
        ArithKind::Div => x.checked_div(y)?,
    })
}

/// Greatest common divisor of two integers, always nonnegative.
pub fn gcd(a: &Integer, b: &Integer) -> Integer {
    a.gcd(b)
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<Integer> for Rational {
    fn from(n: Integer) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_integer(s: &str) -> Option<Integer> {
    let s = s.trim();
    let (neg, digits) =
        if let Some(rest) = s.strip_prefix('-').or_else(|| s.strip_prefix('\u{2212}')) {
            (true, rest)
        } else {
            (false, s.strip_prefix('+').unwrap_or(s))
        };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: Integer = digits.parse().ok()?;
    Some(if neg { -n } else { n })
}

/// Accepts `n`, `n/d` and `n.ddd`, with an optional sign (ASCII `-` or `−`).
impl FromStr for Rational {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NumericError::Parse(s.to_string());
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let num = parse_integer(n).ok_or_else(bad)?;
            let den = parse_integer(d).ok_or_else(bad)?;
            return Rational::new(num, den);
        }
        if let Some((whole, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let neg = whole.starts_with('-') || whole.starts_with('\u{2212}');
            let whole_abs =
                if whole.is_empty() || whole == "-" || whole == "\u{2212}" || whole == "+" {
                    Integer::zero()
                } else {
                    parse_integer(whole).ok_or_else(bad)?.abs()
                };
            let scale = num_traits::pow(Integer::from(10), frac.len());
            let frac_n: Integer = frac.parse().map_err(|_| bad())?;
            let mag = whole_abs * &scale + frac_n;
            return Rational::new(if neg { -mag } else { mag }, scale);
        }
        parse_integer(t).map(Rational::from_integer).ok_or_else(bad)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the primitive numeric types; use `checked_div` otherwise.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}
