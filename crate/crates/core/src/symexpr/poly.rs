//! Sparse multivariate polynomials over [`Rational`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::numeric::Rational;

/// A single-letter variable name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(char);

impl VarId {
    /// Panics unless `name` is an ASCII letter.
    pub const fn new(name: char) -> Self {
        assert!(
            name.is_ascii_alphabetic(),
            "variables are single ASCII letters"
        );
        VarId(name)
    }

    pub fn try_new(name: char) -> Option<Self> {
        name.is_ascii_alphabetic().then_some(VarId(name))
    }

    pub fn name(self) -> char {
        self.0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Power product of variables. Entries are sorted by variable and carry
/// nonzero exponents only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, k) in powers {
            *map.entry(v).or_insert(0) += k;
        }
        Monomial(map.into_iter().filter(|&(_, k)| k > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn powers(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, k)| k).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, k)| k)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_powers(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for &(v, k) in &other.0 {
            if self.exponent(v) < k {
                return None;
            }
        }
        for &(v, k) in &self.0 {
            let rest = k - other.exponent(v);
            if rest > 0 {
                out.push((v, rest));
            }
        }
        Some(Monomial(out))
    }

    pub fn without(&self, v: VarId) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }

    fn halve(&self) -> Option<Monomial> {
        self.0
            .iter()
            .map(|&(v, k)| (k % 2 == 0).then_some((v, k / 2)))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

/// Graded lexicographic order with `a > b > c > …`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let (vl, kl) = self.0.get(i).copied().unwrap_or((VarId('~'), 0));
            let (vr, kr) = other.0.get(j).copied().unwrap_or((VarId('~'), 0));
            match vl.cmp(&vr) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match kl.cmp(&kr) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    ord => return ord,
                },
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (idx, &(v, k)) in self.0.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if k == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{k}")?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial: monomial → nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        Poly::term(c.into(), Monomial::one())
    }

    pub fn var(v: VarId) -> Self {
        Poly::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms
            .keys()
            .flat_map(|m| m.powers().iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Coefficients of `v^k`, ascending in `k`, zero coefficients omitted.
    pub fn coefficients_in(&self, v: VarId) -> Vec<(u32, Poly)> {
        let mut by_degree: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_degree
                .entry(m.exponent(v))
                .or_default()
                .add_term(m.without(v), c);
        }
        by_degree
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .collect()
    }

    /// Replaces every occurrence of `v` by `value`, expanding fully.
    pub fn substitute(&self, v: VarId, value: &Poly) -> Poly {
        let mut powers: Vec<Poly> = vec![Poly::one()];
        let mut out = Poly::zero();
        for (k, coeff) in self.coefficients_in(v) {
            while powers.len() <= k as usize {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out = out + &coeff * &powers[k as usize];
        }
        out
    }

    /// Partial evaluation: assigned variables become constants.
    pub fn eval(&self, assignment: &BTreeMap<VarId, Rational>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for &(v, k) in m.powers() {
                match assignment.get(&v) {
                    Some(val) => coeff *= &val.pow(k),
                    None => rest.push((v, k)),
                }
            }
            out.add_term(Monomial(rest), &coeff);
        }
        out
    }

    pub fn eval_f64(&self, value: &dyn Fn(VarId) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.powers()
                    .iter()
                    .fold(c.to_f64(), |acc, &(v, k)| acc * value(v).powi(k as i32))
            })
            .sum()
    }

    /// Drops every term in which `v` occurs.
    pub fn without_var_terms(&self, v: VarId) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Divides by the monomial `m`, or `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (t, c) in &self.terms {
            terms.insert(t.div(m)?, c.clone());
        }
        Some(Poly { terms })
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves
    /// a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lead_m, lead_c) = divisor.leading_term()?;
        let (lead_m, lead_c) = (lead_m.clone(), lead_c.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lead_m)?;
            let qc = c / &lead_c;
            let step = Poly::term(qc, qm);
            rem = rem - &step * divisor;
            quot = quot + step;
        }
        Some(quot)
    }

    /// Exact square root, if `self` is the square of a polynomial. The root
    /// with positive leading coefficient is returned.
    pub fn sqrt_exact(&self) -> Option<Poly> {
        let Some((lead_m, lead_c)) = self.leading_term() else {
            return Some(Poly::zero());
        };
        let root_m = lead_m.halve()?;
        let root_c = lead_c.sqrt_exact()?;
        let mut root = Poly::term(root_c.clone(), root_m.clone());
        let twice_lead_c = &root_c + &root_c;
        loop {
            let rem = self - &(&root * &root);
            let Some((m, c)) = rem.leading_term() else {
                return Some(root);
            };
            let next_m = m.div(&root_m)?;
            if next_m >= root_m {
                return None;
            }
            root = root + Poly::term(c / &twice_lead_c, next_m);
        }
    }
}

/// Total order used to sort radicands: descending terms compared in turn.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms().cmp(other.terms())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else if mag.is_integer() {
                write!(f, "{mag}*{m}")?;
            } else if mag.numer() == &crate::numeric::Integer::from(1) {
                write!(f, "{m}/{}", mag.denom())?;
            } else {
                write!(f, "{}*{m}/{}", mag.numer(), mag.denom())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ml, cl) in &self.terms {
            for (mr, cr) in &rhs.terms {
                out.add_term(ml.mul(mr), &(cl * cr));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $trait::$method(self, &rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<VarId> for Poly {
    fn from(v: VarId) -> Self {
        Poly::var(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: VarId = VarId::new('a');
    const B: VarId = VarId::new('b');
    const E: VarId = VarId::new('e');

    fn a() -> Poly {
        Poly::var(A)
    }
    fn b() -> Poly {
        Poly::var(B)
    }
    fn e() -> Poly {
        Poly::var(E)
    }

    #[test]
    fn graded_lex_order() {
        let a2 = Monomial::from_powers([(A, 2)]);
        let ab = Monomial::from_powers([(A, 1), (B, 1)]);
        let b2 = Monomial::from_powers([(B, 2)]);
        let a = Monomial::var(A);
        assert!(a2 > ab);
        assert!(ab > b2);
        assert!(b2 > a);
        assert!(a > Monomial::one());
    }

    #[test]
    fn prints_in_canonical_order() {
        let f = &(&b() * &a()) - &a().pow(2);
        let shifted = f.substitute(A, &(&a() + &e()));
        assert_eq!(shifted.to_string(), "-a^2 + a*b - 2*a*e + b*e - e^2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(
            Poly::constant(Rational::new(-1, 2).unwrap()).to_string(),
            "-1/2"
        );
    }

    #[test]
    fn exact_division() {
        let p = &(&a() - &b()) * &(&a() + &e());
        assert_eq!(p.div_exact(&(&a() - &b())), Some(&a() + &e()));
        assert_eq!((&a() + &Poly::one()).div_exact(&a()), None);
    }

    #[test]
    fn square_roots() {
        let s = &(&a() * &Poly::constant(3)) - &(&b() * &e());
        assert_eq!(s.pow(2).sqrt_exact().map(|r| r.pow(2)), Some(s.pow(2)));
        assert_eq!((&a().pow(2) + &Poly::one()).sqrt_exact(), None);
        assert_eq!(
            Poly::constant(4).pow(1).sqrt_exact(),
            Some(Poly::constant(2))
        );
        assert_eq!(Poly::var(A).sqrt_exact(), None);
    }

    #[test]
    fn coefficients_by_power() {
        let p = &(&Poly::constant(5) * &(&a() * &e().pow(2))) + &e().pow(3);
        let c = p.coefficients_in(E);
        assert_eq!(c, vec![(2, &Poly::constant(5) * &a()), (3, Poly::one())]);
    }
}
