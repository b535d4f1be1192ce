//! Graded infinitesimal sums and the law of homogeneity: only the terms of
//! lowest infinitesimal order are kept.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::InfinitesimalError;
use crate::numeric::Rational;
use crate::symexpr::{Poly, VarId};

/// `d^order var`; `dx` has order 1, `ddy` order 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Differential {
    pub var: VarId,
    pub order: u32,
}

impl Differential {
    pub fn new(var: VarId, order: u32) -> Self {
        assert!(order > 0, "differential order must be positive");
        Differential { var, order }
    }
}

impl fmt::Display for Differential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for _ in 0..self.order {
            f.write_str("d")?;
        }
        write!(f, "{}", self.var)
    }
}

/// Sorted product of differentials; the empty tag is the finite part.
type Tag = Vec<Differential>;

fn grade_of(tag: &Tag) -> u32 {
    tag.iter().map(|d| d.order).sum()
}

fn tag_mul(a: &Tag, b: &Tag) -> Tag {
    let mut t: Tag = a.iter().chain(b).copied().collect();
    t.sort();
    t
}

/// Sum of `coefficient · tag` terms, collected by tag.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedSum {
    terms: BTreeMap<Tag, Poly>,
}

impl GradedSum {
    pub fn zero() -> Self {
        GradedSum::default()
    }

    pub fn from_poly(p: Poly) -> Self {
        let mut s = GradedSum::zero();
        s.insert(Vec::new(), p);
        s
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        GradedSum::from_poly(Poly::constant(c))
    }

    pub fn symbol(v: VarId) -> Self {
        GradedSum::from_poly(Poly::var(v))
    }

    pub fn differential(var: VarId, order: u32) -> Self {
        let mut s = GradedSum::zero();
        s.insert(vec![Differential::new(var, order)], Poly::one());
        s
    }

    fn insert(&mut self, tag: Tag, coeff: Poly) {
        let slot = self.terms.entry(tag).or_insert_with(Poly::zero);
        *slot = &*slot + &coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(coefficient, tag, grade)`, lowest grade first.
    pub fn terms(&self) -> Vec<(&Poly, &[Differential], u32)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(t, c)| (c, t.as_slice(), grade_of(t)))
            .collect();
        v.sort_by(|x, y| x.2.cmp(&y.2).then_with(|| y.1.cmp(x.1)));
        v
    }

    pub fn min_grade(&self) -> Option<u32> {
        self.terms.keys().map(grade_of).min()
    }

    pub fn max_grade(&self) -> Option<u32> {
        self.terms.keys().map(grade_of).max()
    }

    pub fn coefficient(&self, tag: &[Differential]) -> Poly {
        let mut t = tag.to_vec();
        t.sort();
        self.terms.get(&t).cloned().unwrap_or_else(Poly::zero)
    }
}

impl Add for &GradedSum {
    type Output = GradedSum;
    fn add(self, rhs: &GradedSum) -> GradedSum {
        let mut out = self.clone();
        for (t, c) in &rhs.terms {
            out.insert(t.clone(), c.clone());
        }
        out
    }
}

impl Neg for &GradedSum {
    type Output = GradedSum;
    fn neg(self) -> GradedSum {
        GradedSum {
            terms: self.terms.iter().map(|(t, c)| (t.clone(), -c)).collect(),
        }
    }
}

impl Sub for &GradedSum {
    type Output = GradedSum;
    fn sub(self, rhs: &GradedSum) -> GradedSum {
        self + &(-rhs)
    }
}

impl Mul for &GradedSum {
    type Output = GradedSum;
    fn mul(self, rhs: &GradedSum) -> GradedSum {
        let mut out = GradedSum::zero();
        for (ta, ca) in &self.terms {
            for (tb, cb) in &rhs.terms {
                out.insert(tag_mul(ta, tb), ca * cb);
            }
        }
        out
    }
}

fn format_term(coeff: &Poly, tag: &[Differential]) -> String {
    if tag.is_empty() {
        return coeff.to_string();
    }
    let tag_text = tag
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("*");
    match coeff.constant_value() {
        Some(c) if c.is_one() => tag_text,
        Some(c) if (-&c).is_one() => format!("-{tag_text}"),
        _ if coeff.num_terms() == 1 => format!("{coeff}*{tag_text}"),
        _ => format!("({coeff})*{tag_text}"),
    }
}

impl fmt::Display for GradedSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (c, t, _)) in self.terms().into_iter().enumerate() {
            let s = format_term(c, t);
            match (i, s.strip_prefix('-')) {
                (0, _) => f.write_str(&s)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {s}")?,
            }
        }
        Ok(())
    }
}

/// Keeps only the terms of minimum grade.
pub fn tlh_reduce(s: &GradedSum) -> Result<GradedSum, InfinitesimalError> {
    let g = s.min_grade().ok_or(InfinitesimalError::EmptySum)?;
    Ok(GradedSum {
        terms: s
            .terms
            .iter()
            .filter(|(t, _)| grade_of(t) == g)
            .map(|(t, c)| (t.clone(), c.clone()))
            .collect(),
    })
}

/// A factor in the product rule: a symbol with differential `d·var`, or a
/// constant whose differential is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    Symbol(VarId),
    Constant(Rational),
}

impl Quantity {
    fn value(&self) -> GradedSum {
        match self {
            Quantity::Symbol(v) => GradedSum::symbol(*v),
            Quantity::Constant(c) => GradedSum::constant(c.clone()),
        }
    }

    fn increment(&self) -> GradedSum {
        match self {
            Quantity::Symbol(v) => GradedSum::differential(*v, 1),
            Quantity::Constant(_) => GradedSum::zero(),
        }
    }
}

/// `(u + du)(v + dv) − uv`, reduced. Zero when both factors are constant.
pub fn product_rule_tlh(u: &Quantity, v: &Quantity) -> GradedSum {
    let (u0, v0) = (u.value(), v.value());
    let grown = &(&u0 + &u.increment()) * &(&v0 + &v.increment());
    let diff = &grown - &(&u0 * &v0);
    tlh_reduce(&diff).unwrap_or_default()
}

// Parser for graded sums. A letter run is split left to right: a block of
// `d`s followed by a letter is a differential of that order, any other
// letter is a symbol. So `udv` reads as `u*dv` and `ddy` as a second-order
// differential. `d` therefore never stands for a symbol.

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Sym(VarId),
    Diff(Differential),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn perr(message: impl Into<String>, column: usize) -> InfinitesimalError {
    InfinitesimalError::Parse {
        message: message.into(),
        column,
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, InfinitesimalError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push((Tok::Plus, col));
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push((Tok::Minus, col));
                i += 1;
            }
            '*' | '\u{b7}' => {
                out.push((Tok::Star, col));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_digit() || chars[i] == '/' || chars[i] == '.')
                {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let q = lit
                    .parse::<Rational>()
                    .map_err(|_| perr(format!("bad number `{lit}`"), col))?;
                out.push((Tok::Num(q), col));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                let mut ds = 0;
                while i < chars.len() && chars[i] == 'd' {
                    ds += 1;
                    i += 1;
                }
                if ds == 0 {
                    out.push((Tok::Sym(VarId::new(c)), col));
                    i += 1;
                } else if i < chars.len() && chars[i].is_ascii_alphabetic() {
                    out.push((
                        Tok::Diff(Differential::new(VarId::new(chars[i]), ds)),
                        start + 1,
                    ));
                    i += 1;
                } else {
                    return Err(perr("`d` must be followed by a variable", start + 1));
                }
            }
            other => return Err(perr(format!("unexpected character `{other}`"), col)),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn expr(&mut self) -> Result<GradedSum, InfinitesimalError> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GradedSum, InfinitesimalError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                // juxtaposition: `du dv`, `2u`
                Some(Tok::Num(_) | Tok::Sym(_) | Tok::Diff(_) | Tok::LParen) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<GradedSum, InfinitesimalError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let col = self.column();
        match self.peek() {
            Some(Tok::Num(q)) if q.is_integer() && !q.is_negative() => {
                let k: u32 = q
                    .numer()
                    .try_into()
                    .map_err(|_| perr("exponent too large", col))?;
                self.pos += 1;
                Ok((0..k).fold(GradedSum::constant(1), |acc, _| &acc * &base))
            }
            _ => Err(perr("expected a natural exponent", col)),
        }
    }

    fn atom(&mut self) -> Result<GradedSum, InfinitesimalError> {
        let col = self.column();
        let Some((tok, _)) = self.toks.get(self.pos).cloned() else {
            return Err(perr("unexpected end of input", col));
        };
        self.pos += 1;
        match tok {
            Tok::Num(q) => Ok(GradedSum::constant(q)),
            Tok::Sym(v) => Ok(GradedSum::symbol(v)),
            Tok::Diff(d) => Ok(GradedSum::differential(d.var, d.order)),
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(perr("expected `)`", self.column()));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(perr("unexpected token", col)),
        }
    }
}

/// Parses text such as `u*dv + v*du + du*dv` or `a + dx` into a graded sum.
pub fn parse_graded(text: &str) -> Result<GradedSum, InfinitesimalError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.chars().count() + 1,
    };
    let s = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(perr("unexpected token", p.column()));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    const U: VarId = VarId::new('u');
    const V: VarId = VarId::new('v');

    fn reduce(s: &str) -> String {
        tlh_reduce(&parse_graded(s).unwrap()).unwrap().to_string()
    }

    #[test]
    fn homogeneity_identities() {
        assert_eq!(reduce("a + dx"), "a");
        assert_eq!(reduce("dx + ddy"), "dx");
        assert_eq!(reduce("u*dv + v*du + du*dv"), "u*dv + v*du");
        assert_eq!(reduce("udv+vdu+du dv"), "u*dv + v*du");
    }

    #[test]
    fn grades() {
        let s = parse_graded("ddy*dx + x").unwrap();
        assert_eq!(s.min_grade(), Some(0));
        assert_eq!(s.max_grade(), Some(3));
        assert_eq!(
            tlh_reduce(&GradedSum::zero()).unwrap_err(),
            InfinitesimalError::EmptySum
        );
    }

    #[test]
    fn product_rule() {
        let uv = product_rule_tlh(&Quantity::Symbol(U), &Quantity::Symbol(V));
        assert_eq!(uv, parse_graded("u*dv + v*du").unwrap());
        let uu = product_rule_tlh(&Quantity::Symbol(U), &Quantity::Symbol(U));
        assert_eq!(uu.to_string(), "2*u*du");
        let u1 = product_rule_tlh(&Quantity::Symbol(U), &Quantity::Constant(Rational::one()));
        assert_eq!(u1.to_string(), "du");
        let cc = product_rule_tlh(&Quantity::Constant(2.into()), &Quantity::Constant(3.into()));
        assert!(cc.is_zero());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_graded("a + d"),
            Err(InfinitesimalError::Parse { column: 5, .. })
        ));
        assert!(matches!(
            parse_graded("a + $"),
            Err(InfinitesimalError::Parse { column: 5, .. })
        ));
        assert!(parse_graded("(a + dx").is_err());
        assert_eq!(
            parse_graded("(u + du)^2 - u^2").unwrap().to_string(),
            "2*u*du + du*du"
        );
    }
}
