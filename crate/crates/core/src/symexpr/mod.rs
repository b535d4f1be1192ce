//! Expression layer: sparse polynomials, radical sums, quotient forms and
//! the text grammar they are read from.

mod parse;
mod poly;
mod radical;

pub use parse::{parse_expr, Expr, ParseError};
pub use poly::{Monomial, Poly, VarId};
pub use radical::{RadicalSum, RationalForm};

use thiserror::Error;

/// Most radicands a canonical form may carry.
pub const MAX_RADICANDS: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("division by zero")]
    DivisionByZero,
    #[error("nested radicals unsupported")]
    NestedRadical,
    #[error("radicand must be a polynomial, found `{0}`")]
    NonPolynomialRadicand(String),
    #[error("{0} distinct radicands unsupported (at most 2)")]
    TooManyRadicands(usize),
    #[error("increment `{0}` already occurs in the expression")]
    IncrementPresent(VarId),
}

fn canonical(expr: &Expr) -> Result<RationalForm, SymError> {
    Ok(match expr {
        Expr::Num(q) => RationalForm::from_poly(Poly::constant(q.clone())),
        Expr::Var(v) => RationalForm::from_poly(Poly::var(*v)),
        Expr::Neg(x) => canonical(x)?.neg(),
        Expr::Add(l, r) => canonical(l)?.add(&canonical(r)?),
        Expr::Sub(l, r) => canonical(l)?.sub(&canonical(r)?),
        Expr::Mul(l, r) => canonical(l)?.mul(&canonical(r)?),
        Expr::Div(l, r) => canonical(l)?.div(&canonical(r)?)?,
        Expr::Pow(b, k) => canonical(b)?.pow(*k),
        Expr::Sqrt(x) => {
            let inner = canonical(x)?;
            if inner.has_radicals() {
                return Err(SymError::NestedRadical);
            }
            let radicand = inner
                .as_poly()
                .ok_or_else(|| SymError::NonPolynomialRadicand(inner.to_string()))?;
            RationalForm::from_radical_sum(RadicalSum::radical(Poly::one(), radicand.clone()))
        }
    })
}

/// Expands and collects `expr` into a quotient of radical sums.
pub fn to_canonical(expr: &Expr) -> Result<RationalForm, SymError> {
    let form = canonical(expr)?;
    let count = form.radicand_count();
    if count > MAX_RADICANDS {
        return Err(SymError::TooManyRadicands(count));
    }
    Ok(form)
}

/// Parses and canonicalizes in one go.
pub fn parse_canonical(text: &str) -> Result<RationalForm, SymError> {
    to_canonical(&parse_expr(text)?)
}

/// `p(unknown + increment)`, fully expanded.
pub fn substitute_increment(p: &Poly, unknown: VarId, increment: VarId) -> Result<Poly, SymError> {
    if p.contains(increment) {
        return Err(SymError::IncrementPresent(increment));
    }
    Ok(p.substitute(unknown, &(&Poly::var(unknown) + &Poly::var(increment))))
}

/// Same as [`substitute_increment`] for quotient forms with radicals.
pub fn substitute_increment_form(
    f: &RationalForm,
    unknown: VarId,
    increment: VarId,
) -> Result<RationalForm, SymError> {
    if f.contains(increment) {
        return Err(SymError::IncrementPresent(increment));
    }
    f.substitute(unknown, &(&Poly::var(unknown) + &Poly::var(increment)))
}

/// Writes `p` as `Σ coeff_k · increment^k` with strictly increasing `k`
/// and nonzero coefficients.
pub fn collect_e_powers(p: &Poly, increment: VarId) -> Vec<(u32, Poly)> {
    p.coefficients_in(increment)
}
