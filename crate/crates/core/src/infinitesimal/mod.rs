//! Independent differentiation oracles: dual numbers and graded
//! infinitesimals reduced by the law of homogeneity.

mod dual;
mod tlh;

pub use dual::{derivative_via_dual, Dual, DualCoeff};
pub use tlh::{parse_graded, product_rule_tlh, tlh_reduce, Differential, GradedSum, Quantity};

use thiserror::Error;

use crate::numeric::ArithKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InfinitesimalError {
    #[error("division by a pure infinitesimal")]
    DivisionByInfinitesimal,
    #[error("quotient not exact in the coefficient ring")]
    InexactDivision,
    #[error("empty graded sum")]
    EmptySum,
    #[error("parse error at column {column}: {message}")]
    Parse { message: String, column: usize },
}

/// One ring operation on duals, chosen at runtime.
pub fn dual_arith<T: DualCoeff>(
    kind: ArithKind,
    x: &Dual<T>,
    y: &Dual<T>,
) -> Result<Dual<T>, InfinitesimalError> {
    Ok(match kind {
        ArithKind::Add => x + y,
        ArithKind::Sub => x - y,
        ArithKind::Mul => x * y,
        ArithKind::Div => x.checked_div(y)?,
    })
}
