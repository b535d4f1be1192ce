//! The six-step method of adequality as explicit, traceable rewrites.
//!
//! A [`Derivation`] owns the roles (unknown and increment) and the trace.
//! Every rewrite appends a step; suppression refuses to run unless a
//! division has already been recorded.

mod method;
mod radicals;
mod solve;
mod trace;

pub use method::{
    derive_condition, double_root_check, double_root_check_poly, fermat_max_min, ExtremumResult,
    Multiplicity,
};
pub use radicals::{squaring_rounds, SquaringRound};
pub use solve::{solve_condition, Outcome, Root};
pub use trace::{DerivationTrace, Rule, TraceStep};

use std::fmt;

use thiserror::Error;

use crate::symexpr::{Monomial, Poly, RationalForm, SymError, VarId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("unknown and increment must differ (both `{0}`)")]
    SameRoles(VarId),
    #[error("radical in a denominator unsupported")]
    RadicalDenominator,
    #[error("{0} radical terms on one side unsupported (at most 2)")]
    TooManyRadicals(usize),
    #[error("radical elimination does not terminate for this adequality")]
    EliminationStalled,
    #[error("radicals remain; eliminate them before cancelling")]
    RadicalsRemain,
    #[error("degenerate adequality")]
    DegenerateAdequality,
    #[error("nothing to divide; adequality yields no condition")]
    NothingToDivide,
    #[error("{increment}^{power} does not divide the difference")]
    NotDivisible { increment: VarId, power: u32 },
    #[error("suppression before division: the increment must be divided out before its remaining terms are suppressed")]
    SuppressBeforeDivide,
    #[error("expression is not a polynomial")]
    NonPolynomial,
}

/// `lhs =AD rhs` with designated unknown and increment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adequality {
    pub lhs: RationalForm,
    pub rhs: RationalForm,
    pub unknown: VarId,
    pub increment: VarId,
}

impl Adequality {
    pub fn is_polynomial(&self) -> bool {
        self.lhs.is_polynomial() && self.rhs.is_polynomial()
    }

    pub fn has_radicals(&self) -> bool {
        self.lhs.has_radicals() || self.rhs.has_radicals()
    }

    pub fn has_unit_denominators(&self) -> bool {
        self.lhs.has_unit_den() && self.rhs.has_unit_den()
    }
}

impl fmt::Display for Adequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} =AD {}", self.lhs, self.rhs)
    }
}

/// Largest `k` such that `increment^k` divides every term of `d`.
pub fn lowest_e_power(d: &Poly, increment: VarId) -> Result<u32, KernelError> {
    d.terms()
        .map(|(m, _)| m.exponent(increment))
        .min()
        .ok_or(KernelError::DegenerateAdequality)
}

/// One derivation in progress.
#[derive(Debug, Clone)]
pub struct Derivation {
    unknown: VarId,
    increment: VarId,
    trace: DerivationTrace,
}

impl Derivation {
    pub fn new(unknown: VarId, increment: VarId) -> Result<Self, KernelError> {
        if unknown == increment {
            return Err(KernelError::SameRoles(unknown));
        }
        Ok(Derivation {
            unknown,
            increment,
            trace: DerivationTrace::new(),
        })
    }

    pub fn unknown(&self) -> VarId {
        self.unknown
    }

    pub fn increment(&self) -> VarId {
        self.increment
    }

    pub fn trace(&self) -> &DerivationTrace {
        &self.trace
    }

    pub fn trace_mut(&mut self) -> &mut DerivationTrace {
        &mut self.trace
    }

    pub fn into_trace(self) -> DerivationTrace {
        self.trace
    }

    /// Records the sign convention for the increment. The algebra does not
    /// depend on it.
    pub fn assume_positive_increment(&mut self) {
        self.trace.push(
            Rule::Assume,
            "",
            format!("{} > 0", self.increment),
            format!("{} treated as positive: annotation only", self.increment),
        );
    }

    /// Sets the two sides adequal. Nothing is rewritten yet.
    pub fn adequate(&mut self, lhs: RationalForm, rhs: RationalForm) -> Adequality {
        let adq = Adequality {
            lhs,
            rhs,
            unknown: self.unknown,
            increment: self.increment,
        };
        self.trace.push(Rule::Adequate, "", adq.to_string(), "");
        adq
    }

    /// `nL/dL =AD nR/dR` becomes `nL·dR =AD nR·dL`.
    pub fn cross_multiply(&mut self, adq: &Adequality) -> Result<Adequality, KernelError> {
        let den_l = adq
            .lhs
            .den()
            .as_poly()
            .ok_or(KernelError::RadicalDenominator)?;
        let den_r = adq
            .rhs
            .den()
            .as_poly()
            .ok_or(KernelError::RadicalDenominator)?;
        let out = Adequality {
            lhs: RationalForm::from_radical_sum(adq.lhs.num().scale(den_r)),
            rhs: RationalForm::from_radical_sum(adq.rhs.num().scale(den_l)),
            ..adq.clone()
        };
        self.trace
            .push(Rule::CrossMultiply, adq.to_string(), out.to_string(), "");
        Ok(out)
    }

    /// Isolates one radical and squares, until both sides are polynomial.
    pub fn eliminate_radicals(&mut self, adq: &Adequality) -> Result<Adequality, KernelError> {
        if !adq.has_unit_denominators() {
            return Err(KernelError::RadicalDenominator);
        }
        let rounds = squaring_rounds(adq.lhs.num(), adq.rhs.num())?;
        let mut current = adq.clone();
        for round in rounds {
            let next = Adequality {
                lhs: RationalForm::from_radical_sum(round.squared_lhs.clone()),
                rhs: RationalForm::from_radical_sum(round.squared_rhs.clone()),
                ..adq.clone()
            };
            let note = if round.scale.is_one() {
                format!("square {} =AD {}", round.isolated_lhs, round.isolated_rhs)
            } else {
                format!(
                    "divide by {} and square {} =AD {}",
                    round.scale, round.isolated_lhs, round.isolated_rhs
                )
            };
            self.trace
                .push(Rule::Square, current.to_string(), next.to_string(), note);
            current = next;
        }
        Ok(current)
    }

    /// `lhs − rhs`, expanded. Whether every remaining term carries the
    /// increment is checked and noted.
    pub fn cancel_common(&mut self, adq: &Adequality) -> Result<Poly, KernelError> {
        let (Some(l), Some(r)) = (adq.lhs.as_poly(), adq.rhs.as_poly()) else {
            return Err(KernelError::RadicalsRemain);
        };
        let diff = l - r;
        let e = self.increment;
        let all_have_e = diff.terms().all(|(m, _)| m.exponent(e) > 0);
        let note = if diff.is_zero() {
            "both sides identical".to_string()
        } else if all_have_e {
            format!("every remaining term contains {e}")
        } else {
            format!("some remaining terms do not contain {e}; proceeding")
        };
        self.trace
            .push(Rule::Cancel, adq.to_string(), diff.to_string(), note);
        Ok(diff)
    }

    /// Exact division by `increment^k`.
    pub fn divide_by_e(&mut self, d: &Poly, k: u32) -> Result<Poly, KernelError> {
        if k == 0 {
            return Err(KernelError::NothingToDivide);
        }
        let e = self.increment;
        let q =
            d.div_monomial(&Monomial::from_powers([(e, k)]))
                .ok_or(KernelError::NotDivisible {
                    increment: e,
                    power: k,
                })?;
        let note = if k == 1 {
            format!("divide by {e}")
        } else {
            format!("divide by {e}^{k}, the highest power of {e} common to all terms")
        };
        self.trace
            .push(Rule::Divide, d.to_string(), q.to_string(), note);
        Ok(q)
    }

    /// Deletes every term that still contains the increment.
    pub fn suppress_e_terms(&mut self, q: &Poly) -> Result<Poly, KernelError> {
        if !self.trace.contains(Rule::Divide) {
            return Err(KernelError::SuppressBeforeDivide);
        }
        let e = self.increment;
        let kept = q.without_var_terms(e);
        let note = if &kept == q {
            format!("no terms contain {e}; nothing to suppress")
        } else {
            format!("suppress the terms still containing {e}")
        };
        self.trace
            .push(Rule::Suppress, q.to_string(), kept.to_string(), note);
        Ok(kept)
    }

    pub fn solve_condition(&mut self, c: &Poly) -> Outcome {
        let outcome = solve_condition(c, self.unknown);
        self.trace.push(
            Rule::Solve,
            format!("{c} = 0"),
            outcome.describe(self.unknown),
            "",
        );
        outcome
    }
}
