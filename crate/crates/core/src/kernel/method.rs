use std::fmt;

use super::{lowest_e_power, Adequality, Derivation, DerivationTrace, KernelError, Outcome, Rule};
use crate::symexpr::{substitute_increment_form, to_canonical, Expr, Poly, VarId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremumResult {
    /// Condition left after suppression; free of the increment.
    pub condition: Poly,
    pub outcome: Outcome,
    /// Power of the increment divided out.
    pub e_power_divided: u32,
    pub trace: DerivationTrace,
}

/// Runs an adequality through cross-multiplication and radical elimination
/// (when needed), cancellation, division, suppression and solving.
pub fn derive_condition(mut d: Derivation, adq: Adequality) -> Result<ExtremumResult, KernelError> {
    let mut adq = adq;
    if !adq.has_unit_denominators() {
        adq = d.cross_multiply(&adq)?;
    }
    if adq.has_radicals() {
        adq = d.eliminate_radicals(&adq)?;
    }
    let diff = d.cancel_common(&adq)?;
    let k = lowest_e_power(&diff, d.increment())?;
    let quotient = d.divide_by_e(&diff, k)?;
    let condition = d.suppress_e_terms(&quotient)?;
    let outcome = d.solve_condition(&condition);
    Ok(ExtremumResult {
        condition,
        outcome,
        e_power_divided: k,
        trace: d.into_trace(),
    })
}

/// The full method for maxima and minima: form `f(a+e)`, adequate it to
/// `f(a)`, then [`derive_condition`].
pub fn fermat_max_min(
    f: &Expr,
    unknown: VarId,
    increment: VarId,
) -> Result<ExtremumResult, KernelError> {
    let mut d = Derivation::new(unknown, increment)?;
    let form = to_canonical(f)?;
    let shifted = substitute_increment_form(&form, unknown, increment)?;
    d.assume_positive_increment();
    d.trace_mut().push(
        Rule::Substitute,
        format!("f({unknown}) = {form}"),
        format!("f({unknown} + {increment}) = {shifted}"),
        format!("replace {unknown} by {unknown} + {increment}"),
    );
    let adq = d.adequate(shifted, form);
    derive_condition(d, adq)
}

/// Order of vanishing of `f(a* + e) − f(a*)` at `e = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(u32),
    /// The difference vanishes identically.
    Infinite,
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(k) => write!(f, "{k}"),
            Multiplicity::Infinite => write!(f, "infinite"),
        }
    }
}

/// Multiplicity of `e = 0` as a root of `f(a* + e) − f(a*)`, by exact
/// expansion.
pub fn double_root_check(
    f: &Expr,
    a_star: &Poly,
    unknown: VarId,
    increment: VarId,
) -> Result<Multiplicity, KernelError> {
    let form = to_canonical(f)?;
    let p = form.as_poly().ok_or(KernelError::NonPolynomial)?;
    double_root_check_poly(p, a_star, unknown, increment)
}

/// [`double_root_check`] for a function already in polynomial form.
pub fn double_root_check_poly(
    p: &Poly,
    a_star: &Poly,
    unknown: VarId,
    increment: VarId,
) -> Result<Multiplicity, KernelError> {
    if p.contains(increment) || a_star.contains(increment) {
        return Err(crate::symexpr::SymError::IncrementPresent(increment).into());
    }
    let shifted = p.substitute(unknown, &(a_star + &Poly::var(increment)));
    let diff = &shifted - &p.substitute(unknown, a_star);
    if diff.is_zero() {
        return Ok(Multiplicity::Infinite);
    }
    Ok(Multiplicity::Finite(lowest_e_power(&diff, increment)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Rational;
    use crate::symexpr::{parse_canonical, parse_expr};

    const A: VarId = VarId::new('a');
    const E: VarId = VarId::new('e');

    fn poly(s: &str) -> Poly {
        parse_canonical(s).unwrap().as_poly().unwrap().clone()
    }

    fn run(s: &str) -> ExtremumResult {
        fermat_max_min(&parse_expr(s).unwrap(), A, E).unwrap()
    }

    #[test]
    fn first_problem_splits_segment_in_half() {
        let r = run("b*a - a^2");
        assert_eq!(r.condition, poly("b - 2*a"));
        assert_eq!(r.outcome.roots()[0].value, poly("b/2"));
        assert_eq!(r.e_power_divided, 1);
        assert!(r.trace.is_well_ordered());
        let rules: Vec<_> = r.trace.steps().iter().map(|s| s.rule).collect();
        assert_eq!(
            rules,
            [
                Rule::Assume,
                Rule::Substitute,
                Rule::Adequate,
                Rule::Cancel,
                Rule::Divide,
                Rule::Suppress,
                Rule::Solve
            ]
        );
    }

    #[test]
    fn cubic_and_square() {
        let r = run("a^3 - 12*a");
        assert_eq!(r.condition, poly("3*a^2 - 12"));
        let roots: Vec<_> = r
            .outcome
            .roots()
            .iter()
            .map(|x| x.as_rational().unwrap())
            .collect();
        assert_eq!(roots, vec![Rational::from(-2), Rational::from(2)]);

        let r = run("a^2");
        assert_eq!(r.condition, poly("2*a"));
        assert_eq!(r.outcome.roots()[0].as_rational(), Some(Rational::zero()));
    }

    #[test]
    fn constant_function_is_degenerate() {
        let err = fermat_max_min(&parse_expr("7").unwrap(), A, E).unwrap_err();
        assert_eq!(err, KernelError::DegenerateAdequality);
    }

    #[test]
    fn nested_radicals_propagate() {
        let err = fermat_max_min(&parse_expr("sqrt(sqrt(a))").unwrap(), A, E).unwrap_err();
        assert_eq!(err.to_string(), "nested radicals unsupported");
    }

    #[test]
    fn radical_function() {
        // √(a) + √(b − a): stationary at a = b/2
        let r = run("sqrt(a) + sqrt(b - a)");
        assert!(r.trace.contains(Rule::Square));
        assert!(r.outcome.roots().iter().any(|x| x.value == poly("b/2")));
    }

    #[test]
    fn quotient_function() {
        // a/(a^2 + 1) is extremal at a = ±1
        let r = run("a/(a^2+1)");
        assert!(r.trace.contains(Rule::CrossMultiply));
        let roots: Vec<_> = r
            .outcome
            .roots()
            .iter()
            .map(|x| x.as_rational().unwrap())
            .collect();
        assert_eq!(roots, vec![Rational::from(-1), Rational::from(1)]);
    }

    #[test]
    fn double_roots() {
        let f = parse_expr("b*a - a^2").unwrap();
        assert_eq!(
            double_root_check(&f, &poly("b/2"), A, E),
            Ok(Multiplicity::Finite(2))
        );
        assert_eq!(
            double_root_check(&f, &poly("b/3"), A, E),
            Ok(Multiplicity::Finite(1))
        );
        let c = parse_expr("5").unwrap();
        assert_eq!(
            double_root_check(&c, &poly("1"), A, E),
            Ok(Multiplicity::Infinite)
        );
        let r = parse_expr("sqrt(a)").unwrap();
        assert_eq!(
            double_root_check(&r, &poly("1"), A, E),
            Err(KernelError::NonPolynomial)
        );
    }
}
