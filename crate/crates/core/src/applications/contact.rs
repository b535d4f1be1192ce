//! Intersections of a curve `F(x, y) = 0` with a line, and their
//! multiplicities, by exact rational root finding.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::ApplicationError;
use crate::numeric::Rational;
use crate::symexpr::{Monomial, Poly, VarId};

const X: VarId = VarId::new('x');
const Y: VarId = VarId::new('y');

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intersection {
    pub x: Rational,
    pub multiplicity: u32,
}

/// Dense coefficients, lowest degree first; `None` if `p` has other variables.
fn dense(p: &Poly, var: VarId) -> Option<Vec<Rational>> {
    let mut out = vec![Rational::zero(); p.degree_in(var) as usize + 1];
    for (m, c) in p.terms() {
        if m.powers().iter().any(|&(v, _)| v != var) {
            return None;
        }
        out[m.exponent(var) as usize] = c.clone();
    }
    Some(out)
}

/// Divides by `(x − r)` when exact.
fn deflate(coeffs: &[Rational], r: &Rational) -> Option<Vec<Rational>> {
    let n = coeffs.len();
    if n < 2 {
        return None;
    }
    let mut q = vec![Rational::zero(); n - 1];
    let mut carry = Rational::zero();
    for i in (1..n).rev() {
        carry = &coeffs[i] + &(&carry * r);
        q[i - 1] = carry.clone();
    }
    let rem = &coeffs[0] + &(&carry * r);
    rem.is_zero().then_some(q)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Distinct rational roots of a univariate polynomial with multiplicities,
/// ascending. Candidates come from the rational root theorem.
pub fn rational_roots(p: &Poly, var: VarId) -> Result<Vec<(Rational, u32)>, ApplicationError> {
    let mut coeffs = dense(p, var).ok_or(ApplicationError::BadCurve)?;
    if p.is_zero() {
        return Ok(Vec::new());
    }
    let mut roots = Vec::new();
    let zero_mult = coeffs.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult as u32));
        coeffs.drain(..zero_mult);
    }
    if coeffs.len() < 2 {
        return Ok(roots);
    }
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * &Rational::from(lcm.clone())).numer().clone())
        .collect();
    let lead = ints.last().expect("nonempty");
    let mut candidates = Vec::new();
    for p in divisors(&ints[0]) {
        for q in divisors(lead) {
            let r = Rational::new(p.clone(), q).expect("divisor is nonzero");
            candidates.push(-&r);
            candidates.push(r);
        }
    }
    candidates.sort();
    candidates.dedup();
    for r in candidates {
        let mut k = 0;
        while let Some(q) = deflate(&coeffs, &r) {
            coeffs = q;
            k += 1;
        }
        if k > 0 {
            roots.push((r, k));
        }
        if coeffs.len() < 2 {
            break;
        }
    }
    roots.sort();
    Ok(roots)
}

/// Rational intersections of `curve(x, y) = 0` with the line `line(x, y) = 0`,
/// solved for `y`.
pub fn intersections(curve: &Poly, line: &Poly) -> Result<Vec<Intersection>, ApplicationError> {
    if curve.variables().iter().any(|&v| v != X && v != Y) {
        return Err(ApplicationError::BadCurve);
    }
    if line.total_degree() != Some(1) || line.variables().iter().any(|&v| v != X && v != Y) {
        return Err(ApplicationError::BadLine);
    }
    let beta = line.coefficient(&Monomial::var(Y));
    if beta.is_zero() {
        return Err(ApplicationError::BadLine);
    }
    let rest = line - &Poly::term(beta.clone(), Monomial::var(Y));
    let y_of_x = rest.scale(&(-beta.recip().expect("beta is nonzero")));
    let g = curve.substitute(Y, &y_of_x);
    if g.is_zero() {
        return Err(ApplicationError::InvalidPoint(
            "line lies on the curve".into(),
        ));
    }
    let roots = rational_roots(&g, X)?;
    if roots.is_empty() {
        return Err(ApplicationError::LineMissesCurve);
    }
    Ok(roots
        .into_iter()
        .map(|(x, multiplicity)| Intersection { x, multiplicity })
        .collect())
}

/// Multiplicity of the intersection at abscissa `at_x`; 0 if the line
/// meets the curve elsewhere but not there.
pub fn order_of_contact(
    curve: &Poly,
    line: &Poly,
    at_x: &Rational,
) -> Result<u32, ApplicationError> {
    Ok(intersections(curve, line)?
        .into_iter()
        .find(|i| &i.x == at_x)
        .map_or(0, |i| i.multiplicity))
}
