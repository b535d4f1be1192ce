//! Tangent to the parabola `x² = y` through the inequality for a point
//! outside the curve, turned into an adequality.
//!
//! `(x, y)` is the point of tangency, `(p, y − e)` a point on the tangent,
//! and `r` the distance from the vertex to where the tangent crosses the
//! axis. Similar triangles give `x/p = (y + r)/(y + r − e)`.

use super::ApplicationError;
use crate::kernel::{
    derive_condition, double_root_check_poly, Adequality, Derivation, DerivationTrace,
    Multiplicity, Outcome, Rule,
};
use crate::numeric::Rational;
use crate::symexpr::{Poly, RadicalSum, RationalForm, VarId};

const X: VarId = VarId::new('x');
const Y: VarId = VarId::new('y');
const P: VarId = VarId::new('p');
const R: VarId = VarId::new('r');
const E: VarId = VarId::new('e');
const T: VarId = VarId::new('t');

/// Ordinate of the point of tangency, either a positive rational or the
/// symbol `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolaPoint {
    y: Poly,
}

impl ParabolaPoint {
    pub fn numeric(y: Rational) -> Result<Self, ApplicationError> {
        if !y.is_positive() {
            return Err(ApplicationError::InvalidPoint(format!(
                "ordinate must be positive, got {y}"
            )));
        }
        Ok(ParabolaPoint {
            y: Poly::constant(y),
        })
    }

    pub fn symbolic() -> Self {
        ParabolaPoint { y: Poly::var(Y) }
    }

    pub fn y(&self) -> &Poly {
        &self.y
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolaTangent {
    /// Vertex-to-axis-crossing distance; equals the ordinate.
    pub r: Poly,
    pub condition: Poly,
    pub outcome: Outcome,
    pub trace: DerivationTrace,
}

fn form(num: Poly, den: Poly) -> RationalForm {
    RationalForm::new(RadicalSum::from_poly(num), RadicalSum::from_poly(den))
        .expect("denominators here are nonzero")
}

/// `p² − (y − e)` for the point on the tangent at ordinate `y − e`, with
/// `x² = y` and the similar-triangles value of `p`.
pub fn inequality_gap(y: &Poly, r: &Poly) -> RationalForm {
    let yr = y + r;
    let e = Poly::var(E);
    let p_sq = form(y * &(&yr - &e).pow(2), yr.pow(2));
    p_sq.sub(&RationalForm::from_poly(y - &e))
}

/// Runs the parabola derivation with unknown `r` and increment `e`.
pub fn parabola_subtangent(pt: &ParabolaPoint) -> Result<ParabolaTangent, ApplicationError> {
    let y = pt.y().clone();
    let e = Poly::var(E);
    let mut d = Derivation::new(R, E)?;

    let ye = &y - &e;
    d.trace_mut().push(
        Rule::Annotate,
        format!("p^2/({ye}) > 1"),
        format!("p^2 > {ye}"),
        "the point (p, y - e) on the tangent lies outside the parabola",
    );
    d.assume_positive_increment();
    let adq = d.adequate(
        form(Poly::var(X).pow(2), Poly::var(P).pow(2)),
        form(y.clone(), ye.clone()),
    );

    let yr = &y + &Poly::var(R);
    let lhs = form(yr.pow(2), (&yr - &e).pow(2));
    let substituted = Adequality {
        lhs,
        rhs: adq.rhs.clone(),
        ..adq.clone()
    };
    d.trace_mut().push(
        Rule::Substitute,
        adq.to_string(),
        substituted.to_string(),
        format!("similar triangles: x/p = ({yr})/({})", &yr - &e),
    );

    let result = derive_condition(d, substituted)?;
    let mut trace = result.trace;
    let positive = result
        .outcome
        .roots()
        .iter()
        .find(|root| {
            let at_one = root.value.substitute(Y, &Poly::one());
            at_one.constant_value().is_some_and(|v| v.is_positive())
        })
        .ok_or_else(|| ApplicationError::NoRoot(result.outcome.describe(R)))?;
    let r = positive.value.clone();
    trace.push(
        Rule::Annotate,
        result.outcome.describe(R),
        format!("r = {r}"),
        "r is a distance, so the positive root is taken",
    );

    let gap = inequality_gap(&y, &r);
    let grid: Vec<Rational> = (1..=20)
        .map(|k| Rational::new(k, 10).expect("nonzero"))
        .collect();
    let ys: Vec<Poly> = if y.is_constant() {
        vec![y.clone()]
    } else {
        ["1/4", "1", "9"]
            .iter()
            .map(|s| Poly::constant(s.parse::<Rational>().expect("literal")))
            .collect()
    };
    let holds = ys.iter().all(|yv| {
        grid.iter().all(|ev| {
            gap.substitute(Y, yv)
                .and_then(|g| g.substitute(E, &Poly::constant(ev.clone())))
                .ok()
                .and_then(|g| g.as_poly().and_then(Poly::constant_value))
                .is_some_and(|v| v.is_positive())
        })
    });
    trace.push(
        Rule::Annotate,
        "p^2 - (y - e)",
        gap.to_string(),
        if holds {
            "p^2 > y - e holds on the sample grid e = 1/10, 2/10, ..., 2"
        } else {
            "p^2 > y - e FAILS on the sample grid e = 1/10, 2/10, ..., 2"
        },
    );
    if !holds {
        return Err(ApplicationError::NoRoot(
            "inequality check failed for the derived tangent".into(),
        ));
    }

    Ok(ParabolaTangent {
        r,
        condition: result.condition,
        outcome: result.outcome,
        trace,
    })
}

/// Multiplicity of `e = 0` as a root of `y(y + r − e)² − (y + r)²(y − e)`,
/// the cross-multiplied difference of the adequality.
pub fn parabola_double_root(y: &Poly, r: &Poly) -> Result<Multiplicity, ApplicationError> {
    let yr = y + r;
    let t = Poly::var(T);
    let n = &(y * &(&yr - &t).pow(2)) - &(&yr.pow(2) * &(y - &t));
    Ok(double_root_check_poly(&n, &Poly::zero(), T, E)?)
}

/// `y − slope·x + r`, the tangent at abscissa `x0` through `(0, −r)`, with
/// `r` from [`parabola_subtangent`].
pub fn tangent_line(x0: &Rational) -> Result<Poly, ApplicationError> {
    if x0.is_zero() {
        return Err(ApplicationError::InvalidPoint(
            "the vertex has ordinate 0".into(),
        ));
    }
    let y0 = x0 * x0;
    let tangent = parabola_subtangent(&ParabolaPoint::numeric(y0.clone())?)?;
    let r = tangent
        .r
        .constant_value()
        .expect("numeric ordinate gives a numeric root");
    let slope = (&y0 + &r) / x0;
    Ok(&(&Poly::var(Y) - &Poly::var(X).scale(&slope)) + &Poly::constant(r))
}
