//! Tangent to the cycloid `x = θ − sin θ, y = 1 − cos θ` (unit generating
//! circle), with slope measured against the axis of symmetry.
//!
//! Two adequations make the problem linear: the cycloid point is replaced
//! by the point on the tangent, and the circle arc next to `M` by the
//! segment of the circle tangent. The slope is then the circle tangent's
//! slope `cos θ / sin θ` less the factor `1 / sin θ` by which `MV` grows
//! with the increment. Arc lengths stay as `θ` and floating-point values;
//! they never enter the exact kernel.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::ApplicationError;
use crate::kernel::{DerivationTrace, Rule};
use crate::numeric::Rational;

/// A rational multiple of π, or radians given as a decimal.
#[derive(Debug, Clone, PartialEq)]
pub enum Angle {
    PiMultiple(Rational),
    Radians(f64),
}

impl Angle {
    pub fn radians(&self) -> f64 {
        match self {
            Angle::PiMultiple(q) => q.to_f64() * PI,
            Angle::Radians(x) => *x,
        }
    }

    /// `(cos θ, sin θ)` when both are rational.
    fn exact_cos_sin(&self) -> Option<(Rational, Rational)> {
        let Angle::PiMultiple(q) = self else {
            return None;
        };
        let two = Rational::from(2);
        let r = q - &(&two * &Rational::from_integer((q / &two).floor()));
        let half = Rational::new(1, 2).expect("literal");
        let three_halves = Rational::new(3, 2).expect("literal");
        if r.is_zero() {
            Some((Rational::one(), Rational::zero()))
        } else if r == half {
            Some((Rational::zero(), Rational::one()))
        } else if r.is_one() {
            Some((-Rational::one(), Rational::zero()))
        } else if r == three_halves {
            Some((Rational::zero(), -Rational::one()))
        } else {
            None
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::PiMultiple(q) => {
                let (n, d) = (q.numer(), q.denom());
                let head = match n.to_string().as_str() {
                    "1" => "pi".to_string(),
                    "-1" => "-pi".to_string(),
                    s => format!("{s}*pi"),
                };
                if d == &1.into() {
                    f.write_str(&head)
                } else {
                    write!(f, "{head}/{d}")
                }
            }
            Angle::Radians(x) => write!(f, "{x}"),
        }
    }
}

/// Accepts `pi`, `π`, `pi/2`, `2*pi/3`, `2pi/3`, `-pi/4` and decimal radians.
impl FromStr for Angle {
    type Err = ApplicationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ApplicationError::AngleParse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace('π', "pi");
        if let Some(idx) = t.find("pi") {
            let head = t[..idx].trim_end_matches('*');
            let tail = &t[idx + 2..];
            let coeff: Rational = match head {
                "" | "+" => Rational::one(),
                "-" => -Rational::one(),
                h => h.parse().map_err(|_| bad())?,
            };
            let den: Rational = match tail {
                "" => Rational::one(),
                _ => {
                    let d = tail.strip_prefix('/').ok_or_else(bad)?;
                    let d: Rational = d.parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    d
                }
            };
            return Ok(Angle::PiMultiple(coeff / den));
        }
        let x: f64 = t.parse().map_err(|_| bad())?;
        if !x.is_finite() {
            return Err(bad());
        }
        Ok(Angle::Radians(x))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CycloidSlope {
    Exact(Rational),
    Numeric(f64),
}

impl CycloidSlope {
    pub fn value(&self) -> f64 {
        match self {
            CycloidSlope::Exact(q) => q.to_f64(),
            CycloidSlope::Numeric(x) => *x,
        }
    }
}

impl fmt::Display for CycloidSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycloidSlope::Exact(q) => write!(f, "{q}"),
            CycloidSlope::Numeric(x) => write!(f, "{x:.15}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycloidTangent {
    pub theta: Angle,
    pub slope: CycloidSlope,
    pub trace: DerivationTrace,
}

/// `(θ − sin θ, 1 − cos θ)`.
pub fn cycloid_point(theta: f64) -> (f64, f64) {
    (theta - theta.sin(), 1.0 - theta.cos())
}

/// `d(π − x)/dθ ÷ dy/dθ`, straight from the parametrization.
pub fn parametric_slope(theta: f64) -> f64 {
    let d_pi_minus_x = -(1.0 - theta.cos());
    let dy = theta.sin();
    d_pi_minus_x / dy
}

/// Slope of the tangent at `θ ∈ (0, π)` relative to the axis of symmetry.
pub fn cycloid_tangent_slope(theta: &Angle) -> Result<CycloidTangent, ApplicationError> {
    let rad = theta.radians();
    let endpoint = match theta {
        Angle::PiMultiple(q) => q.is_zero() || q.is_one(),
        Angle::Radians(x) => *x == 0.0 || (*x - PI).abs() < 1e-15,
    };
    if endpoint {
        return Err(ApplicationError::DegenerateTangent);
    }
    let inside = match theta {
        Angle::PiMultiple(q) => q.is_positive() && q < &Rational::one(),
        Angle::Radians(x) => *x > 0.0 && *x < PI,
    };
    if !inside {
        return Err(ApplicationError::InvalidPoint(format!(
            "theta = {theta} is outside (0, pi)"
        )));
    }

    let (x, y) = cycloid_point(rad);
    let mut trace = DerivationTrace::new();
    trace.push(
        Rule::Annotate,
        "",
        format!("R = (theta - sin theta, 1 - cos theta) = ({x:.15}, {y:.15})"),
        format!("unit generating circle, theta = {theta}"),
    );
    trace.push(
        Rule::Adequate,
        "IE = OE + arc CO",
        "NE =AD OE + arc CO = OE + arc CM - arc MO",
        "first adequation: the point N on the tangent stands in for the cycloid point I",
    );
    trace.push(
        Rule::Substitute,
        "OE + arc CM - arc MO",
        "VE + arc CM - MV",
        "second adequation: V on the circle tangent m replaces O, segment MV replaces arc MO",
    );

    let slope = match theta.exact_cos_sin() {
        Some((cos, sin)) => {
            let inv_sin = sin
                .recip()
                .map_err(|_| ApplicationError::DegenerateTangent)?;
            let m = &cos * &inv_sin;
            trace.push(
                Rule::Annotate,
                "slope of m",
                format!("cos theta / sin theta = {m}"),
                "circle tangent at M, relative to the axis",
            );
            trace.push(
                Rule::Annotate,
                "MV",
                format!("e / sin theta, factor {inv_sin}"),
                "MV grows with the increment DE = e",
            );
            let s = &m - &inv_sin;
            trace.push(
                Rule::Solve,
                "cos theta / sin theta - 1 / sin theta",
                format!("slope = {s}"),
                "exact: cos theta and sin theta are rational",
            );
            CycloidSlope::Exact(s)
        }
        None => {
            let (cos, sin) = (rad.cos(), rad.sin());
            if sin.abs() < 1e-15 {
                return Err(ApplicationError::DegenerateTangent);
            }
            let m = cos / sin;
            let k = 1.0 / sin;
            trace.push(
                Rule::Annotate,
                "slope of m",
                format!("cos theta / sin theta = {m:.15}"),
                "circle tangent at M, relative to the axis",
            );
            trace.push(
                Rule::Annotate,
                "MV",
                format!("e / sin theta, factor {k:.15}"),
                "MV grows with the increment DE = e",
            );
            let s = m - k;
            trace.push(
                Rule::Solve,
                "cos theta / sin theta - 1 / sin theta",
                format!("slope = {s:.15}"),
                "binary64",
            );
            CycloidSlope::Numeric(s)
        }
    };
    Ok(CycloidTangent {
        theta: theta.clone(),
        slope,
        trace,
    })
}
