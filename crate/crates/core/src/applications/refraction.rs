//! Refraction by least time.
//!
//! Symbolically: on a circle of radius `n` about the point of incidence,
//! `b` and `a` are the offsets of the source and target points along the
//! interface, and `m : b` is the ratio of resistances of the two media.
//! Moving the crossing point by `e`, the weighted path
//! `m·√(n² + e² − 2be) + b·√(n² + e² + 2ae)` is adequated to `mn + bn`.
//!
//! Numerically: source at height `h1` above the interface, target `h2`
//! below it and `d` further along, speeds `v1` and `v2`. The two are
//! bridged by `n = 1`, `b = sin θ1`, `a = sin θ2`, `m = b·v2/v1`.

use std::cmp::Ordering;

use super::{bisect, golden_section_min, ApplicationError};
use crate::kernel::{derive_condition, Derivation, DerivationTrace, Rule};
use crate::symexpr::{parse_expr, to_canonical, Poly, VarId};

const A: VarId = VarId::new('a');
const B: VarId = VarId::new('b');
const M: VarId = VarId::new('m');
const N: VarId = VarId::new('n');
const E: VarId = VarId::new('e');

pub const WEIGHTED_PATH: &str = "m*sqrt(n^2 + e^2 - 2*b*e) + b*sqrt(n^2 + e^2 + 2*a*e)";
pub const WEIGHTED_PATH_AT_ZERO: &str = "m*n + b*n";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefractionScene {
    pub h1: f64,
    pub h2: f64,
    pub d: f64,
    pub v1: f64,
    pub v2: f64,
}

impl RefractionScene {
    pub fn new(h1: f64, h2: f64, d: f64, v1: f64, v2: f64) -> Result<Self, ApplicationError> {
        for (name, v) in [("h1", h1), ("h2", h2), ("d", d), ("v1", v1), ("v2", v2)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ApplicationError::InvalidScene(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(RefractionScene { h1, h2, d, v1, v2 })
    }

    fn sin1(&self, x: f64) -> f64 {
        x / self.h1.hypot(x)
    }

    fn sin2(&self, x: f64) -> f64 {
        let u = self.d - x;
        u / self.h2.hypot(u)
    }
}

/// `T(x)`, the travel time through the crossing point `x`.
pub fn travel_time(s: &RefractionScene, x: f64) -> f64 {
    s.h1.hypot(x) / s.v1 + s.h2.hypot(s.d - x) / s.v2
}

/// Sign of `T(x1) − T(x2)`, each square-root difference rewritten as
/// `(p − q)(p + q)/(√.. + √..)` so nothing cancels.
fn compare_times(s: &RefractionScene, x1: f64, x2: f64) -> Ordering {
    let (u1, u2) = (s.d - x1, s.d - x2);
    let first = (x1 + x2) / (s.h1.hypot(x1) + s.h1.hypot(x2)) / s.v1;
    let second = (u1 + u2) / (s.h2.hypot(u1) + s.h2.hypot(u2)) / s.v2;
    let diff = (x1 - x2) * (first - second);
    diff.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
}

/// `sin θ1 / sin θ2` at crossing point `x`.
pub fn sine_ratio(s: &RefractionScene, x: f64) -> f64 {
    s.sin1(x) / s.sin2(x)
}

/// Minimises the travel time directly: a coarse scan, then golden-section
/// search. Does not use the kernel.
pub fn least_time_oracle(s: &RefractionScene) -> f64 {
    const STEPS: usize = 1000;
    let grid: Vec<f64> = (0..=STEPS).map(|i| s.d * i as f64 / STEPS as f64).collect();
    let mut best = 0;
    for i in 1..grid.len() {
        if compare_times(s, grid[i], grid[best]) == Ordering::Less {
            best = i;
        }
    }
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(STEPS)];
    golden_section_min(lo, hi, 1e-14 * s.d.max(1.0), |x1, x2| {
        compare_times(s, x1, x2)
    })
}

/// The stationarity condition of the weighted path, and its root for `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefractionCondition {
    pub condition: Poly,
    pub root: Poly,
    pub trace: DerivationTrace,
}

/// Runs the kernel on the weighted-path adequality, unknown `a`, increment `e`.
pub fn refraction_condition() -> Result<RefractionCondition, ApplicationError> {
    let lhs = to_canonical(&parse_expr(WEIGHTED_PATH).expect("fixed text"))?;
    let rhs = to_canonical(&parse_expr(WEIGHTED_PATH_AT_ZERO).expect("fixed text"))?;
    let mut d = Derivation::new(A, E)?;
    d.assume_positive_increment();
    let adq = d.adequate(lhs, rhs);
    let result = derive_condition(d, adq)?;
    let roots = result.outcome.roots();
    // Factors free of `a` (powers of n, b, m) carry no root; the single
    // root in `a` is the law.
    let root = match roots {
        [r] => r.value.clone(),
        _ => return Err(ApplicationError::NoRoot(result.outcome.describe(A))),
    };
    Ok(RefractionCondition {
        condition: result.condition,
        root,
        trace: result.trace,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnellSolution {
    pub scene: RefractionScene,
    pub x_star: f64,
    pub symbolic: RefractionCondition,
    pub trace: DerivationTrace,
}

impl SnellSolution {
    /// `a − root(b, m, n)` at crossing point `x`, under the bridging
    /// dictionary. Zero at `x*`.
    pub fn residual(&self, x: f64) -> f64 {
        residual_at(&self.scene, &self.symbolic.root, x)
    }
}

fn residual_at(s: &RefractionScene, root: &Poly, x: f64) -> f64 {
    let b = s.sin1(x);
    let m = b * s.v2 / s.v1;
    let a = s.sin2(x);
    let lookup = |v: VarId| match v {
        v if v == B => b,
        v if v == M => m,
        v if v == N => 1.0,
        v if v == A => a,
        _ => f64::NAN,
    };
    a - root.eval_f64(&lookup)
}

/// Derives the condition symbolically, then solves it for the scene's
/// crossing point by bisection on `(0, d)`.
pub fn snell_condition(scene: &RefractionScene) -> Result<SnellSolution, ApplicationError> {
    let symbolic = refraction_condition()?;
    let mut trace = symbolic.trace.clone();
    trace.push(
        Rule::Annotate,
        format!("a = {}", symbolic.root),
        "n = 1, b = sin(theta1), a = sin(theta2), m = b*v2/v1",
        format!(
            "scene h1 = {}, h2 = {}, d = {}, v1 = {}, v2 = {}",
            scene.h1, scene.h2, scene.d, scene.v1, scene.v2
        ),
    );
    let x_star =
        bisect(|x| residual_at(scene, &symbolic.root, x), 0.0, scene.d, 0.0).ok_or_else(|| {
            ApplicationError::NoRoot(format!(
                "no sign change of the condition on (0, {})",
                scene.d
            ))
        })?;
    trace.push(
        Rule::Solve,
        "a - root = 0 on (0, d)",
        format!("x* = {x_star:.15}"),
        "bisection",
    );
    Ok(SnellSolution {
        scene: *scene,
        x_star,
        symbolic,
        trace,
    })
}
