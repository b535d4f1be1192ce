//! Worked settings built on the kernel: the parabola tangent, the cycloid
//! tangent and refraction by least time, each with an independent oracle.

mod contact;
mod cycloid;
mod optimize;
mod parabola;
mod refraction;

pub use contact::{intersections, order_of_contact, rational_roots, Intersection};
pub use cycloid::{
    cycloid_point, cycloid_tangent_slope, parametric_slope, Angle, CycloidSlope, CycloidTangent,
};
pub use optimize::{bisect, golden_section_min};
pub use parabola::{
    inequality_gap, parabola_double_root, parabola_subtangent, tangent_line, ParabolaPoint,
    ParabolaTangent,
};
pub use refraction::{
    least_time_oracle, refraction_condition, sine_ratio, snell_condition, travel_time,
    RefractionCondition, RefractionScene, SnellSolution,
};

use thiserror::Error;

use crate::kernel::KernelError;
use crate::symexpr::SymError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApplicationError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("tangent construction degenerate")]
    DegenerateTangent,
    #[error("invalid angle `{0}`")]
    AngleParse(String),
    #[error("line misses curve: no rational intersection")]
    LineMissesCurve,
    #[error("line must be of degree 1 and solvable for y")]
    BadLine,
    #[error("curve must be a polynomial in x and y only")]
    BadCurve,
    #[error("invalid scene: {0}")]
    InvalidScene(String),
    #[error("derivation produced no usable root: {0}")]
    NoRoot(String),
}
