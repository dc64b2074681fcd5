//! Closed-form results of the game: escape distances, the sensable region,
//! the Apollonius circle, the containment test and the target-speed
//! thresholds.

mod apollonius;
mod capture;
mod escape;
mod speed;

pub use apollonius::{apollonius, ApolloniusCircle};
pub use capture::{capture_guaranteed, default_eps, escape_heading, Containment};
pub use escape::{
    escape_distance, min_escape, min_escape_distance, point_in_sensable, sensable_boundary,
    BoundarySample, EscapeSolution, SensableBoundary,
};
pub use speed::{
    critical_speed, speed_bounds, tangency_residual, tangent_escape_speed, QuadraticCoefficients,
    SpeedBounds, TangentSpeed,
};

use thiserror::Error;

use crate::engagement::ConfigError;
use crate::scalar::Scalar;

/// Boundary samples used when the caller does not choose.
pub const DEFAULT_SAMPLES: usize = 512;
/// Containment slack as a fraction of the sensing radius.
pub const DEFAULT_EPS_FRACTION: f64 = 1e-6;
/// Critical-speed bisection tolerance (m/s).
pub const DEFAULT_SPEED_TOL: f64 = 1e-4;
pub const MAX_BISECTION_ITERS: usize = 60;

pub const MIN_REGION_SAMPLES: usize = 16;
pub const MIN_CONTAINMENT_SAMPLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("at least {required} samples required, got {got}")]
    TooFewSamples { required: usize, got: usize },
    #[error(
        "escape bound inadmissible: 2(r - d_st0)/d_at0 = {lhs} is not below 1 - v_s/v_a = {rhs}"
    )]
    Inadmissible { lhs: f64, rhs: f64 },
    #[error(
        "containment does not flip across [{lower}, {upper}] \
         (contained at lower: {lower_contained}, at upper: {upper_contained})"
    )]
    Bracket {
        lower: f64,
        upper: f64,
        lower_contained: bool,
        upper_contained: bool,
    },
    #[error("tangency not at min-escape point: no root of the tangency quadratic in [{v_lower}, {v_upper}] (roots {roots:?})")]
    NoTangentRoot {
        roots: Option<(f64, f64)>,
        v_lower: f64,
        v_upper: f64,
    },
}

pub(crate) fn to_f64<T: Scalar>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Real roots of `a x² + b x + c`, ascending, using the cancellation-free
/// form. `None` when the discriminant is negative or `a == 0`.
pub(crate) fn quadratic_roots<T: Scalar>(a: T, b: T, c: T) -> Option<(T, T)> {
    if a == T::zero() {
        return None;
    }
    let disc = b * b - T::lit(4.0) * a * c;
    if disc < T::zero() {
        return None;
    }
    let sq = disc.sqrt();
    let q = if b >= T::zero() {
        -(b + sq) / T::two()
    } else {
        (sq - b) / T::two()
    };
    let (r1, r2) = if q == T::zero() {
        (T::zero(), T::zero())
    } else {
        (q / a, c / q)
    };
    Some(if r1 <= r2 { (r1, r2) } else { (r2, r1) })
}
