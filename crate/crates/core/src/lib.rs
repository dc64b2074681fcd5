//! Sensor-attacker-target pursuit-evasion game.
//!
//! A slow sensor must keep a target within its sensing radius while a fast
//! attacker closes in; the target picks one constant heading at the start.
//! This crate provides the closed-form analysis of that game (escape
//! distances, the sensable region, the Apollonius circle, capture and
//! escape speed thresholds), the agents' heading laws, and a fixed-step
//! simulator used to check the closed forms independently.
//!
//! All math is generic over [`Scalar`] (`f32` or `f64`). The `*F64` and
//! `*F32` aliases below name the concrete types.
//!
//! ```
//! use sat_pursuit::{analysis, Engagement, EngagementConfigF64, Point2};
//!
//! let eng = Engagement::new(EngagementConfigF64 {
//!     s0: Point2::new(0.0, 0.0),
//!     a0: Point2::new(-2.0, 1.0),
//!     t0: Point2::new(1.0, 0.5),
//!     v_s: 0.125,
//!     v_t: 0.32,
//!     v_a: 1.0,
//!     r: 2.0,
//! })
//! .unwrap();
//! let bounds = analysis::speed_bounds(&eng.family()).unwrap();
//! assert!((bounds.v_lower - 0.3217).abs() < 1e-3);
//! ```

pub mod analysis;
pub mod engagement;
pub mod geometry;
pub mod scalar;
pub mod simulation;
pub mod strategy;

pub use analysis::{
    AnalysisError, ApolloniusCircle, Containment, EscapeSolution, SensableBoundary, SpeedBounds,
};
pub use engagement::{
    derive_geometry, ConfigError, DerivedGeometry, Engagement, EngagementConfig, TargetSpeedFamily,
};
pub use geometry::{distance, los_angle, point_along, GeometryError, Heading, Point2};
pub use scalar::Scalar;
pub use simulation::{
    simulate, EngagementOutcome, OutcomeKind, SimError, SimulationParams, Trajectory,
};
pub use strategy::{StrategyAssignment, TargetPolicy};

pub type Point2F64 = Point2<f64>;
pub type HeadingF64 = Heading<f64>;
pub type EngagementConfigF64 = EngagementConfig<f64>;
pub type EngagementF64 = Engagement<f64>;
pub type DerivedGeometryF64 = DerivedGeometry<f64>;
pub type TargetSpeedFamilyF64 = TargetSpeedFamily<f64>;
pub type EscapeSolutionF64 = EscapeSolution<f64>;
pub type ApolloniusCircleF64 = ApolloniusCircle<f64>;
pub type SensableBoundaryF64 = SensableBoundary<f64>;
pub type SpeedBoundsF64 = SpeedBounds<f64>;
pub type StrategyAssignmentF64 = StrategyAssignment<f64>;
pub type TargetPolicyF64 = TargetPolicy<f64>;
pub type SimulationParamsF64 = SimulationParams<f64>;
pub type EngagementOutcomeF64 = EngagementOutcome<f64>;

pub type Point2F32 = Point2<f32>;
pub type HeadingF32 = Heading<f32>;
pub type EngagementConfigF32 = EngagementConfig<f32>;
pub type EngagementF32 = Engagement<f32>;
pub type TargetSpeedFamilyF32 = TargetSpeedFamily<f32>;
pub type SimulationParamsF32 = SimulationParams<f32>;
