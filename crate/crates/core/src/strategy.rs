//! Heading laws for the three agents. All headings are chosen at `t = 0`
//! and held for the whole engagement.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::analysis::{escape_distance, escape_heading, DEFAULT_SAMPLES};
use crate::engagement::Engagement;
use crate::geometry::{los_angle, Heading};
use crate::scalar::Scalar;

/// Open-loop heading choice of the target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TargetPolicy<T> {
    Fixed(Heading<T>),
    /// Along the sensor's line of sight: the shortest escape.
    AwayFromSensor,
    /// Along the attacker's line of sight: the longest chase.
    AwayFromAttacker,
    /// Straight at the attacker: the quickest capture.
    TowardAttacker,
    /// Through the worst breach of the containment test, or away from the
    /// attacker when no breach exists.
    BestEscape,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown target policy `{0}` (expected fixed:<degrees>, away-sensor, away-attacker, toward-attacker or best-escape)")]
pub struct ParsePolicyError(pub String);

impl<T: Scalar> FromStr for TargetPolicy<T> {
    type Err = ParsePolicyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParsePolicyError(s.to_string());
        Ok(match s.trim() {
            "away-sensor" => TargetPolicy::AwayFromSensor,
            "away-attacker" => TargetPolicy::AwayFromAttacker,
            "toward-attacker" => TargetPolicy::TowardAttacker,
            "best-escape" => TargetPolicy::BestEscape,
            other => {
                let deg: f64 = other
                    .strip_prefix("fixed:")
                    .ok_or_else(err)?
                    .trim()
                    .parse()
                    .map_err(|_| err())?;
                if !deg.is_finite() {
                    return Err(err());
                }
                TargetPolicy::Fixed(Heading::from_degrees(T::lit(deg)))
            }
        })
    }
}

impl<T: Scalar> fmt::Display for TargetPolicy<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetPolicy::Fixed(h) => {
                // trim the radian round trip's last-digit noise
                let deg = (h.degrees().to_f64().unwrap_or(f64::NAN) * 1e9).round() / 1e9;
                write!(f, "fixed:{deg}")
            }
            TargetPolicy::AwayFromSensor => f.write_str("away-sensor"),
            TargetPolicy::AwayFromAttacker => f.write_str("away-attacker"),
            TargetPolicy::TowardAttacker => f.write_str("toward-attacker"),
            TargetPolicy::BestEscape => f.write_str("best-escape"),
        }
    }
}

/// Sensor heading: straight at the target's escape point, which keeps the
/// target sensed for as long as possible.
pub fn sensor_heading<T: Scalar>(eng: &Engagement<T>, gamma_t: Heading<T>) -> Heading<T> {
    let esc = escape_distance(eng, gamma_t);
    // escape point is at distance r from the sensor's start
    los_angle(eng.config().s0, esc.escape_point).unwrap_or(eng.geometry().theta_st0)
}

/// Attacker heading that meets the target on the Apollonius circle:
/// `θ_at0 - asin(μ sin(θ_at0 - γ_t))`.
pub fn attacker_heading<T: Scalar>(eng: &Engagement<T>, gamma_t: Heading<T>) -> Heading<T> {
    let g = eng.geometry();
    let s = (g.mu * g.theta_at0.diff(gamma_t).sin())
        .max(-T::one())
        .min(T::one());
    Heading::from_radians(g.theta_at0.radians() - s.asin())
}

/// Target heading for a policy, and whether `BestEscape` fell back to
/// fleeing the attacker.
pub fn resolve_target_heading<T: Scalar>(
    policy: TargetPolicy<T>,
    eng: &Engagement<T>,
) -> (Heading<T>, bool) {
    let g = eng.geometry();
    match policy {
        TargetPolicy::Fixed(h) => (h, false),
        TargetPolicy::AwayFromSensor => (g.theta_st0, false),
        TargetPolicy::AwayFromAttacker => (g.theta_at0, false),
        TargetPolicy::TowardAttacker => (g.theta_at0.reversed(), false),
        TargetPolicy::BestEscape => match escape_heading(eng, DEFAULT_SAMPLES) {
            Ok(Some(h)) => (h, false),
            _ => (g.theta_at0, true),
        },
    }
}

pub fn target_heading<T: Scalar>(policy: TargetPolicy<T>, eng: &Engagement<T>) -> Heading<T> {
    resolve_target_heading(policy, eng).0
}

/// Headings of all three agents for one engagement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyAssignment<T> {
    pub gamma_s: Heading<T>,
    pub gamma_a: Heading<T>,
    pub gamma_t: Heading<T>,
    pub target_policy: TargetPolicy<T>,
    /// `BestEscape` found no escape and used `AwayFromAttacker` instead.
    pub fell_back: bool,
}

impl<T: Scalar> StrategyAssignment<T> {
    /// Target per `policy`; sensor and attacker respond optimally.
    pub fn optimal(eng: &Engagement<T>, policy: TargetPolicy<T>) -> Self {
        let (gamma_t, fell_back) = resolve_target_heading(policy, eng);
        StrategyAssignment {
            gamma_s: sensor_heading(eng, gamma_t),
            gamma_a: attacker_heading(eng, gamma_t),
            gamma_t,
            target_policy: policy,
            fell_back,
        }
    }
}
