//! Engagement configuration, its validation, and the initial geometry
//! derived from it.

use thiserror::Error;

use crate::geometry::{distance, los_angle, Heading, Point2, COINCIDENCE_EPS};
use crate::scalar::Scalar;

/// One violated precondition of an [`EngagementConfig`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("field `{field}` is not finite")]
    NonFinite { field: &'static str },
    #[error("speeds must satisfy 0 < v_s < v_t < v_a (got v_s={v_s}, v_t={v_t}, v_a={v_a})")]
    SpeedOrdering { v_s: f64, v_t: f64, v_a: f64 },
    #[error("sensing radius r must be positive (got {r})")]
    NonPositiveRadius { r: f64 },
    #[error("target starts outside the sensing radius: |s0 - t0| = {distance} >= r = {r} (game over before start)")]
    TargetOutsideRadius { distance: f64, r: f64 },
    #[error("agents `{first}` and `{second}` start at the same position")]
    Coincident {
        first: &'static str,
        second: &'static str,
    },
}

impl ConfigError {
    /// Names of the scenario fields implicated in this violation.
    pub fn fields(&self) -> &'static [&'static str] {
        match self {
            ConfigError::NonFinite { field } => match *field {
                "s0" => &["s0"],
                "a0" => &["a0"],
                "t0" => &["t0"],
                "v_s" => &["v_s"],
                "v_t" => &["v_t"],
                "v_a" => &["v_a"],
                _ => &["r"],
            },
            ConfigError::SpeedOrdering { .. } => &["v_s", "v_t", "v_a"],
            ConfigError::NonPositiveRadius { .. } => &["r"],
            ConfigError::TargetOutsideRadius { .. } => &["s0", "t0", "r"],
            ConfigError::Coincident { first, .. } if *first == "a0" => &["a0", "t0"],
            ConfigError::Coincident { .. } => &["s0", "t0"],
        }
    }
}

/// Initial positions, speeds and sensing radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngagementConfig<T> {
    pub s0: Point2<T>,
    pub a0: Point2<T>,
    pub t0: Point2<T>,
    pub v_s: T,
    pub v_t: T,
    pub v_a: T,
    /// Sensing radius.
    pub r: T,
}

fn f<T: Scalar>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

impl<T: Scalar> EngagementConfig<T> {
    /// Every violated precondition, in a fixed order.
    pub fn violations(&self) -> Vec<ConfigError> {
        let mut out = Vec::new();
        for (name, ok) in [
            ("s0", self.s0.is_finite()),
            ("a0", self.a0.is_finite()),
            ("t0", self.t0.is_finite()),
            ("v_s", self.v_s.is_finite()),
            ("v_t", self.v_t.is_finite()),
            ("v_a", self.v_a.is_finite()),
            ("r", self.r.is_finite()),
        ] {
            if !ok {
                out.push(ConfigError::NonFinite { field: name });
            }
        }
        if !out.is_empty() {
            return out;
        }
        if !(T::zero() < self.v_s && self.v_s < self.v_t && self.v_t < self.v_a) {
            out.push(ConfigError::SpeedOrdering {
                v_s: f(self.v_s),
                v_t: f(self.v_t),
                v_a: f(self.v_a),
            });
        }
        if self.r <= T::zero() {
            out.push(ConfigError::NonPositiveRadius { r: f(self.r) });
        }
        let eps = T::lit(COINCIDENCE_EPS);
        let d_st = distance(self.s0, self.t0);
        if d_st < eps {
            out.push(ConfigError::Coincident {
                first: "s0",
                second: "t0",
            });
        }
        if distance(self.a0, self.t0) < eps {
            out.push(ConfigError::Coincident {
                first: "a0",
                second: "t0",
            });
        }
        if self.r > T::zero() && d_st >= self.r {
            out.push(ConfigError::TargetOutsideRadius {
                distance: f(d_st),
                r: f(self.r),
            });
        }
        out
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        match self.violations().into_iter().next() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    /// Same positions, sensor and attacker speeds, with another target speed.
    pub fn with_target_speed(&self, v_t: T) -> Self {
        EngagementConfig { v_t, ..*self }
    }

    pub fn cast<U: Scalar>(&self) -> EngagementConfig<U> {
        let c = |v: T| U::from(v).unwrap();
        EngagementConfig {
            s0: self.s0.cast(),
            a0: self.a0.cast(),
            t0: self.t0.cast(),
            v_s: c(self.v_s),
            v_t: c(self.v_t),
            v_a: c(self.v_a),
            r: c(self.r),
        }
    }
}

/// Initial separations, line-of-sight angles and speed ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedGeometry<T> {
    pub d_st0: T,
    pub d_at0: T,
    /// Line of sight from the sensor to the target.
    pub theta_st0: Heading<T>,
    /// Line of sight from the attacker to the target.
    pub theta_at0: Heading<T>,
    /// `v_s / v_t`
    pub nu: T,
    /// `v_t / v_a`
    pub mu: T,
}

pub fn derive_geometry<T: Scalar>(
    cfg: &EngagementConfig<T>,
) -> Result<DerivedGeometry<T>, ConfigError> {
    cfg.validate()?;
    let coincident = |first, second| ConfigError::Coincident { first, second };
    Ok(DerivedGeometry {
        d_st0: distance(cfg.s0, cfg.t0),
        d_at0: distance(cfg.a0, cfg.t0),
        theta_st0: los_angle(cfg.s0, cfg.t0).map_err(|_| coincident("s0", "t0"))?,
        theta_at0: los_angle(cfg.a0, cfg.t0).map_err(|_| coincident("a0", "t0"))?,
        nu: cfg.v_s / cfg.v_t,
        mu: cfg.v_t / cfg.v_a,
    })
}

/// A validated configuration together with its derived geometry.
///
/// Every analysis and strategy routine takes one of these, so the
/// configuration invariants hold by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Engagement<T> {
    cfg: EngagementConfig<T>,
    geom: DerivedGeometry<T>,
}

impl<T: Scalar> Engagement<T> {
    pub fn new(cfg: EngagementConfig<T>) -> Result<Self, ConfigError> {
        let geom = derive_geometry(&cfg)?;
        Ok(Engagement { cfg, geom })
    }

    #[inline]
    pub fn config(&self) -> &EngagementConfig<T> {
        &self.cfg
    }

    #[inline]
    pub fn geometry(&self) -> &DerivedGeometry<T> {
        &self.geom
    }

    pub fn with_target_speed(&self, v_t: T) -> Result<Self, ConfigError> {
        Engagement::new(self.cfg.with_target_speed(v_t))
    }

    pub fn family(&self) -> TargetSpeedFamily<T> {
        TargetSpeedFamily::from(&self.cfg)
    }
}

/// An engagement with the target speed left free: the object the speed
/// thresholds and critical-speed solvers work on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetSpeedFamily<T> {
    pub s0: Point2<T>,
    pub a0: Point2<T>,
    pub t0: Point2<T>,
    pub v_s: T,
    pub v_a: T,
    pub r: T,
}

impl<T: Scalar> From<&EngagementConfig<T>> for TargetSpeedFamily<T> {
    fn from(c: &EngagementConfig<T>) -> Self {
        TargetSpeedFamily {
            s0: c.s0,
            a0: c.a0,
            t0: c.t0,
            v_s: c.v_s,
            v_a: c.v_a,
            r: c.r,
        }
    }
}

impl<T: Scalar> TargetSpeedFamily<T> {
    pub fn config(&self, v_t: T) -> EngagementConfig<T> {
        EngagementConfig {
            s0: self.s0,
            a0: self.a0,
            t0: self.t0,
            v_s: self.v_s,
            v_t,
            v_a: self.v_a,
            r: self.r,
        }
    }

    pub fn at_speed(&self, v_t: T) -> Result<Engagement<T>, ConfigError> {
        Engagement::new(self.config(v_t))
    }

    /// Geometry that does not depend on the target speed.
    ///
    /// Validated through a probe speed halfway between `v_s` and `v_a`; the
    /// returned `nu`/`mu` belong to that probe and should not be used.
    pub fn probe(&self) -> Result<Engagement<T>, ConfigError> {
        self.at_speed((self.v_s + self.v_a) / T::two())
    }
}
