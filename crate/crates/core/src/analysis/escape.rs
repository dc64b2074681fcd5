use crate::engagement::Engagement;
use crate::geometry::{distance, los_angle, Heading, Point2};
use crate::scalar::Scalar;

use super::{AnalysisError, MIN_REGION_SAMPLES};

/// Where and when a target on a fixed heading leaves the sensing disc of an
/// optimally steering sensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EscapeSolution<T> {
    pub heading: Heading<T>,
    /// `ν r - d_st0 cos(γ - θ_st0)`
    pub omega: T,
    /// Distance travelled by the target before escaping.
    pub escape_distance: T,
    pub escape_time: T,
    pub escape_point: Point2<T>,
}

/// Escape distance for target heading `gamma_t`.
///
/// The target travels `L` while the sensor, heading straight for the escape
/// point, travels `ν L`; the law of cosines on the triangle
/// (sensor start, target start, escape point) gives
/// `(1 - ν²) L² - 2 Ω L + (d_st0² - r²) = 0`, of which the positive root is
/// kept. The constant term is negative, so the discriminant never is.
pub fn escape_distance<T: Scalar>(eng: &Engagement<T>, gamma_t: Heading<T>) -> EscapeSolution<T> {
    let cfg = eng.config();
    let g = eng.geometry();
    let a = T::one() - g.nu * g.nu;
    let omega = g.nu * cfg.r - g.d_st0 * gamma_t.diff(g.theta_st0).cos();
    let slack = cfg.r * cfg.r - g.d_st0 * g.d_st0;
    let disc = omega * omega + a * slack;
    debug_assert!(disc >= T::zero(), "negative discriminant {disc}");
    let sq = disc.max(T::zero()).sqrt();
    let dist = if omega >= T::zero() {
        (omega + sq) / a
    } else {
        slack / (sq - omega)
    };
    EscapeSolution {
        heading: gamma_t,
        omega,
        escape_distance: dist,
        escape_time: dist / cfg.v_t,
        escape_point: cfg.t0 + gamma_t.unit() * dist,
    }
}

/// Escape along the sensor's line of sight, the shortest of all headings.
pub fn min_escape<T: Scalar>(eng: &Engagement<T>) -> EscapeSolution<T> {
    escape_distance(eng, eng.geometry().theta_st0)
}

/// `(r - d_st0) / (1 - ν)`
pub fn min_escape_distance<T: Scalar>(eng: &Engagement<T>) -> T {
    let g = eng.geometry();
    (eng.config().r - g.d_st0) / (T::one() - g.nu)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample<T> {
    /// Heading in `[0, 2π)`, kept unwrapped so samples stay ordered.
    pub angle: T,
    pub escape_distance: T,
    pub point: Point2<T>,
}

impl<T: Scalar> BoundarySample<T> {
    pub fn heading(&self) -> Heading<T> {
        Heading::from_radians(self.angle)
    }
}

/// Sampled boundary of the set of points the target can reach before the
/// sensor loses it. Star-shaped about the target's start.
#[derive(Debug, Clone, PartialEq)]
pub struct SensableBoundary<T> {
    pub samples: Vec<BoundarySample<T>>,
}

impl<T: Scalar> SensableBoundary<T> {
    pub fn resolution(&self) -> usize {
        self.samples.len()
    }

    pub fn points(&self) -> impl Iterator<Item = Point2<T>> + '_ {
        self.samples.iter().map(|s| s.point)
    }

    /// Sample with the smallest escape distance.
    pub fn nearest(&self) -> &BoundarySample<T> {
        self.samples
            .iter()
            .min_by(|a, b| a.escape_distance.partial_cmp(&b.escape_distance).unwrap())
            .expect("non-empty boundary")
    }
}

pub fn sensable_boundary<T: Scalar>(
    eng: &Engagement<T>,
    n: usize,
) -> Result<SensableBoundary<T>, AnalysisError> {
    if n < MIN_REGION_SAMPLES {
        return Err(AnalysisError::TooFewSamples {
            required: MIN_REGION_SAMPLES,
            got: n,
        });
    }
    let step = T::two() * T::PI() / T::from_count(n);
    let samples = (0..n)
        .map(|i| {
            let angle = step * T::from_count(i);
            let sol = escape_distance(eng, Heading::from_radians(angle));
            BoundarySample {
                angle,
                escape_distance: sol.escape_distance,
                point: sol.escape_point,
            }
        })
        .collect();
    Ok(SensableBoundary { samples })
}

/// Signed radial margin of `p` with respect to the sensable boundary:
/// positive strictly inside, negative outside.
///
/// At the target's own start the margin is the minimum escape distance.
pub fn point_in_sensable<T: Scalar>(eng: &Engagement<T>, p: Point2<T>) -> T {
    let t0 = eng.config().t0;
    match los_angle(t0, p) {
        Ok(h) => escape_distance(eng, h).escape_distance - distance(t0, p),
        Err(_) => min_escape_distance(eng),
    }
}
