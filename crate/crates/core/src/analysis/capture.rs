use crate::engagement::Engagement;
use crate::geometry::{distance, los_angle, Heading};
use crate::scalar::Scalar;

use super::{
    apollonius, escape_distance, point_in_sensable, AnalysisError, DEFAULT_EPS_FRACTION,
    MIN_CONTAINMENT_SAMPLES,
};

/// Verdict of the containment test between the Apollonius circle and the
/// sensable region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Containment<T> {
    /// Every sampled Apollonius point is inside the sensable region by more
    /// than the slack: capture is guaranteed.
    Contained { min_margin: T },
    /// Some sample is outside (or within the slack of the boundary).
    /// `heading` points from the target's start to the worst sample and
    /// `excess` is the negated worst margin.
    Breached { heading: Heading<T>, excess: T },
}

impl<T: Scalar> Containment<T> {
    pub fn is_contained(&self) -> bool {
        matches!(self, Containment::Contained { .. })
    }

    pub fn min_margin(&self) -> T {
        match *self {
            Containment::Contained { min_margin } => min_margin,
            Containment::Breached { excess, .. } => -excess,
        }
    }
}

/// `1e-6 · r`
pub fn default_eps<T: Scalar>(eng: &Engagement<T>) -> T {
    T::lit(DEFAULT_EPS_FRACTION) * eng.config().r
}

/// Radial containment test of the initial Apollonius circle in the
/// initial sensable region, on `n` boundary samples.
///
/// Both regions are star-shaped about the target's start, so comparing
/// each Apollonius sample against the escape distance along its own ray is
/// exact per sample.
pub fn capture_guaranteed<T: Scalar>(
    eng: &Engagement<T>,
    n: usize,
    eps: T,
) -> Result<Containment<T>, AnalysisError> {
    if n < MIN_CONTAINMENT_SAMPLES {
        return Err(AnalysisError::TooFewSamples {
            required: MIN_CONTAINMENT_SAMPLES,
            got: n,
        });
    }
    let t0 = eng.config().t0;
    let (worst, margin) = apollonius(eng)
        .samples(n)
        .into_iter()
        .map(|p| (p, point_in_sensable(eng, p)))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .expect("n > 0");
    if margin > eps {
        Ok(Containment::Contained { min_margin: margin })
    } else {
        // the target start is strictly inside the circle, so worst != t0
        let heading = los_angle(t0, worst).unwrap_or(eng.geometry().theta_st0);
        Ok(Containment::Breached {
            heading,
            excess: -margin,
        })
    }
}

/// Heading that lets the target escape, if containment is breached.
///
/// Picks the Apollonius sample whose distance from the target's start most
/// exceeds the escape distance along the same ray. Returns `None` when
/// contained, or when the breach is only within the slack (no sample lies
/// strictly outside).
pub fn escape_heading<T: Scalar>(
    eng: &Engagement<T>,
    n: usize,
) -> Result<Option<Heading<T>>, AnalysisError> {
    if capture_guaranteed(eng, n, default_eps(eng))?.is_contained() {
        return Ok(None);
    }
    let t0 = eng.config().t0;
    let best = apollonius(eng)
        .samples(n)
        .into_iter()
        .filter_map(|p| {
            let h = los_angle(t0, p).ok()?;
            Some((h, distance(t0, p) / escape_distance(eng, h).escape_distance))
        })
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    Ok(best.filter(|&(_, ratio)| ratio > T::one()).map(|(h, _)| h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::DEFAULT_SAMPLES;
    use crate::engagement::EngagementConfig;
    use crate::geometry::Point2;

    fn thm2(v_t: f64) -> Engagement<f64> {
        Engagement::new(EngagementConfig {
            s0: Point2::new(0.0, 0.0),
            a0: Point2::new(-2.0, 1.0),
            t0: Point2::new(1.0, 0.5),
            v_s: 0.125,
            v_t,
            v_a: 1.0,
            r: 2.0,
        })
        .unwrap()
    }

    fn verdict(e: &Engagement<f64>) -> Containment<f64> {
        capture_guaranteed(e, DEFAULT_SAMPLES, default_eps(e)).unwrap()
    }

    #[test]
    fn reported_verdicts() {
        assert!(verdict(&thm2(0.32)).is_contained());
        assert!(verdict(&thm2(0.325)).is_contained());
        assert!(!verdict(&thm2(0.35)).is_contained());
    }

    #[test]
    fn too_few_samples() {
        let e = thm2(0.32);
        assert_eq!(
            capture_guaranteed(&e, 63, 0.0),
            Err(AnalysisError::TooFewSamples {
                required: 64,
                got: 63
            })
        );
    }

    #[test]
    fn escape_heading_only_when_breached() {
        assert_eq!(escape_heading(&thm2(0.32), DEFAULT_SAMPLES).unwrap(), None);
        let e = thm2(0.35);
        let h = escape_heading(&e, DEFAULT_SAMPLES)
            .unwrap()
            .expect("breached");
        let c = apollonius(&e);
        let rho = c.ray_distance(e.config().t0, h).unwrap();
        let p = e.config().t0 + h.unit() * rho;
        assert!(point_in_sensable(&e, p) < 0.0);
    }

    #[test]
    fn breach_reports_worst_sample() {
        let e = thm2(0.35);
        match verdict(&e) {
            Containment::Breached { heading, excess } => {
                assert!(excess > 0.0);
                let rho = apollonius(&e).ray_distance(e.config().t0, heading).unwrap();
                let p = e.config().t0 + heading.unit() * rho;
                assert!((point_in_sensable(&e, p) + excess).abs() < 1e-9);
            }
            other => panic!("expected breach, got {other:?}"),
        }
    }
}
