//! Target-speed thresholds.
//!
//! With positions, `v_s`, `v_a` and `r` fixed, raising the target speed
//! shrinks the sensable region and grows the Apollonius circle, so the
//! containment verdict flips exactly once. The bounds here bracket that
//! flip.

use crate::engagement::{ConfigError, TargetSpeedFamily};
use crate::scalar::Scalar;

use super::{
    apollonius, capture_guaranteed, default_eps, min_escape, quadratic_roots, to_f64,
    AnalysisError, MAX_BISECTION_ITERS,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedBounds<T> {
    /// Below this speed capture is guaranteed for any initial orientation.
    pub v_lower: T,
    /// Above this speed the target can always escape. `None` when the
    /// denominator `d_at0 - r + d_st0` is not positive.
    pub v_upper: Option<T>,
    /// `v_upper` exists and is below `v_a`.
    pub admissible: bool,
    /// `2 (r - d_st0) / d_at0`
    pub admissibility_lhs: T,
    /// `1 - v_s / v_a`
    pub admissibility_rhs: T,
}

/// Bounds on the critical target speed; independent of `v_t`.
pub fn speed_bounds<T: Scalar>(
    family: &TargetSpeedFamily<T>,
) -> Result<SpeedBounds<T>, ConfigError> {
    let probe = family.probe()?;
    let g = probe.geometry();
    let gap = family.r - g.d_st0;
    let num = gap * family.v_a + g.d_at0 * family.v_s;
    let v_lower = num / (g.d_at0 + gap);
    let denom = g.d_at0 - gap;
    let v_upper = (denom > T::zero()).then(|| num / denom);
    Ok(SpeedBounds {
        v_lower,
        v_upper,
        admissible: v_upper.is_some_and(|v| v < family.v_a),
        admissibility_lhs: T::two() * gap / g.d_at0,
        admissibility_rhs: T::one() - family.v_s / family.v_a,
    })
}

impl<T: Scalar> SpeedBounds<T> {
    fn bracket(&self) -> Result<(T, T), AnalysisError> {
        match self.v_upper {
            Some(hi) if self.admissible => Ok((self.v_lower, hi)),
            _ => Err(AnalysisError::Inadmissible {
                lhs: to_f64(self.admissibility_lhs),
                rhs: to_f64(self.admissibility_rhs),
            }),
        }
    }
}

/// Smallest target speed at which containment fails, by bisection over
/// `[v_lower, v_upper]` on the sampled containment test. The returned speed
/// is within `tol` above the flip.
pub fn critical_speed<T: Scalar>(
    family: &TargetSpeedFamily<T>,
    tol: T,
    n: usize,
) -> Result<T, AnalysisError> {
    let (mut lo, mut hi) = speed_bounds(family)?.bracket()?;
    let contained = |v: T| -> Result<bool, AnalysisError> {
        let eng = family.at_speed(v)?;
        Ok(capture_guaranteed(&eng, n, default_eps(&eng))?.is_contained())
    };
    let (lo_in, hi_in) = (contained(lo)?, contained(hi)?);
    if !lo_in || hi_in {
        return Err(AnalysisError::Bracket {
            lower: to_f64(lo),
            upper: to_f64(hi),
            lower_contained: lo_in,
            upper_contained: hi_in,
        });
    }
    for _ in 0..MAX_BISECTION_ITERS {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) / T::two();
        if contained(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Coefficients of the quadratic in the target speed whose roots put the
/// minimum-escape point on the Apollonius circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticCoefficients<T> {
    /// `(r - d_st0) / d_at0`
    pub d_ratio: T,
    /// Cosine of the angle at the target's start between the directions to
    /// the circle center and to the minimum-escape point:
    /// `-cos(θ_at0 - θ_st0)`.
    pub p_theta: T,
    /// `sin(θ_at0 - θ_st0)`
    pub q_theta: T,
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Scalar> QuadraticCoefficients<T> {
    fn with_cosine(family: &TargetSpeedFamily<T>, d_ratio: T, cosine: T, sine: T) -> Self {
        let d = d_ratio;
        let vs = family.v_s;
        QuadraticCoefficients {
            d_ratio: d,
            p_theta: cosine,
            q_theta: sine,
            a: T::one() - T::two() * d * cosine + d * d,
            b: -T::two() * vs * (T::one() - d * cosine),
            c: vs * vs - d * d * family.v_a * family.v_a,
        }
    }

    pub fn roots(&self) -> Option<(T, T)> {
        quadratic_roots(self.a, self.b, self.c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentSpeed<T> {
    pub coefficients: QuadraticCoefficients<T>,
    /// Both roots, ascending.
    pub roots: (T, T),
    /// The root inside `[v_lower, v_upper]`.
    pub selected: T,
    /// Both roots fell inside the bracket; the smaller was selected.
    pub ambiguous: bool,
    /// Roots obtained with `+cos(θ_at0 - θ_st0)` in place of the interior
    /// cosine, kept for comparison.
    pub literal_roots: Option<(T, T)>,
}

/// Target speed at which the Apollonius circle passes through the
/// minimum-escape point. Above it the target escapes along the sensor's
/// line of sight; the true critical speed may be lower when the first
/// tangency happens elsewhere.
pub fn tangent_escape_speed<T: Scalar>(
    family: &TargetSpeedFamily<T>,
) -> Result<TangentSpeed<T>, AnalysisError> {
    let bounds = speed_bounds(family)?;
    let (lo, hi) = bounds.bracket()?;
    let probe = family.probe()?;
    let g = probe.geometry();
    let d_ratio = (family.r - g.d_st0) / g.d_at0;
    let delta = g.theta_at0.diff(g.theta_st0);
    let coefficients =
        QuadraticCoefficients::with_cosine(family, d_ratio, -delta.cos(), delta.sin());
    let literal_roots =
        QuadraticCoefficients::with_cosine(family, d_ratio, delta.cos(), delta.sin()).roots();

    let no_root = |roots: Option<(T, T)>| AnalysisError::NoTangentRoot {
        roots: roots.map(|(a, b)| (to_f64(a), to_f64(b))),
        v_lower: to_f64(lo),
        v_upper: to_f64(hi),
    };
    let roots = coefficients.roots().ok_or_else(|| no_root(None))?;
    let slack = T::lit(1e-12) * hi;
    let inside = |v: T| v >= lo - slack && v <= hi + slack;
    let selected = match (inside(roots.0), inside(roots.1)) {
        (true, _) => roots.0,
        (false, true) => roots.1,
        (false, false) => return Err(no_root(Some(roots))),
    };
    Ok(TangentSpeed {
        coefficients,
        roots,
        selected,
        ambiguous: inside(roots.0) && inside(roots.1),
        literal_roots,
    })
}

/// `|center - P_min| - radius` at target speed `v`, where `P_min` is the
/// minimum-escape point. Zero at a tangent escape speed.
pub fn tangency_residual<T: Scalar>(family: &TargetSpeedFamily<T>, v: T) -> Result<T, ConfigError> {
    let eng = family.at_speed(v)?;
    let c = apollonius(&eng);
    Ok(crate::geometry::distance(c.center, min_escape(&eng).escape_point) - c.radius)
}
