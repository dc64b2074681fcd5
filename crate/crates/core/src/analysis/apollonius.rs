use crate::engagement::Engagement;
use crate::geometry::{distance, Heading, Point2};
use crate::scalar::Scalar;

/// Locus of points the target and attacker reach at the same instant.
///
/// Points inside are reached first by the target. On the boundary
/// `|P - T| / |P - A| = μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApolloniusCircle<T> {
    pub center: Point2<T>,
    pub radius: T,
}

impl<T: Scalar> ApolloniusCircle<T> {
    /// Circle for target at `t`, attacker at `a`, speed ratio `mu < 1`.
    pub fn between(t: Point2<T>, a: Point2<T>, mu: T) -> Self {
        let k = T::one() - mu * mu;
        ApolloniusCircle {
            center: t + (t - a) * (mu * mu / k),
            radius: mu * distance(a, t) / k,
        }
    }

    /// Boundary point at polar angle `phi` about the center.
    pub fn boundary_point(&self, phi: T) -> Point2<T> {
        let (s, c) = phi.sin_cos();
        self.center + Point2::new(c, s) * self.radius
    }

    /// `n` boundary points evenly spaced in polar angle.
    pub fn samples(&self, n: usize) -> Vec<Point2<T>> {
        let step = T::two() * T::PI() / T::from_count(n);
        (0..n)
            .map(|i| self.boundary_point(step * T::from_count(i)))
            .collect()
    }

    /// Distance from an interior `origin` to the boundary along `heading`.
    /// `None` when the ray misses (origin outside and pointing away).
    pub fn ray_distance(&self, origin: Point2<T>, heading: Heading<T>) -> Option<T> {
        let u = heading.unit();
        let w = self.center - origin;
        let proj = u.dot(w);
        let disc = proj * proj - w.norm_squared() + self.radius * self.radius;
        if disc < T::zero() {
            return None;
        }
        let far = proj + disc.sqrt();
        (far >= T::zero()).then_some(far)
    }

    pub fn contains_point(&self, p: Point2<T>) -> bool {
        distance(self.center, p) < self.radius
    }

    /// Whether `inner` lies inside this circle.
    pub fn contains_circle(&self, inner: &Self) -> bool {
        distance(self.center, inner.center) + inner.radius <= self.radius
    }
}

pub fn apollonius<T: Scalar>(eng: &Engagement<T>) -> ApolloniusCircle<T> {
    let cfg = eng.config();
    ApolloniusCircle::between(cfg.t0, cfg.a0, eng.geometry().mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engagement::EngagementConfig;

    #[test]
    fn collinear_hand_case() {
        // simultaneous-arrival points on the axis are x = 1/3 and x = 3
        let c = ApolloniusCircle::between(Point2::new(1.0f64, 0.0), Point2::new(-1.0, 0.0), 0.5);
        assert!((c.center.x - 5.0 / 3.0).abs() < 1e-15 && c.center.y == 0.0);
        assert!((c.radius - 4.0 / 3.0).abs() < 1e-15);
        assert!((c.center.x - c.radius - 1.0 / 3.0).abs() < 1e-15);
        assert!((c.center.x + c.radius - 3.0).abs() < 1e-15);
    }

    #[test]
    fn table_scenario_radius() {
        let e = Engagement::new(EngagementConfig {
            s0: Point2::new(0.0, 0.0),
            a0: Point2::new(1.0, 3.0),
            t0: Point2::new(1.25, 1.25),
            v_s: 0.125,
            v_t: 0.35,
            v_a: 1.0,
            r: 2.0,
        })
        .unwrap();
        let c = apollonius(&e);
        let hand: f64 = 0.35 * 1.7678 / (1.0 - 0.35 * 0.35);
        assert!((hand - 0.7051).abs() < 1e-4);
        assert!((c.radius - hand).abs() < 1e-4);
        for p in c.samples(8) {
            let ratio: f64 = distance(p, e.config().t0) / distance(p, e.config().a0);
            assert!((ratio - 0.35).abs() < 1e-12);
        }
    }

    #[test]
    fn small_ratio_limit() {
        let (t, a) = (Point2::new(2.0f64, 1.0), Point2::new(-1.0, 5.0));
        let mu = 0.01;
        let c = ApolloniusCircle::between(t, a, mu);
        let d = distance(a, t);
        assert!(distance(c.center, t) < 0.01 * c.radius);
        assert!((c.radius - mu * d).abs() < 0.01 * mu * d);
    }

    #[test]
    fn ray_distance_hits_boundary() {
        let (t, a) = (Point2::new(1.0f64, 0.5), Point2::new(-2.0, 1.0));
        let c = ApolloniusCircle::between(t, a, 0.4);
        for deg in [-180.0, -90.0, 0.0, 33.0, 150.0] {
            let h = Heading::from_degrees(deg);
            let rho = c.ray_distance(t, h).unwrap();
            let p = t + h.unit() * rho;
            assert!((distance(p, c.center) - c.radius).abs() < 1e-12);
            assert!((distance(p, t) / distance(p, a) - 0.4).abs() < 1e-12);
        }
    }
}
