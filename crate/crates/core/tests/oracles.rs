mod common;

use sat_pursuit::analysis::{
    capture_guaranteed, critical_speed, default_eps, escape_distance, speed_bounds,
    tangency_residual, tangent_escape_speed, DEFAULT_SAMPLES, DEFAULT_SPEED_TOL,
};
use sat_pursuit::{EngagementConfigF32, EngagementF32, Heading, Point2, TargetSpeedFamilyF64};

use common::{random_engagement, rng, thm2, thm3};

/// Distance the target covers along `u` before the sensor, steering for the
/// same point, is `r` away: first root of `|t0 + L u - s0| - nu L - r`.
/// Found by scanning then bisecting, with no closed form involved.
fn brute_escape(fam: &TargetSpeedFamilyF64, v_t: f64, u: Point2<f64>) -> f64 {
    let nu = fam.v_s / v_t;
    let f = |l: f64| (fam.t0 + u * l - fam.s0).norm() - nu * l - fam.r;
    let mut hi = 1e-3;
    while f(hi) < 0.0 {
        hi += 1e-3;
    }
    let mut lo = hi - 1e-3;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Distance along `u` to where the attacker can arrive at the same time:
/// positive root of `|t0 + rho u - a0| = rho / mu`.
fn brute_meet(fam: &TargetSpeedFamilyF64, v_t: f64, u: Point2<f64>) -> f64 {
    let mu = v_t / fam.v_a;
    let w = fam.t0 - fam.a0;
    let a = 1.0 - 1.0 / (mu * mu);
    let b = 2.0 * w.dot(u);
    let c = w.norm_squared();
    // a < 0 < c: one positive root
    (-b - (b * b - 4.0 * a * c).sqrt()) / (2.0 * a)
}

fn target_can_escape(fam: &TargetSpeedFamilyF64, v_t: f64, headings: usize) -> bool {
    (0..headings).any(|i| {
        let u = Heading::from_radians(i as f64 * std::f64::consts::TAU / headings as f64).unit();
        brute_escape(fam, v_t, u) < brute_meet(fam, v_t, u)
    })
}

fn brute_critical(fam: &TargetSpeedFamilyF64) -> f64 {
    let (mut lo, mut hi) = (fam.v_s * 1.0001, fam.v_a * 0.9999);
    for _ in 0..30 {
        let mid = 0.5 * (lo + hi);
        if target_can_escape(fam, mid, 2048) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[test]
fn escape_distance_matches_scan() {
    let mut r = rng(21);
    for _ in 0..30 {
        let e = random_engagement(&mut r);
        let fam = e.family();
        for deg in [-150.0, -45.0, 0.0, 30.0, 120.0, 179.0] {
            let h = Heading::from_degrees(deg);
            let want = brute_escape(&fam, e.config().v_t, h.unit());
            let got = escape_distance(&e, h).escape_distance;
            assert!((got - want).abs() <= 1e-9 * (1.0 + want), "{got} vs {want}");
        }
    }
}

#[test]
fn critical_speed_matches_brute_force_on_reference_scenario() {
    let fam = thm3(0.4896).family();
    let oracle = brute_critical(&fam);
    assert!((oracle - 0.480277).abs() < 1e-4, "{oracle}");
    let crit = critical_speed(&fam, DEFAULT_SPEED_TOL, DEFAULT_SAMPLES).unwrap();
    assert!(
        (crit - oracle).abs() <= 2.0 * DEFAULT_SPEED_TOL,
        "{crit} vs {oracle}"
    );
    // the tangent-escape root is an upper bound, not the flip itself
    let tangent = tangent_escape_speed(&fam).unwrap().selected;
    assert!(tangent > crit);
    assert!(tangency_residual(&fam, tangent).unwrap().abs() < 1e-9);
}

#[test]
fn critical_speed_matches_brute_force_on_random_families() {
    let mut r = rng(22);
    let mut checked = 0;
    while checked < 5 {
        let fam = random_engagement(&mut r).family();
        let Ok(crit) = critical_speed(&fam, DEFAULT_SPEED_TOL, DEFAULT_SAMPLES) else {
            continue;
        };
        let oracle = brute_critical(&fam);
        assert!((crit - oracle).abs() <= 1e-3, "{crit} vs {oracle}");
        checked += 1;
    }
}

#[test]
fn critical_speed_inside_bounds() {
    for fam in [thm2(0.32).family(), thm3(0.4896).family()] {
        let b = speed_bounds(&fam).unwrap();
        let crit = critical_speed(&fam, DEFAULT_SPEED_TOL, DEFAULT_SAMPLES).unwrap();
        assert!(crit >= b.v_lower && crit <= b.v_upper.unwrap());
        let below = fam.at_speed(crit - 2.0 * DEFAULT_SPEED_TOL).unwrap();
        let above = fam.at_speed(crit).unwrap();
        assert!(
            capture_guaranteed(&below, DEFAULT_SAMPLES, default_eps(&below))
                .unwrap()
                .is_contained()
        );
        assert!(
            !capture_guaranteed(&above, DEFAULT_SAMPLES, default_eps(&above))
                .unwrap()
                .is_contained()
        );
    }
}

#[test]
fn single_precision_agrees() {
    let e64 = thm3(0.4896);
    let cfg: EngagementConfigF32 = e64.config().cast();
    let e32 = EngagementF32::new(cfg).unwrap();
    for deg in [0.0f32, 45.0, 90.0, -120.0] {
        let a = escape_distance(&e32, Heading::from_degrees(deg)).escape_distance;
        let b = escape_distance(&e64, Heading::from_degrees(deg as f64)).escape_distance;
        assert!((a as f64 - b).abs() < 1e-5 * (1.0 + b));
    }
    let b32 = speed_bounds(&e32.family()).unwrap();
    assert!((b32.v_lower - 0.3879).abs() < 1e-3);
}
