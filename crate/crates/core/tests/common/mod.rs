#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sat_pursuit::{Engagement, EngagementConfig, Point2};

use std::f64::consts::PI;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn polar(rng: &mut StdRng, dist: f64) -> Point2<f64> {
    let ang = rng.gen_range(-PI..PI);
    Point2::new(dist * ang.cos(), dist * ang.sin())
}

/// A valid engagement with `v_a = 1` and the sensor at the origin.
pub fn random_engagement(rng: &mut StdRng) -> Engagement<f64> {
    let r = rng.gen_range(1.0..3.0);
    let d_st = rng.gen_range(0.1..0.9) * r;
    let t0 = polar(rng, d_st);
    let d_at = rng.gen_range(0.5..5.0);
    let a0 = t0 + polar(rng, d_at);
    let v_s = rng.gen_range(0.05..0.4);
    let v_t = rng.gen_range(v_s + 0.05..0.95);
    Engagement::new(EngagementConfig {
        s0: Point2::origin(),
        a0,
        t0,
        v_s,
        v_t,
        v_a: 1.0,
        r,
    })
    .expect("generator produces valid configs")
}

pub fn scenario(a0: (f64, f64), t0: (f64, f64), v_s: f64, v_t: f64) -> Engagement<f64> {
    Engagement::new(EngagementConfig {
        s0: Point2::origin(),
        a0: Point2::new(a0.0, a0.1),
        t0: Point2::new(t0.0, t0.1),
        v_s,
        v_t,
        v_a: 1.0,
        r: 2.0,
    })
    .unwrap()
}

pub fn tab1() -> Engagement<f64> {
    scenario((1.0, 3.0), (1.25, 1.25), 0.125, 0.35)
}

pub fn thm2(v_t: f64) -> Engagement<f64> {
    scenario((-2.0, 1.0), (1.0, 0.5), 0.125, v_t)
}

pub fn thm3(v_t: f64) -> Engagement<f64> {
    scenario((3.0, 3.0), (1.5, 0.5), 0.3, v_t)
}
