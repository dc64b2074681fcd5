//! Fixed-step propagation of the three agents and terminal-event detection.
//!
//! Headings are constant, so every position is an exact affine function of
//! time: `p(t) = p0 + v u t`. The step size only matters for locating the
//! terminal events, which are found inside the step where they occur.

use thiserror::Error;

use crate::analysis::escape_distance;
use crate::engagement::Engagement;
use crate::geometry::{Heading, Point2};
use crate::scalar::Scalar;
use crate::strategy::{attacker_heading, sensor_heading, StrategyAssignment};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid simulation parameter `{field}` = {value} (must be positive and finite)")]
    InvalidParam { field: &'static str, value: f64 },
    #[error("no terminal event before max_time = {max_time} s")]
    Timeout { max_time: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationParams<T> {
    pub dt: T,
    /// Attacker-target distance counted as coincidence.
    pub capture_tol: T,
    pub max_time: T,
}

impl<T: Scalar> SimulationParams<T> {
    pub const DEFAULT_CAPTURE_TOL: f64 = 1e-6;
    pub const DEFAULT_MAX_TIME: f64 = 1e3;

    pub fn new(dt: T, capture_tol: T, max_time: T) -> Self {
        SimulationParams {
            dt,
            capture_tol,
            max_time,
        }
    }

    /// `dt = 1e-4 s`, for checking closed-form results.
    pub fn oracle() -> Self {
        Self::new(
            T::lit(1e-4),
            T::lit(Self::DEFAULT_CAPTURE_TOL),
            T::lit(Self::DEFAULT_MAX_TIME),
        )
    }

    /// `dt = 1e-3 s`, for interactive runs.
    pub fn cli() -> Self {
        Self::new(
            T::lit(1e-3),
            T::lit(Self::DEFAULT_CAPTURE_TOL),
            T::lit(Self::DEFAULT_MAX_TIME),
        )
    }

    pub fn with_dt(self, dt: T) -> Self {
        SimulationParams { dt, ..self }
    }

    /// Caps the run at twice the analytic escape time for `gamma_t`, plus
    /// a few steps.
    pub fn with_horizon(self, eng: &Engagement<T>, gamma_t: Heading<T>) -> Self {
        let tf = escape_distance(eng, gamma_t).escape_time;
        SimulationParams {
            max_time: T::two() * tf + T::lit(10.0) * self.dt,
            ..self
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        for (field, v) in [
            ("dt", self.dt),
            ("capture_tol", self.capture_tol),
            ("max_time", self.max_time),
        ] {
            if !(v.is_finite() && v > T::zero()) {
                return Err(SimError::InvalidParam {
                    field,
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(())
    }

    fn steps(&self) -> usize {
        (self.max_time / self.dt)
            .ceil()
            .to_usize()
            .unwrap_or(usize::MAX)
    }
}

/// Sampled positions. Consecutive samples are one `dt` apart except the
/// last, which is the terminal event instant.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub s: Vec<Point2<T>>,
    pub a: Vec<Point2<T>>,
    pub t: Vec<Point2<T>>,
}

impl<T: Scalar> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    fn push(&mut self, time: T, s: Point2<T>, a: Point2<T>, t: Point2<T>) {
        self.times.push(time);
        self.s.push(s);
        self.a.push(a);
        self.t.push(t);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeKind {
    Capture,
    Escape,
    Timeout,
}

impl OutcomeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OutcomeKind::Capture => "capture",
            OutcomeKind::Escape => "escape",
            OutcomeKind::Timeout => "timeout",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EngagementOutcome<T> {
    pub kind: OutcomeKind,
    pub t_final: T,
    /// Target position at `t_final`.
    pub terminal_point: Point2<T>,
    pub trajectory: Trajectory<T>,
    /// Capture and escape both occurred inside the final step; resolved by
    /// event time, exact ties going to capture.
    pub tie: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interception<T> {
    /// Time of closest approach between attacker and target.
    pub intercept_time: T,
    pub miss_distance: T,
}

#[derive(Debug, Clone, Copy)]
struct Mover<T> {
    p0: Point2<T>,
    vel: Point2<T>,
}

impl<T: Scalar> Mover<T> {
    fn new(p0: Point2<T>, speed: T, heading: Heading<T>) -> Self {
        Mover {
            p0,
            vel: heading.unit() * speed,
        }
    }

    #[inline]
    fn at(&self, time: T) -> Point2<T> {
        self.p0 + self.vel * time
    }
}

/// Relative motion `r(τ) = r0 + w τ` over one step of length `h`.
#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    from: Mover<T>,
    to: Mover<T>,
    t0: T,
    r0: Point2<T>,
    w: Point2<T>,
    h: T,
}

impl<T: Scalar> Segment<T> {
    fn between(from: &Mover<T>, to: &Mover<T>, t0: T, h: T) -> Self {
        Segment {
            from: *from,
            to: *to,
            t0,
            r0: to.at(t0) - from.at(t0),
            w: to.vel - from.vel,
            h,
        }
    }

    /// Evaluated from absolute positions, exactly as they are reported.
    #[inline]
    fn dist(&self, tau: T) -> T {
        let time = self.t0 + tau;
        (self.to.at(time) - self.from.at(time)).norm()
    }

    /// Closest approach within the step: `(τ*, distance)`.
    fn closest(&self) -> (T, T) {
        let ww = self.w.norm_squared();
        let tau = if ww > T::zero() {
            (-self.r0.dot(self.w) / ww).max(T::zero()).min(self.h)
        } else {
            T::zero()
        };
        (tau, self.dist(tau))
    }

    /// Refines a bracketed crossing of `|r| = level` on `[lo, hi]`: linear
    /// interpolation of the distance, then one Newton step on the squared
    /// distance polynomial.
    fn crossing(&self, lo: T, hi: T, level: T) -> T {
        let (d_lo, d_hi) = (self.dist(lo), self.dist(hi));
        let mut tau = if d_hi == d_lo {
            lo
        } else {
            lo + (hi - lo) * (level - d_lo) / (d_hi - d_lo)
        };
        let r = self.r0 + self.w * tau;
        let slope = T::two() * r.dot(self.w);
        if slope != T::zero() {
            tau = tau - (r.norm_squared() - level * level) / slope;
        }
        tau.max(lo).min(hi)
    }
}

impl<T: Scalar> Segment<T> {
    /// First `τ` in `[0, tau_in]` with `|r(τ)| <= level`, given that the
    /// distance is above `level` at 0 and within it at `tau_in`. The refined
    /// crossing can land a rounding error outside; a short bisection then
    /// pulls it back so the reported point really is within `level`.
    fn first_within(&self, tau_in: T, level: T) -> T {
        let tau = self.crossing(T::zero(), tau_in, level);
        if self.dist(tau) <= level {
            return tau;
        }
        let (mut lo, mut hi) = (tau, tau_in);
        for _ in 0..64 {
            let mid = lo + (hi - lo) / T::two();
            if mid <= lo || mid >= hi {
                break;
            }
            if self.dist(mid) <= level {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }
}

enum Event<T> {
    None,
    Capture(T),
    Escape(T),
}

struct Run<T> {
    sensor: Option<Mover<T>>,
    attacker: Option<Mover<T>>,
    target: Mover<T>,
    r: T,
}

struct RunResult<T> {
    kind: OutcomeKind,
    t_final: T,
    tie: bool,
    trajectory: Trajectory<T>,
}

impl<T: Scalar> Run<T> {
    fn new(eng: &Engagement<T>, strat: &StrategyAssignment<T>) -> Self {
        let c = eng.config();
        Run {
            sensor: Some(Mover::new(c.s0, c.v_s, strat.gamma_s)),
            attacker: Some(Mover::new(c.a0, c.v_a, strat.gamma_a)),
            target: Mover::new(c.t0, c.v_t, strat.gamma_t),
            r: c.r,
        }
    }

    fn positions(&self, time: T) -> (Point2<T>, Point2<T>, Point2<T>) {
        let s = self.sensor.map_or(Point2::origin(), |m| m.at(time));
        let a = self.attacker.map_or(Point2::origin(), |m| m.at(time));
        (s, a, self.target.at(time))
    }

    fn step_event(&self, t0: T, h: T, capture_tol: T) -> (Event<T>, bool) {
        let escape = self.sensor.as_ref().and_then(|s| {
            let seg = Segment::between(s, &self.target, t0, h);
            (seg.dist(h) >= self.r).then(|| seg.crossing(T::zero(), h, self.r))
        });
        let capture = self.attacker.as_ref().and_then(|a| {
            let seg = Segment::between(a, &self.target, t0, h);
            if seg.dist(T::zero()) <= capture_tol {
                return Some(T::zero());
            }
            let (tau_min, d_min) = seg.closest();
            (d_min <= capture_tol).then(|| seg.first_within(tau_min, capture_tol))
        });
        match (capture, escape) {
            (Some(c), Some(e)) if c <= e => (Event::Capture(c), true),
            (Some(_), Some(e)) => (Event::Escape(e), true),
            (Some(c), None) => (Event::Capture(c), false),
            (None, Some(e)) => (Event::Escape(e), false),
            (None, None) => (Event::None, false),
        }
    }

    fn execute(&self, params: &SimulationParams<T>, record: bool) -> RunResult<T> {
        let mut traj = Trajectory::default();
        let record_at = |traj: &mut Trajectory<T>, time: T| {
            if record {
                let (s, a, t) = self.positions(time);
                traj.push(time, s, a, t);
            }
        };
        record_at(&mut traj, T::zero());
        let n = params.steps();
        for k in 0..n {
            let t0 = params.dt * T::from_count(k);
            let t1 = (params.dt * T::from_count(k + 1)).min(params.max_time);
            let (event, tie) = self.step_event(t0, t1 - t0, params.capture_tol);
            let (kind, tau) = match event {
                Event::None => {
                    record_at(&mut traj, t1);
                    continue;
                }
                Event::Capture(tau) => (OutcomeKind::Capture, tau),
                Event::Escape(tau) => (OutcomeKind::Escape, tau),
            };
            let t_final = t0 + tau;
            if record && tau > T::zero() {
                record_at(&mut traj, t_final);
            }
            return RunResult {
                kind,
                t_final,
                tie,
                trajectory: traj,
            };
        }
        RunResult {
            kind: OutcomeKind::Timeout,
            t_final: params.max_time,
            tie: false,
            trajectory: traj,
        }
    }
}

/// Runs the full three-agent engagement until capture, escape or
/// `max_time`.
pub fn simulate<T: Scalar>(
    eng: &Engagement<T>,
    strat: &StrategyAssignment<T>,
    params: &SimulationParams<T>,
) -> Result<EngagementOutcome<T>, SimError> {
    params.validate()?;
    let run = Run::new(eng, strat);
    let res = run.execute(params, true);
    Ok(EngagementOutcome {
        kind: res.kind,
        t_final: res.t_final,
        terminal_point: run.target.at(res.t_final),
        trajectory: res.trajectory,
        tie: res.tie,
    })
}

/// Simulated escape time with the sensor steering optimally and no
/// attacker.
pub fn oracle_escape_time<T: Scalar>(
    eng: &Engagement<T>,
    gamma_t: Heading<T>,
    params: &SimulationParams<T>,
) -> Result<T, SimError> {
    params.validate()?;
    let c = eng.config();
    let run = Run {
        sensor: Some(Mover::new(c.s0, c.v_s, sensor_heading(eng, gamma_t))),
        attacker: None,
        target: Mover::new(c.t0, c.v_t, gamma_t),
        r: c.r,
    };
    let res = run.execute(params, false);
    match res.kind {
        OutcomeKind::Escape => Ok(res.t_final),
        _ => Err(SimError::Timeout {
            max_time: params.max_time.to_f64().unwrap_or(f64::NAN),
        }),
    }
}

/// Closest approach of the attacker (on its interception heading) to the
/// target, ignoring the sensor.
pub fn oracle_interception<T: Scalar>(
    eng: &Engagement<T>,
    gamma_t: Heading<T>,
    params: &SimulationParams<T>,
) -> Result<Interception<T>, SimError> {
    params.validate()?;
    let c = eng.config();
    let attacker = Mover::new(c.a0, c.v_a, attacker_heading(eng, gamma_t));
    let target = Mover::new(c.t0, c.v_t, gamma_t);
    let mut best = Interception {
        intercept_time: T::zero(),
        miss_distance: (c.t0 - c.a0).norm(),
    };
    for k in 0..params.steps() {
        let t0 = params.dt * T::from_count(k);
        let h = (params.dt * T::from_count(k + 1)).min(params.max_time) - t0;
        let seg = Segment::between(&attacker, &target, t0, h);
        let (tau, d) = seg.closest();
        if d < best.miss_distance {
            best = Interception {
                intercept_time: t0 + tau,
                miss_distance: d,
            };
        }
        // closest approach reached once the distance stops shrinking
        if tau < h {
            return Ok(best);
        }
    }
    Err(SimError::Timeout {
        max_time: params.max_time.to_f64().unwrap_or(f64::NAN),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engagement::EngagementConfig;
    use crate::geometry::distance;
    use crate::strategy::TargetPolicy;

    fn tab1() -> Engagement<f64> {
        Engagement::new(EngagementConfig {
            s0: Point2::new(0.0, 0.0),
            a0: Point2::new(1.0, 3.0),
            t0: Point2::new(1.25, 1.25),
            v_s: 0.125,
            v_t: 0.35,
            v_a: 1.0,
            r: 2.0,
        })
        .unwrap()
    }

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

    fn run(e: &Engagement<f64>, policy: TargetPolicy<f64>, dt: f64) -> EngagementOutcome<f64> {
        let s = StrategyAssignment::optimal(e, policy);
        simulate(e, &s, &SimulationParams::cli().with_dt(dt)).unwrap()
    }

    #[test]
    fn escape_along_sensor_los() {
        let o = run(&tab1(), TargetPolicy::AwayFromSensor, 1e-4);
        assert_eq!(o.kind, OutcomeKind::Escape);
        assert!((o.t_final - 1.0321).abs() < 1e-3);
        let last = o.trajectory.len() - 1;
        assert!((distance(o.trajectory.s[last], o.trajectory.t[last]) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn capture_fleeing_attacker() {
        let e = tab1();
        let o = run(&e, TargetPolicy::AwayFromAttacker, 1e-4);
        assert_eq!(o.kind, OutcomeKind::Capture);
        assert!(o.t_final < 12.2914);
        let last = o.trajectory.len() - 1;
        let miss = distance(o.trajectory.a[last], o.trajectory.t[last]);
        assert!(miss <= 1e-6, "{miss}");
        for (s, t) in o.trajectory.s.iter().zip(&o.trajectory.t) {
            assert!(distance(*s, *t) < 2.0);
        }
    }

    #[test]
    fn contained_scenario_captures() {
        let e = thm2(0.32);
        let th = e.geometry().theta_st0;
        let o = run(&e, TargetPolicy::Fixed(th), 1e-3);
        assert_eq!(o.kind, OutcomeKind::Capture);
    }

    #[test]
    fn oracle_escape_times() {
        let e = tab1();
        let p = SimulationParams::oracle();
        let t45 = oracle_escape_time(&e, Heading::from_degrees(45.0), &p).unwrap();
        assert!((t45 - 1.0321).abs() < 1e-3);
        let t60 = oracle_escape_time(&e, Heading::from_degrees(60.0), &p).unwrap();
        assert!((t60 - 1.0794).abs() < 1e-3);

        let mut cfg = *e.config();
        let d = 2.0 - 1e-9;
        cfg.t0 = Point2::new(d / 2f64.sqrt(), d / 2f64.sqrt());
        let edge = Engagement::new(cfg).unwrap();
        let t = oracle_escape_time(&edge, edge.geometry().theta_st0, &p).unwrap();
        assert!(t < 1e-4);
    }

    #[test]
    fn tail_chase_intercept() {
        let e = tab1();
        let p = SimulationParams::oracle();
        let i = oracle_interception(&e, e.geometry().theta_at0, &p).unwrap();
        let expected = e.geometry().d_at0 / (1.0 - 0.35);
        assert!((expected - 2.7197).abs() < 1e-4);
        assert!((i.intercept_time - expected).abs() <= p.dt);
        assert!(i.miss_distance <= p.capture_tol);
    }

    #[test]
    fn breached_scenario_escapes() {
        let e = thm2(0.35);
        let o = run(&e, TargetPolicy::BestEscape, 1e-3);
        assert_eq!(o.kind, OutcomeKind::Escape);
        let s = StrategyAssignment::optimal(&e, TargetPolicy::BestEscape);
        let i = oracle_interception(&e, s.gamma_t, &SimulationParams::cli()).unwrap();
        assert!(i.miss_distance > 1e-6 || i.intercept_time > o.t_final);
    }

    #[test]
    fn propagation_is_exact() {
        let e = tab1();
        let s = StrategyAssignment::optimal(&e, TargetPolicy::AwayFromAttacker);
        let o = simulate(&e, &s, &SimulationParams::cli().with_dt(1e-2)).unwrap();
        let tr = &o.trajectory;
        let u = s.gamma_t.unit();
        for k in 0..tr.len() - 2 {
            let step = distance(tr.t[k], tr.t[k + 1]);
            let rounding = 4.0 * f64::EPSILON * (1.0 + tr.t[k + 1].norm());
            assert!((step - 0.35 * 1e-2).abs() <= 1e-12 * 0.35 * 1e-2 + rounding);
            let exact = e.config().t0 + u * (0.35 * tr.times[k]);
            assert!(distance(tr.t[k], exact) <= 1e-12 * (1.0 + exact.norm()));
        }
        assert!(tr.times.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn timeout_reported() {
        let e = tab1();
        let s = StrategyAssignment::optimal(&e, TargetPolicy::AwayFromSensor);
        let o = simulate(&e, &s, &SimulationParams::new(1e-3, 1e-6, 0.5)).unwrap();
        assert_eq!(o.kind, OutcomeKind::Timeout);
        assert!(matches!(
            oracle_escape_time(&e, s.gamma_t, &SimulationParams::new(1e-3, 1e-6, 0.5)),
            Err(SimError::Timeout { .. })
        ));
    }

    #[test]
    fn bad_params() {
        let e = tab1();
        let s = StrategyAssignment::optimal(&e, TargetPolicy::AwayFromSensor);
        assert!(matches!(
            simulate(&e, &s, &SimulationParams::new(0.0, 1e-6, 1.0)),
            Err(SimError::InvalidParam { field: "dt", .. })
        ));
    }

    #[test]
    fn horizon_never_times_out() {
        let e = tab1();
        for policy in [
            TargetPolicy::AwayFromSensor,
            TargetPolicy::AwayFromAttacker,
            TargetPolicy::TowardAttacker,
        ] {
            let s = StrategyAssignment::optimal(&e, policy);
            let p = SimulationParams::cli().with_horizon(&e, s.gamma_t);
            assert_ne!(simulate(&e, &s, &p).unwrap().kind, OutcomeKind::Timeout);
        }
    }
}
