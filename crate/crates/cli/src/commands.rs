//! Simulation, sweep and region outputs. Everything here is deterministic
//! given the scenario and flags.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use sat_pursuit::analysis::{
    apollonius, capture_guaranteed, default_eps, escape_distance, min_escape, sensable_boundary,
};
use sat_pursuit::simulation::simulate;
use sat_pursuit::{
    EngagementConfigF64, EngagementF64, EngagementOutcomeF64, HeadingF64, Point2F64,
    SimulationParamsF64, StrategyAssignmentF64, TargetPolicyF64,
};
use serde::Serialize;

use crate::error::CliError;
use crate::svg::{Line, Svg};

const SENSOR: &str = "#1f5fbf";
const ATTACKER: &str = "#c0392b";
const TARGET: &str = "#1e8449";
const PALETTE: [&str; 6] = [
    "#1f5fbf", "#c0392b", "#1e8449", "#8e44ad", "#d68910", "#17a589",
];

pub fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

pub fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Runs one engagement with the target on `policy` and the sensor and
/// attacker on their optimal headings. The horizon is twice the analytic
/// escape time for the chosen heading unless `max_time` is given.
pub fn run_engagement(
    eng: &EngagementF64,
    policy: TargetPolicyF64,
    dt: f64,
    max_time: Option<f64>,
) -> Result<(StrategyAssignmentF64, EngagementOutcomeF64), CliError> {
    let strat = StrategyAssignmentF64::optimal(eng, policy);
    let mut params = SimulationParamsF64::cli().with_dt(dt);
    params = match max_time {
        Some(t) => SimulationParamsF64 {
            max_time: t,
            ..params
        },
        None => params.with_horizon(eng, strat.gamma_t),
    };
    let outcome = simulate(eng, &strat, &params)?;
    Ok((strat, outcome))
}

#[derive(Debug, Serialize)]
struct TrajectoryRow {
    time: f64,
    sx: f64,
    sy: f64,
    ax: f64,
    ay: f64,
    tx: f64,
    ty: f64,
}

/// Trajectory CSV, every `stride`-th sample plus the terminal one.
pub fn trajectory_csv(outcome: &EngagementOutcomeF64, stride: usize) -> Result<Vec<u8>, CliError> {
    let tr = &outcome.trajectory;
    let stride = stride.max(1);
    let mut w = csv::Writer::from_writer(Vec::new());
    let last = tr.len().saturating_sub(1);
    for k in (0..tr.len()).filter(|&k| k % stride == 0 || k == last) {
        w.serialize(TrajectoryRow {
            time: tr.times[k],
            sx: tr.s[k].x,
            sy: tr.s[k].y,
            ax: tr.a[k].x,
            ay: tr.a[k].y,
            tx: tr.t[k].x,
            ty: tr.t[k].y,
        })?;
    }
    w.into_inner()
        .map_err(|e| CliError::Csv(e.into_error().into()))
}

/// Engagement re-posed from the agents' latest positions that still form
/// a valid start (the terminal instant itself never does).
fn engagement_at(eng: &EngagementF64, outcome: &EngagementOutcomeF64) -> Option<EngagementF64> {
    let tr = &outcome.trajectory;
    (0..tr.len()).rev().find_map(|k| {
        EngagementF64::new(EngagementConfigF64 {
            s0: tr.s[k],
            a0: tr.a[k],
            t0: tr.t[k],
            ..*eng.config()
        })
        .ok()
    })
}

fn regions_of(svg: &mut Svg, eng: &EngagementF64, samples: usize, line: Line) {
    if let Ok(b) = sensable_boundary(eng, samples) {
        svg.polygon(b.points().collect(), SENSOR, line);
    }
    let c = apollonius(eng);
    svg.circle(c.center, c.radius, ATTACKER, line);
}

/// Trajectories over the initial (dashed) and final (solid) sensable
/// regions and Apollonius circles.
pub fn trajectory_svg(
    eng: &EngagementF64,
    outcome: &EngagementOutcomeF64,
    samples: usize,
) -> String {
    let mut svg = Svg::new();
    let cfg = eng.config();
    svg.circle(cfg.s0, cfg.r, "#999999", Line::Dashed);
    regions_of(&mut svg, eng, samples, Line::Dashed);
    if let Some(end) = engagement_at(eng, outcome) {
        regions_of(&mut svg, &end, samples, Line::Solid);
    }
    let tr = &outcome.trajectory;
    svg.polyline(tr.s.clone(), SENSOR, Line::Solid);
    svg.polyline(tr.a.clone(), ATTACKER, Line::Solid);
    svg.polyline(tr.t.clone(), TARGET, Line::Solid);
    svg.marker(cfg.s0, SENSOR, "S");
    svg.marker(cfg.a0, ATTACKER, "A");
    svg.marker(cfg.t0, TARGET, "T");
    svg.marker(outcome.terminal_point, TARGET, outcome.kind.as_str());
    svg.render()
}

pub fn simulation_summary(
    out: &mut dyn Write,
    strat: &StrategyAssignmentF64,
    outcome: &EngagementOutcomeF64,
) -> std::io::Result<()> {
    writeln!(out, "policy       {}", strat.target_policy)?;
    if strat.fell_back {
        writeln!(out, "             no escape heading; fleeing the attacker")?;
    }
    writeln!(out, "gamma_t      {:.4} deg", strat.gamma_t.degrees())?;
    writeln!(out, "gamma_s      {:.4} deg", strat.gamma_s.degrees())?;
    writeln!(out, "gamma_a      {:.4} deg", strat.gamma_a.degrees())?;
    writeln!(out, "outcome      {}", outcome.kind.as_str())?;
    writeln!(out, "t_final      {:.4} s", outcome.t_final)?;
    writeln!(
        out,
        "terminal     ({:.4}, {:.4})",
        outcome.terminal_point.x, outcome.terminal_point.y
    )?;
    if outcome.tie {
        writeln!(out, "tie          capture and escape in the same step")?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// Fixed target heading, degrees.
    Heading,
    /// Target speed, m/s.
    Speed,
}

/// `n` evenly spaced values from `min` to `max` inclusive; a single value
/// when the range has zero width.
pub fn grid(min: f64, max: f64, n: usize) -> Result<Vec<f64>, CliError> {
    if !(min.is_finite() && max.is_finite()) || min > max {
        return Err(CliError::Arg {
            flag: "min",
            message: format!("need finite min <= max, got [{min}, {max}]"),
        });
    }
    if n == 0 {
        return Err(CliError::Arg {
            flag: "n",
            message: "must be at least 1".into(),
        });
    }
    if min == max || n == 1 {
        return Ok(vec![min]);
    }
    let step = (max - min) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            if i + 1 == n {
                max
            } else {
                min + step * i as f64
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepCell {
    pub value: f64,
    pub valid: bool,
    pub outcome: Option<String>,
    pub t_final: Option<f64>,
    pub escape_distance: Option<f64>,
    pub escape_time: Option<f64>,
    pub contained: Option<bool>,
    pub min_margin: Option<f64>,
    pub note: String,
}

impl SweepCell {
    fn invalid(value: f64, note: String) -> Self {
        SweepCell {
            value,
            valid: false,
            outcome: None,
            t_final: None,
            escape_distance: None,
            escape_time: None,
            contained: None,
            min_margin: None,
            note,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub axis: Axis,
    pub cells: Vec<SweepCell>,
}

fn sweep_cell(
    eng: &EngagementF64,
    axis: Axis,
    value: f64,
    samples: usize,
    dt: f64,
) -> Result<SweepCell, CliError> {
    let (eng, policy, heading) = match axis {
        Axis::Heading => {
            let h = HeadingF64::from_degrees(value);
            (*eng, TargetPolicyF64::Fixed(h), Some(h))
        }
        Axis::Speed => match eng.with_target_speed(value) {
            Ok(e) => (e, TargetPolicyF64::BestEscape, None),
            Err(err) => return Ok(SweepCell::invalid(value, err.to_string())),
        },
    };
    let verdict = capture_guaranteed(&eng, samples, default_eps(&eng))?;
    let esc = match heading {
        Some(h) => escape_distance(&eng, h),
        None => min_escape(&eng),
    };
    let (strat, outcome) = run_engagement(&eng, policy, dt, None)?;
    let note = match (outcome.tie, strat.fell_back) {
        (true, _) => "tie".to_string(),
        (false, true) => "fled attacker".to_string(),
        _ => String::new(),
    };
    Ok(SweepCell {
        value,
        valid: true,
        outcome: Some(outcome.kind.as_str().to_string()),
        t_final: Some(outcome.t_final),
        escape_distance: Some(esc.escape_distance),
        escape_time: Some(esc.escape_time),
        contained: Some(verdict.is_contained()),
        min_margin: Some(verdict.min_margin()),
        note,
    })
}

/// Heading cells simulate that fixed heading; speed cells simulate the
/// best-escape policy and report the minimum escape.
pub fn sweep(
    eng: &EngagementF64,
    axis: Axis,
    values: &[f64],
    samples: usize,
    dt: f64,
) -> Result<SweepResult, CliError> {
    let cells = values
        .par_iter()
        .map(|&v| sweep_cell(eng, axis, v, samples, dt))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepResult { axis, cells })
}

pub fn sweep_csv(result: &SweepResult) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for cell in &result.cells {
        w.serialize(cell)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Csv(e.into_error().into()))
}

/// The first value at which the simulated outcome changes from capture to
/// escape, among valid cells.
pub fn outcome_flip(result: &SweepResult) -> Option<f64> {
    let valid: Vec<_> = result.cells.iter().filter(|c| c.valid).collect();
    valid.windows(2).find_map(|w| {
        (w[0].outcome.as_deref() == Some("capture") && w[1].outcome.as_deref() == Some("escape"))
            .then_some(w[1].value)
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionSet {
    pub v_t: f64,
    /// `(heading, escape distance, point)` per sample.
    pub sensable: Vec<(HeadingF64, f64, Point2F64)>,
    pub apollonius: Vec<Point2F64>,
    pub center: Point2F64,
    pub radius: f64,
}

pub fn regions(
    eng: &EngagementF64,
    speeds: &[f64],
    samples: usize,
) -> Result<Vec<RegionSet>, CliError> {
    speeds
        .iter()
        .map(|&v| {
            let e = eng.with_target_speed(v).map_err(|err| CliError::Arg {
                flag: "speeds",
                message: format!("v_t = {v}: {err}"),
            })?;
            let b = sensable_boundary(&e, samples)?;
            let c = apollonius(&e);
            Ok(RegionSet {
                v_t: v,
                sensable: b
                    .samples
                    .iter()
                    .map(|s| (s.heading(), s.escape_distance, s.point))
                    .collect(),
                apollonius: c.samples(samples),
                center: c.center,
                radius: c.radius,
            })
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct RegionRow {
    v_t: f64,
    region: &'static str,
    index: usize,
    x: f64,
    y: f64,
}

pub fn regions_csv(sets: &[RegionSet]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for set in sets {
        for (index, (_, _, p)) in set.sensable.iter().enumerate() {
            w.serialize(RegionRow {
                v_t: set.v_t,
                region: "sensable",
                index,
                x: p.x,
                y: p.y,
            })?;
        }
        for (index, p) in set.apollonius.iter().enumerate() {
            w.serialize(RegionRow {
                v_t: set.v_t,
                region: "apollonius",
                index,
                x: p.x,
                y: p.y,
            })?;
        }
    }
    w.into_inner()
        .map_err(|e| CliError::Csv(e.into_error().into()))
}

/// One pair per speed: sensable boundary solid, Apollonius circle dashed.
pub fn regions_svg(eng: &EngagementF64, sets: &[RegionSet]) -> String {
    let mut svg = Svg::new();
    let cfg = eng.config();
    for (i, set) in sets.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        svg.polygon(
            set.sensable.iter().map(|s| s.2).collect(),
            color,
            Line::Solid,
        );
        svg.circle(set.center, set.radius, color, Line::Dashed);
    }
    svg.marker(cfg.s0, SENSOR, "S");
    svg.marker(cfg.a0, ATTACKER, "A");
    svg.marker(cfg.t0, TARGET, "T");
    svg.render()
}

/// Faster targets must have sensable regions inside, and Apollonius
/// circles around, those of slower ones.
pub fn check_nesting(sets: &[RegionSet]) -> Result<(), String> {
    let mut order: Vec<&RegionSet> = sets.iter().collect();
    order.sort_by(|a, b| a.v_t.total_cmp(&b.v_t));
    for w in order.windows(2) {
        let (slow, fast) = (w[0], w[1]);
        if fast.v_t == slow.v_t {
            continue;
        }
        if let Some(((h, _, _), _)) = fast
            .sensable
            .iter()
            .zip(&slow.sensable)
            .find(|(f, s)| f.1 > s.1)
        {
            return Err(format!(
                "sensable region at v_t = {} exceeds the one at {} along {:.2} deg",
                fast.v_t,
                slow.v_t,
                h.degrees()
            ));
        }
        let inner = sat_pursuit::ApolloniusCircleF64 {
            center: slow.center,
            radius: slow.radius,
        };
        let outer = sat_pursuit::ApolloniusCircleF64 {
            center: fast.center,
            radius: fast.radius,
        };
        if !(fast.radius > slow.radius && outer.contains_circle(&inner)) {
            return Err(format!(
                "apollonius circle at v_t = {} does not enclose the one at {}",
                fast.v_t, slow.v_t
            ));
        }
    }
    Ok(())
}
