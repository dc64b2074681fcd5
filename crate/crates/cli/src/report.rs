//! The `analyze` report: every closed-form quantity for one scenario.

use std::fmt;

use sat_pursuit::analysis::{
    apollonius, capture_guaranteed, critical_speed, default_eps, min_escape, speed_bounds,
    tangent_escape_speed, Containment, DEFAULT_SPEED_TOL,
};
use sat_pursuit::{AnalysisError, EngagementF64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryReport {
    pub d_st0: f64,
    pub d_at0: f64,
    pub theta_st0_deg: f64,
    pub theta_at0_deg: f64,
    pub nu: f64,
    pub mu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinEscapeReport {
    pub heading_deg: f64,
    pub distance: f64,
    pub time: f64,
    pub point: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleReport {
    pub center: [f64; 2],
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainmentReport {
    pub contained: bool,
    /// Smallest sampled radial margin; negative when breached.
    pub min_margin: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub breach_heading_deg: Option<f64>,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub v_lower: f64,
    pub v_upper: Option<f64>,
    pub admissible: bool,
    pub admissibility_lhs: f64,
    pub admissibility_rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentReport {
    pub roots: [f64; 2],
    pub selected: f64,
    pub ambiguous: bool,
}

/// A solver result, or the reason it is unavailable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solved<T> {
    Value(T),
    Unavailable(String),
}

impl<T> Solved<T> {
    fn from_result(r: Result<T, AnalysisError>) -> (Self, Option<AnalysisError>) {
        match r {
            Ok(v) => (Solved::Value(v), None),
            Err(e) => (Solved::Unavailable(e.to_string()), Some(e)),
        }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            Solved::Value(v) => Some(v),
            Solved::Unavailable(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub geometry: GeometryReport,
    pub min_escape: MinEscapeReport,
    pub apollonius: CircleReport,
    pub containment: ContainmentReport,
    pub speed_bounds: BoundsReport,
    pub critical_speed: Solved<f64>,
    pub tangent_speed: Solved<TangentReport>,
}

/// Report plus any solver failure worth a non-zero exit.
pub struct Analysis {
    pub report: AnalysisReport,
    pub diagnostic: Option<AnalysisError>,
}

fn xy(p: sat_pursuit::Point2F64) -> [f64; 2] {
    [p.x, p.y]
}

impl AnalysisReport {
    pub fn compute(eng: &EngagementF64, samples: usize) -> Result<Analysis, AnalysisError> {
        let g = eng.geometry();
        let fam = eng.family();
        let esc = min_escape(eng);
        let circle = apollonius(eng);
        let verdict = capture_guaranteed(eng, samples, default_eps(eng))?;
        let bounds = speed_bounds(&fam)?;

        let (critical, crit_err) =
            Solved::from_result(critical_speed(&fam, DEFAULT_SPEED_TOL, samples));
        let (tangent, _) = Solved::from_result(tangent_escape_speed(&fam).map(|t| TangentReport {
            roots: [t.roots.0, t.roots.1],
            selected: t.selected,
            ambiguous: t.ambiguous,
        }));
        // an inadmissible bracket is an answer; a bracket that does not flip
        // is a solver problem
        let diagnostic = crit_err.filter(|e| matches!(e, AnalysisError::Bracket { .. }));

        let report = AnalysisReport {
            geometry: GeometryReport {
                d_st0: g.d_st0,
                d_at0: g.d_at0,
                theta_st0_deg: g.theta_st0.degrees(),
                theta_at0_deg: g.theta_at0.degrees(),
                nu: g.nu,
                mu: g.mu,
            },
            min_escape: MinEscapeReport {
                heading_deg: esc.heading.degrees(),
                distance: esc.escape_distance,
                time: esc.escape_time,
                point: xy(esc.escape_point),
            },
            apollonius: CircleReport {
                center: xy(circle.center),
                radius: circle.radius,
            },
            containment: ContainmentReport {
                contained: verdict.is_contained(),
                min_margin: verdict.min_margin(),
                breach_heading_deg: match verdict {
                    Containment::Breached { heading, .. } => Some(heading.degrees()),
                    Containment::Contained { .. } => None,
                },
                samples,
            },
            speed_bounds: BoundsReport {
                v_lower: bounds.v_lower,
                v_upper: bounds.v_upper,
                admissible: bounds.admissible,
                admissibility_lhs: bounds.admissibility_lhs,
                admissibility_rhs: bounds.admissibility_rhs,
            },
            critical_speed: critical,
            tangent_speed: tangent,
        };
        Ok(Analysis { report, diagnostic })
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.geometry;
        writeln!(f, "geometry")?;
        writeln!(f, "  d_st0        {:.4} m", g.d_st0)?;
        writeln!(f, "  d_at0        {:.4} m", g.d_at0)?;
        writeln!(f, "  theta_st0    {:.2} deg", g.theta_st0_deg)?;
        writeln!(f, "  theta_at0    {:.2} deg", g.theta_at0_deg)?;
        writeln!(f, "  nu, mu       {:.4}, {:.4}", g.nu, g.mu)?;

        let m = &self.min_escape;
        writeln!(f, "minimum escape")?;
        writeln!(f, "  heading      {:.2} deg", m.heading_deg)?;
        writeln!(f, "  distance     {:.4} m", m.distance)?;
        writeln!(f, "  time         {:.4} s", m.time)?;

        let c = &self.apollonius;
        writeln!(f, "apollonius circle")?;
        writeln!(f, "  center       ({:.4}, {:.4})", c.center[0], c.center[1])?;
        writeln!(f, "  radius       {:.4} m", c.radius)?;

        let k = &self.containment;
        writeln!(f, "containment ({} samples)", k.samples)?;
        if k.contained {
            writeln!(
                f,
                "  contained, capture guaranteed (margin {:.4} m)",
                k.min_margin
            )?;
        } else {
            writeln!(f, "  breached by {:.4} m", -k.min_margin)?;
            if let Some(h) = k.breach_heading_deg {
                writeln!(f, "  escape heading {h:.2} deg")?;
            }
        }

        let b = &self.speed_bounds;
        writeln!(f, "target speed bounds")?;
        writeln!(f, "  v_lower      {:.4} m/s", b.v_lower)?;
        match (b.v_upper, b.admissible) {
            (Some(v), true) => writeln!(f, "  v_upper      {v:.4} m/s")?,
            (v, _) => {
                if let Some(v) = v {
                    writeln!(f, "  v_upper      {v:.4} m/s (not below v_a)")?;
                }
                writeln!(
                    f,
                    "  escape bound inadmissible: 2(r - d_st0)/d_at0 = {:.4} >= 1 - v_s/v_a = {:.4}",
                    b.admissibility_lhs, b.admissibility_rhs
                )?;
            }
        }
        match &self.critical_speed {
            Solved::Value(v) => writeln!(f, "  critical     {v:.4} m/s (bisection)")?,
            Solved::Unavailable(why) => writeln!(f, "  critical     unavailable: {why}")?,
        }
        match &self.tangent_speed {
            Solved::Value(t) => {
                writeln!(
                    f,
                    "  tangent      {:.4} m/s (roots {:.4}, {:.4}{})",
                    t.selected,
                    t.roots[0],
                    t.roots[1],
                    if t.ambiguous { "; both in bracket" } else { "" }
                )?;
            }
            Solved::Unavailable(why) => writeln!(f, "  tangent      unavailable: {why}")?,
        }
        Ok(())
    }
}
