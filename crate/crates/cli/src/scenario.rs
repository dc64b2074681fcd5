//! Scenario files: a JSON object with the engagement configuration and a
//! few optional defaults for the commands.

use std::fs;
use std::path::Path;

use sat_pursuit::analysis::DEFAULT_SAMPLES;
use sat_pursuit::{EngagementConfigF64, EngagementF64, Point2};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub s0: [f64; 2],
    pub a0: [f64; 2],
    pub t0: [f64; 2],
    pub v_s: f64,
    pub v_t: f64,
    pub v_a: f64,
    pub r: f64,
    /// Default target policy for `simulate`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub policy: Option<String>,
    /// Default `[min, max]` for speed sweeps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub speed_range: Option<[f64; 2]>,
    /// Boundary samples for containment and region output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

impl ScenarioFile {
    pub fn config(&self) -> EngagementConfigF64 {
        let p = |v: [f64; 2]| Point2 { x: v[0], y: v[1] };
        EngagementConfigF64 {
            s0: p(self.s0),
            a0: p(self.a0),
            t0: p(self.t0),
            v_s: self.v_s,
            v_t: self.v_t,
            v_a: self.v_a,
            r: self.r,
        }
    }

    pub fn samples(&self) -> usize {
        self.samples.unwrap_or(DEFAULT_SAMPLES)
    }
}

/// A parsed scenario whose configuration passed validation.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub file: ScenarioFile,
    pub engagement: EngagementF64,
}

impl Scenario {
    pub fn parse(path: &Path, text: &str) -> Result<Self, CliError> {
        let file: ScenarioFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        let cfg = file.config();
        let violations = cfg.violations();
        if !violations.is_empty() {
            return Err(CliError::Invalid {
                path: path.to_path_buf(),
                violations,
            });
        }
        let engagement = EngagementF64::new(cfg).expect("validated above");
        Ok(Scenario { file, engagement })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(path, &text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TAB1: &str = r#"{"s0": [0, 0], "a0": [1, 3], "t0": [1.25, 1.25],
        "v_s": 0.125, "v_t": 0.35, "v_a": 1, "r": 2}"#;

    #[test]
    fn parses_minimal() {
        let s = Scenario::parse(Path::new("x.json"), TAB1).unwrap();
        assert_eq!(s.file.samples(), DEFAULT_SAMPLES);
        assert!((s.engagement.geometry().d_st0 - 1.7678).abs() < 1e-4);
    }

    #[test]
    fn missing_field_named() {
        let text = TAB1.replace(r#""v_t": 0.35,"#, "");
        let err = Scenario::parse(Path::new("x.json"), &text).unwrap_err();
        assert!(err.to_string().contains("v_t"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn unknown_field_named() {
        let text = TAB1.replace(r#""r": 2"#, r#""r": 2, "radius": 3"#);
        let err = Scenario::parse(Path::new("x.json"), &text).unwrap_err();
        assert!(err.to_string().contains("radius"), "{err}");
    }

    #[test]
    fn violations_list_fields() {
        let text = TAB1.replace(r#""v_s": 0.125"#, r#""v_s": 0.5"#);
        let err = Scenario::parse(Path::new("x.json"), &text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("[v_s, v_t, v_a]"), "{msg}");
    }
}
