use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use sat_pursuit::TargetPolicyF64;

use crate::commands::{self, Axis};
use crate::error::CliError;
use crate::report::AnalysisReport;
use crate::scenario::Scenario;

#[derive(Debug, Parser)]
#[command(
    name = "sat-pursuit",
    version,
    about = "Sensor-attacker-target engagement workbench"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form analysis: escape distances, regions, speed thresholds.
    Analyze {
        file: PathBuf,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Boundary samples (defaults to the scenario's, else 512).
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Simulate one engagement and optionally write CSV and SVG.
    Simulate {
        file: PathBuf,
        /// fixed:<deg>, away-sensor, away-attacker, toward-attacker or
        /// best-escape (defaults to the scenario's, else best-escape).
        #[arg(long)]
        policy: Option<String>,
        /// Step size, seconds.
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Writes <prefix>.csv and <prefix>.svg.
        #[arg(long)]
        out_prefix: Option<PathBuf>,
        /// Keep every n-th trajectory row in the CSV.
        #[arg(long, default_value_t = 1)]
        stride: usize,
        /// Simulation horizon, seconds (default: twice the analytic escape
        /// time).
        #[arg(long)]
        max_time: Option<f64>,
    },
    /// Classify a grid of target headings or target speeds; CSV output.
    Sweep {
        file: PathBuf,
        #[arg(long, value_enum)]
        axis: Axis,
        #[arg(long)]
        min: Option<f64>,
        #[arg(long)]
        max: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sensable regions and Apollonius circles for several target speeds.
    Regions {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        speeds: Vec<f64>,
        /// Fail unless the regions nest monotonically in speed.
        #[arg(long)]
        check: bool,
        /// Writes <prefix>.csv and <prefix>.svg instead of CSV on stdout.
        #[arg(long)]
        out_prefix: Option<PathBuf>,
    },
}

fn io(e: std::io::Error) -> CliError {
    CliError::Write {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze {
            file,
            json,
            samples,
        } => {
            let sc = Scenario::load(&file)?;
            let n = samples.unwrap_or(sc.file.samples());
            let analysis = AnalysisReport::compute(&sc.engagement, n)?;
            if json {
                let text = serde_json::to_string_pretty(&analysis.report)?;
                writeln!(out, "{text}").map_err(io)?;
            } else {
                write!(out, "{}", analysis.report).map_err(io)?;
            }
            match analysis.diagnostic {
                Some(e) => Err(e.into()),
                None => Ok(()),
            }
        }
        Command::Simulate {
            file,
            policy,
            dt,
            out_prefix,
            stride,
            max_time,
        } => {
            let sc = Scenario::load(&file)?;
            let spec = policy
                .or(sc.file.policy.clone())
                .unwrap_or_else(|| "best-escape".into());
            let policy: TargetPolicyF64 = spec.parse().map_err(|e| CliError::Arg {
                flag: "policy",
                message: format!("{e}"),
            })?;
            if stride == 0 {
                return Err(CliError::Arg {
                    flag: "stride",
                    message: "must be at least 1".into(),
                });
            }
            let (strat, outcome) = commands::run_engagement(&sc.engagement, policy, dt, max_time)?;
            commands::simulation_summary(out, &strat, &outcome).map_err(io)?;
            if let Some(prefix) = out_prefix {
                let csv_path = commands::with_suffix(&prefix, ".csv");
                let svg_path = commands::with_suffix(&prefix, ".svg");
                commands::write_file(&csv_path, &commands::trajectory_csv(&outcome, stride)?)?;
                let svg = commands::trajectory_svg(&sc.engagement, &outcome, sc.file.samples());
                commands::write_file(&svg_path, svg.as_bytes())?;
                writeln!(
                    out,
                    "wrote {} and {}",
                    csv_path.display(),
                    svg_path.display()
                )
                .map_err(io)?;
            }
            if outcome.kind == sat_pursuit::OutcomeKind::Timeout {
                return Err(sat_pursuit::SimError::Timeout {
                    max_time: outcome.t_final,
                }
                .into());
            }
            Ok(())
        }
        Command::Sweep {
            file,
            axis,
            min,
            max,
            n,
            dt,
            out: dest,
        } => {
            let sc = Scenario::load(&file)?;
            let (min, max, n) = match axis {
                Axis::Heading => {
                    let n = n.unwrap_or(360);
                    let max = max.unwrap_or(360.0 * (1.0 - 1.0 / n.max(1) as f64));
                    (min.unwrap_or(0.0), max, n)
                }
                Axis::Speed => {
                    let range = sc.file.speed_range;
                    let pick = |given: Option<f64>, i: usize, flag| {
                        given.or(range.map(|r| r[i])).ok_or(CliError::Arg {
                            flag,
                            message: "required for speed sweeps without speed_range".into(),
                        })
                    };
                    (pick(min, 0, "min")?, pick(max, 1, "max")?, n.unwrap_or(101))
                }
            };
            let values = commands::grid(min, max, n)?;
            let result = commands::sweep(&sc.engagement, axis, &values, sc.file.samples(), dt)?;
            let csv = commands::sweep_csv(&result)?;
            match dest {
                Some(path) => commands::write_file(&path, &csv)?,
                None => out.write_all(&csv).map_err(io)?,
            }
            Ok(())
        }
        Command::Regions {
            file,
            speeds,
            check,
            out_prefix,
        } => {
            let sc = Scenario::load(&file)?;
            let sets = commands::regions(&sc.engagement, &speeds, sc.file.samples())?;
            let csv = commands::regions_csv(&sets)?;
            match out_prefix {
                Some(prefix) => {
                    let csv_path = commands::with_suffix(&prefix, ".csv");
                    let svg_path = commands::with_suffix(&prefix, ".svg");
                    commands::write_file(&csv_path, &csv)?;
                    let svg = commands::regions_svg(&sc.engagement, &sets);
                    commands::write_file(&svg_path, svg.as_bytes())?;
                    writeln!(
                        out,
                        "wrote {} and {}",
                        csv_path.display(),
                        svg_path.display()
                    )
                    .map_err(io)?;
                }
                None => out.write_all(&csv).map_err(io)?,
            }
            if check {
                commands::check_nesting(&sets).map_err(CliError::Check)?;
                eprintln!("nesting ok across {} speeds", sets.len());
            }
            Ok(())
        }
    }
}
