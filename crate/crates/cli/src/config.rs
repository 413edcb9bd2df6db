//! `run --config job.json`: the same commands, described as data.

use mubtomo::Tolerances;
use serde::Deserialize;

use crate::args::{Command, Direction, Level, RepairArg};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JobCommand {
    Construct,
    Tomogram,
    Reconstruct,
    Simulate,
    Verify,
    Intertwine,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    pub herm: Option<f64>,
    pub trace: Option<f64>,
    pub norm: Option<f64>,
    pub psd: Option<f64>,
}

impl ToleranceOverrides {
    pub fn apply(&self, base: Tolerances) -> Result<Tolerances, CliError> {
        let pick = |name: &str, v: Option<f64>, default: f64| match v {
            Some(t) => check_tolerance(&format!("tolerance.{name}"), t),
            None => Ok(default),
        };
        Ok(Tolerances {
            herm: pick("herm", self.herm, base.herm)?,
            trace: pick("trace", self.trace, base.trace)?,
            norm: pick("norm", self.norm, base.norm)?,
            psd: pick("psd", self.psd, base.psd)?,
        })
    }
}

pub fn check_tolerance(name: &str, t: f64) -> Result<f64, CliError> {
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err(CliError::input(format!("{name} must be a positive finite number, got {t}")))
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub command: JobCommand,
    pub dimension: Option<usize>,
    #[serde(default)]
    pub tolerance: ToleranceOverrides,
    pub seed: Option<u64>,
    pub shots: Option<u64>,
    pub state: Option<String>,
    pub mub: Option<String>,
    pub tomogram: Option<String>,
    pub symbol: Option<String>,
    pub out: Option<String>,
    pub repair: Option<RepairArg>,
    pub level: Option<Level>,
    pub direction: Option<Direction>,
    #[serde(default)]
    pub inject_fault: bool,
}

fn required<T>(v: Option<T>, field: &str, cmd: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::input(format!("job config: `{field}` is required for {cmd}")))
}

fn positive_dim(v: Option<usize>, cmd: &str) -> Result<usize, CliError> {
    let d = required(v, "dimension", cmd)?;
    if d == 0 {
        return Err(CliError::input("job config: dimension must be positive"));
    }
    Ok(d)
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::input(format!("job config: {e}")))
    }

    /// Validates every field and lowers the job to a command.
    pub fn to_command(&self) -> Result<Command, CliError> {
        self.tolerance.apply(Tolerances::default())?;
        let out = self.out.clone().unwrap_or_else(|| "-".to_string());
        let unused = |field: &str, present: bool, cmd: &str| {
            if present {
                Err(CliError::input(format!("job config: `{field}` does not apply to {cmd}")))
            } else {
                Ok(())
            }
        };
        let cmd = match self.command {
            JobCommand::Construct => {
                unused("shots", self.shots.is_some(), "construct")?;
                Command::Construct { dim: positive_dim(self.dimension, "construct")?, out }
            }
            JobCommand::Tomogram => Command::Tomogram {
                state: required(self.state.clone(), "state", "tomogram")?,
                mub: self.mub.clone(),
                out,
            },
            JobCommand::Reconstruct => Command::Reconstruct {
                tomogram: required(self.tomogram.clone(), "tomogram", "reconstruct")?,
                mub: self.mub.clone(),
                out,
            },
            JobCommand::Simulate => {
                let shots = required(self.shots, "shots", "simulate")?;
                if shots == 0 {
                    return Err(CliError::input("job config: shots must be positive"));
                }
                Command::Simulate {
                    state: required(self.state.clone(), "state", "simulate")?,
                    mub: self.mub.clone(),
                    shots,
                    seed: self.seed.unwrap_or(0),
                    repair: self.repair.unwrap_or(RepairArg::None),
                    out,
                }
            }
            JobCommand::Verify => {
                unused("shots", self.shots.is_some(), "verify")?;
                Command::Verify {
                    dim: positive_dim(self.dimension, "verify")?,
                    level: self.level.unwrap_or(Level::Quick),
                    seed: self.seed.unwrap_or(0),
                    out,
                    inject_fault: self.inject_fault,
                }
            }
            JobCommand::Intertwine => Command::Intertwine {
                direction: required(self.direction, "direction", "intertwine")?,
                symbol: required(self.symbol.clone(), "symbol", "intertwine")?,
                out,
            },
        };
        Ok(cmd)
    }
}
