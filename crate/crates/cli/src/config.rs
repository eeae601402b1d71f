//! Run configuration file.
//!
//! ```json
//! {
//!   "version": 1,
//!   "setup": { "zeta0": 10, "zeta_r": 10, "fsr": 1, "gamma": 0.1, "omega_d": 0, "s": -1 },
//!   "optomech": { "omega_m": 1, "gamma_m": 1e-6, "nbar": 100, "g": 0.1, "delta_d": 1 },
//!   "sweep": { "variable": "delta", "min": -0.01, "max": 0.01, "points": 2001, "scale": "linear" },
//!   "outputs": ["table", "summary"],
//!   "output_path": "out.csv",
//!   "format": "csv",
//!   "nbar_values": [10, 100],
//!   "gamma_values": [0.001, 0.01]
//! }
//! ```
//!
//! `zeta_r: null` describes a one-sided cavity. Unknown keys are rejected
//! at every level.

use std::path::{Path, PathBuf};

use fanocav::model::{linspace, logspace};
use fanocav::{identify_parameters, CoupledModeParams, OptomechParams, PhysicalSetup};
use serde::Deserialize;

use crate::CliError;

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepVariable {
    /// Detuning Δ = ω_d − ω.
    Delta,
    /// Absolute frequency ω (transmission) or mechanical frequency (force
    /// spectrum).
    Omega,
    /// Optomechanical coupling g.
    G,
    /// Time after the kernel origin.
    Time,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub variable: SweepVariable,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: Scale,
    /// Prepend an exact zero (useful with log-spaced couplings).
    #[serde(default)]
    pub include_zero: bool,
}

impl Sweep {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(format!("sweep: {m}")));
        if self.points == 0 {
            return bad("points must be at least 1".into());
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            return bad("bounds must be finite".into());
        }
        if self.points > 1 && !(self.min < self.max) {
            return bad(format!("min ({}) must be below max ({})", self.min, self.max));
        }
        if self.points == 1 && self.min != self.max {
            return bad("a single-point sweep needs min == max".into());
        }
        if self.scale == Scale::Log && !(self.min > 0.0) {
            return bad("log scale needs min > 0".into());
        }
        if self.include_zero && !(self.min > 0.0) {
            return bad("include_zero needs min > 0".into());
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let mut out = if self.include_zero { vec![0.0] } else { Vec::new() };
        out.extend(match self.scale {
            Scale::Linear => linspace(self.min, self.max, self.points),
            Scale::Log => logspace(self.min, self.max, self.points),
        });
        out
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptomechConfig {
    pub omega_m: f64,
    pub gamma_m: f64,
    #[serde(default)]
    pub nbar: f64,
    #[serde(default)]
    pub g: f64,
    /// Drive detuning from the mirror mode; defaults to ω_m.
    #[serde(default)]
    pub delta_d: Option<f64>,
}

impl OptomechConfig {
    pub fn delta_d(&self) -> f64 {
        self.delta_d.unwrap_or(self.omega_m)
    }

    pub fn params(&self, cm: &CoupledModeParams) -> Result<OptomechParams, CliError> {
        Ok(OptomechParams::new(cm, self.omega_m, self.gamma_m, self.nbar, self.g, self.delta_d())?)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub version: u32,
    pub setup: PhysicalSetup,
    #[serde(default)]
    pub optomech: Option<OptomechConfig>,
    #[serde(default)]
    pub sweep: Option<Sweep>,
    /// Requested products; empty means all products of the command.
    #[serde(default)]
    pub outputs: Vec<String>,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub nbar_values: Option<Vec<f64>>,
    #[serde(default)]
    pub gamma_values: Option<Vec<f64>>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.version != CONFIG_VERSION {
            return Err(CliError::Config(format!(
                "unsupported config version {} (expected {CONFIG_VERSION})",
                self.version
            )));
        }
        self.setup.validate()?;
        if let Some(s) = &self.sweep {
            s.validate()?;
        }
        if let Some(om) = &self.optomech {
            om.params(&self.coupled_mode()?)?;
        }
        for (name, list) in [("nbar_values", &self.nbar_values), ("gamma_values", &self.gamma_values)] {
            if let Some(v) = list {
                if v.is_empty() || v.iter().any(|x| !x.is_finite() || *x < 0.0) {
                    return Err(CliError::Config(format!(
                        "{name} must be a non-empty list of non-negative numbers"
                    )));
                }
            }
        }
        if let Some(v) = &self.gamma_values {
            if v.iter().any(|x| *x == 0.0) {
                return Err(CliError::Config("gamma_values must be positive".into()));
            }
        }
        Ok(())
    }

    pub fn coupled_mode(&self) -> Result<CoupledModeParams, CliError> {
        Ok(identify_parameters(&self.setup)?)
    }

    pub fn optomech(&self) -> Result<&OptomechConfig, CliError> {
        self.optomech
            .as_ref()
            .ok_or_else(|| CliError::Config("this command needs an \"optomech\" block".into()))
    }

    /// The requested products, checked against those `known` to a command.
    pub fn products(&self, known: &[&'static str]) -> Result<Vec<&'static str>, CliError> {
        if self.outputs.is_empty() {
            return Ok(known.to_vec());
        }
        let mut out = Vec::new();
        for name in &self.outputs {
            let Some(k) = known.iter().find(|k| **k == name.as_str()) else {
                return Err(CliError::Config(format!(
                    "unknown output \"{name}\" (known: {})",
                    known.join(", ")
                )));
            };
            if !out.contains(k) {
                out.push(*k);
            }
        }
        Ok(out)
    }

    /// Sweep values for `expected` variables, or `default` when no sweep is
    /// configured.
    pub fn sweep_values(
        &self,
        expected: &[SweepVariable],
        default: impl FnOnce() -> Sweep,
    ) -> Result<(SweepVariable, Vec<f64>), CliError> {
        let sweep = self.sweep.clone().unwrap_or_else(default);
        if !expected.contains(&sweep.variable) {
            return Err(CliError::Config(format!(
                "this command sweeps {:?}, not {:?}",
                expected, sweep.variable
            )));
        }
        sweep.validate()?;
        Ok((sweep.variable, sweep.values()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{"version": 1, "setup": {"zeta0": 10, "zeta_r": 10, "fsr": 1, "gamma": 0.1, "omega_d": 0, "s": -1}}"#;

    #[test]
    fn minimal_config() {
        let cfg = RunConfig::parse(BASE).unwrap();
        assert_eq!(cfg.setup.zeta_r, Some(10.0));
        assert!(cfg.optomech.is_none());
        assert_eq!(cfg.products(&["table", "summary"]).unwrap(), vec!["table", "summary"]);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let top = BASE.replacen("{", r#"{"verison": 1, "#, 1);
        assert!(matches!(RunConfig::parse(&top), Err(CliError::Config(_))));
        let nested = BASE.replace("\"fsr\"", "\"fsr_typo\": 1, \"fsr\"");
        assert!(RunConfig::parse(&nested).is_err());
    }

    #[test]
    fn version_and_sign_are_checked() {
        assert!(RunConfig::parse(&BASE.replace("\"version\": 1", "\"version\": 2")).is_err());
        assert!(RunConfig::parse(&BASE.replace("\"s\": -1", "\"s\": 0")).is_err());
        assert!(RunConfig::parse(&BASE.replace("\"fsr\": 1", "\"fsr\": -1")).is_err());
    }

    #[test]
    fn one_sided_is_null() {
        let cfg = RunConfig::parse(&BASE.replace("\"zeta_r\": 10", "\"zeta_r\": null")).unwrap();
        assert!(cfg.setup.is_one_sided());
    }

    #[test]
    fn sweeps() {
        let s = Sweep { variable: SweepVariable::G, min: 1e-3, max: 1.0, points: 4, scale: Scale::Log, include_zero: true };
        let v = s.values();
        assert_eq!(v.len(), 5);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[1], 1e-3);
        assert_eq!(v[4], 1.0);
        let bad = Sweep { min: 1.0, max: 0.0, ..s.clone() };
        assert!(bad.validate().is_err());
        let single = Sweep { variable: SweepVariable::Delta, min: 0.0, max: 0.0, points: 1, scale: Scale::Linear, include_zero: false };
        assert_eq!(single.values(), vec![0.0]);
        let cfg = RunConfig::parse(BASE).unwrap();
        assert!(cfg.products(&["table"]).is_ok());
        let mut cfg2 = cfg.clone();
        cfg2.outputs = vec!["plot".into()];
        assert!(cfg2.products(&["table"]).is_err());
    }
}
