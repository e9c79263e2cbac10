//! The TOML run configuration: matrix dimensions, physics and controller
//! overrides, analysis options and the output directory. Every field has a
//! default, so an empty file (or no file) runs the standard experiment.

use super::{ExperimentMatrix, HarnessError};
use crate::controller::{BankParams, DEFAULT_RUDDER_LIMIT_DEG};
use crate::sim::{PolarTable, SimParams};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub matrix: MatrixSection,
    pub physics: PhysicsSection,
    pub controller: ControllerSection,
    pub analysis: AnalysisSection,
    pub output: OutputSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MatrixSection {
    pub wind_configs: Vec<String>,
    pub fou_sizes: Vec<u32>,
    pub vertical_movements: Vec<u32>,
    pub turn_counts: Vec<u8>,
    pub runs_per_batch: u32,
    pub base_seed: u64,
    pub benchmark: bool,
}

impl Default for MatrixSection {
    fn default() -> Self {
        let m = ExperimentMatrix::default();
        Self {
            wind_configs: m.wind_configs.iter().map(|c| c.to_string()).collect(),
            fou_sizes: m.fou_sizes,
            vertical_movements: m.vertical_movements,
            turn_counts: m.turn_counts,
            runs_per_batch: m.runs_per_batch,
            base_seed: m.base_seed,
            benchmark: m.benchmark,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PhysicsSection {
    pub dt_s: f64,
    pub timeout_s: f64,
    pub capture_radius_m: f64,
    pub wind_interval_s: f64,
    pub speed_tau_s: f64,
    pub turn_rate_per_deg: f64,
    pub full_effect_speed_mps: f64,
    pub wind_sigma_divisor: f64,
    /// Polar table as (off-wind angle, speed fraction) pairs.
    pub polar: Vec<(f64, f64)>,
}

impl Default for PhysicsSection {
    fn default() -> Self {
        let p = SimParams::default();
        Self {
            dt_s: p.dt_s,
            timeout_s: p.timeout_s,
            capture_radius_m: p.capture_radius_m,
            wind_interval_s: p.wind_interval_s,
            speed_tau_s: p.speed_tau_s,
            turn_rate_per_deg: p.turn_rate_per_deg,
            full_effect_speed_mps: p.full_effect_speed_mps,
            wind_sigma_divisor: p.wind_sigma_divisor,
            polar: p.polar.points().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ControllerSection {
    pub rudder_limit_deg: f64,
    pub controller_period_s: f64,
    pub error_half_range: f64,
    pub delta_half_range: f64,
    pub output_half_range: f64,
    pub grid_points: usize,
}

impl Default for ControllerSection {
    fn default() -> Self {
        let b = BankParams::default();
        Self {
            rudder_limit_deg: DEFAULT_RUDDER_LIMIT_DEG,
            controller_period_s: SimParams::default().controller_period_s,
            error_half_range: b.error_half_range,
            delta_half_range: b.delta_half_range,
            output_half_range: b.output_half_range,
            grid_points: b.grid_points,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnalysisSection {
    /// Count timed-out runs (with their partial-trajectory RMSE) in batch
    /// means and comparisons. Disable to restrict analysis to completed
    /// runs.
    pub include_incomplete_runs: bool,
}

impl Default for AnalysisSection {
    fn default() -> Self {
        Self {
            include_incomplete_runs: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub dir: PathBuf,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("results"),
        }
    }
}

impl RunConfig {
    pub fn from_path(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        let config: RunConfig = toml::from_str(text).map_err(|e| HarnessError::BadConfig(e.to_string()))?;
        config.matrix()?.validate()?;
        config.sim_params()?;
        Ok(config)
    }

    pub fn matrix(&self) -> Result<ExperimentMatrix, HarnessError> {
        let mut wind_configs = Vec::new();
        for label in &self.matrix.wind_configs {
            let mut chars = label.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => wind_configs.push(c),
                _ => {
                    return Err(HarnessError::BadConfig(format!(
                        "wind config label must be a single letter, got '{label}'"
                    )))
                }
            }
        }
        Ok(ExperimentMatrix {
            wind_configs,
            fou_sizes: self.matrix.fou_sizes.clone(),
            vertical_movements: self.matrix.vertical_movements.clone(),
            turn_counts: self.matrix.turn_counts.clone(),
            runs_per_batch: self.matrix.runs_per_batch,
            base_seed: self.matrix.base_seed,
            benchmark: self.matrix.benchmark,
        })
    }

    pub fn sim_params(&self) -> Result<SimParams, HarnessError> {
        let polar = PolarTable::new(self.physics.polar.clone())?;
        Ok(SimParams {
            dt_s: self.physics.dt_s,
            timeout_s: self.physics.timeout_s,
            capture_radius_m: self.physics.capture_radius_m,
            wind_interval_s: self.physics.wind_interval_s,
            controller_period_s: self.controller.controller_period_s,
            speed_tau_s: self.physics.speed_tau_s,
            turn_rate_per_deg: self.physics.turn_rate_per_deg,
            full_effect_speed_mps: self.physics.full_effect_speed_mps,
            wind_sigma_divisor: self.physics.wind_sigma_divisor,
            polar,
        })
    }

    pub fn bank_params(&self) -> BankParams {
        BankParams {
            error_half_range: self.controller.error_half_range,
            delta_half_range: self.controller.delta_half_range,
            output_half_range: self.controller.output_half_range,
            grid_points: self.controller.grid_points,
        }
    }

    pub fn rudder_limit_deg(&self) -> f64 {
        self.controller.rudder_limit_deg
    }

    pub fn include_incomplete_runs(&self) -> bool {
        self.analysis.include_incomplete_runs
    }

    pub fn output_dir(&self) -> &Path {
        &self.output.dir
    }
}
