//! The helm controller: turns boat/waypoint geometry into (error,
//! delta-error) inputs, runs the selected fuzzy pipeline once per control
//! cycle and integrates the rudder-change output into a clamped rudder
//! angle.

use crate::angles::{bearing, wrap_signed};
use crate::fuzzy::{centroid_defuzz, infer_t1, CrispOutput, MFBank, RuleBase};
use crate::it2::{infer_it2, reduce_and_defuzz, BlurredBank, It2Error};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ControllerError {
    #[error(transparent)]
    Fuzzy(#[from] crate::fuzzy::FuzzyError),
    #[error(transparent)]
    It2(#[from] It2Error),
    #[error("rudder limit must be positive, got {0}")]
    BadRudderLimit(f64),
    #[error("defuzzification grid needs at least 2 points, got {0}")]
    BadGrid(usize),
}

/// Which fuzzy pipeline drives the helm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Hash)]
pub enum ControllerKind {
    Type1,
    IntervalType2,
}

impl std::fmt::Display for ControllerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ControllerKind::Type1 => f.write_str("t1"),
            ControllerKind::IntervalType2 => f.write_str("it2"),
        }
    }
}

/// Controller selection: the pipeline kind, the FOU size for the interval
/// type-2 variant (ignored for type-1) and the rudder stop angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControllerConfig {
    pub kind: ControllerKind,
    pub fou_size_m: f64,
    pub rudder_limit_deg: f64,
}

impl ControllerConfig {
    pub fn type1() -> Self {
        Self {
            kind: ControllerKind::Type1,
            fou_size_m: 0.0,
            rudder_limit_deg: DEFAULT_RUDDER_LIMIT_DEG,
        }
    }

    pub fn interval_type2(fou_size_m: f64) -> Self {
        Self {
            kind: ControllerKind::IntervalType2,
            fou_size_m,
            rudder_limit_deg: DEFAULT_RUDDER_LIMIT_DEG,
        }
    }
}

pub const DEFAULT_RUDDER_LIMIT_DEG: f64 = 30.0;

/// Geometry of the three membership banks plus the defuzzification grid.
///
/// Defaults: error universe +/-90 deg, delta-error +/-30 deg, rudder-change
/// +/-15 deg, each covered by five symmetric triangles with 50% overlap,
/// and a 201-point output grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BankParams {
    pub error_half_range: f64,
    pub delta_half_range: f64,
    pub output_half_range: f64,
    pub grid_points: usize,
}

impl Default for BankParams {
    fn default() -> Self {
        Self {
            error_half_range: 90.0,
            delta_half_range: 30.0,
            output_half_range: 15.0,
            grid_points: 201,
        }
    }
}

/// Mutable per-episode controller state: the previous heading error and
/// the integrated rudder angle (always clamped to the rudder limit).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelmState {
    pub previous_error: f64,
    pub current_rudder: f64,
}

impl Default for HelmState {
    fn default() -> Self {
        Self {
            previous_error: 0.0,
            current_rudder: 0.0,
        }
    }
}

/// The Macvicar-Whelan PD rule matrix used by every controller here.
pub fn default_rulebase() -> RuleBase {
    RuleBase::macvicar_whelan()
}

/// Heading error and delta-error from boat state and the active waypoint.
///
/// The error is the signed difference between the bearing to the waypoint
/// and the current heading, wrapped to (-180, 180]; delta-error is the
/// wrapped change since the previous cycle. A waypoint coincident with the
/// boat position yields zero error (the capture logic owns that state).
pub fn compute_errors(
    current_heading: f64,
    boat_position: (f64, f64),
    target_waypoint: (f64, f64),
    previous_error: f64,
) -> (f64, f64) {
    let error = if boat_position == target_waypoint {
        0.0
    } else {
        wrap_signed(bearing(boat_position, target_waypoint) - current_heading)
    };
    let delta = wrap_signed(error - previous_error);
    (error, delta)
}

/// A fully constructed helm controller: validated banks, rule base and
/// (for the interval type-2 variant) the blurred antecedent banks.
#[derive(Debug, Clone)]
pub struct HelmController {
    cfg: ControllerConfig,
    grid_points: usize,
    rules: RuleBase,
    error_bank: MFBank,
    delta_bank: MFBank,
    output_bank: MFBank,
    blurred: Option<(BlurredBank, BlurredBank)>,
}

impl HelmController {
    pub fn new(cfg: ControllerConfig, banks: &BankParams) -> Result<Self, ControllerError> {
        if !(cfg.rudder_limit_deg > 0.0) {
            return Err(ControllerError::BadRudderLimit(cfg.rudder_limit_deg));
        }
        if banks.grid_points < 2 {
            return Err(ControllerError::BadGrid(banks.grid_points));
        }
        let error_bank = MFBank::uniform(banks.error_half_range)?;
        let delta_bank = MFBank::uniform(banks.delta_half_range)?;
        let output_bank = MFBank::uniform(banks.output_half_range)?;
        let blurred = match cfg.kind {
            ControllerKind::Type1 => None,
            ControllerKind::IntervalType2 => Some((
                BlurredBank::from_bank(&error_bank, cfg.fou_size_m)?,
                BlurredBank::from_bank(&delta_bank, cfg.fou_size_m)?,
            )),
        };
        Ok(Self {
            cfg,
            grid_points: banks.grid_points,
            rules: default_rulebase(),
            error_bank,
            delta_bank,
            output_bank,
            blurred,
        })
    }

    pub fn config(&self) -> &ControllerConfig {
        &self.cfg
    }

    /// The raw pipeline output for one (error, delta) pair, before rudder
    /// integration. Exposed for sweeps and tests.
    pub fn rudder_change(&self, error: f64, delta: f64) -> CrispOutput {
        match &self.blurred {
            None => {
                let set = infer_t1(
                    &self.rules,
                    error,
                    delta,
                    &self.error_bank,
                    &self.delta_bank,
                    &self.output_bank,
                    self.grid_points,
                )
                .expect("banks validated at construction");
                centroid_defuzz(&set)
            }
            Some((error_blurred, delta_blurred)) => {
                let set = infer_it2(
                    &self.rules,
                    error,
                    delta,
                    error_blurred,
                    delta_blurred,
                    &self.output_bank,
                    self.grid_points,
                )
                .expect("banks validated at construction");
                reduce_and_defuzz(&set).expect("type reduction converges on inference output")
            }
        }
    }

    /// One control cycle: run the pipeline, integrate the rudder change
    /// into the clamped rudder angle and roll the error history forward.
    ///
    /// A vacuous pipeline output is treated as zero rudder change and
    /// logged as a warning; it signals a rule-coverage hole.
    pub fn step(&self, state: &HelmState, error: f64, delta: f64) -> (f64, HelmState) {
        let out = self.rudder_change(error, delta);
        if out.vacuous {
            log::warn!(
                "vacuous fuzzy output at error={error:.3}, delta={delta:.3}; rudder change forced to 0"
            );
        }
        let rudder = (state.current_rudder + out.value)
            .clamp(-self.cfg.rudder_limit_deg, self.cfg.rudder_limit_deg);
        (
            out.value,
            HelmState {
                previous_error: error,
                current_rudder: rudder,
            },
        )
    }
}
