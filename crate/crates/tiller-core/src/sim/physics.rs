//! Kinematic boat physics: a polar speed table with a 40-degree no-go
//! cone, first-order speed relaxation and rudder-driven heading change
//! scaled down at low speed.

use super::{SimError, Wind};
use crate::angles::{angle_between, normalize_heading};
use serde::{Deserialize, Serialize};

/// Boat state in world coordinates (x = east, y = north, metres; heading
/// in compass degrees normalised to [0, 360); speed in m/s; rudder in
/// degrees, positive turning clockwise).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoatState {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
    pub speed: f64,
    pub rudder: f64,
}

/// Piecewise-linear boat-speed fraction as a function of the off-wind
/// angle (|heading - wind direction|, 0..180 degrees).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarTable {
    points: Vec<(f64, f64)>,
}

impl PolarTable {
    /// Default polar: no drive below 40 degrees off the wind, best speed
    /// fraction 0.35 at 120 degrees, 0.25 dead downwind.
    pub fn standard() -> Self {
        Self {
            points: vec![(0.0, 0.0), (40.0, 0.0), (90.0, 0.30), (120.0, 0.35), (180.0, 0.25)],
        }
    }

    pub fn new(points: Vec<(f64, f64)>) -> Result<Self, SimError> {
        if points.len() < 2 || points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(SimError::BadPolarTable);
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    /// Speed fraction at an off-wind angle, clamped to the table ends.
    pub fn fraction(&self, angle: f64) -> f64 {
        let pts = &self.points;
        if angle <= pts[0].0 {
            return pts[0].1;
        }
        if angle >= pts[pts.len() - 1].0 {
            return pts[pts.len() - 1].1;
        }
        for w in pts.windows(2) {
            let (a0, f0) = w[0];
            let (a1, f1) = w[1];
            if angle <= a1 {
                return f0 + (f1 - f0) * (angle - a0) / (a1 - a0);
            }
        }
        unreachable!("angle bounded by table ends");
    }
}

/// Every tunable constant of the simulated world. Defaults reproduce the
/// standard experiment setup; all of them can be overridden from the
/// harness configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimParams {
    /// Physics integration step, seconds.
    pub dt_s: f64,
    /// Episode wall clock limit, simulated seconds.
    pub timeout_s: f64,
    /// Waypoint capture radius, metres.
    pub capture_radius_m: f64,
    /// Wind resampling period, simulated seconds.
    pub wind_interval_s: f64,
    /// Controller period, simulated seconds (1 Hz control loop).
    pub controller_period_s: f64,
    /// First-order speed relaxation time constant, seconds.
    pub speed_tau_s: f64,
    /// Heading rate per degree of rudder at full effect, 1/s.
    pub turn_rate_per_deg: f64,
    /// Boat speed at which the rudder reaches full effect, m/s.
    pub full_effect_speed_mps: f64,
    /// Gaussian width divisor for wind sampling (sigma = range / divisor).
    pub wind_sigma_divisor: f64,
    pub polar: PolarTable,
}

impl Default for SimParams {
    fn default() -> Self {
        Self {
            dt_s: 0.25,
            timeout_s: 1800.0,
            capture_radius_m: 10.0,
            wind_interval_s: 4.0,
            controller_period_s: 1.0,
            speed_tau_s: 3.0,
            turn_rate_per_deg: 0.5,
            full_effect_speed_mps: 2.0,
            wind_sigma_divisor: 4.0,
            polar: PolarTable::standard(),
        }
    }
}

/// Attainable boat speed for a wind speed and off-wind angle.
pub fn polar_speed(wind_speed: f64, off_wind_angle: f64, polar: &PolarTable) -> f64 {
    wind_speed * polar.fraction(off_wind_angle)
}

/// Advance the boat by one physics step: relax speed toward the polar
/// target, turn under rudder (attenuated below full-effect speed), advance
/// the position along the new heading and renormalise it.
pub fn step_physics(state: &BoatState, wind: &Wind, params: &SimParams) -> BoatState {
    let dt = params.dt_s;
    let off_wind = angle_between(state.heading, wind.direction_from);
    let target = polar_speed(wind.speed, off_wind, &params.polar);
    let speed = state.speed + (target - state.speed) * (dt / params.speed_tau_s);

    let effect = (speed / params.full_effect_speed_mps).min(1.0);
    let heading = state.heading + params.turn_rate_per_deg * state.rudder * effect * dt;

    let rad = heading.to_radians();
    BoatState {
        x: state.x + speed * libm::sin(rad) * dt,
        y: state.y + speed * libm::cos(rad) * dt,
        heading: normalize_heading(heading),
        speed,
        rudder: state.rudder,
    }
}
