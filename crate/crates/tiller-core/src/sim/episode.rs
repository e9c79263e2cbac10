//! The episode loop: physics at 4 Hz, controller at 1 Hz, wind resampled
//! every 4 s, waypoints captured within a fixed radius, and a per-cycle
//! log from which the heading RMSE is computed.

use super::{sample_wind_with_sigma, step_physics, BoatState, CourseSpec, SimParams, Wind, WindConfig};
use crate::angles::bearing;
use crate::controller::{compute_errors, HelmController, HelmState};
use crate::stats::cumulative_rmse;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::{self, BufRead, Write};

/// One control-cycle log row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleLog {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub heading: f64,
    pub speed: f64,
    pub rudder: f64,
    pub desired: f64,
    pub error: f64,
    pub rudder_change: f64,
    pub wind_dir: f64,
    pub wind_speed: f64,
}

/// Header of the per-run CSV log.
pub const RUN_LOG_HEADER: &str = "t,x,y,heading,speed,rudder,desired,error,rudder_change,wind_dir,wind_speed";

/// A complete simulated episode: the seed it ran under, every control
/// cycle, whether all waypoints were reached before the timeout, the
/// heading RMSE over the logged cycles and the elapsed simulated time.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub seed: u64,
    pub cycles: Vec<CycleLog>,
    pub completed: bool,
    pub rmse: f64,
    pub elapsed_s: f64,
}

impl RunRecord {
    pub fn errors(&self) -> Vec<f64> {
        self.cycles.iter().map(|c| c.error).collect()
    }

    /// Write the per-run log, one row per control cycle, every value at
    /// six decimal places.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{RUN_LOG_HEADER}")?;
        for c in &self.cycles {
            writeln!(
                w,
                "{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
                c.t, c.x, c.y, c.heading, c.speed, c.rudder, c.desired, c.error, c.rudder_change, c.wind_dir, c.wind_speed
            )?;
        }
        Ok(())
    }

    /// Parse a per-run log written by [`RunRecord::write_csv`].
    pub fn read_csv<R: BufRead>(r: R) -> io::Result<Vec<CycleLog>> {
        let bad = |line: &str| io::Error::new(io::ErrorKind::InvalidData, format!("bad log row: {line}"));
        let mut rows = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            if i == 0 {
                if line != RUN_LOG_HEADER {
                    return Err(io::Error::new(io::ErrorKind::InvalidData, "unexpected log header"));
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let fields: Vec<f64> = line
                .split(',')
                .map(|f| f.parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| bad(&line))?;
            if fields.len() != 11 {
                return Err(bad(&line));
            }
            rows.push(CycleLog {
                t: fields[0],
                x: fields[1],
                y: fields[2],
                heading: fields[3],
                speed: fields[4],
                rudder: fields[5],
                desired: fields[6],
                error: fields[7],
                rudder_change: fields[8],
                wind_dir: fields[9],
                wind_speed: fields[10],
            });
        }
        Ok(rows)
    }
}

/// The per-run RNG: ChaCha8 keyed by expanding the 64-bit run seed through
/// a splitmix64 chain. Pinned here so logs replay bit-exactly everywhere.
pub fn episode_rng(seed: u64) -> ChaCha8Rng {
    let mut state = seed;
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

pub(crate) fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Run one episode of a controller on a course under a wind configuration.
///
/// The boat starts at the first waypoint aiming at the second, rudder
/// centred, at rest. Each physics step first resamples wind (every
/// `wind_interval_s`), then runs the controller (every
/// `controller_period_s`), then integrates physics; a waypoint is captured
/// when the boat passes within `capture_radius_m`. The episode ends when
/// the final waypoint is captured or the timeout elapses.
pub fn run_episode(
    course: &CourseSpec,
    wind_cfg: &WindConfig,
    controller: &HelmController,
    params: &SimParams,
    seed: u64,
) -> RunRecord {
    let mut rng = episode_rng(seed);
    let waypoints = course.waypoints();

    let steps_per_ctrl = (params.controller_period_s / params.dt_s).round().max(1.0) as u64;
    let steps_per_wind = (params.wind_interval_s / params.dt_s).round().max(1.0) as u64;
    let max_steps = (params.timeout_s / params.dt_s).round() as u64;

    let mut state = BoatState {
        x: waypoints[0].0,
        y: waypoints[0].1,
        heading: bearing(waypoints[0], waypoints[1]),
        speed: 0.0,
        rudder: 0.0,
    };
    let mut helm = HelmState::default();
    let mut wind = Wind {
        direction_from: 0.0,
        speed: 0.0,
    };
    let mut next_waypoint = 1usize;
    let mut cycles = Vec::new();
    let mut completed = false;
    let mut elapsed_s = params.timeout_s;

    for step in 0..max_steps {
        let t = step as f64 * params.dt_s;
        if step % steps_per_wind == 0 {
            wind = sample_wind_with_sigma(wind_cfg, params.wind_sigma_divisor, &mut rng);
        }
        if step % steps_per_ctrl == 0 {
            let target = waypoints[next_waypoint];
            let desired = bearing((state.x, state.y), target);
            let (error, delta) = compute_errors(state.heading, (state.x, state.y), target, helm.previous_error);
            let (change, next_helm) = controller.step(&helm, error, delta);
            helm = next_helm;
            state.rudder = helm.current_rudder;
            cycles.push(CycleLog {
                t,
                x: state.x,
                y: state.y,
                heading: state.heading,
                speed: state.speed,
                rudder: state.rudder,
                desired,
                error,
                rudder_change: change,
                wind_dir: wind.direction_from,
                wind_speed: wind.speed,
            });
        }
        state = step_physics(&state, &wind, params);

        while next_waypoint < waypoints.len() {
            let (wx, wy) = waypoints[next_waypoint];
            let dist = libm::hypot(state.x - wx, state.y - wy);
            if dist > params.capture_radius_m {
                break;
            }
            next_waypoint += 1;
        }
        if next_waypoint == waypoints.len() {
            completed = true;
            elapsed_s = (step + 1) as f64 * params.dt_s;
            break;
        }
    }

    let errors: Vec<f64> = cycles.iter().map(|c| c.error).collect();
    let rmse = if errors.is_empty() {
        0.0
    } else {
        cumulative_rmse(&errors).expect("non-empty error log")
    };
    RunRecord {
        seed,
        cycles,
        completed,
        rmse,
        elapsed_s,
    }
}
