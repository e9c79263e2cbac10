//! The nine wind configurations and the bounded-Gaussian wind process.
//!
//! Direction and speed each carry an uncertainty band (none / low / high);
//! a configuration pairs one band of each and its uncertainty score is the
//! sum of the two band scores. Samples are Gaussian around the band
//! midpoint with sigma = range / 4, clipped to the band.

use super::SimError;
use rand::Rng;

/// One wind configuration: direction and speed bounds plus the per-channel
/// and summed uncertainty scores.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindConfig {
    pub label: char,
    pub dir_lower: f64,
    pub dir_upper: f64,
    pub speed_lower: f64,
    pub speed_upper: f64,
    pub dir_score: u8,
    pub speed_score: u8,
    pub uncertainty_score: u8,
}

// Direction bands: none (180, 180), low (160, 200), high (140, 220).
// Speed bands: none (7, 7), low (4, 10), high (1, 13).
const DIR_BANDS: [(f64, f64, u8); 3] = [(180.0, 180.0, 0), (160.0, 200.0, 1), (140.0, 220.0, 2)];
const SPEED_BANDS: [(f64, f64, u8); 3] = [(7.0, 7.0, 0), (4.0, 10.0, 1), (1.0, 13.0, 2)];

const fn cfg(label: char, speed_band: usize, dir_band: usize) -> WindConfig {
    let (dir_lower, dir_upper, dir_score) = DIR_BANDS[dir_band];
    let (speed_lower, speed_upper, speed_score) = SPEED_BANDS[speed_band];
    WindConfig {
        label,
        dir_lower,
        dir_upper,
        speed_lower,
        speed_upper,
        dir_score,
        speed_score,
        uncertainty_score: dir_score + speed_score,
    }
}

/// The nine experiment configurations A..I, ordered by label.
/// (speed band, direction band) per label:
/// A (none, none), B (low, none), C (none, low), D (low, low),
/// E (high, none), F (none, high), G (high, low), H (low, high),
/// I (high, high).
pub const WIND_CONFIGS: [WindConfig; 9] = [
    cfg('A', 0, 0),
    cfg('B', 1, 0),
    cfg('C', 0, 1),
    cfg('D', 1, 1),
    cfg('E', 2, 0),
    cfg('F', 0, 2),
    cfg('G', 2, 1),
    cfg('H', 1, 2),
    cfg('I', 2, 2),
];

impl WindConfig {
    pub fn all() -> &'static [WindConfig; 9] {
        &WIND_CONFIGS
    }

    pub fn by_label(label: char) -> Result<&'static WindConfig, SimError> {
        WIND_CONFIGS
            .iter()
            .find(|c| c.label == label)
            .ok_or(SimError::UnknownWindConfig(label))
    }

    pub fn contains(&self, wind: &Wind) -> bool {
        (self.dir_lower..=self.dir_upper).contains(&wind.direction_from)
            && (self.speed_lower..=self.speed_upper).contains(&wind.speed)
    }
}

/// Instantaneous wind: the compass direction it blows from and its speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wind {
    pub direction_from: f64,
    pub speed: f64,
}

/// One standard-normal pair via Box-Muller, routed through `libm` so the
/// stream is identical on every platform for a given RNG state.
fn standard_normal_pair<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    let u1: f64 = 1.0 - rng.random::<f64>(); // (0, 1], keeps log finite
    let u2: f64 = rng.random::<f64>();
    let r = libm::sqrt(-2.0 * libm::log(u1));
    let theta = std::f64::consts::TAU * u2;
    (r * libm::cos(theta), r * libm::sin(theta))
}

/// Draw the next wind state: each channel is Gaussian around its band
/// midpoint with sigma = range / divisor, clipped to the band. A zero-width
/// band always yields its constant value (the RNG is still advanced so
/// streams stay aligned across configurations).
pub fn sample_wind_with_sigma<R: Rng + ?Sized>(cfg: &WindConfig, sigma_divisor: f64, rng: &mut R) -> Wind {
    let (z_dir, z_speed) = standard_normal_pair(rng);
    let dir_mid = (cfg.dir_lower + cfg.dir_upper) / 2.0;
    let dir_sigma = (cfg.dir_upper - cfg.dir_lower) / sigma_divisor;
    let speed_mid = (cfg.speed_lower + cfg.speed_upper) / 2.0;
    let speed_sigma = (cfg.speed_upper - cfg.speed_lower) / sigma_divisor;
    Wind {
        direction_from: (dir_mid + dir_sigma * z_dir).clamp(cfg.dir_lower, cfg.dir_upper),
        speed: (speed_mid + speed_sigma * z_speed).clamp(cfg.speed_lower, cfg.speed_upper),
    }
}

/// [`sample_wind_with_sigma`] at the standard sigma = range / 4.
pub fn sample_wind<R: Rng + ?Sized>(cfg: &WindConfig, rng: &mut R) -> Wind {
    sample_wind_with_sigma(cfg, 4.0, rng)
}
