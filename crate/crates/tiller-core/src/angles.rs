//! Compass-angle helpers shared by the controller and the simulator.
//!
//! Convention: 0° = north, 90° = east, headings normalised to [0, 360),
//! signed differences wrapped to (-180, 180]. Trigonometry goes through
//! `libm` so results are identical across platforms.

/// Wrap a signed angle difference into (-180, 180].
pub fn wrap_signed(deg: f64) -> f64 {
    let r = deg.rem_euclid(360.0);
    if r > 180.0 {
        r - 360.0
    } else {
        r
    }
}

/// Normalise a heading into [0, 360).
pub fn normalize_heading(deg: f64) -> f64 {
    deg.rem_euclid(360.0)
}

/// Compass bearing from one position to another, in degrees.
///
/// Positions are (x = east, y = north) in metres. Coincident points map to
/// 0.0; callers that care about that case must handle it before calling.
pub fn bearing(from: (f64, f64), to: (f64, f64)) -> f64 {
    let dx = to.0 - from.0;
    let dy = to.1 - from.1;
    if dx == 0.0 && dy == 0.0 {
        return 0.0;
    }
    normalize_heading(libm::atan2(dx, dy).to_degrees())
}

/// Unsigned angle between two compass directions, in [0, 180].
pub fn angle_between(a: f64, b: f64) -> f64 {
    wrap_signed(a - b).abs()
}
