//! Course geometry: eastward waypoint chains with 250 m horizontal legs
//! and 0, 1 or 2 turns whose angle is set by the vertical movement.

use super::SimError;
use crate::angles::{bearing, wrap_signed};

/// Horizontal distance between consecutive waypoints, metres.
pub const LEG_LENGTH_M: f64 = 250.0;

const VERTICALS: [u32; 3] = [25, 50, 100];

/// An ordered waypoint course. Labels read `<Single|Double>-<vertical>`:
/// `Single-0` is the straight two-waypoint benchmark, `Single-50` a single
/// turn with 50 m of vertical movement, `Double-100` two turns with 100 m.
#[derive(Debug, Clone, PartialEq)]
pub struct CourseSpec {
    waypoints: Vec<(f64, f64)>,
    turns: u8,
    vertical_movement: u32,
}

impl CourseSpec {
    pub fn waypoints(&self) -> &[(f64, f64)] {
        &self.waypoints
    }

    pub fn turns(&self) -> u8 {
        self.turns
    }

    pub fn vertical_movement(&self) -> u32 {
        self.vertical_movement
    }

    pub fn label(&self) -> String {
        let word = if self.turns == 2 { "Double" } else { "Single" };
        format!("{}-{}", word, self.vertical_movement)
    }

    /// Parse a course label back into (turns, vertical).
    pub fn parse_label(label: &str) -> Result<(u8, u32), SimError> {
        let bad = || SimError::BadCourseLabel(label.to_string());
        let (word, vert) = label.split_once('-').ok_or_else(bad)?;
        let vertical: u32 = vert.parse().map_err(|_| bad())?;
        let turns = match (word, vertical) {
            ("Single", 0) => 0,
            ("Single", _) => 1,
            ("Double", _) => 2,
            _ => return Err(bad()),
        };
        build_course(turns, vertical)?;
        Ok((turns, vertical))
    }

    /// Signed heading change required at interior waypoint `i`.
    pub fn turn_angle_at(&self, i: usize) -> f64 {
        let inbound = bearing(self.waypoints[i - 1], self.waypoints[i]);
        let outbound = bearing(self.waypoints[i], self.waypoints[i + 1]);
        wrap_signed(outbound - inbound)
    }
}

/// Build a course: `turns = 0` is the straight 500 m benchmark (vertical
/// must be 0); one turn climbs to `vertical` over the second leg; two turns
/// climb and return. Vertical movement for turning courses is one of
/// 25, 50 or 100 m.
pub fn build_course(turns: u8, vertical: u32) -> Result<CourseSpec, SimError> {
    let invalid = SimError::InvalidCourse { turns, vertical };
    let v = vertical as f64;
    let waypoints = match (turns, vertical) {
        (0, 0) => vec![(0.0, 0.0), (2.0 * LEG_LENGTH_M, 0.0)],
        (1, _) if VERTICALS.contains(&vertical) => {
            vec![(0.0, 0.0), (LEG_LENGTH_M, 0.0), (2.0 * LEG_LENGTH_M, v)]
        }
        (2, _) if VERTICALS.contains(&vertical) => vec![
            (0.0, 0.0),
            (LEG_LENGTH_M, 0.0),
            (2.0 * LEG_LENGTH_M, v),
            (3.0 * LEG_LENGTH_M, 0.0),
        ],
        _ => return Err(invalid),
    };
    Ok(CourseSpec {
        waypoints,
        turns,
        vertical_movement: vertical,
    })
}
