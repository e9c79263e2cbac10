//! The sailing world: course geometry, the bounded-Gaussian wind process,
//! kinematic boat physics and the episode loop that ties them to a helm
//! controller.

mod course;
mod episode;
mod physics;
mod wind;

pub use course::{build_course, CourseSpec};
pub(crate) use episode::splitmix64 as episode_splitmix;
pub use episode::{episode_rng, run_episode, CycleLog, RunRecord, RUN_LOG_HEADER};
pub use physics::{polar_speed, step_physics, BoatState, PolarTable, SimParams};
pub use wind::{sample_wind, sample_wind_with_sigma, Wind, WindConfig};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("unknown wind configuration label '{0}'")]
    UnknownWindConfig(char),
    #[error("invalid course: turns={turns}, vertical={vertical} m")]
    InvalidCourse { turns: u8, vertical: u32 },
    #[error("unrecognised course label '{0}'")]
    BadCourseLabel(String),
    #[error("polar table needs at least 2 points sorted by angle")]
    BadPolarTable,
}
