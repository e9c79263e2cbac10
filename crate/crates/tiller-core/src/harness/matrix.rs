//! Matrix expansion: the full experiment grid of wind configurations, FOU
//! sizes and course layouts, plus the type-1 baseline cells that the
//! comparison tables are measured against.

use super::{Cell, CellController, HarnessError};
use crate::sim::{build_course, WindConfig};

/// The experiment grid. Defaults reproduce the standard study: nine wind
/// configurations, FOU sizes 0..=25 in steps of 5, vertical movements
/// {25, 50, 100}, one and two turns, 30 runs per batch — 324 type-2 cells.
/// Enabling `benchmark` adds the straight Single-0 course.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentMatrix {
    pub wind_configs: Vec<char>,
    pub fou_sizes: Vec<u32>,
    pub vertical_movements: Vec<u32>,
    pub turn_counts: Vec<u8>,
    pub runs_per_batch: u32,
    pub base_seed: u64,
    pub benchmark: bool,
}

impl Default for ExperimentMatrix {
    fn default() -> Self {
        Self {
            wind_configs: WindConfig::all().iter().map(|c| c.label).collect(),
            fou_sizes: vec![0, 5, 10, 15, 20, 25],
            vertical_movements: vec![25, 50, 100],
            turn_counts: vec![1, 2],
            runs_per_batch: 30,
            base_seed: 42,
            benchmark: false,
        }
    }
}

impl ExperimentMatrix {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.runs_per_batch == 0 {
            return Err(HarnessError::InvalidMatrix("runs_per_batch must be >= 1".into()));
        }
        if self.wind_configs.is_empty() || self.fou_sizes.is_empty() {
            return Err(HarnessError::InvalidMatrix("empty matrix dimension".into()));
        }
        for &w in &self.wind_configs {
            WindConfig::by_label(w)?;
        }
        for &turns in &self.turn_counts {
            for &v in &self.vertical_movements {
                build_course(turns, v)?;
            }
        }
        Ok(())
    }

    /// Courses in deterministic order: the Single-0 benchmark first when
    /// enabled, then by turn count and vertical movement.
    fn courses(&self) -> Vec<(u8, u32)> {
        let mut courses = Vec::new();
        if self.benchmark {
            courses.push((0, 0));
        }
        for &turns in &self.turn_counts {
            for &vertical in &self.vertical_movements {
                courses.push((turns, vertical));
            }
        }
        courses
    }

    /// The type-2 cells of the grid, ordered by (wind, course, FOU size).
    /// The default matrix yields exactly 9 x 6 x 3 x 2 = 324 cells; the
    /// benchmark flag adds 9 x 6 Single-0 cells.
    pub fn expand(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &wind in &self.wind_configs {
            for (turns, vertical) in self.courses() {
                for &fou in &self.fou_sizes {
                    cells.push(Cell {
                        wind,
                        turns,
                        vertical,
                        controller: CellController::IntervalType2 { fou },
                    });
                }
            }
        }
        cells
    }

    /// The type-1 baseline cells: one per (wind, course). These are run
    /// alongside the grid so every type-2 batch has a baseline to compare
    /// against; they are not counted among the matrix cells.
    pub fn baselines(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &wind in &self.wind_configs {
            for (turns, vertical) in self.courses() {
                cells.push(Cell {
                    wind,
                    turns,
                    vertical,
                    controller: CellController::Type1,
                });
            }
        }
        cells
    }

    /// Baselines followed by the grid: everything one matrix run executes.
    pub fn all_cells(&self) -> Vec<Cell> {
        let mut cells = self.baselines();
        cells.extend(self.expand());
        cells
    }
}
