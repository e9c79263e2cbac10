//! The experiment harness: matrix expansion, batch execution, the on-disk
//! result store and report emission.

mod cell;
mod config;
mod matrix;
mod report;
mod runner;
mod store;

pub use cell::{derive_run_seed, run_rng, Cell, CellController};
pub use config::{
    AnalysisSection, ControllerSection, MatrixSection, OutputSection, PhysicsSection, RunConfig,
};
pub use matrix::ExperimentMatrix;
pub use report::{
    best_fou_rows, comparison_rows, emit_best_fou, emit_comparisons, emit_plot_data, emit_reports,
    plot_rows, BEST_FOU_HEADER, COMPARISONS_HEADER, PLOT_DATA_HEADER,
};
pub use runner::{run_batch, run_matrix, EngineParams, WORKERS_ENV};
pub use store::{ResultStore, BATCH_HEADER, BATCH_SUMMARY_HEADER};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unparseable cell id '{0}'")]
    BadCellId(String),
    #[error("invalid experiment matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("cell {0} failed: {1}")]
    Cell(String, String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Sim(#[from] crate::sim::SimError),
}
