//! Batch and matrix execution. Runs within a batch and cells within a
//! matrix execute in parallel on the rayon pool; per-run and per-batch
//! files are disjoint so writers never contend, and all summary output is
//! written afterwards in deterministic cell order.

use super::{derive_run_seed, Cell, ExperimentMatrix, HarnessError, ResultStore, RunConfig};
use crate::controller::{BankParams, HelmController};
use crate::sim::{run_episode, SimParams};
use crate::stats::{BatchResult, RunSummary};
use rayon::prelude::*;

/// Environment variable overriding the worker-thread count for matrix
/// execution.
pub const WORKERS_ENV: &str = "TILLER_WORKERS";

/// Everything needed to run episodes for a cell.
#[derive(Debug, Clone)]
pub struct EngineParams {
    pub sim: SimParams,
    pub banks: BankParams,
    pub rudder_limit_deg: f64,
}

impl Default for EngineParams {
    fn default() -> Self {
        Self {
            sim: SimParams::default(),
            banks: BankParams::default(),
            rudder_limit_deg: crate::controller::DEFAULT_RUDDER_LIMIT_DEG,
        }
    }
}

impl EngineParams {
    pub fn from_config(config: &RunConfig) -> Result<Self, HarnessError> {
        Ok(Self {
            sim: config.sim_params()?,
            banks: config.bank_params(),
            rudder_limit_deg: config.rudder_limit_deg(),
        })
    }
}

/// Execute one batch: `runs` episodes of the cell with seeds derived from
/// `base_seed`, logs persisted when a store is given.
pub fn run_batch(
    cell: &Cell,
    runs: u32,
    base_seed: u64,
    params: &EngineParams,
    store: Option<&ResultStore>,
) -> Result<BatchResult, HarnessError> {
    let controller = HelmController::new(cell.controller_config(params.rudder_limit_deg), &params.banks)
        .map_err(|e| HarnessError::Cell(cell.id(), e.to_string()))?;
    let course = cell.course();
    let wind_cfg = cell.wind_config();

    let summaries: Result<Vec<RunSummary>, HarnessError> = (0..runs)
        .into_par_iter()
        .map(|run_index| {
            let seed = derive_run_seed(base_seed, cell, run_index);
            let record = run_episode(&course, wind_cfg, &controller, &params.sim, seed);
            if let Some(store) = store {
                store
                    .write_run_log(cell, run_index, &record)
                    .map_err(|e| HarnessError::Cell(cell.id(), e.to_string()))?;
            }
            Ok(RunSummary {
                run_index,
                seed,
                completed: record.completed,
                rmse: record.rmse,
                elapsed_s: record.elapsed_s,
            })
        })
        .collect();

    let batch = BatchResult {
        cell: *cell,
        runs: summaries?,
    };
    if let Some(store) = store {
        store
            .write_batch(&batch)
            .map_err(|e| HarnessError::Cell(cell.id(), e.to_string()))?;
    }
    Ok(batch)
}

/// Execute a whole matrix (baselines first, then the type-2 grid) into a
/// store and write the batch summary. Honors the `TILLER_WORKERS`
/// environment variable for the pool size.
pub fn run_matrix(
    matrix: &ExperimentMatrix,
    params: &EngineParams,
    store: &ResultStore,
) -> Result<Vec<BatchResult>, HarnessError> {
    matrix.validate()?;
    let cells = matrix.all_cells();
    let execute = || -> Result<Vec<BatchResult>, HarnessError> {
        cells
            .par_iter()
            .map(|cell| run_batch(cell, matrix.runs_per_batch, matrix.base_seed, params, Some(store)))
            .collect()
    };
    let batches = match workers_from_env() {
        Some(workers) => rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| HarnessError::Io(format!("worker pool: {e}")))?
            .install(execute),
        None => execute(),
    }?;
    store.write_batch_summary(&batches)?;
    Ok(batches)
}

fn workers_from_env() -> Option<usize> {
    let raw = std::env::var(WORKERS_ENV).ok()?;
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => Some(n),
        _ => {
            log::warn!("ignoring invalid {WORKERS_ENV}={raw}");
            None
        }
    }
}
