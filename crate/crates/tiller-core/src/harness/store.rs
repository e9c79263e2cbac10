//! The on-disk result store.
//!
//! Layout under the store root:
//!
//! ```text
//! runs/<cell_id>/run_<index>.csv   per-run trajectory logs
//! batches/<cell_id>.csv            per-run summaries (seed, rmse, ...)
//! batch_summary.csv                one aggregate row per batch
//! comparisons.csv                  type-1 vs type-2 rows (analyze)
//! best_fou.csv                     best FOU per (course, wind) (analyze)
//! plot_data.csv                    RMSE-vs-FOU curves (plot-data)
//! ```
//!
//! Run and batch files are append-only and written by one worker each, so
//! parallel batch execution never contends on a file. All floats are
//! written at six decimal places; re-emitting any derived file from the
//! same store bytes produces identical bytes.

use super::{Cell, HarnessError};
use crate::sim::RunRecord;
use crate::stats::{BatchResult, RunSummary};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const BATCH_HEADER: &str = "run_index,seed,completed,rmse,elapsed";
pub const BATCH_SUMMARY_HEADER: &str =
    "cell_id,wind_config,course,controller,fou_size,runs,completions,mean_rmse,canonical";

#[derive(Debug, Clone)]
pub struct ResultStore {
    root: PathBuf,
}

impl ResultStore {
    /// Open (creating if needed) a store rooted at `root`.
    pub fn create(root: impl Into<PathBuf>) -> Result<Self, HarnessError> {
        let store = Self { root: root.into() };
        fs::create_dir_all(store.runs_dir()).map_err(|e| store.io_err("runs", e))?;
        fs::create_dir_all(store.batches_dir()).map_err(|e| store.io_err("batches", e))?;
        Ok(store)
    }

    /// Open an existing store without touching the filesystem layout.
    pub fn open(root: impl Into<PathBuf>) -> Result<Self, HarnessError> {
        let store = Self { root: root.into() };
        if !store.batches_dir().is_dir() {
            return Err(HarnessError::Io(format!(
                "{} is not a result store (missing batches/)",
                store.root.display()
            )));
        }
        Ok(store)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn runs_dir(&self) -> PathBuf {
        self.root.join("runs")
    }

    fn batches_dir(&self) -> PathBuf {
        self.root.join("batches")
    }

    pub fn run_log_path(&self, cell: &Cell, run_index: u32) -> PathBuf {
        self.runs_dir().join(cell.id()).join(format!("run_{run_index:03}.csv"))
    }

    pub fn batch_path(&self, cell: &Cell) -> PathBuf {
        self.batches_dir().join(format!("{}.csv", cell.id()))
    }

    pub fn batch_summary_path(&self) -> PathBuf {
        self.root.join("batch_summary.csv")
    }

    pub fn comparisons_path(&self) -> PathBuf {
        self.root.join("comparisons.csv")
    }

    pub fn best_fou_path(&self) -> PathBuf {
        self.root.join("best_fou.csv")
    }

    pub fn plot_data_path(&self) -> PathBuf {
        self.root.join("plot_data.csv")
    }

    fn io_err(&self, what: &str, e: std::io::Error) -> HarnessError {
        HarnessError::Io(format!("{} ({what}): {e}", self.root.display()))
    }

    pub fn write_run_log(&self, cell: &Cell, run_index: u32, record: &RunRecord) -> Result<(), HarnessError> {
        let path = self.run_log_path(cell, run_index);
        let dir = path.parent().expect("run log path has a parent");
        fs::create_dir_all(dir).map_err(|e| self.io_err("run dir", e))?;
        let mut file = fs::File::create(&path).map_err(|e| self.io_err("run log", e))?;
        record
            .write_csv(&mut file)
            .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
    }

    pub fn write_batch(&self, batch: &BatchResult) -> Result<(), HarnessError> {
        let path = self.batch_path(&batch.cell);
        let mut out = String::new();
        out.push_str(BATCH_HEADER);
        out.push('\n');
        for run in &batch.runs {
            out.push_str(&format!(
                "{},{},{},{:.6},{:.6}\n",
                run.run_index,
                run.seed,
                if run.completed { 1 } else { 0 },
                run.rmse,
                run.elapsed_s
            ));
        }
        fs::write(&path, out).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
    }

    pub fn read_batch(&self, cell: &Cell) -> Result<BatchResult, HarnessError> {
        let path = self.batch_path(cell);
        let text = fs::read_to_string(&path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
        let bad = |line: &str| HarnessError::Io(format!("{}: bad row '{line}'", path.display()));
        let mut runs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if i == 0 {
                if line != BATCH_HEADER {
                    return Err(HarnessError::Io(format!("{}: unexpected header", path.display())));
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 {
                return Err(bad(line));
            }
            runs.push(RunSummary {
                run_index: fields[0].parse().map_err(|_| bad(line))?,
                seed: fields[1].parse().map_err(|_| bad(line))?,
                completed: fields[2] == "1",
                rmse: fields[3].parse().map_err(|_| bad(line))?,
                elapsed_s: fields[4].parse().map_err(|_| bad(line))?,
            });
        }
        Ok(BatchResult { cell: *cell, runs })
    }

    /// All batches present in the store, sorted by cell id.
    pub fn read_all_batches(&self) -> Result<Vec<BatchResult>, HarnessError> {
        let mut cells = Vec::new();
        let entries = fs::read_dir(self.batches_dir()).map_err(|e| self.io_err("batches", e))?;
        for entry in entries {
            let entry = entry.map_err(|e| self.io_err("batches", e))?;
            let path = entry.path();
            if path.extension().and_then(|e| e.to_str()) != Some("csv") {
                continue;
            }
            let stem = path
                .file_stem()
                .and_then(|s| s.to_str())
                .ok_or_else(|| HarnessError::Io(format!("unreadable batch file name: {}", path.display())))?;
            cells.push(Cell::parse(stem)?);
        }
        cells.sort_by_key(|c| c.id());
        cells.iter().map(|c| self.read_batch(c)).collect()
    }

    /// Write the aggregate batch summary in the given batch order.
    pub fn write_batch_summary(&self, batches: &[BatchResult]) -> Result<(), HarnessError> {
        let path = self.batch_summary_path();
        let mut file = fs::File::create(&path).map_err(|e| self.io_err("batch summary", e))?;
        writeln!(file, "{BATCH_SUMMARY_HEADER}").map_err(|e| self.io_err("batch summary", e))?;
        for batch in batches {
            let fou = batch
                .cell
                .fou_size()
                .map(|f| f.to_string())
                .unwrap_or_default();
            let mean = batch.mean_rmse(true).unwrap_or(0.0);
            writeln!(
                file,
                "{},{},{},{},{},{},{},{:.6},{}",
                batch.cell.id(),
                batch.cell.wind,
                batch.cell.course_label(),
                match batch.cell.fou_size() {
                    Some(_) => "it2",
                    None => "t1",
                },
                fou,
                batch.runs.len(),
                batch.completion_count(),
                mean,
                if batch.is_canonical() { 1 } else { 0 }
            )
            .map_err(|e| self.io_err("batch summary", e))?;
        }
        Ok(())
    }

    /// Every per-run log file in the store.
    pub fn run_log_paths(&self) -> Result<Vec<PathBuf>, HarnessError> {
        let mut paths = Vec::new();
        let runs = self.runs_dir();
        if !runs.is_dir() {
            return Ok(paths);
        }
        for cell_dir in fs::read_dir(&runs).map_err(|e| self.io_err("runs", e))? {
            let cell_dir = cell_dir.map_err(|e| self.io_err("runs", e))?.path();
            if !cell_dir.is_dir() {
                continue;
            }
            for entry in fs::read_dir(&cell_dir).map_err(|e| self.io_err("runs", e))? {
                let path = entry.map_err(|e| self.io_err("runs", e))?.path();
                if path.extension().and_then(|e| e.to_str()) == Some("csv") {
                    paths.push(path);
                }
            }
        }
        paths.sort();
        Ok(paths)
    }
}
