//! Report emission: the type-1 vs type-2 comparison table, the best-FOU
//! table and the RMSE-vs-FOU plot data, all derived purely from the stored
//! batches so re-emission reproduces identical files.

use super::{Cell, HarnessError, ResultStore};
use crate::stats::{compare_batches, BatchResult, ComparisonRow};
use std::collections::BTreeMap;
use std::fs;

pub const COMPARISONS_HEADER: &str =
    "wind_config,course,fou_size,t1_mean_rmse,t2_mean_rmse,rmse_difference,p_value,significant";
pub const BEST_FOU_HEADER: &str = "course,wind_config,t1_rmse,t2_rmse,vertical_movement,fou_size,p_value";
pub const PLOT_DATA_HEADER: &str = "course,wind_config,fou_size,mean_rmse";

/// Deterministic course ordering: benchmark, then single turns, then
/// double turns, by vertical movement.
fn course_sort_key(cell: &Cell) -> (u8, u32, char, u32) {
    (cell.turns, cell.vertical, cell.wind, cell.fou_size().unwrap_or(0))
}

fn sorted(batches: &[BatchResult]) -> Vec<&BatchResult> {
    let mut refs: Vec<&BatchResult> = batches.iter().collect();
    refs.sort_by_key(|b| course_sort_key(&b.cell));
    refs
}

/// Comparison rows: every type-2 batch against the type-1 baseline of its
/// (wind, course) cell. Batches without a baseline are skipped with a
/// warning.
pub fn comparison_rows(batches: &[BatchResult], include_incomplete: bool) -> Vec<ComparisonRow> {
    let mut baselines: BTreeMap<(char, String), &BatchResult> = BTreeMap::new();
    for batch in batches {
        if batch.cell.fou_size().is_none() {
            baselines.insert((batch.cell.wind, batch.cell.course_label()), batch);
        }
    }
    let mut rows = Vec::new();
    for batch in sorted(batches) {
        if batch.cell.fou_size().is_none() {
            continue;
        }
        let key = (batch.cell.wind, batch.cell.course_label());
        let Some(baseline) = baselines.get(&key) else {
            log::warn!("no type-1 baseline for {}; skipping comparison", batch.cell);
            continue;
        };
        match compare_batches(baseline, batch, include_incomplete) {
            Ok(row) => rows.push(row),
            Err(e) => log::warn!("comparison failed for {}: {e}", batch.cell),
        }
    }
    rows
}

/// Emit `comparisons.csv`.
pub fn emit_comparisons(store: &ResultStore, batches: &[BatchResult], include_incomplete: bool) -> Result<usize, HarnessError> {
    let rows = comparison_rows(batches, include_incomplete);
    let mut out = String::from(COMPARISONS_HEADER);
    out.push('\n');
    for row in &rows {
        out.push_str(&format!(
            "{},{},{},{:.6},{:.6},{:.6},{:e},{}\n",
            row.wind_config,
            row.course,
            row.fou_size,
            row.t1_mean_rmse,
            row.t2_mean_rmse,
            row.rmse_difference,
            row.p_value,
            if row.significant { 1 } else { 0 }
        ));
    }
    fs::write(store.comparisons_path(), out).map_err(|e| HarnessError::Io(e.to_string()))?;
    Ok(rows.len())
}

/// One best-FOU row per (course, wind): the FOU size with the lowest
/// type-2 mean RMSE. Combinations where no FOU size improves on the
/// baseline are omitted.
pub fn best_fou_rows(batches: &[BatchResult], include_incomplete: bool) -> Vec<ComparisonRow> {
    let mut best: BTreeMap<(u8, u32, char), ComparisonRow> = BTreeMap::new();
    for row in comparison_rows(batches, include_incomplete) {
        let (turns, vertical) = crate::sim::CourseSpec::parse_label(&row.course)
            .expect("course labels in comparison rows are well-formed");
        let key = (turns, vertical, row.wind_config);
        match best.get(&key) {
            Some(current) if current.t2_mean_rmse <= row.t2_mean_rmse => {}
            _ => {
                best.insert(key, row);
            }
        }
    }
    best.into_values()
        .filter(|row| row.t2_mean_rmse < row.t1_mean_rmse)
        .collect()
}

/// Emit `best_fou.csv`.
pub fn emit_best_fou(store: &ResultStore, batches: &[BatchResult], include_incomplete: bool) -> Result<usize, HarnessError> {
    let rows = best_fou_rows(batches, include_incomplete);
    let mut out = String::from(BEST_FOU_HEADER);
    out.push('\n');
    for row in &rows {
        let (_, vertical) =
            crate::sim::CourseSpec::parse_label(&row.course).expect("well-formed course label");
        out.push_str(&format!(
            "{},{},{:.6},{:.6},{},{},{:e}\n",
            row.course, row.wind_config, row.t1_mean_rmse, row.t2_mean_rmse, vertical, row.fou_size, row.p_value
        ));
    }
    fs::write(store.best_fou_path(), out).map_err(|e| HarnessError::Io(e.to_string()))?;
    Ok(rows.len())
}

/// Mean RMSE per (course, wind, FOU size) for the RMSE-vs-FOU curves.
/// Type-1 batches enter the curve at FOU size 0 together with the
/// equivalent type-2 batches.
pub fn plot_rows(batches: &[BatchResult], include_incomplete: bool) -> Vec<(String, char, u32, f64)> {
    let mut groups: BTreeMap<(u8, u32, char, u32), Vec<f64>> = BTreeMap::new();
    for batch in batches {
        let fou = batch.cell.fou_size().unwrap_or(0);
        let values = batch.rmse_values(include_incomplete);
        if values.is_empty() {
            continue;
        }
        groups
            .entry((batch.cell.turns, batch.cell.vertical, batch.cell.wind, fou))
            .or_default()
            .extend(values);
    }
    groups
        .into_iter()
        .map(|((turns, vertical, wind, fou), values)| {
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            let course = Cell {
                wind,
                turns,
                vertical,
                controller: super::CellController::Type1,
            }
            .course_label();
            (course, wind, fou, mean)
        })
        .collect()
}

/// Emit `plot_data.csv`.
pub fn emit_plot_data(store: &ResultStore, batches: &[BatchResult], include_incomplete: bool) -> Result<usize, HarnessError> {
    let rows = plot_rows(batches, include_incomplete);
    let mut out = String::from(PLOT_DATA_HEADER);
    out.push('\n');
    for (course, wind, fou, mean) in &rows {
        out.push_str(&format!("{course},{wind},{fou},{mean:.6}\n"));
    }
    fs::write(store.plot_data_path(), out).map_err(|e| HarnessError::Io(e.to_string()))?;
    Ok(rows.len())
}

/// Emit all three report files from the batches stored under `store`.
pub fn emit_reports(store: &ResultStore, include_incomplete: bool) -> Result<(usize, usize, usize), HarnessError> {
    let batches = store.read_all_batches()?;
    let comparisons = emit_comparisons(store, &batches, include_incomplete)?;
    let best = emit_best_fou(store, &batches, include_incomplete)?;
    let plots = emit_plot_data(store, &batches, include_incomplete)?;
    Ok((comparisons, best, plots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::CellController;
    use crate::stats::RunSummary;

    fn batch(wind: char, turns: u8, vertical: u32, fou: Option<u32>, rmses: &[f64]) -> BatchResult {
        BatchResult {
            cell: Cell {
                wind,
                turns,
                vertical,
                controller: match fou {
                    None => CellController::Type1,
                    Some(f) => CellController::IntervalType2 { fou: f },
                },
            },
            runs: rmses
                .iter()
                .enumerate()
                .map(|(i, &rmse)| RunSummary {
                    run_index: i as u32,
                    seed: i as u64,
                    completed: true,
                    rmse,
                    elapsed_s: 250.0,
                })
                .collect(),
        }
    }

    #[test]
    fn comparisons_pair_against_baseline() {
        let batches = vec![
            batch('A', 1, 50, None, &[5.0, 6.0, 7.0]),
            batch('A', 1, 50, Some(0), &[5.0, 6.0, 7.0]),
            batch('A', 1, 50, Some(20), &[2.0, 3.0, 4.0]),
        ];
        let rows = comparison_rows(&batches, true);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].fou_size, 0);
        assert_eq!(rows[0].rmse_difference, 0.0);
        assert!(rows[0].degenerate);
        assert_eq!(rows[1].fou_size, 20);
        assert!((rows[1].rmse_difference + 3.0).abs() < 1e-12);
    }

    #[test]
    fn type2_without_baseline_is_skipped() {
        let batches = vec![batch('B', 1, 25, Some(10), &[4.0, 5.0])];
        assert!(comparison_rows(&batches, true).is_empty());
    }

    #[test]
    fn type1_only_store_has_plots_but_no_comparisons() {
        let dir = tempfile::tempdir().unwrap();
        let store = ResultStore::create(dir.path()).unwrap();
        let batches = vec![
            batch('A', 1, 50, None, &[5.0, 6.0]),
            batch('B', 1, 50, None, &[4.0, 4.5]),
        ];
        let n_cmp = emit_comparisons(&store, &batches, true).unwrap();
        let n_plot = emit_plot_data(&store, &batches, true).unwrap();
        assert_eq!(n_cmp, 0);
        assert_eq!(n_plot, 2);
        let text = std::fs::read_to_string(store.plot_data_path()).unwrap();
        assert!(text.contains("Single-50,A,0,5.500000"));
    }

    #[test]
    fn full_sweep_yields_curves_per_config() {
        // 9 wind configs x 6 FOU sizes on Single-50.
        let mut batches = Vec::new();
        for (i, cfg) in crate::sim::WindConfig::all().iter().enumerate() {
            batches.push(batch(cfg.label, 1, 50, None, &[6.0 + i as f64]));
            for (j, fou) in [0u32, 5, 10, 15, 20, 25].iter().enumerate() {
                batches.push(batch(cfg.label, 1, 50, Some(*fou), &[5.0 + j as f64]));
            }
        }
        let rows = plot_rows(&batches, true);
        assert_eq!(rows.len(), 9 * 6);
    }

    #[test]
    fn best_fou_keeps_only_improvements_with_expected_columns() {
        let dir = tempfile::tempdir().unwrap();
        let store = ResultStore::create(dir.path()).unwrap();
        let t1: Vec<f64> = (0..30).map(|i| 2.72 + (i % 7) as f64 * 0.011).collect();
        let t2: Vec<f64> = (0..30).map(|i| 1.55 + (i % 7) as f64 * 0.013).collect();
        let worse: Vec<f64> = t1.iter().map(|v| v + 3.0).collect();
        let batches = vec![
            batch('A', 1, 25, None, &t1),
            batch('A', 1, 25, Some(20), &t2),
            batch('A', 1, 25, Some(25), &worse),
            // A second wind where nothing improves: omitted from the table.
            batch('B', 1, 25, None, &t2),
            batch('B', 1, 25, Some(20), &worse),
        ];
        let rows = best_fou_rows(&batches, true);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].wind_config, 'A');
        assert_eq!(rows[0].fou_size, 20);
        assert!(rows[0].p_value < 1e-6);

        emit_best_fou(&store, &batches, true).unwrap();
        let text = std::fs::read_to_string(store.best_fou_path()).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), BEST_FOU_HEADER);
        let row = lines.next().unwrap();
        // course, wind, t1, t2, vertical, fou, p -- Table-style ordering.
        assert!(row.starts_with("Single-25,A,"), "{row}");
        assert!(row.contains(",25,20,"), "{row}");
    }

    #[test]
    fn reemission_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let store = ResultStore::create(dir.path()).unwrap();
        let batches = vec![
            batch('A', 1, 50, None, &[5.0, 6.0, 7.0]),
            batch('A', 1, 50, Some(10), &[3.0, 4.0, 5.0]),
        ];
        for b in &batches {
            store.write_batch(b).unwrap();
        }
        emit_reports(&store, true).unwrap();
        let first = (
            std::fs::read(store.comparisons_path()).unwrap(),
            std::fs::read(store.best_fou_path()).unwrap(),
            std::fs::read(store.plot_data_path()).unwrap(),
        );
        emit_reports(&store, true).unwrap();
        let second = (
            std::fs::read(store.comparisons_path()).unwrap(),
            std::fs::read(store.best_fou_path()).unwrap(),
            std::fs::read(store.plot_data_path()).unwrap(),
        );
        assert_eq!(first, second);
    }
}
