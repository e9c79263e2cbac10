//! Scoring and statistics: heading RMSE, one-sided Wilcoxon rank-sum
//! (Mann-Whitney) tests with midrank tie handling, and type-1 vs type-2
//! batch comparisons at the p < 0.0005 significance threshold.

use crate::harness::{Cell, CellController};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("empty sample")]
    EmptySample,
    #[error("exact enumeration requires tie-free samples with combined n <= {MAX_EXACT_N}")]
    ExactUnavailable,
    #[error("batches cover different cells: {0} vs {1}")]
    MismatchedCells(String, String),
    #[error("expected a type-1 baseline and a type-2 batch")]
    WrongControllerKinds,
}

/// Root-mean-square of a heading-error trace, in degrees.
pub fn cumulative_rmse(errors: &[f64]) -> Result<f64, StatsError> {
    if errors.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let mean_sq = errors.iter().map(|e| e * e).sum::<f64>() / errors.len() as f64;
    Ok(mean_sq.sqrt())
}

/// How a rank-sum p-value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestMethod {
    /// Exhaustive enumeration of rank assignments (tie-free, small n).
    ExactEnumeration,
    /// Normal approximation with tie and continuity corrections.
    NormalApproximation,
    /// The samples cannot be distinguished at all; p fixed at 0.5.
    Degenerate,
}

/// Outcome of a one-sided rank-sum test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankSumTest {
    /// P-value for the alternative "a is stochastically smaller than b".
    pub p_value: f64,
    /// Rank sum of sample `a` (midranks under ties).
    pub w_statistic: f64,
    pub method: TestMethod,
    /// Raised when the samples are identical multisets or all pooled
    /// values are equal; the test then carries no information.
    pub degenerate: bool,
}

/// Combined sample size up to which the exact null distribution is
/// enumerated (when the pooled sample is tie-free).
pub const MAX_EXACT_N: usize = 12;

fn midranks(a: &[f64], b: &[f64]) -> (Vec<f64>, bool) {
    let mut pooled: Vec<(f64, usize)> = a
        .iter()
        .chain(b.iter())
        .copied()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    pooled.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("NaN in sample"));
    let mut ranks = vec![0.0; pooled.len()];
    let mut has_ties = false;
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i + 1;
        while j < pooled.len() && pooled[j].0 == pooled[i].0 {
            j += 1;
        }
        if j - i > 1 {
            has_ties = true;
        }
        let rank = (i + j + 1) as f64 / 2.0;
        for k in i..j {
            ranks[pooled[k].1] = rank;
        }
        i = j;
    }
    (ranks, has_ties)
}

fn rank_sum_of_a(a: &[f64], b: &[f64]) -> (f64, bool) {
    let (ranks, ties) = midranks(a, b);
    (ranks[..a.len()].iter().sum(), ties)
}

fn identical_multisets(a: &[f64], b: &[f64]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(|x, y| x.partial_cmp(y).expect("NaN in sample"));
    sb.sort_by(|x, y| x.partial_cmp(y).expect("NaN in sample"));
    sa == sb
}

/// Standard normal CDF via the complementary error function.
fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

/// Exact one-sided p-value P(W_a <= w) by enumerating every assignment of
/// the integer ranks 1..=n to sample `a`. Requires a tie-free pooled sample
/// with combined size at most [`MAX_EXACT_N`].
pub fn exact_rank_sum_p_less(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let n = a.len() + b.len();
    let (w_obs, ties) = rank_sum_of_a(a, b);
    if ties || n > MAX_EXACT_N {
        return Err(StatsError::ExactUnavailable);
    }
    let mut favourable = 0u64;
    let mut total = 0u64;
    // Walk every size-|a| subset of {1..n}, tracking its rank sum.
    let mut chosen: Vec<u64> = Vec::with_capacity(a.len());
    enumerate_subsets(n as u64, a.len(), 1, 0, &mut chosen, &mut |sum| {
        total += 1;
        if (sum as f64) <= w_obs + 1e-9 {
            favourable += 1;
        }
    });
    Ok(favourable as f64 / total as f64)
}

fn enumerate_subsets(
    n: u64,
    k: usize,
    next: u64,
    sum: u64,
    chosen: &mut Vec<u64>,
    visit: &mut impl FnMut(u64),
) {
    if chosen.len() == k {
        visit(sum);
        return;
    }
    let remaining = k - chosen.len();
    for r in next..=(n - remaining as u64 + 1) {
        chosen.push(r);
        enumerate_subsets(n, k, r + 1, sum + r, chosen, visit);
        chosen.pop();
    }
}

/// Normal-approximation one-sided p-value for "a < b", with midrank tie
/// correction of the variance and a 0.5 continuity correction.
pub fn approx_rank_sum_p_less(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let na = a.len() as f64;
    let nb = b.len() as f64;
    let n = na + nb;
    let (w, _) = rank_sum_of_a(a, b);

    // Tie correction: sum of t^3 - t over tie groups of the pooled sample.
    let mut pooled: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
    pooled.sort_by(|x, y| x.partial_cmp(y).expect("NaN in sample"));
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i + 1;
        while j < pooled.len() && pooled[j] == pooled[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }

    let mean = na * (n + 1.0) / 2.0;
    let var = na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if var <= 0.0 {
        // Every pooled value equal: no ordering information at all.
        return Ok(0.5);
    }
    let z = (w - mean + 0.5) / var.sqrt();
    Ok(normal_cdf(z))
}

/// One-sided Wilcoxon rank-sum test of the alternative "a is
/// stochastically smaller than b".
///
/// Exact enumeration is used for tie-free pooled samples of combined size
/// at most [`MAX_EXACT_N`]; otherwise the normal approximation with tie and
/// continuity corrections. Identical multisets (including shared-seed
/// replays) and all-equal pooled values are degenerate: p = 0.5 with the
/// flag raised.
pub fn rank_sum_less(a: &[f64], b: &[f64]) -> Result<RankSumTest, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let (w, ties) = rank_sum_of_a(a, b);
    if identical_multisets(a, b) {
        return Ok(RankSumTest {
            p_value: 0.5,
            w_statistic: w,
            method: TestMethod::Degenerate,
            degenerate: true,
        });
    }
    if !ties && a.len() + b.len() <= MAX_EXACT_N {
        return Ok(RankSumTest {
            p_value: exact_rank_sum_p_less(a, b)?,
            w_statistic: w,
            method: TestMethod::ExactEnumeration,
            degenerate: false,
        });
    }
    let p = approx_rank_sum_p_less(a, b)?;
    // approx_rank_sum_p_less returns exactly 0.5 only when the variance
    // collapsed, i.e. every pooled value is identical.
    let pooled_constant = a.iter().chain(b.iter()).all(|&v| v == a[0]);
    Ok(RankSumTest {
        p_value: p,
        w_statistic: w,
        method: if pooled_constant {
            TestMethod::Degenerate
        } else {
            TestMethod::NormalApproximation
        },
        degenerate: pooled_constant,
    })
}

/// Summary of one simulated run inside a batch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary {
    pub run_index: u32,
    pub seed: u64,
    pub completed: bool,
    pub rmse: f64,
    pub elapsed_s: f64,
}

/// One executed batch: the cell it belongs to plus per-run summaries.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchResult {
    pub cell: Cell,
    pub runs: Vec<RunSummary>,
}

/// Canonical batch size; smaller batches are smoke runs.
pub const CANONICAL_RUNS: usize = 30;

impl BatchResult {
    /// RMSE values of the batch, optionally restricted to completed runs.
    pub fn rmse_values(&self, include_incomplete: bool) -> Vec<f64> {
        self.runs
            .iter()
            .filter(|r| include_incomplete || r.completed)
            .map(|r| r.rmse)
            .collect()
    }

    pub fn completion_count(&self) -> usize {
        self.runs.iter().filter(|r| r.completed).count()
    }

    pub fn mean_rmse(&self, include_incomplete: bool) -> Option<f64> {
        let values = self.rmse_values(include_incomplete);
        if values.is_empty() {
            None
        } else {
            Some(values.iter().sum::<f64>() / values.len() as f64)
        }
    }

    /// True for full-size batches; smoke batches are flagged non-canonical.
    pub fn is_canonical(&self) -> bool {
        self.runs.len() == CANONICAL_RUNS
    }
}

/// Strict significance threshold on the one-sided p-value.
pub const SIGNIFICANCE_THRESHOLD: f64 = 0.0005;

/// One row of the type-1 vs type-2 comparison table.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub wind_config: char,
    pub course: String,
    pub fou_size: u32,
    pub t1_mean_rmse: f64,
    pub t2_mean_rmse: f64,
    /// t2 mean minus t1 mean; negative means the type-2 batch did better.
    pub rmse_difference: f64,
    /// One-sided p-value that the type-2 RMSEs are stochastically smaller.
    pub p_value: f64,
    pub significant: bool,
    pub degenerate: bool,
}

/// Compare a type-1 baseline batch against a type-2 batch from the same
/// (wind, course) cell.
pub fn compare_batches(
    t1: &BatchResult,
    t2: &BatchResult,
    include_incomplete: bool,
) -> Result<ComparisonRow, StatsError> {
    if t1.cell.wind != t2.cell.wind || t1.cell.course_label() != t2.cell.course_label() {
        return Err(StatsError::MismatchedCells(t1.cell.id(), t2.cell.id()));
    }
    let fou_size = match (&t1.cell.controller, &t2.cell.controller) {
        (CellController::Type1, CellController::IntervalType2 { fou }) => *fou,
        _ => return Err(StatsError::WrongControllerKinds),
    };
    let t1_values = t1.rmse_values(include_incomplete);
    let t2_values = t2.rmse_values(include_incomplete);
    if t1_values.is_empty() || t2_values.is_empty() {
        return Err(StatsError::EmptySample);
    }
    let t1_mean = t1_values.iter().sum::<f64>() / t1_values.len() as f64;
    let t2_mean = t2_values.iter().sum::<f64>() / t2_values.len() as f64;
    let test = rank_sum_less(&t2_values, &t1_values)?;
    Ok(ComparisonRow {
        wind_config: t1.cell.wind,
        course: t1.cell.course_label(),
        fou_size,
        t1_mean_rmse: t1_mean,
        t2_mean_rmse: t2_mean,
        rmse_difference: t2_mean - t1_mean,
        p_value: test.p_value,
        significant: test.p_value < SIGNIFICANCE_THRESHOLD,
        degenerate: test.degenerate,
    })
}
