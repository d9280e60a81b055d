//! The quantitative analysis. All functions are pure; the timing statistics
//! are generic over [`crate::Scalar`] and pass@k over [`crate::Probability`].

pub mod distribution;
pub mod pass_at_k;
pub mod stats;
pub mod tables;

use thiserror::Error;

pub use distribution::{cdf_points, histogram, CdfPoint, HistogramBin};
pub use pass_at_k::{pass_at_1_rate, pass_at_k, pass_at_k_mean, PassAtKInput};
pub use stats::{iqr_outliers, outlier_fences, quantile_sorted, summary_stats, OutlierFences, OutlierSplit, SummaryStats, QUANTILE_METHOD};
pub use tables::{acceptance_table, outcome_table, sort_acceptance, AcceptanceRow, JudgedRecord, ModelOutcome, OutcomeTable};

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("model {model:?}: problem {problem_id:?} has no difficulty tier")]
    UnresolvedProblem { model: String, problem_id: String },
}

/// Rounds half away from zero at `decimals` places.
pub fn round_half_up(x: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    // the nudge absorbs representation error such as 0.15 * 10 = 1.4999999999999998
    let magnitude = ((x * scale).abs() + 1e-9 + 0.5).floor();
    magnitude.copysign(x) / scale
}
