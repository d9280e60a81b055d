//! Summary statistics and box-plot outlier fences for timing data.

use serde::Serialize;

use super::MetricsError;
use crate::num::{from_f64, from_usize, Scalar};

/// Quantile method used for the fences; reports print it verbatim.
pub const QUANTILE_METHOD: &str = "linear interpolation between closest ranks, p = q*(n-1)";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SummaryStats<T> {
    pub count: usize,
    pub mean: T,
    pub median: T,
    /// Sample standard deviation (divisor n - 1); 0 when `count == 1`.
    pub std: T,
    pub min: T,
    pub max: T,
    /// False when `count < 2` and `std` is a placeholder.
    pub std_defined: bool,
}

/// Single pass (Welford) mean and variance; median from a sorted copy.
pub fn summary_stats<T: Scalar>(times: &[T]) -> Result<SummaryStats<T>, MetricsError> {
    if times.is_empty() {
        return Err(MetricsError::Empty("summary statistics of an empty list"));
    }
    let mut mean = T::zero();
    let mut m2 = T::zero();
    for (i, &x) in times.iter().enumerate() {
        let n: T = from_usize(i + 1);
        let delta = x - mean;
        mean = mean + delta / n;
        m2 = m2 + delta * (x - mean);
    }
    let count = times.len();
    let sorted = sorted_copy(times);
    let std_defined = count >= 2;
    let std = if std_defined { (m2 / from_usize(count - 1)).max(T::zero()).sqrt() } else { T::zero() };
    Ok(SummaryStats {
        count,
        mean,
        median: quantile_sorted(&sorted, from_f64(0.5)),
        std,
        min: sorted[0],
        max: sorted[count - 1],
        std_defined,
    })
}

pub(crate) fn sorted_copy<T: Scalar>(xs: &[T]) -> Vec<T> {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("timing values are not NaN"));
    v
}

/// Quantile `q` in [0, 1] of ascending `sorted` by linear interpolation at
/// position `q * (n - 1)`. For q = 0.5 this is the midpoint median.
pub fn quantile_sorted<T: Scalar>(sorted: &[T], q: T) -> T {
    let n = sorted.len();
    assert!(n > 0, "quantile of empty data");
    let pos = q * from_usize(n - 1);
    let lo = pos.floor();
    let lo_idx = lo.to_usize().unwrap_or(0).min(n - 1);
    let hi_idx = (lo_idx + 1).min(n - 1);
    let frac = pos - lo;
    sorted[lo_idx] + frac * (sorted[hi_idx] - sorted[lo_idx])
}

/// Box-plot fences `[q1 - 1.5 iqr, q3 + 1.5 iqr]`.
///
/// With fewer than four values the fences degenerate to `[min, max]`
/// (`q1 = lower = min`, `q3 = upper = max`) and nothing is an outlier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutlierFences<T> {
    pub q1: T,
    pub q3: T,
    pub iqr: T,
    pub lower: T,
    pub upper: T,
}

impl<T: Scalar> OutlierFences<T> {
    pub fn contains(&self, x: T) -> bool {
        x >= self.lower && x <= self.upper
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutlierSplit<T> {
    pub fences: OutlierFences<T>,
    /// Values strictly outside the fences, in input order.
    pub outliers: Vec<T>,
    /// Remaining values, in input order.
    pub kept: Vec<T>,
}

pub fn outlier_fences<T: Scalar>(times: &[T]) -> Option<OutlierFences<T>> {
    if times.is_empty() {
        return None;
    }
    let sorted = sorted_copy(times);
    let (min, max) = (sorted[0], sorted[sorted.len() - 1]);
    if sorted.len() < 4 {
        return Some(OutlierFences { q1: min, q3: max, iqr: max - min, lower: min, upper: max });
    }
    let q1 = quantile_sorted(&sorted, from_f64(0.25));
    let q3 = quantile_sorted(&sorted, from_f64(0.75));
    let iqr = q3 - q1;
    let k: T = from_f64(1.5);
    Some(OutlierFences { q1, q3, iqr, lower: q1 - k * iqr, upper: q3 + k * iqr })
}

/// Splits `times` by the 1.5·IQR rule. Empty input yields zero fences and
/// empty lists.
pub fn iqr_outliers<T: Scalar>(times: &[T]) -> OutlierSplit<T> {
    let Some(fences) = outlier_fences(times) else {
        let z = T::zero();
        return OutlierSplit {
            fences: OutlierFences { q1: z, q3: z, iqr: z, lower: z, upper: z },
            outliers: Vec::new(),
            kept: Vec::new(),
        };
    };
    let (kept, outliers) = times.iter().partition(|&&x| fences.contains(x));
    OutlierSplit { fences, outliers, kept }
}
