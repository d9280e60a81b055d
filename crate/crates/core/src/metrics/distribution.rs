use std::num::NonZeroUsize;

use serde::Serialize;

use super::stats::sorted_copy;
use crate::num::{from_usize, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CdfPoint<T> {
    pub time: T,
    pub fraction: T,
}

/// Empirical CDF at each distinct value, ascending. The last fraction is
/// exactly 1 because it is computed as `n / n`.
pub fn cdf_points<T: Scalar>(times: &[T]) -> Vec<CdfPoint<T>> {
    let sorted = sorted_copy(times);
    let n: T = from_usize(sorted.len());
    let mut points: Vec<CdfPoint<T>> = Vec::new();
    for (i, &t) in sorted.iter().enumerate() {
        let fraction = from_usize::<T>(i + 1) / n;
        match points.last_mut() {
            Some(last) if last.time == t => last.fraction = fraction,
            _ => points.push(CdfPoint { time: t, fraction }),
        }
    }
    points
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HistogramBin<T> {
    pub lo: T,
    pub hi: T,
    pub count: usize,
}

/// Equal-width bins over `[min, max]`; each bin is `[lo, hi)` except the last,
/// which is closed. Constant data puts everything into the first bin.
pub fn histogram<T: Scalar>(times: &[T], bin_count: NonZeroUsize) -> Vec<HistogramBin<T>> {
    if times.is_empty() {
        return Vec::new();
    }
    let bins = bin_count.get();
    let sorted = sorted_copy(times);
    let (min, max) = (sorted[0], sorted[sorted.len() - 1]);
    let width = (max - min) / from_usize(bins);
    let mut out: Vec<HistogramBin<T>> = (0..bins)
        .map(|i| HistogramBin {
            lo: min + width * from_usize(i),
            hi: if i + 1 == bins { max } else { min + width * from_usize(i + 1) },
            count: 0,
        })
        .collect();
    for &x in &sorted {
        let idx = if width > T::zero() {
            ((x - min) / width).floor().to_usize().unwrap_or(0).min(bins - 1)
        } else {
            0
        };
        // guard against rounding putting a value one bin too high
        let idx = if idx > 0 && x < out[idx].lo { idx - 1 } else { idx };
        out[idx].count += 1;
    }
    out
}
