//! Hand-derived IQR cases, the partition property, and summary statistics
//! against an independent two-pass reference.

use codegauntlet_core::metrics::{iqr_outliers, summary_stats};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use crate::CriterionResult;

const CASES: u32 = 1000;
const REL_TOL: f64 = 1e-9;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL_TOL * a.abs().max(b.abs())
}

/// Linear interpolation at position q(n-1) over sorted data.
fn reference_quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

struct Reference {
    mean: f64,
    sample_std: f64,
    median: f64,
    min: f64,
    max: f64,
}

fn two_pass(xs: &[f64]) -> Reference {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    Reference {
        mean,
        sample_std: if xs.len() > 1 { (ss / (n - 1.0)).sqrt() } else { 0.0 },
        median: reference_quantile(&sorted, 0.5),
        min: sorted[0],
        max: sorted[sorted.len() - 1],
    }
}

fn hand_cases() -> Result<(), String> {
    let mut xs: Vec<f64> = (1..=9).map(f64::from).collect();
    xs.push(100.0);
    let split = iqr_outliers(&xs);
    check!(
        close(split.fences.lower, -3.5) && close(split.fences.upper, 14.5),
        "[1..9, 100] fences [{}, {}], expected [-3.5, 14.5]",
        split.fences.lower,
        split.fences.upper
    );
    check!(split.outliers == [100.0], "[1..9, 100] outliers {:?}", split.outliers);
    check!(split.kept.len() == 9, "[1..9, 100] kept {:?}", split.kept);

    let constant = vec![7.25; 12];
    let split = iqr_outliers(&constant);
    check!(split.outliers.is_empty(), "constant data flagged {:?}", split.outliers);
    check!(split.fences.iqr == 0.0, "constant data IQR {}", split.fences.iqr);
    Ok(())
}

pub fn run() -> CriterionResult {
    hand_cases()?;
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    let times = prop::collection::vec(prop_oneof![0.0f64..100.0, 0.0f64..5000.0, Just(3.0)], 1..150);

    TestRunner::new(config.clone())
        .run(&times, |xs| {
            let split = iqr_outliers(&xs);
            prop_assert_eq!(split.kept.len() + split.outliers.len(), xs.len());
            let f = split.fences;
            prop_assert!(split.kept.iter().all(|&x| f.lower <= x && x <= f.upper));
            prop_assert!(split.outliers.iter().all(|&x| x < f.lower || x > f.upper));
            // input order preserved within each side
            let kept_in_order: Vec<f64> = xs.iter().copied().filter(|&x| f.lower <= x && x <= f.upper).collect();
            prop_assert_eq!(&split.kept, &kept_in_order);
            if xs.len() >= 4 {
                let mut sorted = xs.clone();
                sorted.sort_by(f64::total_cmp);
                let q1 = reference_quantile(&sorted, 0.25);
                let q3 = reference_quantile(&sorted, 0.75);
                prop_assert!(close(f.lower, q1 - 1.5 * (q3 - q1)) && close(f.upper, q3 + 1.5 * (q3 - q1)));
            }
            Ok(())
        })
        .map_err(|e| format!("partition: {e}"))?;

    TestRunner::new(config)
        .run(&times, |xs| {
            let s = summary_stats(&xs).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let r = two_pass(&xs);
            prop_assert_eq!(s.count, xs.len());
            prop_assert!(close(s.mean, r.mean), "mean {} vs {}", s.mean, r.mean);
            prop_assert!(close(s.std, r.sample_std), "std {} vs {}", s.std, r.sample_std);
            prop_assert!(close(s.median, r.median), "median {} vs {}", s.median, r.median);
            prop_assert_eq!((s.min, s.max), (r.min, r.max));
            prop_assert_eq!(s.std_defined, xs.len() > 1);
            Ok(())
        })
        .map_err(|e| format!("summary statistics: {e}"))?;
    Ok(format!("hand cases hold; {CASES} partition cases; {CASES} summary cases within {REL_TOL:e} relative"))
}
