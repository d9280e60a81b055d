//! CDF fractions are nondecreasing and end at exactly 1.0; histogram counts
//! conserve the input size.

use std::num::NonZeroUsize;

use codegauntlet_core::metrics::{cdf_points, histogram};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use crate::CriterionResult;

const CASES: u32 = 1000;

fn times() -> impl Strategy<Value = Vec<f64>> {
    let value = prop_oneof![0.0f64..5000.0, (0u32..20).prop_map(f64::from), Just(0.26), Just(2163.78)];
    prop::collection::vec(value, 1..200)
}

pub fn run() -> CriterionResult {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new(config.clone())
        .run(&times(), |xs| {
            let cdf = cdf_points(&xs);
            prop_assert!(!cdf.is_empty());
            for w in cdf.windows(2) {
                prop_assert!(w[0].time < w[1].time, "times strictly ascending");
                prop_assert!(w[0].fraction <= w[1].fraction, "fractions nondecreasing");
            }
            prop_assert!(cdf.iter().all(|p| p.fraction > 0.0 && p.fraction <= 1.0));
            prop_assert_eq!(cdf.last().map(|p| p.fraction), Some(1.0));
            let mut distinct = xs.clone();
            distinct.sort_by(f64::total_cmp);
            distinct.dedup();
            prop_assert_eq!(cdf.len(), distinct.len());
            Ok(())
        })
        .map_err(|e| format!("CDF: {e}"))?;

    TestRunner::new(config)
        .run(&(times(), 1usize..64), |(xs, bins)| {
            let bins = NonZeroUsize::new(bins).expect("range starts at 1");
            let h = histogram(&xs, bins);
            prop_assert_eq!(h.len(), bins.get());
            prop_assert_eq!(h.iter().map(|b| b.count).sum::<usize>(), xs.len());
            let (min, max) = xs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
            prop_assert_eq!(h[0].lo, min);
            prop_assert_eq!(h[h.len() - 1].hi, max);
            for w in h.windows(2) {
                prop_assert_eq!(w[0].hi, w[1].lo, "bins are contiguous");
            }
            Ok(())
        })
        .map_err(|e| format!("histogram: {e}"))?;
    Ok(format!("{CASES} CDF cases and {CASES} histogram cases"))
}
