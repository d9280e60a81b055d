//! Randomized record sets: per-tier tracked counts sum to the tier total and
//! the Other exclusion equals the number of injected Other records.

use std::collections::BTreeMap;

use codegauntlet_core::judging::VerdictCategory;
use codegauntlet_core::metrics::{acceptance_table, outcome_table, JudgedRecord};
use codegauntlet_core::store::Tier;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use crate::CriterionResult;

const CASES: u32 = 1000;
const MODELS: [&str; 3] = ["m-a", "m-b", "m-c"];

/// (model index, problem index, category index with 6 meaning Other)
fn records() -> impl Strategy<Value = (usize, Vec<(usize, usize, usize)>)> {
    (1usize..40).prop_flat_map(|problems| {
        (Just(problems), prop::collection::vec((0..MODELS.len(), 0..problems, 0usize..7), 0..300))
    })
}

fn category(i: usize) -> VerdictCategory {
    VerdictCategory::TRACKED.get(i).copied().unwrap_or(VerdictCategory::Other)
}

fn tier_of_index(i: usize) -> Tier {
    Tier::ALL[i % 3]
}

pub fn run() -> CriterionResult {
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner
        .run(&records(), |(problems, recs)| {
            let ids: Vec<String> = (0..problems).map(|i| format!("q{i}")).collect();
            let judged: Vec<JudgedRecord<'_>> = recs
                .iter()
                .map(|&(m, p, c)| JudgedRecord { model: MODELS[m], problem_id: &ids[p], category: category(c) })
                .collect();
            let tables = outcome_table(judged.iter().copied(), |id| {
                id[1..].parse::<usize>().ok().map(tier_of_index)
            })
            .map_err(|e| TestCaseError::fail(e.to_string()))?;

            // independent tally keyed by (tier, model)
            let mut injected_other: BTreeMap<(Tier, &str), u64> = BTreeMap::new();
            let mut tracked: BTreeMap<(Tier, &str), u64> = BTreeMap::new();
            for &(m, p, c) in &recs {
                let key = (tier_of_index(p), MODELS[m]);
                let bucket = if category(c).is_tracked() { &mut tracked } else { &mut injected_other };
                *bucket.entry(key).or_default() += 1;
            }

            let mut excluded_total = 0;
            for table in &tables {
                for (model, row) in &table.models {
                    let sum: u64 = VerdictCategory::TRACKED.iter().map(|&c| row.count(c)).sum();
                    prop_assert_eq!(sum, row.total);
                    prop_assert_eq!(row.count(VerdictCategory::Other), 0);
                    let key = (table.tier, model.as_str());
                    prop_assert_eq!(row.total, tracked.get(&key).copied().unwrap_or(0));
                    prop_assert_eq!(row.excluded_other, injected_other.get(&key).copied().unwrap_or(0));
                    excluded_total += row.excluded_other;
                }
            }
            prop_assert_eq!(excluded_total, recs.iter().filter(|r| r.2 == 6).count() as u64);

            let grand: u64 = tables.iter().flat_map(|t| t.models.values()).map(|r| r.total).sum();
            let acceptance = acceptance_table(&tables).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(acceptance.iter().map(|r| r.total).sum::<u64>(), grand);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(format!("{CASES} random record sets conserve per-tier totals and Other exclusions"))
}
