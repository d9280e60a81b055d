//! Per-tier outcome counts and acceptance rates.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::pass_at_k::{pass_at_1_rate, PassAtKInput};
use super::{round_half_up, MetricsError};
use crate::judging::VerdictCategory;
use crate::store::Tier;

/// One judged (model, problem) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JudgedRecord<'a> {
    pub model: &'a str,
    pub problem_id: &'a str,
    pub category: VerdictCategory,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelOutcome {
    /// Every tracked category is present, zero or not.
    pub counts: BTreeMap<VerdictCategory, u64>,
    /// Sum of tracked counts; `Other` is not included.
    pub total: u64,
    /// Records dropped because their category was `Other`.
    pub excluded_other: u64,
}

impl Default for ModelOutcome {
    fn default() -> Self {
        Self {
            counts: VerdictCategory::TRACKED.iter().map(|&c| (c, 0)).collect(),
            total: 0,
            excluded_other: 0,
        }
    }
}

impl ModelOutcome {
    pub fn count(&self, category: VerdictCategory) -> u64 {
        self.counts.get(&category).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutcomeTable {
    pub tier: Tier,
    pub models: BTreeMap<String, ModelOutcome>,
}

impl OutcomeTable {
    pub fn excluded_other(&self) -> u64 {
        self.models.values().map(|m| m.excluded_other).sum()
    }
}

/// Counts per (tier, model, category). Every model seen in any record gets a
/// row in every tier. A record whose problem has no tier is a hard error.
pub fn outcome_table<'a, I, F>(records: I, tier_of: F) -> Result<Vec<OutcomeTable>, MetricsError>
where
    I: IntoIterator<Item = JudgedRecord<'a>>,
    F: Fn(&str) -> Option<Tier>,
{
    let mut tables: Vec<OutcomeTable> =
        Tier::ALL.iter().map(|&tier| OutcomeTable { tier, models: BTreeMap::new() }).collect();
    for rec in records {
        let tier = tier_of(rec.problem_id).ok_or_else(|| MetricsError::UnresolvedProblem {
            model: rec.model.to_string(),
            problem_id: rec.problem_id.to_string(),
        })?;
        for t in tables.iter_mut() {
            t.models.entry(rec.model.to_string()).or_default();
        }
        let row = tables[tier as usize].models.get_mut(rec.model).expect("row inserted above");
        if rec.category.is_tracked() {
            *row.counts.entry(rec.category).or_insert(0) += 1;
            row.total += 1;
        } else {
            row.excluded_other += 1;
        }
    }
    Ok(tables)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcceptanceRow {
    pub model: String,
    pub accepted: u64,
    pub total: u64,
    /// Percentage rounded half-up to one decimal.
    pub rate: f64,
    /// Unrounded percentage.
    pub raw_rate: f64,
}

impl AcceptanceRow {
    /// pass@1 over `total` single-sample problems of which `accepted` passed.
    pub fn from_counts(model: impl Into<String>, accepted: u64, total: u64) -> Result<Self, MetricsError> {
        if accepted > total {
            return Err(MetricsError::Domain(format!("accepted {accepted} exceeds total {total}")));
        }
        let records: Vec<PassAtKInput> = (0..total).map(|i| PassAtKInput::single(i < accepted)).collect();
        let raw_rate: f64 = pass_at_1_rate(&records)?;
        Ok(Self { model: model.into(), accepted, total, rate: round_half_up(raw_rate, 1), raw_rate })
    }
}

/// Acceptance rows across tiers (Other excluded), sorted by rounded rate
/// descending, then model name.
pub fn acceptance_table(tables: &[OutcomeTable]) -> Result<Vec<AcceptanceRow>, MetricsError> {
    let mut sums: BTreeMap<&str, (u64, u64)> = BTreeMap::new();
    for table in tables {
        for (model, row) in &table.models {
            let e = sums.entry(model.as_str()).or_default();
            e.0 += row.count(VerdictCategory::Accepted);
            e.1 += row.total;
        }
    }
    let mut rows = sums
        .into_iter()
        .filter(|(_, (_, total))| *total > 0)
        .map(|(model, (acc, total))| AcceptanceRow::from_counts(model, acc, total))
        .collect::<Result<Vec<_>, _>>()?;
    sort_acceptance(&mut rows);
    Ok(rows)
}

pub fn sort_acceptance(rows: &mut [AcceptanceRow]) {
    rows.sort_by(|a, b| b.rate.total_cmp(&a.rate).then_with(|| a.model.cmp(&b.model)));
}
