//! Per-model result documents: `solutions_<model>.json` and `submissions_<model>.json`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::judging::VerdictCategory;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionEntry {
    pub prompt: String,
    pub raw_response: String,
    pub code: String,
    pub generation_time_s: f64,
    pub created_at: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SolutionEntry {
    pub fn is_failed(&self) -> bool {
        self.error.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubmissionEntry {
    pub verdict: VerdictCategory,
    pub raw_status: String,
    pub submission_ref: String,
    pub judged_at: String,
}

/// A model's entries keyed by problem id. `BTreeMap` keeps serialization
/// canonical so reruns are byte-comparable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument<E> {
    pub model: String,
    pub entries: BTreeMap<String, E>,
}

impl<E> ModelDocument<E> {
    pub fn new(model: impl Into<String>) -> Self {
        Self { model: model.into(), entries: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub type SolutionsDocument = ModelDocument<SolutionEntry>;
pub type SubmissionsDocument = ModelDocument<SubmissionEntry>;
