use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::corpus::ProblemCorpus;
use super::{StoreError, NONE_SENTINEL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PassKind {
    Generation,
    Submission,
}

impl PassKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PassKind::Generation => "generation",
            PassKind::Submission => "submission",
        }
    }
}

impl fmt::Display for PassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Resume token for one (pass, model). `last_processed_id` is `None` on a
/// fresh pass and serializes as the sentinel `"none"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub pass_kind: PassKind,
    pub model: String,
    #[serde(serialize_with = "ser_last", deserialize_with = "de_last")]
    pub last_processed_id: Option<String>,
    pub processed_count: u64,
}

fn ser_last<S: Serializer>(v: &Option<String>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(v.as_deref().unwrap_or(NONE_SENTINEL))
}

fn de_last<'de, D: Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
    let s = String::deserialize(d)?;
    Ok(if s == NONE_SENTINEL { None } else { Some(s) })
}

impl Checkpoint {
    pub fn fresh(pass_kind: PassKind, model: impl Into<String>) -> Self {
        Self { pass_kind, model: model.into(), last_processed_id: None, processed_count: 0 }
    }

    pub fn at(pass_kind: PassKind, model: impl Into<String>, id: impl Into<String>, count: u64) -> Self {
        Self { pass_kind, model: model.into(), last_processed_id: Some(id.into()), processed_count: count }
    }

    /// Index of the first corpus problem still to process, after checking
    /// the checkpoint against the corpus it claims to describe.
    pub fn resume_index(&self, corpus: &ProblemCorpus) -> Result<usize, StoreError> {
        let mismatch = |reason: String| StoreError::CheckpointMismatch {
            pass_kind: self.pass_kind,
            model: self.model.clone(),
            reason,
        };
        let next = match &self.last_processed_id {
            None => 0,
            Some(id) => corpus
                .position(id)
                .ok_or_else(|| mismatch(format!("last processed id {id:?} is not in the corpus")))?
                + 1,
        };
        if self.processed_count != next as u64 {
            return Err(mismatch(format!(
                "processed_count {} disagrees with position of last processed id ({next})",
                self.processed_count
            )));
        }
        Ok(next)
    }
}
