//! The consolidated problem corpus (`kattis_problems.json`, schema version 1).

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{atomic, parse_json_text, read_utf8, StoreError, NONE_SENTINEL};

pub const CORPUS_VERSION: u32 = 1;
pub const CORPUS_FILE_NAME: &str = "kattis_problems.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePair {
    pub input: String,
    #[serde(rename = "output")]
    pub expected_output: String,
}

impl SamplePair {
    pub fn new(input: impl Into<String>, expected_output: impl Into<String>) -> Self {
        Self { input: input.into(), expected_output: expected_output.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Problem {
    pub id: String,
    pub title: String,
    pub difficulty: f64,
    pub statement: String,
    pub samples: Vec<SamplePair>,
    #[serde(rename = "cpu_time_limit_s")]
    pub cpu_time_limit: f64,
    #[serde(rename = "memory_limit_mib")]
    pub memory_limit: f64,
    pub submission_language: String,
}

impl Problem {
    pub fn validate(&self) -> Result<(), StoreError> {
        let invalid = |reason: &str| StoreError::InvalidProblem { id: self.id.clone(), reason: reason.to_string() };
        if self.id.is_empty() {
            return Err(invalid("id must be nonempty"));
        }
        if self.id == NONE_SENTINEL {
            return Err(invalid("id \"none\" is reserved for checkpoints"));
        }
        if !(1.0..=10.0).contains(&self.difficulty) {
            return Err(StoreError::DifficultyOutOfRange { id: self.id.clone(), difficulty: self.difficulty });
        }
        if !(self.cpu_time_limit > 0.0 && self.cpu_time_limit.is_finite()) {
            return Err(invalid("cpu_time_limit_s must be positive"));
        }
        if !(self.memory_limit > 0.0 && self.memory_limit.is_finite()) {
            return Err(invalid("memory_limit_mib must be positive"));
        }
        Ok(())
    }
}

/// Problems in canonical order: ascending lexicographic by id.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProblemCorpus {
    pub version: u32,
    problems: Vec<Problem>,
    #[serde(skip)]
    index: HashMap<String, usize>,
}

#[derive(Deserialize)]
struct RawCorpus {
    version: u32,
    problems: Vec<Problem>,
}

impl ProblemCorpus {
    pub fn from_problems(mut problems: Vec<Problem>) -> Result<Self, StoreError> {
        for p in &problems {
            p.validate()?;
        }
        problems.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = problems.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(StoreError::DuplicateId(w[0].id.clone()));
        }
        let index = problems.iter().enumerate().map(|(i, p)| (p.id.clone(), i)).collect();
        Ok(Self { version: CORPUS_VERSION, problems, index })
    }

    pub fn problems(&self) -> &[Problem] {
        &self.problems
    }

    pub fn len(&self) -> usize {
        self.problems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.problems.is_empty()
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn get(&self, id: &str) -> Option<&Problem> {
        self.position(id).map(|i| &self.problems[i])
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.problems.iter().map(|p| p.id.as_str())
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self, StoreError> {
        let raw: RawCorpus = parse_json_text(text, origin)?;
        if raw.version != CORPUS_VERSION {
            return Err(StoreError::Parse {
                path: origin.to_path_buf(),
                message: format!("unsupported corpus version {} (expected {CORPUS_VERSION})", raw.version),
            });
        }
        Self::from_problems(raw.problems)
    }

    pub fn to_canonical_bytes(&self) -> Vec<u8> {
        super::canonical_json(self)
    }
}

pub fn load_corpus(path: &Path) -> Result<ProblemCorpus, StoreError> {
    let text = read_utf8(path)?;
    ProblemCorpus::parse(&text, path)
}

pub fn save_corpus(path: &Path, corpus: &ProblemCorpus) -> Result<(), StoreError> {
    atomic::atomic_write(path, &corpus.to_canonical_bytes())
}

#[cfg(test)]
pub(crate) fn problem(id: &str, difficulty: f64) -> Problem {
    Problem {
        id: id.to_string(),
        title: format!("Title {id}"),
        difficulty,
        statement: format!("Statement of {id}"),
        samples: vec![SamplePair::new("1\n", "1\n")],
        cpu_time_limit: 1.0,
        memory_limit: 256.0,
        submission_language: "python".to_string(),
    }
}
