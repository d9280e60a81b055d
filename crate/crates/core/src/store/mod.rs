//! On-disk state. Every write goes through [`atomic_write`]; every document is
//! UTF-8 JSON serialized canonically (sorted maps, pretty-printed, trailing
//! newline) so that identical state produces identical bytes.
//!
//! A store directory is single-writer: running two pipelines against the same
//! directory is unsupported.

pub mod atomic;
pub mod checkpoint;
pub mod corpus;
pub mod documents;
pub mod tier;

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

pub use atomic::{atomic_write, atomic_write_with, is_temp_residue, FailAtHit, FailPoint, FaultInjector, NoFaults, TEMP_SUFFIX};
pub use checkpoint::{Checkpoint, PassKind};
pub use corpus::{load_corpus, save_corpus, Problem, ProblemCorpus, SamplePair, CORPUS_FILE_NAME};
pub use documents::{ModelDocument, SolutionEntry, SolutionsDocument, SubmissionEntry, SubmissionsDocument};
pub use tier::{tier_of, DifficultyTiering, Tier};

pub(crate) const NONE_SENTINEL: &str = "none";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{path}: invalid UTF-8 at byte offset {offset}")]
    Encoding { path: PathBuf, offset: usize },
    #[error("duplicate problem id {0:?}")]
    DuplicateId(String),
    #[error("problem {id:?}: difficulty {difficulty} outside [1.0, 10.0]")]
    DifficultyOutOfRange { id: String, difficulty: f64 },
    #[error("problem {id:?}: {reason}")]
    InvalidProblem { id: String, reason: String },
    #[error("invalid tiering ({easy_upper}, {medium_upper}): need 1.0 < easy_upper < medium_upper <= 10.0")]
    InvalidTiering { easy_upper: f64, medium_upper: f64 },
    #[error("corrupt checkpoint {path}: {reason}; delete or repair the file to continue (the pass will not restart on its own)")]
    CorruptCheckpoint { path: PathBuf, reason: String },
    #[error("checkpoint for {pass_kind} pass of {model:?} does not match the corpus: {reason}; delete or repair it to continue")]
    CheckpointMismatch { pass_kind: PassKind, model: String, reason: String },
    #[error("injected failure at {0:?}")]
    Injected(FailPoint),
    #[error("stop requested; rerun to resume")]
    Interrupted,
}

impl StoreError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        StoreError::Io { path: path.to_path_buf(), source }
    }
}

/// Reads a file that must be valid UTF-8.
pub fn read_utf8(path: &Path) -> Result<String, StoreError> {
    let bytes = fs::read(path).map_err(|e| StoreError::io(path, e))?;
    String::from_utf8(bytes).map_err(|e| StoreError::Encoding {
        path: path.to_path_buf(),
        offset: e.utf8_error().valid_up_to(),
    })
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let line_start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (line_start + column.saturating_sub(1)).min(text.len())
}

/// Parses JSON, reporting the failing byte offset.
pub fn parse_json_text<T: DeserializeOwned>(text: &str, origin: &Path) -> Result<T, StoreError> {
    serde_json::from_str(text).map_err(|e| StoreError::Parse {
        path: origin.to_path_buf(),
        message: format!("{e} (byte offset {})", byte_offset(text, e.line(), e.column())),
    })
}

/// Pretty-printed JSON with a trailing newline.
pub fn canonical_json<T: Serialize + ?Sized>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("store documents serialize");
    out.push(b'\n');
    out
}

/// Restricts a model name to characters safe in file names.
pub fn file_stem(model: &str) -> String {
    model
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '.' | '-' | '_') { c } else { '_' })
        .collect()
}

/// A store directory holding per-model documents and checkpoints.
#[derive(Clone)]
pub struct Store {
    dir: PathBuf,
    faults: Arc<dyn FaultInjector>,
    stop: Option<&'static AtomicBool>,
}

impl std::fmt::Debug for Store {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Store").field("dir", &self.dir).finish_non_exhaustive()
    }
}

impl Store {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| StoreError::io(&dir, e))?;
        Ok(Self { dir, faults: Arc::new(NoFaults), stop: None })
    }

    /// Passes check `flag` between problems and stop with
    /// [`StoreError::Interrupted`] once it is set.
    pub fn with_stop_flag(mut self, flag: &'static AtomicBool) -> Self {
        self.stop = Some(flag);
        self
    }

    pub(crate) fn check_stop(&self) -> Result<(), StoreError> {
        match self.stop {
            Some(f) if f.load(Ordering::SeqCst) => Err(StoreError::Interrupted),
            _ => Ok(()),
        }
    }

    pub fn with_faults(mut self, faults: Arc<dyn FaultInjector>) -> Self {
        self.faults = faults;
        self
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn solutions_path(&self, model: &str) -> PathBuf {
        self.dir.join(format!("solutions_{}.json", file_stem(model)))
    }

    pub fn submissions_path(&self, model: &str) -> PathBuf {
        self.dir.join(format!("submissions_{}.json", file_stem(model)))
    }

    pub fn checkpoint_path(&self, kind: PassKind, model: &str) -> PathBuf {
        self.dir.join(format!("{}_{}.checkpoint.json", kind.as_str(), file_stem(model)))
    }

    /// Simulated-crash hook for pass boundaries.
    pub fn failpoint(&self, point: FailPoint) -> Result<(), StoreError> {
        if self.faults.should_fail(point) {
            Err(StoreError::Injected(point))
        } else {
            Ok(())
        }
    }

    pub fn write_atomic(&self, path: &Path, payload: &[u8]) -> Result<(), StoreError> {
        atomic_write_with(path, payload, self.faults.as_ref())
    }

    fn load_doc<T: DeserializeOwned>(&self, path: &Path) -> Result<Option<T>, StoreError> {
        if !path.exists() {
            return Ok(None);
        }
        let text = read_utf8(path)?;
        parse_json_text(&text, path).map(Some)
    }

    pub fn load_solutions(&self, model: &str) -> Result<Option<SolutionsDocument>, StoreError> {
        self.load_doc(&self.solutions_path(model))
    }

    pub fn save_solutions(&self, doc: &SolutionsDocument) -> Result<(), StoreError> {
        self.write_atomic(&self.solutions_path(&doc.model), &canonical_json(doc))
    }

    pub fn load_submissions(&self, model: &str) -> Result<Option<SubmissionsDocument>, StoreError> {
        self.load_doc(&self.submissions_path(model))
    }

    pub fn save_submissions(&self, doc: &SubmissionsDocument) -> Result<(), StoreError> {
        self.write_atomic(&self.submissions_path(&doc.model), &canonical_json(doc))
    }

    pub fn read_checkpoint(&self, kind: PassKind, model: &str) -> Result<Option<Checkpoint>, StoreError> {
        let path = self.checkpoint_path(kind, model);
        if !path.exists() {
            return Ok(None);
        }
        let corrupt = |reason: String| StoreError::CorruptCheckpoint { path: path.clone(), reason };
        let text = read_utf8(&path).map_err(|e| corrupt(e.to_string()))?;
        let cp: Checkpoint = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
        if cp.pass_kind != kind || cp.model != model {
            return Err(corrupt(format!(
                "file describes the {} pass of {:?}, expected {kind} / {model:?}",
                cp.pass_kind, cp.model
            )));
        }
        Ok(Some(cp))
    }

    pub fn write_checkpoint(&self, checkpoint: &Checkpoint) -> Result<(), StoreError> {
        let path = self.checkpoint_path(checkpoint.pass_kind, &checkpoint.model);
        self.write_atomic(&path, &canonical_json(checkpoint))
    }
}
