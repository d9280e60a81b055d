//! The resumable per-problem loop shared by the generation and submission passes.
//!
//! Order of effects for each problem: persist the record (atomic rewrite of
//! the model document), then advance the checkpoint. A crash between the two
//! leaves a record the checkpoint does not cover yet; on resume such a record
//! is recognized and the checkpoint is advanced without redoing the work, so
//! each problem is processed exactly once.

use serde::Serialize;

use crate::store::{Checkpoint, FailPoint, ModelDocument, PassKind, Problem, ProblemCorpus, Store, StoreError};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PassSummary {
    pub succeeded: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl PassSummary {
    pub fn processed(&self) -> usize {
        self.succeeded + self.failed
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Succeeded,
    Failed,
}

pub(crate) fn run_resumable<E, Err, S, F>(
    corpus: &ProblemCorpus,
    store: &Store,
    kind: PassKind,
    doc: &mut ModelDocument<E>,
    save: S,
    mut process: F,
) -> Result<PassSummary, Err>
where
    Err: From<StoreError>,
    S: Fn(&Store, &ModelDocument<E>) -> Result<(), StoreError>,
    F: FnMut(&Problem) -> Result<(E, Outcome), Err>,
{
    let model = doc.model.clone();
    let start = match store.read_checkpoint(kind, &model)? {
        Some(cp) => cp.resume_index(corpus)?,
        None => 0,
    };
    let mut summary = PassSummary { skipped: start, ..Default::default() };

    for (idx, problem) in corpus.problems().iter().enumerate().skip(start) {
        store.check_stop()?;
        if doc.entries.contains_key(&problem.id) {
            log::info!("{kind} {model}: {} already persisted, advancing checkpoint", problem.id);
            summary.skipped += 1;
        } else {
            let (entry, outcome) = process(problem)?;
            doc.entries.insert(problem.id.clone(), entry);
            save(store, doc)?;
            match outcome {
                Outcome::Succeeded => summary.succeeded += 1,
                Outcome::Failed => summary.failed += 1,
            }
        }
        store.failpoint(FailPoint::RecordPersisted)?;
        store.write_checkpoint(&Checkpoint::at(kind, model.as_str(), problem.id.as_str(), idx as u64 + 1))?;
        store.failpoint(FailPoint::CheckpointAdvanced)?;
    }
    Ok(summary)
}
