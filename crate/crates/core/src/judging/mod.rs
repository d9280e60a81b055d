//! Verdicts for generated code, from a remote judge API or the local sandbox.

pub mod local;
pub mod remote;
pub mod sandbox;
pub mod verdict;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clock::Clock;
use crate::pass::{run_resumable, Outcome, PassSummary};
use crate::store::{PassKind, Problem, ProblemCorpus, SolutionsDocument, Store, StoreError, SubmissionEntry, SubmissionsDocument};

pub use local::{judge_locally, judge_locally_detailed, Comparison, LocalJudgeConfig, LocalJudgement};
pub use remote::{poll_verdict, submit_remote, RemoteJudge};
pub use sandbox::{execute, ExecLimits, ExecutionOutcome, ExitState};
pub use verdict::{classify_verdict, Verdict, VerdictCategory};

/// `submission_ref` recorded for verdicts that did not come from a remote judge.
pub const LOCAL_REF: &str = "local";
/// Submission reference for records that never reached a backend.
pub const NOT_SUBMITTED_REF: &str = "not-submitted";

#[derive(Debug, Error)]
pub enum JudgeError {
    /// The sandbox could not run at all (e.g. interpreter missing).
    #[error("sandbox: {0}")]
    Sandbox(String),
    /// Remote judge unreachable or rejecting requests after bounded retries.
    #[error("judge backend: {0}")]
    Backend(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("no solutions file for model {0:?}; run generation first")]
    MissingSolutions(String),
    #[error(transparent)]
    Store(#[from] StoreError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Remote,
    #[default]
    Local,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct JudgeConfig {
    pub backend: Backend,
    pub judge_url: Option<String>,
    /// Minimum seconds between one remote submission returning and the next starting.
    pub rate_limit_s: f64,
    pub poll_interval_s: f64,
    pub poll_timeout_s: f64,
    pub request_timeout_s: f64,
    pub max_retries: u32,
    pub retry_backoff_s: f64,
    pub local: LocalJudgeConfig,
}

impl Default for JudgeConfig {
    fn default() -> Self {
        Self {
            backend: Backend::Local,
            judge_url: None,
            rate_limit_s: 10.0,
            poll_interval_s: 2.0,
            poll_timeout_s: 300.0,
            request_timeout_s: 60.0,
            max_retries: 3,
            retry_backoff_s: 2.0,
            local: LocalJudgeConfig::default(),
        }
    }
}

impl JudgeConfig {
    pub fn validate(&self) -> Result<(), JudgeError> {
        let bad = |m: &str| Err(JudgeError::Config(m.to_string()));
        if !(self.rate_limit_s >= 0.0 && self.rate_limit_s.is_finite()) {
            return bad("rate_limit_s must be >= 0");
        }
        if !(self.poll_interval_s > 0.0 && self.poll_interval_s.is_finite()) {
            return bad("poll_interval_s must be > 0");
        }
        if !(self.poll_timeout_s >= self.poll_interval_s && self.poll_timeout_s.is_finite()) {
            return bad("poll_timeout_s must be >= poll_interval_s");
        }
        if self.request_timeout_s.is_nan() || self.request_timeout_s <= 0.0 {
            return bad("request_timeout_s must be > 0");
        }
        if self.retry_backoff_s.is_nan() || self.retry_backoff_s < 0.0 {
            return bad("retry_backoff_s must be >= 0");
        }
        Ok(())
    }
}

/// A configured source of verdicts.
pub enum Judge {
    Local(LocalJudgeConfig),
    Remote(Box<RemoteJudge>),
}

impl Judge {
    pub fn is_local(&self) -> bool {
        matches!(self, Judge::Local(_))
    }

    /// Writes `code` to a temporary source file and obtains a verdict.
    /// Returns the verdict and the submission reference.
    pub fn judge(&mut self, problem: &Problem, code: &str) -> Result<(Verdict, String), JudgeError> {
        let file = local::write_source(problem, code)?;
        match self {
            Judge::Local(config) => Ok((local::judge_file(problem, file.path(), config)?.verdict, LOCAL_REF.to_string())),
            Judge::Remote(remote) => {
                let submission_ref = remote.submit(problem, file.path())?;
                let verdict = remote.poll(&submission_ref)?;
                Ok((verdict, submission_ref))
            }
        }
    }
}

/// Judges each problem's stored solution in canonical order with the same
/// checkpoint/resume protocol as generation. Failed generations and empty
/// code are recorded as `Compile Error` without contacting the backend.
pub fn run_submission_pass(
    corpus: &ProblemCorpus,
    solutions: &SolutionsDocument,
    judge: &mut Judge,
    store: &Store,
    clock: &dyn Clock,
) -> Result<PassSummary, JudgeError> {
    let model = solutions.model.as_str();
    let mut doc = store.load_submissions(model)?.unwrap_or_else(|| SubmissionsDocument::new(model));
    run_resumable(
        corpus,
        store,
        PassKind::Submission,
        &mut doc,
        |s, d| s.save_submissions(d),
        |problem| {
            let code = solutions
                .entries
                .get(&problem.id)
                .filter(|e| !e.is_failed())
                .map(|e| e.code.as_str())
                .unwrap_or("");
            let (verdict, submission_ref) = if code.trim().is_empty() {
                (Verdict::new(VerdictCategory::CompileError), NOT_SUBMITTED_REF.to_string())
            } else {
                judge.judge(problem, code)?
            };
            log::info!("{model} {}: {}", problem.id, verdict.raw_status);
            let outcome = if verdict.category == VerdictCategory::Accepted { Outcome::Succeeded } else { Outcome::Failed };
            let entry = SubmissionEntry {
                verdict: verdict.category,
                raw_status: verdict.raw_status,
                submission_ref,
                judged_at: clock.timestamp(),
            };
            Ok((entry, outcome))
        },
    )
}
