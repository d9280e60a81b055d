use codegauntlet_core::generation::GenerationError;
use codegauntlet_core::judging::JudgeError;
use codegauntlet_core::metrics::MetricsError;
use codegauntlet_core::store::StoreError;
use thiserror::Error;

/// Process exit codes. These values are part of the command-line contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    /// Bad configuration, bad input data, or a missing upstream artifact.
    Config = 2,
    /// The pass stopped part way; rerunning resumes it.
    Interrupted = 3,
    /// The judge backend (remote API or local sandbox) could not be used.
    Backend = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("ingest rejected {} problem(s):\n  {}", .0.len(), .0.join("\n  "))]
    Ingest(Vec<String>),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Generation(#[from] GenerationError),
    #[error(transparent)]
    Judge(#[from] JudgeError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

fn store_status(e: &StoreError) -> ExitStatus {
    match e {
        StoreError::Io { .. } | StoreError::Injected(_) | StoreError::Interrupted => ExitStatus::Interrupted,
        _ => ExitStatus::Config,
    }
}

impl CliError {
    pub fn exit_status(&self) -> ExitStatus {
        match self {
            CliError::Config(_) | CliError::Ingest(_) | CliError::Metrics(_) => ExitStatus::Config,
            CliError::Store(e) => store_status(e),
            CliError::Generation(GenerationError::Store(e)) => store_status(e),
            CliError::Generation(GenerationError::Template(_) | GenerationError::Config(_)) => ExitStatus::Config,
            CliError::Generation(GenerationError::Transport { .. } | GenerationError::Reply(_)) => ExitStatus::Backend,
            CliError::Judge(JudgeError::Store(e)) => store_status(e),
            CliError::Judge(JudgeError::Config(_) | JudgeError::MissingSolutions(_)) => ExitStatus::Config,
            CliError::Judge(JudgeError::Backend(_) | JudgeError::Sandbox(_)) => ExitStatus::Backend,
        }
    }
}
