//! Solution generation against a locally hosted LLM runtime.

pub mod extract;
pub mod prompt;
pub mod runtime;

use std::time::Instant;

use thiserror::Error;

use crate::clock::Clock;
use crate::pass::{run_resumable, Outcome, PassSummary};
use crate::store::{PassKind, Problem, ProblemCorpus, SolutionEntry, SolutionsDocument, Store, StoreError};

pub use extract::extract_code;
pub use prompt::{build_prompt, PromptTemplate, DEFAULT_TEMPLATE};
pub use runtime::{generate_solution, Generated, RuntimeClient, RuntimeEndpoint};

#[derive(Debug, Error)]
pub enum GenerationError {
    #[error("prompt template: {0}")]
    Template(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("transport failure after {attempts} attempt(s): {message}")]
    Transport { attempts: u32, message: String },
    #[error("{0}")]
    Reply(String),
    #[error(transparent)]
    Store(#[from] StoreError),
}

/// Produces one solution record. Runtime failures become a failed record
/// (empty code, error string kept) rather than an error.
pub fn generate_record(
    problem: &Problem,
    client: &RuntimeClient,
    template: &PromptTemplate,
    clock: &dyn Clock,
) -> (SolutionEntry, Outcome) {
    let prompt = build_prompt(problem, template);
    let started = Instant::now();
    let result = client.generate(&prompt);
    let created_at = clock.timestamp();
    match result {
        Ok(g) => {
            let time = clock.recorded_duration(&problem.id, g.generation_time);
            let code = extract_code(&g.raw_response, &problem.submission_language);
            let entry = SolutionEntry {
                prompt,
                raw_response: g.raw_response,
                code,
                generation_time_s: time.as_secs_f64(),
                created_at,
                error: None,
            };
            (entry, Outcome::Succeeded)
        }
        Err(e) => {
            log::warn!("{}: generation failed for {}: {e}", client.endpoint().model_name, problem.id);
            let time = clock.recorded_duration(&problem.id, started.elapsed());
            let entry = SolutionEntry {
                prompt,
                raw_response: String::new(),
                code: String::new(),
                generation_time_s: time.as_secs_f64(),
                created_at,
                error: Some(e.to_string()),
            };
            (entry, Outcome::Failed)
        }
    }
}

/// Walks the corpus in canonical order from the checkpoint, persisting one
/// record per problem to `solutions_<model>.json` before advancing the
/// checkpoint. Only persistence errors abort the pass.
pub fn run_generation_pass(
    corpus: &ProblemCorpus,
    client: &RuntimeClient,
    template: &PromptTemplate,
    store: &Store,
    clock: &dyn Clock,
) -> Result<PassSummary, GenerationError> {
    let model = &client.endpoint().model_name;
    let mut doc = store.load_solutions(model)?.unwrap_or_else(|| SolutionsDocument::new(model.as_str()));
    run_resumable(
        corpus,
        store,
        PassKind::Generation,
        &mut doc,
        |s, d| s.save_solutions(d),
        |problem| Ok::<_, GenerationError>(generate_record(problem, client, template, clock)),
    )
}
