use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::AtomicBool;
use std::sync::Arc;

use codegauntlet_core::generation::{run_generation_pass, RuntimeClient};
use codegauntlet_core::judging::{run_submission_pass, Backend, Judge, JudgeError, RemoteJudge};
use codegauntlet_core::pass::PassSummary;
use codegauntlet_core::reporting::{compute_metrics, render_reports, ModelRun};
use codegauntlet_core::store::{load_corpus, PassKind, ProblemCorpus, Store, StoreError};
use codegauntlet_core::{Clock, SystemClock};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::lock::StoreLock;

/// Process-wide collaborators, replaceable in tests.
#[derive(Clone)]
pub struct Context {
    pub clock: Arc<dyn Clock>,
    pub stop: Option<&'static AtomicBool>,
}

impl Default for Context {
    fn default() -> Self {
        Self { clock: Arc::new(SystemClock), stop: None }
    }
}

impl Context {
    fn store(&self, dir: &Path) -> Result<Store, CliError> {
        let store = Store::open(dir)?;
        Ok(match self.stop {
            Some(flag) => store.with_stop_flag(flag),
            None => store,
        })
    }
}

fn corpus(cfg: &RunConfig) -> Result<ProblemCorpus, CliError> {
    if !cfg.corpus_path.exists() {
        return Err(CliError::Config(format!(
            "corpus {} not found; run `codegauntlet ingest` first",
            cfg.corpus_path.display()
        )));
    }
    Ok(load_corpus(&cfg.corpus_path)?)
}

/// Which configured models a command applies to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelSelection {
    One(String),
    All,
}

impl ModelSelection {
    fn names<'a>(&'a self, cfg: &'a RunConfig) -> Result<Vec<&'a str>, CliError> {
        match self {
            ModelSelection::One(m) => Ok(vec![cfg.model(m)?.model_name.as_str()]),
            ModelSelection::All => Ok(cfg.models.iter().map(|m| m.model_name.as_str()).collect()),
        }
    }
}

fn summary_line(kind: &str, model: &str, s: &PassSummary) -> String {
    format!("{kind} {model}: {} succeeded, {} failed, {} skipped", s.succeeded, s.failed, s.skipped)
}

pub fn cmd_generate(
    cfg: &RunConfig,
    models: &ModelSelection,
    ctx: &Context,
    out: &mut dyn Write,
) -> Result<Vec<PassSummary>, CliError> {
    let corpus = corpus(cfg)?;
    let template = cfg.template()?;
    let names = models.names(cfg)?;
    let store = ctx.store(&cfg.store_dir)?;
    let _lock = StoreLock::acquire(&cfg.store_dir)?;
    let mut summaries = Vec::new();
    for name in names {
        let client = RuntimeClient::new(cfg.model(name)?.clone())?;
        let s = run_generation_pass(&corpus, &client, &template, &store, ctx.clock.as_ref())?;
        let _ = writeln!(out, "{}", summary_line("generate", name, &s));
        summaries.push(s);
    }
    Ok(summaries)
}

pub fn cmd_submit(
    cfg: &RunConfig,
    models: &ModelSelection,
    backend: Option<Backend>,
    ctx: &Context,
    out: &mut dyn Write,
) -> Result<Vec<PassSummary>, CliError> {
    let corpus = corpus(cfg)?;
    let names = models.names(cfg)?;
    let store = ctx.store(&cfg.store_dir)?;
    let _lock = StoreLock::acquire(&cfg.store_dir)?;
    let mut judge_cfg = cfg.judge.clone();
    if let Some(b) = backend {
        judge_cfg.backend = b;
    }
    // check every model's upstream artifacts before judging anything
    let mut docs = Vec::new();
    for name in names {
        let doc = store.load_solutions(name)?.ok_or_else(|| JudgeError::MissingSolutions(name.to_string()))?;
        let missing = corpus.ids().filter(|id| !doc.entries.contains_key(*id)).count();
        if missing > 0 {
            return Err(CliError::Config(format!(
                "generation for model {name:?} is incomplete ({missing} of {} problems missing); finish `generate` first",
                corpus.len()
            )));
        }
        docs.push(doc);
    }
    let mut judge = match judge_cfg.backend {
        Backend::Local => Judge::Local(judge_cfg.local.clone()),
        Backend::Remote => Judge::Remote(Box::new(RemoteJudge::from_env(&judge_cfg)?)),
    };
    let mut summaries = Vec::new();
    for doc in &docs {
        let s = run_submission_pass(&corpus, doc, &mut judge, &store, ctx.clock.as_ref())?;
        let _ = writeln!(out, "{}", summary_line("submit", &doc.model, &s));
        summaries.push(s);
    }
    Ok(summaries)
}

pub fn default_run_id(clock: &dyn Clock) -> String {
    clock.now_utc().format("%Y%m%dT%H%M%SZ").to_string()
}

fn validate_run_id(id: &str) -> Result<(), CliError> {
    let ok = !id.is_empty()
        && id != "."
        && id != ".."
        && id.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'));
    if ok {
        Ok(())
    } else {
        Err(CliError::Config(format!("run id {id:?} must be a plain name of [A-Za-z0-9._-]")))
    }
}

/// Renders the report bundle into `<report_dir>/<run_id>/`.
pub fn cmd_report(
    cfg: &RunConfig,
    run_id: Option<&str>,
    ctx: &Context,
    out: &mut dyn Write,
) -> Result<PathBuf, CliError> {
    let corpus = corpus(cfg)?;
    let run_id = run_id.map_or_else(|| default_run_id(ctx.clock.as_ref()), str::to_string);
    validate_run_id(&run_id)?;
    let store = ctx.store(&cfg.store_dir)?;
    let _lock = StoreLock::acquire(&cfg.store_dir)?;
    let mut docs = Vec::new();
    for m in &cfg.models {
        docs.push((m.model_name.as_str(), store.load_solutions(&m.model_name)?, store.load_submissions(&m.model_name)?));
    }
    let runs: Vec<ModelRun<'_>> = docs
        .iter()
        .map(|(model, sol, sub)| ModelRun { model, solutions: sol.as_ref(), submissions: sub.as_ref() })
        .collect();
    let metrics = compute_metrics(&corpus, &cfg.tiering, cfg.histogram_bins, &runs)?;
    let baselines = cfg.reference_baselines()?;
    let bundle = render_reports(&metrics, baselines.as_ref(), &ctx.clock.timestamp());
    let dir = cfg.report_dir.join(&run_id);
    let files = bundle.write_to(&dir)?;
    for w in &bundle.warnings {
        log::warn!("{w}");
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = writeln!(out, "report {}: {} files", dir.display(), files.len());
    Ok(dir)
}

/// Checkpoint position and document completeness per model and pass.
pub fn cmd_status(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool, CliError> {
    let corpus = corpus(cfg)?;
    let store = Store::open(&cfg.store_dir)?;
    let total = corpus.len();
    let mut healthy = true;
    let _ = writeln!(out, "corpus: {} ({total} problems)", cfg.corpus_path.display());
    for m in &cfg.models {
        let name = m.model_name.as_str();
        let _ = writeln!(out, "model {name}:");
        for kind in [PassKind::Generation, PassKind::Submission] {
            let position = match store.read_checkpoint(kind, name) {
                Ok(None) => "no checkpoint".to_string(),
                Ok(Some(cp)) => match cp.resume_index(&corpus) {
                    Ok(i) => {
                        let last = cp.last_processed_id.as_deref().unwrap_or("none");
                        format!("checkpoint at {last:?}, {i}/{total} done, {} remaining", total - i)
                    }
                    Err(e) => {
                        healthy = false;
                        format!("error: {e}")
                    }
                },
                Err(e @ (StoreError::CorruptCheckpoint { .. } | StoreError::CheckpointMismatch { .. })) => {
                    healthy = false;
                    format!("error: {e}")
                }
                Err(e) => return Err(e.into()),
            };
            let records = match kind {
                PassKind::Generation => store.load_solutions(name)?.map(|d| {
                    let failed = d.entries.values().filter(|e| e.is_failed()).count();
                    format!("{} records ({failed} failed)", d.len())
                }),
                PassKind::Submission => store.load_submissions(name)?.map(|d| format!("{} records", d.len())),
            }
            .unwrap_or_else(|| "no records".to_string());
            let _ = writeln!(out, "  {:<10} {position}; {records}", kind.as_str());
        }
    }
    Ok(healthy)
}
