//! Builds the consolidated corpus file from either an existing corpus JSON
//! or a directory with one subdirectory per problem:
//!
//! ```text
//! <root>/<problem-id>/metadata.json   title, difficulty, cpu_time_limit_s,
//!                                     memory_limit_mib, submission_language
//! <root>/<problem-id>/statement.txt
//! <root>/<problem-id>/samples/<name>.in and <name>.ans
//! ```
//!
//! Samples are ordered by name, numerically when the names are numbers.
//! Any malformed problem aborts the whole ingest and nothing is written.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use codegauntlet_core::store::{
    read_utf8, save_corpus, DifficultyTiering, Problem, ProblemCorpus, SamplePair, StoreError, Tier,
};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Metadata {
    #[serde(default)]
    id: Option<String>,
    title: String,
    difficulty: f64,
    cpu_time_limit_s: f64,
    memory_limit_mib: f64,
    submission_language: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IngestSummary {
    pub problems: usize,
    pub tiers: BTreeMap<Tier, usize>,
}

impl IngestSummary {
    pub fn describe(&self) -> String {
        let tiers: Vec<String> = Tier::ALL.iter().map(|t| format!("{t} {}", self.tiers.get(t).unwrap_or(&0))).collect();
        format!("{} problems ({})", self.problems, tiers.join(", "))
    }
}

fn sample_order(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

fn text(path: &Path) -> Result<String, String> {
    read_utf8(path).map_err(|e| e.to_string())
}

fn read_problem(dir: &Path, id: &str) -> Result<Problem, String> {
    let meta_path = dir.join("metadata.json");
    let meta: Metadata = serde_json::from_str(&text(&meta_path)?).map_err(|e| format!("metadata.json: {e}"))?;
    if let Some(meta_id) = &meta.id {
        if meta_id != id {
            return Err(format!("metadata id {meta_id:?} does not match directory name"));
        }
    }
    let statement = text(&dir.join("statement.txt"))?;
    let samples_dir = dir.join("samples");
    let mut names = Vec::new();
    if samples_dir.is_dir() {
        let entries = fs::read_dir(&samples_dir).map_err(|e| format!("{}: {e}", samples_dir.display()))?;
        for entry in entries {
            let path = entry.map_err(|e| format!("{}: {e}", samples_dir.display()))?.path();
            match (path.extension().and_then(|e| e.to_str()), path.file_stem().and_then(|s| s.to_str())) {
                (Some("in"), Some(stem)) => names.push(stem.to_string()),
                (Some("ans"), Some(stem)) if !samples_dir.join(format!("{stem}.in")).exists() => {
                    return Err(format!("samples/{stem}.ans has no matching .in"));
                }
                _ => {}
            }
        }
    }
    names.sort_by(|a, b| sample_order(a, b));
    let mut samples = Vec::with_capacity(names.len());
    for name in &names {
        let ans = samples_dir.join(format!("{name}.ans"));
        if !ans.exists() {
            return Err(format!("samples/{name}.in has no matching .ans"));
        }
        samples.push(SamplePair::new(text(&samples_dir.join(format!("{name}.in")))?, text(&ans)?));
    }
    let problem = Problem {
        id: id.to_string(),
        title: meta.title,
        difficulty: meta.difficulty,
        statement,
        samples,
        cpu_time_limit: meta.cpu_time_limit_s,
        memory_limit: meta.memory_limit_mib,
        submission_language: meta.submission_language,
    };
    problem.validate().map_err(|e| e.to_string())?;
    Ok(problem)
}

pub fn read_problem_tree(root: &Path) -> Result<ProblemCorpus, CliError> {
    let entries = fs::read_dir(root).map_err(|e| StoreError::Io { path: root.to_path_buf(), source: e })?;
    let mut dirs = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| StoreError::Io { path: root.to_path_buf(), source: e })?.path();
        if path.is_dir() {
            dirs.push(path);
        }
    }
    dirs.sort();
    let mut problems = Vec::new();
    let mut errors = Vec::new();
    for dir in &dirs {
        let id = dir.file_name().and_then(|n| n.to_str()).unwrap_or_default().to_string();
        match read_problem(dir, &id) {
            Ok(p) => problems.push(p),
            Err(e) => errors.push(format!("{id}: {e}")),
        }
    }
    if !errors.is_empty() {
        return Err(CliError::Ingest(errors));
    }
    if problems.is_empty() {
        return Err(CliError::Ingest(vec![format!("{}: no problem directories", root.display())]));
    }
    Ok(ProblemCorpus::from_problems(problems)?)
}

/// Reads `input` (corpus file or problem tree) and writes the canonical
/// corpus to `output`.
pub fn ingest(input: &Path, output: &Path, tiering: &DifficultyTiering) -> Result<IngestSummary, CliError> {
    if !input.exists() {
        return Err(CliError::Config(format!("ingest input {} not found", input.display())));
    }
    let corpus = if input.is_dir() {
        read_problem_tree(input)?
    } else {
        ProblemCorpus::parse(&read_utf8(input)?, input)?
    };
    if let Some(parent) = output.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| StoreError::Io { path: parent.to_path_buf(), source: e })?;
    }
    save_corpus(output, &corpus)?;
    let mut tiers = BTreeMap::new();
    for p in corpus.problems() {
        *tiers.entry(tiering.tier_of(p.difficulty)).or_insert(0) += 1;
    }
    Ok(IngestSummary { problems: corpus.len(), tiers })
}
