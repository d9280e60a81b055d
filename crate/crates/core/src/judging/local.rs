//! Offline judge: runs a solution against the problem's public samples.
//!
//! Verdicts produced here are sample-judged only; hidden judge data is not
//! available, so an `Accepted` means "passes every public sample".

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::sandbox::{execute, ExecLimits, ExecutionOutcome};
use super::{JudgeError, Verdict, VerdictCategory};
use crate::store::Problem;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    /// Line endings folded to `\n`, trailing whitespace stripped per line,
    /// trailing newlines at the end ignored.
    #[default]
    Normalized,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LocalJudgeConfig {
    /// Command used to run a solution; `{file}` is replaced by the source
    /// path, or the path is appended when no argument mentions it.
    pub interpreter_command: Vec<String>,
    pub compile_check: bool,
    pub compile_command: Vec<String>,
    /// Seconds allowed for the compile check.
    pub compile_timeout_s: f64,
    pub comparison: Comparison,
    /// Apply the problem's memory limit as an address-space limit.
    pub enforce_memory_limit: bool,
    /// Substrings of stderr that identify an allocation failure.
    pub allocation_failure_markers: Vec<String>,
}

impl Default for LocalJudgeConfig {
    fn default() -> Self {
        Self {
            interpreter_command: vec!["python3".into(), "{file}".into()],
            compile_check: true,
            compile_command: vec!["python3".into(), "-m".into(), "py_compile".into(), "{file}".into()],
            compile_timeout_s: 30.0,
            comparison: Comparison::Normalized,
            enforce_memory_limit: cfg!(unix),
            allocation_failure_markers: vec![
                "MemoryError".into(),
                "std::bad_alloc".into(),
                "Cannot allocate memory".into(),
                "out of memory".into(),
            ],
        }
    }
}

pub fn normalize_output(s: &str) -> String {
    let unified = s.replace("\r\n", "\n").replace('\r', "\n");
    let lines: Vec<&str> = unified.split('\n').map(str::trim_end).collect();
    lines.join("\n").trim_end_matches('\n').to_string()
}

pub fn outputs_match(actual: &str, expected: &str, comparison: Comparison) -> bool {
    match comparison {
        Comparison::Exact => actual == expected,
        Comparison::Normalized => normalize_output(actual) == normalize_output(expected),
    }
}

pub fn source_extension(language: &str) -> &'static str {
    let lang = language.to_ascii_lowercase();
    let lang = lang.split_whitespace().next().unwrap_or("");
    match lang {
        l if l.starts_with("python") || l == "py" || l == "pypy" => "py",
        "c++" | "cpp" => "cpp",
        "c" => "c",
        "java" => "java",
        "rust" => "rs",
        "go" => "go",
        "javascript" | "node" | "js" => "js",
        "kotlin" => "kt",
        _ => "txt",
    }
}

fn with_file(template: &[String], file: &Path) -> Vec<String> {
    let path = file.to_string_lossy();
    let mut mentioned = false;
    let mut argv: Vec<String> = template
        .iter()
        .map(|a| {
            if a.contains("{file}") {
                mentioned = true;
                a.replace("{file}", &path)
            } else {
                a.clone()
            }
        })
        .collect();
    if !mentioned {
        argv.push(path.into_owned());
    }
    argv
}

/// Verdict plus the evidence behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalJudgement {
    pub verdict: Verdict,
    /// 0-based index of the sample that decided a failing verdict.
    pub failed_sample: Option<usize>,
    /// Execution outcome of the deciding run (compile check or sample).
    pub outcome: Option<ExecutionOutcome>,
}

fn classify_run(
    outcome: &ExecutionOutcome,
    problem: &Problem,
    expected: &str,
    config: &LocalJudgeConfig,
) -> Option<VerdictCategory> {
    let over_cpu = outcome.cpu_time.is_some_and(|t| t > problem.cpu_time_limit);
    if outcome.wall_timeout || outcome.killed_by_cpu_limit() || over_cpu {
        return Some(VerdictCategory::TimeLimitExceeded);
    }
    let over_memory = outcome.peak_memory.is_some_and(|m| m > problem.memory_limit);
    let allocation_failed = config.enforce_memory_limit
        && !outcome.exit_status.success()
        && config.allocation_failure_markers.iter().any(|m| outcome.stderr.contains(m.as_str()));
    if over_memory || allocation_failed {
        return Some(VerdictCategory::MemoryLimitExceeded);
    }
    if !outcome.exit_status.success() {
        return Some(VerdictCategory::RunTimeError);
    }
    if !outputs_match(&outcome.stdout, expected, config.comparison) {
        return Some(VerdictCategory::WrongAnswer);
    }
    None
}

/// Judges an already-written source file.
pub fn judge_file(problem: &Problem, source: &Path, config: &LocalJudgeConfig) -> Result<LocalJudgement, JudgeError> {
    if config.interpreter_command.is_empty() {
        return Err(JudgeError::Config("local.interpreter_command is empty".into()));
    }
    if config.compile_check && !config.compile_command.is_empty() {
        let limits = ExecLimits { cpu_time: config.compile_timeout_s, wall_time: config.compile_timeout_s, memory_mib: None };
        let outcome = execute(&with_file(&config.compile_command, source), b"", &limits)?;
        if !outcome.exit_status.success() {
            return Ok(LocalJudgement {
                verdict: Verdict::new(VerdictCategory::CompileError),
                failed_sample: None,
                outcome: Some(outcome),
            });
        }
    }

    let argv = with_file(&config.interpreter_command, source);
    let memory = config.enforce_memory_limit.then_some(problem.memory_limit);
    let limits = ExecLimits::for_problem(problem.cpu_time_limit, memory);
    for (idx, sample) in problem.samples.iter().enumerate() {
        let outcome = execute(&argv, sample.input.as_bytes(), &limits)?;
        if let Some(category) = classify_run(&outcome, problem, &sample.expected_output, config) {
            return Ok(LocalJudgement {
                verdict: Verdict::new(category),
                failed_sample: Some(idx),
                outcome: Some(outcome),
            });
        }
    }
    Ok(LocalJudgement { verdict: Verdict::new(VerdictCategory::Accepted), failed_sample: None, outcome: None })
}

pub fn judge_locally_detailed(
    problem: &Problem,
    code: &str,
    config: &LocalJudgeConfig,
) -> Result<LocalJudgement, JudgeError> {
    if code.trim().is_empty() {
        return Ok(LocalJudgement { verdict: Verdict::new(VerdictCategory::CompileError), failed_sample: None, outcome: None });
    }
    let file = write_source(problem, code)?;
    judge_file(problem, file.path(), config)
}

/// Writes `code` to a temporary file named with the language's extension.
pub(crate) fn write_source(problem: &Problem, code: &str) -> Result<tempfile::NamedTempFile, JudgeError> {
    let mut file = tempfile::Builder::new()
        .prefix("solution-")
        .suffix(&format!(".{}", source_extension(&problem.submission_language)))
        .tempfile()
        .map_err(|e| JudgeError::Sandbox(format!("cannot create source file: {e}")))?;
    file.write_all(code.as_bytes())
        .and_then(|_| file.flush())
        .map_err(|e| JudgeError::Sandbox(format!("cannot write source file: {e}")))?;
    Ok(file)
}

pub fn judge_locally(problem: &Problem, code: &str, config: &LocalJudgeConfig) -> Result<Verdict, JudgeError> {
    judge_locally_detailed(problem, code, config).map(|j| j.verdict)
}
