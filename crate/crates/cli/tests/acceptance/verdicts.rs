//! Six problems whose solutions each land in a different tracked category
//! under the local judge.

use codegauntlet_core::judging::{run_submission_pass, Judge, LocalJudgeConfig, VerdictCategory, LOCAL_REF};
use codegauntlet_core::store::{Problem, ProblemCorpus, SamplePair, SolutionEntry, SolutionsDocument, Store};

use crate::fixtures;
use crate::CriterionResult;

const MODEL: &str = "fixture-coder";

/// (problem id, solution, expected category)
const CASES: [(&str, &str, VerdictCategory); 6] = [
    ("v1-accepted", "a, b = map(int, input().split())\nprint(a + b)", VerdictCategory::Accepted),
    ("v2-compile", "def broken(:\n    pass", VerdictCategory::CompileError),
    ("v3-wrong", "print(42)", VerdictCategory::WrongAnswer),
    ("v4-runtime", "raise ValueError('boom')", VerdictCategory::RunTimeError),
    ("v5-time", "while True:\n    pass", VerdictCategory::TimeLimitExceeded),
    ("v6-memory", "block = bytearray(1024 * 1024 * 1024)\nprint(len(block))", VerdictCategory::MemoryLimitExceeded),
];

/// Address-space limits are reliable on Linux; elsewhere a memory verdict is
/// best effort.
const MEMORY_ENFORCED: bool = cfg!(target_os = "linux");

fn corpus() -> Result<ProblemCorpus, String> {
    let problems = CASES
        .iter()
        .map(|(id, _, _)| Problem {
            id: id.to_string(),
            title: id.to_string(),
            difficulty: 2.0,
            statement: "Print the sum of two integers.".into(),
            samples: vec![SamplePair::new("2 3\n", "5\n")],
            cpu_time_limit: 1.0,
            memory_limit: 256.0,
            submission_language: "python".into(),
        })
        .collect();
    ProblemCorpus::from_problems(problems).map_err(|e| e.to_string())
}

fn solutions() -> SolutionsDocument {
    let mut doc = SolutionsDocument::new(MODEL);
    for (id, code, _) in CASES {
        doc.entries.insert(
            id.to_string(),
            SolutionEntry {
                prompt: String::new(),
                raw_response: format!("```python\n{code}\n```"),
                code: code.to_string(),
                generation_time_s: 1.0,
                created_at: "2026-03-01T12:00:00Z".into(),
                error: None,
            },
        );
    }
    doc
}

pub fn run() -> CriterionResult {
    let corpus = corpus()?;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let store = Store::open(dir.path()).map_err(|e| e.to_string())?;
    let mut judge = Judge::Local(LocalJudgeConfig::default());
    let clock = fixtures::scripted_clock(&[]);
    run_submission_pass(&corpus, &solutions(), &mut judge, &store, &clock).map_err(|e| e.to_string())?;
    let doc = store.load_submissions(MODEL).map_err(|e| e.to_string())?.ok_or("no submissions written")?;

    let mut notes = Vec::new();
    for (id, _, want) in CASES {
        let entry = doc.entries.get(id).ok_or_else(|| format!("{id}: no verdict"))?;
        check!(entry.submission_ref == LOCAL_REF, "{id}: ref {:?}", entry.submission_ref);
        if want == VerdictCategory::MemoryLimitExceeded && !MEMORY_ENFORCED {
            if entry.verdict != want {
                notes.push(format!("{want} skipped: memory limits are not enforced on this platform (got {})", entry.verdict));
            }
            continue;
        }
        check!(entry.verdict == want, "{id}: {} ({:?}), expected {want}", entry.verdict, entry.raw_status);
    }
    let mut detail = format!("{} problems, one per tracked category", CASES.len());
    if !notes.is_empty() {
        detail = format!("{detail}; {}", notes.join("; "));
    }
    Ok(detail)
}
