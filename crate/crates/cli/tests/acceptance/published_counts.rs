//! Synthetic submission records carrying exactly the published per-tier
//! outcome counts must reproduce the published acceptance rates.

use codegauntlet_core::judging::{VerdictCategory, LOCAL_REF};
use codegauntlet_core::reporting::{compute_metrics, render_reports, ModelRun, DEFAULT_HISTOGRAM_BINS};
use codegauntlet_core::store::{
    DifficultyTiering, Problem, ProblemCorpus, SamplePair, SubmissionEntry, SubmissionsDocument, Tier,
};

use crate::CriterionResult;

const MODELS: [&str; 8] =
    ["DeepSeek-Coder", "CodeLlama", "CodeQwen", "DolphinCoder", "Qwen2.5-Coder", "Granite-Code", "Llama3.1", "Yi-Coder"];

/// Rows in `VerdictCategory::TRACKED` order, then the published Total row;
/// columns follow `MODELS`.
type TierCounts = [[u64; 8]; 7];

const EASY: TierCounts = [
    [90, 16, 49, 21, 157, 14, 91, 139],
    [27, 210, 21, 92, 2, 28, 8, 20],
    [381, 245, 326, 370, 323, 485, 318, 368],
    [114, 145, 209, 127, 120, 82, 185, 82],
    [8, 4, 8, 6, 17, 2, 18, 10],
    [0, 0, 0, 0, 1, 0, 0, 1],
    [620, 620, 613, 616, 620, 611, 620, 620],
];

const MEDIUM: TierCounts = [
    [15, 1, 5, 1, 47, 4, 8, 52],
    [72, 392, 59, 216, 12, 70, 17, 37],
    [770, 506, 543, 717, 719, 993, 645, 819],
    [375, 362, 608, 311, 422, 184, 549, 300],
    [38, 17, 48, 25, 74, 10, 55, 58],
    [8, 0, 4, 1, 4, 2, 4, 12],
    [1278, 1278, 1267, 1271, 1278, 1263, 1278, 1278],
];

const HARD: TierCounts = [
    [0, 0, 0, 0, 0, 0, 1, 1],
    [128, 475, 95, 291, 18, 85, 35, 80],
    [985, 719, 646, 853, 924, 1279, 833, 1096],
    [512, 478, 870, 511, 615, 290, 773, 418],
    [48, 16, 60, 28, 120, 15, 43, 75],
    [11, 0, 6, 1, 12, 2, 5, 18],
    [1684, 1688, 1677, 1684, 1689, 1671, 1690, 1688],
];

/// Published one-decimal acceptance rates in percent.
const RATES: [(&str, f64); 8] = [
    ("Qwen2.5-Coder", 5.7),
    ("Yi-Coder", 5.4),
    ("DeepSeek-Coder", 2.9),
    ("Llama3.1", 2.8),
    ("CodeQwen", 1.5),
    ("DolphinCoder", 0.6),
    ("CodeLlama", 0.5),
    ("Granite-Code", 0.5),
];

/// Problems per tier in the synthetic corpus: 3,589 in all, enough for the
/// largest published tier total. Each model's shortfall against these sizes
/// becomes `Other` records.
const TIER_SIZES: [(Tier, usize, f64); 3] = [(Tier::Easy, 620, 2.0), (Tier::Medium, 1278, 4.5), (Tier::Hard, 1691, 8.0)];

const TOLERANCE_PP: f64 = 0.05;

fn table(tier: Tier) -> &'static TierCounts {
    match tier {
        Tier::Easy => &EASY,
        Tier::Medium => &MEDIUM,
        Tier::Hard => &HARD,
    }
}

fn problem_id(tier: Tier, i: usize) -> String {
    format!("{}{i:04}", tier.as_str().to_ascii_lowercase())
}

fn corpus() -> Result<ProblemCorpus, String> {
    let mut problems = Vec::new();
    for (tier, size, difficulty) in TIER_SIZES {
        for i in 0..size {
            problems.push(Problem {
                id: problem_id(tier, i),
                title: String::new(),
                difficulty,
                statement: "synthetic".into(),
                samples: vec![SamplePair::new("", "")],
                cpu_time_limit: 1.0,
                memory_limit: 256.0,
                submission_language: "python".into(),
            });
        }
    }
    ProblemCorpus::from_problems(problems).map_err(|e| e.to_string())
}

fn entry(category: VerdictCategory, raw: &str) -> SubmissionEntry {
    SubmissionEntry {
        verdict: category,
        raw_status: raw.to_string(),
        submission_ref: "synthetic".into(),
        judged_at: "2026-03-01T12:00:00Z".into(),
    }
}

/// Returns the document and the number of `Other` records injected per tier.
fn submissions(col: usize) -> Result<(SubmissionsDocument, [u64; 3]), String> {
    let mut doc = SubmissionsDocument::new(MODELS[col]);
    let mut others = [0; 3];
    for (t, (tier, size, _)) in TIER_SIZES.iter().enumerate() {
        let counts = table(*tier);
        let mut next = 0;
        for (row, category) in VerdictCategory::TRACKED.iter().enumerate() {
            for _ in 0..counts[row][col] {
                doc.entries.insert(problem_id(*tier, next), entry(*category, category.label()));
                next += 1;
            }
        }
        let total = counts[6][col] as usize;
        check!(next == total, "{} {tier}: published categories sum to {next}, Total row says {total}", MODELS[col]);
        check!(next <= *size, "{} {tier}: more records than synthetic problems", MODELS[col]);
        for i in next..*size {
            doc.entries.insert(problem_id(*tier, i), entry(VerdictCategory::Other, "Judge Error"));
        }
        others[t] = (*size - next) as u64;
    }
    Ok((doc, others))
}

pub fn run() -> CriterionResult {
    let corpus = corpus()?;
    let tiering = DifficultyTiering::default();
    let mut docs = Vec::new();
    for col in 0..MODELS.len() {
        docs.push(submissions(col)?);
    }
    let runs: Vec<ModelRun<'_>> =
        docs.iter().map(|(d, _)| ModelRun { model: &d.model, solutions: None, submissions: Some(d) }).collect();
    let metrics = compute_metrics(&corpus, &tiering, DEFAULT_HISTOGRAM_BINS, &runs).map_err(|e| e.to_string())?;

    for (t, outcome) in metrics.outcome_tables.iter().enumerate() {
        let counts = table(outcome.tier);
        for (col, model) in MODELS.iter().enumerate() {
            let row = outcome.models.get(*model).ok_or_else(|| format!("{model} missing from {}", outcome.tier))?;
            for (r, category) in VerdictCategory::TRACKED.iter().enumerate() {
                check!(
                    row.count(*category) == counts[r][col],
                    "{model} {} {category}: {} vs published {}",
                    outcome.tier,
                    row.count(*category),
                    counts[r][col]
                );
            }
            check!(row.total == counts[6][col], "{model} {} total {} vs {}", outcome.tier, row.total, counts[6][col]);
            check!(row.excluded_other == docs[col].1[t], "{model} {}: Other exclusion mismatch", outcome.tier);
        }
    }

    let mut details = Vec::new();
    for (model, published) in RATES {
        let row = metrics.acceptance.iter().find(|r| r.model == model).ok_or_else(|| format!("{model} has no row"))?;
        check!(
            (row.raw_rate - published).abs() <= TOLERANCE_PP,
            "{model}: {}/{} = {:.4}% is more than {TOLERANCE_PP} pp from {published}",
            row.accepted,
            row.total,
            row.raw_rate
        );
        check!(row.rate == published, "{model}: rounds to {} not {published}", row.rate);
        details.push(format!("{model} {}/{} = {:.1}", row.accepted, row.total, row.rate));
    }
    let order: Vec<&str> = metrics.acceptance.iter().map(|r| r.model.as_str()).collect();
    let expected: Vec<&str> = RATES.iter().map(|(m, _)| *m).collect();
    check!(order == expected, "acceptance order {order:?}");

    // the rendered CSV carries the same figures
    let bundle = render_reports(&metrics, None, "2026-03-01T12:00:00Z");
    let csv = &bundle.acceptance_table.csv;
    check!(csv.contains("measured,Qwen2.5-Coder,204,3587,5.7,"), "acceptance CSV lacks the Qwen2.5-Coder row:\n{csv}");
    check!(!metrics.models.iter().any(|m| m.sample_judged), "synthetic refs are not {LOCAL_REF}");
    Ok(details.join(", "))
}
