//! Turns stored documents into metrics and renders them as text tables,
//! CSV twins, plot data and a metadata file.

pub mod baselines;
pub mod plots;
pub mod render;
mod table;

use std::collections::BTreeMap;
use std::num::NonZeroUsize;

use crate::judging::{VerdictCategory, LOCAL_REF};
use crate::metrics::{
    acceptance_table, cdf_points, histogram, iqr_outliers, outcome_table, summary_stats, AcceptanceRow, CdfPoint,
    HistogramBin, JudgedRecord, MetricsError, OutcomeTable, OutlierSplit, SummaryStats,
};
use crate::store::{DifficultyTiering, ProblemCorpus, SolutionsDocument, SubmissionsDocument};

pub use baselines::{ReferenceBaselines, BUNDLED_BASELINES};
pub use plots::{export_plot_data, plot_files, PlotExport, PlotFile};
pub use render::{render_reports, RenderedTable, ReportBundle, ReportMetadata};

pub const DEFAULT_HISTOGRAM_BINS: NonZeroUsize = match NonZeroUsize::new(20) {
    Some(n) => n,
    None => unreachable!(),
};

/// Stored documents for one model. Either may be missing.
#[derive(Debug, Clone, Copy)]
pub struct ModelRun<'a> {
    pub model: &'a str,
    pub solutions: Option<&'a SolutionsDocument>,
    pub submissions: Option<&'a SubmissionsDocument>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelMetrics {
    pub model: String,
    /// Times of successful generations, in corpus order.
    pub generation_times: Vec<f64>,
    pub failed_generations: usize,
    /// Over all successful generations; `None` when there are none.
    pub runtime: Option<SummaryStats<f64>>,
    pub outliers: Option<OutlierSplit<f64>>,
    /// Plot data, computed on the values kept by the IQR rule.
    pub cdf: Vec<CdfPoint<f64>>,
    pub histogram: Vec<HistogramBin<f64>>,
    pub judged: usize,
    /// Some verdict came from the local judge, which only sees sample pairs.
    pub sample_judged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunMetrics {
    pub corpus_size: usize,
    pub tiering: DifficultyTiering,
    pub histogram_bins: NonZeroUsize,
    /// Sorted by model name.
    pub models: Vec<ModelMetrics>,
    pub outcome_tables: Vec<OutcomeTable>,
    pub acceptance: Vec<AcceptanceRow>,
}

impl RunMetrics {
    pub fn model(&self, name: &str) -> Option<&ModelMetrics> {
        self.models.iter().find(|m| m.model == name)
    }
}

fn model_metrics(corpus: &ProblemCorpus, run: &ModelRun<'_>, bins: NonZeroUsize) -> ModelMetrics {
    let mut times = Vec::new();
    let mut failed = 0;
    if let Some(doc) = run.solutions {
        // corpus order first, then anything the corpus no longer lists
        let order = corpus.ids().filter_map(|id| doc.entries.get(id)).chain(
            doc.entries.iter().filter(|(id, _)| corpus.get(id).is_none()).map(|(_, e)| e),
        );
        for e in order {
            if e.is_failed() {
                failed += 1;
            } else {
                times.push(e.generation_time_s);
            }
        }
    }
    let runtime = summary_stats(&times).ok();
    let (outliers, cdf, hist) = if times.is_empty() {
        (None, Vec::new(), Vec::new())
    } else {
        let split = iqr_outliers(&times);
        let cdf = cdf_points(&split.kept);
        let hist = histogram(&split.kept, bins);
        (Some(split), cdf, hist)
    };
    let submissions = run.submissions.map(|d| &d.entries);
    ModelMetrics {
        model: run.model.to_string(),
        generation_times: times,
        failed_generations: failed,
        runtime,
        outliers,
        cdf,
        histogram: hist,
        judged: submissions.map_or(0, BTreeMap::len),
        sample_judged: submissions.is_some_and(|s| s.values().any(|e| e.submission_ref == LOCAL_REF)),
    }
}

/// Computes every figure the report shows. A submission for a problem the
/// corpus does not contain is an error since it has no tier.
pub fn compute_metrics(
    corpus: &ProblemCorpus,
    tiering: &DifficultyTiering,
    histogram_bins: NonZeroUsize,
    runs: &[ModelRun<'_>],
) -> Result<RunMetrics, MetricsError> {
    let mut runs: Vec<&ModelRun<'_>> = runs.iter().collect();
    runs.sort_by(|a, b| a.model.cmp(b.model));
    runs.dedup_by(|a, b| a.model == b.model);
    let models = runs.iter().map(|r| model_metrics(corpus, r, histogram_bins)).collect();
    let records = runs.iter().flat_map(|r| {
        r.submissions.into_iter().flat_map(move |doc| {
            doc.entries.iter().map(move |(id, e)| JudgedRecord {
                model: r.model,
                problem_id: id,
                category: e.verdict,
            })
        })
    });
    let outcome_tables = outcome_table(records, |id| corpus.get(id).map(|p| tiering.tier_of(p.difficulty)))?;
    let acceptance = acceptance_table(&outcome_tables)?;
    Ok(RunMetrics { corpus_size: corpus.len(), tiering: *tiering, histogram_bins, models, outcome_tables, acceptance })
}

/// Verdict counts for one model summed over tiers, `Other` included.
pub fn verdict_totals(metrics: &RunMetrics, model: &str) -> BTreeMap<VerdictCategory, u64> {
    let mut out = BTreeMap::new();
    for t in &metrics.outcome_tables {
        if let Some(row) = t.models.get(model) {
            for (&c, &n) in &row.counts {
                *out.entry(c).or_insert(0) += n;
            }
            *out.entry(VerdictCategory::Other).or_insert(0) += row.excluded_other;
        }
    }
    out
}
