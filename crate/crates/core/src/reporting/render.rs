use std::path::{Path, PathBuf};

use serde::Serialize;

use super::baselines::ReferenceBaselines;
use super::plots::{plot_files, PlotFile};
use super::table::{fixed, section, Align, Table, MISSING};
use super::{ModelMetrics, RunMetrics};
use crate::judging::VerdictCategory;
use crate::metrics::QUANTILE_METHOD;
use crate::store::{atomic_write, canonical_json, DifficultyTiering, StoreError, Tier};

pub const METADATA_FILE: &str = "metadata.json";

const SAMPLE_JUDGED: &str = "sample-judged";
const SAMPLE_JUDGED_NOTE: &str =
    "sample-judged: verdicts from the local judge, which runs only the public sample pairs, not hidden tests.";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedTable {
    /// File stem, e.g. `acceptance` for `acceptance.txt` and `acceptance.csv`.
    pub name: String,
    pub text: String,
    pub csv: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportMetadata {
    pub generated_at: String,
    pub corpus_size: usize,
    pub tiering: DifficultyTiering,
    pub tiering_note: String,
    pub quantile_method: String,
    pub std_divisor: String,
    pub outlier_rule: String,
    pub plot_data_filter: String,
    pub histogram_bins: usize,
    pub models: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_source: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportBundle {
    pub runtime_table: RenderedTable,
    pub outlier_table: RenderedTable,
    /// Easy, Medium, Hard.
    pub outcome_tables: Vec<RenderedTable>,
    pub acceptance_table: RenderedTable,
    pub plot_data: Vec<PlotFile>,
    pub metadata: ReportMetadata,
    pub warnings: Vec<String>,
}

impl ReportBundle {
    /// Every file in the bundle as (relative name, bytes), in a fixed order.
    pub fn files(&self) -> Vec<(String, Vec<u8>)> {
        let mut out = Vec::new();
        let tables =
            [&self.runtime_table, &self.outlier_table].into_iter().chain(&self.outcome_tables).chain([&self.acceptance_table]);
        for t in tables {
            out.push((format!("{}.txt", t.name), t.text.clone().into_bytes()));
            out.push((format!("{}.csv", t.name), t.csv.clone().into_bytes()));
        }
        for p in &self.plot_data {
            out.push((p.name.clone(), p.contents.clone().into_bytes()));
        }
        out.push((METADATA_FILE.to_string(), canonical_json(&self.metadata)));
        out
    }

    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>, StoreError> {
        std::fs::create_dir_all(dir).map_err(|e| StoreError::Io { path: dir.to_path_buf(), source: e })?;
        let mut written = Vec::new();
        for (name, bytes) in self.files() {
            let path = dir.join(name);
            atomic_write(&path, &bytes)?;
            written.push(path);
        }
        Ok(written)
    }
}

fn judging_label(m: &ModelMetrics) -> String {
    if m.judged == 0 {
        MISSING.to_string()
    } else if m.sample_judged {
        SAMPLE_JUDGED.to_string()
    } else {
        "remote".to_string()
    }
}

fn secs(x: f64) -> String {
    fixed(x, 2)
}

fn runtime_table(metrics: &RunMetrics) -> RenderedTable {
    let mut t = Table::new(vec![
        ("Model", "model", Align::Left),
        ("N", "count", Align::Right),
        ("Mean (s)", "mean_s", Align::Right),
        ("Median (s)", "median_s", Align::Right),
        ("Std (s)", "std_s", Align::Right),
        ("Min (s)", "min_s", Align::Right),
        ("Max (s)", "max_s", Align::Right),
        ("Failed", "failed", Align::Right),
    ]);
    let mut csv = Table::new(vec![
        ("", "model", Align::Left),
        ("", "count", Align::Right),
        ("", "mean_s", Align::Right),
        ("", "median_s", Align::Right),
        ("", "std_s", Align::Right),
        ("", "std_defined", Align::Right),
        ("", "min_s", Align::Right),
        ("", "max_s", Align::Right),
        ("", "failed", Align::Right),
    ]);
    let mut single = false;
    for m in &metrics.models {
        let failed = m.failed_generations.to_string();
        match &m.runtime {
            Some(s) => {
                single |= !s.std_defined;
                let std = secs(s.std);
                t.push(vec![
                    m.model.clone(),
                    s.count.to_string(),
                    secs(s.mean),
                    secs(s.median),
                    if s.std_defined { std.clone() } else { format!("{std}*") },
                    secs(s.min),
                    secs(s.max),
                    failed.clone(),
                ]);
                csv.push(vec![
                    m.model.clone(),
                    s.count.to_string(),
                    secs(s.mean),
                    secs(s.median),
                    std,
                    s.std_defined.to_string(),
                    secs(s.min),
                    secs(s.max),
                    failed,
                ]);
            }
            None => {
                let mut row = vec![m.model.clone(), "0".to_string()];
                row.extend(std::iter::repeat_n(MISSING.to_string(), 5));
                row.push(failed.clone());
                t.push(row);
                let mut row = vec![m.model.clone(), "0".to_string()];
                row.extend(std::iter::repeat_n(MISSING.to_string(), 6));
                row.push(failed);
                csv.push(row);
            }
        }
    }
    let mut notes = vec![
        "Statistics cover every successful generation; failed generations are counted separately.".to_string(),
        "Std is the sample standard deviation (divisor n-1).".to_string(),
    ];
    if single {
        notes.push("* a single sample has no defined standard deviation; shown as 0.".to_string());
    }
    RenderedTable {
        name: "runtime".into(),
        text: section("Response generation time (seconds)", &t.text(), &notes),
        csv: csv.csv(),
    }
}

fn outlier_table(metrics: &RunMetrics) -> RenderedTable {
    let mut t = Table::new(vec![
        ("Model", "model", Align::Left),
        ("N", "count", Align::Right),
        ("Outliers", "outliers", Align::Right),
        ("Q1 (s)", "q1_s", Align::Right),
        ("Q3 (s)", "q3_s", Align::Right),
        ("IQR (s)", "iqr_s", Align::Right),
        ("Lower (s)", "lower_s", Align::Right),
        ("Upper (s)", "upper_s", Align::Right),
    ]);
    for m in &metrics.models {
        match &m.outliers {
            Some(split) => {
                let f = &split.fences;
                t.push(vec![
                    m.model.clone(),
                    m.generation_times.len().to_string(),
                    split.outliers.len().to_string(),
                    secs(f.q1),
                    secs(f.q3),
                    secs(f.iqr),
                    secs(f.lower),
                    secs(f.upper),
                ]);
            }
            None => {
                let mut row = vec![m.model.clone(), "0".to_string()];
                row.extend(std::iter::repeat_n(MISSING.to_string(), 6));
                t.push(row);
            }
        }
    }
    let notes = vec![
        "Outliers lie strictly outside [Q1 - 1.5*IQR, Q3 + 1.5*IQR].".to_string(),
        format!("Quantiles: {QUANTILE_METHOD}. Fewer than 4 values: fences are min and max."),
        "Outliers are removed from plot data only, never from the runtime statistics.".to_string(),
    ];
    RenderedTable {
        name: "outliers".into(),
        text: section("Generation time outliers (1.5*IQR rule)", &t.text(), &notes),
        csv: t.csv(),
    }
}

fn tier_range(tier: Tier, t: &DifficultyTiering) -> String {
    match tier {
        Tier::Easy => format!("difficulty < {}", t.easy_upper),
        Tier::Medium => format!("{} <= difficulty < {}", t.easy_upper, t.medium_upper),
        Tier::Hard => format!("difficulty >= {}", t.medium_upper),
    }
}

fn verdict_csv_name(c: VerdictCategory) -> &'static str {
    match c {
        VerdictCategory::Accepted => "accepted",
        VerdictCategory::CompileError => "compile_error",
        VerdictCategory::WrongAnswer => "wrong_answer",
        VerdictCategory::RunTimeError => "run_time_error",
        VerdictCategory::TimeLimitExceeded => "time_limit_exceeded",
        VerdictCategory::MemoryLimitExceeded => "memory_limit_exceeded",
        VerdictCategory::Other => "other",
    }
}

fn outcome_tables(metrics: &RunMetrics) -> Vec<RenderedTable> {
    let any_sample = metrics.models.iter().any(|m| m.sample_judged);
    metrics
        .outcome_tables
        .iter()
        .map(|table| {
            let mut cols = vec![("Model", "model", Align::Left)];
            cols.extend(VerdictCategory::TRACKED.iter().map(|&c| (c.label(), verdict_csv_name(c), Align::Right)));
            cols.extend([
                ("Total", "total", Align::Right),
                ("Other excluded", "other_excluded", Align::Right),
                ("Judging", "judging", Align::Left),
            ]);
            let mut t = Table::new(cols);
            for m in &metrics.models {
                let mut row = vec![m.model.clone()];
                match table.models.get(&m.model) {
                    Some(o) => {
                        row.extend(VerdictCategory::TRACKED.iter().map(|&c| o.count(c).to_string()));
                        row.push(o.total.to_string());
                        row.push(o.excluded_other.to_string());
                    }
                    None => row.extend(std::iter::repeat_n(MISSING.to_string(), VerdictCategory::TRACKED.len() + 2)),
                }
                row.push(judging_label(m));
                t.push(row);
            }
            let mut notes = vec![
                format!("Tier {}: {}.", table.tier, tier_range(table.tier, &metrics.tiering)),
                format!(
                    "Tiering: easy_upper = {}, medium_upper = {}. These cut points are configuration, not an authoritative difficulty scale.",
                    metrics.tiering.easy_upper, metrics.tiering.medium_upper
                ),
                format!(
                    "Verdicts outside the six tracked categories are excluded from totals: {} in this tier.",
                    table.excluded_other()
                ),
            ];
            if any_sample {
                notes.push(SAMPLE_JUDGED_NOTE.to_string());
            }
            let name = table.tier.as_str().to_ascii_lowercase();
            RenderedTable {
                name: format!("outcome_{name}"),
                text: section(&format!("Outcome counts per model ({})", table.tier), &t.text(), &notes),
                csv: t.csv(),
            }
        })
        .collect()
}

fn acceptance_table(metrics: &RunMetrics, reference: Option<&ReferenceBaselines>) -> RenderedTable {
    let cols = || {
        vec![
            ("Model", "model", Align::Left),
            ("Accepted", "accepted", Align::Right),
            ("Total", "total", Align::Right),
            ("pass@1 (%)", "rate", Align::Right),
            ("Judging", "judging", Align::Left),
        ]
    };
    let mut measured = Table::new(cols());
    for row in &metrics.acceptance {
        let label = metrics.model(&row.model).map_or_else(|| MISSING.to_string(), judging_label);
        measured.push(vec![row.model.clone(), row.accepted.to_string(), row.total.to_string(), fixed(row.rate, 1), label]);
    }
    for m in &metrics.models {
        if !metrics.acceptance.iter().any(|r| r.model == m.model) {
            measured.push(vec![m.model.clone(), MISSING.into(), MISSING.into(), MISSING.into(), judging_label(m)]);
        }
    }
    let mut notes = vec![
        "Rates are rounded half-up to one decimal. Rows are sorted by rate, highest first, then by name.".to_string(),
        "Totals exclude verdicts outside the six tracked categories.".to_string(),
    ];
    if metrics.models.iter().any(|m| m.sample_judged) {
        notes.push(SAMPLE_JUDGED_NOTE.to_string());
    }
    let mut text = section("Acceptance rates (pass@1)", &measured.text(), &notes);
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<&str> = ["section"].into_iter().chain(cols().iter().map(|c| c.1)).collect();
    w.write_record(&header).expect("in-memory csv write");
    measured.write_rows(&mut w, Some("measured"));
    if let Some(refs) = reference.filter(|r| !r.rows.is_empty()) {
        let mut t = Table::new(cols());
        for row in &refs.rows {
            t.push(vec![row.model.clone(), row.accepted.to_string(), row.total.to_string(), fixed(row.rate, 1), "external".into()]);
        }
        text.push('\n');
        text.push_str(&section(
            "Reference (external, not measured by this run)",
            &t.text(),
            &[format!("Source: {}. Rates are quoted as published; each row has its own n.", refs.source)],
        ));
        t.write_rows(&mut w, Some("reference"));
    }
    let csv = String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8");
    RenderedTable { name: "acceptance".into(), text, csv }
}

/// Renders every table and plot file. `generated_at` only reaches the
/// metadata file, so all other files depend on the metrics alone.
pub fn render_reports(
    metrics: &RunMetrics,
    reference_baselines: Option<&ReferenceBaselines>,
    generated_at: &str,
) -> ReportBundle {
    let (plot_data, warnings) = plot_files(metrics);
    let metadata = ReportMetadata {
        generated_at: generated_at.to_string(),
        corpus_size: metrics.corpus_size,
        tiering: metrics.tiering,
        tiering_note: "configured cut points; the defaults are not an authoritative difficulty scale".into(),
        quantile_method: QUANTILE_METHOD.into(),
        std_divisor: "n-1".into(),
        outlier_rule: "strictly outside [Q1 - 1.5*IQR, Q3 + 1.5*IQR]".into(),
        plot_data_filter: "IQR outliers removed".into(),
        histogram_bins: metrics.histogram_bins.get(),
        models: metrics.models.iter().map(|m| m.model.clone()).collect(),
        reference_source: reference_baselines.map(|r| r.source.clone()),
    };
    ReportBundle {
        runtime_table: runtime_table(metrics),
        outlier_table: outlier_table(metrics),
        outcome_tables: outcome_tables(metrics),
        acceptance_table: acceptance_table(metrics, reference_baselines),
        plot_data,
        metadata,
        warnings,
    }
}
