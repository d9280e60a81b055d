//! CSV data behind the generation-time CDF and histogram figures.

use std::path::{Path, PathBuf};

use super::table::trimmed;
use super::{ModelMetrics, RunMetrics};
use crate::store::{atomic_write, file_stem, StoreError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlotFile {
    pub name: String,
    pub contents: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PlotExport {
    pub files: Vec<PathBuf>,
    pub warnings: Vec<String>,
}

fn write_csv(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv write");
    for r in rows {
        w.write_record(&r).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8")
}

pub fn cdf_csv(m: &ModelMetrics) -> String {
    write_csv(&["time_s", "fraction"], m.cdf.iter().map(|p| vec![trimmed(p.time, 6), trimmed(p.fraction, 4)]))
}

pub fn histogram_csv(m: &ModelMetrics) -> String {
    write_csv(
        &["bin_lo", "bin_hi", "count"],
        m.histogram.iter().map(|b| vec![trimmed(b.lo, 6), trimmed(b.hi, 6), b.count.to_string()]),
    )
}

/// Plot files for every model with at least one successful generation, and
/// a warning for each model without.
pub fn plot_files(metrics: &RunMetrics) -> (Vec<PlotFile>, Vec<String>) {
    let mut files = Vec::new();
    let mut warnings = Vec::new();
    for m in &metrics.models {
        if m.cdf.is_empty() {
            warnings.push(format!("model {:?}: no generation times, plot data skipped", m.model));
            continue;
        }
        let stem = file_stem(&m.model);
        files.push(PlotFile { name: format!("cdf_{stem}.csv"), contents: cdf_csv(m) });
        files.push(PlotFile { name: format!("hist_{stem}.csv"), contents: histogram_csv(m) });
    }
    (files, warnings)
}

pub fn export_plot_data(metrics: &RunMetrics, dir: &Path) -> Result<PlotExport, StoreError> {
    std::fs::create_dir_all(dir).map_err(|e| StoreError::Io { path: dir.to_path_buf(), source: e })?;
    let (files, warnings) = plot_files(metrics);
    for w in &warnings {
        log::warn!("{w}");
    }
    let mut written = Vec::with_capacity(files.len());
    for f in files {
        let path = dir.join(&f.name);
        atomic_write(&path, f.contents.as_bytes())?;
        written.push(path);
    }
    Ok(PlotExport { files: written, warnings })
}
