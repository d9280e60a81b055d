//! Externally published acceptance rates shown beside measured results.

use std::path::Path;

use serde::Deserialize;

use crate::metrics::{sort_acceptance, AcceptanceRow};
use crate::store::{parse_json_text, read_utf8, StoreError};

/// The checked-in reference file shipped with the crate.
pub const BUNDLED_BASELINES: &str = include_str!("../../data/reference_baselines.json");

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceBaselines {
    pub source: String,
    /// `rate` is the published figure as quoted; `raw_rate` is recomputed
    /// from the counts.
    pub rows: Vec<AcceptanceRow>,
}

#[derive(Deserialize)]
struct FileRow {
    model: String,
    accepted: u64,
    total: u64,
    rate: f64,
}

#[derive(Deserialize)]
struct File {
    source: String,
    rows: Vec<FileRow>,
}

impl ReferenceBaselines {
    pub fn parse(text: &str, origin: &Path) -> Result<Self, StoreError> {
        let file: File = parse_json_text(text, origin)?;
        let mut rows = Vec::with_capacity(file.rows.len());
        for r in file.rows {
            if r.total == 0 || r.accepted > r.total {
                return Err(StoreError::Parse {
                    path: origin.to_path_buf(),
                    message: format!("baseline {:?}: accepted {} of total {}", r.model, r.accepted, r.total),
                });
            }
            let raw_rate = 100.0 * r.accepted as f64 / r.total as f64;
            rows.push(AcceptanceRow { model: r.model, accepted: r.accepted, total: r.total, rate: r.rate, raw_rate });
        }
        sort_acceptance(&mut rows);
        Ok(Self { source: file.source, rows })
    }

    pub fn load(path: &Path) -> Result<Self, StoreError> {
        Self::parse(&read_utf8(path)?, path)
    }

    pub fn bundled() -> Self {
        Self::parse(BUNDLED_BASELINES, Path::new("reference_baselines.json")).expect("bundled baselines are valid")
    }
}
