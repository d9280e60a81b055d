//! The JSON run configuration. Relative paths resolve against the directory
//! holding the config file.

use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};

use codegauntlet_core::generation::{PromptTemplate, RuntimeEndpoint};
use codegauntlet_core::judging::JudgeConfig;
use codegauntlet_core::reporting::{ReferenceBaselines, DEFAULT_HISTOGRAM_BINS};
use codegauntlet_core::store::{parse_json_text, read_utf8, DifficultyTiering};
use serde::Deserialize;

use crate::error::CliError;

pub const CONFIG_ENV: &str = "CODEGAUNTLET_CONFIG";

fn default_corpus() -> PathBuf {
    PathBuf::from(codegauntlet_core::store::CORPUS_FILE_NAME)
}

fn default_store() -> PathBuf {
    PathBuf::from("store")
}

fn default_reports() -> PathBuf {
    PathBuf::from("reports")
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_corpus")]
    pub corpus_path: PathBuf,
    #[serde(default = "default_store")]
    pub store_dir: PathBuf,
    #[serde(default = "default_reports")]
    pub report_dir: PathBuf,
    /// Built-in template when absent.
    #[serde(default)]
    pub prompt_template_path: Option<PathBuf>,
    pub models: Vec<RuntimeEndpoint>,
    #[serde(default)]
    pub tiering: DifficultyTiering,
    #[serde(default)]
    pub judge: JudgeConfig,
    #[serde(default = "default_bins")]
    pub histogram_bins: NonZeroUsize,
    /// Bundled reference file when absent.
    #[serde(default)]
    pub reference_baselines_path: Option<PathBuf>,
    #[serde(default = "default_true")]
    pub include_reference_baselines: bool,
}

fn default_bins() -> NonZeroUsize {
    DEFAULT_HISTOGRAM_BINS
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub corpus_path: Option<PathBuf>,
    pub store_dir: Option<PathBuf>,
    pub report_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn parse(text: &str, origin: &Path) -> Result<Self, CliError> {
        let mut cfg: RunConfig = parse_json_text(text, origin)?;
        let base = origin.parent().unwrap_or(Path::new("."));
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        resolve(&mut cfg.corpus_path);
        resolve(&mut cfg.store_dir);
        resolve(&mut cfg.report_dir);
        if let Some(p) = cfg.prompt_template_path.as_mut() {
            resolve(p);
        }
        if let Some(p) = cfg.reference_baselines_path.as_mut() {
            resolve(p);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = read_utf8(path).map_err(|e| CliError::Config(format!("cannot read config: {e}")))?;
        Self::parse(&text, path)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(p) = &o.corpus_path {
            self.corpus_path = p.clone();
        }
        if let Some(p) = &o.store_dir {
            self.store_dir = p.clone();
        }
        if let Some(p) = &o.report_dir {
            self.report_dir = p.clone();
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.models.is_empty() {
            return Err(CliError::Config("config lists no models".into()));
        }
        for (i, m) in self.models.iter().enumerate() {
            if m.model_name.trim().is_empty() {
                return Err(CliError::Config(format!("models[{i}]: empty model_name")));
            }
            if self.models[..i].iter().any(|o| o.model_name == m.model_name) {
                return Err(CliError::Config(format!("model {:?} listed twice", m.model_name)));
            }
            m.validate()?;
        }
        self.tiering.validate()?;
        self.judge.validate()?;
        Ok(())
    }

    pub fn model(&self, name: &str) -> Result<&RuntimeEndpoint, CliError> {
        self.models.iter().find(|m| m.model_name == name).ok_or_else(|| {
            let known: Vec<&str> = self.models.iter().map(|m| m.model_name.as_str()).collect();
            CliError::Config(format!("unknown model {name:?}; configured: {}", known.join(", ")))
        })
    }

    pub fn template(&self) -> Result<PromptTemplate, CliError> {
        match &self.prompt_template_path {
            None => Ok(PromptTemplate::default()),
            Some(p) => {
                let text = read_utf8(p).map_err(|e| CliError::Config(format!("prompt template: {e}")))?;
                Ok(PromptTemplate::parse(&text)?)
            }
        }
    }

    pub fn reference_baselines(&self) -> Result<Option<ReferenceBaselines>, CliError> {
        if !self.include_reference_baselines {
            return Ok(None);
        }
        Ok(Some(match &self.reference_baselines_path {
            Some(p) => ReferenceBaselines::load(p)?,
            None => ReferenceBaselines::bundled(),
        }))
    }
}
