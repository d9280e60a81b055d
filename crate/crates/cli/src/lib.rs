//! Command-line driver: `ingest`, `generate`, `submit`, `report`, `status`,
//! plus the bundled `mock-runtime` and `mock-judge` servers.

pub mod commands;
pub mod config;
pub mod error;
pub mod ingest;
pub mod lock;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use codegauntlet_core::judging::Backend;
use codegauntlet_core::mock::{JudgeScript, MockJudge, MockRuntime, RuntimeScript};
use codegauntlet_core::store::{DifficultyTiering, CORPUS_FILE_NAME};

pub use commands::{cmd_generate, cmd_report, cmd_status, cmd_submit, Context, ModelSelection};
pub use config::{Overrides, RunConfig, CONFIG_ENV};
pub use error::{CliError, ExitStatus};

#[derive(Debug, Parser)]
#[command(name = "codegauntlet", version, about = "Benchmark locally hosted LLMs on competitive-programming problems")]
pub struct Cli {
    /// Run configuration (JSON).
    #[arg(long, global = true, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
    /// Overrides `corpus_path` from the config.
    #[arg(long, global = true)]
    pub corpus: Option<PathBuf>,
    /// Overrides `store_dir` from the config.
    #[arg(long, global = true)]
    pub store_dir: Option<PathBuf>,
    /// Overrides `report_dir` from the config.
    #[arg(long, global = true)]
    pub report_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ModelArgs {
    /// Model name as listed in the config.
    #[arg(long)]
    pub model: Option<String>,
    /// Every configured model, one after another.
    #[arg(long)]
    pub all_models: bool,
}

impl ModelArgs {
    fn selection(&self) -> ModelSelection {
        match &self.model {
            Some(m) => ModelSelection::One(m.clone()),
            None => ModelSelection::All,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BackendArg {
    Local,
    Remote,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Local => Backend::Local,
            BackendArg::Remote => Backend::Remote,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the consolidated corpus from a corpus file or a problem directory tree.
    Ingest {
        input: PathBuf,
        /// Output corpus file; defaults to the configured corpus_path.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Generate one solution per problem for a model.
    Generate {
        #[command(flatten)]
        models: ModelArgs,
    },
    /// Judge a model's generated solutions.
    Submit {
        #[command(flatten)]
        models: ModelArgs,
        /// Overrides `judge.backend` from the config.
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
    },
    /// Render tables and plot data into <report_dir>/<run_id>/.
    Report {
        /// Defaults to the current UTC time.
        #[arg(long)]
        run_id: Option<String>,
    },
    /// Show checkpoints and record counts.
    Status,
    /// Serve a scripted Ollama-compatible runtime.
    MockRuntime {
        #[arg(long)]
        script: Option<PathBuf>,
        #[arg(long, default_value = "127.0.0.1:11434")]
        bind: String,
    },
    /// Serve a scripted remote judge.
    MockJudge {
        #[arg(long)]
        script: Option<PathBuf>,
        #[arg(long, default_value = "127.0.0.1:8085")]
        bind: String,
    },
}

impl Cli {
    fn overrides(&self) -> Overrides {
        Overrides { corpus_path: self.corpus.clone(), store_dir: self.store_dir.clone(), report_dir: self.report_dir.clone() }
    }

    fn load_config(&self) -> Result<RunConfig, CliError> {
        let path = self
            .config
            .as_ref()
            .ok_or_else(|| CliError::Config(format!("no config given; pass --config or set {CONFIG_ENV}")))?;
        let mut cfg = RunConfig::load(path)?;
        cfg.apply(&self.overrides());
        Ok(cfg)
    }
}

fn config_io(e: std::io::Error) -> CliError {
    CliError::Config(e.to_string())
}

/// Runs one command, writing its human-readable output to `out`.
pub fn run(cli: &Cli, ctx: &Context, out: &mut dyn Write) -> Result<ExitStatus, CliError> {
    match &cli.command {
        Command::Ingest { input, output } => {
            let cfg = cli.config.as_ref().map(|_| cli.load_config()).transpose()?;
            let output = output
                .clone()
                .or_else(|| cli.corpus.clone())
                .or_else(|| cfg.as_ref().map(|c| c.corpus_path.clone()))
                .unwrap_or_else(|| PathBuf::from(CORPUS_FILE_NAME));
            let tiering = cfg.as_ref().map(|c| c.tiering).unwrap_or_default();
            let summary = ingest::ingest(input, &output, &tiering)?;
            let _ = writeln!(out, "ingested {} into {}", summary.describe(), output.display());
            if cfg.is_none() {
                let t = DifficultyTiering::default();
                let _ = writeln!(out, "tiers use the default cut points {} and {}", t.easy_upper, t.medium_upper);
            }
        }
        Command::Generate { models } => {
            cmd_generate(&cli.load_config()?, &models.selection(), ctx, out)?;
        }
        Command::Submit { models, backend } => {
            cmd_submit(&cli.load_config()?, &models.selection(), backend.map(Backend::from), ctx, out)?;
        }
        Command::Report { run_id } => {
            cmd_report(&cli.load_config()?, run_id.as_deref(), ctx, out)?;
        }
        Command::Status => {
            if !cmd_status(&cli.load_config()?, out)? {
                return Ok(ExitStatus::Config);
            }
        }
        Command::MockRuntime { script, bind } => {
            let script = script.as_deref().map(RuntimeScript::load).transpose().map_err(config_io)?.unwrap_or_default();
            let server = MockRuntime::bind(bind, script).map_err(config_io)?;
            let _ = writeln!(out, "mock runtime listening on {}", server.url());
            let _ = out.flush();
            server.wait();
        }
        Command::MockJudge { script, bind } => {
            let script = script.as_deref().map(JudgeScript::load).transpose().map_err(config_io)?.unwrap_or_default();
            let server = MockJudge::bind(bind, script).map_err(config_io)?;
            let _ = writeln!(out, "mock judge listening on {}", server.url());
            let _ = out.flush();
            server.wait();
        }
    }
    Ok(ExitStatus::Success)
}
