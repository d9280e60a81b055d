//! Resumable benchmarking pipeline for LLM-generated competitive-programming
//! solutions.
//!
//! The crate is split along the pipeline's stages:
//!
//! * [`store`] owns every byte on disk: the consolidated problem corpus, the
//!   per-model solution and submission documents, checkpoints, and the
//!   atomic write protocol they all go through.
//! * [`generation`] drives a locally hosted LLM runtime over HTTP.
//! * [`judging`] turns generated code into verdicts, either through a remote
//!   judge API or a local resource-limited sandbox.
//! * [`metrics`] holds the statistics: pass@k, summary statistics, IQR
//!   outlier fences, CDF and histogram data, outcome and acceptance tables.
//!   The numeric code is generic over the scalar type.
//! * [`reporting`] renders metrics into text tables and CSV files.
//! * [`mock`] provides in-process HTTP stand-ins for the LLM runtime and the
//!   remote judge, used by tests and by the `mock-*` CLI subcommands.

pub mod clock;
pub mod generation;
pub mod judging;
pub mod metrics;
pub mod mock;
pub mod num;
pub mod pass;
pub mod reporting;
pub mod store;

pub use clock::{Clock, ScriptedClock, SystemClock};
pub use num::{Probability, Scalar};

/// Exact rational used for the pass@k oracle route and exact estimator calls.
pub type Rational = num_rational::Ratio<i64>;

pub type SummaryStatsF64 = metrics::SummaryStats<f64>;
pub type SummaryStatsF32 = metrics::SummaryStats<f32>;
pub type OutlierFencesF64 = metrics::OutlierFences<f64>;
pub type OutlierFencesF32 = metrics::OutlierFences<f32>;
pub type OutlierSplitF64 = metrics::OutlierSplit<f64>;
pub type CdfPointF64 = metrics::CdfPoint<f64>;
pub type HistogramBinF64 = metrics::HistogramBin<f64>;
