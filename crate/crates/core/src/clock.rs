//! Time sources for record timestamps and generation timings.

use std::collections::BTreeMap;
use std::time::Duration;

use chrono::{DateTime, SecondsFormat, Utc};

pub trait Clock: Send + Sync {
    fn now_utc(&self) -> DateTime<Utc>;

    /// Maps a measured generation interval to the value stored for `problem_id`.
    fn recorded_duration(&self, _problem_id: &str, measured: Duration) -> Duration {
        measured
    }

    fn timestamp(&self) -> String {
        self.now_utc().to_rfc3339_opts(SecondsFormat::Secs, true)
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct SystemClock;

impl Clock for SystemClock {
    fn now_utc(&self) -> DateTime<Utc> {
        Utc::now()
    }
}

/// Deterministic clock: a frozen wall time and a per-problem table of
/// generation durations. Problems missing from the table keep their measured
/// duration. Used to make reruns byte-reproducible.
#[derive(Debug, Clone)]
pub struct ScriptedClock {
    now: DateTime<Utc>,
    durations: BTreeMap<String, Duration>,
}

impl ScriptedClock {
    pub fn frozen(now: DateTime<Utc>) -> Self {
        Self { now, durations: BTreeMap::new() }
    }

    pub fn with_duration(mut self, problem_id: impl Into<String>, secs: f64) -> Self {
        self.durations.insert(problem_id.into(), Duration::from_secs_f64(secs));
        self
    }
}

impl Clock for ScriptedClock {
    fn now_utc(&self) -> DateTime<Utc> {
        self.now
    }

    fn recorded_duration(&self, problem_id: &str, measured: Duration) -> Duration {
        self.durations.get(problem_id).copied().unwrap_or(measured)
    }
}
