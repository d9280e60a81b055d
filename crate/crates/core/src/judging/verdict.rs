use std::fmt;

use serde::{Deserialize, Serialize};

/// The six tracked judge outcomes plus `Other` for everything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VerdictCategory {
    #[serde(rename = "Accepted")]
    Accepted,
    #[serde(rename = "Compile Error")]
    CompileError,
    #[serde(rename = "Wrong Answer")]
    WrongAnswer,
    #[serde(rename = "Run Time Error")]
    RunTimeError,
    #[serde(rename = "Time Limit Exceeded")]
    TimeLimitExceeded,
    #[serde(rename = "Memory Limit Exceeded")]
    MemoryLimitExceeded,
    #[serde(rename = "Other")]
    Other,
}

impl VerdictCategory {
    /// Tracked categories in report row order.
    pub const TRACKED: [VerdictCategory; 6] = [
        VerdictCategory::Accepted,
        VerdictCategory::CompileError,
        VerdictCategory::WrongAnswer,
        VerdictCategory::RunTimeError,
        VerdictCategory::TimeLimitExceeded,
        VerdictCategory::MemoryLimitExceeded,
    ];

    pub fn label(self) -> &'static str {
        match self {
            VerdictCategory::Accepted => "Accepted",
            VerdictCategory::CompileError => "Compile Error",
            VerdictCategory::WrongAnswer => "Wrong Answer",
            VerdictCategory::RunTimeError => "Run Time Error",
            VerdictCategory::TimeLimitExceeded => "Time Limit Exceeded",
            VerdictCategory::MemoryLimitExceeded => "Memory Limit Exceeded",
            VerdictCategory::Other => "Other",
        }
    }

    pub fn is_tracked(self) -> bool {
        self != VerdictCategory::Other
    }
}

impl fmt::Display for VerdictCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub category: VerdictCategory,
    pub raw_status: String,
}

impl Verdict {
    pub fn new(category: VerdictCategory) -> Self {
        Self { category, raw_status: category.label().to_string() }
    }

    pub fn other(raw_status: impl Into<String>) -> Self {
        Self { category: VerdictCategory::Other, raw_status: raw_status.into() }
    }
}

fn squash(s: &str) -> String {
    s.chars().filter(|c| c.is_ascii_alphanumeric()).flat_map(|c| c.to_lowercase()).collect()
}

/// Case-insensitive mapping of judge status strings. Spacing and hyphenation
/// are ignored, so "Run-Time Error" and "runtime error" both map to
/// `RunTimeError`. Unknown strings map to `Other` with the text preserved.
pub fn classify_verdict(raw_status: &str) -> Verdict {
    let category = match squash(raw_status).as_str() {
        "accepted" => VerdictCategory::Accepted,
        "compileerror" | "compilationerror" => VerdictCategory::CompileError,
        "wronganswer" => VerdictCategory::WrongAnswer,
        "runtimeerror" => VerdictCategory::RunTimeError,
        "timelimitexceeded" => VerdictCategory::TimeLimitExceeded,
        "memorylimitexceeded" => VerdictCategory::MemoryLimitExceeded,
        _ => VerdictCategory::Other,
    };
    Verdict { category, raw_status: raw_status.to_string() }
}
