//! In-process mock backends: an Ollama-compatible LLM runtime and a
//! Kattis-style judge. Both are scripted from JSON and log every request so
//! tests can check exactly-once delivery, retry counts and pacing.

pub mod http;
pub mod judge;
pub mod runtime;

pub use judge::{JudgeEvent, JudgeRule, JudgeScript, MockJudge};
pub use runtime::{LoggedGenerate, MockRuntime, RuntimeRule, RuntimeScript};
