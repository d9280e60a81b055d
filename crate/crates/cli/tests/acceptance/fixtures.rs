//! Shared fixture access for the acceptance criteria.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use chrono::{DateTime, TimeZone, Utc};
use codegauntlet_cli::ingest::read_problem_tree;
use codegauntlet_core::mock::RuntimeScript;
use codegauntlet_core::store::ProblemCorpus;
use codegauntlet_core::ScriptedClock;

pub fn e2e_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/e2e")
}

pub fn problem_tree() -> PathBuf {
    e2e_dir().join("problems")
}

pub fn corpus() -> Result<ProblemCorpus, String> {
    read_problem_tree(&problem_tree()).map_err(|e| e.to_string())
}

pub fn runtime_script(name: &str) -> Result<RuntimeScript, String> {
    let path = e2e_dir().join(name);
    RuntimeScript::load(&path).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn frozen_now() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2026, 3, 1, 12, 0, 0).single().expect("valid date")
}

pub fn scripted_clock(durations: &[(&str, f64)]) -> ScriptedClock {
    durations.iter().fold(ScriptedClock::frozen(frozen_now()), |c, (id, s)| c.with_duration(*id, *s))
}

/// A scratch directory on tmpfs when one is available. Crash scenarios use
/// failpoints rather than power loss, so fsync latency only slows them down.
pub fn scratch_dir() -> Result<tempfile::TempDir, String> {
    let shm = Path::new("/dev/shm");
    let dir = if shm.is_dir() { tempfile::tempdir_in(shm).or_else(|_| tempfile::tempdir()) } else { tempfile::tempdir() };
    dir.map_err(|e| e.to_string())
}

/// Every regular file directly under `dir`, by name.
pub fn snapshot(dir: &Path) -> Result<BTreeMap<String, Vec<u8>>, String> {
    let mut files = BTreeMap::new();
    for entry in std::fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.is_file() {
            let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default().to_string();
            files.insert(name, std::fs::read(&path).map_err(|e| e.to_string())?);
        }
    }
    Ok(files)
}

