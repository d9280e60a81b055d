//! Crash-safe file replacement: temp sibling, flush, fsync, rename, directory fsync.

use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use super::StoreError;

/// Suffix carried by every in-flight temporary file. Anything ending in it
/// is crash residue and must be ignored by readers.
pub const TEMP_SUFFIX: &str = ".cg-tmp";

/// Named points at which a test harness may simulate a crash.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailPoint {
    /// Temp file holds the payload but has not been synced.
    TempWritten,
    /// Temp file synced, destination not yet replaced.
    TempSynced,
    /// Rename done, parent directory not yet synced.
    Renamed,
    /// A pass persisted a problem's record but has not advanced its checkpoint.
    RecordPersisted,
    /// A pass advanced its checkpoint for the current problem.
    CheckpointAdvanced,
}

impl FailPoint {
    pub const ATOMIC: [FailPoint; 3] = [FailPoint::TempWritten, FailPoint::TempSynced, FailPoint::Renamed];
}

pub trait FaultInjector: Send + Sync {
    /// Returns true when execution should fail at this point.
    fn should_fail(&self, point: FailPoint) -> bool;
}

#[derive(Debug, Default)]
pub struct NoFaults;

impl FaultInjector for NoFaults {
    fn should_fail(&self, _point: FailPoint) -> bool {
        false
    }
}

/// Fails the `n`th time (0-based) any failpoint is reached, and records every
/// hit. Running once with `n = usize::MAX` enumerates the failpoints of a run.
#[derive(Debug)]
pub struct FailAtHit {
    target: usize,
    hits: AtomicUsize,
    log: Mutex<Vec<FailPoint>>,
}

impl FailAtHit {
    pub fn new(target: usize) -> Self {
        Self { target, hits: AtomicUsize::new(0), log: Mutex::new(Vec::new()) }
    }

    pub fn never() -> Self {
        Self::new(usize::MAX)
    }

    pub fn hits(&self) -> Vec<FailPoint> {
        self.log.lock().unwrap().clone()
    }
}

impl FaultInjector for FailAtHit {
    fn should_fail(&self, point: FailPoint) -> bool {
        self.log.lock().unwrap().push(point);
        self.hits.fetch_add(1, Ordering::SeqCst) == self.target
    }
}

pub fn is_temp_residue(path: &Path) -> bool {
    path.file_name()
        .and_then(|n| n.to_str())
        .is_some_and(|n| n.ends_with(TEMP_SUFFIX))
}

fn temp_sibling(dest: &Path) -> Result<PathBuf, StoreError> {
    static COUNTER: AtomicU64 = AtomicU64::new(0);
    let name = dest
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| StoreError::io(dest, std::io::Error::other("destination has no file name")))?;
    let uniq = format!("{}-{}", std::process::id(), COUNTER.fetch_add(1, Ordering::Relaxed));
    Ok(dest.with_file_name(format!(".{name}.{uniq}{TEMP_SUFFIX}")))
}

pub fn atomic_write(path: &Path, payload: &[u8]) -> Result<(), StoreError> {
    atomic_write_with(path, payload, &NoFaults)
}

pub fn atomic_write_with(
    path: &Path,
    payload: &[u8],
    faults: &dyn FaultInjector,
) -> Result<(), StoreError> {
    let tmp = temp_sibling(path)?;
    let check = |point| {
        if faults.should_fail(point) {
            Err(StoreError::Injected(point))
        } else {
            Ok(())
        }
    };

    let staged = (|| {
        let mut file = File::create(&tmp).map_err(|e| StoreError::io(&tmp, e))?;
        file.write_all(payload).map_err(|e| StoreError::io(&tmp, e))?;
        file.flush().map_err(|e| StoreError::io(&tmp, e))?;
        Ok::<_, StoreError>(file)
    })();
    let file = match staged {
        Ok(f) => f,
        Err(e) => {
            let _ = fs::remove_file(&tmp);
            return Err(e);
        }
    };
    check(FailPoint::TempWritten)?;

    if let Err(e) = file.sync_all() {
        let _ = fs::remove_file(&tmp);
        return Err(StoreError::io(&tmp, e));
    }
    drop(file);
    check(FailPoint::TempSynced)?;

    if let Err(e) = fs::rename(&tmp, path) {
        let _ = fs::remove_file(&tmp);
        return Err(StoreError::io(path, e));
    }
    check(FailPoint::Renamed)?;

    sync_parent(path)
}

#[cfg(unix)]
fn sync_parent(path: &Path) -> Result<(), StoreError> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    File::open(parent)
        .and_then(|d| d.sync_all())
        .map_err(|e| StoreError::io(parent, e))
}

#[cfg(not(unix))]
fn sync_parent(_path: &Path) -> Result<(), StoreError> {
    Ok(())
}
