//! Resource-limited child process execution.
//!
//! On Unix the child runs in its own process group with `RLIMIT_CPU` and
//! (optionally) `RLIMIT_AS` applied before exec. A polling loop on `wait4`
//! doubles as the wall-clock watchdog and is the only place the process is
//! killed. This isolates resource usage only; it is not a security boundary.

use std::io::{Read, Write};
use std::process::{Command, Stdio};
use std::thread;
use std::time::Duration;

use serde::Serialize;

use super::JudgeError;

/// Captured output beyond this many bytes per stream is discarded.
pub const OUTPUT_CAP: usize = 16 << 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExecLimits {
    /// CPU seconds.
    pub cpu_time: f64,
    /// Wall-clock backstop in seconds.
    pub wall_time: f64,
    pub memory_mib: Option<f64>,
}

impl ExecLimits {
    /// CPU limit with the wall-clock guard at twice the CPU limit.
    pub fn for_problem(cpu_time: f64, memory_mib: Option<f64>) -> Self {
        Self { cpu_time, wall_time: 2.0 * cpu_time, memory_mib }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExitState {
    Code(i32),
    Signal(i32),
}

impl ExitState {
    pub fn success(self) -> bool {
        self == ExitState::Code(0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExecutionOutcome {
    pub exit_status: ExitState,
    pub stdout: String,
    pub stderr: String,
    /// Wall-clock seconds.
    pub elapsed: f64,
    /// User plus system CPU seconds, when measurable.
    pub cpu_time: Option<f64>,
    /// `None` means unmeasured on this platform.
    pub peak_memory: Option<f64>,
    /// Killed by the wall-clock watchdog.
    pub wall_timeout: bool,
}

impl ExecutionOutcome {
    pub fn killed_by_cpu_limit(&self) -> bool {
        #[cfg(unix)]
        {
            self.exit_status == ExitState::Signal(libc::SIGXCPU)
        }
        #[cfg(not(unix))]
        {
            false
        }
    }
}

fn spawn_reader<R: Read + Send + 'static>(mut r: R) -> thread::JoinHandle<Vec<u8>> {
    thread::spawn(move || {
        let mut kept = Vec::new();
        let mut buf = [0u8; 8192];
        loop {
            match r.read(&mut buf) {
                Ok(0) | Err(_) => break,
                Ok(n) => {
                    let room = OUTPUT_CAP.saturating_sub(kept.len());
                    kept.extend_from_slice(&buf[..n.min(room)]);
                }
            }
        }
        kept
    })
}

fn build_command(argv: &[String]) -> Result<Command, JudgeError> {
    let (program, args) = argv
        .split_first()
        .ok_or_else(|| JudgeError::Sandbox("empty command".to_string()))?;
    let mut cmd = Command::new(program);
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    Ok(cmd)
}

fn spawn_error(argv: &[String], e: std::io::Error) -> JudgeError {
    JudgeError::Sandbox(format!("cannot start {:?}: {e}", argv[0]))
}

/// Runs `argv` with `stdin` piped in and both output streams captured.
/// Failure to start the process is a sandbox error, never a verdict.
pub fn execute(argv: &[String], stdin: &[u8], limits: &ExecLimits) -> Result<ExecutionOutcome, JudgeError> {
    imp::execute(argv, stdin, limits)
}

fn feed_stdin(mut pipe: std::process::ChildStdin, data: Vec<u8>) -> thread::JoinHandle<()> {
    thread::spawn(move || {
        // broken pipe just means the program stopped reading
        let _ = pipe.write_all(&data);
    })
}

const POLL: Duration = Duration::from_millis(2);

#[cfg(unix)]
mod imp {
    use super::*;
    use std::os::unix::process::CommandExt;
    use std::time::Instant;

    #[cfg(all(target_os = "linux", target_env = "gnu"))]
    type Resource = libc::__rlimit_resource_t;
    #[cfg(not(all(target_os = "linux", target_env = "gnu")))]
    type Resource = libc::c_int;

    fn rlimit(resource: Resource, soft: u64, hard: u64) -> std::io::Result<()> {
        let lim = libc::rlimit { rlim_cur: soft as libc::rlim_t, rlim_max: hard as libc::rlim_t };
        if unsafe { libc::setrlimit(resource, &lim) } != 0 {
            return Err(std::io::Error::last_os_error());
        }
        Ok(())
    }

    fn tv_secs(tv: libc::timeval) -> f64 {
        tv.tv_sec as f64 + tv.tv_usec as f64 / 1e6
    }

    pub(super) fn execute(argv: &[String], stdin: &[u8], limits: &ExecLimits) -> Result<ExecutionOutcome, JudgeError> {
        let mut cmd = build_command(argv)?;
        let cpu_soft = limits.cpu_time.ceil().max(1.0) as u64;
        let memory_bytes = limits.memory_mib.map(|m| (m * 1024.0 * 1024.0) as u64);
        unsafe {
            cmd.pre_exec(move || {
                if libc::setpgid(0, 0) != 0 {
                    return Err(std::io::Error::last_os_error());
                }
                rlimit(libc::RLIMIT_CORE, 0, 0)?;
                rlimit(libc::RLIMIT_CPU, cpu_soft, cpu_soft + 1)?;
                if let Some(bytes) = memory_bytes {
                    rlimit(libc::RLIMIT_AS, bytes, bytes)?;
                }
                Ok(())
            });
        }

        let started = Instant::now();
        let mut child = cmd.spawn().map_err(|e| spawn_error(argv, e))?;
        let pid = child.id() as libc::pid_t;
        let writer = feed_stdin(child.stdin.take().expect("piped stdin"), stdin.to_vec());
        let out = spawn_reader(child.stdout.take().expect("piped stdout"));
        let err = spawn_reader(child.stderr.take().expect("piped stderr"));

        let deadline = Duration::from_secs_f64(limits.wall_time.max(0.0));
        let mut status: libc::c_int = 0;
        let mut usage: libc::rusage = unsafe { std::mem::zeroed() };
        let mut wall_timeout = false;
        loop {
            let r = unsafe { libc::wait4(pid, &mut status, libc::WNOHANG, &mut usage) };
            if r == pid {
                break;
            }
            if r < 0 {
                let e = std::io::Error::last_os_error();
                if e.kind() == std::io::ErrorKind::Interrupted {
                    continue;
                }
                return Err(JudgeError::Sandbox(format!("wait4 failed: {e}")));
            }
            if !wall_timeout && started.elapsed() >= deadline {
                wall_timeout = true;
                unsafe {
                    libc::killpg(pid, libc::SIGKILL);
                }
            }
            thread::sleep(POLL);
        }
        let elapsed = started.elapsed().as_secs_f64();
        // stray descendants would otherwise hold the output pipes open
        unsafe {
            libc::killpg(pid, libc::SIGKILL);
        }
        let _ = writer.join();
        let stdout = out.join().unwrap_or_default();
        let stderr = err.join().unwrap_or_default();

        let exit_status = if libc::WIFSIGNALED(status) {
            ExitState::Signal(libc::WTERMSIG(status))
        } else {
            ExitState::Code(libc::WEXITSTATUS(status))
        };
        let cpu_time = tv_secs(usage.ru_utime) + tv_secs(usage.ru_stime);
        // ru_maxrss is KiB on Linux, bytes on macOS
        let maxrss = usage.ru_maxrss as f64;
        let peak = if cfg!(target_os = "macos") { maxrss / (1024.0 * 1024.0) } else { maxrss / 1024.0 };
        drop(child);
        Ok(ExecutionOutcome {
            exit_status,
            stdout: String::from_utf8_lossy(&stdout).into_owned(),
            stderr: String::from_utf8_lossy(&stderr).into_owned(),
            elapsed,
            cpu_time: Some(cpu_time),
            peak_memory: Some(peak),
            wall_timeout,
        })
    }
}

#[cfg(not(unix))]
mod imp {
    use super::*;
    use std::time::Instant;

    pub(super) fn execute(argv: &[String], stdin: &[u8], limits: &ExecLimits) -> Result<ExecutionOutcome, JudgeError> {
        let mut cmd = build_command(argv)?;
        let started = Instant::now();
        let mut child = cmd.spawn().map_err(|e| spawn_error(argv, e))?;
        let writer = feed_stdin(child.stdin.take().expect("piped stdin"), stdin.to_vec());
        let out = spawn_reader(child.stdout.take().expect("piped stdout"));
        let err = spawn_reader(child.stderr.take().expect("piped stderr"));
        // without CPU accounting the wall guard is set at the CPU limit itself
        let deadline = Duration::from_secs_f64(limits.cpu_time.max(0.0));
        let mut wall_timeout = false;
        let status = loop {
            if let Some(s) = child.try_wait().map_err(|e| JudgeError::Sandbox(e.to_string()))? {
                break s;
            }
            if !wall_timeout && started.elapsed() >= deadline {
                wall_timeout = true;
                let _ = child.kill();
            }
            thread::sleep(POLL);
        };
        let elapsed = started.elapsed().as_secs_f64();
        let _ = writer.join();
        Ok(ExecutionOutcome {
            exit_status: ExitState::Code(status.code().unwrap_or(-1)),
            stdout: String::from_utf8_lossy(&out.join().unwrap_or_default()).into_owned(),
            stderr: String::from_utf8_lossy(&err.join().unwrap_or_default()).into_owned(),
            elapsed,
            cpu_time: None,
            peak_memory: None,
            wall_timeout,
        })
    }
}
