//! Client for a Kattis-style judge API.
//!
//! `POST {judge_url}/submit` (multipart: `problem`, `language`, `code` file
//! part) answers `{"submission_ref": "..."}`; `GET {judge_url}/status/<ref>`
//! answers `{"status": "..."}`. Requests carry `Authorization: Bearer <token>`
//! where the token is read from the file named by `JUDGE_TOKEN_FILE`.

use std::path::Path;
use std::thread;
use std::time::{Duration, Instant};

use reqwest::blocking::{multipart, Client, RequestBuilder};
use serde::Deserialize;

use super::{classify_verdict, JudgeConfig, JudgeError, Verdict};
use crate::generation::runtime::error_chain;
use crate::store::Problem;

pub const TOKEN_FILE_ENV: &str = "JUDGE_TOKEN_FILE";

/// Raw status recorded when polling gives up.
pub const POLL_TIMEOUT_STATUS: &str = "poll-timeout";

const PENDING_PREFIXES: [&str; 7] = ["new", "queued", "waiting", "pending", "compiling", "running", "judging"];

/// Statuses that mean "keep polling". Everything else is terminal.
pub fn is_pending_status(status: &str) -> bool {
    let s = status.trim().to_ascii_lowercase();
    s.is_empty() || PENDING_PREFIXES.iter().any(|p| s.starts_with(p))
}

enum Failure {
    /// Transport errors and 5xx replies; worth retrying.
    Transient(String),
    Fatal(String),
}

fn http_failure(status: reqwest::StatusCode) -> Failure {
    if status.is_server_error() {
        Failure::Transient(format!("HTTP {status}"))
    } else {
        Failure::Fatal(format!("HTTP {status}"))
    }
}

#[derive(Deserialize)]
struct SubmitReply {
    submission_ref: String,
}

#[derive(Deserialize)]
struct StatusReply {
    status: String,
}

pub struct RemoteJudge {
    http: Client,
    judge_url: String,
    token: Option<String>,
    rate_limit: Duration,
    poll_interval: Duration,
    poll_timeout: Duration,
    max_retries: u32,
    retry_backoff: Duration,
    last_submit: Option<Instant>,
}

impl RemoteJudge {
    pub fn new(config: &JudgeConfig, token: Option<String>) -> Result<Self, JudgeError> {
        config.validate()?;
        let judge_url = config
            .judge_url
            .clone()
            .ok_or_else(|| JudgeError::Config("remote backend needs judge.judge_url".into()))?;
        let http = Client::builder()
            .timeout(Duration::from_secs_f64(config.request_timeout_s))
            .build()
            .map_err(|e| JudgeError::Config(format!("http client: {e}")))?;
        Ok(Self {
            http,
            judge_url: judge_url.trim_end_matches('/').to_string(),
            token,
            rate_limit: Duration::from_secs_f64(config.rate_limit_s),
            poll_interval: Duration::from_secs_f64(config.poll_interval_s),
            poll_timeout: Duration::from_secs_f64(config.poll_timeout_s),
            max_retries: config.max_retries,
            retry_backoff: Duration::from_secs_f64(config.retry_backoff_s),
            last_submit: None,
        })
    }

    /// Reads the bearer token from the file named by `JUDGE_TOKEN_FILE`.
    pub fn from_env(config: &JudgeConfig) -> Result<Self, JudgeError> {
        let path = std::env::var_os(TOKEN_FILE_ENV)
            .ok_or_else(|| JudgeError::Config(format!("remote backend needs {TOKEN_FILE_ENV} to name a token file")))?;
        let token = std::fs::read_to_string(&path)
            .map_err(|e| JudgeError::Config(format!("cannot read token file {path:?}: {e}")))?;
        Self::new(config, Some(token.trim().to_string()))
    }

    fn authorize(&self, req: RequestBuilder) -> RequestBuilder {
        match &self.token {
            Some(t) => req.bearer_auth(t),
            None => req,
        }
    }

    fn with_retries<T>(&self, what: &str, mut op: impl FnMut() -> Result<T, Failure>) -> Result<T, JudgeError> {
        let mut attempts = 0;
        loop {
            attempts += 1;
            match op() {
                Ok(v) => return Ok(v),
                Err(Failure::Fatal(msg)) => return Err(JudgeError::Backend(format!("{what} rejected: {msg}"))),
                Err(Failure::Transient(msg)) if attempts > self.max_retries => {
                    return Err(JudgeError::Backend(format!("{what} failed after {attempts} attempt(s): {msg}")));
                }
                Err(Failure::Transient(msg)) => {
                    log::warn!("{what}: {msg}; retrying ({attempts}/{})", self.max_retries);
                    thread::sleep(self.retry_backoff);
                }
            }
        }
    }

    fn wait_for_rate_limit(&self) {
        if let Some(last) = self.last_submit {
            let since = last.elapsed();
            if since < self.rate_limit {
                thread::sleep(self.rate_limit - since);
            }
        }
    }

    /// Uploads `source` for `problem`. Blocks first so that at least
    /// `rate_limit` has passed since the previous submission returned.
    pub fn submit(&mut self, problem: &Problem, source: &Path) -> Result<String, JudgeError> {
        self.wait_for_rate_limit();
        let url = format!("{}/submit", self.judge_url);
        let result = self.with_retries("submit", || {
            let form = multipart::Form::new()
                .text("problem", problem.id.clone())
                .text("language", problem.submission_language.clone())
                .file("code", source)
                .map_err(|e| Failure::Fatal(format!("cannot read {}: {e}", source.display())))?;
            let resp = self
                .authorize(self.http.post(&url).multipart(form))
                .send()
                .map_err(|e| Failure::Transient(error_chain(&e)))?;
            let status = resp.status();
            if !status.is_success() {
                return Err(http_failure(status));
            }
            resp.json::<SubmitReply>().map(|r| r.submission_ref).map_err(|e| Failure::Fatal(error_chain(&e)))
        });
        self.last_submit = Some(Instant::now());
        result
    }

    fn fetch_status(&self, submission_ref: &str) -> Result<String, JudgeError> {
        let url = format!("{}/status/{submission_ref}", self.judge_url);
        self.with_retries("status", || {
            let resp =
                self.authorize(self.http.get(&url)).send().map_err(|e| Failure::Transient(error_chain(&e)))?;
            let status = resp.status();
            if !status.is_success() {
                return Err(http_failure(status));
            }
            resp.json::<StatusReply>().map(|r| r.status).map_err(|e| Failure::Fatal(error_chain(&e)))
        })
    }

    /// Polls every `poll_interval` until a terminal status, or returns
    /// `Other("poll-timeout")` once `poll_timeout` is exhausted.
    pub fn poll(&self, submission_ref: &str) -> Result<Verdict, JudgeError> {
        let started = Instant::now();
        loop {
            if started.elapsed() + self.poll_interval > self.poll_timeout {
                return Ok(Verdict::other(POLL_TIMEOUT_STATUS));
            }
            thread::sleep(self.poll_interval);
            let status = self.fetch_status(submission_ref)?;
            if !is_pending_status(&status) {
                return Ok(classify_verdict(&status));
            }
        }
    }
}

pub fn submit_remote(judge: &mut RemoteJudge, problem: &Problem, source: &Path) -> Result<String, JudgeError> {
    judge.submit(problem, source)
}

pub fn poll_verdict(judge: &RemoteJudge, submission_ref: &str) -> Result<Verdict, JudgeError> {
    judge.poll(submission_ref)
}
