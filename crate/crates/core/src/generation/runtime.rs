//! Blocking client for an Ollama-compatible `/api/generate` endpoint.

use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::GenerationError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuntimeEndpoint {
    pub base_url: String,
    pub model_name: String,
    #[serde(default = "default_timeout", rename = "request_timeout_s")]
    pub request_timeout: f64,
    #[serde(default = "default_retries")]
    pub max_retries: u32,
    /// Fixed pause between transport retries.
    #[serde(default = "default_backoff", rename = "retry_backoff_s")]
    pub retry_backoff: f64,
    /// Decoding options forwarded verbatim as the request's `options` object.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<Map<String, Value>>,
}

fn default_timeout() -> f64 {
    600.0
}

fn default_retries() -> u32 {
    2
}

fn default_backoff() -> f64 {
    1.0
}

impl RuntimeEndpoint {
    pub fn new(base_url: impl Into<String>, model_name: impl Into<String>) -> Self {
        Self {
            base_url: base_url.into(),
            model_name: model_name.into(),
            request_timeout: default_timeout(),
            max_retries: default_retries(),
            retry_backoff: default_backoff(),
            options: None,
        }
    }

    pub fn validate(&self) -> Result<(), GenerationError> {
        if !(self.request_timeout > 0.0 && self.request_timeout.is_finite()) {
            return Err(GenerationError::Config(format!(
                "model {:?}: request_timeout_s must be positive",
                self.model_name
            )));
        }
        if !(self.retry_backoff >= 0.0 && self.retry_backoff.is_finite()) {
            return Err(GenerationError::Config(format!(
                "model {:?}: retry_backoff_s must be nonnegative",
                self.model_name
            )));
        }
        Ok(())
    }

    fn generate_url(&self) -> String {
        format!("{}/api/generate", self.base_url.trim_end_matches('/'))
    }
}

#[derive(Serialize)]
struct GenerateRequest<'a> {
    model: &'a str,
    prompt: &'a str,
    stream: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    options: Option<&'a Map<String, Value>>,
}

#[derive(Deserialize)]
struct GenerateResponse {
    response: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub raw_response: String,
    /// Dispatch-to-last-byte time of the attempt that succeeded.
    pub generation_time: Duration,
    /// Number of requests sent, including the successful one.
    pub attempts: u32,
}

enum AttemptError {
    Transport(String),
    Reply(String),
}

pub struct RuntimeClient {
    endpoint: RuntimeEndpoint,
    http: reqwest::blocking::Client,
}

impl RuntimeClient {
    pub fn new(endpoint: RuntimeEndpoint) -> Result<Self, GenerationError> {
        endpoint.validate()?;
        let http = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs_f64(endpoint.request_timeout))
            .build()
            .map_err(|e| GenerationError::Config(format!("http client: {e}")))?;
        Ok(Self { endpoint, http })
    }

    pub fn endpoint(&self) -> &RuntimeEndpoint {
        &self.endpoint
    }

    fn attempt(&self, prompt: &str) -> Result<(String, Duration), AttemptError> {
        let body = GenerateRequest {
            model: &self.endpoint.model_name,
            prompt,
            stream: false,
            options: self.endpoint.options.as_ref(),
        };
        let started = Instant::now();
        let resp = self
            .http
            .post(self.endpoint.generate_url())
            .json(&body)
            .send()
            .map_err(|e| AttemptError::Transport(error_chain(&e)))?;
        let status = resp.status();
        let bytes = resp.bytes().map_err(|e| AttemptError::Transport(error_chain(&e)))?;
        let elapsed = started.elapsed();
        if status.is_server_error() {
            return Err(AttemptError::Transport(format!("runtime returned HTTP {status}")));
        }
        if !status.is_success() {
            return Err(AttemptError::Reply(format!(
                "runtime returned HTTP {status}: {}",
                String::from_utf8_lossy(&bytes)
            )));
        }
        let parsed: GenerateResponse = serde_json::from_slice(&bytes)
            .map_err(|e| AttemptError::Reply(format!("malformed runtime reply: {e}")))?;
        Ok((parsed.response, elapsed))
    }

    /// Sends one non-streaming request. Transport failures are retried up to
    /// `max_retries` times with a fixed backoff; a well-formed reply is never
    /// retried.
    pub fn generate(&self, prompt: &str) -> Result<Generated, GenerationError> {
        let mut attempts = 0;
        loop {
            attempts += 1;
            match self.attempt(prompt) {
                Ok((raw_response, generation_time)) => {
                    if attempts > 1 {
                        log::info!("{}: succeeded after {} retries", self.endpoint.model_name, attempts - 1);
                    }
                    return Ok(Generated { raw_response, generation_time, attempts });
                }
                Err(AttemptError::Reply(msg)) => return Err(GenerationError::Reply(msg)),
                Err(AttemptError::Transport(msg)) if attempts > self.endpoint.max_retries => {
                    return Err(GenerationError::Transport { attempts, message: msg });
                }
                Err(AttemptError::Transport(msg)) => {
                    log::warn!(
                        "{}: transport failure (retry {} of {}): {msg}",
                        self.endpoint.model_name,
                        attempts,
                        self.endpoint.max_retries
                    );
                    thread::sleep(Duration::from_secs_f64(self.endpoint.retry_backoff));
                }
            }
        }
    }
}

pub(crate) fn error_chain(e: &dyn std::error::Error) -> String {
    let mut msg = e.to_string();
    let mut source = e.source();
    while let Some(s) = source {
        msg.push_str(": ");
        msg.push_str(&s.to_string());
        source = s.source();
    }
    msg
}

pub fn generate_solution(endpoint: &RuntimeEndpoint, prompt: &str) -> Result<Generated, GenerationError> {
    RuntimeClient::new(endpoint.clone())?.generate(prompt)
}
