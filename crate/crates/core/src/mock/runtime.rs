//! Scripted stand-in for an Ollama-compatible runtime.

use std::io;
use std::path::Path;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::http::{Action, HttpServer, Request, Response};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RuntimeRule {
    /// Only requests for this model match; any model when absent.
    pub model: Option<String>,
    /// Only prompts containing this text match; any prompt when absent.
    pub prompt_contains: Option<String>,
    pub response: String,
    pub delay_ms: u64,
    /// The first this-many matching requests have their connection dropped.
    pub drop_first: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RuntimeScript {
    pub rules: Vec<RuntimeRule>,
    /// Reply used when no rule matches.
    pub fallback_response: String,
}

impl RuntimeScript {
    pub fn load(path: &Path) -> io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
    }

    pub fn rule(mut self, rule: RuntimeRule) -> Self {
        self.rules.push(rule);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoggedGenerate {
    pub model: String,
    pub prompt: String,
    pub stream: Option<bool>,
    pub dropped: bool,
    pub received: Instant,
}

struct State {
    script: RuntimeScript,
    drops_left: Vec<AtomicU32>,
    log: Mutex<Vec<LoggedGenerate>>,
}

impl State {
    fn handle(&self, req: Request) -> Action {
        if req.method != "POST" || req.path != "/api/generate" {
            return Action::Respond(Response::text(404, "not found"));
        }
        let received = Instant::now();
        let body: serde_json::Value = match serde_json::from_slice(&req.body) {
            Ok(v) => v,
            Err(e) => return Action::Respond(Response::json(400, &json!({ "error": e.to_string() }))),
        };
        let model = body["model"].as_str().unwrap_or_default().to_string();
        let prompt = body["prompt"].as_str().unwrap_or_default().to_string();
        let stream = body["stream"].as_bool();
        let matched = self.script.rules.iter().enumerate().find(|(_, r)| {
            r.model.as_deref().is_none_or(|m| m == model)
                && r.prompt_contains.as_deref().is_none_or(|s| prompt.contains(s))
        });
        let dropped = matched.is_some_and(|(i, _)| {
            self.drops_left[i].fetch_update(Ordering::SeqCst, Ordering::SeqCst, |n| n.checked_sub(1)).is_ok()
        });
        self.log.lock().unwrap().push(LoggedGenerate { model: model.clone(), prompt, stream, dropped, received });
        if dropped {
            return Action::Drop;
        }
        let (response, delay) = match matched {
            Some((_, r)) => (r.response.clone(), r.delay_ms),
            None => (self.script.fallback_response.clone(), 0),
        };
        thread::sleep(Duration::from_millis(delay));
        Action::Respond(Response::json(200, &json!({ "model": model, "response": response, "done": true })))
    }
}

/// Mock runtime serving `POST /api/generate` and logging every request.
pub struct MockRuntime {
    state: Arc<State>,
    server: HttpServer,
}

impl MockRuntime {
    pub fn start(script: RuntimeScript) -> io::Result<Self> {
        Self::bind("127.0.0.1:0", script)
    }

    pub fn bind(addr: &str, script: RuntimeScript) -> io::Result<Self> {
        let drops_left = script.rules.iter().map(|r| AtomicU32::new(r.drop_first)).collect();
        let state = Arc::new(State { script, drops_left, log: Mutex::new(Vec::new()) });
        let handler_state = Arc::clone(&state);
        let server = HttpServer::bind(addr, Arc::new(move |req| handler_state.handle(req)))?;
        Ok(Self { state, server })
    }

    pub fn url(&self) -> String {
        self.server.url()
    }

    pub fn requests(&self) -> Vec<LoggedGenerate> {
        self.state.log.lock().unwrap().clone()
    }

    pub fn wait(self) {
        self.server.wait()
    }
}
