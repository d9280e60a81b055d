//! Scripted stand-in for the remote judge API (`/submit`, `/status/<ref>`).

use std::io;
use std::path::Path;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::http::{parse_multipart, Action, HttpServer, Request, Response};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct JudgeRule {
    pub problem: Option<String>,
    pub code_contains: Option<String>,
    /// Status returned by successive polls; the last one repeats.
    pub statuses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct JudgeScript {
    pub rules: Vec<JudgeRule>,
    pub fallback_statuses: Vec<String>,
    /// When set, requests must carry `Authorization: Bearer <token>`.
    pub token: Option<String>,
    /// Use `sub-<problem>` as the submission reference instead of a counter,
    /// so a resubmission after a crash yields the same record.
    pub stable_refs: bool,
}

impl Default for JudgeScript {
    fn default() -> Self {
        Self { rules: Vec::new(), fallback_statuses: vec!["Accepted".into()], token: None, stable_refs: false }
    }
}

impl JudgeScript {
    pub fn load(path: &Path) -> io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
    }

    pub fn rule(mut self, rule: JudgeRule) -> Self {
        self.rules.push(rule);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum JudgeEvent {
    Submit {
        submission_ref: String,
        problem: String,
        language: String,
        filename: Option<String>,
        code: String,
        at: Instant,
    },
    Poll {
        submission_ref: String,
        at: Instant,
    },
    Rejected {
        path: String,
        reason: String,
    },
}

struct Submission {
    submission_ref: String,
    statuses: Vec<String>,
    polls: usize,
}

struct State {
    script: JudgeScript,
    submissions: Mutex<Vec<Submission>>,
    log: Mutex<Vec<JudgeEvent>>,
}

impl State {
    fn reject(&self, req: &Request, status: u16, reason: &str) -> Action {
        self.log
            .lock()
            .unwrap()
            .push(JudgeEvent::Rejected { path: req.path.clone(), reason: reason.to_string() });
        Action::Respond(Response::json(status, &json!({ "error": reason })))
    }

    fn handle(&self, req: Request) -> Action {
        let at = Instant::now();
        if let Some(token) = &self.script.token {
            let expected = format!("Bearer {token}");
            if req.header("authorization") != Some(expected.as_str()) {
                return self.reject(&req, 401, "missing or invalid token");
            }
        }
        if req.method == "POST" && req.path == "/submit" {
            return self.submit(&req, at);
        }
        if req.method == "GET" {
            if let Some(id) = req.path.strip_prefix("/status/") {
                return self.status(&req, id, at);
            }
        }
        self.reject(&req, 404, "no such endpoint")
    }

    fn submit(&self, req: &Request, at: Instant) -> Action {
        let Some(parts) = parse_multipart(req) else {
            return self.reject(req, 400, "expected multipart/form-data");
        };
        let field = |name: &str| parts.iter().find(|p| p.name == name);
        let (Some(problem), Some(language), Some(code)) = (field("problem"), field("language"), field("code")) else {
            return self.reject(req, 400, "need problem, language and code fields");
        };
        let problem = String::from_utf8_lossy(&problem.data).into_owned();
        let code_text = String::from_utf8_lossy(&code.data).into_owned();
        let statuses = self
            .script
            .rules
            .iter()
            .find(|r| {
                r.problem.as_deref().is_none_or(|p| p == problem)
                    && r.code_contains.as_deref().is_none_or(|c| code_text.contains(c))
            })
            .map(|r| r.statuses.clone())
            .unwrap_or_else(|| self.script.fallback_statuses.clone());
        let submission_ref = {
            let mut subs = self.submissions.lock().unwrap();
            let submission_ref =
                if self.script.stable_refs { format!("sub-{problem}") } else { format!("s{}", subs.len() + 1) };
            subs.push(Submission { submission_ref: submission_ref.clone(), statuses, polls: 0 });
            submission_ref
        };
        self.log.lock().unwrap().push(JudgeEvent::Submit {
            submission_ref: submission_ref.clone(),
            problem,
            language: String::from_utf8_lossy(&language.data).into_owned(),
            filename: code.filename.clone(),
            code: code_text,
            at,
        });
        Action::Respond(Response::json(200, &json!({ "submission_ref": submission_ref })))
    }

    fn status(&self, req: &Request, id: &str, at: Instant) -> Action {
        let status = {
            let mut subs = self.submissions.lock().unwrap();
            // latest submission wins when stable refs repeat
            let Some(sub) = subs.iter_mut().rev().find(|s| s.submission_ref == id) else {
                drop(subs);
                return self.reject(req, 404, "unknown submission");
            };
            let s = sub.statuses.get(sub.polls).or(sub.statuses.last()).cloned().unwrap_or_default();
            sub.polls += 1;
            s
        };
        self.log.lock().unwrap().push(JudgeEvent::Poll { submission_ref: id.to_string(), at });
        Action::Respond(Response::json(200, &json!({ "status": status })))
    }
}

pub struct MockJudge {
    state: Arc<State>,
    server: HttpServer,
}

impl MockJudge {
    pub fn start(script: JudgeScript) -> io::Result<Self> {
        Self::bind("127.0.0.1:0", script)
    }

    pub fn bind(addr: &str, script: JudgeScript) -> io::Result<Self> {
        let state = Arc::new(State { script, submissions: Mutex::new(Vec::new()), log: Mutex::new(Vec::new()) });
        let handler_state = Arc::clone(&state);
        let server = HttpServer::bind(addr, Arc::new(move |req| handler_state.handle(req)))?;
        Ok(Self { state, server })
    }

    pub fn url(&self) -> String {
        self.server.url()
    }

    pub fn events(&self) -> Vec<JudgeEvent> {
        self.state.log.lock().unwrap().clone()
    }

    pub fn submissions(&self) -> Vec<(String, Instant)> {
        self.events()
            .into_iter()
            .filter_map(|e| match e {
                JudgeEvent::Submit { problem, at, .. } => Some((problem, at)),
                _ => None,
            })
            .collect()
    }

    pub fn poll_count(&self, submission_ref: &str) -> usize {
        self.events()
            .iter()
            .filter(|e| matches!(e, JudgeEvent::Poll { submission_ref: r, .. } if r == submission_ref))
            .count()
    }

    pub fn wait(self) {
        self.server.wait()
    }
}
