//! JSON session protocol. The same request/response bodies travel over
//! HTTP and as line-delimited JSON on stdio.
//!
//! All expressions are surface-syntax strings; the parser is the only
//! deserializer for terms.

use std::collections::HashMap;
use std::fs;
use std::io;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, MutexGuard};

use serde::{Deserialize, Serialize};

use crate::environment::{EnvError, GlobalEnv};
use crate::kernel::TypeError;
use crate::script::{parse_commands, Command, CommandError, Runner};
use crate::session::{GoalView, SessionError};
use crate::syntax::{is_identifier, parse, ParseError, Printer};

pub const DEFAULT_SESSION: &str = "default";

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    pub op: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub session: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default)]
    pub ascii: bool,
}

impl Request {
    pub fn new(op: &str) -> Self {
        Request {
            op: op.to_string(),
            ..Request::default()
        }
    }

    pub fn session(mut self, id: &str) -> Self {
        self.session = Some(id.to_string());
        self
    }

    pub fn expr(mut self, e: &str) -> Self {
        self.expr = Some(e.to_string());
        self
    }

    pub fn goal(mut self, n: usize) -> Self {
        self.goal = Some(n);
        self
    }

    pub fn name(mut self, n: &str) -> Self {
        self.name = Some(n.to_string());
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoalJson {
    pub number: usize,
    #[serde(rename = "type")]
    pub ty: String,
    pub context: Vec<(String, String)>,
}

impl From<GoalView> for GoalJson {
    fn from(g: GoalView) -> Self {
        GoalJson {
            number: g.number,
            ty: g.ty,
            context: g.ctx,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorJson {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub context: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub term: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub found: Option<String>,
}

impl ErrorJson {
    fn simple(kind: &str, message: impl Into<String>) -> Self {
        ErrorJson {
            kind: kind.to_string(),
            message: message.into(),
            ..ErrorJson::default()
        }
    }

    fn from_type_error(e: &TypeError, pr: Printer) -> Self {
        ErrorJson {
            kind: e.kind.as_str().to_string(),
            message: e.to_string(),
            context: e
                .ctx
                .iter()
                .map(|(n, t)| (n.to_string(), pr.print(t)))
                .collect(),
            term: Some(pr.print(&e.term)),
            expected: e.expected.as_ref().map(|t| pr.print(t)),
            found: e.found.as_ref().map(|t| pr.print(t)),
        }
    }

    fn from_command_error(e: &CommandError, pr: Printer) -> Self {
        let kind = match e {
            CommandError::Parse(_) => "parse",
            CommandError::Reduction(_) => "budget",
            CommandError::Session(s) => match s {
                SessionError::Type(t) | SessionError::Env(EnvError::Type(t)) => {
                    return ErrorJson::from_type_error(t, pr)
                }
                SessionError::NotAnnotated | SessionError::Env(EnvError::NotAnnotated) => {
                    "not-annotated"
                }
                SessionError::NoGoal(_) => "no-goal",
                SessionError::NothingToUndo => "nothing-to-undo",
                SessionError::Incoherent { .. } => "incoherent",
                SessionError::Env(EnvError::Incomplete(_)) => "incomplete",
                SessionError::Env(_) => "environment",
            },
        };
        ErrorJson::simple(kind, e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Response {
    pub status: Status,
    pub session: String,
    /// The current task, pretty-printed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<String>,
    /// `Task is now …`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transcript: Option<String>,
    #[serde(default)]
    pub goals: Vec<GoalJson>,
    /// What the REPL would have printed for this command.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorJson>,
}

impl Response {
    fn failure(session: &str, error: ErrorJson) -> Self {
        Response {
            status: Status::Error,
            session: session.to_string(),
            task: None,
            transcript: None,
            goals: Vec::new(),
            output: None,
            error: Some(error),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }
}

struct Entry {
    runner: Runner,
    /// Successful state-changing commands, replayable as a `.pr` script.
    log: Vec<Command>,
}

/// All live sessions. Each session has its own lock, so requests for one
/// session are serialized while different sessions proceed in parallel.
pub struct Store {
    base: GlobalEnv,
    save_dir: Option<PathBuf>,
    sessions: Mutex<HashMap<String, Arc<Mutex<Entry>>>>,
}

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

fn required<'a>(field: &'a Option<String>, what: &str) -> Result<&'a str, ErrorJson> {
    field
        .as_deref()
        .ok_or_else(|| ErrorJson::simple("bad-request", format!("missing field `{what}`")))
}

fn parse_field(field: &Option<String>, what: &str) -> Result<crate::Expr, ErrorJson> {
    parse(required(field, what)?).map_err(|e: ParseError| ErrorJson::simple("parse", e.to_string()))
}

impl Request {
    fn to_command(&self) -> Result<Command, ErrorJson> {
        let name = || {
            let n = required(&self.name, "name")?;
            if is_identifier(n) {
                Ok(n.to_string())
            } else {
                Err(ErrorJson::simple("parse", format!("{n} is not a valid name")))
            }
        };
        Ok(match self.op.as_str() {
            "set_task" => Command::SetTask(parse_field(&self.expr, "expr")?),
            "refine" => {
                let n = self
                    .goal
                    .ok_or_else(|| ErrorJson::simple("bad-request", "missing field `goal`"))?;
                Command::Refine(n, parse_field(&self.expr, "expr")?)
            }
            "undo" => Command::Undo,
            "goals" => Command::Goals,
            "reset" => Command::Reset,
            "def" => Command::Def(name()?, parse_field(&self.expr, "expr")?),
            "postulate" => Command::Postulate(name()?, parse_field(&self.expr, "expr")?),
            "check_proof" => Command::CheckProof(parse_field(&self.expr, "expr")?),
            "normalize" => Command::Normalize(parse_field(&self.expr, "expr")?),
            other => {
                return Err(ErrorJson::simple("unknown-op", format!("unknown op {other}")))
            }
        })
    }
}

impl Store {
    pub fn new(base: GlobalEnv) -> Self {
        Store {
            base,
            save_dir: None,
            sessions: Mutex::default(),
        }
    }

    /// Persist every session as `<dir>/<session>.pr` and restore sessions
    /// from there on first use.
    pub fn with_save_dir(mut self, dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        self.save_dir = Some(dir);
        Ok(self)
    }

    fn script_path(&self, id: &str) -> Option<PathBuf> {
        self.save_dir.as_ref().map(|d| d.join(format!("{id}.pr")))
    }

    fn entry(&self, id: &str) -> Arc<Mutex<Entry>> {
        let mut sessions = lock(&self.sessions);
        sessions
            .entry(id.to_string())
            .or_insert_with(|| Arc::new(Mutex::new(self.restore(id))))
            .clone()
    }

    fn restore(&self, id: &str) -> Entry {
        let mut entry = Entry {
            runner: Runner::new(self.base.clone(), Printer::default()),
            log: Vec::new(),
        };
        let Some(src) = self.script_path(id).and_then(|p| fs::read_to_string(p).ok()) else {
            return entry;
        };
        for cmd in parse_commands(&src).unwrap_or_default() {
            if entry.runner.execute(&cmd).is_ok() {
                entry.log.push(cmd);
            }
        }
        entry
    }

    fn save(&self, id: &str, entry: &Entry) {
        let Some(path) = self.script_path(id) else {
            return;
        };
        let mut script = String::new();
        for cmd in &entry.log {
            script.push_str(&cmd.to_string());
            script.push('\n');
        }
        // Persistence is best effort; the live session stays authoritative.
        let _ = write_atomic(&path, &script);
    }

    pub fn session_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = lock(&self.sessions).keys().cloned().collect();
        ids.sort();
        ids
    }

    pub fn handle(&self, req: &Request) -> Response {
        let id = req.session.as_deref().unwrap_or(DEFAULT_SESSION);
        if !valid_session_id(id) {
            return Response::failure(id, ErrorJson::simple("bad-request", "invalid session id"));
        }
        let cmd = match req.to_command() {
            Ok(c) => c,
            Err(e) => return Response::failure(id, e),
        };
        let pr = Printer::new(req.ascii);
        let entry = self.entry(id);
        let mut entry = lock(&entry);
        let outcome = catch_unwind(AssertUnwindSafe(|| {
            let mut runner = entry.runner.clone();
            runner.set_printer(pr);
            runner.execute(&cmd).map(|out| (runner, out))
        }));
        let result = match outcome {
            Ok(r) => r,
            Err(_) => {
                return Response::failure(id, ErrorJson::simple("internal", "internal error"));
            }
        };
        let (output, error) = match result {
            Ok((runner, out)) => {
                entry.runner = runner;
                if cmd.is_mutation() {
                    if cmd == Command::Reset {
                        entry.log.clear();
                    } else {
                        entry.log.push(cmd);
                    }
                    self.save(id, &entry);
                }
                (Some(out), None)
            }
            Err(e) => (None, Some(ErrorJson::from_command_error(&e, pr))),
        };
        let session = entry.runner.session();
        Response {
            status: if error.is_none() { Status::Ok } else { Status::Error },
            session: id.to_string(),
            task: session.task().map(|t| pr.print(t.current())),
            transcript: session.render(pr),
            goals: session.goals(pr).into_iter().map(GoalJson::from).collect(),
            output,
            error,
        }
    }

    /// Decodes one JSON request and encodes the response. Never panics.
    pub fn handle_json(&self, body: &str) -> String {
        let resp = match serde_json::from_str::<Request>(body) {
            Ok(req) => self.handle(&req),
            Err(e) => Response::failure(
                DEFAULT_SESSION,
                ErrorJson::simple("bad-request", format!("invalid request: {e}")),
            ),
        };
        serde_json::to_string(&resp).expect("responses always serialize")
    }
}

impl Default for Store {
    fn default() -> Self {
        Store::new(GlobalEnv::new())
    }
}

fn valid_session_id(id: &str) -> bool {
    !id.is_empty()
        && id.len() <= 64
        && id
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
}

fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let tmp = path.with_extension("pr.tmp");
    fs::write(&tmp, contents)?;
    fs::rename(tmp, path)
}
