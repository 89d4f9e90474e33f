//! Top-level command forms, shared by the REPL, `.pr` batch files and the
//! persistence format of the server.
//!
//! ```text
//! (set-task! (? : (A -> A)))     ; `set-task` also accepted
//! (refine 0 (λ x => x))
//! (undo)  (goals)  (reset)
//! (def name (term : type))
//! (postulate name type)
//! (check-proof (term : type))
//! (normalize term)
//! ```

use std::fmt;

use thiserror::Error;

use crate::environment::GlobalEnv;
use crate::equational::{normalize, ReductionError};
use crate::session::{goal_count_text, Session, SessionError};
use crate::syntax::{is_identifier, parse_sexp, read_all, Expr, ParseError, Printer, Sexp};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    SetTask(Expr),
    Refine(usize, Expr),
    Undo,
    Goals,
    Def(String, Expr),
    Postulate(String, Expr),
    CheckProof(Expr),
    Normalize(Expr),
    Reset,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CommandError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Session(#[from] SessionError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

fn malformed(msg: impl Into<String>, form: &Sexp) -> ParseError {
    ParseError::new(msg, form.to_string())
}

fn name_arg(form: &Sexp, s: &Sexp) -> Result<String, ParseError> {
    match s.as_atom() {
        Some(a) if is_identifier(a) => Ok(a.to_string()),
        _ => Err(malformed("expected a name", form)),
    }
}

impl Command {
    pub fn from_sexp(form: &Sexp) -> Result<Command, ParseError> {
        let Sexp::List(items) = form else {
            return Err(malformed("expected a command form", form));
        };
        let Some(head) = items.first().and_then(Sexp::as_atom) else {
            return Err(malformed("expected a command form", form));
        };
        let args = &items[1..];
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(malformed(format!("{head} expects {n} argument(s)"), form))
            }
        };
        Ok(match head {
            "set-task" | "set-task!" => {
                arity(1)?;
                Command::SetTask(parse_sexp(&args[0])?)
            }
            "refine" => {
                arity(2)?;
                let n = args[0]
                    .as_atom()
                    .and_then(|a| a.parse().ok())
                    .ok_or_else(|| malformed("expected a goal number", form))?;
                Command::Refine(n, parse_sexp(&args[1])?)
            }
            "undo" => {
                arity(0)?;
                Command::Undo
            }
            "goals" => {
                arity(0)?;
                Command::Goals
            }
            "reset" => {
                arity(0)?;
                Command::Reset
            }
            "def" => {
                arity(2)?;
                Command::Def(name_arg(form, &args[0])?, parse_sexp(&args[1])?)
            }
            "postulate" => {
                arity(2)?;
                Command::Postulate(name_arg(form, &args[0])?, parse_sexp(&args[1])?)
            }
            "check-proof" => {
                arity(1)?;
                Command::CheckProof(parse_sexp(&args[0])?)
            }
            "normalize" => {
                arity(1)?;
                Command::Normalize(parse_sexp(&args[0])?)
            }
            _ => return Err(malformed(format!("unknown command {head}"), form)),
        })
    }

    /// Does this command change session state (and so belong in a replay script)?
    pub fn is_mutation(&self) -> bool {
        !matches!(
            self,
            Command::Goals | Command::CheckProof(_) | Command::Normalize(_)
        )
    }

    pub fn render(&self, printer: Printer) -> String {
        let p = |e: &Expr| printer.print(e);
        match self {
            Command::SetTask(e) => format!("(set-task! {})", p(e)),
            Command::Refine(n, e) => format!("(refine {n} {})", p(e)),
            Command::Undo => "(undo)".into(),
            Command::Goals => "(goals)".into(),
            Command::Reset => "(reset)".into(),
            Command::Def(n, e) => format!("(def {n} {})", p(e)),
            Command::Postulate(n, e) => format!("(postulate {n} {})", p(e)),
            Command::CheckProof(e) => format!("(check-proof {})", p(e)),
            Command::Normalize(e) => format!("(normalize {})", p(e)),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Printer::default()))
    }
}

/// Parses every command form in `src`.
pub fn parse_commands(src: &str) -> Result<Vec<Command>, ParseError> {
    read_all(src)?.iter().map(Command::from_sexp).collect()
}

/// Net parenthesis depth of `src`, ignoring `;` comments. The REPL keeps
/// reading lines while this is positive.
pub fn open_depth(src: &str) -> i64 {
    let mut depth = 0;
    for line in src.lines() {
        for c in line.chars() {
            match c {
                ';' => break,
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
        }
    }
    depth
}

/// Executes commands against a session and renders the REPL transcript.
#[derive(Clone, Debug, Default)]
pub struct Runner {
    session: Session,
    printer: Printer,
    /// What `(reset)` returns to.
    base: GlobalEnv,
}

impl Runner {
    pub fn new(env: GlobalEnv, printer: Printer) -> Self {
        Runner {
            session: Session::new(env.clone()),
            printer,
            base: env,
        }
    }

    pub fn session(&self) -> &Session {
        &self.session
    }

    pub fn session_mut(&mut self) -> &mut Session {
        &mut self.session
    }

    pub fn printer(&self) -> Printer {
        self.printer
    }

    pub fn set_printer(&mut self, printer: Printer) {
        self.printer = printer;
    }

    fn task_text(&self) -> String {
        self.session.render(self.printer).unwrap_or_default()
    }

    pub fn execute(&mut self, cmd: &Command) -> Result<String, CommandError> {
        let pr = self.printer;
        Ok(match cmd {
            Command::SetTask(e) => {
                self.session.set_task(e)?;
                self.task_text()
            }
            Command::Refine(n, e) => {
                self.session.refine(*n, e)?;
                self.task_text()
            }
            Command::Undo => {
                self.session.undo()?;
                self.task_text()
            }
            Command::Goals => {
                let goals = self.session.goals(pr);
                let mut out = goal_count_text(goals.len());
                for g in goals {
                    out.push_str(&format!("\n?{} : {}", g.number, g.ty));
                    for (n, t) in g.ctx {
                        out.push_str(&format!("\n    {n} : {t}"));
                    }
                }
                out
            }
            Command::Def(name, e) => {
                self.session.define(name, e)?;
                format!("Defined {name}")
            }
            Command::Postulate(name, ty) => {
                self.session.postulate(name, ty.clone())?;
                format!("Postulated {name}")
            }
            Command::CheckProof(e) => {
                self.session
                    .env()
                    .check_proof(e)
                    .map_err(SessionError::from)?;
                format!("Checked {}", pr.print(e))
            }
            Command::Normalize(e) => pr.print(&normalize(self.session.env(), e)?),
            Command::Reset => {
                self.session = Session::new(self.base.clone());
                "Session reset".into()
            }
        })
    }

    /// Runs a whole script, producing one transcript entry per command.
    /// Execution continues past failures.
    pub fn run_script(&mut self, src: &str) -> Result<Vec<Step>, ParseError> {
        let forms = read_all(src)?;
        Ok(forms
            .iter()
            .map(|form| {
                let result = Command::from_sexp(form)
                    .map_err(CommandError::from)
                    .and_then(|cmd| self.execute(&cmd));
                Step {
                    input: form.to_string(),
                    result,
                }
            })
            .collect())
    }
}

/// One command of a transcript and what it printed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub input: String,
    pub result: Result<String, CommandError>,
}

impl Step {
    /// The text the REPL prints for this step.
    pub fn output(&self) -> String {
        match &self.result {
            Ok(s) => s.clone(),
            Err(e) => format!("error: {e}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_command_forms() {
        let cmds = parse_commands(
            "(set-task! '(? : (A -> A))) ; comment\n(refine 0 '(λ x => x)) (undo) (goals)",
        )
        .unwrap();
        assert_eq!(cmds.len(), 4);
        assert!(matches!(cmds[1], Command::Refine(0, _)));
        assert_eq!(cmds[0].to_string(), "(set-task! (?0 : (A -> A)))");
    }

    #[test]
    fn malformed_commands() {
        assert!(parse_commands("(refine x Z)").is_err());
        assert!(parse_commands("(def (Z : Nat))").is_err());
        assert!(parse_commands("(frobnicate)").is_err());
        assert!(parse_commands("x").is_err());
    }

    #[test]
    fn depth_counting() {
        assert_eq!(open_depth("(a (b"), 2);
        assert_eq!(open_depth("(a) ; (("), 0);
    }

    #[test]
    fn runs_a_script() {
        let mut r = Runner::default();
        let steps = r
            .run_script(
                "(postulate A Type)
                 (set-task (? : (A -> A)))
                 (refine 0 (λ x => ?))
                 (goals)
                 (refine 7 x)
                 (refine 1 x)",
            )
            .unwrap();
        let out: Vec<String> = steps.iter().map(Step::output).collect();
        assert_eq!(out[0], "Postulated A");
        assert_eq!(out[1], "Task is now (?0 : (A -> A))");
        assert_eq!(out[2], "Task is now ((λ x => ?1) : (A -> A))");
        assert_eq!(out[3], "1 goal\n?1 : A\n    x : A");
        assert_eq!(out[4], "error: no goal numbered 7");
        assert_eq!(out[5], "Task is now ((λ x => x) : (A -> A))");
    }

    #[test]
    fn normalize_and_check_proof() {
        let mut r = Runner::new(GlobalEnv::new(), Printer::new(true));
        let steps = r
            .run_script("(normalize ((λ x => (S x)) Z)) (check-proof (Z : Nat)) (check-proof Z)")
            .unwrap();
        assert_eq!(steps[0].output(), "(S Z)");
        assert_eq!(steps[1].output(), "Checked (Z : Nat)");
        assert!(steps[2].result.is_err());
    }
}
