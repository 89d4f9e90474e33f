//! Interactive proof construction with numbered holes.
//!
//! A session owns a global environment and at most one task: an annotated
//! expression `(term : type)` whose term may contain holes `?n`. Every hole
//! is a goal. `refine` replaces one goal with a term that may itself contain
//! holes; the whole task is then re-elaborated so that the goal table always
//! comes from a fresh run of the checker.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::environment::{EnvError, GlobalEnv};
use crate::kernel::{self, Context, Goal, TypeError};
use crate::syntax::{Expr, Printer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("task must be of form (term : type)")]
    NotAnnotated,
    #[error("no goal numbered {0}")]
    NoGoal(usize),
    #[error("nothing to undo")]
    NothingToUndo,
    #[error("goal table out of sync with task: holes {holes:?}, goals {goals:?}")]
    Incoherent {
        holes: Vec<usize>,
        goals: Vec<usize>,
    },
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Env(#[from] EnvError),
}

/// The part of a session that `undo` restores.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Task {
    current: Expr,
    goals: BTreeMap<usize, Goal>,
    hole_counter: usize,
}

impl Task {
    /// Elaborates `current` and rebuilds its goal table.
    fn elaborate(env: &GlobalEnv, current: Expr, hole_counter: usize) -> Result<Task, SessionError> {
        let inferred = kernel::infer(env, &Context::new(), &current)?;
        let goals: BTreeMap<usize, Goal> =
            inferred.goals.into_iter().map(|g| (g.number, g)).collect();
        let holes: BTreeSet<usize> = current.holes().into_iter().collect();
        if !holes.iter().eq(goals.keys()) {
            return Err(SessionError::Incoherent {
                holes: holes.into_iter().collect(),
                goals: goals.keys().copied().collect(),
            });
        }
        Ok(Task {
            current,
            goals,
            hole_counter,
        })
    }

    pub fn current(&self) -> &Expr {
        &self.current
    }

    pub fn goals(&self) -> impl Iterator<Item = &Goal> {
        self.goals.values()
    }

    pub fn goal(&self, n: usize) -> Option<&Goal> {
        self.goals.get(&n)
    }

    pub fn goal_count(&self) -> usize {
        self.goals.len()
    }

    pub fn hole_counter(&self) -> usize {
        self.hole_counter
    }

    pub fn is_complete(&self) -> bool {
        self.goals.is_empty()
    }
}

/// A goal rendered for display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoalView {
    pub number: usize,
    pub ty: String,
    pub ctx: Vec<(String, String)>,
}

impl GoalView {
    pub fn new(goal: &Goal, printer: Printer) -> Self {
        GoalView {
            number: goal.number,
            ty: printer.print(&goal.ty),
            ctx: goal
                .ctx
                .iter()
                .map(|(n, t)| (n.to_string(), printer.print(t)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Session {
    env: GlobalEnv,
    task: Option<Task>,
    history: Vec<Task>,
}

impl Session {
    pub fn new(env: GlobalEnv) -> Self {
        Session {
            env,
            task: None,
            history: Vec::new(),
        }
    }

    pub fn env(&self) -> &GlobalEnv {
        &self.env
    }

    pub fn task(&self) -> Option<&Task> {
        self.task.as_ref()
    }

    pub fn can_undo(&self) -> bool {
        !self.history.is_empty()
    }

    /// Starts a new task. Holes are numbered left to right from 0 and the
    /// undo history is cleared.
    pub fn set_task(&mut self, e: &Expr) -> Result<&Task, SessionError> {
        if !matches!(e, Expr::Ann(..)) {
            return Err(SessionError::NotAnnotated);
        }
        let mut counter = 0;
        let current = e.renumber_holes(&mut counter);
        let task = Task::elaborate(&self.env, current, counter)?;
        self.history.clear();
        Ok(self.task.insert(task))
    }

    /// Replaces goal `n` with `e`. On any error the session is unchanged.
    pub fn refine(&mut self, n: usize, e: &Expr) -> Result<&Task, SessionError> {
        let task = self.task.as_ref().ok_or(SessionError::NoGoal(n))?;
        let goal = task.goals.get(&n).ok_or(SessionError::NoGoal(n))?;
        let mut counter = task.hole_counter;
        let filler = e.renumber_holes(&mut counter);
        kernel::check(&self.env, &goal.ctx, &filler, &goal.ty)?;
        let spliced = task.current.fill_hole(n, &filler);
        let next = Task::elaborate(&self.env, spliced, counter)?;
        let prev = self.task.replace(next).expect("task present");
        self.history.push(prev);
        Ok(self.task.as_ref().expect("task present"))
    }

    pub fn undo(&mut self) -> Result<&Task, SessionError> {
        let prev = self.history.pop().ok_or(SessionError::NothingToUndo)?;
        Ok(self.task.insert(prev))
    }

    /// Open goals sorted by number; empty when there is no task.
    pub fn goals(&self, printer: Printer) -> Vec<GoalView> {
        self.task
            .iter()
            .flat_map(|t| t.goals())
            .map(|g| GoalView::new(g, printer))
            .collect()
    }

    pub fn define(&mut self, name: &str, annotated: &Expr) -> Result<(), SessionError> {
        self.env = self.env.define(name, annotated)?;
        Ok(())
    }

    pub fn postulate(&mut self, name: &str, ty: Expr) -> Result<(), SessionError> {
        self.env = self.env.postulate(name, ty)?;
        Ok(())
    }

    /// Drops the task and its history but keeps the environment.
    pub fn clear_task(&mut self) {
        self.task = None;
        self.history.clear();
    }

    /// `Task is now …` for the current task.
    pub fn render(&self, printer: Printer) -> Option<String> {
        self.task
            .as_ref()
            .map(|t| format!("Task is now {}", printer.print(&t.current)))
    }
}

/// `1 goal`, `3 goals`.
pub fn goal_count_text(n: usize) -> String {
    format!("{n} goal{}", if n == 1 { "" } else { "s" })
}
