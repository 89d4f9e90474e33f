//! Global definitions and postulates.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::equational::DEFAULT_STEP_BUDGET;
use crate::kernel::{self, Context, Goal, TypeError};
use crate::syntax::{is_identifier, Expr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub ty: Expr,
    /// `None` for postulates, which never unfold.
    pub body: Option<Expr>,
}

impl Entry {
    pub fn is_postulate(&self) -> bool {
        self.body.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvError {
    #[error("{0} is already defined")]
    DuplicateName(String),
    #[error("{0} is not a valid name")]
    InvalidName(String),
    #[error("definition must be of form (term : type)")]
    NotAnnotated,
    #[error("definitions may not contain holes")]
    HoleInDefinition,
    #[error("proof is incomplete: {} goal(s) remain", .0.len())]
    Incomplete(Vec<Goal>),
    #[error(transparent)]
    Type(#[from] TypeError),
}

/// An immutable, ordered list of global entries. Updates return a new value.
#[derive(Clone, Debug)]
pub struct GlobalEnv {
    entries: Arc<Vec<Entry>>,
    index: Arc<HashMap<String, usize>>,
    step_budget: u64,
}

impl Default for GlobalEnv {
    fn default() -> Self {
        GlobalEnv {
            entries: Arc::default(),
            index: Arc::default(),
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }
}

impl PartialEq for GlobalEnv {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries && self.step_budget == other.step_budget
    }
}

impl GlobalEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_step_budget(mut self, budget: u64) -> Self {
        self.step_budget = budget;
        self
    }

    pub fn step_budget(&self) -> u64 {
        self.step_budget
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn type_of(&self, name: &str) -> Option<&Expr> {
        self.get(name).map(|e| &e.ty)
    }

    /// Body of a definition; `None` for postulates and unknown names.
    pub fn body_of(&self, name: &str) -> Option<&Expr> {
        self.get(name).and_then(|e| e.body.as_ref())
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn fresh_name(&self, name: &str) -> Result<(), EnvError> {
        if !is_identifier(name) {
            return Err(EnvError::InvalidName(name.to_string()));
        }
        if self.contains(name) {
            return Err(EnvError::DuplicateName(name.to_string()));
        }
        Ok(())
    }

    fn push(&self, entry: Entry) -> GlobalEnv {
        let mut entries = (*self.entries).clone();
        let mut index = (*self.index).clone();
        index.insert(entry.name.clone(), entries.len());
        entries.push(entry);
        GlobalEnv {
            entries: Arc::new(entries),
            index: Arc::new(index),
            step_budget: self.step_budget,
        }
    }

    /// Checks `(body : ty)` and appends it under `name`.
    pub fn define(&self, name: &str, annotated: &Expr) -> Result<GlobalEnv, EnvError> {
        self.fresh_name(name)?;
        let Expr::Ann(body, ty) = annotated else {
            return Err(EnvError::NotAnnotated);
        };
        if body.has_holes() {
            return Err(EnvError::HoleInDefinition);
        }
        kernel::infer(self, &Context::new(), annotated)?;
        Ok(self.push(Entry {
            name: name.to_string(),
            ty: (**ty).clone(),
            body: Some((**body).clone()),
        }))
    }

    /// Appends an opaque assumption `name : ty`.
    pub fn postulate(&self, name: &str, ty: Expr) -> Result<GlobalEnv, EnvError> {
        self.fresh_name(name)?;
        if ty.has_holes() {
            return Err(EnvError::HoleInDefinition);
        }
        kernel::check_type(self, &Context::new(), &ty)?;
        Ok(self.push(Entry {
            name: name.to_string(),
            ty,
            body: None,
        }))
    }

    /// Succeeds iff `(term : type)` infers in the empty context with no goals.
    pub fn check_proof(&self, annotated: &Expr) -> Result<Expr, EnvError> {
        if !matches!(annotated, Expr::Ann(..)) {
            return Err(EnvError::NotAnnotated);
        }
        let inferred = kernel::infer(self, &Context::new(), annotated)?;
        if !inferred.goals.is_empty() {
            return Err(EnvError::Incomplete(inferred.goals));
        }
        Ok(inferred.ty)
    }

    /// Re-checks every entry against the prefix that precedes it.
    pub fn verify(&self) -> Result<(), EnvError> {
        let mut prefix = GlobalEnv::new().with_step_budget(self.step_budget);
        for e in self.entries.iter() {
            prefix = match &e.body {
                Some(body) => prefix.define(&e.name, &Expr::ann(body.clone(), e.ty.clone()))?,
                None => prefix.postulate(&e.name, e.ty.clone())?,
            };
        }
        Ok(())
    }
}
