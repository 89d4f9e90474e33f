//! A nano proof assistant: a dependently typed lambda calculus in which
//! propositions are types and proofs are terms, checked bidirectionally,
//! with interactive refinement of holes.

// Type errors carry the context and terms they mention; they are returned
// by value throughout and are not on any hot path.
#![allow(clippy::result_large_err)]

pub mod environment;
pub mod equational;
pub mod kernel;
pub mod protocol;
pub mod script;
pub mod semantics;
pub mod session;
pub mod syntax;

pub use environment::{EnvError, GlobalEnv};
pub use kernel::{Context, Goal, TypeError};
pub use session::{Session, SessionError};
pub use syntax::{parse, pretty, Expr};
