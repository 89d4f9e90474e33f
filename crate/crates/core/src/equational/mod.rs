//! Substitution, alpha-equivalence, reduction and definitional equality.
//!
//! Terms use names, not indices. Capture is avoided by renaming binders
//! to generated names of the form `x%n`, which the parser never accepts.
//! Definitional equality is beta, delta (global unfolding) and the
//! eliminator rules; there is no eta.

mod alpha;
mod reduce;
mod subst;

pub use alpha::alpha_equiv;
pub use reduce::{
    def_equal, normalize, whnf, ReductionError, Reducer, DEFAULT_STEP_BUDGET,
};
pub use subst::{free_vars, occurs_free, subst, subst_with};

use std::collections::HashSet;

/// Supply of generated binder names.
#[derive(Debug, Default, Clone)]
pub struct FreshCounter {
    next: u64,
}

impl FreshCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Next unused value; each call consumes one.
    pub fn peek(&self) -> u64 {
        self.next
    }

    /// A name derived from `base` that `taken` rejects. Any `%n` suffix on
    /// `base` is dropped first so renamed names do not pile up suffixes.
    pub fn fresh(&mut self, base: &str, taken: impl Fn(&str) -> bool) -> String {
        let stem = base.split('%').next().unwrap_or(base);
        loop {
            let name = format!("{stem}%{}", self.next);
            self.next += 1;
            if !taken(&name) {
                return name;
            }
        }
    }

    /// `base` itself if it is free to use, otherwise a generated name.
    pub fn pick(&mut self, base: &str, avoid: &HashSet<String>) -> String {
        if !avoid.contains(base) && base != crate::syntax::ANON {
            base.to_string()
        } else {
            self.fresh(base, |n| avoid.contains(n))
        }
    }
}
