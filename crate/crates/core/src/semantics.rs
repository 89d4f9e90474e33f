//! Classical truth-table semantics for the propositional fragment.
//!
//! Used as an oracle: whatever the checker proves without classical
//! postulates must be true under every valuation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::environment::GlobalEnv;
use crate::equational::{free_vars, occurs_free};
use crate::syntax::{parse, pretty, Expr, ParseError, ANON};

/// Default bound on the number of distinct atoms `entails` will enumerate.
pub const DEFAULT_ATOM_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PropFormula {
    Atom(String),
    Implies(Box<PropFormula>, Box<PropFormula>),
    Conj(Box<PropFormula>, Box<PropFormula>),
    Disj(Box<PropFormula>, Box<PropFormula>),
    Falsum,
}

pub type Valuation = BTreeMap<String, bool>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("valuation does not assign {0}")]
    MissingAtom(String),
    #[error("{count} atoms exceed the cap of {cap}")]
    TooManyAtoms { count: usize, cap: usize },
    #[error("not a propositional formula: {0}")]
    NotPropositional(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl PropFormula {
    pub fn atom(name: impl Into<String>) -> Self {
        PropFormula::Atom(name.into())
    }

    pub fn implies(l: PropFormula, r: PropFormula) -> Self {
        PropFormula::Implies(Box::new(l), Box::new(r))
    }

    pub fn conj(l: PropFormula, r: PropFormula) -> Self {
        PropFormula::Conj(Box::new(l), Box::new(r))
    }

    pub fn disj(l: PropFormula, r: PropFormula) -> Self {
        PropFormula::Disj(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: PropFormula) -> Self {
        PropFormula::implies(f, PropFormula::Falsum)
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            PropFormula::Atom(a) => {
                out.insert(a.clone());
            }
            PropFormula::Implies(l, r) | PropFormula::Conj(l, r) | PropFormula::Disj(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
            PropFormula::Falsum => {}
        }
    }

    /// The formula as a type in surface syntax.
    pub fn to_expr(&self) -> Expr {
        match self {
            PropFormula::Atom(a) => Expr::var(a.clone()),
            PropFormula::Implies(l, r) => Expr::arrow(l.to_expr(), r.to_expr()),
            PropFormula::Conj(l, r) => Expr::and(l.to_expr(), r.to_expr()),
            PropFormula::Disj(l, r) => Expr::or(l.to_expr(), r.to_expr()),
            PropFormula::Falsum => Expr::Bot,
        }
    }
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty(&self.to_expr()))
    }
}

fn is_atom(env: &GlobalEnv, name: &str) -> bool {
    env.get(name)
        .is_some_and(|e| e.is_postulate() && e.ty == Expr::Type)
}

/// The propositional reading of a type, or `None` when it uses anything
/// beyond →, ∧, ∨, ⊥ and postulated atoms.
pub fn extract(env: &GlobalEnv, e: &Expr) -> Option<PropFormula> {
    Some(match e {
        Expr::Var(x) if is_atom(env, x) => PropFormula::Atom(x.clone()),
        Expr::Pi(x, dom, cod) if x == ANON || !occurs_free(cod, x) => {
            PropFormula::implies(extract(env, dom)?, extract(env, cod)?)
        }
        Expr::And(l, r) => PropFormula::conj(extract(env, l)?, extract(env, r)?),
        Expr::Or(l, r) => PropFormula::disj(extract(env, l)?, extract(env, r)?),
        Expr::Bot => PropFormula::Falsum,
        _ => return None,
    })
}

pub fn eval(v: &Valuation, f: &PropFormula) -> Result<bool, SemanticsError> {
    Ok(match f {
        PropFormula::Atom(a) => *v
            .get(a)
            .ok_or_else(|| SemanticsError::MissingAtom(a.clone()))?,
        PropFormula::Implies(l, r) => !eval(v, l)? || eval(v, r)?,
        PropFormula::Conj(l, r) => eval(v, l)? && eval(v, r)?,
        PropFormula::Disj(l, r) => eval(v, l)? || eval(v, r)?,
        PropFormula::Falsum => false,
    })
}

/// A valuation making every hypothesis true and the goal false, if any.
pub fn countermodel(
    hyps: &[PropFormula],
    goal: &PropFormula,
    cap: usize,
) -> Result<Option<Valuation>, SemanticsError> {
    let mut atoms = goal.atoms();
    for h in hyps {
        atoms.extend(h.atoms());
    }
    if atoms.len() > cap {
        return Err(SemanticsError::TooManyAtoms {
            count: atoms.len(),
            cap,
        });
    }
    let atoms: Vec<String> = atoms.into_iter().collect();
    for bits in 0u64..(1u64 << atoms.len()) {
        let v: Valuation = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), bits >> i & 1 == 1))
            .collect();
        let mut hyps_hold = true;
        for h in hyps {
            if !eval(&v, h)? {
                hyps_hold = false;
                break;
            }
        }
        if hyps_hold && !eval(&v, goal)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// Γ ⊨ T: every valuation satisfying all of `hyps` satisfies `goal`.
pub fn entails(hyps: &[PropFormula], goal: &PropFormula) -> Result<bool, SemanticsError> {
    entails_with_cap(hyps, goal, DEFAULT_ATOM_CAP)
}

pub fn entails_with_cap(
    hyps: &[PropFormula],
    goal: &PropFormula,
    cap: usize,
) -> Result<bool, SemanticsError> {
    Ok(countermodel(hyps, goal, cap)?.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TautReport {
    pub formula: PropFormula,
    pub countermodel: Option<Valuation>,
}

impl TautReport {
    pub fn is_tautology(&self) -> bool {
        self.countermodel.is_none()
    }
}

/// Decides a formula given in surface syntax. Every free name is read as an
/// atom.
pub fn taut(src: &str) -> Result<TautReport, SemanticsError> {
    let e = parse(src)?;
    let env = free_vars(&e).into_iter().fold(GlobalEnv::new(), |env, a| {
        env.postulate(&a, Expr::Type).expect("free names are valid identifiers")
    });
    let formula = extract(&env, &e).ok_or_else(|| SemanticsError::NotPropositional(pretty(&e)))?;
    let countermodel = countermodel(&[], &formula, DEFAULT_ATOM_CAP)?;
    Ok(TautReport {
        formula,
        countermodel,
    })
}
