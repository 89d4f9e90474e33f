use thiserror::Error;

use super::{alpha_equiv, free_vars, subst_with, FreshCounter};
use crate::environment::GlobalEnv;
use crate::syntax::{pretty, Expr};

/// Reduction steps allowed per whnf/normalize call unless overridden.
pub const DEFAULT_STEP_BUDGET: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("reduction budget of {budget} steps exceeded while reducing {}", pretty(.term))]
    BudgetExceeded { budget: u64, term: Expr },
}

/// Weak-head and full reduction against a global environment.
///
/// One reducer carries one step budget; every beta, delta (unfolding a
/// definition), annotation-erasure and eliminator step consumes one unit.
pub struct Reducer<'a> {
    env: &'a GlobalEnv,
    fresh: &'a mut FreshCounter,
    budget: u64,
    remaining: u64,
    origin: Option<Expr>,
}

impl<'a> Reducer<'a> {
    pub fn new(env: &'a GlobalEnv, fresh: &'a mut FreshCounter) -> Self {
        let budget = env.step_budget();
        Reducer {
            env,
            fresh,
            budget,
            remaining: budget,
            origin: None,
        }
    }

    fn tick(&mut self, at: &Expr) -> Result<(), ReductionError> {
        if self.remaining == 0 {
            return Err(ReductionError::BudgetExceeded {
                budget: self.budget,
                term: self.origin.clone().unwrap_or_else(|| at.clone()),
            });
        }
        self.remaining -= 1;
        Ok(())
    }

    /// Reduces until the head is a constructor, binder, sort, or is stuck.
    pub fn whnf(&mut self, e: &Expr) -> Result<Expr, ReductionError> {
        if self.origin.is_none() {
            self.origin = Some(e.clone());
        }
        let mut cur = e.clone();
        loop {
            cur = match cur {
                Expr::Var(ref x) => match self.env.body_of(x) {
                    Some(body) => {
                        self.tick(&cur)?;
                        body.clone()
                    }
                    None => return Ok(cur),
                },
                Expr::Ann(t, _) => {
                    self.tick(&t)?;
                    *t
                }
                Expr::App(f, a) => match self.whnf(&f)? {
                    Expr::Lam(x, body) => {
                        self.tick(&body)?;
                        subst_with(self.fresh, &body, &x, &a)
                    }
                    head => return Ok(Expr::App(Box::new(head), a)),
                },
                Expr::AndElim0(p) => match self.whnf(&p)? {
                    Expr::AndIntro(l, _) => {
                        self.tick(&l)?;
                        *l
                    }
                    stuck => return Ok(Expr::AndElim0(Box::new(stuck))),
                },
                Expr::AndElim1(p) => match self.whnf(&p)? {
                    Expr::AndIntro(_, r) => {
                        self.tick(&r)?;
                        *r
                    }
                    stuck => return Ok(Expr::AndElim1(Box::new(stuck))),
                },
                Expr::OrElim(v, f, g) => match self.whnf(&v)? {
                    Expr::OrIntro0(t) => {
                        self.tick(&t)?;
                        Expr::App(f, t)
                    }
                    Expr::OrIntro1(t) => {
                        self.tick(&t)?;
                        Expr::App(g, t)
                    }
                    stuck => return Ok(Expr::OrElim(Box::new(stuck), f, g)),
                },
                Expr::EqElim(t, p, pt, w, peq) => match self.whnf(&peq)? {
                    Expr::EqRefl(_) => {
                        self.tick(&pt)?;
                        *pt
                    }
                    stuck => return Ok(Expr::EqElim(t, p, pt, w, Box::new(stuck))),
                },
                Expr::NatInd(p, z, s, n) => match self.whnf(&n)? {
                    Expr::Zero => {
                        self.tick(&z)?;
                        *z
                    }
                    Expr::Succ(m) => {
                        self.tick(&m)?;
                        let rec = Expr::NatInd(p, z, s.clone(), m.clone());
                        Expr::apps(*s, [*m, rec])
                    }
                    stuck => return Ok(Expr::NatInd(p, z, s, Box::new(stuck))),
                },
                Expr::ExElim(v, f, b) => match self.whnf(&b)? {
                    Expr::ExIntro(_, a, pa) => {
                        self.tick(&a)?;
                        Expr::apps(*f, [*a, *pa])
                    }
                    stuck => return Ok(Expr::ExElim(v, f, Box::new(stuck))),
                },
                other => return Ok(other),
            };
        }
    }

    /// Full normal form, reducing under binders.
    pub fn normalize(&mut self, e: &Expr) -> Result<Expr, ReductionError> {
        if self.origin.is_none() {
            self.origin = Some(e.clone());
        }
        // After whnf the head cannot become a redex again, so the remaining
        // work is purely structural.
        let head = self.whnf(e)?;
        let head = self.unshadow(head);
        head.try_map_children(|c| self.normalize(c))
    }

    // A binder named like a global would make whnf unfold the bound
    // variable, so such binders are renamed before going underneath.
    fn unshadow(&mut self, e: Expr) -> Expr {
        let (x, body) = match &e {
            Expr::Lam(x, b) | Expr::Pi(x, _, b) | Expr::Sigma(x, _, b)
                if self.env.contains(x) =>
            {
                (x.clone(), b)
            }
            _ => return e,
        };
        let fv = free_vars(body);
        let renamed = self.fresh.fresh(&x, |n| fv.contains(n));
        let body = Box::new(subst_with(self.fresh, body, &x, &Expr::Var(renamed.clone())));
        match e {
            Expr::Lam(..) => Expr::Lam(renamed, body),
            Expr::Pi(_, d, _) => Expr::Pi(renamed, d, body),
            Expr::Sigma(_, d, _) => Expr::Sigma(renamed, d, body),
            _ => unreachable!(),
        }
    }

    pub fn def_equal(&mut self, a: &Expr, b: &Expr) -> Result<bool, ReductionError> {
        if alpha_equiv(a, b) {
            return Ok(true);
        }
        let na = self.normalize(a)?;
        let nb = self.normalize(b)?;
        Ok(alpha_equiv(&na, &nb))
    }
}

pub fn whnf(env: &GlobalEnv, e: &Expr) -> Result<Expr, ReductionError> {
    Reducer::new(env, &mut FreshCounter::new()).whnf(e)
}

pub fn normalize(env: &GlobalEnv, e: &Expr) -> Result<Expr, ReductionError> {
    Reducer::new(env, &mut FreshCounter::new()).normalize(e)
}

/// Alpha-equivalence of normal forms.
pub fn def_equal(env: &GlobalEnv, a: &Expr, b: &Expr) -> Result<bool, ReductionError> {
    Reducer::new(env, &mut FreshCounter::new()).def_equal(a, b)
}
