//! The bidirectional type checker.
//!
//! `check` handles Γ ⊢ e ⇐ T and `infer` handles Γ ⊢ e ⇒ T. Forms with a
//! checking rule use it first; everything else falls through to the turn
//! rule, which infers a type and compares it with the expected one up to
//! definitional equality. Holes check against any type and are recorded as
//! goals together with the context they were found in.

use std::collections::HashSet;
use std::fmt;

use crate::environment::GlobalEnv;
use crate::equational::{free_vars, occurs_free, subst_with, FreshCounter, Reducer, ReductionError};
use crate::syntax::{pretty, Expr, ANON};

/// Ordered assumptions; the innermost binding is last and wins on lookup.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context {
    bindings: Vec<(String, Expr)>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, ty: Expr) {
        self.bindings.push((name.into(), ty));
    }

    pub fn extended(&self, name: impl Into<String>, ty: Expr) -> Context {
        let mut ctx = self.clone();
        ctx.push(name, ty);
        ctx
    }

    pub fn lookup(&self, name: &str) -> Option<&Expr> {
        self.bindings
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
    }

    pub fn binds(&self, name: &str) -> bool {
        self.bindings.iter().any(|(n, _)| n == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Expr)> {
        self.bindings.iter().map(|(n, t)| (n.as_str(), t))
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// Does any assumption's type mention `x` free?
    fn mentions(&self, x: &str) -> bool {
        self.bindings.iter().any(|(_, t)| occurs_free(t, x))
    }
}

impl FromIterator<(String, Expr)> for Context {
    fn from_iter<I: IntoIterator<Item = (String, Expr)>>(iter: I) -> Self {
        Context {
            bindings: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n} : {}", pretty(t))?;
        }
        Ok(())
    }
}

/// An open hole: what it must prove and what it may use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Goal {
    pub number: usize,
    pub ty: Expr,
    pub ctx: Context,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    CannotCheck,
    CannotInfer,
    NotAFunction,
    Budget,
    HoleInType,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::CannotCheck => "cannot-check",
            ErrorKind::CannotInfer => "cannot-infer",
            ErrorKind::NotAFunction => "not-a-function",
            ErrorKind::Budget => "budget",
            ErrorKind::HoleInType => "hole-in-type",
        }
    }
}

/// A failed judgment with everything needed to show it to a user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeError {
    pub kind: ErrorKind,
    pub ctx: Context,
    pub term: Expr,
    pub expected: Option<Expr>,
    pub found: Option<Expr>,
    pub note: Option<String>,
}

impl TypeError {
    fn new(kind: ErrorKind, ctx: &Context, term: &Expr) -> Self {
        TypeError {
            kind,
            ctx: ctx.clone(),
            term: term.clone(),
            expected: None,
            found: None,
            note: None,
        }
    }

    fn cannot_check(ctx: &Context, term: &Expr, expected: &Expr) -> Self {
        TypeError {
            expected: Some(expected.clone()),
            ..TypeError::new(ErrorKind::CannotCheck, ctx, term)
        }
    }

    fn cannot_infer(ctx: &Context, term: &Expr) -> Self {
        TypeError::new(ErrorKind::CannotInfer, ctx, term)
    }

    fn found(mut self, ty: &Expr) -> Self {
        self.found = Some(ty.clone());
        self
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = pretty(&self.term);
        match self.kind {
            ErrorKind::CannotCheck => {
                write!(f, "cannot check {term}")?;
                if let Some(t) = &self.expected {
                    write!(f, " against type {}", pretty(t))?;
                }
            }
            ErrorKind::CannotInfer => write!(f, "cannot infer a type for {term}")?,
            ErrorKind::NotAFunction => write!(f, "cannot apply {term}")?,
            ErrorKind::Budget => write!(f, "reduction budget exceeded at {term}")?,
            ErrorKind::HoleInType => write!(f, "holes are not allowed in the type {term}")?,
        }
        if let Some(t) = &self.found {
            write!(f, "; its type is {}", pretty(t))?;
        }
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        if !self.ctx.is_empty() {
            write!(f, " in context [{}]", self.ctx)?;
        }
        Ok(())
    }
}

impl std::error::Error for TypeError {}

/// Result of a successful inference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inference {
    pub ty: Expr,
    pub goals: Vec<Goal>,
}

/// Γ ⊢ e ⇐ ty. Returns the goals registered by holes in `e`.
pub fn check(env: &GlobalEnv, ctx: &Context, e: &Expr, ty: &Expr) -> Result<Vec<Goal>, TypeError> {
    let mut c = Checker::new(env);
    c.check(ctx, e, ty)?;
    Ok(c.into_goals())
}

/// Γ ⊢ e ⇒ T.
pub fn infer(env: &GlobalEnv, ctx: &Context, e: &Expr) -> Result<Inference, TypeError> {
    let mut c = Checker::new(env);
    let ty = c.infer(ctx, e)?;
    Ok(Inference {
        ty,
        goals: c.into_goals(),
    })
}

/// Γ ⊢ e ⇐ Type.
pub fn check_type(env: &GlobalEnv, ctx: &Context, e: &Expr) -> Result<Vec<Goal>, TypeError> {
    check(env, ctx, e, &Expr::Type)
}

struct Checker<'e> {
    env: &'e GlobalEnv,
    fresh: FreshCounter,
    goals: Vec<Goal>,
}

impl<'e> Checker<'e> {
    fn new(env: &'e GlobalEnv) -> Self {
        Checker {
            env,
            fresh: FreshCounter::new(),
            goals: Vec::new(),
        }
    }

    fn into_goals(mut self) -> Vec<Goal> {
        self.goals.sort_by_key(|g| g.number);
        self.goals
    }

    fn budget(ctx: &Context, term: &Expr, err: ReductionError) -> TypeError {
        TypeError::new(ErrorKind::Budget, ctx, term).note(err.to_string())
    }

    fn whnf(&mut self, ctx: &Context, e: &Expr) -> Result<Expr, TypeError> {
        Reducer::new(self.env, &mut self.fresh)
            .whnf(e)
            .map_err(|err| Self::budget(ctx, e, err))
    }

    fn conv(&mut self, ctx: &Context, a: &Expr, b: &Expr) -> Result<bool, TypeError> {
        Reducer::new(self.env, &mut self.fresh)
            .def_equal(a, b)
            .map_err(|err| Self::budget(ctx, a, err))
    }

    fn subst(&mut self, body: &Expr, x: &str, r: &Expr) -> Expr {
        if x == ANON {
            return body.clone();
        }
        subst_with(&mut self.fresh, body, x, r)
    }

    /// The name under which binder `x` (with domain `dom`) enters `ctx`.
    ///
    /// `x` is kept unless that would capture: it is `_`, a global, free in
    /// the domain or in `outer` (expressions that live outside the binder),
    /// or mentioned by an assumption already in the context. Otherwise a
    /// generated name avoiding everything in `scope` is used.
    fn binder_name(
        &mut self,
        ctx: &Context,
        x: &str,
        dom: &Expr,
        outer: &[&Expr],
        scope: &[&Expr],
    ) -> String {
        let clash = x == ANON
            || self.env.contains(x)
            || occurs_free(dom, x)
            || outer.iter().any(|e| occurs_free(e, x))
            || ctx.mentions(x);
        if !clash {
            return x.to_string();
        }
        let mut avoid: HashSet<String> = free_vars(dom);
        for (n, t) in ctx.iter() {
            avoid.insert(n.to_string());
            avoid.extend(free_vars(t));
        }
        for e in outer.iter().chain(scope) {
            avoid.extend(free_vars(e));
        }
        let env = self.env;
        self.fresh
            .fresh(x, |n| avoid.contains(n) || env.contains(n))
    }

    fn check(&mut self, ctx: &Context, e: &Expr, ty: &Expr) -> Result<(), TypeError> {
        match e {
            Expr::Hole(n) => {
                if !self.goals.iter().any(|g| g.number == *n) {
                    self.goals.push(Goal {
                        number: *n,
                        ty: ty.clone(),
                        ctx: ctx.clone(),
                    });
                }
                Ok(())
            }
            Expr::Lam(x, body) => match self.whnf(ctx, ty)? {
                Expr::Pi(y, dom, cod) => {
                    let cod_depends = y != ANON && occurs_free(&cod, &y);
                    if x == ANON && !cod_depends {
                        return self.check(ctx, body, &cod);
                    }
                    let outer: Vec<&Expr> = if x == &y { vec![] } else { vec![&cod] };
                    let name = self.binder_name(ctx, x, &dom, &outer, &[body, &cod]);
                    let body = if &name == x {
                        (**body).clone()
                    } else {
                        self.subst(body, x, &Expr::Var(name.clone()))
                    };
                    let cod = if y == name {
                        *cod
                    } else {
                        self.subst(&cod, &y, &Expr::Var(name.clone()))
                    };
                    self.check(&ctx.extended(name, *dom), &body, &cod)
                }
                other => Err(TypeError::cannot_check(ctx, e, ty)
                    .note(format!("{} is not a function type", pretty(&other)))),
            },
            Expr::AndIntro(a, b) => match self.whnf(ctx, ty)? {
                Expr::And(l, r) => {
                    self.check(ctx, a, &l)?;
                    self.check(ctx, b, &r)
                }
                _ => self.turn(ctx, e, ty),
            },
            Expr::OrIntro0(t) | Expr::OrIntro1(t) => match self.whnf(ctx, ty)? {
                Expr::Or(l, r) => {
                    let side = if matches!(e, Expr::OrIntro0(_)) { l } else { r };
                    self.check(ctx, t, &side)
                }
                _ => Err(TypeError::cannot_check(ctx, e, ty).note("expected a disjunction")),
            },
            Expr::OrElim(v, f, g) => {
                let vt = self.infer(ctx, v)?;
                match self.whnf(ctx, &vt)? {
                    Expr::Or(l, r) => {
                        self.check(ctx, f, &Expr::arrow(*l, ty.clone()))?;
                        self.check(ctx, g, &Expr::arrow(*r, ty.clone()))
                    }
                    _ => Err(TypeError::cannot_infer(ctx, v)
                        .found(&vt)
                        .note("∨-elim needs a disjunction")),
                }
            }
            Expr::BotElim(t) => self.check(ctx, t, &Expr::Bot),
            Expr::EqRefl(t) => match self.whnf(ctx, ty)? {
                Expr::Eq(a, b) => {
                    // `t` itself must be well typed, not merely convertible.
                    self.infer(ctx, t)?;
                    if self.conv(ctx, t, &a)? && self.conv(ctx, t, &b)? {
                        Ok(())
                    } else {
                        Err(TypeError::cannot_check(ctx, e, ty)
                            .note("sides are not definitionally equal"))
                    }
                }
                _ => self.turn(ctx, e, ty),
            },
            Expr::ExIntro(dom, a, pa) => match self.whnf(ctx, ty)? {
                Expr::Sigma(x, sdom, body) => {
                    self.check_sort(ctx, dom)?;
                    if !self.conv(ctx, dom, &sdom)? {
                        return Err(TypeError::cannot_check(ctx, e, ty)
                            .note(format!("witness type {} does not match", pretty(dom))));
                    }
                    self.check(ctx, a, &sdom)?;
                    let want = self.subst(&body, &x, a);
                    self.check(ctx, pa, &want)
                }
                _ => Err(TypeError::cannot_check(ctx, e, ty).note("expected an ∃ type")),
            },
            _ => self.turn(ctx, e, ty),
        }
    }

    fn turn(&mut self, ctx: &Context, e: &Expr, ty: &Expr) -> Result<(), TypeError> {
        let found = self.infer(ctx, e).map_err(|err| match err.kind {
            // Surface the original judgment for forms that never infer.
            ErrorKind::CannotInfer if &err.term == e => {
                TypeError::cannot_check(ctx, e, ty).note("type cannot be inferred")
            }
            _ => err,
        })?;
        if self.conv(ctx, ty, &found)? {
            Ok(())
        } else {
            Err(TypeError::cannot_check(ctx, e, ty).found(&found))
        }
    }

    fn check_sort(&mut self, ctx: &Context, e: &Expr) -> Result<(), TypeError> {
        self.check(ctx, e, &Expr::Type)
    }

    fn infer(&mut self, ctx: &Context, e: &Expr) -> Result<Expr, TypeError> {
        match e {
            Expr::Var(x) => ctx
                .lookup(x)
                .or_else(|| self.env.type_of(x))
                .cloned()
                .ok_or_else(|| TypeError::cannot_infer(ctx, e).note(format!("unbound name {x}"))),
            Expr::Ann(t, ty) => {
                if ty.has_holes() {
                    return Err(TypeError::new(ErrorKind::HoleInType, ctx, ty));
                }
                self.check_sort(ctx, ty)?;
                self.check(ctx, t, ty)?;
                Ok((**ty).clone())
            }
            Expr::App(f, a) => {
                let ft = self.infer(ctx, f)?;
                match self.whnf(ctx, &ft)? {
                    Expr::Pi(x, dom, cod) => {
                        self.check(ctx, a, &dom)?;
                        Ok(self.subst(&cod, &x, a))
                    }
                    _ => Err(TypeError::new(ErrorKind::NotAFunction, ctx, f).found(&ft)),
                }
            }
            Expr::Type => Ok(Expr::Type),
            Expr::Pi(x, dom, body) | Expr::Sigma(x, dom, body) => {
                self.check_sort(ctx, dom)?;
                if x == ANON {
                    self.check_sort(ctx, body)?;
                } else {
                    let name = self.binder_name(ctx, x, dom, &[], &[body]);
                    let body = if &name == x {
                        (**body).clone()
                    } else {
                        self.subst(body, x, &Expr::Var(name.clone()))
                    };
                    self.check_sort(&ctx.extended(name, (**dom).clone()), &body)?;
                }
                Ok(Expr::Type)
            }
            Expr::Bot | Expr::Nat => Ok(Expr::Type),
            Expr::Zero => Ok(Expr::Nat),
            Expr::Succ(n) => {
                self.check(ctx, n, &Expr::Nat)?;
                Ok(Expr::Nat)
            }
            Expr::And(l, r) | Expr::Or(l, r) => {
                self.check_sort(ctx, l)?;
                self.check_sort(ctx, r)?;
                Ok(Expr::Type)
            }
            Expr::Eq(l, r) => {
                let lt = self.infer(ctx, l)?;
                self.check(ctx, r, &lt)?;
                Ok(Expr::Type)
            }
            Expr::AndIntro(a, b) => {
                let at = self.infer(ctx, a)?;
                let bt = self.infer(ctx, b)?;
                Ok(Expr::and(at, bt))
            }
            Expr::AndElim0(v) | Expr::AndElim1(v) => {
                let vt = self.infer(ctx, v)?;
                match self.whnf(ctx, &vt)? {
                    Expr::And(l, r) => Ok(if matches!(e, Expr::AndElim0(_)) { *l } else { *r }),
                    _ => Err(TypeError::cannot_infer(ctx, e)
                        .found(&vt)
                        .note("∧-elim needs a conjunction")),
                }
            }
            Expr::EqRefl(t) => {
                self.infer(ctx, t)?;
                Ok(Expr::eq((**t).clone(), (**t).clone()))
            }
            Expr::EqElim(t, prop, pt, w, peq) => {
                let tt = self.infer(ctx, t)?;
                self.check(ctx, prop, &Expr::arrow(tt.clone(), Expr::Type))?;
                self.check(ctx, pt, &Expr::app((**prop).clone(), (**t).clone()))?;
                self.check(ctx, w, &tt)?;
                self.check(ctx, peq, &Expr::eq((**t).clone(), (**w).clone()))?;
                Ok(Expr::app((**prop).clone(), (**w).clone()))
            }
            Expr::NatInd(prop, zc, sc, n) => {
                self.check(ctx, prop, &Expr::arrow(Expr::Nat, Expr::Type))?;
                self.check(ctx, zc, &Expr::app((**prop).clone(), Expr::Zero))?;
                let k = self.fresh.pick("k", &free_vars(prop));
                let step = Expr::pi(
                    k.clone(),
                    Expr::Nat,
                    Expr::arrow(
                        Expr::app((**prop).clone(), Expr::var(k.clone())),
                        Expr::app((**prop).clone(), Expr::succ(Expr::var(k))),
                    ),
                );
                self.check(ctx, sc, &step)?;
                self.check(ctx, n, &Expr::Nat)?;
                Ok(Expr::app((**prop).clone(), (**n).clone()))
            }
            Expr::ExElim(v, f, b) => {
                self.check_sort(ctx, v)?;
                let bt = self.infer(ctx, b)?;
                match self.whnf(ctx, &bt)? {
                    Expr::Sigma(x, dom, body) => {
                        let (x, body) = if x != ANON && occurs_free(v, &x) {
                            let mut avoid = free_vars(v);
                            avoid.extend(free_vars(&body));
                            let fresh = self.fresh.fresh(&x, |n| avoid.contains(n));
                            let body = self.subst(&body, &x, &Expr::Var(fresh.clone()));
                            (fresh, body)
                        } else {
                            (x, *body)
                        };
                        let want = Expr::pi(x, *dom, Expr::arrow(body, (**v).clone()));
                        self.check(ctx, f, &want)?;
                        Ok((**v).clone())
                    }
                    _ => Err(TypeError::cannot_infer(ctx, b)
                        .found(&bt)
                        .note("∃-elim needs an ∃ type")),
                }
            }
            Expr::Lam(..)
            | Expr::Hole(_)
            | Expr::OrIntro0(_)
            | Expr::OrIntro1(_)
            | Expr::OrElim(..)
            | Expr::BotElim(_)
            | Expr::ExIntro(..) => Err(TypeError::cannot_infer(ctx, e)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn p(s: &str) -> Expr {
        parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    fn atoms(names: &[&str]) -> GlobalEnv {
        names.iter().fold(GlobalEnv::new(), |env, n| {
            env.postulate(n, Expr::Type).unwrap()
        })
    }

    #[test]
    fn composition_checks() {
        let env = atoms(&["A", "B", "C"]);
        let goals = check(
            &env,
            &Context::new(),
            &p("(λ f => (λ g => (λ x => (f (g x)))))"),
            &p("((B -> C) -> ((A -> B) -> (A -> C)))"),
        )
        .unwrap();
        assert!(goals.is_empty());
    }

    #[test]
    fn eq_refl_argument_must_be_well_typed() {
        let env = GlobalEnv::new();
        let ctx = Context::new();
        // Convertible to Z, but applies Z to an argument.
        let bad = p("(eq-refl ((λ x => Z) (Z Z)))");
        assert!(check(&env, &ctx, &bad, &p("(Z = Z)")).is_err());
        // Holes inside the argument become goals under both modes.
        let holey = p("(eq-refl (Nat -> ?))");
        let inferred = infer(&env, &ctx, &holey).unwrap();
        let checked = check(&env, &ctx, &holey, &inferred.ty).unwrap();
        assert_eq!(inferred.goals.len(), 1);
        assert_eq!(checked.len(), 1);
    }

    #[test]
    fn exists_intro_domain_must_be_a_type() {
        let env = GlobalEnv::new();
        let ctx = Context::new();
        let ty = p("(∃ (n : Nat) -> (n = n))");
        assert!(check(&env, &ctx, &p("(∃-intro Nat Z (eq-refl Z))"), &ty).is_ok());
        let bad = p("(∃-intro ((λ x => Nat) (Z Z)) Z (eq-refl Z))");
        assert!(check(&env, &ctx, &bad, &ty).is_err());
    }

    #[test]
    fn hole_checks_against_anything() {
        let env = atoms(&["A"]);
        let goals = check(&env, &Context::new(), &Expr::Hole(0), &p("(A -> A)")).unwrap();
        assert_eq!(goals.len(), 1);
        assert_eq!(goals[0].number, 0);
        assert_eq!(goals[0].ty, p("(A -> A)"));
    }

    #[test]
    fn identity_is_not_a_to_b() {
        let env = atoms(&["A", "B"]);
        let err = check(&env, &Context::new(), &p("(λ x => x)"), &p("(A -> B)")).unwrap_err();
        assert_eq!(err.kind, ErrorKind::CannotCheck);
        assert_eq!(err.term, p("x"));
        assert_eq!(err.expected, Some(p("B")));
        assert_eq!(err.found, Some(p("A")));
        assert_eq!(err.ctx.lookup("x"), Some(&p("A")));
    }

    #[test]
    fn type_in_type() {
        let env = GlobalEnv::new();
        assert_eq!(infer(&env, &Context::new(), &Expr::Type).unwrap().ty, Expr::Type);
    }

    #[test]
    fn lambda_does_not_infer() {
        let env = GlobalEnv::new();
        let err = infer(&env, &Context::new(), &p("(λ x => x)")).unwrap_err();
        assert_eq!(err.kind, ErrorKind::CannotInfer);
    }

    #[test]
    fn application_of_non_function() {
        let env = GlobalEnv::new();
        let err = infer(&env, &Context::new(), &p("(Z Z)")).unwrap_err();
        assert_eq!(err.kind, ErrorKind::NotAFunction);
        assert_eq!(err.found, Some(Expr::Nat));
    }

    #[test]
    fn unbound_variable() {
        let err = infer(&GlobalEnv::new(), &Context::new(), &p("x")).unwrap_err();
        assert_eq!(err.kind, ErrorKind::CannotInfer);
    }

    #[test]
    fn holes_in_ascriptions_are_rejected() {
        let env = atoms(&["A"]);
        let err = infer(&env, &Context::new(), &p("(? : (A -> ?))")).unwrap_err();
        assert_eq!(err.kind, ErrorKind::HoleInType);
    }

    #[test]
    fn conjunction_rules() {
        let env = atoms(&["A", "B"]);
        let goals = check(&env, &Context::new(), &p("(∧-intro ?0 ?1)"), &p("(A ∧ B)")).unwrap();
        let tys: Vec<_> = goals.iter().map(|g| (g.number, g.ty.clone())).collect();
        assert_eq!(tys, vec![(0, p("A")), (1, p("B"))]);
        let swap = p("(λ h => (∧-intro (∧-elim1 h) (∧-elim0 h)))");
        assert!(check(&env, &Context::new(), &swap, &p("((A ∧ B) -> (B ∧ A))")).is_ok());
        let inferred = infer(
            &env,
            &Context::new().extended("a", p("A")).extended("b", p("B")),
            &p("(∧-intro a b)"),
        )
        .unwrap();
        assert_eq!(inferred.ty, p("(A ∧ B)"));
    }

    #[test]
    fn disjunction_rules() {
        let env = atoms(&["A", "B"]);
        let comm = p("(λ h => (∨-elim h (λ a => (∨-intro1 a)) (λ b => (∨-intro0 b))))");
        assert!(check(&env, &Context::new(), &comm, &p("((A ∨ B) -> (B ∨ A))")).is_ok());
        let wrong = p("(λ a => (∨-intro1 a))");
        assert!(check(&env, &Context::new(), &wrong, &p("(A -> (A ∨ B))")).is_err());
    }

    #[test]
    fn ex_falso() {
        let env = atoms(&["A"]);
        assert!(check(&env, &Context::new(), &p("(λ b => (⊥-elim b))"), &p("(⊥ -> A)")).is_ok());
        assert!(check(&env, &Context::new(), &p("(λ a => (a a))"), &p("((¬ A) -> A)")).is_err());
    }

    #[test]
    fn shadowing_does_not_capture() {
        // The inner x shadows a term variable whose type mentions the outer x.
        let env = GlobalEnv::new();
        let ty = p("(∀ (x : Type) -> (x -> (∀ (x : Type) -> (x -> x))))");
        let good = p("(λ x => (λ a => (λ x => (λ b => b))))");
        let bad = p("(λ x => (λ a => (λ x => (λ b => a))))");
        assert!(check(&env, &Context::new(), &good, &ty).is_ok());
        assert!(check(&env, &Context::new(), &bad, &ty).is_err());
    }

    #[test]
    fn binder_named_like_a_global() {
        let env = atoms(&["A"]);
        let ty = p("(∀ (A : Type) -> (A -> A))");
        assert!(check(&env, &Context::new(), &p("(λ A => (λ a => a))"), &ty).is_ok());
        let mono = p("(A -> A)");
        assert!(check(&env, &Context::new(), &p("(λ A => A)"), &mono).is_ok());
    }

    #[test]
    fn goal_context_is_recorded() {
        let env = atoms(&["A", "B"]);
        let goals = check(&env, &Context::new(), &p("(λ a => (λ f => ?))"), &p("(A -> ((A -> B) -> B))"))
            .unwrap();
        let ctx: Vec<_> = goals[0].ctx.iter().map(|(n, t)| (n.to_string(), t.clone())).collect();
        assert_eq!(ctx, vec![("a".into(), p("A")), ("f".into(), p("(A -> B)"))]);
        assert_eq!(goals[0].ty, p("B"));
    }
}
