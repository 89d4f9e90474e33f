//! Generators and property bodies shared by the proptest suites and the
//! acceptance harness.
//!
//! Generators read their random choices from a `Tape` of integers so that
//! proptest can shrink a failing case by shrinking the tape.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use proust_core::equational::{alpha_equiv, def_equal, free_vars, normalize, subst};
use proust_core::kernel::{self, Context};
use proust_core::script::Runner;
use proust_core::semantics::{entails, extract};
use proust_core::session::Session;
use proust_core::syntax::{parse, pretty, pretty_ascii, Expr, ANON};
use proust_core::GlobalEnv;

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

pub fn corpus(name: &str) -> String {
    let path = corpus_path(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Runs a corpus file and returns the resulting environment, or the first
/// failing command.
pub fn load(name: &str) -> Result<GlobalEnv, String> {
    let mut r = Runner::default();
    for step in r.run_script(&corpus(name)).map_err(|e| e.to_string())? {
        if let Err(e) = &step.result {
            return Err(format!("{}: {e}", step.input));
        }
    }
    Ok(r.session().env().clone())
}

pub fn p(s: &str) -> Expr {
    parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn atoms_env() -> GlobalEnv {
    ["A", "B", "C"]
        .iter()
        .fold(GlobalEnv::new(), |env, a| env.postulate(a, Expr::Type).unwrap())
}

#[derive(Clone, Debug)]
pub struct Tape {
    vals: Vec<u32>,
    pos: usize,
    fresh: usize,
}

impl Tape {
    pub fn new(vals: Vec<u32>) -> Self {
        Tape {
            vals,
            pos: 0,
            fresh: 0,
        }
    }

    /// A choice in `0..n`; 0 once the tape runs out.
    pub fn pick(&mut self, n: usize) -> usize {
        let v = self.vals.get(self.pos).copied().unwrap_or(0);
        self.pos += 1;
        v as usize % n.max(1)
    }

    pub fn coin(&mut self) -> bool {
        self.pick(2) == 1
    }

    /// A user-writable name never produced before by this tape.
    pub fn unique(&mut self, stem: &str) -> String {
        self.fresh += 1;
        format!("{stem}{}", self.fresh)
    }
}

pub fn tape() -> impl Strategy<Value = Tape> {
    prop::collection::vec(any::<u32>(), 0..96).prop_map(Tape::new)
}

const ATOMS: [&str; 3] = ["A", "B", "C"];
/// Small on purpose: binders frequently shadow each other.
const NAMES: [&str; 4] = ["x", "y", "z", "h"];

// ---------------------------------------------------------------- syntax

/// Any AST the parser can produce (not necessarily well typed).
pub fn gen_expr(t: &mut Tape, depth: usize) -> Expr {
    let name = |t: &mut Tape| NAMES[t.pick(NAMES.len())].to_string();
    let binder = |t: &mut Tape| {
        if t.pick(4) == 0 {
            ANON.to_string()
        } else {
            NAMES[t.pick(NAMES.len())].to_string()
        }
    };
    if depth == 0 {
        return match t.pick(8) {
            0 => Expr::Type,
            1 => Expr::Bot,
            2 => Expr::Nat,
            3 => Expr::Zero,
            4 => Expr::Hole(t.pick(10)),
            5 => Expr::var(ATOMS[t.pick(3)]),
            _ => Expr::Var(name(t)),
        };
    }
    let d = depth - 1;
    let g = |t: &mut Tape| Box::new(gen_expr(t, d));
    match t.pick(28) {
        0 => Expr::Lam(binder(t), g(t)),
        1 => Expr::App(g(t), g(t)),
        2 => Expr::Ann(g(t), g(t)),
        3 => Expr::Pi(binder(t), g(t), g(t)),
        4 => Expr::Sigma(binder(t), g(t), g(t)),
        5 => Expr::Succ(g(t)),
        6 => Expr::And(g(t), g(t)),
        7 => Expr::AndIntro(g(t), g(t)),
        8 => Expr::AndElim0(g(t)),
        9 => Expr::AndElim1(g(t)),
        10 => Expr::Or(g(t), g(t)),
        11 => Expr::OrIntro0(g(t)),
        12 => Expr::OrIntro1(g(t)),
        13 => Expr::OrElim(g(t), g(t), g(t)),
        14 => Expr::BotElim(g(t)),
        15 => Expr::Eq(g(t), g(t)),
        16 => Expr::EqRefl(g(t)),
        17 => Expr::EqElim(g(t), g(t), g(t), g(t), g(t)),
        18 => Expr::NatInd(g(t), g(t), g(t), g(t)),
        19 => Expr::ExIntro(g(t), g(t), g(t)),
        20 => Expr::ExElim(g(t), g(t), g(t)),
        _ => gen_expr(t, 0),
    }
}

pub fn prop_roundtrip(mut t: Tape) -> Result<(), TestCaseError> {
    let depth = t.pick(6);
    let e = gen_expr(&mut t, depth);
    for text in [pretty(&e), pretty_ascii(&e)] {
        let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(&back, &e, "via {}", text);
    }
    Ok(())
}

// ------------------------------------------------------ propositions

/// A propositional type over the atoms A, B, C.
pub fn gen_prop(t: &mut Tape, depth: usize) -> Expr {
    if depth == 0 {
        return match t.pick(8) {
            0 => Expr::Bot,
            n => Expr::var(ATOMS[n % 3]),
        };
    }
    let d = depth - 1;
    match t.pick(5) {
        0 => Expr::arrow(gen_prop(t, d), gen_prop(t, d)),
        1 => Expr::and(gen_prop(t, d), gen_prop(t, d)),
        2 => Expr::or(gen_prop(t, d), gen_prop(t, d)),
        3 => Expr::not(gen_prop(t, d)),
        _ => gen_prop(t, 0),
    }
}

/// Hypotheses still visible: a later binding of the same name hides earlier ones.
fn visible(ctx: &[(String, Expr)]) -> Vec<(String, Expr)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (n, ty) in ctx.iter().rev() {
        if seen.insert(n.clone()) {
            out.push((n.clone(), ty.clone()));
        }
    }
    out
}

/// A well-typed proof built bottom-up: returns `(term, type)` such that
/// the term checks against the type in `ctx`.
pub fn gen_proof(t: &mut Tape, ctx: &mut Vec<(String, Expr)>, depth: usize) -> (Expr, Expr) {
    let hyps = visible(ctx);
    if depth == 0 {
        if !hyps.is_empty() && t.pick(4) != 0 {
            let (n, ty) = &hyps[t.pick(hyps.len())];
            return (Expr::var(n.clone()), ty.clone());
        }
        let ty = gen_prop(t, 1);
        let x = NAMES[t.pick(NAMES.len())];
        return (Expr::lam(x, Expr::var(x)), Expr::arrow(ty.clone(), ty));
    }
    let d = depth - 1;
    match t.pick(9) {
        // modus ponens on two visible hypotheses
        0 => {
            for (f, fty) in &hyps {
                if let Expr::Pi(_, dom, cod) = fty {
                    if let Some((a, _)) = hyps.iter().find(|(_, ty)| ty == &**dom) {
                        return (Expr::app(Expr::var(f.clone()), Expr::var(a.clone())), (**cod).clone());
                    }
                }
            }
            gen_proof(t, ctx, d)
        }
        // ex falso from a visible ⊥
        1 => match hyps.iter().find(|(_, ty)| *ty == Expr::Bot) {
            Some((b, _)) => {
                let ty = gen_prop(t, 2);
                (Expr::BotElim(Box::new(Expr::var(b.clone()))), ty)
            }
            None => gen_proof(t, ctx, d),
        },
        2 | 3 => {
            let dom = gen_prop(t, 2);
            let x = NAMES[t.pick(NAMES.len())].to_string();
            ctx.push((x.clone(), dom.clone()));
            let (body, cod) = gen_proof(t, ctx, d);
            ctx.pop();
            (Expr::lam(x, body), Expr::arrow(dom, cod))
        }
        // beta redex
        4 => {
            let (a, aty) = gen_proof(t, ctx, d);
            let x = NAMES[t.pick(NAMES.len())].to_string();
            ctx.push((x.clone(), aty.clone()));
            let (body, bty) = gen_proof(t, ctx, d);
            ctx.pop();
            let f = Expr::ann(Expr::lam(x, body), Expr::arrow(aty, bty.clone()));
            (Expr::app(f, a), bty)
        }
        5 => {
            let (a, aty) = gen_proof(t, ctx, d);
            let (b, bty) = gen_proof(t, ctx, d);
            (
                Expr::AndIntro(Box::new(a), Box::new(b)),
                Expr::and(aty, bty),
            )
        }
        6 => {
            let (a, aty) = gen_proof(t, ctx, d);
            let (b, bty) = gen_proof(t, ctx, d);
            let pair = Expr::ann(
                Expr::AndIntro(Box::new(a), Box::new(b)),
                Expr::and(aty.clone(), bty.clone()),
            );
            if t.coin() {
                (Expr::AndElim0(Box::new(pair)), aty)
            } else {
                (Expr::AndElim1(Box::new(pair)), bty)
            }
        }
        7 => {
            let (a, aty) = gen_proof(t, ctx, d);
            let other = gen_prop(t, 1);
            if t.coin() {
                (Expr::OrIntro0(Box::new(a)), Expr::or(aty, other))
            } else {
                (Expr::OrIntro1(Box::new(a)), Expr::or(other, aty))
            }
        }
        // case analysis on an injected disjunction
        _ => {
            let (a, aty) = gen_proof(t, ctx, d);
            let other = gen_prop(t, 1);
            let left = t.coin();
            let (inj, or_ty) = if left {
                (Expr::OrIntro0(Box::new(a.clone())), Expr::or(aty.clone(), other.clone()))
            } else {
                (Expr::OrIntro1(Box::new(a.clone())), Expr::or(other.clone(), aty.clone()))
            };
            let x = NAMES[t.pick(NAMES.len())].to_string();
            ctx.push((x.clone(), aty.clone()));
            let (c, cty) = gen_proof(t, ctx, d);
            ctx.pop();
            let on_a = Expr::lam(x.clone(), c.clone());
            // The other branch re-derives the result from `a`, under a
            // binder that cannot capture anything.
            let y = t.unique("u");
            let via_a = Expr::app(
                Expr::ann(Expr::lam(x, c), Expr::arrow(aty.clone(), cty.clone())),
                a,
            );
            let on_other = Expr::lam(y, via_a);
            let (f, g) = if left { (on_a, on_other) } else { (on_other, on_a) };
            (
                Expr::OrElim(
                    Box::new(Expr::ann(inj, or_ty)),
                    Box::new(f),
                    Box::new(g),
                ),
                cty,
            )
        }
    }
}

pub fn closed_proof(t: &mut Tape) -> (Expr, Expr) {
    let depth = 1 + t.pick(4);
    gen_proof(t, &mut Vec::new(), depth)
}

// ------------------------------------------------------------ renaming

/// Renames every bound variable to a name unused anywhere else.
pub fn rename_bound(e: &Expr, t: &mut Tape) -> Expr {
    let go = |e: &Expr, t: &mut Tape| rename_bound(e, t);
    match e {
        Expr::Lam(x, body) if x != ANON => {
            let y = t.unique("r");
            Expr::lam(y.clone(), go(&subst(body, x, &Expr::var(y)), t))
        }
        Expr::Pi(x, dom, body) | Expr::Sigma(x, dom, body) if x != ANON => {
            let y = t.unique("r");
            let dom = go(dom, t);
            let body = go(&subst(body, x, &Expr::var(y.clone())), t);
            if matches!(e, Expr::Pi(..)) {
                Expr::pi(y, dom, body)
            } else {
                Expr::sigma(y, dom, body)
            }
        }
        _ => {
            let mut out = Vec::new();
            for c in e.children() {
                out.push(go(c, t));
            }
            let mut it = out.into_iter();
            e.map_children(|_| it.next().unwrap())
        }
    }
}

// ------------------------------------------------------------ properties

pub fn prop_generated_proofs_check(mut t: Tape) -> Result<(), TestCaseError> {
    let env = atoms_env();
    let (term, ty) = closed_proof(&mut t);
    let r = kernel::check(&env, &Context::new(), &term, &ty);
    prop_assert!(r.is_ok(), "{} : {} rejected: {:?}", pretty(&term), pretty(&ty), r);
    Ok(())
}

pub fn prop_normalize_idempotent(mut t: Tape) -> Result<(), TestCaseError> {
    let env = atoms_env();
    let (term, ty) = closed_proof(&mut t);
    let once = normalize(&env, &term).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let twice = normalize(&env, &once).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(alpha_equiv(&once, &twice), "{} vs {}", pretty(&once), pretty(&twice));
    // The normal form is still a proof of the same proposition.
    prop_assert!(kernel::check(&env, &Context::new(), &once, &ty).is_ok(), "{}", pretty(&once));
    Ok(())
}

pub fn prop_alpha_stability(mut t: Tape) -> Result<(), TestCaseError> {
    let env = atoms_env();
    // Either a generated proof or a deliberately mismatched pair.
    let (term, ty) = closed_proof(&mut t);
    let ty = if t.pick(3) == 0 { gen_prop(&mut t, 2) } else { ty };
    let ctx_ty = gen_prop(&mut t, 2);
    let ctx = Context::new().extended("w", ctx_ty.clone());
    let renamed = rename_bound(&term, &mut t);
    prop_assert!(alpha_equiv(&term, &renamed));
    let ctx2 = Context::new().extended("w", rename_bound(&ctx_ty, &mut t));
    let a = kernel::check(&env, &ctx, &term, &ty).map(|g| g.len());
    let b = kernel::check(&env, &ctx2, &renamed, &rename_bound(&ty, &mut t)).map(|g| g.len());
    prop_assert_eq!(a.is_ok(), b.is_ok(), "{} vs {}", pretty(&term), pretty(&renamed));
    if let (Ok(x), Ok(y)) = (a, b) {
        prop_assert_eq!(x, y);
    }
    Ok(())
}

pub fn prop_soundness(mut t: Tape) -> Result<(), TestCaseError> {
    let env = atoms_env();
    let (term, ty) = closed_proof(&mut t);
    prop_assert!(env.check_proof(&Expr::ann(term.clone(), ty.clone())).is_ok());
    let f = extract(&env, &ty).ok_or_else(|| TestCaseError::fail("not propositional"))?;
    prop_assert!(
        entails(&[], &f).unwrap(),
        "checked proof {} of non-tautology {}",
        pretty(&term),
        pretty(&ty)
    );
    Ok(())
}

/// A refinement for goal `ty` in `ctx`: mostly valid, sometimes not.
fn gen_refinement(t: &mut Tape, ctx: &Context, ty: &Expr) -> Expr {
    let hyps: Vec<(String, Expr)> = visible(
        &ctx.iter()
            .map(|(n, ty)| (n.to_string(), ty.clone()))
            .collect::<Vec<_>>(),
    );
    if t.pick(6) == 0 {
        // Anything at all, most likely ill typed.
        return match t.pick(3) {
            0 => Expr::var(NAMES[t.pick(NAMES.len())]),
            1 => gen_expr(t, 2),
            _ => Expr::lam("x", Expr::var("x")),
        };
    }
    if let Some((h, _)) = hyps.iter().find(|(_, hty)| hty == ty) {
        if t.coin() {
            return Expr::var(h.clone());
        }
    }
    for (h, hty) in &hyps {
        if let Expr::Pi(_, _, cod) = hty {
            if &**cod == ty && t.coin() {
                return Expr::app(Expr::var(h.clone()), Expr::Hole(0));
            }
        }
    }
    match ty {
        Expr::Pi(..) => Expr::lam(NAMES[t.pick(NAMES.len())], Expr::Hole(0)),
        Expr::And(..) => Expr::AndIntro(Box::new(Expr::Hole(0)), Box::new(Expr::Hole(0))),
        Expr::Or(..) if t.coin() => Expr::OrIntro0(Box::new(Expr::Hole(0))),
        Expr::Or(..) => Expr::OrIntro1(Box::new(Expr::Hole(0))),
        _ => Expr::BotElim(Box::new(Expr::Hole(0))),
    }
}

fn coherent(s: &Session) -> bool {
    s.task().is_none_or(|task| {
        let holes: BTreeSet<usize> = task.current().holes().into_iter().collect();
        let goals: BTreeSet<usize> = task.goals().map(|g| g.number).collect();
        holes == goals
    })
}

pub fn prop_goal_coherence(mut t: Tape) -> Result<(), TestCaseError> {
    let mut s = Session::new(atoms_env());
    let goal_ty = gen_prop(&mut t, 3);
    s.set_task(&Expr::ann(Expr::Hole(0), goal_ty)).unwrap();
    prop_assert!(coherent(&s));
    for _ in 0..12 {
        let Some(task) = s.task().cloned() else { break };
        if task.is_complete() {
            break;
        }
        if t.pick(8) == 0 && s.can_undo() {
            s.undo().unwrap();
            prop_assert!(coherent(&s));
            continue;
        }
        let goals: Vec<_> = task.goals().cloned().collect();
        let goal = &goals[t.pick(goals.len())];
        let filler = gen_refinement(&mut t, &goal.ctx, &goal.ty);
        let k = filler.holes().len();
        match s.refine(goal.number, &filler) {
            Ok(next) => {
                prop_assert_eq!(next.goal_count() + 1, task.goal_count() + k);
                let fresh: Vec<usize> = next
                    .goals()
                    .map(|g| g.number)
                    .filter(|n| task.goal(*n).is_none())
                    .collect();
                prop_assert!(fresh.iter().all(|n| *n >= task.hole_counter()));
                prop_assert_eq!(next.hole_counter(), task.hole_counter() + k);
            }
            Err(_) => prop_assert_eq!(s.task(), Some(&task)),
        }
        prop_assert!(coherent(&s));
    }
    Ok(())
}

/// Unused in most suites; handy when a property fails.
pub fn show(e: &Expr) -> String {
    format!("{} {:?}", pretty(e), free_vars(e))
}

pub fn def_eq(env: &GlobalEnv, a: &Expr, b: &Expr) -> bool {
    def_equal(env, a, b).unwrap()
}
