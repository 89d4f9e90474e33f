//! Surface syntax: the unified term/type AST, the S-expression reader,
//! the parser with its desugarings, and the pretty-printer.

mod parse;
mod pretty;
mod sexp;

pub use parse::{is_identifier, parse, parse_sexp, ParseError};
pub use pretty::{pretty, pretty_ascii, Printer};
pub use sexp::{read_all, read_one, Sexp};

/// Binder name used by the non-dependent arrow. It can never be referenced.
pub const ANON: &str = "_";

/// One AST for both terms and types. Types are just expressions that
/// infer to `Type`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(String),
    Lam(String, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
    Ann(Box<Expr>, Box<Expr>),
    /// `(∀ (x : T) -> W)`; `(T -> W)` is `Pi("_", T, W)`.
    Pi(String, Box<Expr>, Box<Expr>),
    /// `(∃ (x : T) -> W)`
    Sigma(String, Box<Expr>, Box<Expr>),
    Type,
    Bot,
    Nat,
    Zero,
    Succ(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    AndIntro(Box<Expr>, Box<Expr>),
    AndElim0(Box<Expr>),
    AndElim1(Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    OrIntro0(Box<Expr>),
    OrIntro1(Box<Expr>),
    /// scrutinee, left case, right case
    OrElim(Box<Expr>, Box<Expr>, Box<Expr>),
    BotElim(Box<Expr>),
    Eq(Box<Expr>, Box<Expr>),
    EqRefl(Box<Expr>),
    /// t, property, proof of (property t), w, proof of (t = w)
    EqElim(Box<Expr>, Box<Expr>, Box<Expr>, Box<Expr>, Box<Expr>),
    /// property, zero case, successor case, target
    NatInd(Box<Expr>, Box<Expr>, Box<Expr>, Box<Expr>),
    /// domain type, witness, proof
    ExIntro(Box<Expr>, Box<Expr>, Box<Expr>),
    /// result type, function, package
    ExElim(Box<Expr>, Box<Expr>, Box<Expr>),
    Hole(usize),
}

impl Expr {
    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(name.into())
    }

    pub fn lam(var: impl Into<String>, body: Expr) -> Expr {
        Expr::Lam(var.into(), Box::new(body))
    }

    pub fn app(rator: Expr, rand: Expr) -> Expr {
        Expr::App(Box::new(rator), Box::new(rand))
    }

    /// Left-nested application `(((f a) b) c)`.
    pub fn apps(head: Expr, args: impl IntoIterator<Item = Expr>) -> Expr {
        args.into_iter().fold(head, Expr::app)
    }

    pub fn ann(subject: Expr, ascription: Expr) -> Expr {
        Expr::Ann(Box::new(subject), Box::new(ascription))
    }

    pub fn pi(var: impl Into<String>, domain: Expr, codomain: Expr) -> Expr {
        Expr::Pi(var.into(), Box::new(domain), Box::new(codomain))
    }

    pub fn arrow(domain: Expr, codomain: Expr) -> Expr {
        Expr::pi(ANON, domain, codomain)
    }

    pub fn sigma(var: impl Into<String>, domain: Expr, body: Expr) -> Expr {
        Expr::Sigma(var.into(), Box::new(domain), Box::new(body))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::arrow(e, Expr::Bot)
    }

    pub fn succ(e: Expr) -> Expr {
        Expr::Succ(Box::new(e))
    }

    /// Peano numeral `(S (S ... Z))`.
    pub fn numeral(n: usize) -> Expr {
        (0..n).fold(Expr::Zero, |acc, _| Expr::succ(acc))
    }

    pub fn eq(l: Expr, r: Expr) -> Expr {
        Expr::Eq(Box::new(l), Box::new(r))
    }

    pub fn and(l: Expr, r: Expr) -> Expr {
        Expr::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Expr, r: Expr) -> Expr {
        Expr::Or(Box::new(l), Box::new(r))
    }

    pub fn is_hole(&self) -> bool {
        matches!(self, Expr::Hole(_))
    }

    /// Immediate subexpressions, left to right.
    pub fn children(&self) -> Vec<&Expr> {
        use Expr::*;
        match self {
            Var(_) | Type | Bot | Nat | Zero | Hole(_) => vec![],
            Lam(_, b) => vec![b],
            Succ(a) | AndElim0(a) | AndElim1(a) | OrIntro0(a) | OrIntro1(a) | BotElim(a)
            | EqRefl(a) => vec![a],
            App(a, b) | Ann(a, b) | Pi(_, a, b) | Sigma(_, a, b) | And(a, b) | AndIntro(a, b)
            | Or(a, b) | Eq(a, b) => vec![a, b],
            OrElim(a, b, c) | ExIntro(a, b, c) | ExElim(a, b, c) => vec![a, b, c],
            NatInd(a, b, c, d) => vec![a, b, c, d],
            EqElim(a, b, c, d, e) => vec![a, b, c, d, e],
        }
    }

    /// Rebuilds this node with every immediate subexpression passed through `f`.
    /// Binder names are kept as they are.
    pub fn map_children(&self, mut f: impl FnMut(&Expr) -> Expr) -> Expr {
        match self.try_map_children(|e| Ok::<_, std::convert::Infallible>(f(e))) {
            Ok(e) => e,
            Err(never) => match never {},
        }
    }

    /// Fallible [`Expr::map_children`]; children are visited left to right.
    pub fn try_map_children<E>(
        &self,
        mut f: impl FnMut(&Expr) -> Result<Expr, E>,
    ) -> Result<Expr, E> {
        use Expr::*;
        let mut g = |e: &Expr| f(e).map(Box::new);
        Ok(match self {
            Var(_) | Type | Bot | Nat | Zero | Hole(_) => self.clone(),
            Lam(x, b) => Lam(x.clone(), g(b)?),
            App(a, b) => App(g(a)?, g(b)?),
            Ann(a, b) => Ann(g(a)?, g(b)?),
            Pi(x, a, b) => Pi(x.clone(), g(a)?, g(b)?),
            Sigma(x, a, b) => Sigma(x.clone(), g(a)?, g(b)?),
            Succ(a) => Succ(g(a)?),
            And(a, b) => And(g(a)?, g(b)?),
            AndIntro(a, b) => AndIntro(g(a)?, g(b)?),
            AndElim0(a) => AndElim0(g(a)?),
            AndElim1(a) => AndElim1(g(a)?),
            Or(a, b) => Or(g(a)?, g(b)?),
            OrIntro0(a) => OrIntro0(g(a)?),
            OrIntro1(a) => OrIntro1(g(a)?),
            OrElim(a, b, c) => OrElim(g(a)?, g(b)?, g(c)?),
            BotElim(a) => BotElim(g(a)?),
            Eq(a, b) => Eq(g(a)?, g(b)?),
            EqRefl(a) => EqRefl(g(a)?),
            EqElim(a, b, c, d, e) => EqElim(g(a)?, g(b)?, g(c)?, g(d)?, g(e)?),
            NatInd(a, b, c, d) => NatInd(g(a)?, g(b)?, g(c)?, g(d)?),
            ExIntro(a, b, c) => ExIntro(g(a)?, g(b)?, g(c)?),
            ExElim(a, b, c) => ExElim(g(a)?, g(b)?, g(c)?),
        })
    }

    /// Hole numbers in left-to-right order.
    pub fn holes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_holes(&mut out);
        out
    }

    fn collect_holes(&self, out: &mut Vec<usize>) {
        match self {
            Expr::Hole(n) => out.push(*n),
            _ => self.children().into_iter().for_each(|c| c.collect_holes(out)),
        }
    }

    pub fn has_holes(&self) -> bool {
        match self {
            Expr::Hole(_) => true,
            _ => self.children().into_iter().any(Expr::has_holes),
        }
    }

    /// Renumbers every hole left to right, starting from `*next`.
    pub fn renumber_holes(&self, next: &mut usize) -> Expr {
        match self {
            Expr::Hole(_) => {
                let n = *next;
                *next += 1;
                Expr::Hole(n)
            }
            _ => self.map_children(|c| c.renumber_holes(next)),
        }
    }

    /// Replaces hole `n` with `with`. Other holes are untouched.
    pub fn fill_hole(&self, n: usize, with: &Expr) -> Expr {
        match self {
            Expr::Hole(m) if *m == n => with.clone(),
            _ => self.map_children(|c| c.fill_hole(n, with)),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Expr::size).sum::<usize>()
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&pretty(self))
    }
}

impl std::str::FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
