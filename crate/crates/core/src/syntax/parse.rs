use thiserror::Error;

use super::sexp::{read_one, Sexp};
use super::{Expr, ANON};

/// Parse failure, carrying the offending subexpression re-printed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}: {form}")]
pub struct ParseError {
    pub message: String,
    pub form: String,
}

impl ParseError {
    pub(crate) fn new(message: impl Into<String>, form: impl Into<String>) -> Self {
        ParseError {
            message: message.into(),
            form: form.into(),
        }
    }

    fn at(message: impl Into<String>, form: &Sexp) -> Self {
        ParseError::new(message, form.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Keyword {
    Lambda,
    Forall,
    Exists,
    Arrow,
    FatArrow,
    Colon,
    Equals,
    And,
    Or,
    Not,
    Bot,
    Type,
    Nat,
    Zero,
    Succ,
    AndIntro,
    AndElim0,
    AndElim1,
    OrIntro0,
    OrIntro1,
    OrElim,
    BotElim,
    EqRefl,
    EqElim,
    NatInd,
    ExIntro,
    ExElim,
}

fn keyword(atom: &str) -> Option<Keyword> {
    use Keyword::*;
    Some(match atom {
        "λ" | "\\" | "lambda" => Lambda,
        "∀" | "forall" => Forall,
        "∃" | "exists" => Exists,
        "->" | "→" => Arrow,
        "=>" => FatArrow,
        ":" => Colon,
        "=" => Equals,
        "∧" | "/\\" => And,
        "∨" | "\\/" => Or,
        "¬" | "not" => Not,
        "⊥" | "bot" => Bot,
        "Type" => Type,
        "Nat" => Nat,
        "Z" => Zero,
        "S" => Succ,
        "∧-intro" | "and-intro" => AndIntro,
        "∧-elim0" | "and-elim0" => AndElim0,
        "∧-elim1" | "and-elim1" => AndElim1,
        "∨-intro0" | "or-intro0" => OrIntro0,
        "∨-intro1" | "or-intro1" => OrIntro1,
        "∨-elim" | "or-elim" => OrElim,
        "⊥-elim" | "bot-elim" => BotElim,
        "eq-refl" => EqRefl,
        "eq-elim" => EqElim,
        "nat-ind" => NatInd,
        "∃-intro" | "exists-intro" => ExIntro,
        "∃-elim" | "exists-elim" => ExElim,
        _ => return None,
    })
}

/// True for names a user may bind and reference.
pub fn is_identifier(atom: &str) -> bool {
    !atom.is_empty()
        && atom != ANON
        && keyword(atom).is_none()
        && !atom.starts_with('?')
        && !atom.contains('%')
        && !atom.contains(['(', ')', ';', '\''])
        && !atom.chars().any(char::is_whitespace)
}

/// Parses one expression from surface text.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    parse_sexp(&read_one(text)?)
}

/// Gives meaning to an already-read S-expression.
pub fn parse_sexp(s: &Sexp) -> Result<Expr, ParseError> {
    match s {
        Sexp::Atom(a) => atom(a, s),
        Sexp::List(items) => list(items, s),
    }
}

fn atom(a: &str, s: &Sexp) -> Result<Expr, ParseError> {
    if let Some(rest) = a.strip_prefix('?') {
        if rest.is_empty() {
            return Ok(Expr::Hole(0));
        }
        return rest
            .parse::<usize>()
            .map(Expr::Hole)
            .map_err(|_| ParseError::at("malformed hole", s));
    }
    match keyword(a) {
        Some(Keyword::Type) => Ok(Expr::Type),
        Some(Keyword::Bot) => Ok(Expr::Bot),
        Some(Keyword::Nat) => Ok(Expr::Nat),
        Some(Keyword::Zero) => Ok(Expr::Zero),
        Some(_) => Err(ParseError::at("reserved word cannot be used here", s)),
        None if a == ANON => Err(ParseError::at("`_` cannot be referenced", s)),
        None if is_identifier(a) => Ok(Expr::Var(a.to_string())),
        None => Err(ParseError::at("invalid identifier", s)),
    }
}

fn binder(s: &Sexp) -> Result<String, ParseError> {
    match s.as_atom() {
        Some(a) if a == ANON || is_identifier(a) => Ok(a.to_string()),
        Some(_) => Err(ParseError::at("reserved word used as binder", s)),
        None => Err(ParseError::at("binder must be a name", s)),
    }
}

fn is_kw(s: &Sexp, kw: Keyword) -> bool {
    s.as_atom().and_then(keyword) == Some(kw)
}

#[allow(clippy::vec_box)]
fn args(items: &[Sexp], want: usize, whole: &Sexp) -> Result<Vec<Box<Expr>>, ParseError> {
    if items.len() != want + 1 {
        let name = items[0].as_atom().unwrap_or_default();
        return Err(ParseError::at(
            format!(
                "`{name}` expects {want} argument{}",
                if want == 1 { "" } else { "s" }
            ),
            whole,
        ));
    }
    items[1..]
        .iter()
        .map(|e| parse_sexp(e).map(Box::new))
        .collect()
}

fn list(items: &[Sexp], whole: &Sexp) -> Result<Expr, ParseError> {
    if items.len() < 2 {
        return Err(ParseError::at("form has no production", whole));
    }

    // Binary infix forms.
    if items.len() == 3 {
        if let Some(op) = items[1].as_atom().and_then(keyword) {
            let infix = |ctor: fn(Box<Expr>, Box<Expr>) -> Expr| -> Result<Expr, ParseError> {
                Ok(ctor(
                    Box::new(parse_sexp(&items[0])?),
                    Box::new(parse_sexp(&items[2])?),
                ))
            };
            match op {
                Keyword::Colon => return infix(Expr::Ann),
                Keyword::Equals => return infix(Expr::Eq),
                Keyword::And => return infix(Expr::And),
                Keyword::Or => return infix(Expr::Or),
                _ => {}
            }
        }
    }

    // `(T -> W)`, and right-nested chains `(T -> U -> W)`.
    if items.len() >= 3
        && items.len() % 2 == 1
        && items.iter().skip(1).step_by(2).all(|s| is_kw(s, Keyword::Arrow))
    {
        let mut parts = items
            .iter()
            .step_by(2)
            .map(parse_sexp)
            .collect::<Result<Vec<_>, _>>()?;
        let mut acc = parts.pop().unwrap();
        while let Some(dom) = parts.pop() {
            acc = Expr::arrow(dom, acc);
        }
        return Ok(acc);
    }

    if let Some(kw) = items[0].as_atom().and_then(keyword) {
        use Keyword::*;
        let unary = |ctor: fn(Box<Expr>) -> Expr| -> Result<Expr, ParseError> {
            let mut a = args(items, 1, whole)?;
            Ok(ctor(a.remove(0)))
        };
        match kw {
            Lambda => {
                if items.len() != 4 || !is_kw(&items[2], FatArrow) {
                    return Err(ParseError::at("expected (λ x => body)", whole));
                }
                return Ok(Expr::Lam(binder(&items[1])?, Box::new(parse_sexp(&items[3])?)));
            }
            Forall | Exists => {
                let shape = "expected (∀ (x : T) -> W)";
                if items.len() != 4 || !is_kw(&items[2], Arrow) {
                    return Err(ParseError::at(shape, whole));
                }
                let Sexp::List(b) = &items[1] else {
                    return Err(ParseError::at(shape, whole));
                };
                if b.len() != 3 || !is_kw(&b[1], Colon) {
                    return Err(ParseError::at("expected binder (x : T)", &items[1]));
                }
                let x = binder(&b[0])?;
                let dom = Box::new(parse_sexp(&b[2])?);
                let body = Box::new(parse_sexp(&items[3])?);
                return Ok(if kw == Forall {
                    Expr::Pi(x, dom, body)
                } else {
                    Expr::Sigma(x, dom, body)
                });
            }
            Not => {
                let mut a = args(items, 1, whole)?;
                return Ok(Expr::not(*a.remove(0)));
            }
            Succ => return unary(Expr::Succ),
            AndElim0 => return unary(Expr::AndElim0),
            AndElim1 => return unary(Expr::AndElim1),
            OrIntro0 => return unary(Expr::OrIntro0),
            OrIntro1 => return unary(Expr::OrIntro1),
            BotElim => return unary(Expr::BotElim),
            EqRefl => return unary(Expr::EqRefl),
            AndIntro => {
                let mut a = args(items, 2, whole)?.into_iter();
                return Ok(Expr::AndIntro(a.next().unwrap(), a.next().unwrap()));
            }
            OrElim | ExIntro | ExElim => {
                let mut a = args(items, 3, whole)?.into_iter();
                let (x, y, z) = (a.next().unwrap(), a.next().unwrap(), a.next().unwrap());
                return Ok(match kw {
                    OrElim => Expr::OrElim(x, y, z),
                    ExIntro => Expr::ExIntro(x, y, z),
                    _ => Expr::ExElim(x, y, z),
                });
            }
            NatInd => {
                let mut a = args(items, 4, whole)?.into_iter();
                let mut next = || a.next().unwrap();
                return Ok(Expr::NatInd(next(), next(), next(), next()));
            }
            EqElim => {
                let mut a = args(items, 5, whole)?.into_iter();
                let mut next = || a.next().unwrap();
                return Ok(Expr::EqElim(next(), next(), next(), next(), next()));
            }
            // Atom keywords in head position are ordinary (ill-typed) applications.
            Type | Bot | Nat | Zero => {}
            Arrow | FatArrow | Colon | Equals | And | Or => {
                return Err(ParseError::at("misplaced operator", whole));
            }
        }
    }

    // Application, left-associated: (f a b) = ((f a) b).
    let mut parts = items.iter().map(parse_sexp);
    let head = parts.next().unwrap()?;
    parts.try_fold(head, |f, a| Ok(Expr::app(f, a?)))
}
