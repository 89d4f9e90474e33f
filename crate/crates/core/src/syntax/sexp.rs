use std::fmt;

use super::parse::ParseError;

/// Raw S-expression, before it is given meaning by the parser.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

impl Sexp {
    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a) => Some(a),
            Sexp::List(_) => None,
        }
    }

    pub fn is_atom(&self, s: &str) -> bool {
        self.as_atom() == Some(s)
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(a) => f.write_str(a),
            Sexp::List(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Atom(String),
}

fn tokenize(src: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '(' => {
                chars.next();
                tokens.push(Token::Open);
            }
            ')' => {
                chars.next();
                tokens.push(Token::Close);
            }
            ';' => {
                for c in chars.by_ref() {
                    if c == '\n' {
                        break;
                    }
                }
            }
            // Racket-style quote prefix, as in `(refine 0 '(λ f => ?))`.
            '\'' => {
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            _ => {
                let mut atom = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    atom.push(c);
                    chars.next();
                }
                tokens.push(Token::Atom(atom));
            }
        }
    }
    tokens
}

fn read_from(tokens: &[Token], pos: &mut usize) -> Result<Sexp, ParseError> {
    match tokens.get(*pos) {
        None => Err(ParseError::new("unexpected end of input", "")),
        Some(Token::Close) => Err(ParseError::new("unexpected `)`", ")")),
        Some(Token::Atom(a)) => {
            *pos += 1;
            Ok(Sexp::Atom(a.clone()))
        }
        Some(Token::Open) => {
            *pos += 1;
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => {
                        let partial = Sexp::List(items);
                        return Err(ParseError::new("unbalanced parentheses", partial.to_string()));
                    }
                    Some(Token::Close) => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(read_from(tokens, pos)?),
                }
            }
        }
    }
}

/// Deepest list nesting the reader accepts. Keeps the recursive reader,
/// parser and checker well inside the stack.
pub const MAX_DEPTH: usize = 512;

fn check_depth(tokens: &[Token]) -> Result<(), ParseError> {
    let mut depth = 0usize;
    for t in tokens {
        match t {
            Token::Open => {
                depth += 1;
                if depth > MAX_DEPTH {
                    return Err(ParseError::new(
                        format!("nesting deeper than {MAX_DEPTH}"),
                        "(",
                    ));
                }
            }
            Token::Close => depth = depth.saturating_sub(1),
            Token::Atom(_) => {}
        }
    }
    Ok(())
}

/// Reads every top-level S-expression in `src`.
pub fn read_all(src: &str) -> Result<Vec<Sexp>, ParseError> {
    let tokens = tokenize(src);
    check_depth(&tokens)?;
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < tokens.len() {
        out.push(read_from(&tokens, &mut pos)?);
    }
    Ok(out)
}

/// Reads exactly one S-expression.
pub fn read_one(src: &str) -> Result<Sexp, ParseError> {
    let mut all = read_all(src)?;
    match all.len() {
        0 => Err(ParseError::new("empty input", "")),
        1 => Ok(all.pop().unwrap()),
        _ => Err(ParseError::new(
            "expected a single expression",
            all[1].to_string(),
        )),
    }
}
