use crate::syntax::Expr;

/// Equality up to consistent renaming of bound variables.
pub fn alpha_equiv(a: &Expr, b: &Expr) -> bool {
    go(a, b, &mut Vec::new(), &mut Vec::new())
}

// Position of the innermost binder for `x`, counted from the inside.
fn index_of(scope: &[&str], x: &str) -> Option<usize> {
    scope.iter().rev().position(|y| *y == x)
}

fn go<'a>(a: &'a Expr, b: &'a Expr, sa: &mut Vec<&'a str>, sb: &mut Vec<&'a str>) -> bool {
    use Expr::*;
    match (a, b) {
        (Var(x), Var(y)) => match (index_of(sa, x), index_of(sb, y)) {
            (Some(i), Some(j)) => i == j,
            (None, None) => x == y,
            _ => false,
        },
        (Lam(x, p), Lam(y, q)) => binder(x, p, y, q, sa, sb),
        (Pi(x, d1, p), Pi(y, d2, q)) | (Sigma(x, d1, p), Sigma(y, d2, q)) => {
            go(d1, d2, sa, sb) && binder(x, p, y, q, sa, sb)
        }
        (Hole(m), Hole(n)) => m == n,
        (Type, Type) | (Bot, Bot) | (Nat, Nat) | (Zero, Zero) => true,
        _ => {
            if std::mem::discriminant(a) != std::mem::discriminant(b) {
                return false;
            }
            let (ca, cb) = (a.children(), b.children());
            ca.len() == cb.len() && ca.into_iter().zip(cb).all(|(x, y)| go(x, y, sa, sb))
        }
    }
}

fn binder<'a>(
    x: &'a str,
    p: &'a Expr,
    y: &'a str,
    q: &'a Expr,
    sa: &mut Vec<&'a str>,
    sb: &mut Vec<&'a str>,
) -> bool {
    sa.push(x);
    sb.push(y);
    let r = go(p, q, sa, sb);
    sa.pop();
    sb.pop();
    r
}
