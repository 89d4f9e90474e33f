use std::collections::HashSet;

use super::FreshCounter;
use crate::syntax::Expr;

/// Free variables of `e` (globals included, since they are free names too).
pub fn free_vars(e: &Expr) -> HashSet<String> {
    let mut out = HashSet::new();
    collect_free(e, &mut Vec::new(), &mut out);
    out
}

fn collect_free<'a>(e: &'a Expr, bound: &mut Vec<&'a str>, out: &mut HashSet<String>) {
    match e {
        Expr::Var(x) => {
            if !bound.contains(&x.as_str()) {
                out.insert(x.clone());
            }
        }
        Expr::Lam(x, b) => {
            bound.push(x);
            collect_free(b, bound, out);
            bound.pop();
        }
        Expr::Pi(x, d, b) | Expr::Sigma(x, d, b) => {
            collect_free(d, bound, out);
            bound.push(x);
            collect_free(b, bound, out);
            bound.pop();
        }
        _ => e
            .children()
            .into_iter()
            .for_each(|c| collect_free(c, bound, out)),
    }
}

pub fn occurs_free(e: &Expr, x: &str) -> bool {
    match e {
        Expr::Var(y) => y == x,
        Expr::Lam(y, b) => y != x && occurs_free(b, x),
        Expr::Pi(y, d, b) | Expr::Sigma(y, d, b) => {
            occurs_free(d, x) || (y != x && occurs_free(b, x))
        }
        _ => e.children().into_iter().any(|c| occurs_free(c, x)),
    }
}

/// `body[var ↦ replacement]`, capture-avoiding, with its own name supply.
pub fn subst(body: &Expr, var: &str, replacement: &Expr) -> Expr {
    subst_with(&mut FreshCounter::new(), body, var, replacement)
}

/// `body[var ↦ replacement]`, drawing renamed binders from `fresh`.
pub fn subst_with(fresh: &mut FreshCounter, body: &Expr, var: &str, replacement: &Expr) -> Expr {
    if !occurs_free(body, var) {
        return body.clone();
    }
    let mut s = Substitution {
        var,
        replacement,
        replacement_fv: free_vars(replacement),
        fresh,
    };
    s.go(body)
}

struct Substitution<'a> {
    var: &'a str,
    replacement: &'a Expr,
    replacement_fv: HashSet<String>,
    fresh: &'a mut FreshCounter,
}

impl Substitution<'_> {
    fn go(&mut self, e: &Expr) -> Expr {
        match e {
            Expr::Var(x) if x == self.var => self.replacement.clone(),
            Expr::Lam(x, b) => {
                let (x, b) = self.under(x, b);
                Expr::Lam(x, Box::new(b))
            }
            Expr::Pi(x, d, b) => {
                let d = self.go(d);
                let (x, b) = self.under(x, b);
                Expr::Pi(x, Box::new(d), Box::new(b))
            }
            Expr::Sigma(x, d, b) => {
                let d = self.go(d);
                let (x, b) = self.under(x, b);
                Expr::Sigma(x, Box::new(d), Box::new(b))
            }
            _ => e.map_children(|c| self.go(c)),
        }
    }

    /// Substitutes under a binder, renaming it if it would capture.
    fn under(&mut self, x: &str, body: &Expr) -> (String, Expr) {
        if x == self.var || !occurs_free(body, self.var) {
            return (x.to_string(), body.clone());
        }
        if !self.replacement_fv.contains(x) {
            return (x.to_string(), self.go(body));
        }
        let body_fv = free_vars(body);
        let var = self.var;
        let repl_fv = &self.replacement_fv;
        let renamed = self
            .fresh
            .fresh(x, |n| n == var || body_fv.contains(n) || repl_fv.contains(n));
        let body = subst_with(self.fresh, body, x, &Expr::Var(renamed.clone()));
        (renamed, self.go(&body))
    }
}
