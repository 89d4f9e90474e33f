use super::{Expr, ANON};

/// Fully parenthesized printer. Output always re-parses to the same AST.
#[derive(Clone, Copy, Debug, Default)]
pub struct Printer {
    pub ascii: bool,
}

struct Glyphs {
    lambda: &'static str,
    forall: &'static str,
    exists: &'static str,
    bot: &'static str,
    and: &'static str,
    or: &'static str,
    and_intro: &'static str,
    and_elim0: &'static str,
    and_elim1: &'static str,
    or_intro0: &'static str,
    or_intro1: &'static str,
    or_elim: &'static str,
    bot_elim: &'static str,
    ex_intro: &'static str,
    ex_elim: &'static str,
}

const UNICODE: Glyphs = Glyphs {
    lambda: "λ",
    forall: "∀",
    exists: "∃",
    bot: "⊥",
    and: "∧",
    or: "∨",
    and_intro: "∧-intro",
    and_elim0: "∧-elim0",
    and_elim1: "∧-elim1",
    or_intro0: "∨-intro0",
    or_intro1: "∨-intro1",
    or_elim: "∨-elim",
    bot_elim: "⊥-elim",
    ex_intro: "∃-intro",
    ex_elim: "∃-elim",
};

const ASCII: Glyphs = Glyphs {
    lambda: "\\",
    forall: "forall",
    exists: "exists",
    bot: "bot",
    and: "/\\",
    or: "\\/",
    and_intro: "and-intro",
    and_elim0: "and-elim0",
    and_elim1: "and-elim1",
    or_intro0: "or-intro0",
    or_intro1: "or-intro1",
    or_elim: "or-elim",
    bot_elim: "bot-elim",
    ex_intro: "exists-intro",
    ex_elim: "exists-elim",
};

impl Printer {
    pub fn new(ascii: bool) -> Self {
        Printer { ascii }
    }

    pub fn print(&self, e: &Expr) -> String {
        let mut out = String::new();
        self.write(e, &mut out);
        out
    }

    fn glyphs(&self) -> &'static Glyphs {
        if self.ascii {
            &ASCII
        } else {
            &UNICODE
        }
    }

    fn form(&self, head: &str, args: &[&Expr], out: &mut String) {
        out.push('(');
        out.push_str(head);
        for a in args {
            out.push(' ');
            self.write(a, out);
        }
        out.push(')');
    }

    fn infix(&self, l: &Expr, op: &str, r: &Expr, out: &mut String) {
        out.push('(');
        self.write(l, out);
        out.push(' ');
        out.push_str(op);
        out.push(' ');
        self.write(r, out);
        out.push(')');
    }

    fn binder(&self, q: &str, x: &str, dom: &Expr, body: &Expr, out: &mut String) {
        out.push('(');
        out.push_str(q);
        out.push_str(" (");
        out.push_str(x);
        out.push_str(" : ");
        self.write(dom, out);
        out.push_str(") -> ");
        self.write(body, out);
        out.push(')');
    }

    fn write(&self, e: &Expr, out: &mut String) {
        let g = self.glyphs();
        match e {
            Expr::Var(x) => out.push_str(x),
            Expr::Hole(n) => {
                out.push('?');
                out.push_str(&n.to_string());
            }
            Expr::Type => out.push_str("Type"),
            Expr::Bot => out.push_str(g.bot),
            Expr::Nat => out.push_str("Nat"),
            Expr::Zero => out.push('Z'),
            Expr::Lam(x, b) => {
                out.push('(');
                out.push_str(g.lambda);
                out.push(' ');
                out.push_str(x);
                out.push_str(" => ");
                self.write(b, out);
                out.push(')');
            }
            Expr::App(f, a) => {
                out.push('(');
                self.write(f, out);
                out.push(' ');
                self.write(a, out);
                out.push(')');
            }
            Expr::Ann(t, ty) => self.infix(t, ":", ty, out),
            Expr::Pi(x, dom, cod) if x == ANON => self.infix(dom, "->", cod, out),
            Expr::Pi(x, dom, cod) => self.binder(g.forall, x, dom, cod, out),
            Expr::Sigma(x, dom, body) => self.binder(g.exists, x, dom, body, out),
            Expr::Succ(n) => self.form("S", &[n], out),
            Expr::And(l, r) => self.infix(l, g.and, r, out),
            Expr::Or(l, r) => self.infix(l, g.or, r, out),
            Expr::Eq(l, r) => self.infix(l, "=", r, out),
            Expr::AndIntro(a, b) => self.form(g.and_intro, &[a, b], out),
            Expr::AndElim0(a) => self.form(g.and_elim0, &[a], out),
            Expr::AndElim1(a) => self.form(g.and_elim1, &[a], out),
            Expr::OrIntro0(a) => self.form(g.or_intro0, &[a], out),
            Expr::OrIntro1(a) => self.form(g.or_intro1, &[a], out),
            Expr::OrElim(v, f, h) => self.form(g.or_elim, &[v, f, h], out),
            Expr::BotElim(a) => self.form(g.bot_elim, &[a], out),
            Expr::EqRefl(a) => self.form("eq-refl", &[a], out),
            Expr::EqElim(t, p, pt, w, peq) => self.form("eq-elim", &[t, p, pt, w, peq], out),
            Expr::NatInd(p, z, s, n) => self.form("nat-ind", &[p, z, s, n], out),
            Expr::ExIntro(t, a, pa) => self.form(g.ex_intro, &[t, a, pa], out),
            Expr::ExElim(v, f, b) => self.form(g.ex_elim, &[v, f, b], out),
        }
    }
}

/// Unicode rendering.
pub fn pretty(e: &Expr) -> String {
    Printer::new(false).print(e)
}

pub fn pretty_ascii(e: &Expr) -> String {
    Printer::new(true).print(e)
}
