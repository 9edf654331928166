//! Pretty printing in the surface grammar accepted by [`crate::parse`].
//!
//! Binders keep their hint names unless that would capture or shadow a name
//! already in scope, in which case a numeric suffix is appended.

use std::fmt::{self, Write};

use crate::term::{Context, Term};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = Printer { names: Vec::new() };
        p.term(f, self, Prec::Top)
    }
}

/// Prints `term` with free variables named from `ctx`.
pub fn display_in(ctx: &Context, term: &Term) -> String {
    let mut p = Printer { names: ctx.names() };
    let mut out = String::new();
    p.term(&mut out, term, Prec::Top).expect("writing to a String");
    out
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Top,
    App,
    Atom,
}

struct Printer {
    names: Vec<String>,
}

impl Printer {
    fn fresh(&self, hint: &str) -> String {
        let base = if hint.is_empty() || crate::parse::is_reserved(hint) { "v" } else { hint };
        if !self.names.iter().any(|n| n == base) {
            return base.to_string();
        }
        (1..)
            .map(|k| format!("{base}{k}"))
            .find(|cand| !self.names.iter().any(|n| n == cand))
            .expect("infinitely many candidates")
    }

    fn term<W: Write>(&mut self, out: &mut W, t: &Term, prec: Prec) -> fmt::Result {
        if let Some(n) = t.as_numeral_u64() {
            return write!(out, "#{n}");
        }
        match t {
            Term::Var(i) => match self.names.len().checked_sub(i + 1) {
                Some(k) => out.write_str(&self.names[k]),
                None => write!(out, "?{i}"),
            },
            Term::Lam(name, ty, body) => {
                let open = prec > Prec::Top;
                if open {
                    out.write_char('(')?;
                }
                let n = self.fresh(name.as_str());
                write!(out, "\\{n}:{ty}. ")?;
                self.names.push(n);
                let r = self.term(out, body, Prec::Top);
                self.names.pop();
                r?;
                if open {
                    out.write_char(')')?;
                }
                Ok(())
            }
            Term::App(f, a) => {
                let open = prec > Prec::App;
                if open {
                    out.write_char('(')?;
                }
                self.term(out, f, Prec::App)?;
                out.write_char(' ')?;
                self.term(out, a, Prec::Atom)?;
                if open {
                    out.write_char(')')?;
                }
                Ok(())
            }
            Term::Zero => out.write_str("#0"),
            Term::Succ => out.write_str("S"),
            Term::Rec(ty) => write!(out, "R[{ty}]"),
        }
    }
}
