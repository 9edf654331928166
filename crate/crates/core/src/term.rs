//! Terms of theory T in nameless (de Bruijn index) form.
//!
//! Binder names are carried only as printing hints: equality and hashing
//! ignore them, so two alpha-equivalent terms compare equal.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::types::Type;
use crate::Nat;

/// Printing hint for a binder.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Name {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Name {
        Name::new(s)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone)]
pub enum Term {
    /// De Bruijn index; 0 is the innermost binder.
    Var(usize),
    Lam(Name, Type, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    /// `0_N`
    Zero,
    /// `S₊`
    Succ,
    /// `R_τ`
    Rec(Type),
}

fn placeholder() -> Arc<Term> {
    static HOLE: OnceLock<Arc<Term>> = OnceLock::new();
    HOLE.get_or_init(|| Arc::new(Term::Zero)).clone()
}

// Numerals are long right-nested chains; dropping them recursively would
// overflow the stack.
impl Drop for Term {
    fn drop(&mut self) {
        fn take_unique(term: &mut Term, out: &mut Vec<Arc<Term>>) {
            match term {
                Term::Lam(_, _, body) => {
                    if Arc::get_mut(body).is_some() {
                        out.push(std::mem::replace(body, placeholder()));
                    }
                }
                Term::App(f, a) => {
                    if Arc::get_mut(f).is_some() {
                        out.push(std::mem::replace(f, placeholder()));
                    }
                    if Arc::get_mut(a).is_some() {
                        out.push(std::mem::replace(a, placeholder()));
                    }
                }
                _ => {}
            }
        }
        let mut pending = Vec::new();
        take_unique(self, &mut pending);
        while let Some(child) = pending.pop() {
            if let Ok(mut inner) = Arc::try_unwrap(child) {
                take_unique(&mut inner, &mut pending);
            }
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        let mut work: Vec<(&Term, &Term)> = vec![(self, other)];
        while let Some((a, b)) = work.pop() {
            if std::ptr::eq(a, b) {
                continue;
            }
            match (a, b) {
                (Term::Var(i), Term::Var(j)) if i == j => {}
                (Term::Lam(_, s, x), Term::Lam(_, t, y)) if s == t => work.push((x, y)),
                (Term::App(f, x), Term::App(g, y)) => {
                    work.push((x, y));
                    work.push((f, g));
                }
                (Term::Zero, Term::Zero) | (Term::Succ, Term::Succ) => {}
                (Term::Rec(s), Term::Rec(t)) if s == t => {}
                _ => return false,
            }
        }
        true
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let mut work: Vec<&Term> = vec![self];
        while let Some(t) = work.pop() {
            match t {
                Term::Var(i) => {
                    state.write_u8(0);
                    state.write_usize(*i);
                }
                Term::Lam(_, ty, body) => {
                    state.write_u8(1);
                    ty.hash(state);
                    work.push(body);
                }
                Term::App(f, a) => {
                    state.write_u8(2);
                    work.push(a);
                    work.push(f);
                }
                Term::Zero => state.write_u8(3),
                Term::Succ => state.write_u8(4),
                Term::Rec(ty) => {
                    state.write_u8(5);
                    ty.hash(state);
                }
            }
        }
    }
}

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(index)
    }

    pub fn lam(name: impl Into<Name>, ty: Type, body: Term) -> Term {
        Term::Lam(name.into(), ty, Arc::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    pub fn apps<I: IntoIterator<Item = Term>>(f: Term, args: I) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    /// `S₊ⁿ 0_N`.
    pub fn numeral(n: u64) -> Term {
        let mut t = Term::Zero;
        for _ in 0..n {
            t = Term::app(Term::Succ, t);
        }
        t
    }

    pub fn numeral_big(n: &Nat) -> Option<Term> {
        n.to_u64().map(Term::numeral)
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let Term::App(f, a) = cur {
            args.push(&**a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    /// If this term is syntactically `S₊ⁿ 0_N`, returns `n`.
    pub fn as_numeral(&self) -> Option<Nat> {
        self.as_numeral_u64().map(BigUint::from)
    }

    pub fn as_numeral_u64(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut cur = self;
        loop {
            match cur {
                Term::Zero => return Some(n),
                Term::App(f, a) if matches!(**f, Term::Succ) => {
                    n += 1;
                    cur = a;
                }
                _ => return None,
            }
        }
    }

    /// No occurrences of `0_N`, `S₊` or `R_τ`.
    pub fn is_pure(&self) -> bool {
        let mut work = vec![self];
        while let Some(t) = work.pop() {
            match t {
                Term::Var(_) => {}
                Term::Lam(_, _, b) => work.push(b),
                Term::App(f, a) => {
                    work.push(f);
                    work.push(a);
                }
                Term::Zero | Term::Succ | Term::Rec(_) => return false,
            }
        }
        true
    }

    /// Number of term nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        let mut work = vec![self];
        while let Some(t) = work.pop() {
            n += 1;
            match t {
                Term::Lam(_, _, b) => work.push(b),
                Term::App(f, a) => {
                    work.push(f);
                    work.push(a);
                }
                _ => {}
            }
        }
        n
    }

    /// True if de Bruijn index `index` (relative to this term's root) occurs free.
    pub fn has_free(&self, index: usize) -> bool {
        let mut work = vec![(self, index)];
        while let Some((t, k)) = work.pop() {
            match t {
                Term::Var(i) if *i == k => return true,
                Term::Lam(_, _, b) => work.push((b, k + 1)),
                Term::App(f, a) => {
                    work.push((f, k));
                    work.push((a, k));
                }
                _ => {}
            }
        }
        false
    }

    /// Number of enclosing binders this term needs (0 for closed terms).
    pub fn free_extent(&self) -> usize {
        fn go(t: &Term, depth: usize) -> usize {
            match t {
                Term::Var(i) => (i + 1).saturating_sub(depth),
                Term::Lam(_, _, b) => go(b, depth + 1),
                Term::App(f, a) => {
                    if t.as_numeral_u64().is_some() {
                        return 0;
                    }
                    go(f, depth).max(go(a, depth))
                }
                _ => 0,
            }
        }
        go(self, 0)
    }

    pub fn is_closed(&self) -> bool {
        self.free_extent() == 0
    }

    /// Adds `delta` to every free index `>= cutoff`.
    pub fn shift(&self, delta: isize, cutoff: usize) -> Term {
        match self {
            Term::Var(i) if *i >= cutoff => {
                let j = *i as isize + delta;
                assert!(j >= 0, "shift produced a negative index");
                Term::Var(j as usize)
            }
            Term::Lam(n, ty, b) => Term::Lam(n.clone(), ty.clone(), Arc::new(b.shift(delta, cutoff + 1))),
            Term::App(f, a) => {
                if self.as_numeral_u64().is_some() {
                    return self.clone();
                }
                Term::App(Arc::new(f.shift(delta, cutoff)), Arc::new(a.shift(delta, cutoff)))
            }
            _ => self.clone(),
        }
    }

    /// Replaces free index `index` by `with` (which lives in the same scope
    /// as `self`'s root), leaving other indices untouched.
    pub fn subst(&self, index: usize, with: &Term) -> Term {
        fn go(t: &Term, k: usize, with: &Term) -> Term {
            match t {
                Term::Var(i) if *i == k => with.shift(k as isize, 0),
                Term::Lam(n, ty, b) => Term::Lam(n.clone(), ty.clone(), Arc::new(go(b, k + 1, with))),
                Term::App(f, a) => {
                    if t.as_numeral_u64().is_some() {
                        return t.clone();
                    }
                    Term::App(Arc::new(go(f, k, with)), Arc::new(go(a, k, with)))
                }
                _ => t.clone(),
            }
        }
        go(self, index, with)
    }

    /// Alpha-equivalence; identical to `==` on the nameless representation.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        self == other
    }
}

pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    a == b
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Typing context: a stack of named, typed variables. Index 0 is the most
/// recently pushed entry, matching de Bruijn indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context {
    entries: Vec<(Name, Type)>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    /// Builds a context from outermost to innermost.
    pub fn from_bindings<'a, I>(bindings: I) -> Context
    where
        I: IntoIterator<Item = (&'a str, Type)>,
    {
        let mut ctx = Context::new();
        for (name, ty) in bindings {
            ctx.push(Name::new(name), ty);
        }
        ctx
    }

    pub fn push(&mut self, name: Name, ty: Type) {
        self.entries.push((name, ty));
    }

    pub fn pop(&mut self) -> Option<(Name, Type)> {
        self.entries.pop()
    }

    pub fn extended(&self, name: Name, ty: Type) -> Context {
        let mut c = self.clone();
        c.push(name, ty);
        c
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, index: usize) -> Option<&(Name, Type)> {
        self.entries.len().checked_sub(index + 1).map(|i| &self.entries[i])
    }

    /// Index of the innermost variable called `name`.
    pub fn find(&self, name: &str) -> Option<usize> {
        self.entries.iter().rev().position(|(n, _)| n.as_str() == name)
    }

    /// Entries from outermost to innermost.
    pub fn iter(&self) -> impl Iterator<Item = &(Name, Type)> {
        self.entries.iter()
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|(n, _)| n.as_str().to_string()).collect()
    }
}
