//! A deliberately simple normal-order rewriter over the public term type,
//! with its own shifting and substitution.
//!
//! The leftmost-outermost β- or recursor redex is always contracted first.
//! An η-redex is contracted when its lambda is visited, and again after the
//! body has been normalized.

use std::sync::Arc;

use godel_t::Term;

fn shift(t: &Term, d: isize, c: usize) -> Term {
    match t {
        Term::Var(i) if *i >= c => Term::Var((*i as isize + d) as usize),
        Term::Var(_) | Term::Zero | Term::Succ | Term::Rec(_) => t.clone(),
        Term::Lam(n, ty, b) => Term::Lam(n.clone(), ty.clone(), Arc::new(shift(b, d, c + 1))),
        Term::App(f, a) => Term::App(Arc::new(shift(f, d, c)), Arc::new(shift(a, d, c))),
    }
}

/// `body[0 := arg]` with the binder removed.
fn instantiate(t: &Term, depth: usize, arg: &Term) -> Term {
    match t {
        Term::Var(i) if *i == depth => shift(arg, depth as isize, 0),
        Term::Var(i) if *i > depth => Term::Var(i - 1),
        Term::Var(_) | Term::Zero | Term::Succ | Term::Rec(_) => t.clone(),
        Term::Lam(n, ty, b) => Term::Lam(n.clone(), ty.clone(), Arc::new(instantiate(b, depth + 1, arg))),
        Term::App(f, a) => Term::App(Arc::new(instantiate(f, depth, arg)), Arc::new(instantiate(a, depth, arg))),
    }
}

fn occurs(t: &Term, j: usize) -> bool {
    match t {
        Term::Var(i) => *i == j,
        Term::Lam(_, _, b) => occurs(b, j + 1),
        Term::App(f, a) => occurs(f, j) || occurs(a, j),
        _ => false,
    }
}

fn eta(body: &Term) -> Option<Term> {
    match body {
        Term::App(m, x) if matches!(**x, Term::Var(0)) && !occurs(m, 0) => Some(shift(m, -1, 0)),
        _ => None,
    }
}

fn spine(t: Term) -> (Term, Vec<Term>) {
    let mut args = Vec::new();
    let mut head = t;
    while let Term::App(f, a) = &head {
        args.push((**a).clone());
        let f = (**f).clone();
        head = f;
    }
    args.reverse();
    (head, args)
}

fn rebuild(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
    args.into_iter().fold(head, Term::app)
}

fn is_constructor(head: &Term, args: &[Term]) -> bool {
    matches!((head, args.len()), (Term::Zero, 0) | (Term::Succ, 1))
}

struct Rewriter {
    steps: u64,
    max: u64,
}

impl Rewriter {
    fn tick(&mut self) -> Option<()> {
        self.steps += 1;
        (self.steps <= self.max).then_some(())
    }

    /// Reduces until `t` is normal or, with `stop_at_constructor`, until it
    /// has the shape `0` or `S c`.
    fn run(&mut self, mut t: Term, stop_at_constructor: bool) -> Option<Term> {
        loop {
            if let Term::Lam(n, ty, b) = &t {
                if let Some(m) = eta(b) {
                    self.tick()?;
                    t = m;
                    continue;
                }
                let b = self.run((**b).clone(), false)?;
                if let Some(m) = eta(&b) {
                    self.tick()?;
                    return Some(m);
                }
                return Some(Term::Lam(n.clone(), ty.clone(), Arc::new(b)));
            }
            let (head, mut args) = spine(t);
            match &head {
                Term::Lam(_, _, body) if !args.is_empty() => {
                    self.tick()?;
                    let rest = args.split_off(1);
                    t = rebuild(instantiate(body, 0, &args[0]), rest);
                    continue;
                }
                Term::Rec(_) if args.len() >= 3 => {
                    args[0] = self.run(args[0].clone(), false)?;
                    args[1] = self.run(args[1].clone(), false)?;
                    args[2] = self.run(args[2].clone(), true)?;
                    let (nh, mut nargs) = spine(args[2].clone());
                    if is_constructor(&nh, &nargs) {
                        self.tick()?;
                        let rest = args.split_off(3);
                        let (z, b) = (args[0].clone(), args[1].clone());
                        t = match nargs.pop() {
                            None => rebuild(z, rest),
                            Some(c) => {
                                let rec = rebuild(head.clone(), [z, b.clone(), c.clone()]);
                                rebuild(b, [rec, c].into_iter().chain(rest))
                            }
                        };
                        continue;
                    }
                    for a in args.iter_mut().skip(3) {
                        *a = self.run(a.clone(), false)?;
                    }
                    return Some(rebuild(head, args));
                }
                _ => {
                    if stop_at_constructor && is_constructor(&head, &args) {
                        return Some(rebuild(head, args));
                    }
                    for a in args.iter_mut() {
                        *a = self.run(a.clone(), false)?;
                    }
                    return Some(rebuild(head, args));
                }
            }
        }
    }
}

/// The normal form and step count, or `None` past `max_steps`.
pub fn normalize(t: &Term, max_steps: u64) -> Option<(Term, u64)> {
    let mut r = Rewriter { steps: 0, max: max_steps };
    let nf = r.run(t.clone(), false)?;
    Some((nf, r.steps))
}

fn has_redex(t: &Term) -> bool {
    if let Term::Lam(_, _, b) = t {
        return eta(b).is_some() || has_redex(b);
    }
    let Term::App(f, a) = t else { return false };
    if matches!(**f, Term::Lam(..)) {
        return true;
    }
    if let Term::App(g, _) = &**f {
        if let Term::App(r, _) = &**g {
            if matches!(**r, Term::Rec(_)) {
                let (h, args) = spine((**a).clone());
                if is_constructor(&h, &args) {
                    return true;
                }
            }
        }
    }
    has_redex(f) || has_redex(a)
}

/// True iff no β-, η- or recursor redex occurs anywhere in `t`.
pub fn is_normal(t: &Term) -> bool {
    !has_redex(t)
}
