//! Lazy environment machine with read-back.
//!
//! Terms are compiled to [`Code`], evaluated to weak head normal form by a
//! call-by-need machine with explicit update frames, and read back to
//! η-short βηT-normal terms by applying closures to fresh neutral variables.

use std::cell::RefCell;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::rc::Rc;
use std::sync::Arc;

use super::jets::{Acceleration, Jet};
use super::{Budget, NormalizeError, Resource, Stats};
use crate::term::{Name, Term};
use crate::types::Type;

pub(crate) enum Code {
    Var(usize),
    Lam(Name, Type, Rc<Code>),
    App(Rc<Code>, Rc<Code>),
    Num(u64),
    Succ,
    Rec(Type),
    Jet(Jet),
}

#[derive(Clone, Default)]
struct Env(Option<Rc<EnvNode>>);

struct EnvNode {
    head: Thunk,
    tail: Env,
}

impl Env {
    fn push(&self, t: Thunk) -> Env {
        Env(Some(Rc::new(EnvNode { head: t, tail: self.clone() })))
    }

    fn lookup(&self, index: usize) -> Option<&Thunk> {
        let mut cur = self.0.as_ref()?;
        for _ in 0..index {
            cur = cur.tail.0.as_ref()?;
        }
        Some(&cur.head)
    }
}

type Thunk = Rc<RefCell<Suspension>>;

enum Suspension {
    Eval(Rc<Code>, Env),
    /// `R_τ z f n`, created when the recursor unfolds one step.
    Rec(Type, Thunk, Thunk, Thunk),
    Blackhole,
    Done(Val),
}

fn done(v: Val) -> Thunk {
    Rc::new(RefCell::new(Suspension::Done(v)))
}

#[derive(Clone)]
enum Val {
    Num(u64),
    /// `S₊ᵏ n` for a stuck `n`, with `k ≥ 1`.
    SuccOf(u64, Rc<Neutral>),
    /// A closure; the code is always a `Code::Lam`.
    Lam(Rc<Code>, Env),
    Succ,
    Rec(Type, Vec<Thunk>),
    Jet(Jet, Vec<Thunk>),
    Neutral(Rc<Neutral>),
}

struct Neutral {
    head: Head,
    spine: Vec<Thunk>,
}

#[derive(Clone)]
enum Head {
    /// De Bruijn level.
    Var(usize),
    Rec(Type, Thunk, Thunk, Rc<Neutral>),
}

enum Focus {
    Eval(Rc<Code>, Env),
    Value(Val),
}

enum Frame {
    Arg(Thunk),
    Update(Thunk),
    Succ,
    RecScrutinee(Type, Thunk, Thunk),
    JetArgs(Jet, Vec<Thunk>, Vec<u64>),
}

fn structural_hash(t: &Term, children: &[u64]) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    match t {
        Term::Var(i) => (0u8, i).hash(&mut h),
        Term::Lam(_, ty, _) => (1u8, ty).hash(&mut h),
        Term::App(..) => 2u8.hash(&mut h),
        Term::Zero => 3u8.hash(&mut h),
        Term::Succ => 4u8.hash(&mut h),
        Term::Rec(ty) => (5u8, ty).hash(&mut h),
    }
    children.hash(&mut h);
    h.finish()
}

fn numeral_hash(n: u64) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    (6u8, n).hash(&mut h);
    h.finish()
}

/// Translates terms to code, replacing known combinators by jets.
pub(crate) struct Compiler {
    jets: Vec<(u64, Jet)>,
    memo: HashMap<*const Term, (Rc<Code>, u64)>,
}

impl Compiler {
    pub(crate) fn new(level: Acceleration) -> Compiler {
        let mut c = Compiler { jets: Vec::new(), memo: HashMap::new() };
        let enabled: Vec<Jet> = Jet::ALL.into_iter().filter(|j| j.enabled(level)).collect();
        let hashes: Vec<(u64, Jet)> = enabled.iter().map(|j| (c.compile_inner(j.term()).1, *j)).collect();
        c.memo.clear();
        c.jets = hashes;
        c
    }

    pub(crate) fn compile(&mut self, t: &Term) -> Rc<Code> {
        let code = self.compile_inner(t).0;
        self.memo.clear();
        code
    }

    fn compile_inner(&mut self, t: &Term) -> (Rc<Code>, u64) {
        let key = t as *const Term;
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let out = if let Some(n) = t.as_numeral_u64() {
            (Rc::new(Code::Num(n)), numeral_hash(n))
        } else {
            let (code, hash) = match t {
                Term::Var(i) => (Code::Var(*i), structural_hash(t, &[])),
                Term::Lam(name, ty, body) => {
                    let (b, hb) = self.compile_inner(body);
                    (Code::Lam(name.clone(), ty.clone(), b), structural_hash(t, &[hb]))
                }
                Term::App(f, a) => {
                    let (cf, hf) = self.compile_inner(f);
                    let (ca, ha) = self.compile_inner(a);
                    (Code::App(cf, ca), structural_hash(t, &[hf, ha]))
                }
                Term::Zero => (Code::Num(0), numeral_hash(0)),
                Term::Succ => (Code::Succ, structural_hash(t, &[])),
                Term::Rec(ty) => (Code::Rec(ty.clone()), structural_hash(t, &[])),
            };
            let jet = self
                .jets
                .iter()
                .find(|(h, j)| *h == hash && t == j.term())
                .map(|(_, j)| *j);
            match jet {
                Some(j) => (Rc::new(Code::Jet(j)), hash),
                None => (Rc::new(code), hash),
            }
        };
        self.memo.insert(key, out.clone());
        out
    }
}

pub(crate) struct Machine {
    budget: Budget,
    pub(crate) stats: Stats,
    fallbacks: HashMap<Jet, Thunk>,
    level: Acceleration,
}

impl Machine {
    pub(crate) fn new(budget: Budget, level: Acceleration) -> Machine {
        Machine { budget, stats: Stats::default(), fallbacks: HashMap::new(), level }
    }

    fn tick(&mut self) -> Result<(), NormalizeError> {
        self.stats.steps += 1;
        if self.stats.steps > self.budget.max_steps {
            return Err(self.exhausted(Resource::Steps));
        }
        Ok(())
    }

    fn grow(&mut self, nodes: u64) -> Result<(), NormalizeError> {
        self.stats.nodes = self.stats.nodes.saturating_add(nodes);
        if self.stats.nodes > self.budget.max_nodes {
            return Err(self.exhausted(Resource::Nodes));
        }
        Ok(())
    }

    fn exhausted(&self, resource: Resource) -> NormalizeError {
        NormalizeError::BudgetExhausted {
            resource,
            steps: self.stats.steps,
            nodes: self.stats.nodes,
        }
    }

    /// Normalizes `code` whose free variables are levels `0..depth`.
    pub(crate) fn normalize(&mut self, code: Rc<Code>, depth: usize) -> Result<Term, NormalizeError> {
        let mut env = Env::default();
        for level in 0..depth {
            env = env.push(done(Val::Neutral(Rc::new(Neutral { head: Head::Var(level), spine: Vec::new() }))));
        }
        let v = self.whnf(Focus::Eval(code, env), Vec::new())?;
        self.quote(v, depth)
    }

    fn fallback(&mut self, jet: Jet) -> Thunk {
        if let Some(t) = self.fallbacks.get(&jet) {
            return t.clone();
        }
        // compile the combinator body without recognizing the root as a jet
        let mut compiler = Compiler::new(self.level);
        compiler.jets.retain(|(_, j)| *j != jet);
        let code = compiler.compile(jet.term());
        let t = Rc::new(RefCell::new(Suspension::Eval(code, Env::default())));
        self.fallbacks.insert(jet, t.clone());
        t
    }

    fn delay(&self, code: &Rc<Code>, env: &Env) -> Result<Thunk, NormalizeError> {
        Ok(match &**code {
            Code::Var(i) => env.lookup(*i).ok_or(NormalizeError::Internal("unbound index"))?.clone(),
            Code::Num(n) => done(Val::Num(*n)),
            Code::Lam(..) => done(Val::Lam(code.clone(), env.clone())),
            Code::Succ => done(Val::Succ),
            Code::Rec(ty) => done(Val::Rec(ty.clone(), Vec::new())),
            Code::Jet(j) => done(Val::Jet(*j, Vec::new())),
            Code::App(..) => Rc::new(RefCell::new(Suspension::Eval(code.clone(), env.clone()))),
        })
    }

    fn enter(&mut self, t: Thunk, stack: &mut Vec<Frame>) -> Result<Focus, NormalizeError> {
        if let Suspension::Done(v) = &*t.borrow() {
            return Ok(Focus::Value(v.clone()));
        }
        let state = std::mem::replace(&mut *t.borrow_mut(), Suspension::Blackhole);
        match state {
            Suspension::Eval(code, env) => {
                stack.push(Frame::Update(t));
                Ok(Focus::Eval(code, env))
            }
            Suspension::Rec(ty, z, f, n) => {
                stack.push(Frame::Update(t));
                stack.push(Frame::Arg(n));
                stack.push(Frame::Arg(f));
                stack.push(Frame::Arg(z));
                Ok(Focus::Value(Val::Rec(ty, Vec::new())))
            }
            Suspension::Blackhole => Err(NormalizeError::Internal("cyclic evaluation")),
            Suspension::Done(_) => unreachable!("handled above"),
        }
    }

    fn force(&mut self, t: &Thunk) -> Result<Val, NormalizeError> {
        let mut stack = Vec::new();
        let focus = self.enter(t.clone(), &mut stack)?;
        self.whnf(focus, stack)
    }

    fn whnf(&mut self, mut focus: Focus, mut stack: Vec<Frame>) -> Result<Val, NormalizeError> {
        loop {
            focus = match focus {
                Focus::Eval(code, env) => match &*code {
                    Code::Var(i) => {
                        let t = env.lookup(*i).ok_or(NormalizeError::Internal("unbound index"))?.clone();
                        self.enter(t, &mut stack)?
                    }
                    Code::App(f, a) => {
                        stack.push(Frame::Arg(self.delay(a, &env)?));
                        Focus::Eval(f.clone(), env)
                    }
                    Code::Lam(..) => Focus::Value(Val::Lam(code.clone(), env)),
                    Code::Num(n) => Focus::Value(Val::Num(*n)),
                    Code::Succ => Focus::Value(Val::Succ),
                    Code::Rec(ty) => Focus::Value(Val::Rec(ty.clone(), Vec::new())),
                    Code::Jet(j) => Focus::Value(Val::Jet(*j, Vec::new())),
                },
                Focus::Value(v) => {
                    let Some(frame) = stack.pop() else {
                        return Ok(v);
                    };
                    match frame {
                        Frame::Update(t) => {
                            *t.borrow_mut() = Suspension::Done(v.clone());
                            Focus::Value(v)
                        }
                        Frame::Arg(arg) => self.apply(v, arg, &mut stack)?,
                        Frame::Succ => Focus::Value(match v {
                            Val::Num(k) => Val::Num(k.checked_add(1).ok_or(NormalizeError::Overflow)?),
                            Val::SuccOf(k, n) => Val::SuccOf(k + 1, n),
                            Val::Neutral(n) => Val::SuccOf(1, n),
                            _ => return Err(NormalizeError::Internal("successor of a function")),
                        }),
                        Frame::RecScrutinee(ty, z, f) => self.recurse(ty, z, f, v, &mut stack)?,
                        Frame::JetArgs(jet, args, mut nums) => match v {
                            Val::Num(k) => {
                                nums.push(k);
                                if nums.len() == args.len() {
                                    self.tick()?;
                                    self.stats.jet_steps += 1;
                                    let r = jet.eval(&nums).ok_or(NormalizeError::Overflow)?;
                                    Focus::Value(Val::Num(r))
                                } else {
                                    let next = args[nums.len()].clone();
                                    stack.push(Frame::JetArgs(jet, args, nums));
                                    self.enter(next, &mut stack)?
                                }
                            }
                            _ => {
                                for a in args.into_iter().rev() {
                                    stack.push(Frame::Arg(a));
                                }
                                let fb = self.fallback(jet);
                                self.enter(fb, &mut stack)?
                            }
                        },
                    }
                }
            };
        }
    }

    fn apply(&mut self, v: Val, arg: Thunk, stack: &mut Vec<Frame>) -> Result<Focus, NormalizeError> {
        Ok(match v {
            Val::Lam(code, env) => {
                let Code::Lam(_, _, body) = &*code else {
                    return Err(NormalizeError::Internal("closure without a binder"));
                };
                self.tick()?;
                Focus::Eval(body.clone(), env.push(arg))
            }
            Val::Succ => {
                stack.push(Frame::Succ);
                self.enter(arg, stack)?
            }
            Val::Rec(ty, mut args) => {
                args.push(arg);
                if args.len() < 3 {
                    Focus::Value(Val::Rec(ty, args))
                } else {
                    let n = args.pop().expect("three arguments");
                    let f = args.pop().expect("three arguments");
                    let z = args.pop().expect("three arguments");
                    stack.push(Frame::RecScrutinee(ty, z, f));
                    self.enter(n, stack)?
                }
            }
            Val::Jet(jet, mut args) => {
                args.push(arg);
                if args.len() < jet.arity() {
                    Focus::Value(Val::Jet(jet, args))
                } else {
                    let first = args[0].clone();
                    stack.push(Frame::JetArgs(jet, args, Vec::new()));
                    self.enter(first, stack)?
                }
            }
            Val::Neutral(n) => {
                let mut spine = n.spine.clone();
                spine.push(arg);
                Focus::Value(Val::Neutral(Rc::new(Neutral { head: n.head.clone(), spine })))
            }
            Val::Num(_) | Val::SuccOf(..) => return Err(NormalizeError::Internal("numeral applied to an argument")),
        })
    }

    fn recurse(&mut self, ty: Type, z: Thunk, f: Thunk, n: Val, stack: &mut Vec<Frame>) -> Result<Focus, NormalizeError> {
        let pred = match n {
            Val::Num(0) => {
                self.tick()?;
                return self.enter(z, stack);
            }
            Val::Num(k) => Val::Num(k - 1),
            Val::SuccOf(1, m) => Val::Neutral(m),
            Val::SuccOf(k, m) => Val::SuccOf(k - 1, m),
            Val::Neutral(m) => {
                return Ok(Focus::Value(Val::Neutral(Rc::new(Neutral {
                    head: Head::Rec(ty, z, f, m),
                    spine: Vec::new(),
                }))));
            }
            _ => return Err(NormalizeError::Internal("recursion on a function")),
        };
        self.tick()?;
        let pred = done(pred);
        let rec = Rc::new(RefCell::new(Suspension::Rec(ty, z, f.clone(), pred.clone())));
        stack.push(Frame::Arg(pred));
        stack.push(Frame::Arg(rec));
        self.enter(f, stack)
    }

    fn quote(&mut self, v: Val, depth: usize) -> Result<Term, NormalizeError> {
        match v {
            Val::Num(n) => {
                self.grow(n.saturating_mul(2).saturating_add(1))?;
                Ok(Term::numeral(n))
            }
            Val::SuccOf(k, n) => {
                self.grow(k.saturating_mul(2))?;
                let mut t = self.quote_neutral(&n, depth)?;
                for _ in 0..k {
                    t = Term::app(Term::Succ, t);
                }
                Ok(t)
            }
            Val::Lam(code, env) => {
                let Code::Lam(name, ty, body) = &*code else {
                    return Err(NormalizeError::Internal("closure without a binder"));
                };
                let var = done(Val::Neutral(Rc::new(Neutral { head: Head::Var(depth), spine: Vec::new() })));
                let inner = self.whnf(Focus::Eval(body.clone(), env.push(var)), Vec::new())?;
                let b = self.quote(inner, depth + 1)?;
                if let Term::App(m, a) = &b {
                    if matches!(**a, Term::Var(0)) && !m.has_free(0) {
                        self.tick()?;
                        return Ok(m.shift(-1, 0));
                    }
                }
                self.grow(1)?;
                Ok(Term::Lam(name.clone(), ty.clone(), Arc::new(b)))
            }
            Val::Succ => {
                self.grow(1)?;
                Ok(Term::Succ)
            }
            Val::Rec(ty, args) => {
                self.grow(1)?;
                let mut t = Term::Rec(ty);
                for a in &args {
                    let av = self.force(a)?;
                    self.grow(1)?;
                    t = Term::app(t, self.quote(av, depth)?);
                }
                Ok(t)
            }
            Val::Jet(jet, args) => {
                let fb = self.fallback(jet);
                let mut stack: Vec<Frame> = args.into_iter().rev().map(Frame::Arg).collect();
                let focus = self.enter(fb, &mut stack)?;
                let v = self.whnf(focus, stack)?;
                self.quote(v, depth)
            }
            Val::Neutral(n) => self.quote_neutral(&n, depth),
        }
    }

    fn quote_neutral(&mut self, n: &Neutral, depth: usize) -> Result<Term, NormalizeError> {
        let mut t = match &n.head {
            Head::Var(level) => {
                self.grow(1)?;
                Term::Var(depth - 1 - level)
            }
            Head::Rec(ty, z, f, scrut) => {
                self.grow(4)?;
                let zv = self.force(z)?;
                let zt = self.quote(zv, depth)?;
                let fv = self.force(f)?;
                let ft = self.quote(fv, depth)?;
                let st = self.quote_neutral(scrut, depth)?;
                Term::apps(Term::Rec(ty.clone()), [zt, ft, st])
            }
        };
        for a in &n.spine {
            let av = self.force(a)?;
            self.grow(1)?;
            t = Term::app(t, self.quote(av, depth)?);
        }
        Ok(t)
    }
}
