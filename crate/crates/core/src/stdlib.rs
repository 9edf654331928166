//! Closed combinators: arithmetic, Cantor pairing, Curry pairing and
//! tuples, zero terms, lists, and higher-type iteration.

use std::fmt::Write as _;
use std::sync::OnceLock;

use thiserror::Error;

use crate::parse::{parse_term_with, Prelude};
use crate::term::{Context, Term};
use crate::types::Type;
use crate::typing::infer_type;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StdlibError {
    #[error("projection index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("a tuple needs at least one component")]
    EmptyTuple,
    #[error("expected {expected} components, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("unknown combinator `{0}`")]
    Unknown(String),
}

/// A named closed term together with its type.
#[derive(Clone, Debug)]
pub struct Combinator {
    pub name: String,
    pub term: Term,
    pub ty: Type,
}

impl Combinator {
    fn new(name: impl Into<String>, term: Term) -> Combinator {
        let name = name.into();
        let ty = infer_type(&Context::new(), &term)
            .unwrap_or_else(|e| panic!("combinator {name} is ill-typed: {e}"));
        assert!(term.is_closed(), "combinator {name} is open");
        Combinator { name, term, ty }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Mult,
    Pred,
    Monus,
    Cond,
    Sum,
    MaxLe,
    Div,
}

impl ArithOp {
    pub const ALL: [ArithOp; 8] = [
        ArithOp::Add,
        ArithOp::Mult,
        ArithOp::Pred,
        ArithOp::Monus,
        ArithOp::Cond,
        ArithOp::Sum,
        ArithOp::MaxLe,
        ArithOp::Div,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ArithOp::Add => "Add",
            ArithOp::Mult => "Mult",
            ArithOp::Pred => "Pred",
            ArithOp::Monus => "Monus",
            ArithOp::Cond => "Cond",
            ArithOp::Sum => "Sum",
            ArithOp::MaxLe => "MaxLe",
            ArithOp::Div => "Div",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CantorOp {
    P0,
    P1,
    P2,
}

impl CantorOp {
    pub const ALL: [CantorOp; 3] = [CantorOp::P0, CantorOp::P1, CantorOp::P2];

    pub fn name(self) -> &'static str {
        match self {
            CantorOp::P0 => "P0",
            CantorOp::P1 => "P1",
            CantorOp::P2 => "P2",
        }
    }
}

const DEFINITIONS: &[(&str, &str)] = &[
    ("Add", r"\x:N. R[N] x (\a:N. \b:N. S a)"),
    ("Mult", r"\x:N. R[N] 0 (\a:N. \b:N. Add a x)"),
    ("Pred", r"R[N] 0 (\a:N. \b:N. b)"),
    ("Monus", r"\x:N. R[N] x (\a:N. \b:N. Pred a)"),
    ("Cond", r"\x:N. \y:N. R[N] x (\a:N. \b:N. y)"),
    ("Sum", r"\x:N. \f:N -> N. R[N] 0 (\a:N. \b:N. Add a (f b)) (S x)"),
    ("MaxLe", r"\x:N. \f:N -> N. R[N] 0 (\a:N. \b:N. Cond b a (f b)) (S x)"),
    ("Div", r"\x:N. \y:N. MaxLe x (\a:N. Monus (Mult a y) x)"),
    (
        "P0",
        r"\x:N. \y:N. Div (Add (Add (Mult x (Add x #3)) (Mult y (Add y #1))) (Mult (Mult #2 x) y)) #2",
    ),
    (
        "P1",
        r"\z:N. Sum z (\y:N. MaxLe z (\x:N. Add (Monus z (P0 x y)) (Monus (P0 x y) z)))",
    ),
    (
        "P2",
        r"\z:N. Sum z (\x:N. MaxLe z (\y:N. Add (Monus z (P0 x y)) (Monus (P0 x y) z)))",
    ),
];

/// The arithmetic and pairing combinators, addressable by name.
pub fn standard_prelude() -> &'static Prelude {
    static PRELUDE: OnceLock<Prelude> = OnceLock::new();
    PRELUDE.get_or_init(|| {
        let mut p = Prelude::new();
        for (name, src) in DEFINITIONS {
            p.define_src(name, src)
                .unwrap_or_else(|e| panic!("definition of {name}: {e}"));
        }
        p
    })
}

fn named(name: &str) -> Combinator {
    let term = standard_prelude()
        .get(name)
        .unwrap_or_else(|| panic!("{name} is not in the standard prelude"));
    Combinator::new(name, (**term).clone())
}

pub fn arith(op: ArithOp) -> Combinator {
    named(op.name())
}

pub fn cantor(op: CantorOp) -> Combinator {
    named(op.name())
}

/// Looks up any standard combinator by name (`Add`, `P1`, ...).
pub fn lookup(name: &str) -> Result<Combinator, StdlibError> {
    standard_prelude()
        .get(name)
        .map(|_| named(name))
        .ok_or_else(|| StdlibError::Unknown(name.to_string()))
}

/// `σ × τ = σ₁ -> … -> σₘ -> τ₁ -> … -> τₙ -> (N -> N -> N) -> N`.
pub fn product_type(sigma: &Type, tau: &Type) -> Type {
    let nnn = Type::arrows([Type::N, Type::N], Type::N);
    let args = sigma
        .arguments()
        .into_iter()
        .chain(tau.arguments())
        .chain(std::iter::once(nnn));
    Type::arrows(args.collect::<Vec<_>>(), Type::N)
}

/// Source text for `λx₁ … xₘ. body` with the given binder names and types.
pub(crate) fn lambdas(binders: &[(String, Type)], body: &str) -> String {
    let mut s = String::new();
    for (name, ty) in binders {
        write!(s, "\\{name}:{ty}. ").unwrap();
    }
    s.push_str(body);
    s
}

pub(crate) fn numbered(prefix: &str, types: &[Type]) -> Vec<(String, Type)> {
    types
        .iter()
        .enumerate()
        .map(|(k, t)| (format!("{prefix}{}", k + 1), t.clone()))
        .collect()
}

pub(crate) fn applied(head: &str, args: impl IntoIterator<Item = String>) -> String {
    let mut s = head.to_string();
    for a in args {
        write!(s, " ({a})").unwrap();
    }
    s
}

pub(crate) fn build(prelude: &Prelude, src: &str) -> Term {
    parse_term_with(prelude, &Context::new(), src)
        .unwrap_or_else(|e| panic!("generated term does not parse: {e}\n{src}"))
}

/// `0_σ = λx₁ … xₘ. 0_N`, and `0_N` itself at ground type.
pub fn zero_of_type(sigma: &Type) -> Combinator {
    let binders = numbered("x", &sigma.arguments());
    let term = build(&Prelude::new(), &lambdas(&binders, "0"));
    Combinator::new(format!("0[{sigma}]"), term)
}

/// Curry's pairing `D₀`, with projections `D₁` and `D₂`.
#[derive(Clone, Debug)]
pub struct CurryPair {
    pub d0: Combinator,
    pub d1: Combinator,
    pub d2: Combinator,
}

pub fn curry_pair(sigma: &Type, tau: &Type) -> CurryPair {
    let prod = product_type(sigma, tau);
    let nnn = Type::arrows([Type::N, Type::N], Type::N);
    let s = numbered("s", &sigma.arguments());
    let t = numbered("t", &tau.arguments());
    let names = |bs: &[(String, Type)]| bs.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>();
    let zeros = |bs: &[(String, Type)]| {
        bs.iter()
            .map(|(_, ty)| zero_of_type(ty).term.to_string())
            .collect::<Vec<_>>()
    };
    let none = Prelude::new();

    let mut d0_binders = vec![("x".to_string(), sigma.clone()), ("y".to_string(), tau.clone())];
    d0_binders.extend(s.iter().cloned());
    d0_binders.extend(t.iter().cloned());
    d0_binders.push(("p".to_string(), nnn));
    let body = format!(
        "p ({}) ({})",
        applied("x", names(&s)),
        applied("y", names(&t))
    );
    let d0 = build(&none, &lambdas(&d0_binders, &body));

    let mut d1_binders = vec![("q".to_string(), prod.clone())];
    d1_binders.extend(s.iter().cloned());
    let body = applied(
        "q",
        names(&s)
            .into_iter()
            .chain(zeros(&t))
            .chain(std::iter::once(r"\a:N. \b:N. a".to_string())),
    );
    let d1 = build(&none, &lambdas(&d1_binders, &body));

    let mut d2_binders = vec![("q".to_string(), prod)];
    d2_binders.extend(t.iter().cloned());
    let body = applied(
        "q",
        zeros(&s)
            .into_iter()
            .chain(names(&t))
            .chain(std::iter::once(r"\a:N. \b:N. b".to_string())),
    );
    let d2 = build(&none, &lambdas(&d2_binders, &body));

    CurryPair {
        d0: Combinator::new(format!("D0[{sigma}, {tau}]"), d0),
        d1: Combinator::new(format!("D1[{sigma}, {tau}]"), d1),
        d2: Combinator::new(format!("D2[{sigma}, {tau}]"), d2),
    }
}

/// `τ₁ × (τ₂ × (… × τₖ))`; a single component is its own tuple type.
pub fn tuple_type(types: &[Type]) -> Result<Type, StdlibError> {
    let (last, init) = types.split_last().ok_or(StdlibError::EmptyTuple)?;
    Ok(init
        .iter()
        .rev()
        .fold(last.clone(), |acc, ty| product_type(ty, &acc)))
}

/// `{A₁, {A₂, {…, Aₖ}}}` built from `D₀`.
pub fn tuple_literal(types: &[Type], items: Vec<Term>) -> Result<Term, StdlibError> {
    if items.len() != types.len() {
        return Err(StdlibError::Arity { expected: types.len(), found: items.len() });
    }
    let mut items = items;
    let mut acc = items.pop().ok_or(StdlibError::EmptyTuple)?;
    for k in (0..items.len()).rev() {
        let rest = tuple_type(&types[k + 1..])?;
        let d0 = curry_pair(&types[k], &rest).d0.term;
        acc = Term::apps(d0, [items.pop().expect("one item per type"), acc]);
    }
    Ok(acc)
}

/// The 1-based projection `Dᵢ` out of `τ₁ × … × τₖ`: `(i-1)` many `D₂`
/// followed by `D₁`, or `k-1` many `D₂` for the last component.
pub fn projection(types: &[Type], index: usize) -> Result<Combinator, StdlibError> {
    let len = types.len();
    if index == 0 || index > len {
        return Err(StdlibError::IndexOutOfRange { index, len });
    }
    let whole = tuple_type(types)?;
    let mut body = Term::Var(0);
    for k in 0..index - 1 {
        let rest = tuple_type(&types[k + 1..])?;
        body = Term::app(curry_pair(&types[k], &rest).d2.term, body);
    }
    if index < len {
        let rest = tuple_type(&types[index..])?;
        body = Term::app(curry_pair(&types[index - 1], &rest).d1.term, body);
    }
    let name = format!("D{index}[{}]", join(types));
    Ok(Combinator::new(name, Term::lam("q", whole, body)))
}

fn join(types: &[Type]) -> String {
    types.iter().map(Type::to_string).collect::<Vec<_>>().join(", ")
}

/// `Cons_τ = λx y. R_τ x (λa. y)`.
pub fn cons(tau: &Type) -> Combinator {
    let src = format!(r"\x:{tau}. \y:N -> {tau}. R[{tau}] x (\a:{tau}. y)");
    Combinator::new(format!("Cons[{tau}]"), build(&Prelude::new(), &src))
}

/// `[A₀, …, Aₙ] = Cons A₀ (… (Cons Aₙ 0_{N→τ}))`.
pub fn list_literal(tau: &Type, items: Vec<Term>) -> Term {
    let c = cons(tau).term;
    let nil = zero_of_type(&Type::arrow(Type::N, tau.clone())).term;
    items
        .into_iter()
        .rev()
        .fold(nil, |acc, item| Term::apps(c.clone(), [item, acc]))
}

/// Higher-type iteration and the recursor rebuilt from it.
#[derive(Clone, Debug)]
pub struct Iteration {
    pub iter: Combinator,
    pub h: Combinator,
    pub rec_from_iter: Combinator,
}

/// `Iter_τ = λa b. R_τ a (λx y. b x)`.
pub fn iter_combinator(tau: &Type) -> Combinator {
    let src = format!(
        r"\a:{tau}. \b:{tt}. R[{tau}] a (\x:{tau}. \y:N. b x)",
        tt = Type::arrow(tau.clone(), tau.clone())
    );
    Combinator::new(format!("Iter[{tau}]"), build(&Prelude::new(), &src))
}

pub fn iteration(tau: &Type) -> Iteration {
    let pair_ty = product_type(tau, &Type::N);
    let step_ty = Type::arrows([tau.clone(), Type::N], tau.clone());
    let CurryPair { d0, d1, d2 } = curry_pair(tau, &Type::N);
    let iter = iter_combinator(tau);
    let mut p = Prelude::new();
    p.define("D0", d0.term);
    p.define("D1", d1.term);
    p.define("D2", d2.term);
    p.define("IterP", iter_combinator(&pair_ty).term);

    let h_src = format!(r"\x:{step_ty}. \y:{pair_ty}. D0 (x (D1 y) (D2 y)) (S (D2 y))");
    let h = Combinator::new(format!("H[{tau}]"), build(&p, &h_src));
    p.define("H", h.term.clone());

    let r_src = format!(r"\a:{tau}. \b:{step_ty}. \c:N. D1 (IterP (D0 a 0) (H b) c)");
    let rec_from_iter = Combinator::new(format!("RecFromIter[{tau}]"), build(&p, &r_src));
    Iteration { iter, h, rec_from_iter }
}
