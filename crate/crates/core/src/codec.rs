//! Cantor pairing and Gödel codes of pure closed normal forms.

use std::fmt;

use num_integer::Roots;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::meta_nf::is_pure_closed_nf;
use crate::normalize::{eval_numeral, NormalForm, Stats};
use crate::term::Term;
use crate::types::Type;
use crate::Nat;

/// Largest code materialized as an object numeral by default.
pub const DEFAULT_NUMERAL_GUARD: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("not a pure closed βη-normal form: {0}")]
    NotPureClosedNf(String),
    #[error("argument type {ty} is not a subtype of {of}")]
    MissingSubtype { ty: Type, of: Type },
    #[error("ill-typed term: {0}")]
    IllTyped(String),
    #[error("numeral of size {required} exceeds the guard of {guard}")]
    GuardExceeded { required: Nat, guard: u64 },
    #[error("not a numeral: {0}")]
    NotANumeral(String),
}

fn triangle(s: &Nat) -> Nat {
    (s * (s + 1u32)) >> 1
}

/// `⟨m₁, m₂⟩ = ((m₁+m₂)(m₁+m₂+1))/2 + m₁`.
pub fn pair(m1: &Nat, m2: &Nat) -> Nat {
    triangle(&(m1 + m2)) + m1
}

/// The unique `(m₁, m₂)` with `pair(m₁, m₂) = n`.
pub fn unpair(n: &Nat) -> (Nat, Nat) {
    // s is the largest integer with T(s) <= n
    let mut s: Nat = ((n << 3u32) + 1u32).sqrt();
    s = (s - 1u32) >> 1;
    let t = triangle(&s);
    debug_assert!(t <= *n && *n < triangle(&(&s + 1u32)));
    let m1 = n - t;
    let m2 = s - &m1;
    (m1, m2)
}

pub fn pair_u64(m1: u64, m2: u64) -> Option<u64> {
    let s = m1.checked_add(m2)?;
    let t = if s % 2 == 0 {
        (s / 2).checked_mul(s.checked_add(1)?)?
    } else {
        s.checked_mul(s.checked_add(1)? / 2)?
    };
    t.checked_add(m1)
}

pub fn unpair_u64(n: u64) -> (u64, u64) {
    let n = n as u128;
    let s = (((n << 3) + 1).sqrt() - 1) >> 1;
    let m1 = n - s * (s + 1) / 2;
    (m1 as u64, (s - m1) as u64)
}

/// A code as a tree of pairs, for display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeExpr {
    Num(u64),
    Pair(Box<CodeExpr>, Box<CodeExpr>),
}

impl CodeExpr {
    fn pair(a: CodeExpr, b: CodeExpr) -> CodeExpr {
        CodeExpr::Pair(Box::new(a), Box::new(b))
    }

    pub fn value(&self) -> Nat {
        match self {
            CodeExpr::Num(n) => Nat::from(*n),
            CodeExpr::Pair(a, b) => pair(&a.value(), &b.value()),
        }
    }
}

impl fmt::Display for CodeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeExpr::Num(n) => write!(f, "{n}"),
            CodeExpr::Pair(a, b) => write!(f, "<{a}, {b}>"),
        }
    }
}

/// The code `A⊘A` of a pure closed βη-normal form as a pair tree.
pub fn encode_expr(a: &Term, ty: &Type) -> Result<CodeExpr, CodecError> {
    if !is_pure_closed_nf(a) {
        return Err(CodecError::NotPureClosedNf(a.to_string()));
    }
    let subtypes = ty.subtypes();
    let n = subtypes.len() as u64;
    let mut binders: Vec<(Type, u64)> = Vec::new();
    let (code, found) = walk(a, 0, &mut binders, &subtypes, n, ty)?;
    if found != *ty {
        return Err(CodecError::IllTyped(format!("{a} has type {found}, not {ty}")));
    }
    Ok(code)
}

/// The numeric value of `A⊘A`.
pub fn encode_oslash(a: &Term, ty: &Type) -> Result<Nat, CodecError> {
    encode_expr(a, ty).map(|e| e.value())
}

fn walk(
    t: &Term,
    depth: u64,
    binders: &mut Vec<(Type, u64)>,
    subtypes: &[Type],
    n: u64,
    root: &Type,
) -> Result<(CodeExpr, Type), CodecError> {
    match t {
        Term::Var(i) => {
            let (ty, d) = binders
                .len()
                .checked_sub(i + 1)
                .map(|k| binders[k].clone())
                .ok_or_else(|| CodecError::NotPureClosedNf(t.to_string()))?;
            Ok((CodeExpr::pair(CodeExpr::Num(0), CodeExpr::Num(d)), ty))
        }
        Term::Lam(_, dom, body) => {
            binders.push((dom.clone(), depth));
            let out = walk(body, depth + 1, binders, subtypes, n, root);
            binders.pop();
            let (c, cod) = out?;
            Ok((CodeExpr::pair(CodeExpr::Num(n + 1), c), Type::arrow(dom.clone(), cod)))
        }
        Term::App(f, x) => {
            let (cf, tf) = walk(f, depth + 1, binders, subtypes, n, root)?;
            let (cx, tx) = walk(x, depth + 1, binders, subtypes, n, root)?;
            let Some((dom, cod)) = tf.as_arrow() else {
                return Err(CodecError::IllTyped(t.to_string()));
            };
            if *dom != tx {
                return Err(CodecError::IllTyped(t.to_string()));
            }
            let j = subtypes
                .iter()
                .position(|s| *s == tx)
                .ok_or_else(|| CodecError::MissingSubtype { ty: tx.clone(), of: root.clone() })?;
            let code = CodeExpr::pair(CodeExpr::Num(j as u64 + 1), CodeExpr::pair(cf, cx));
            Ok((code, cod.clone()))
        }
        Term::Zero | Term::Succ | Term::Rec(_) => Err(CodecError::NotPureClosedNf(t.to_string())),
    }
}

/// The object numeral `n̄`, refusing codes above `guard`.
pub fn numeral_of_code(n: &Nat, guard: u64) -> Result<NormalForm, CodecError> {
    match n.to_u64() {
        Some(k) if k <= guard => Ok(NormalForm { term: Term::numeral(k), ty: Type::N, stats: Stats::default() }),
        _ => Err(CodecError::GuardExceeded { required: n.clone(), guard }),
    }
}

pub fn code_of_numeral(nf: &NormalForm) -> Result<Nat, CodecError> {
    eval_numeral(nf).map_err(|e| CodecError::NotANumeral(e.to_string()))
}
