//! In-theory enumerators of pure closed normal forms.
//!
//! For a type `τ` with subtypes `τ₁ = τ, …, τₙ` the bundle holds the terms
//! `A_τ`, `B_{i,τ}`, `J_{j,i,τ}` and the enumerator `E_τ : N → τ`, which
//! maps the Gödel code of each pure closed normal form back to the form.

use std::fmt;

use thiserror::Error;

use crate::codec::{numeral_of_code, CodecError, DEFAULT_NUMERAL_GUARD};
use crate::normalize::{Budget, NormalForm, NormalizeError, Normalizer};
use crate::parse::Prelude;
use crate::stdlib::{
    applied, arith, build, cantor, cons, curry_pair, lambdas, numbered, projection, tuple_type,
    zero_of_type, ArithOp, CantorOp,
};
use crate::term::{Context, Term};
use crate::types::Type;
use crate::typing::infer_type;
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumeratorError {
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
}

/// Which display a `J_{j,i}` slot was built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JCase {
    /// `j = 0`: look the variable up in the environment lists.
    Variable,
    /// `1 ≤ j ≤ n` with `τ_k = τ_j → τ_i`.
    Application { k: usize },
    /// `j = n+1` with `τ_i = τ_via → τ_k`.
    Lambda { via: usize, k: usize },
    /// No matching subtype: `λa b. 0_{υᵢ}`.
    Degenerate,
}

impl fmt::Display for JCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JCase::Variable => f.write_str("variable"),
            JCase::Application { k } => write!(f, "application k={k}"),
            JCase::Lambda { via, k } => write!(f, "lambda j={via} k={k}"),
            JCase::Degenerate => f.write_str("degenerate"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct JSlot {
    pub case: JCase,
    pub term: Term,
}

#[derive(Clone, Debug)]
pub struct EnumeratorBundle {
    pub tau: Type,
    /// `τ₁ … τₙ` with `τ₁ = τ`.
    pub subtypes: Vec<Type>,
    /// `υ₁ … υₙ`.
    pub upsilons: Vec<Type>,
    /// `υ₁ × … × υₙ`.
    pub upsilon: Type,
    pub a: Term,
    /// `B_{i,τ}` at index `i-1`.
    pub b: Vec<Term>,
    /// `J_{j,i,τ}` at `j_slots[i-1][j]`, for `0 ≤ j ≤ n+1`.
    pub j_slots: Vec<Vec<JSlot>>,
    pub e: Term,
}

impl EnumeratorBundle {
    pub fn n(&self) -> usize {
        self.subtypes.len()
    }

    /// `(i, j, case)` for every slot, in order.
    pub fn degeneracy_table(&self) -> Vec<(usize, usize, JCase)> {
        let mut out = Vec::new();
        for (i, row) in self.j_slots.iter().enumerate() {
            for (j, slot) in row.iter().enumerate() {
                out.push((i + 1, j, slot.case));
            }
        }
        out
    }

    /// Every constructed term with the type it must have.
    pub fn expected_types(&self) -> Vec<(String, &Term, Type)> {
        let n_to = |t: &Type| Type::arrow(Type::N, t.clone());
        let a_ty = Type::arrows([Type::N, Type::N], self.upsilon.clone());
        let mut out = vec![("A".to_string(), &self.a, a_ty)];
        for i in 0..self.n() {
            let bj_ty = Type::arrows([n_to(&self.upsilon), Type::N], self.upsilons[i].clone());
            out.push((format!("B{}", i + 1), &self.b[i], bj_ty.clone()));
            for (j, slot) in self.j_slots[i].iter().enumerate() {
                out.push((format!("J{j},{}", i + 1), &slot.term, bj_ty.clone()));
            }
        }
        out.push(("E".to_string(), &self.e, n_to(&self.tau)));
        out
    }
}

/// Builds `A_τ`, every `B_{i,τ}` and `J_{j,i,τ}`, and `E_τ`.
pub fn build_bundle(tau: &Type) -> EnumeratorBundle {
    let subtypes = tau.subtypes();
    let n = subtypes.len();
    let n_to = |t: &Type| Type::arrow(Type::N, t.clone());
    let env_types: Vec<Type> = subtypes.iter().map(n_to).collect();
    let upsilons: Vec<Type> = subtypes
        .iter()
        .map(|ti| Type::arrows(env_types.iter().cloned().chain([Type::N]), ti.clone()))
        .collect();
    let upsilon = tuple_type(&upsilons).expect("at least one subtype");
    let index_of = |t: &Type| subtypes.iter().position(|s| s == t).map(|p| p + 1);

    let mut p = Prelude::new();
    p.define("Monus", arith(ArithOp::Monus).term);
    p.define("Pone", cantor(CantorOp::P1).term);
    p.define("Ptwo", cantor(CantorOp::P2).term);
    p.define("ConsU", cons(&upsilon).term);
    p.define("ZeroNU", zero_of_type(&n_to(&upsilon)).term);
    for l in 1..=n {
        let t = &subtypes[l - 1];
        let u = &upsilons[l - 1];
        p.define(&format!("ConsT{l}"), cons(t).term);
        p.define(&format!("ZeroT{l}"), zero_of_type(t).term);
        p.define(&format!("ZeroNT{l}"), zero_of_type(&n_to(t)).term);
        p.define(&format!("ConsUi{l}"), cons(u).term);
        p.define(&format!("ZeroUi{l}"), zero_of_type(u).term);
        p.define(&format!("ZeroNUi{l}"), zero_of_type(&n_to(u)).term);
        p.define(&format!("Proj{l}"), projection(&upsilons, l).expect("index in range").term);
        if l < n {
            let rest = tuple_type(&upsilons[l..]).expect("non-empty");
            p.define(&format!("Pair{l}"), curry_pair(u, &rest).d0.term);
        }
    }

    let a_ty = n_to(&upsilon);
    let head = vec![("a".to_string(), a_ty.clone()), ("b".to_string(), Type::N)];
    let mut full = head.clone();
    full.extend(numbered("x", &env_types));
    full.push(("y".to_string(), Type::N));
    let lists_with = |item: &dyn Fn(usize) -> String| -> Vec<String> {
        (1..=n)
            .map(|l| format!("ConsT{l} ({}) x{l}", item(l)))
            .collect()
    };
    let env_zero = lists_with(&|l| format!("ZeroT{l}"));

    let mut j_slots = Vec::with_capacity(n);
    for i in 1..=n {
        let ti = &subtypes[i - 1];
        let degenerate = || JSlot {
            case: JCase::Degenerate,
            term: build(&p, &lambdas(&head, &format!("ZeroUi{i}"))),
        };
        let mut row = Vec::with_capacity(n + 2);

        let body = format!("x{i} (Monus (Monus y #1) (Ptwo b))");
        row.push(JSlot { case: JCase::Variable, term: build(&p, &lambdas(&full, &body)) });

        for j in 1..=n {
            let fun = Type::arrow(subtypes[j - 1].clone(), ti.clone());
            row.push(match index_of(&fun) {
                Some(k) => {
                    let side = |proj: usize, pick: &str| {
                        let idx = format!("a (Monus (Monus b #1) ({pick} (Ptwo b)))");
                        applied(&format!("Proj{proj} ({idx})"), env_zero.iter().cloned().chain(["S y".to_string()]))
                    };
                    let body = format!("({}) ({})", side(k, "Pone"), side(j, "Ptwo"));
                    JSlot { case: JCase::Application { k }, term: build(&p, &lambdas(&full, &body)) }
                }
                None => degenerate(),
            });
        }

        let lambda_case = ti.as_arrow().and_then(|(dom, cod)| Some((index_of(dom)?, index_of(cod)?)));
        row.push(match lambda_case {
            Some((via, k)) => {
                let mut binders = full.clone();
                binders.push(("z".to_string(), subtypes[via - 1].clone()));
                let mut local = p.clone();
                for l in 1..=n {
                    let src = if l == via {
                        format!(r"\z:{}. z", subtypes[via - 1])
                    } else {
                        zero_of_type(&Type::arrow(subtypes[via - 1].clone(), subtypes[l - 1].clone()))
                            .term
                            .to_string()
                    };
                    local.define_src(&format!("L{l}"), &src).expect("generated L term parses");
                }
                let envs = lists_with(&|l| format!("L{l} z"));
                let body = applied(
                    &format!("Proj{k} (a (Monus (Monus b #1) (Ptwo b)))"),
                    envs.into_iter().chain(["S y".to_string()]),
                );
                JSlot { case: JCase::Lambda { via, k }, term: build(&local, &lambdas(&binders, &body)) }
            }
            None => degenerate(),
        });
        j_slots.push(row);
    }

    let mut b = Vec::with_capacity(n);
    for (i, row) in j_slots.iter().enumerate() {
        let mut local = p.clone();
        for (j, slot) in row.iter().enumerate() {
            local.define(&format!("J{j}"), slot.term.clone());
        }
        let list = (0..row.len()).rev().fold(format!("ZeroNUi{}", i + 1), |acc, j| {
            format!("ConsUi{} (J{j} a b) ({acc})", i + 1)
        });
        b.push(build(&local, &lambdas(&head, &format!("({list}) (Pone b)"))));
    }

    let mut local = p.clone();
    for (i, bi) in b.iter().enumerate() {
        local.define(&format!("B{}", i + 1), bi.clone());
    }
    let tuple = (1..=n).rev().fold(String::new(), |acc, i| {
        if i == n {
            format!("B{i} a b")
        } else {
            format!("Pair{i} (B{i} a b) ({acc})")
        }
    });
    let step = lambdas(&head, &format!("ConsU ({tuple}) a"));
    let a_src = format!("\\x:N. R[{a_ty}] ZeroNU ({step}) (S x)");
    let a = build(&local, &a_src);

    local.define("A", a.clone());
    let zeros: Vec<String> = (1..=n).map(|l| format!("ZeroNT{l}")).collect();
    let e_src = format!("\\x:N. {}", applied("Proj1 (A x #0)", zeros.into_iter().chain(["#0".to_string()])));
    let e = build(&local, &e_src);

    EnumeratorBundle { tau: tau.clone(), subtypes, upsilons, upsilon, a, b, j_slots, e }
}

/// Checks that every bundle term is closed and has its stated type.
pub fn typecheck_bundle(bundle: &EnumeratorBundle) -> Result<(), String> {
    for (name, term, expected) in bundle.expected_types() {
        if !term.is_closed() {
            return Err(format!("{name} is open"));
        }
        let found = infer_type(&Context::new(), term).map_err(|e| format!("{name}: {e}"))?;
        if found != expected {
            return Err(format!("{name} has type {found}, expected {expected}"));
        }
    }
    Ok(())
}

/// Decides `A_τ (i+j) j = A_τ i 0`.
pub fn check_lemma_a(
    bundle: &EnumeratorBundle,
    i: u64,
    j: u64,
    normalizer: &Normalizer,
) -> Result<bool, NormalizeError> {
    let lhs = Term::apps(bundle.a.clone(), [Term::numeral(i + j), Term::numeral(j)]);
    let rhs = Term::apps(bundle.a.clone(), [Term::numeral(i), Term::numeral(0)]);
    normalizer.equal(&lhs, &rhs)
}

/// Normalizes `E_τ n̄`.
pub fn apply_enumerator(
    bundle: &EnumeratorBundle,
    code: &Nat,
    normalizer: &Normalizer,
) -> Result<NormalForm, EnumeratorError> {
    let numeral = numeral_of_code(code, DEFAULT_NUMERAL_GUARD)?;
    Ok(normalizer.normalize(&Term::app(bundle.e.clone(), numeral.term))?)
}

/// The normalizer used for enumerator runs.
pub fn enumerator_normalizer() -> Normalizer {
    Normalizer::new(Budget::enumerator())
}
