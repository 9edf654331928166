//! Type inference for terms of theory T.

use thiserror::Error;

use crate::print::display_in;
use crate::term::{Context, Term};
use crate::types::Type;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable (de Bruijn index {index}) in `{term}`")]
    Unbound { index: usize, term: String },
    #[error("`{term}` is applied to an argument but has type {found}")]
    NotAFunction { term: String, found: Type },
    #[error("argument `{term}` has type {found}, expected {expected}")]
    Mismatch { term: String, expected: Type, found: Type },
}

/// The type of `R_τ`: `τ -> (τ -> N -> τ) -> N -> τ`.
pub fn rec_type(ty: &Type) -> Type {
    let step = Type::arrows([ty.clone(), Type::N], ty.clone());
    Type::arrows([ty.clone(), step, Type::N], ty.clone())
}

/// Infers the unique simple type of `term` under `ctx`.
pub fn infer_type(ctx: &Context, term: &Term) -> Result<Type, TypeError> {
    let mut ctx = ctx.clone();
    infer(&mut ctx, term)
}

fn infer(ctx: &mut Context, term: &Term) -> Result<Type, TypeError> {
    if term.as_numeral_u64().is_some() {
        return Ok(Type::N);
    }
    match term {
        Term::Var(i) => ctx.lookup(*i).map(|(_, t)| t.clone()).ok_or_else(|| TypeError::Unbound {
            index: *i,
            term: display_in(ctx, term),
        }),
        Term::Lam(name, ty, body) => {
            ctx.push(name.clone(), ty.clone());
            let body_ty = infer(ctx, body);
            ctx.pop();
            Ok(Type::arrow(ty.clone(), body_ty?))
        }
        Term::App(f, a) => {
            let fty = infer(ctx, f)?;
            let aty = infer(ctx, a)?;
            match fty.as_arrow() {
                Some((dom, cod)) if *dom == aty => Ok(cod.clone()),
                Some((dom, _)) => Err(TypeError::Mismatch {
                    term: display_in(ctx, a),
                    expected: dom.clone(),
                    found: aty,
                }),
                None => Err(TypeError::NotAFunction {
                    term: display_in(ctx, f),
                    found: fty,
                }),
            }
        }
        Term::Zero => Ok(Type::N),
        Term::Succ => Ok(Type::arrow(Type::N, Type::N)),
        Term::Rec(ty) => Ok(rec_type(ty)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_term, parse_type};

    fn ty(s: &str) -> Type {
        parse_type(s).unwrap()
    }

    #[test]
    fn recursor_type() {
        let got = infer_type(&Context::new(), &Term::Rec(Type::N)).unwrap();
        assert_eq!(got, ty("N -> (N -> N -> N) -> N -> N"));
    }

    #[test]
    fn identity() {
        let t = parse_term(r"\x:N. x").unwrap();
        assert_eq!(infer_type(&Context::new(), &t).unwrap(), ty("N -> N"));
    }

    #[test]
    fn ill_typed_application_names_subterm() {
        let t = parse_term(r"S (\x:N. x)").unwrap();
        let err = infer_type(&Context::new(), &t).unwrap_err();
        match err {
            TypeError::Mismatch { term, expected, found } => {
                assert_eq!(term, r"\x:N. x");
                assert_eq!(expected, Type::N);
                assert_eq!(found, ty("N -> N"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn applying_a_numeral_fails() {
        let t = parse_term("#2 #3").unwrap();
        assert!(matches!(
            infer_type(&Context::new(), &t),
            Err(TypeError::NotAFunction { .. })
        ));
    }

    #[test]
    fn open_terms_use_the_context() {
        let ctx = Context::from_bindings([("f", ty("N -> N")), ("x", Type::N)]);
        let t = Term::app(Term::Var(1), Term::Var(0));
        assert_eq!(infer_type(&ctx, &t).unwrap(), Type::N);
        assert!(matches!(
            infer_type(&Context::new(), &t),
            Err(TypeError::Unbound { .. })
        ));
    }

    #[test]
    fn huge_numeral_is_typed_without_recursion() {
        let t = Term::numeral(500_000);
        assert_eq!(infer_type(&Context::new(), &t).unwrap(), Type::N);
    }
}
