//! Seeded generation of random well-typed terms.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::term::{Name, Term};
use crate::types::Type;

/// Random closed or open terms of a requested type. Recursor instances use
/// small numeral arguments so that every generated term is cheap to normalize.
pub struct TermGen {
    rng: StdRng,
    pub max_depth: u32,
    pub max_numeral: u64,
}

impl TermGen {
    pub fn new(seed: u64) -> TermGen {
        TermGen { rng: StdRng::seed_from_u64(seed), max_depth: 4, max_numeral: 4 }
    }

    pub fn rng(&mut self) -> &mut StdRng {
        &mut self.rng
    }

    /// A closed term of type `ty`.
    pub fn closed(&mut self, ty: &Type) -> Term {
        self.term(&mut Vec::new(), ty, self.max_depth)
    }

    /// A term of type `ty` whose free variables have the types in `ctx`
    /// (innermost last).
    pub fn open(&mut self, ctx: &[Type], ty: &Type) -> Term {
        let mut ctx = ctx.to_vec();
        self.term(&mut ctx, ty, self.max_depth)
    }

    fn term(&mut self, ctx: &mut Vec<Type>, ty: &Type, depth: u32) -> Term {
        let heads: Vec<usize> = (0..ctx.len())
            .filter(|&level| ends_in(&ctx[level], ty))
            .collect();
        match ty.as_arrow() {
            Some((dom, cod)) => {
                let roll = self.rng.gen_range(0..10);
                if *ty == Type::arrow(Type::N, Type::N) && roll == 0 {
                    return Term::Succ;
                }
                if roll == 1 && !heads.is_empty() && depth > 0 {
                    return self.spine(ctx, &heads, ty, depth);
                }
                ctx.push(dom.clone());
                let body = self.term(ctx, cod, depth.saturating_sub(1));
                ctx.pop();
                let name = format!("v{}", ctx.len());
                Term::Lam(Name::new(&name), dom.clone(), body.into())
            }
            None => {
                let choices = if depth == 0 { 2 } else { 5 };
                match self.rng.gen_range(0..choices) {
                    0 => Term::numeral(self.rng.gen_range(0..=self.max_numeral)),
                    1 if !heads.is_empty() => {
                        let level = heads[self.rng.gen_range(0..heads.len())];
                        if ctx[level] == Type::N {
                            Term::Var(ctx.len() - 1 - level)
                        } else if depth > 0 {
                            self.spine(ctx, &[level], ty, depth)
                        } else {
                            Term::numeral(self.rng.gen_range(0..=self.max_numeral))
                        }
                    }
                    1 | 2 => Term::app(Term::Succ, self.term(ctx, ty, depth.saturating_sub(1))),
                    3 if !heads.is_empty() => self.spine(ctx, &heads, ty, depth),
                    _ => self.recursion(ctx, ty, depth),
                }
            }
        }
    }

    /// `v A₁ … Aₖ` for a context variable `v` whose type ends in `ty`.
    fn spine(&mut self, ctx: &mut Vec<Type>, heads: &[usize], ty: &Type, depth: u32) -> Term {
        let level = heads[self.rng.gen_range(0..heads.len())];
        let vty = ctx[level].clone();
        let params = vty.arguments();
        let k = params.len() - ty.arguments().len();
        let mut t = Term::Var(ctx.len() - 1 - level);
        for p in &params[..k] {
            let a = self.term(ctx, p, depth.saturating_sub(1));
            t = Term::app(t, a);
        }
        t
    }

    /// `R_ρ A B n̄` at ground `ρ = N`, or at `ρ = N → N` applied to an argument.
    fn recursion(&mut self, ctx: &mut Vec<Type>, ty: &Type, depth: u32) -> Term {
        let d = depth.saturating_sub(1);
        let n = Term::numeral(self.rng.gen_range(0..=self.max_numeral.min(3)));
        let rho = if self.rng.gen_bool(0.3) { Type::arrow(Type::N, Type::N) } else { Type::N };
        let step_ty = Type::arrows([rho.clone(), Type::N], rho.clone());
        let a = self.term(ctx, &rho, d);
        let b = self.term(ctx, &step_ty, d);
        let r = Term::apps(Term::Rec(rho.clone()), [a, b, n]);
        if rho == *ty {
            r
        } else {
            Term::app(r, self.term(ctx, &Type::N, d))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomSchema {
    /// `R_τ A B 0 = A`.
    Zero,
    /// `R_τ A B (S₊ C) = B (R_τ A B C) C`.
    Succ,
}

#[derive(Clone, Debug)]
pub struct AxiomInstance {
    pub schema: AxiomSchema,
    pub ty: Type,
    pub lhs: Term,
    pub rhs: Term,
}

/// `count` random closed instances of each recursor axiom at `ty`.
pub fn recursor_axioms(gen: &mut TermGen, ty: &Type, count: usize) -> Vec<AxiomInstance> {
    let step_ty = Type::arrows([ty.clone(), Type::N], ty.clone());
    let mut out = Vec::with_capacity(2 * count);
    for _ in 0..count {
        let a = gen.closed(ty);
        let b = gen.closed(&step_ty);
        let rec = Term::apps(Term::Rec(ty.clone()), [a.clone(), b]);
        out.push(AxiomInstance {
            schema: AxiomSchema::Zero,
            ty: ty.clone(),
            lhs: Term::app(rec, Term::Zero),
            rhs: a,
        });

        let a = gen.closed(ty);
        let b = gen.closed(&step_ty);
        let c = gen.closed(&Type::N);
        let rec = Term::apps(Term::Rec(ty.clone()), [a, b.clone()]);
        out.push(AxiomInstance {
            schema: AxiomSchema::Succ,
            ty: ty.clone(),
            lhs: Term::app(rec.clone(), Term::app(Term::Succ, c.clone())),
            rhs: Term::apps(b, [Term::app(rec, c.clone()), c]),
        });
    }
    out
}

/// True iff `t = σ₁ → … → σₖ → ty` for some `k ≥ 0`.
fn ends_in(t: &Type, ty: &Type) -> bool {
    let mut t = t;
    loop {
        if t == ty {
            return true;
        }
        match t.as_arrow() {
            Some((_, cod)) => t = cod,
            None => return false,
        }
    }
}
