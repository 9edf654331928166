//! Exhaustive enumeration of all well-typed pure terms up to a size, with
//! binder types drawn from a fixed list. Filtering by normality gives an
//! independent census of normal forms.

use std::collections::HashMap;
use std::sync::Arc;

use godel_t::{Name, Term, Type};

use super::naive;

type Typed = Arc<Vec<(Term, Type)>>;

pub struct Brute {
    binder_types: Vec<Type>,
    memo: HashMap<(Vec<Type>, usize), Typed>,
}

impl Brute {
    pub fn new(binder_types: Vec<Type>) -> Brute {
        Brute { binder_types, memo: HashMap::new() }
    }

    /// All well-typed pure terms of exactly `size` nodes in `ctx` (innermost last).
    pub fn terms(&mut self, ctx: &[Type], size: usize) -> Typed {
        let key = (ctx.to_vec(), size);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            for (level, ty) in ctx.iter().enumerate() {
                out.push((Term::Var(ctx.len() - 1 - level), ty.clone()));
            }
        }
        if size >= 2 {
            for dom in self.binder_types.clone() {
                let mut inner = ctx.to_vec();
                inner.push(dom.clone());
                for (body, cod) in self.terms(&inner, size - 1).iter() {
                    out.push((
                        Term::Lam(Name::new("v"), dom.clone(), Arc::new(body.clone())),
                        Type::arrow(dom.clone(), cod.clone()),
                    ));
                }
            }
        }
        if size >= 3 {
            for fs in 1..size - 1 {
                let funs = self.terms(ctx, fs);
                let args = self.terms(ctx, size - 1 - fs);
                for (f, fty) in funs.iter() {
                    let Some((dom, cod)) = fty.as_arrow() else { continue };
                    for (a, aty) in args.iter() {
                        if aty == dom {
                            out.push((Term::app(f.clone(), a.clone()), cod.clone()));
                        }
                    }
                }
            }
        }
        let out = Arc::new(out);
        self.memo.insert(key, out.clone());
        out
    }

    /// Closed normal forms of type `ty` with at most `max_size` nodes, without
    /// duplicates up to α.
    pub fn normal_census(&mut self, ty: &Type, max_size: usize) -> Vec<Term> {
        let mut found: Vec<Term> = Vec::new();
        for size in 1..=max_size {
            for (t, tt) in self.terms(&[], size).iter() {
                if tt == ty && naive::is_normal(t) && !found.contains(t) {
                    found.push(t.clone());
                }
            }
        }
        found
    }
}
