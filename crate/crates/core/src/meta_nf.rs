//! Meta-level analysis of pure βη-normal forms.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::term::{Context, Name, Term};
use crate::types::Type;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetaError {
    #[error("term contains a constant: {0}")]
    Impure(String),
    #[error("term is not βη-normal: {0}")]
    NotNormal(String),
    #[error("term is not closed: {0}")]
    Open(String),
}

/// The three cases of the normal-form grammar for pure terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NfShape {
    /// A variable (de Bruijn index).
    Variable(usize),
    /// `λV. B`.
    Lambda { binder: Name, ty: Type, body: Term },
    /// `V B_n … B_1`, arguments in application order.
    Spine { head: usize, args: Vec<Term> },
}

/// Classifies a pure βη-normal form.
pub fn classify(t: &Term) -> Result<NfShape, MetaError> {
    if !t.is_pure() {
        return Err(MetaError::Impure(t.to_string()));
    }
    if !is_beta_eta_normal(t) {
        return Err(MetaError::NotNormal(t.to_string()));
    }
    Ok(match t {
        Term::Var(i) => NfShape::Variable(*i),
        Term::Lam(name, ty, body) => NfShape::Lambda {
            binder: name.clone(),
            ty: ty.clone(),
            body: (**body).clone(),
        },
        Term::App(..) => {
            let (head, args) = t.spine();
            let Term::Var(h) = head else {
                unreachable!("normal pure applications have a variable head")
            };
            NfShape::Spine { head: *h, args: args.into_iter().cloned().collect() }
        }
        Term::Zero | Term::Succ | Term::Rec(_) => unreachable!("purity checked above"),
    })
}

/// No β-redex `(λx. M) N` and no η-redex `λx. M x` with `x` not free in `M`.
pub fn is_beta_eta_normal(t: &Term) -> bool {
    let mut work = vec![t];
    while let Some(t) = work.pop() {
        match t {
            Term::Lam(_, _, body) => {
                if let Term::App(m, a) = &**body {
                    if matches!(**a, Term::Var(0)) && !m.has_free(0) {
                        return false;
                    }
                }
                work.push(body);
            }
            Term::App(f, a) => {
                if matches!(**f, Term::Lam(..)) {
                    return false;
                }
                work.push(f);
                work.push(a);
            }
            _ => {}
        }
    }
    true
}

/// True iff `t` has no constants, no free variables, and no β/η-redex.
pub fn is_pure_closed_nf(t: &Term) -> bool {
    t.is_pure() && t.is_closed() && is_beta_eta_normal(t)
}

/// A free variable of a term, identified by its index relative to the root.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FreeVar {
    pub index: usize,
    pub name: Name,
    pub ty: Type,
}

/// The free variables of `t`, typed by `ctx`. Variables outside `ctx` are
/// reported with an empty name and type `N`.
pub fn free_vars(ctx: &Context, t: &Term) -> Vec<FreeVar> {
    let mut found = BTreeSet::new();
    let mut work = vec![(t, 0usize)];
    while let Some((t, depth)) = work.pop() {
        match t {
            Term::Var(i) if *i >= depth => {
                found.insert(i - depth);
            }
            Term::Lam(_, _, b) => work.push((b, depth + 1)),
            Term::App(f, a) => {
                work.push((f, depth));
                work.push((a, depth));
            }
            _ => {}
        }
    }
    found
        .into_iter()
        .map(|index| match ctx.lookup(index) {
            Some((name, ty)) => FreeVar { index, name: name.clone(), ty: ty.clone() },
            None => FreeVar { index, name: Name::new(""), ty: Type::N },
        })
        .collect()
}

/// One step from a term to an immediate subterm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Body,
    Fun,
    Arg,
}

/// A subterm occurrence: the path from the root and the subterm itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub path: Vec<Step>,
    pub term: Term,
}

/// Subterm occurrences grouped by depth.
#[derive(Clone, Debug, Default)]
pub struct DepthIndex {
    levels: Vec<Vec<Occurrence>>,
}

impl DepthIndex {
    pub fn at(&self, depth: usize) -> &[Occurrence] {
        self.levels.get(depth).map_or(&[], Vec::as_slice)
    }

    /// Depth of the occurrence at `path`, which is the path length.
    pub fn depth_of(&self, path: &[Step]) -> Option<usize> {
        self.at(path.len())
            .iter()
            .any(|o| o.path == path)
            .then_some(path.len())
    }

    pub fn max_depth(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Occurrence)> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(d, occ)| occ.iter().map(move |o| (d, o)))
    }
}

/// Indexes every subterm occurrence of `a` by depth: the root has depth 0,
/// and the body of a λ and both sides of an application sit one deeper.
pub fn subterm_depths(a: &Term) -> DepthIndex {
    let mut index = DepthIndex::default();
    let mut work = vec![(a, Vec::new())];
    while let Some((t, path)) = work.pop() {
        let d = path.len();
        if index.levels.len() <= d {
            index.levels.resize_with(d + 1, Vec::new);
        }
        match t {
            Term::Lam(_, _, b) => work.push((b, extend(&path, Step::Body))),
            Term::App(f, x) => {
                work.push((x, extend(&path, Step::Arg)));
                work.push((f, extend(&path, Step::Fun)));
            }
            _ => {}
        }
        index.levels[d].push(Occurrence { path, term: t.clone() });
    }
    for level in &mut index.levels {
        level.sort_by(|a, b| a.path.cmp(&b.path));
    }
    index
}

fn extend(path: &[Step], s: Step) -> Vec<Step> {
    let mut p = path.to_vec();
    p.push(s);
    p
}

/// All pure closed η-short βη-normal forms of type `ty` with at most
/// `max_size` nodes, ordered by size and then by printed form.
pub fn enumerate_pure_closed_nf(ty: &Type, max_size: usize) -> Vec<Term> {
    let mut g = Generator::default();
    let mut out: Vec<(usize, String, Term)> = Vec::new();
    for size in 1..=max_size {
        for t in g.normal(&[], ty, size).iter() {
            out.push((size, t.to_string(), t.clone()));
        }
    }
    out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    out.into_iter().map(|(_, _, t)| t).collect()
}

type Key = (Vec<Type>, Type, usize);

/// Exact-size generation following the grammar: λ-abstractions at arrow
/// types (rejecting η-redexes) and variable-headed spines at any type.
#[derive(Default)]
struct Generator {
    normal_memo: HashMap<Key, Arc<Vec<Term>>>,
    neutral_memo: HashMap<Key, Arc<Vec<Term>>>,
}

impl Generator {
    /// Normal forms of type `ty` in context `ctx` (innermost last) of exactly `size` nodes.
    fn normal(&mut self, ctx: &[Type], ty: &Type, size: usize) -> Arc<Vec<Term>> {
        let key = (ctx.to_vec(), ty.clone(), size);
        if let Some(hit) = self.normal_memo.get(&key) {
            return hit.clone();
        }
        let mut out = (*self.neutral(ctx, ty, size)).clone();
        if let Some((dom, cod)) = ty.as_arrow() {
            if size >= 2 {
                let mut inner = ctx.to_vec();
                inner.push(dom.clone());
                let name = binder_name(ctx.len());
                for body in self.normal(&inner, cod, size - 1).iter() {
                    let eta_redex = matches!(body, Term::App(m, a) if matches!(**a, Term::Var(0)) && !m.has_free(0));
                    if !eta_redex {
                        out.push(Term::Lam(Name::new(&name), dom.clone(), Arc::new(body.clone())));
                    }
                }
            }
        }
        let out = Arc::new(out);
        self.normal_memo.insert(key, out.clone());
        out
    }

    /// Variable-headed spines `v B₁ … Bₖ` of type `ty` with exactly `size` nodes.
    fn neutral(&mut self, ctx: &[Type], ty: &Type, size: usize) -> Arc<Vec<Term>> {
        let key = (ctx.to_vec(), ty.clone(), size);
        if let Some(hit) = self.neutral_memo.get(&key) {
            return hit.clone();
        }
        let mut out = Vec::new();
        for (level, vty) in ctx.iter().enumerate() {
            let index = ctx.len() - 1 - level;
            let params = vty.arguments();
            for k in 0..=params.len() {
                let result = Type::arrows(params[k..].to_vec(), Type::N);
                if result != *ty || size < 1 + 2 * k {
                    continue;
                }
                // the head and k application nodes, with at least one node per argument
                if k == 0 {
                    if size == 1 {
                        out.push(Term::Var(index));
                    }
                    continue;
                }
                let budget = size - 1 - k;
                for args in self.argument_lists(ctx, &params[..k], budget) {
                    out.push(Term::apps(Term::Var(index), args));
                }
            }
        }
        let out = Arc::new(out);
        self.neutral_memo.insert(key, out.clone());
        out
    }

    /// Argument lists of the given types whose sizes sum to exactly `total`.
    fn argument_lists(&mut self, ctx: &[Type], types: &[Type], total: usize) -> Vec<Vec<Term>> {
        let Some((first, rest)) = types.split_first() else {
            return if total == 0 { vec![Vec::new()] } else { Vec::new() };
        };
        let mut out = Vec::new();
        let reserve = rest.len();
        if total < 1 + reserve {
            return out;
        }
        for s in 1..=total - reserve {
            let heads = self.normal(ctx, first, s);
            if heads.is_empty() {
                continue;
            }
            let tails = self.argument_lists(ctx, rest, total - s);
            for h in heads.iter() {
                for t in &tails {
                    let mut v = Vec::with_capacity(types.len());
                    v.push(h.clone());
                    v.extend(t.iter().cloned());
                    out.push(v);
                }
            }
        }
        out
    }
}

fn binder_name(depth: usize) -> String {
    const NAMES: [&str; 8] = ["x", "y", "z", "u", "v", "w", "p", "q"];
    match NAMES.get(depth) {
        Some(n) => n.to_string(),
        None => format!("x{depth}"),
    }
}
