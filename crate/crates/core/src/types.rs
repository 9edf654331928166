//! Simple types over the ground type `N`.

use std::fmt;
use std::sync::Arc;

/// A simple type: either the ground type `N` or an arrow `σ -> τ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    N,
    Arrow(Arc<Type>, Arc<Type>),
}

impl Type {
    pub fn arrow(domain: Type, codomain: Type) -> Type {
        Type::Arrow(Arc::new(domain), Arc::new(codomain))
    }

    /// `args[0] -> args[1] -> ... -> result`.
    pub fn arrows<I>(args: I, result: Type) -> Type
    where
        I: IntoIterator<Item = Type>,
        I::IntoIter: DoubleEndedIterator,
    {
        args.into_iter()
            .rev()
            .fold(result, |acc, arg| Type::arrow(arg, acc))
    }

    pub fn is_ground(&self) -> bool {
        matches!(self, Type::N)
    }

    pub fn as_arrow(&self) -> Option<(&Type, &Type)> {
        match self {
            Type::Arrow(a, b) => Some((a, b)),
            Type::N => None,
        }
    }

    /// The argument types `τ₁, …, τₙ` of the unique decomposition
    /// `τ₁ -> … -> τₙ -> N`.
    pub fn arguments(&self) -> Vec<Type> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Type::Arrow(a, b) = cur {
            out.push((**a).clone());
            cur = b;
        }
        out
    }

    /// Number of nodes in the type tree (`N` counts 1, each arrow 1).
    pub fn size(&self) -> usize {
        match self {
            Type::N => 1,
            Type::Arrow(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// All subtypes, duplicate-free, with `self` first and the rest in
    /// decreasing size, ties broken by the printed form.
    pub fn subtypes(&self) -> Vec<Type> {
        let mut all = Vec::new();
        collect_subtypes(self, &mut all);
        all.sort_by_cached_key(|t| (std::cmp::Reverse(t.size()), t.to_string()));
        all.dedup();
        debug_assert_eq!(all.first(), Some(self));
        all
    }

    /// 1-based index of `ty` in `self.subtypes()`.
    pub fn subtype_index(&self, ty: &Type) -> Option<usize> {
        self.subtypes().iter().position(|t| t == ty).map(|i| i + 1)
    }
}

fn collect_subtypes(ty: &Type, out: &mut Vec<Type>) {
    if out.contains(ty) {
        return;
    }
    out.push(ty.clone());
    if let Type::Arrow(a, b) = ty {
        collect_subtypes(a, out);
        collect_subtypes(b, out);
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::N => f.write_str("N"),
            Type::Arrow(a, b) => {
                if a.is_ground() {
                    write!(f, "N -> {b}")
                } else {
                    write!(f, "({a}) -> {b}")
                }
            }
        }
    }
}

impl fmt::Debug for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
