//! Binary-tree codes, the separating term `N_τ`, and the U/V encodings of
//! functionals.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::codec::pair;
use crate::enumerator::EnumeratorBundle;
use crate::meta_nf::is_pure_closed_nf;
use crate::parse::parse_type;
use crate::stdlib::{cantor, CantorOp};
use crate::term::{Context, Name, Term};
use crate::types::Type;
use crate::typing::{infer_type, TypeError};
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReducibilityError {
    #[error("not a binary tree λx y. A: {0}")]
    NotATree(String),
    #[error("witness must be pure and closed: {0}")]
    ImpureWitness(String),
    #[error("expected type {expected}, found {found}")]
    TypeMismatch { expected: Type, found: Type },
    #[error(transparent)]
    IllTyped(#[from] TypeError),
}

/// `(N → N → N) → N → N`, the type of binary trees.
pub fn tree_type() -> Type {
    parse_type("(N -> N -> N) -> N -> N").expect("literal type")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BinaryTree {
    Leaf,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn node(l: BinaryTree, r: BinaryTree) -> BinaryTree {
        BinaryTree::Node(Box::new(l), Box::new(r))
    }

    pub fn nodes(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node(l, r) => 1 + l.nodes() + r.nodes(),
        }
    }

    /// All trees with exactly `n` nodes.
    pub fn all_with_nodes(n: usize) -> Vec<BinaryTree> {
        let mut by_size: Vec<Vec<BinaryTree>> = vec![vec![BinaryTree::Leaf]];
        for k in 1..=n {
            let mut out = Vec::new();
            for left in 0..k {
                for l in &by_size[left] {
                    for r in &by_size[k - 1 - left] {
                        out.push(BinaryTree::node(l.clone(), r.clone()));
                    }
                }
            }
            by_size.push(out);
        }
        by_size.swap_remove(n)
    }

    /// `λx y. A` with leaves `y` and nodes `x C D`.
    pub fn to_term(&self) -> Term {
        fn body(t: &BinaryTree) -> Term {
            match t {
                BinaryTree::Leaf => Term::Var(0),
                BinaryTree::Node(l, r) => Term::apps(Term::Var(1), [body(l), body(r)]),
            }
        }
        let nnn = Type::arrows([Type::N, Type::N], Type::N);
        Term::lam("x", nnn, Term::lam("y", Type::N, body(self)))
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Leaf => f.write_str("Leaf"),
            BinaryTree::Node(l, r) => write!(f, "Node({l}, {r})"),
        }
    }
}

/// Reads the tree off a pure closed normal form of the tree type.
pub fn tree_of_nf(t: &Term) -> Result<BinaryTree, ReducibilityError> {
    let bad = || ReducibilityError::NotATree(t.to_string());
    if !is_pure_closed_nf(t) {
        return Err(bad());
    }
    let found = infer_type(&Context::new(), t)?;
    if found != tree_type() {
        return Err(ReducibilityError::TypeMismatch { expected: tree_type(), found });
    }
    let Term::Lam(_, _, inner) = t else { return Err(bad()) };
    let Term::Lam(_, _, body) = &**inner else { return Err(bad()) };
    fn walk(a: &Term) -> Option<BinaryTree> {
        match a {
            Term::Var(0) => Some(BinaryTree::Leaf),
            Term::App(f, d) => match &**f {
                Term::App(x, c) if matches!(**x, Term::Var(1)) => Some(BinaryTree::node(walk(c)?, walk(d)?)),
                _ => None,
            },
            _ => None,
        }
    }
    walk(body).ok_or_else(bad)
}

/// `‖y‖ = 0` and `‖x C D‖ = 1 + ⟨‖C‖, ‖D‖⟩`.
pub fn tree_numeral(t: &BinaryTree) -> Nat {
    match t {
        BinaryTree::Leaf => Nat::from(0u32),
        BinaryTree::Node(l, r) => pair(&tree_numeral(l), &tree_numeral(r)) + 1u32,
    }
}

/// A pure closed `M : τ → (N → N → N) → N → N`.
#[derive(Clone, Debug)]
pub struct ReducibilityWitness {
    tau: Type,
    m: Term,
}

impl ReducibilityWitness {
    pub fn new(tau: Type, m: Term) -> Result<ReducibilityWitness, ReducibilityError> {
        if !m.is_pure() || !m.is_closed() {
            return Err(ReducibilityError::ImpureWitness(m.to_string()));
        }
        let expected = Type::arrow(tau.clone(), tree_type());
        let found = infer_type(&Context::new(), &m)?;
        if found != expected {
            return Err(ReducibilityError::TypeMismatch { expected, found });
        }
        Ok(ReducibilityWitness { tau, m })
    }

    pub fn tau(&self) -> &Type {
        &self.tau
    }

    pub fn term(&self) -> &Term {
        &self.m
    }
}

/// `M = λx. x` at the tree type itself.
pub fn identity_witness() -> ReducibilityWitness {
    let t = tree_type();
    ReducibilityWitness::new(t.clone(), Term::lam("x", t, Term::Var(0))).expect("identity is a witness")
}

/// `N_τ = λx. M_τ x (λc d. S₊⟨c, d⟩) 0`.
pub fn build_n(w: &ReducibilityWitness) -> Term {
    let p0 = cantor(CantorOp::P0).term;
    let node = Term::lam(
        "c",
        Type::N,
        Term::lam("d", Type::N, Term::app(Term::Succ, Term::apps(p0, [Term::Var(1), Term::Var(0)]))),
    );
    Term::Lam(
        Name::new("x"),
        w.tau.clone(),
        Arc::new(Term::apps(w.m.clone(), [Term::Var(0), node, Term::Zero])),
    )
}

fn expect_type(t: &Term, expected: Type) -> Result<(), ReducibilityError> {
    let found = infer_type(&Context::new(), t)?;
    if found != expected {
        return Err(ReducibilityError::TypeMismatch { expected, found });
    }
    Ok(())
}

fn check_sides(
    witness: &ReducibilityWitness,
    witness_side: &Type,
    bundle: &EnumeratorBundle,
    bundle_side: &Type,
) -> Result<(), ReducibilityError> {
    if witness.tau != *witness_side {
        return Err(ReducibilityError::TypeMismatch { expected: witness_side.clone(), found: witness.tau.clone() });
    }
    if bundle.tau != *bundle_side {
        return Err(ReducibilityError::TypeMismatch { expected: bundle_side.clone(), found: bundle.tau.clone() });
    }
    Ok(())
}

/// `λx:N. N_τ (F (E_σ x))`.
pub fn encode_u(
    f: &Term,
    sigma: &Type,
    tau: &Type,
    witness: &ReducibilityWitness,
    bundle: &EnumeratorBundle,
) -> Result<Term, ReducibilityError> {
    expect_type(f, Type::arrow(sigma.clone(), tau.clone()))?;
    check_sides(witness, tau, bundle, sigma)?;
    let body = Term::app(build_n(witness), Term::app(f.clone(), Term::app(bundle.e.clone(), Term::Var(0))));
    Ok(Term::lam("x", Type::N, body))
}

/// `λx:σ. E_τ (G (N_σ x))`.
pub fn decode_v(
    g: &Term,
    sigma: &Type,
    tau: &Type,
    witness: &ReducibilityWitness,
    bundle: &EnumeratorBundle,
) -> Result<Term, ReducibilityError> {
    expect_type(g, Type::arrow(Type::N, Type::N))?;
    check_sides(witness, sigma, bundle, tau)?;
    let body = Term::app(bundle.e.clone(), Term::app(g.clone(), Term::app(build_n(witness), Term::Var(0))));
    Ok(Term::lam("x", sigma.clone(), body))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::{eval_numeral_u64, Normalizer};
    use crate::parse::parse_term;

    fn tree(src: &str) -> Term {
        parse_term(src).unwrap()
    }

    #[test]
    fn trees_from_terms() {
        let leaf = BinaryTree::Leaf;
        let one = BinaryTree::node(leaf.clone(), leaf.clone());
        assert_eq!(tree_of_nf(&tree(r"\x:N -> N -> N. \y:N. y")).unwrap(), leaf);
        assert_eq!(tree_of_nf(&tree(r"\x:N -> N -> N. \y:N. x y y")).unwrap(), one);
        assert_eq!(
            tree_of_nf(&tree(r"\x:N -> N -> N. \y:N. x (x y y) y")).unwrap(),
            BinaryTree::node(one.clone(), leaf.clone())
        );
        assert!(tree_of_nf(&tree(r"\x:N. x")).is_err());
        assert_eq!(one.to_term(), tree(r"\x:N -> N -> N. \y:N. x y y"));
    }

    #[test]
    fn numerals_of_trees() {
        let leaf = BinaryTree::Leaf;
        let one = BinaryTree::node(leaf.clone(), leaf.clone());
        assert_eq!(tree_numeral(&leaf), Nat::from(0u32));
        assert_eq!(tree_numeral(&one), Nat::from(1u32));
        assert_eq!(tree_numeral(&BinaryTree::node(one.clone(), leaf.clone())), Nat::from(3u32));
        assert_eq!(tree_numeral(&BinaryTree::node(leaf, one)), Nat::from(2u32));
        assert_eq!(BinaryTree::all_with_nodes(3).len(), 5);
    }

    #[test]
    fn identity_witness_separates() {
        let n = build_n(&identity_witness());
        assert_eq!(infer_type(&Context::new(), &n).unwrap(), Type::arrow(tree_type(), Type::N));
        let norm = Normalizer::default();
        for (src, want) in [
            (r"\x:N -> N -> N. \y:N. y", 0),
            (r"\x:N -> N -> N. \y:N. x y y", 1),
            (r"\x:N -> N -> N. \y:N. x y (x y y)", 2),
        ] {
            let nf = norm.normalize(&Term::app(n.clone(), tree(src))).unwrap();
            assert_eq!(eval_numeral_u64(&nf).unwrap(), want, "{src}");
        }
    }

    #[test]
    fn witnesses_are_validated() {
        let t = tree_type();
        assert!(matches!(
            ReducibilityWitness::new(t.clone(), parse_term(r"\x:N. x").unwrap()),
            Err(ReducibilityError::TypeMismatch { .. })
        ));
        let impure = parse_term(r"\x:(N -> N -> N) -> N -> N. \p:N -> N -> N. \z:N. S z").unwrap();
        assert!(matches!(ReducibilityWitness::new(t, impure), Err(ReducibilityError::ImpureWitness(_))));
    }
}
