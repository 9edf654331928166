mod common;

use std::collections::HashMap;

use godel_t::codec::encode_oslash;
use godel_t::enumerator::{build_bundle, enumerator_normalizer};
use godel_t::meta_nf::enumerate_pure_closed_nf;
use godel_t::normalize::{eval_numeral_u64, Normalizer};
use godel_t::reducibility::{
    build_n, decode_v, encode_u, identity_witness, tree_numeral, tree_of_nf, tree_type, BinaryTree,
    ReducibilityError, ReducibilityWitness,
};
use godel_t::{Nat, Term};

use common::corpus::{cantor, std_term, ty};
use common::golden;

fn oracle_numeral(t: &BinaryTree) -> u64 {
    match t {
        BinaryTree::Leaf => 0,
        BinaryTree::Node(l, r) => 1 + cantor(oracle_numeral(l), oracle_numeral(r)),
    }
}

#[test]
fn tree_numerals_are_injective_up_to_six_nodes() {
    let mut seen: HashMap<u64, BinaryTree> = HashMap::new();
    for n in 0..=6 {
        let trees = BinaryTree::all_with_nodes(n);
        assert_eq!(trees.len(), [1, 1, 2, 5, 14, 42, 132][n]);
        for t in trees {
            let v = oracle_numeral(&t);
            assert_eq!(tree_numeral(&t), Nat::from(v), "{t}");
            assert_eq!(tree_of_nf(&t.to_term()).unwrap(), t);
            if let Some(prev) = seen.insert(v, t.clone()) {
                panic!("{t} and {prev} share numeral {v}");
            }
        }
    }
}

#[test]
fn identity_witness_computes_tree_numerals() {
    let norm = Normalizer::default();
    let n = build_n(&identity_witness());
    for size in 0..=5 {
        for t in BinaryTree::all_with_nodes(size) {
            let nf = norm.normalize(&Term::app(n.clone(), t.to_term())).unwrap();
            assert_eq!(eval_numeral_u64(&nf).unwrap(), oracle_numeral(&t), "{t}");
        }
    }
}

#[test]
fn constant_decoding() {
    let star = tree_type();
    let leaf = std_term(r"\x:N -> N -> N. \y:N. y");
    let code = encode_oslash(&leaf, &star).unwrap();
    let g = std_term(&format!(r"\n:N. #{code}"));
    let v = decode_v(&g, &star, &star, &identity_witness(), &build_bundle(&star)).unwrap();
    let norm = enumerator_normalizer();
    for src in [r"\x:N -> N -> N. \y:N. y", r"\x:N -> N -> N. \y:N. x y y", r"\x:N -> N -> N. \y:N. x (x y y) y"] {
        let nf = norm.normalize(&Term::app(v.clone(), std_term(src))).unwrap();
        assert_eq!(nf.term, leaf, "{src}");
    }
}

#[test]
fn identity_decoding_is_frozen() {
    let star = tree_type();
    let v = decode_v(&std_term(r"\n:N. n"), &star, &star, &identity_witness(), &build_bundle(&star)).unwrap();
    let norm = enumerator_normalizer();
    let mut out = String::new();
    for a in enumerate_pure_closed_nf(&star, 15) {
        let nf = norm.normalize(&Term::app(v.clone(), a.clone())).unwrap();
        let numeral = tree_numeral(&tree_of_nf(&a).unwrap());
        out.push_str(&format!("{a}\t{numeral}\t{}\n", nf.term));
    }
    golden("decode_v_identity_tree.txt", &out);
}

#[test]
fn mistyped_arguments_are_rejected() {
    let star = tree_type();
    let wit = identity_witness();
    let bundle = build_bundle(&star);
    let g = std_term(r"\n:N. \m:N. n");
    assert!(matches!(decode_v(&g, &star, &star, &wit, &bundle), Err(ReducibilityError::TypeMismatch { .. })));
    let f = std_term(r"\x:N. x");
    assert!(matches!(encode_u(&f, &star, &star, &wit, &bundle), Err(ReducibilityError::TypeMismatch { .. })));
    let other = build_bundle(&ty("N -> N"));
    let id = std_term(r"\t:(N -> N -> N) -> N -> N. t");
    assert!(encode_u(&id, &star, &star, &wit, &other).is_err());
}

#[test]
fn user_witnesses_are_validated() {
    let star = tree_type();
    let swap = std_term(r"\t:(N -> N -> N) -> N -> N. \p:N -> N -> N. t (\a:N. \b:N. p b a)");
    let w = ReducibilityWitness::new(star.clone(), swap).unwrap();
    let norm = Normalizer::default();
    let n = build_n(&w);
    for t in BinaryTree::all_with_nodes(3) {
        let got = eval_numeral_u64(&norm.normalize(&Term::app(n.clone(), t.to_term())).unwrap()).unwrap();
        let mirrored = mirror(&t);
        assert_eq!(got, oracle_numeral(&mirrored), "{t}");
    }
    let impure = std_term(r"\t:(N -> N -> N) -> N -> N. \p:N -> N -> N. \z:N. t p (S z)");
    assert!(matches!(ReducibilityWitness::new(star.clone(), impure), Err(ReducibilityError::ImpureWitness(_))));
    assert!(ReducibilityWitness::new(star, std_term(r"\x:N. x")).is_err());
}

fn mirror(t: &BinaryTree) -> BinaryTree {
    match t {
        BinaryTree::Leaf => BinaryTree::Leaf,
        BinaryTree::Node(l, r) => BinaryTree::node(mirror(r), mirror(l)),
    }
}
