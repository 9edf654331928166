mod common;

use godel_t::enumerator::{apply_enumerator, build_bundle, enumerator_normalizer, typecheck_bundle, JCase};
use godel_t::{infer_type, Context, Nat, Term};

use common::corpus::ty;
use common::{golden, slug};

const FAMILY: [&str; 6] = [
    "N -> N",
    "N -> N -> N",
    "(N -> N) -> N -> N",
    "(N -> N -> N) -> N -> N",
    "((N -> N) -> N) -> N",
    "(N -> N) -> N",
];

#[test]
fn bundles_typecheck_across_the_family() {
    for t in FAMILY {
        let bundle = build_bundle(&ty(t));
        typecheck_bundle(&bundle).unwrap_or_else(|e| panic!("{t}: {e}"));
        for (name, term, want) in bundle.expected_types() {
            assert!(term.is_closed(), "{t}: {name} is open");
            assert_eq!(infer_type(&Context::new(), term).unwrap(), want, "{t}: {name}");
        }
    }
}

#[test]
fn every_slot_is_filled() {
    for t in FAMILY {
        let bundle = build_bundle(&ty(t));
        let n = bundle.n();
        assert_eq!(bundle.subtypes.len(), n);
        assert_eq!(bundle.j_slots.len(), n, "{t}");
        for row in &bundle.j_slots {
            assert_eq!(row.len(), n + 2, "{t}");
        }
        let table = bundle.degeneracy_table();
        assert_eq!(table.len(), n * (n + 2));
        for (i, j, case) in &table {
            let expect_variable = *j == 0;
            assert_eq!(matches!(case, JCase::Variable), expect_variable, "{t}: J[{j},{i}]");
        }
    }
}

#[test]
fn degeneracy_follows_the_subtypes() {
    for t in FAMILY {
        let tau = ty(t);
        let bundle = build_bundle(&tau);
        let subs = tau.subtypes();
        let n = subs.len();
        for (i, j, case) in bundle.degeneracy_table() {
            let ti = &subs[i - 1];
            match case {
                JCase::Variable => assert_eq!(j, 0),
                JCase::Application { k } => {
                    assert!((1..=n).contains(&j));
                    assert_eq!(subs[k - 1], godel_t::Type::arrow(subs[j - 1].clone(), ti.clone()));
                }
                JCase::Lambda { via, k } => {
                    assert_eq!(j, n + 1);
                    assert_eq!(*ti, godel_t::Type::arrow(subs[via - 1].clone(), subs[k - 1].clone()));
                }
                JCase::Degenerate => {
                    if (1..=n).contains(&j) {
                        let want = godel_t::Type::arrow(subs[j - 1].clone(), ti.clone());
                        assert!(!subs.contains(&want), "{t}: J[{j},{i}] should not be degenerate");
                    } else {
                        assert!(ti.is_ground(), "{t}: J[{j},{i}]");
                    }
                }
            }
        }
    }
}

#[test]
fn golden_degeneracy_tables() {
    for t in FAMILY {
        let tau = ty(t);
        let bundle = build_bundle(&tau);
        let mut out = String::new();
        for (k, s) in bundle.subtypes.iter().enumerate() {
            out.push_str(&format!("tau{} = {s}\n", k + 1));
        }
        for (i, j, case) in bundle.degeneracy_table() {
            out.push_str(&format!("J[{j},{i}] {case}\n"));
        }
        golden(&format!("degeneracy_{}.txt", slug(&tau)), &out);
    }
}

#[test]
fn enumerator_on_code_zero() {
    let tau = ty("N -> N");
    let bundle = build_bundle(&tau);
    let nf = apply_enumerator(&bundle, &Nat::from(0u32), &enumerator_normalizer()).unwrap();
    assert_eq!(nf.ty, tau);
    golden("enumerator_N_N_code_0.txt", &format!("{}\n", nf.term));
}

#[test]
fn enumerator_inverts_small_codes() {
    let norm = enumerator_normalizer();
    for (t, code, src) in [
        ("N -> N", 9u32, r"\x:N. x"),
        ("N -> N -> N", 175, r"\x:N. \y:N. x"),
        ("N -> N -> N", 280, r"\x:N. \y:N. y"),
        ("(N -> N) -> N -> N", 14, r"\x:N -> N. x"),
        ("(N -> N) -> N -> N", 280, r"\x:N -> N. \y:N. y"),
    ] {
        let bundle = build_bundle(&ty(t));
        let nf = apply_enumerator(&bundle, &Nat::from(code), &norm).unwrap();
        let want: Term = common::corpus::std_term(src);
        assert_eq!(nf.term, want, "{t} code {code}");
    }
}
