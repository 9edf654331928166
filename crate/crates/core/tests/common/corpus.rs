//! The stdlib test corpus with expected values from plain Rust arithmetic.

use godel_t::stdlib::{cons, curry_pair, iteration, list_literal, projection, tuple_literal, standard_prelude};
use godel_t::{parse_term_with, parse_type, Context, Term, Type};

pub fn std_term(src: &str) -> Term {
    parse_term_with(standard_prelude(), &Context::new(), src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

pub fn ty(s: &str) -> Type {
    parse_type(s).unwrap()
}

/// A closed term of type `N` and the numeral it must normalize to.
pub struct NumCase {
    pub label: String,
    pub term: Term,
    pub expect: u64,
}

fn case(label: String, src: &str, expect: u64) -> NumCase {
    NumCase { label, term: std_term(src), expect }
}

pub fn add(m: u64, n: u64) -> u64 {
    m + n
}

pub fn monus(m: u64, n: u64) -> u64 {
    m.saturating_sub(n)
}

pub fn div(x: u64, y: u64) -> u64 {
    (0..=x).filter(|a| a * y <= x).max().unwrap()
}

pub fn max_le(n: u64, f: impl Fn(u64) -> u64) -> u64 {
    (0..=n).filter(|&m| f(m) == 0).max().unwrap_or(0)
}

pub fn cantor(x: u64, y: u64) -> u64 {
    (x + y) * (x + y + 1) / 2 + x
}

/// Add, Mult, Pred, Monus, Cond, Sum, MaxLe and Div against the oracle.
pub fn arithmetic_tables() -> Vec<NumCase> {
    let mut out = Vec::new();
    for m in 0..=40 {
        for n in 0..=40 {
            out.push(case(format!("Add {m} {n}"), &format!("Add #{m} #{n}"), add(m, n)));
            out.push(case(format!("Monus {m} {n}"), &format!("Monus #{m} #{n}"), monus(m, n)));
        }
        out.push(case(format!("Pred {m}"), &format!("Pred #{m}"), m.saturating_sub(1)));
    }
    for m in 0..=12 {
        for n in 0..=12 {
            out.push(case(format!("Mult {m} {n}"), &format!("Mult #{m} #{n}"), m * n));
        }
    }
    for x in 0..=3 {
        for y in 0..=3 {
            for n in 0..=5 {
                let want = if n == 0 { x } else { y };
                out.push(case(format!("Cond {x} {y} {n}"), &format!("Cond #{x} #{y} #{n}"), want));
            }
        }
    }
    for n in 0..=10 {
        out.push(case(format!("Sum {n} id"), &format!(r"Sum #{n} (\i:N. i)"), (0..=n).sum()));
        out.push(case(format!("Sum {n} sq"), &format!(r"Sum #{n} (\i:N. Mult i i)"), (0..=n).map(|i| i * i).sum()));
    }
    for n in 0..=10 {
        out.push(case(format!("MaxLe {n} m-3"), &format!(r"MaxLe #{n} (\m:N. Monus m #3)"), max_le(n, |m| monus(m, 3))));
        out.push(case(format!("MaxLe {n} const1"), &format!(r"MaxLe #{n} (\m:N. #1)"), max_le(n, |_| 1)));
        out.push(case(format!("MaxLe {n} 5-m"), &format!(r"MaxLe #{n} (\m:N. Monus #5 m)"), max_le(n, |m| monus(5, m))));
    }
    for x in 0..=20 {
        for y in 0..=5 {
            out.push(case(format!("Div {x} {y}"), &format!("Div #{x} #{y}"), div(x, y)));
        }
    }
    out
}

/// An equation between two closed terms, optionally under a context.
pub struct Law {
    pub label: String,
    pub ctx: Context,
    pub lhs: Term,
    pub rhs: Term,
}

/// The Curry product laws at six type combinations, as open terms.
pub fn curry_laws() -> Vec<Law> {
    let combos = [
        ("N", "N"),
        ("N", "N -> N"),
        ("N -> N", "N"),
        ("N -> N", "N -> N -> N"),
        ("(N -> N) -> N", "N"),
        ("N -> N -> N", "(N -> N) -> N -> N"),
    ];
    let mut out = Vec::new();
    for (s, t) in combos {
        let (sigma, tau) = (ty(s), ty(t));
        let cp = curry_pair(&sigma, &tau);
        let ctx = Context::from_bindings([("x", sigma.clone()), ("y", tau.clone())]);
        let pair = Term::apps(cp.d0.term.clone(), [Term::Var(1), Term::Var(0)]);
        out.push(Law {
            label: format!("D1 (D0 x y) = x at ({s}, {t})"),
            ctx: ctx.clone(),
            lhs: Term::app(cp.d1.term.clone(), pair.clone()),
            rhs: Term::Var(1),
        });
        out.push(Law {
            label: format!("D2 (D0 x y) = y at ({s}, {t})"),
            ctx,
            lhs: Term::app(cp.d2.term.clone(), pair),
            rhs: Term::Var(0),
        });
    }
    out
}

/// Tuple projections and list indexing on numerals.
pub fn structure_cases() -> Vec<NumCase> {
    let n3 = vec![Type::N; 3];
    let tuple = tuple_literal(&n3, vec![Term::numeral(1), Term::numeral(2), Term::numeral(3)]).unwrap();
    let mut out = Vec::new();
    for i in 1..=3 {
        out.push(NumCase {
            label: format!("D{i} of {{1,2,3}}"),
            term: Term::app(projection(&n3, i).unwrap().term, tuple.clone()),
            expect: i as u64,
        });
    }
    let cp = curry_pair(&Type::N, &Type::N);
    out.push(NumCase {
        label: "D1 (D0 #3 #9)".into(),
        term: Term::app(cp.d1.term, Term::apps(cp.d0.term, [Term::numeral(3), Term::numeral(9)])),
        expect: 3,
    });
    let list = list_literal(&Type::N, vec![Term::numeral(5), Term::numeral(6), Term::numeral(7)]);
    for (i, want) in [(0, 5), (1, 6), (2, 7), (9, 0)] {
        out.push(NumCase {
            label: format!("[5,6,7] {i}"),
            term: Term::app(list.clone(), Term::numeral(i)),
            expect: want,
        });
    }
    // reversed lists: [x_n, …, x_0] at index n-i is x_i
    for n in 0..=4u64 {
        let items: Vec<Term> = (0..=n).rev().map(|i| Term::numeral(10 + i)).collect();
        let list = list_literal(&Type::N, items);
        for i in 0..=n {
            out.push(NumCase {
                label: format!("reversed n={n} i={i}"),
                term: Term::app(list.clone(), Term::numeral(n - i)),
                expect: 10 + i,
            });
        }
    }
    let c = cons(&Type::N).term;
    out.push(NumCase {
        label: "Cons #4 0 #0".into(),
        term: Term::apps(c, [Term::numeral(4), godel_t::stdlib::zero_of_type(&ty("N -> N")).term, Term::numeral(0)]),
        expect: 4,
    });
    let it = iteration(&Type::N);
    out.push(NumCase {
        label: "Iter #3 S #4".into(),
        term: Term::apps(it.iter.term.clone(), [Term::numeral(3), Term::Succ, Term::numeral(4)]),
        expect: 7,
    });
    out
}

/// `RecFromIter_N A B n̄` against `R_N A B n̄`.
pub fn iteration_laws() -> Vec<Law> {
    let it = iteration(&Type::N);
    let steps = [
        r"\a:N. \b:N. S a",
        r"\a:N. \b:N. b",
        r"\a:N. \b:N. Add a b",
        r"\a:N. \b:N. Mult #2 a",
        r"\a:N. \b:N. Monus b a",
    ];
    let mut out = Vec::new();
    for (k, step) in steps.iter().enumerate() {
        for n in 0..=4u64 {
            let a = Term::numeral(k as u64 % 3);
            let b = std_term(step);
            out.push(Law {
                label: format!("RecFromIter {a} ({step}) {n}"),
                ctx: Context::new(),
                lhs: Term::apps(it.rec_from_iter.term.clone(), [a.clone(), b.clone(), Term::numeral(n)]),
                rhs: Term::apps(Term::Rec(Type::N), [a, b, Term::numeral(n)]),
            });
        }
    }
    out
}
