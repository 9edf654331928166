//! Native implementations of the arithmetic combinators on numerals.
//!
//! A jet is recognized by structural equality with the combinator's term and
//! fires only when every argument evaluates to a numeral; otherwise the
//! original term is run. The result is the numeral the term itself would
//! produce, so normal forms are unaffected.

use std::sync::OnceLock;

use crate::codec::{pair_u64, unpair_u64};
use crate::stdlib::{arith, cantor, ArithOp, CantorOp};
use crate::term::Term;

/// How much native arithmetic the evaluator may use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Acceleration {
    /// Pure reduction of the terms as written.
    None,
    /// `Add`, `Mult`, `Pred`, `Monus`, `Div` and `P0`.
    Arithmetic,
    /// Additionally `P1` and `P2`.
    #[default]
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Jet {
    Add,
    Mult,
    Pred,
    Monus,
    Div,
    P0,
    P1,
    P2,
}

impl Jet {
    pub const ALL: [Jet; 8] = [
        Jet::Add,
        Jet::Mult,
        Jet::Pred,
        Jet::Monus,
        Jet::Div,
        Jet::P0,
        Jet::P1,
        Jet::P2,
    ];

    pub fn arity(self) -> usize {
        match self {
            Jet::Pred | Jet::P1 | Jet::P2 => 1,
            _ => 2,
        }
    }

    pub fn enabled(self, level: Acceleration) -> bool {
        match level {
            Acceleration::None => false,
            Acceleration::Arithmetic => !matches!(self, Jet::P1 | Jet::P2),
            Acceleration::Full => true,
        }
    }

    pub fn term(self) -> &'static Term {
        static TERMS: OnceLock<Vec<Term>> = OnceLock::new();
        let all = TERMS.get_or_init(|| {
            Jet::ALL
                .iter()
                .map(|j| match j {
                    Jet::Add => arith(ArithOp::Add).term,
                    Jet::Mult => arith(ArithOp::Mult).term,
                    Jet::Pred => arith(ArithOp::Pred).term,
                    Jet::Monus => arith(ArithOp::Monus).term,
                    Jet::Div => arith(ArithOp::Div).term,
                    Jet::P0 => cantor(CantorOp::P0).term,
                    Jet::P1 => cantor(CantorOp::P1).term,
                    Jet::P2 => cantor(CantorOp::P2).term,
                })
                .collect()
        });
        &all[self as usize]
    }

    /// The numeral the combinator computes, or `None` on `u64` overflow.
    pub fn eval(self, args: &[u64]) -> Option<u64> {
        match (self, args) {
            (Jet::Add, [x, y]) => x.checked_add(*y),
            (Jet::Mult, [x, y]) => x.checked_mul(*y),
            (Jet::Pred, [x]) => Some(x.saturating_sub(1)),
            (Jet::Monus, [x, y]) => Some(x.saturating_sub(*y)),
            // the largest a <= x with a*y <= x; every a qualifies when y = 0
            (Jet::Div, [x, y]) => Some(if *y == 0 { *x } else { x / y }),
            (Jet::P0, [x, y]) => pair_u64(*x, *y),
            (Jet::P1, [z]) => Some(unpair_u64(*z).0),
            (Jet::P2, [z]) => Some(unpair_u64(*z).1),
            _ => panic!("{self:?} applied to {} arguments", args.len()),
        }
    }
}
