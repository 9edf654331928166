//! A kernel for Gödel's theory T: typechecking, βηT-normalization, and the
//! metaprogramming constructions built on top of it (Gödel numbering of
//! pure closed normal forms, in-theory enumerators, tree codes).

pub mod codec;
pub mod enumerator;
pub mod meta_nf;
pub mod normalize;
pub mod parse;
pub mod print;
pub mod random;
pub mod reducibility;
pub mod stdlib;
pub mod term;
pub mod types;
pub mod typing;

/// Arbitrary-precision natural number.
pub type Nat = num_bigint::BigUint;

pub use parse::{parse_term, parse_term_with, parse_type, ParseError, Prelude};
pub use print::display_in;
pub use term::{alpha_eq, Context, Name, Term};
pub use types::Type;
pub use typing::{infer_type, TypeError};
