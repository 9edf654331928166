//! βηT-normalization and provable equality.

mod jets;
mod machine;

use std::fmt;

use num_traits::ToPrimitive;
use thiserror::Error;

pub use jets::{Acceleration, Jet};

use crate::term::{Context, Term};
use crate::types::Type;
use crate::typing::{infer_type, TypeError};
use crate::Nat;

/// Stack reserved for each normalization; read-back recurses on term depth.
const STACK_BYTES: usize = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: u64,
    pub max_nodes: u64,
}

impl Budget {
    pub const DEFAULT_STEPS: u64 = 100_000_000;
    pub const DEFAULT_NODES: u64 = 10_000_000;
    /// Step limit for applying enumerator terms.
    pub const ENUMERATOR_STEPS: u64 = 1_000_000_000;

    pub fn new(max_steps: u64, max_nodes: u64) -> Budget {
        assert!(max_steps > 0 && max_nodes > 0, "budgets must be positive");
        Budget { max_steps, max_nodes }
    }

    pub fn enumerator() -> Budget {
        Budget::new(Budget::ENUMERATOR_STEPS, Budget::DEFAULT_NODES)
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::new(Budget::DEFAULT_STEPS, Budget::DEFAULT_NODES)
    }
}

/// Work done by one normalization.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// β-contractions, recursor unfoldings, η-contractions and jet firings.
    pub steps: u64,
    /// Of which native arithmetic.
    pub jet_steps: u64,
    /// Nodes of the read-back normal form.
    pub nodes: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resource {
    Steps,
    Nodes,
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Resource::Steps => "step",
            Resource::Nodes => "node",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("{resource} budget exhausted after {steps} steps with {nodes} nodes built")]
    BudgetExhausted { resource: Resource, steps: u64, nodes: u64 },
    #[error("ill-typed input: {0}")]
    IllTyped(#[from] TypeError),
    #[error("cannot compare terms of types {left} and {right}")]
    TypeMismatch { left: Type, right: Type },
    #[error("numeral exceeds the machine word")]
    Overflow,
    #[error("not a closed numeral: {0}")]
    NotANumeral(String),
    #[error("internal evaluator error: {0}")]
    Internal(&'static str),
}

/// A term in βηT-normal form together with its type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub term: Term,
    pub ty: Type,
    pub stats: Stats,
}

/// Normalization settings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Normalizer {
    pub budget: Budget,
    pub acceleration: Acceleration,
}

impl Normalizer {
    pub fn new(budget: Budget) -> Normalizer {
        Normalizer { budget, acceleration: Acceleration::default() }
    }

    pub fn with_acceleration(mut self, acceleration: Acceleration) -> Normalizer {
        self.acceleration = acceleration;
        self
    }

    pub fn normalize(&self, t: &Term) -> Result<NormalForm, NormalizeError> {
        self.normalize_in(&Context::new(), t)
    }

    /// Normalizes an open term whose free variables are typed by `ctx`.
    pub fn normalize_in(&self, ctx: &Context, t: &Term) -> Result<NormalForm, NormalizeError> {
        let ty = infer_type(ctx, t)?;
        let (term, stats) = self.run(t, ctx.len())?;
        Ok(NormalForm { term, ty, stats })
    }

    fn run(&self, t: &Term, depth: usize) -> Result<(Term, Stats), NormalizeError> {
        let t = t.clone();
        let Normalizer { budget, acceleration } = *self;
        let worker = std::thread::Builder::new()
            .name("normalize".into())
            .stack_size(STACK_BYTES)
            .spawn(move || {
                let mut compiler = machine::Compiler::new(acceleration);
                let code = compiler.compile(&t);
                drop(compiler);
                let mut m = machine::Machine::new(budget, acceleration);
                let out = m.normalize(code, depth);
                let stats = m.stats;
                // the term is dropped here too, on the large stack
                drop(t);
                out.map(|term| (term, stats))
            })
            .map_err(|_| NormalizeError::Internal("could not start evaluator thread"))?;
        worker
            .join()
            .unwrap_or(Err(NormalizeError::Internal("evaluator thread panicked")))
    }

    /// Decides `T ⊢ a = b` for closed terms.
    pub fn equal(&self, a: &Term, b: &Term) -> Result<bool, NormalizeError> {
        self.equal_in(&Context::new(), a, b)
    }

    /// Decides `T ⊢ a = b` for terms open in `ctx`.
    pub fn equal_in(&self, ctx: &Context, a: &Term, b: &Term) -> Result<bool, NormalizeError> {
        let (ta, tb) = (infer_type(ctx, a)?, infer_type(ctx, b)?);
        if ta != tb {
            return Err(NormalizeError::TypeMismatch { left: ta, right: tb });
        }
        let na = self.normalize_in(ctx, a)?;
        let nb = self.normalize_in(ctx, b)?;
        Ok(na.term == nb.term)
    }
}

pub fn normalize(t: &Term, budget: Budget) -> Result<NormalForm, NormalizeError> {
    Normalizer::new(budget).normalize(t)
}

pub fn equal(a: &Term, b: &Term, budget: Budget) -> Result<bool, NormalizeError> {
    Normalizer::new(budget).equal(a, b)
}

/// The `n` with `nf = S₊ⁿ 0_N`.
pub fn eval_numeral(nf: &NormalForm) -> Result<Nat, NormalizeError> {
    if nf.ty != Type::N || !nf.term.is_closed() {
        return Err(NormalizeError::NotANumeral(format!("{} : {}", nf.term, nf.ty)));
    }
    nf.term
        .as_numeral()
        .ok_or_else(|| NormalizeError::NotANumeral(nf.term.to_string()))
}

pub fn eval_numeral_u64(nf: &NormalForm) -> Result<u64, NormalizeError> {
    eval_numeral(nf)?.to_u64().ok_or(NormalizeError::Overflow)
}

/// `S₊ⁿ 0_N` as a normal form.
pub fn numeral(n: u64) -> NormalForm {
    NormalForm { term: Term::numeral(n), ty: Type::N, stats: Stats::default() }
}
