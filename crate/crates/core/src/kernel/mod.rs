//! Monomials, pure-difference binomials, term orders and weights.
//!
//! Everything here is an immutable value type. The standard-basis pipeline
//! only ever produces monomials and binomials with coefficients `+1`/`-1`,
//! so no coefficient field is modelled.

mod binomial;
mod monomial;
mod order;
mod weight;

pub use binomial::{Binomial, Poly};
pub use monomial::{Monomial, DEFAULT_DEGREE_CAP, MAX_ARITY};
pub use order::{OrderKind, TermOrder};
pub use weight::{gcd, WeightVector};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("unsupported arity {0}")]
    Arity(usize),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("total degree exceeds cap {cap}")]
    DegreeCap { cap: u64 },
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("binomial with equal sides is zero")]
    ZeroBinomial,
    #[error("ecart is only defined for local orders")]
    GlobalOrderEcart,
    #[error("invalid variable precedence {0:?}")]
    BadPrecedence(Vec<usize>),
    #[error("elimination block {block} invalid for arity {arity}")]
    BadBlock { block: usize, arity: usize },
    #[error("weights must be positive: {0:?}")]
    BadWeights(Vec<u64>),
    #[error("weight overflows 128 bits")]
    WeightOverflow,
}
