//! Additive and multiplicative characters of GF(q), exact character sums over
//! Z[ω_p], Gauss sums, and empirical Weil-bound checks.

mod characters;
mod cyclotomic;
mod poly;
pub mod weil;

pub use characters::{gauss_sum, AdditiveCharacter, CharSum, MultiplicativeCharacter};
pub use cyclotomic::CyclotomicInteger;
pub use poly::FieldPoly;
pub use weil::{
    check_additive_weil, check_additive_weil_nonzero, check_hybrid_weil, hybrid_sum, WeilCheck,
};

use thiserror::Error;

use crate::field::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharSumError {
    #[error("cyclotomic integers over different primes ({left} vs {right})")]
    MixedModulus { left: u32, right: u32 },
    #[error("g cannot be certified as not c·h^M (only nonconstant squarefree g is accepted)")]
    DegenerateG,
    #[error("deg f = {degree} is divisible by p = {p}")]
    DegreeDivisibleByP { degree: usize, p: u32 },
    #[error("f must have degree at least 1")]
    ConstantPolynomial,
    #[error("the multiplicative character must be nontrivial")]
    TrivialCharacter,
    #[error(transparent)]
    Field(#[from] FieldError),
}
