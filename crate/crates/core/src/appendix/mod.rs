//! Partition functions, their Mellin moments, the mod-8 character and its
//! L-function, quadratic Gauss sums, and the absolute derivation.
//!
//! These are double-precision computations; the tolerances they are checked
//! against are far above `f64` rounding.

mod character;
mod derivation;
mod gauss;
mod partition;

pub use character::{character_mod8, l_function, DirichletCharacter, LValue};
pub use derivation::absolute_derivation;
pub use gauss::{gauss_sum, legendre, GaussSum};
pub use partition::{
    k_moment, partition_function, CoefficientSpec, MomentMethod, MomentResult, MomentSpec,
    PartitionValue, TableError, DEFAULT_MOMENT_TOLERANCE,
};

use crate::special::QuadratureError;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum AppendixError {
    #[error("{what} diverges for s = {s}")]
    DivergentParameters { s: String, what: &'static str },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}
