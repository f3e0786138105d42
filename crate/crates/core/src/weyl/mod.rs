//! Symbolic layer: operator expressions over `a`, `a†`, `n̂` with `[a, a†] = 1`,
//! reduced to the normal-ordered basis `(a†)^j a^k` with exact coefficients.

mod diag;
mod expr;
mod normal;
mod parse;
pub mod random;

pub use diag::{diagonal_poly, DiagonalPoly, NotDiagonal};
pub use expr::{Expr, Generator};
pub use normal::{commutator, normal_order, NormalForm};
pub use parse::{parse, ParseError, ParseErrorKind};
