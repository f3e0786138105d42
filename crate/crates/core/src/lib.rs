//! Ladder-operator algebra of the harmonic oscillator, quantum p-on
//! endomorphisms on Fock space, and operator representations of `ζ(s)`,
//! its Euler product and related Dirichlet series.

pub mod appendix;
pub mod arith;
pub mod fock;
pub mod pon;
pub mod special;
pub mod verify;
pub mod weyl;
pub mod zeta;

use appendix::{AppendixError, TableError};
use arith::ExponentParseError;
use fock::FockError;
use pon::PonError;
use weyl::{NotDiagonal, ParseError};
use zeta::ZetaError;

/// Any error produced by the library.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Exponent(#[from] ExponentParseError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    NotDiagonal(#[from] NotDiagonal),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Pon(#[from] PonError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Appendix(#[from] AppendixError),
}

/// Coarse classification used for process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorClass {
    /// Malformed input text.
    Parse,
    /// Well-formed input outside the operation's domain (non-prime, unbalanced form, ...).
    Domain,
    /// Divergent series, insufficient cutoff or prime bound, quadrature failure.
    Convergence,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::Parse => 2,
            ErrorClass::Domain => 3,
            ErrorClass::Convergence => 4,
        }
    }
}

fn fock_class(e: &FockError) -> ErrorClass {
    match e {
        FockError::CutoffOverflow { .. } => ErrorClass::Convergence,
        FockError::BasisMismatch { .. } | FockError::NotRepresentable(_) => ErrorClass::Domain,
    }
}

fn pon_class(e: &PonError) -> ErrorClass {
    match e {
        PonError::PrimeBoundTooSmall { .. } | PonError::IndexOverflow => ErrorClass::Convergence,
        PonError::ZeroIndex | PonError::MixedFlavor | PonError::VacuumSupport => ErrorClass::Domain,
        PonError::Fock(f) => fock_class(f),
    }
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) | Error::Exponent(_) | Error::Table(_) => ErrorClass::Parse,
            Error::NotDiagonal(_) => ErrorClass::Domain,
            Error::Fock(e) => fock_class(e),
            Error::Pon(e) => pon_class(e),
            Error::Zeta(e) => match e {
                ZetaError::NotPrime(_) => ErrorClass::Domain,
                ZetaError::Fock(f) => fock_class(f),
                ZetaError::Pon(p) => pon_class(p),
                ZetaError::DivergentParameters { .. }
                | ZetaError::PrimeBoundTooSmall { .. }
                | ZetaError::InvalidParameter(_)
                | ZetaError::Quadrature(_) => ErrorClass::Convergence,
            },
            Error::Appendix(e) => match e {
                AppendixError::NotPrime(_) | AppendixError::NotOddPrime(_) => ErrorClass::Domain,
                AppendixError::DivergentParameters { .. }
                | AppendixError::InvalidParameter(_)
                | AppendixError::Quadrature(_) => ErrorClass::Convergence,
            },
        }
    }
}
