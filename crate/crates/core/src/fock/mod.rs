//! Truncated Fock space: number states `|n⟩`, divided-power states
//! `e_n = (1/n!)(a†)^n|0⟩`, and exact operator action on them.

mod matrix;
mod ops;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::Surd;

pub use matrix::TruncatedMatrix;
pub use ops::{
    apply, apply_bra, basis_convert, from_monomial, matrix_element, pair, pon_create,
    to_monomial,
};

/// Default cutoff for identity suites.
pub const DEFAULT_CUTOFF: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Orthonormal `|n⟩ = (1/√n!)(a†)^n|0⟩`.
    Number,
    /// `e_n = (1/n!)(a†)^n|0⟩`; ladder actions have rational coefficients here.
    DividedPower,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Number => "number",
            Basis::DividedPower => "divided-power",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    #[error("state index {index} exceeds the cutoff {cutoff}")]
    CutoffOverflow { index: u64, cutoff: u64 },
    #[error("expected a vector in the {expected} basis, got {found}")]
    BasisMismatch { expected: Basis, found: Basis },
    #[error("{0} is not representable in this amplitude type")]
    NotRepresentable(String),
}

/// Exact amplitude types.
pub trait Amplitude:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_ratio(q: BigRational) -> Self;

    /// `√(f_1 ⋯ f_k)`.
    fn sqrt_of_product(factors: &[u64]) -> Result<Self, FockError>;
}

impl Amplitude for BigRational {
    fn from_ratio(q: BigRational) -> Self {
        q
    }

    fn sqrt_of_product(factors: &[u64]) -> Result<Self, FockError> {
        let prod = factors.iter().fold(BigUint::one(), |acc, &f| acc * f);
        let root = prod.sqrt();
        if &root * &root == prod {
            Ok(BigRational::from_integer(root.into()))
        } else {
            Err(FockError::NotRepresentable(format!("sqrt({prod})")))
        }
    }
}

impl Amplitude for Surd {
    fn from_ratio(q: BigRational) -> Self {
        Surd::from_rational(q)
    }

    fn sqrt_of_product(factors: &[u64]) -> Result<Self, FockError> {
        Ok(Surd::sqrt_of_product(factors))
    }
}

/// Vector on `span{0..=cutoff}` in a tagged basis, stored sparsely by occupation.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVec<T> {
    basis: Basis,
    cutoff: u64,
    amps: BTreeMap<u64, T>,
}

impl<T> FockVec<T> {
    pub fn new(basis: Basis, cutoff: u64) -> Self {
        FockVec {
            basis,
            cutoff,
            amps: BTreeMap::new(),
        }
    }

    /// Builds a vector from `(index, amplitude)` pairs; later duplicates replace earlier ones.
    pub fn from_amps(
        basis: Basis,
        cutoff: u64,
        amps: impl IntoIterator<Item = (u64, T)>,
    ) -> Result<Self, FockError> {
        let mut v = Self::new(basis, cutoff);
        for (n, x) in amps {
            v.check(n)?;
            v.amps.insert(n, x);
        }
        Ok(v)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn get(&self, n: u64) -> Option<&T> {
        self.amps.get(&n)
    }

    /// Stored amplitudes in ascending occupation.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &T)> {
        self.amps.iter().map(|(&n, x)| (n, x))
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    /// Largest stored occupation.
    pub fn max_index(&self) -> Option<u64> {
        self.amps.keys().next_back().copied()
    }

    pub fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.amps.keys().copied()
    }

    fn check(&self, n: u64) -> Result<(), FockError> {
        if n > self.cutoff {
            Err(FockError::CutoffOverflow {
                index: n,
                cutoff: self.cutoff,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_basis(&self, expected: Basis) -> Result<(), FockError> {
        if self.basis == expected {
            Ok(())
        } else {
            Err(FockError::BasisMismatch {
                expected,
                found: self.basis,
            })
        }
    }

    /// Re-tags the vector with a new cutoff, failing if support exceeds it.
    pub fn with_cutoff(mut self, cutoff: u64) -> Result<Self, FockError> {
        self.cutoff = cutoff;
        if let Some(n) = self.max_index() {
            self.check(n)?;
        }
        Ok(self)
    }
}

impl<T: Amplitude> FockVec<T> {
    /// The basis vector with index `n` (`|n⟩` or `e_n`).
    pub fn basis_vector(basis: Basis, n: u64, cutoff: u64) -> Result<Self, FockError> {
        Self::from_amps(basis, cutoff, [(n, T::one())])
    }

    /// `Σ_{n ∈ indices} (basis vector n)` with unit coefficients.
    pub fn unit_sum(
        basis: Basis,
        indices: impl IntoIterator<Item = u64>,
        cutoff: u64,
    ) -> Result<Self, FockError> {
        let mut v = Self::new(basis, cutoff);
        for n in indices {
            v.add_to(n, T::one())?;
        }
        Ok(v)
    }

    /// Adds `x` to the amplitude at `n`; zero results are dropped.
    pub fn add_to(&mut self, n: u64, x: T) -> Result<(), FockError> {
        self.check(n)?;
        if x.is_zero() {
            return Ok(());
        }
        match self.amps.entry(n) {
            Entry::Vacant(slot) => {
                slot.insert(x);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + x;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    slot.insert(sum);
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, FockError> {
        rhs.require_basis(self.basis)?;
        let mut out = Self::new(self.basis, self.cutoff.max(rhs.cutoff));
        for (n, x) in self.iter().chain(rhs.iter()) {
            out.add_to(n, x.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, FockError> {
        self.add(&rhs.scale(&-T::one()))
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::new(self.basis, self.cutoff);
        for (n, x) in self.iter() {
            out.add_to(n, c.clone() * x.clone())
                .expect("index already within cutoff");
        }
        out
    }

    /// Amplitude at `n`, zero when absent.
    pub fn amp(&self, n: u64) -> T {
        self.get(n).cloned().unwrap_or_else(T::zero)
    }

    /// Same basis and same nonzero amplitudes; cutoffs may differ.
    pub fn same_state(&self, rhs: &Self) -> bool {
        self.basis == rhs.basis && self.amps == rhs.amps
    }
}

impl<T: fmt::Display> fmt::Display for FockVec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.amps.is_empty() {
            return f.write_str("0");
        }
        for (i, (n, x)) in self.amps.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match self.basis {
                Basis::Number => write!(f, "({x})|{n}>")?,
                Basis::DividedPower => write!(f, "({x})e_{n}")?,
            }
        }
        Ok(())
    }
}
