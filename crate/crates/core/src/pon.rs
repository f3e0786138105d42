//! Quantum p-on endomorphisms `A_m†`, `A_m` as index maps on the
//! divided-power basis: `A_m† e_n = e_{mn}`, `A_m e_n = e_{n/m}` if `m | n`, else 0.
//!
//! On dual vectors (components on `f_ℓ = ⟨0|a^ℓ`, with `f_ℓ(e_n) = δ_{ℓn}`)
//! the maps act by transposition: `f_ℓ ∘ A_m = f_{ℓm}` and
//! `f_ℓ ∘ A_m† = f_{ℓ/m}` if `m | ℓ`, else 0.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::primes::{factorize, primes_up_to};
use crate::fock::{Amplitude, Basis, FockError, FockVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `A_m†`
    Create,
    /// `A_m`
    Annihilate,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PonError {
    #[error("p-on index must be at least 1")]
    ZeroIndex,
    #[error("cannot compose creation and annihilation p-ons")]
    MixedFlavor,
    #[error("prime bound {prime_bound} is smaller than the cutoff {cutoff}")]
    PrimeBoundTooSmall { prime_bound: u64, cutoff: u64 },
    #[error("geometric p-on series diverge on the vacuum component e_0")]
    VacuumSupport,
    #[error("index product overflows u64")]
    IndexOverflow,
    #[error(transparent)]
    Fock(#[from] FockError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PonOp {
    flavor: Flavor,
    index: u64,
}

impl PonOp {
    pub fn new(flavor: Flavor, index: u64) -> Result<Self, PonError> {
        if index == 0 {
            return Err(PonError::ZeroIndex);
        }
        Ok(PonOp { flavor, index })
    }

    pub fn create(index: u64) -> Result<Self, PonError> {
        Self::new(Flavor::Create, index)
    }

    pub fn annihilate(index: u64) -> Result<Self, PonError> {
        Self::new(Flavor::Annihilate, index)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn index(&self) -> u64 {
        self.index
    }
}

impl fmt::Display for PonOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.flavor {
            Flavor::Create => write!(f, "A_{}†", self.index),
            Flavor::Annihilate => write!(f, "A_{}", self.index),
        }
    }
}

/// A word in one flavor of p-ons, reduced to its prime-exponent multiset.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PonProduct {
    exponents: BTreeMap<u64, u32>,
}

impl PonProduct {
    pub fn identity() -> Self {
        PonProduct::default()
    }

    /// Multiplies in `A_m` by adding the exponents of `m`'s factorization.
    pub fn push(&mut self, m: u64) {
        for (p, e) in factorize(m) {
            *self.exponents.entry(p).or_insert(0) += e;
        }
    }

    pub fn exponents(&self) -> &BTreeMap<u64, u32> {
        &self.exponents
    }

    /// `M = ∏ p^e`.
    pub fn index(&self) -> Result<u64, PonError> {
        self.exponents.iter().try_fold(1u64, |acc, (&p, &e)| {
            p.checked_pow(e)
                .and_then(|pe| acc.checked_mul(pe))
                .ok_or(PonError::IndexOverflow)
        })
    }
}

/// Reduces a same-flavor word to a single p-on; the empty word is `A_1`.
pub fn compose_pons(flavor: Flavor, ops: &[PonOp]) -> Result<PonOp, PonError> {
    let mut word = PonProduct::identity();
    for op in ops {
        if op.flavor != flavor {
            return Err(PonError::MixedFlavor);
        }
        word.push(op.index);
    }
    PonOp::new(flavor, word.index()?)
}

/// `n ↦ mn` (`None` when past the cutoff) or `n ↦ n/m` (`None` when `m ∤ n`).
fn raise(m: u64, n: u64) -> Option<u64> {
    m.checked_mul(n)
}

fn lower(m: u64, n: u64) -> Option<u64> {
    (n % m == 0).then(|| n / m)
}

fn index_map<T: Amplitude>(
    v: &FockVec<T>,
    map: impl Fn(u64) -> Option<u64>,
    overflow_is_error: bool,
) -> Result<FockVec<T>, PonError> {
    v.require_basis(Basis::DividedPower)?;
    let mut out = FockVec::new(Basis::DividedPower, v.cutoff());
    for (n, x) in v.iter() {
        match map(n) {
            Some(target) if target <= v.cutoff() => out.add_to(target, x.clone())?,
            Some(target) if overflow_is_error => {
                return Err(FockError::CutoffOverflow {
                    index: target,
                    cutoff: v.cutoff(),
                }
                .into())
            }
            None if overflow_is_error => {
                return Err(FockError::CutoffOverflow {
                    index: u64::MAX,
                    cutoff: v.cutoff(),
                }
                .into())
            }
            _ => {}
        }
    }
    Ok(out)
}

/// Applies a p-on to a divided-power ket.
pub fn apply_pon<T: Amplitude>(op: &PonOp, v: &FockVec<T>) -> Result<FockVec<T>, PonError> {
    let m = op.index;
    match op.flavor {
        Flavor::Create => index_map(v, |n| raise(m, n), true),
        Flavor::Annihilate => index_map(v, |n| lower(m, n), false),
    }
}

/// Applies a p-on to a dual vector from the right (`bra ↦ bra ∘ op`).
pub fn apply_pon_bra<T: Amplitude>(op: &PonOp, bra: &FockVec<T>) -> Result<FockVec<T>, PonError> {
    let m = op.index;
    match op.flavor {
        Flavor::Annihilate => index_map(bra, |l| raise(m, l), true),
        Flavor::Create => index_map(bra, |l| lower(m, l), false),
    }
}

fn check_bounds<T>(prime_bound: u64, v: &FockVec<T>, cutoff: u64) -> Result<(), PonError> {
    if prime_bound < cutoff {
        return Err(PonError::PrimeBoundTooSmall { prime_bound, cutoff });
    }
    if v.get(0).is_some() {
        return Err(PonError::VacuumSupport);
    }
    Ok(())
}

/// `∏_{p ∈ primes} (1 + A_p† + A_{p²}† + …)` on a divided-power ket, keeping
/// only terms whose index stays within `cutoff`.
pub fn geometric_series<T: Amplitude>(
    primes: &[u64],
    v: &FockVec<T>,
    cutoff: u64,
) -> Result<FockVec<T>, PonError> {
    v.require_basis(Basis::DividedPower)?;
    if v.get(0).is_some() {
        return Err(PonError::VacuumSupport);
    }
    let mut acc = v.clone().with_cutoff(cutoff)?;
    for &p in primes {
        let mut next = FockVec::new(Basis::DividedPower, cutoff);
        for (n, x) in acc.iter() {
            let mut target = n;
            while target <= cutoff {
                next.add_to(target, x.clone())?;
                match target.checked_mul(p) {
                    Some(t) => target = t,
                    None => break,
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// The geometric p-on product over all primes `p ≤ prime_bound`, truncated at `cutoff`.
/// On `e_1` this gives `Σ_{n=1..N} e_n` by unique factorization.
pub fn geometric_create<T: Amplitude>(
    prime_bound: u64,
    v: &FockVec<T>,
    cutoff: u64,
) -> Result<FockVec<T>, PonError> {
    check_bounds(prime_bound, v, cutoff)?;
    geometric_series(&primes_up_to(prime_bound), v, cutoff)
}

/// Dual of [`geometric_create`]: `bra ∘ ∏_p (1 + A_p + A_{p²} + …)`.
/// On `f_1` this gives `Σ_{ℓ=1..N} f_ℓ`.
pub fn geometric_annihilate_bra<T: Amplitude>(
    prime_bound: u64,
    bra: &FockVec<T>,
    cutoff: u64,
) -> Result<FockVec<T>, PonError> {
    check_bounds(prime_bound, bra, cutoff)?;
    // f_ℓ ∘ A_m = f_{ℓm}: the same index map as A_m† on kets.
    geometric_series(&primes_up_to(prime_bound), bra, cutoff)
}

/// `∏_{p ≤ prime_bound} (1 − A_p†)` on a divided-power ket, truncated at `cutoff`.
pub fn geometric_annihilate_inverse<T: Amplitude>(
    prime_bound: u64,
    v: &FockVec<T>,
    cutoff: u64,
) -> Result<FockVec<T>, PonError> {
    if prime_bound < cutoff {
        return Err(PonError::PrimeBoundTooSmall { prime_bound, cutoff });
    }
    v.require_basis(Basis::DividedPower)?;
    let mut acc = v.clone().with_cutoff(cutoff)?;
    for p in primes_up_to(prime_bound) {
        let mut next = acc.clone();
        for (n, x) in acc.iter() {
            if let Some(t) = n.checked_mul(p).filter(|&t| t <= cutoff) {
                next.add_to(t, -x.clone())?;
            }
        }
        acc = next;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    type V = FockVec<BigRational>;

    fn e(n: u64, cutoff: u64) -> V {
        V::basis_vector(Basis::DividedPower, n, cutoff).unwrap()
    }

    #[test]
    fn index_maps() {
        let a2d = PonOp::create(2).unwrap();
        let a2 = PonOp::annihilate(2).unwrap();
        assert_eq!(apply_pon(&a2d, &e(3, 10)).unwrap(), e(6, 10));
        assert_eq!(apply_pon(&a2, &e(6, 10)).unwrap(), e(3, 10));
        assert!(apply_pon(&a2, &e(3, 10)).unwrap().is_empty());
        let v = e(3, 10).add(&e(7, 10)).unwrap();
        assert_eq!(apply_pon(&PonOp::create(1).unwrap(), &v).unwrap(), v);
        assert!(matches!(
            apply_pon(&PonOp::create(3).unwrap(), &e(4, 10)),
            Err(PonError::Fock(FockError::CutoffOverflow { index: 12, cutoff: 10 }))
        ));
    }

    #[test]
    fn bra_transpose() {
        let a3 = PonOp::annihilate(3).unwrap();
        assert_eq!(apply_pon_bra(&a3, &e(2, 10)).unwrap(), e(6, 10));
        let a3d = PonOp::create(3).unwrap();
        assert_eq!(apply_pon_bra(&a3d, &e(6, 10)).unwrap(), e(2, 10));
    }

    #[test]
    fn composition() {
        let c = |m| PonOp::create(m).unwrap();
        assert_eq!(compose_pons(Flavor::Create, &[c(2), c(3)]).unwrap(), c(6));
        assert_eq!(compose_pons(Flavor::Create, &[c(2), c(2)]).unwrap(), c(4));
        assert_eq!(
            compose_pons(Flavor::Annihilate, &[]).unwrap(),
            PonOp::annihilate(1).unwrap()
        );
        assert_eq!(
            compose_pons(Flavor::Create, &[c(2), PonOp::annihilate(2).unwrap()]),
            Err(PonError::MixedFlavor)
        );
        assert_eq!(PonOp::create(0), Err(PonError::ZeroIndex));
    }

    #[test]
    fn geometric_pair() {
        let sum = geometric_create(6, &e(1, 6), 6).unwrap();
        assert_eq!(sum, V::unit_sum(Basis::DividedPower, 1..=6, 6).unwrap());
        assert_eq!(geometric_create(1, &e(1, 1), 1).unwrap(), e(1, 1));
        assert_eq!(geometric_annihilate_inverse(6, &sum, 6).unwrap(), e(1, 6));
        assert_eq!(
            geometric_create(5, &e(1, 6), 6),
            Err(PonError::PrimeBoundTooSmall { prime_bound: 5, cutoff: 6 })
        );
        assert_eq!(geometric_create(6, &e(0, 6), 6), Err(PonError::VacuumSupport));
        let v = e(1, 1).scale(&BigRational::one());
        assert_eq!(geometric_annihilate_inverse(1, &v, 1).unwrap(), v);
    }
}
