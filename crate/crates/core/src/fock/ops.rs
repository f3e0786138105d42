//! Operator action, matrix elements and basis changes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{Amplitude, Basis, FockError, FockVec};
use crate::arith::factorial;
use crate::weyl::NormalForm;

fn ratio_of(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// `x · y`, skipping unit factors; exact products of huge integers otherwise
/// pay for a gcd against the unit denominator.
fn mul_amp<T: Amplitude>(x: T, y: T) -> T {
    if x.is_one() {
        y
    } else if y.is_one() {
        x
    } else {
        x * y
    }
}

/// Coefficient of `(a†)^j a^k` applied to the basis vector `n` (assumes `n ≥ k`).
fn monomial_coeff<T: Amplitude>(basis: Basis, j: u32, k: u32, n: u64) -> Result<T, FockError> {
    let (j, k) = (j as u64, k as u64);
    let low = n - k;
    match basis {
        // a|n⟩ = √n|n−1⟩, a†|n⟩ = √(n+1)|n+1⟩
        Basis::Number => {
            let factors: Vec<u64> = (low + 1..=n).chain(low + 1..=low + j).collect();
            T::sqrt_of_product(&factors)
        }
        // a e_n = e_{n−1}, a† e_n = (n+1) e_{n+1}
        Basis::DividedPower => {
            let rising: BigInt = (low + 1..=low + j).map(BigInt::from).product();
            Ok(T::from_ratio(ratio_of(rising)))
        }
    }
}

/// Applies a normal-ordered operator to a vector in either basis.
///
/// Any component that would land above the cutoff is an error.
pub fn apply<T: Amplitude>(nf: &NormalForm, v: &FockVec<T>) -> Result<FockVec<T>, FockError> {
    let mut out = FockVec::new(v.basis(), v.cutoff());
    for (j, k, c) in nf.terms() {
        let c = T::from_ratio(c.clone());
        for (n, x) in v.iter() {
            if n < k as u64 {
                continue;
            }
            let target = n - k as u64 + j as u64;
            let coeff = monomial_coeff::<T>(v.basis(), j, k, n)?;
            out.add_to(target, mul_amp(mul_amp(c.clone(), coeff), x.clone()))?;
        }
    }
    Ok(out)
}

/// Applies an operator to a dual vector from the right (`bra ↦ bra ∘ nf`).
///
/// Components are on `⟨ℓ|` for number vectors and on `f_ℓ = ⟨0|a^ℓ` for
/// divided-power vectors; `⟨ℓ| (a†)^j a^k` lands on index `ℓ − j + k`.
pub fn apply_bra<T: Amplitude>(nf: &NormalForm, bra: &FockVec<T>) -> Result<FockVec<T>, FockError> {
    let mut out = FockVec::new(bra.basis(), bra.cutoff());
    for (j, k, c) in nf.terms() {
        let c = T::from_ratio(c.clone());
        for (l, x) in bra.iter() {
            if l < j as u64 {
                continue;
            }
            let n = l - j as u64 + k as u64;
            // The coefficient is the matrix element ⟨ℓ| (a†)^j a^k |n⟩.
            let coeff = monomial_coeff::<T>(bra.basis(), j, k, n)?;
            out.add_to(n, mul_amp(mul_amp(c.clone(), coeff), x.clone()))?;
        }
    }
    Ok(out)
}

/// `⟨m| nf |n⟩` in the number basis.
pub fn matrix_element<T: Amplitude>(
    m: u64,
    nf: &NormalForm,
    n: u64,
    cutoff: u64,
) -> Result<T, FockError> {
    let ket = FockVec::<T>::basis_vector(Basis::Number, n, cutoff)?;
    if m > cutoff {
        return Err(FockError::CutoffOverflow { index: m, cutoff });
    }
    Ok(apply(nf, &ket)?.amp(m))
}

/// `a_p† = (a†)^p`.
pub fn pon_create<T: Amplitude>(p: u32, v: &FockVec<T>) -> Result<FockVec<T>, FockError> {
    apply(&NormalForm::monomial(p, 0, BigRational::one()), v)
}

/// `1/√(n!)` in `T`, written as `√(n!)/n!`.
fn inv_sqrt_factorial<T: Amplitude>(n: u64) -> Result<T, FockError> {
    let root = T::sqrt_of_product(&(1..=n).collect::<Vec<_>>())?;
    Ok(root * T::from_ratio(BigRational::new(1.into(), factorial(n).into())))
}

/// Rewrites a vector in the target basis using `e_n = (1/√n!)|n⟩`.
pub fn basis_convert<T: Amplitude>(v: &FockVec<T>, target: Basis) -> Result<FockVec<T>, FockError> {
    if v.basis() == target {
        return Ok(v.clone());
    }
    let mut out = FockVec::new(target, v.cutoff());
    for (n, x) in v.iter() {
        let factor = match target {
            // amplitude of |n⟩ = amplitude of e_n / √n!
            Basis::Number => inv_sqrt_factorial::<T>(n)?,
            // amplitude of e_n = amplitude of |n⟩ · √n!
            Basis::DividedPower => T::sqrt_of_product(&(1..=n).collect::<Vec<_>>())?,
        };
        out.add_to(n, x.clone() * factor)?;
    }
    Ok(out)
}

/// Coefficients in the monomial basis `u_n = (a†)^n|0⟩ ↔ x^n`.
pub fn to_monomial<T: Amplitude>(v: &FockVec<T>) -> Result<BTreeMap<u64, T>, FockError> {
    let e = basis_convert(v, Basis::DividedPower)?;
    Ok(e
        .iter()
        .map(|(n, x)| {
            let inv = BigRational::new(1.into(), factorial(n).into());
            (n, x.clone() * T::from_ratio(inv))
        })
        .collect())
}

/// Inverse of [`to_monomial`], producing a divided-power vector.
pub fn from_monomial<T: Amplitude>(
    coeffs: &BTreeMap<u64, T>,
    cutoff: u64,
) -> Result<FockVec<T>, FockError> {
    let mut out = FockVec::new(Basis::DividedPower, cutoff);
    for (&n, x) in coeffs {
        out.add_to(n, x.clone() * T::from_ratio(ratio_of(factorial(n).into())))?;
    }
    Ok(out)
}

/// `Σ_n bra_n · ket_n`: the bra is given by its components on the dual basis
/// (`⟨n|` for number vectors, `f_n = ⟨0|a^n` for divided-power vectors,
/// which satisfies `f_ℓ(e_n) = δ_{ℓn}`).
pub fn pair<T: Amplitude>(bra: &FockVec<T>, ket: &FockVec<T>) -> Result<T, FockError> {
    ket.require_basis(bra.basis())?;
    let mut acc: Option<T> = None;
    for (n, x) in bra.iter() {
        if let Some(y) = ket.get(n) {
            let term = mul_amp(x.clone(), y.clone());
            acc = Some(match acc {
                Some(a) => a + term,
                None => term,
            });
        }
    }
    Ok(acc.unwrap_or_else(T::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Surd;
    use crate::weyl::{normal_order, parse};

    fn nf(text: &str) -> NormalForm {
        normal_order(&parse(text).unwrap())
    }

    fn ket(n: u64) -> FockVec<Surd> {
        FockVec::basis_vector(Basis::Number, n, 16).unwrap()
    }

    #[test]
    fn ladder_actions() {
        assert_eq!(apply(&nf("ad"), &ket(0)).unwrap(), ket(1));
        let v = apply(&nf("ad^3"), &ket(0)).unwrap();
        assert_eq!(v.amp(3), Surd::sqrt(6));
        assert!(apply(&nf("a"), &ket(0)).unwrap().is_empty());
    }

    #[test]
    fn matrix_elements() {
        let one = BigRational::one();
        assert_eq!(matrix_element::<BigRational>(3, &NormalForm::one(), 3, 8).unwrap(), one);
        assert_eq!(matrix_element::<BigRational>(3, &NormalForm::one(), 2, 8).unwrap(), BigRational::from_integer(0.into()));
        assert_eq!(matrix_element::<BigRational>(0, &nf("a^4*ad^4"), 0, 8).unwrap(), BigRational::from_integer(24.into()));
        assert_eq!(matrix_element::<BigRational>(2, &nf("n"), 2, 8).unwrap(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn overflow_is_reported() {
        let v = FockVec::<Surd>::basis_vector(Basis::Number, 3, 3).unwrap();
        assert_eq!(
            apply(&nf("ad"), &v).unwrap_err(),
            FockError::CutoffOverflow { index: 4, cutoff: 3 }
        );
    }

    #[test]
    fn pon_creation() {
        assert_eq!(pon_create(2, &ket(1)).unwrap().amp(3), Surd::sqrt(6));
        assert_eq!(pon_create(1, &ket(0)).unwrap(), ket(1));
        assert_eq!(pon_create(3, &ket(0)).unwrap().amp(3), Surd::sqrt(6));
    }

    #[test]
    fn conversions() {
        let e2 = FockVec::<Surd>::basis_vector(Basis::DividedPower, 2, 8).unwrap();
        let v = basis_convert(&e2, Basis::Number).unwrap();
        assert_eq!(v.amp(2), Surd::sqrt(2) * Surd::from_rational(BigRational::new(1.into(), 2.into())));
        assert_eq!(basis_convert(&v, Basis::DividedPower).unwrap(), e2);
        let rational_e3 = FockVec::<BigRational>::basis_vector(Basis::DividedPower, 3, 8).unwrap();
        assert!(matches!(
            basis_convert(&rational_e3, Basis::Number),
            Err(FockError::NotRepresentable(_))
        ));
    }

    #[test]
    fn bra_action_is_transpose() {
        let x = nf("ad^2*a + 3*a^2*ad");
        for l in 0..6 {
            for n in 0..6 {
                let bra = FockVec::<Surd>::basis_vector(Basis::Number, l, 12).unwrap();
                let ket = FockVec::<Surd>::basis_vector(Basis::Number, n, 12).unwrap();
                let left = pair(&apply_bra(&x, &bra).unwrap(), &ket).unwrap();
                let right = pair(&bra, &apply(&x, &ket).unwrap()).unwrap();
                assert_eq!(left, right, "l = {l}, n = {n}");
            }
        }
        // ⟨0|a shifts f_0 to f_1 in the divided-power dual basis.
        let f0 = FockVec::<BigRational>::basis_vector(Basis::DividedPower, 0, 4).unwrap();
        let f1 = apply_bra(&nf("a"), &f0).unwrap();
        assert_eq!(f1, FockVec::basis_vector(Basis::DividedPower, 1, 4).unwrap());
    }

    #[test]
    fn rational_divided_power_ladder() {
        let e1 = FockVec::<BigRational>::basis_vector(Basis::DividedPower, 1, 8).unwrap();
        // (a†)^2 e_1 = 2·3 e_3
        let v = apply(&nf("ad^2"), &e1).unwrap();
        assert_eq!(v.amp(3), BigRational::from_integer(6.into()));
        let back = apply(&nf("a^2"), &v).unwrap();
        assert_eq!(back.amp(1), BigRational::from_integer(6.into()));
    }
}
