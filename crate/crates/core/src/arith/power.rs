//! Exact real powers `c · r^f` of positive integers with rational exponents.
//!
//! Canonical form: `r >= 2` is not a perfect power and `f ∈ (0, 1)`, or `r = 1`
//! and `f = 0`. For such `r`, `r^f` is irrational whenever `f ∉ ℤ`, so two
//! canonical values are equal iff their fields are equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::primes::perfect_power_root;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerValue {
    coeff: BigRational,
    radix: u64,
    frac: BigRational,
}

fn int_pow(base: u64, exp: &BigInt) -> BigRational {
    let b = BigRational::from_integer(base.into());
    let e = exp.to_i32().expect("exponent out of range");
    b.pow(e)
}

impl PowerValue {
    pub fn rational(q: BigRational) -> Self {
        PowerValue {
            coeff: q,
            radix: 1,
            frac: BigRational::zero(),
        }
    }

    /// `base^exponent` for `base >= 1`.
    pub fn power(base: u64, exponent: &BigRational) -> Self {
        assert!(base >= 1, "power of zero is not represented");
        if base == 1 {
            return Self::rational(BigRational::one());
        }
        let (root, k) = perfect_power_root(base);
        let e = exponent * BigRational::from_integer(k.into());
        Self::from_root(root, e)
    }

    fn from_root(root: u64, e: BigRational) -> Self {
        let whole = e.numer().div_floor(e.denom());
        let frac = &e - BigRational::from_integer(whole.clone());
        let coeff = int_pow(root, &whole);
        if frac.is_zero() {
            Self::rational(coeff)
        } else {
            PowerValue {
                coeff,
                radix: root,
                frac,
            }
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::rational(BigRational::zero());
        }
        PowerValue {
            coeff: &self.coeff * q,
            ..self.clone()
        }
    }

    /// Product of two powers; `None` when the radicals are incompatible.
    pub fn mul(&self, rhs: &Self) -> Option<Self> {
        if self.radix == 1 {
            return Some(rhs.scale(&self.coeff));
        }
        if rhs.radix == 1 {
            return Some(self.scale(&rhs.coeff));
        }
        if self.radix != rhs.radix {
            return None;
        }
        let joined = Self::from_root(self.radix, &self.frac + &rhs.frac);
        Some(joined.scale(&(&self.coeff * &rhs.coeff)))
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn to_f64(&self) -> f64 {
        let c = self.coeff.to_f64().unwrap_or(f64::NAN);
        if self.radix == 1 {
            c
        } else {
            c * (self.radix as f64).powf(self.frac.to_f64().unwrap_or(f64::NAN))
        }
    }
}

impl fmt::Display for PowerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radix == 1 {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*{}^({})", self.coeff, self.radix, self.frac)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn integer_exponents_are_rational() {
        assert_eq!(PowerValue::power(8, &q(-2, 1)), PowerValue::rational(q(1, 64)));
        assert_eq!(PowerValue::power(2, &q(-6, 1)), PowerValue::rational(q(1, 64)));
    }

    #[test]
    fn perfect_powers_share_a_radix() {
        // 4^(1/2) = 2, 8^(1/3) = 2, 4^(1/4) = 2^(1/2)
        assert_eq!(PowerValue::power(4, &q(1, 2)), PowerValue::rational(q(2, 1)));
        assert_eq!(PowerValue::power(8, &q(1, 3)), PowerValue::rational(q(2, 1)));
        assert_eq!(PowerValue::power(4, &q(1, 4)), PowerValue::power(2, &q(1, 2)));
        assert_ne!(PowerValue::power(2, &q(1, 2)), PowerValue::power(3, &q(1, 2)));
    }

    #[test]
    fn negative_fractional_exponents_normalize() {
        let v = PowerValue::power(2, &q(-1, 2));
        assert_eq!(v, PowerValue::power(2, &q(1, 2)).scale(&q(1, 2)));
        assert!((v.to_f64() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn multiplication_carries_whole_parts() {
        let r = PowerValue::power(2, &q(1, 2));
        assert_eq!(r.mul(&r), Some(PowerValue::rational(q(2, 1))));
        assert_eq!(r.mul(&PowerValue::power(3, &q(1, 2))), None);
    }
}
