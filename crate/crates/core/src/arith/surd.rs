//! Exact arithmetic in the field generated by square roots of integers.
//!
//! A [`Surd`] is a finite sum `Σ q_k √k` with rational `q_k` and squarefree
//! radicands `k`. Square roots of distinct squarefree integers are linearly
//! independent over ℚ, so the map representation is canonical and `==` is
//! exact equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::primes::factorize;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Surd {
    terms: BTreeMap<BigUint, BigRational>,
}

impl Surd {
    pub fn from_rational(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(BigUint::one(), q);
        }
        Surd { terms }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `√(f_1 · f_2 · … · f_k)`, with the square part pulled out exactly.
    pub fn sqrt_of_product(factors: &[u64]) -> Self {
        if factors.iter().any(|&f| f == 0) {
            return Surd::zero();
        }
        let mut exps: BTreeMap<u64, u32> = BTreeMap::new();
        for &f in factors {
            if f > 1 {
                for (p, e) in factorize(f) {
                    *exps.entry(p).or_insert(0) += e;
                }
            }
        }
        let mut outside = BigUint::one();
        let mut radicand = BigUint::one();
        for (p, e) in exps {
            outside *= BigUint::from(p).pow(e / 2);
            if e % 2 == 1 {
                radicand *= BigUint::from(p);
            }
        }
        let mut terms = BTreeMap::new();
        terms.insert(radicand, BigRational::from_integer(outside.into()));
        Surd { terms }
    }

    pub fn sqrt(n: u64) -> Self {
        Self::sqrt_of_product(&[n])
    }

    /// The rational value, if this surd has no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self
                .terms
                .get(&BigUint::one())
                .cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &BigRational)> {
        self.terms.iter()
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, q)| q.to_f64().unwrap_or(f64::NAN) * r.to_f64().unwrap_or(f64::NAN).sqrt())
            .sum()
    }

    fn accumulate(&mut self, radicand: BigUint, q: BigRational) {
        if q.is_zero() {
            return;
        }
        let slot = self.terms.entry(radicand.clone()).or_insert_with(BigRational::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.remove(&radicand);
        }
    }
}

impl Zero for Surd {
    fn zero() -> Self {
        Surd::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Surd {
    fn one() -> Self {
        Surd::from_integer(1)
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(mut self, rhs: Surd) -> Surd {
        for (r, q) in rhs.terms {
            self.accumulate(r, q);
        }
        self
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        self + (-rhs)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(mut self) -> Surd {
        for q in self.terms.values_mut() {
            *q = -q.clone();
        }
        self
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        let mut out = Surd::zero();
        for (r1, q1) in &self.terms {
            for (r2, q2) in &rhs.terms {
                // r1, r2 squarefree: r1·r2 = g²·(r1/g)(r2/g) with the cofactor squarefree.
                let g = r1.gcd(r2);
                let radicand = (r1 / &g) * (r2 / &g);
                let coeff = q1 * q2 * BigRational::from_integer(g.into());
                out.accumulate(radicand, coeff);
            }
        }
        out
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (r, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if r.is_one() {
                write!(f, "{q}")?;
            } else if q.is_one() {
                write!(f, "sqrt({r})")?;
            } else {
                write!(f, "{q}*sqrt({r})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn square_parts_are_extracted() {
        assert_eq!(Surd::sqrt(12), Surd::from_integer(2) * Surd::sqrt(3));
        assert_eq!(Surd::sqrt(16).as_rational(), Some(q(4, 1)));
        assert_eq!(Surd::sqrt_of_product(&[1, 2, 3]), Surd::sqrt(6));
        assert!(Surd::sqrt(0).is_zero());
    }

    #[test]
    fn products_of_roots_reduce() {
        assert_eq!(Surd::sqrt(6) * Surd::sqrt(10), Surd::from_integer(2) * Surd::sqrt(15));
        assert_eq!(Surd::sqrt(2) * Surd::sqrt(2), Surd::from_integer(2));
    }

    #[test]
    fn distinct_radicals_do_not_merge() {
        let x = Surd::sqrt(2) + Surd::sqrt(3);
        assert!(x.as_rational().is_none());
        assert!((x - Surd::sqrt(3) - Surd::sqrt(2)).is_zero());
    }

    #[test]
    fn float_value() {
        let x = Surd::from_rational(q(1, 2)) * Surd::sqrt(8);
        assert!((x.to_f64() - 2f64.sqrt()).abs() < 1e-15);
    }
}
