//! Quadratic Gauss sums.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::AppendixError;
use crate::arith::primes::is_prime;

/// The sum computed over squares and over the Legendre symbol.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussSum {
    /// `Σ_{n=0}^{p−1} e^{2πi n²/p}`
    pub direct: Complex64,
    /// `Σ_{n=1}^{p−1} (n/p) e^{2πi n/p}`
    pub legendre: Complex64,
}

impl GaussSum {
    pub fn value(&self) -> Complex64 {
        self.direct
    }

    /// `|direct − legendre|`
    pub fn discrepancy(&self) -> f64 {
        (self.direct - self.legendre).norm()
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = (base % m) as u128;
    let m128 = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol `(n/p)` by Euler's criterion.
pub fn legendre(n: u64, p: u64) -> i8 {
    match pow_mod(n, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

fn phase(k: u64, p: u64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / p as f64)
}

pub fn gauss_sum(p: u64) -> Result<GaussSum, AppendixError> {
    if p == 2 || !is_prime(p) {
        return Err(AppendixError::NotOddPrime(p));
    }
    let mut direct = Complex64::new(0.0, 0.0);
    for n in 0..p {
        direct += phase(n * n % p, p);
    }
    let mut weighted = Complex64::new(0.0, 0.0);
    for n in 1..p {
        weighted += phase(n, p) * legendre(n, p) as f64;
    }
    Ok(GaussSum {
        direct,
        legendre: weighted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let g5 = gauss_sum(5).unwrap();
        assert!((g5.value() - Complex64::new(5f64.sqrt(), 0.0)).norm() < 1e-12);
        let g3 = gauss_sum(3).unwrap();
        assert!((g3.value() - Complex64::new(0.0, 3f64.sqrt())).norm() < 1e-12);
        assert!(g3.discrepancy() < 1e-12);
        assert_eq!(gauss_sum(9), Err(AppendixError::NotOddPrime(9)));
        assert_eq!(gauss_sum(2), Err(AppendixError::NotOddPrime(2)));
    }

    #[test]
    fn legendre_symbols() {
        let squares: Vec<u64> = (1..11).map(|n| n * n % 11).collect();
        for n in 1..11 {
            let expected = if squares.contains(&n) { 1 } else { -1 };
            assert_eq!(legendre(n, 11), expected);
        }
        assert_eq!(legendre(22, 11), 0);
    }
}
