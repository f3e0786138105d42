//! The absolute derivation `∂/∂p`.

use super::AppendixError;
use crate::arith::primes::{is_prime, split_prime_power};

/// `∂/∂p (p^ℓ m) = ℓ p^{ℓ−1} m` for `p ∤ m`, `ℓ ≥ 1`; zero when `p ∤ n`.
pub fn absolute_derivation(p: u64, n: u64) -> Result<u128, AppendixError> {
    if !is_prime(p) {
        return Err(AppendixError::NotPrime(p));
    }
    if n == 0 {
        return Err(AppendixError::InvalidParameter("the absolute derivation needs n >= 1".into()));
    }
    let (ell, _) = split_prime_power(p, n);
    if ell == 0 {
        return Ok(0);
    }
    // ℓ p^{ℓ−1} m = ℓ · n / p
    Ok(ell as u128 * (n / p) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(absolute_derivation(2, 12).unwrap(), 12);
        assert_eq!(absolute_derivation(3, 5).unwrap(), 0);
        assert_eq!(absolute_derivation(7, 7).unwrap(), 1);
        assert_eq!(absolute_derivation(4, 8), Err(AppendixError::NotPrime(4)));
    }
}
