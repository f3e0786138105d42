//! Exact and high-precision number types shared by the operator modules.

pub mod exponent;
pub mod hp;
pub mod power;
pub mod primes;
pub mod surd;

pub use exponent::{Exponent, ExponentParseError};
pub use hp::{HpComplex, Precision, DEFAULT_PRECISION_BITS};
pub use power::PowerValue;
pub use surd::Surd;

use num_bigint::BigUint;
use num_traits::One;

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}
