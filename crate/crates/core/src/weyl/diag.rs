//! Polynomials in the number operator.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::normal::NormalForm;

/// The normal form has a monomial `(a†)^j a^k` with `j ≠ k`.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("operator is not diagonal: contains (a†)^{j} a^{k}")]
pub struct NotDiagonal {
    pub j: u32,
    pub k: u32,
}

/// `q(n̂) = Σ coeffs[d] n̂^d`, exact, with no trailing zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiagonalPoly {
    coeffs: Vec<BigRational>,
}

impl DiagonalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        DiagonalPoly { coeffs }
    }

    pub fn zero() -> Self {
        DiagonalPoly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `n̂ + c`
    pub fn shifted_n(c: i64) -> Self {
        Self::new(vec![BigRational::from_integer(c.into()), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        Self::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in rhs.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * q).collect())
    }

    /// `∏_{i ∈ shifts} (n̂ + i)`
    pub fn product_of_shifts(shifts: impl IntoIterator<Item = i64>) -> Self {
        shifts
            .into_iter()
            .fold(Self::constant(BigRational::one()), |acc, i| acc.mul(&Self::shifted_n(i)))
    }

    /// Falling factorial `n̂(n̂−1)…(n̂−k+1)`, the diagonal value of `(a†)^k a^k`.
    pub fn falling(k: u32) -> Self {
        Self::product_of_shifts((0..k as i64).map(|i| -i))
    }

    pub fn eval(&self, n: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * n + c)
    }

    pub fn eval_at(&self, n: u64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(n)))
    }
}

/// Converts a balanced normal form to its polynomial in `n̂`.
pub fn diagonal_poly(nf: &NormalForm) -> Result<DiagonalPoly, NotDiagonal> {
    let mut out = DiagonalPoly::zero();
    for (j, k, c) in nf.terms() {
        if j != k {
            return Err(NotDiagonal { j, k });
        }
        out = out.add(&DiagonalPoly::falling(k).scale(c));
    }
    Ok(out)
}

/// Compact form such as `4n+2` or `n^2-3/2n`.
impl fmt::Display for DiagonalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let mag = c.abs();
            if d == 0 || !mag.is_one() {
                if mag.denom().is_one() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
            }
            match d {
                0 => {}
                1 => f.write_str("n")?,
                _ => write!(f, "n^{d}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::normal::normal_order;
    use crate::weyl::parse::parse;

    fn diag(text: &str) -> Result<DiagonalPoly, NotDiagonal> {
        diagonal_poly(&normal_order(&parse(text).unwrap()))
    }

    #[test]
    fn second_order_products() {
        assert_eq!(diag("a^2*ad^2").unwrap(), DiagonalPoly::product_of_shifts([1, 2]));
        assert_eq!(diag("ad^2*a^2").unwrap(), DiagonalPoly::product_of_shifts([0, -1]));
        assert_eq!(diag("ad*a").unwrap().to_string(), "n");
    }

    #[test]
    fn rendering() {
        assert_eq!(diag("[a^2, ad^2]").unwrap().to_string(), "4n+2");
        assert_eq!(diag("[a^3, ad^3]").unwrap().to_string(), "9n^2+9n+6");
        assert_eq!(diag("1/2 - n^2").unwrap().to_string(), "-n^2+1/2");
        assert_eq!(diag("0").unwrap().to_string(), "0");
    }

    #[test]
    fn unbalanced_is_rejected() {
        assert_eq!(diag("ad").unwrap_err(), NotDiagonal { j: 1, k: 0 });
    }

    #[test]
    fn evaluation() {
        let p = DiagonalPoly::falling(3);
        assert_eq!(p.eval_at(5), BigRational::from_integer(60.into()));
        assert_eq!(p.eval_at(2), BigRational::zero());
    }
}
