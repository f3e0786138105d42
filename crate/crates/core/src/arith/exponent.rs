//! Exact complex exponents `s = σ + i t` with rational components.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent {
    re: BigRational,
    im: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid exponent literal {0:?} (expected e.g. `2`, `5/2`, `1.5`, `2+0.5i`)")]
pub struct ExponentParseError(pub String);

impl Exponent {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Exponent { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Exponent {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn real_integer(k: i64) -> Self {
        Self::real(BigRational::from_integer(k.into()))
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `Some(k)` when `s` is the real integer `k`.
    pub fn as_integer(&self) -> Option<i64> {
        if self.im.is_zero() && self.re.is_integer() {
            self.re.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn re_f64(&self) -> f64 {
        self.re.to_f64().unwrap_or(f64::NAN)
    }

    pub fn im_f64(&self) -> f64 {
        self.im.to_f64().unwrap_or(f64::NAN)
    }

    pub fn abs_f64(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Exponent {
            re: &self.re * k,
            im: &self.im * k,
        }
    }
}

fn parse_real(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exp10) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().ok()?;
    let digits = digits / BigInt::from(10);
    let shift = exp10 - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if shift >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, shift as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-shift) as usize))
    };
    if neg {
        q = -q;
    }
    Some(q)
}

impl FromStr for Exponent {
    type Err = ExponentParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || ExponentParseError(text.to_string());
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix('i') else {
            return parse_real(&t).map(Exponent::real).ok_or_else(err);
        };
        // Split "re±im" at the last sign that is not an exponent sign.
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(i) => (parse_real(&body[..i]).ok_or_else(err)?, &body[i..]),
            None => (BigRational::zero(), body),
        };
        let im = match im {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_real(other).ok_or_else(err)?,
        };
        Ok(Exponent { re, im })
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", self.re, sign, self.im.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_reals() {
        assert_eq!("2".parse::<Exponent>().unwrap(), Exponent::real_integer(2));
        assert_eq!("5/2".parse::<Exponent>().unwrap().re(), &q(5, 2));
        assert_eq!("1.25".parse::<Exponent>().unwrap().re(), &q(5, 4));
        assert_eq!("-0.5".parse::<Exponent>().unwrap().re(), &q(-1, 2));
        assert_eq!("1e3".parse::<Exponent>().unwrap().re(), &q(1000, 1));
        assert_eq!("2.5e-1".parse::<Exponent>().unwrap().re(), &q(1, 4));
    }

    #[test]
    fn parses_complex() {
        let s: Exponent = "2+0.5i".parse().unwrap();
        assert_eq!((s.re(), s.im()), (&q(2, 1), &q(1, 2)));
        let s: Exponent = "3-i".parse().unwrap();
        assert_eq!(s.im(), &q(-1, 1));
        let s: Exponent = "1e1-2e-1i".parse().unwrap();
        assert_eq!((s.re(), s.im()), (&q(10, 1), &q(-1, 5)));
        let s: Exponent = "4i".parse().unwrap();
        assert_eq!((s.re(), s.im()), (&q(0, 1), &q(4, 1)));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x", "1/0", "2+", "1.2.3", "--1"] {
            assert!(bad.parse::<Exponent>().is_err(), "{bad}");
        }
    }

    #[test]
    fn integer_detection() {
        assert_eq!(Exponent::real_integer(4).as_integer(), Some(4));
        assert_eq!("2+1i".parse::<Exponent>().unwrap().as_integer(), None);
        assert_eq!("3/2".parse::<Exponent>().unwrap().as_integer(), None);
    }

    #[test]
    fn display_round_trips() {
        for s in ["2", "5/2", "2+1/2i", "1-3i"] {
            let e: Exponent = s.parse().unwrap();
            assert_eq!(e.to_string().parse::<Exponent>().unwrap(), e);
        }
    }
}
