//! High-precision complex floating point on top of `astro-float`.
//!
//! Every value carries its working precision; binary operations run at the
//! larger of the two operand precisions with round-half-to-even. Summation
//! order is the caller's responsibility (ascending index everywhere in this
//! crate), which keeps results bit-reproducible for a given precision.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::exponent::Exponent;

pub const DEFAULT_PRECISION_BITS: usize = 128;
const MIN_PRECISION_BITS: usize = 24;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Working precision in mantissa bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(usize);

impl Precision {
    pub fn new(bits: usize) -> Option<Self> {
        (bits >= MIN_PRECISION_BITS).then_some(Precision(bits))
    }

    pub fn bits(self) -> usize {
        self.0
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(DEFAULT_PRECISION_BITS)
    }
}

fn big_int_to_float(n: &BigInt, p: usize) -> BigFloat {
    match n.to_i64() {
        Some(small) => BigFloat::from_i64(small, p),
        None => with_consts(|cc| BigFloat::parse(&n.to_string(), Radix::Dec, p, RM, cc)),
    }
}

pub(crate) fn rational_to_float(q: &BigRational, p: usize) -> BigFloat {
    let num = big_int_to_float(q.numer(), p);
    if q.denom() == &BigInt::from(1) {
        return num;
    }
    let den = big_int_to_float(q.denom(), p);
    num.div(&den, p, RM)
}

fn float_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    with_consts(|cc| x.format(Radix::Dec, RM, cc))
        .ok()
        .and_then(|s| s.parse::<f64>().ok())
        .unwrap_or(f64::NAN)
}

fn float_to_string(x: &BigFloat) -> String {
    with_consts(|cc| x.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into())
}

#[derive(Clone)]
pub struct HpComplex {
    re: BigFloat,
    im: BigFloat,
    prec: Precision,
}

impl HpComplex {
    pub fn zero(prec: Precision) -> Self {
        HpComplex {
            re: BigFloat::from_u64(0, prec.0),
            im: BigFloat::from_u64(0, prec.0),
            prec,
        }
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_rational(&BigRational::from_integer(1.into()), prec)
    }

    pub fn from_rational(q: &BigRational, prec: Precision) -> Self {
        HpComplex {
            re: rational_to_float(q, prec.0),
            im: BigFloat::from_u64(0, prec.0),
            prec,
        }
    }

    pub fn from_exponent(s: &Exponent, prec: Precision) -> Self {
        HpComplex {
            re: rational_to_float(s.re(), prec.0),
            im: rational_to_float(s.im(), prec.0),
            prec,
        }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.max(rhs.prec);
        HpComplex {
            re: self.re.add(&rhs.re, prec.0, RM),
            im: self.im.add(&rhs.im, prec.0, RM),
            prec,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let prec = self.prec.max(rhs.prec);
        HpComplex {
            re: self.re.sub(&rhs.re, prec.0, RM),
            im: self.im.sub(&rhs.im, prec.0, RM),
            prec,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.prec.max(rhs.prec);
        if self.im.is_zero() && rhs.im.is_zero() {
            return HpComplex {
                re: self.re.mul(&rhs.re, p.0, RM),
                im: BigFloat::from_u64(0, p.0),
                prec: p,
            };
        }
        let rr = self.re.mul(&rhs.re, p.0, RM);
        let ii = self.im.mul(&rhs.im, p.0, RM);
        let ri = self.re.mul(&rhs.im, p.0, RM);
        let ir = self.im.mul(&rhs.re, p.0, RM);
        HpComplex {
            re: rr.sub(&ii, p.0, RM),
            im: ri.add(&ir, p.0, RM),
            prec: p,
        }
    }

    /// `1 / self`; the reciprocal of zero is an infinity.
    pub fn recip(&self) -> Self {
        let p = self.prec.0;
        if self.im.is_zero() {
            return HpComplex {
                re: self.re.reciprocal(p, RM),
                im: BigFloat::from_u64(0, p),
                prec: self.prec,
            };
        }
        let norm = self
            .re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM);
        HpComplex {
            re: self.re.div(&norm, p, RM),
            im: self.im.div(&norm, p, RM).neg(),
            prec: self.prec,
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        self.mul(&HpComplex::from_rational(q, self.prec))
    }

    /// `n^{-s}` for a positive integer `n`.
    ///
    /// Integer real exponents go through exact integer powers and a single
    /// reciprocal; everything else through `exp(-s ln n)`.
    pub fn int_pow_neg(n: u64, s: &Exponent, prec: Precision) -> Self {
        assert!(n >= 1, "n^(-s) needs n >= 1");
        let p = prec.0;
        if let Some(k) = s.as_integer() {
            let base = BigFloat::from_u64(n, p);
            let mag = base.powi(k.unsigned_abs() as usize, p, RM);
            let re = if k >= 0 { mag.reciprocal(p, RM) } else { mag };
            return HpComplex {
                re,
                im: BigFloat::from_u64(0, p),
                prec,
            };
        }
        let guard = p + 32;
        let sigma = rational_to_float(s.re(), guard);
        let t = rational_to_float(s.im(), guard);
        with_consts(|cc| {
            let ln_n = BigFloat::from_u64(n, guard).ln(guard, RM, cc);
            let mag = sigma.mul(&ln_n, guard, RM).neg().exp(guard, RM, cc);
            if s.im().is_zero() {
                let mut re = mag;
                let _ = re.set_precision(p, RM);
                return HpComplex {
                    re,
                    im: BigFloat::from_u64(0, p),
                    prec,
                };
            }
            let theta = t.mul(&ln_n, guard, RM).neg();
            let mut re = mag.mul(&theta.cos(guard, RM, cc), guard, RM);
            let mut im = mag.mul(&theta.sin(guard, RM, cc), guard, RM);
            let _ = re.set_precision(p, RM);
            let _ = im.set_precision(p, RM);
            HpComplex { re, im, prec }
        })
    }

    pub fn re_f64(&self) -> f64 {
        float_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        float_to_f64(&self.im)
    }

    /// Full-precision decimal rendering of the real part.
    pub fn re_string(&self) -> String {
        float_to_string(&self.re)
    }

    pub fn im_string(&self) -> String {
        float_to_string(&self.im)
    }

    /// `|self|` rounded to `f64`; the components are formed at full precision first.
    pub fn abs_f64(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }

    /// Distance `|self - other|` computed at full precision then rounded.
    pub fn dist_f64(&self, other: &Self) -> f64 {
        self.sub(other).abs_f64()
    }

    /// Ordering of real parts.
    pub fn cmp_re(&self, other: &Self) -> Option<Ordering> {
        self.re.cmp(&other.re).map(|c| c.cmp(&0))
    }

    /// Bitwise equality of both components (not a numerical tolerance).
    pub fn bits_eq(&self, other: &Self) -> bool {
        self.re.cmp(&other.re) == Some(0) && self.im.cmp(&other.im) == Some(0)
    }
}

impl fmt::Debug for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HpComplex({} + {}i @{})", self.re_string(), self.im_string(), self.prec.0)
    }
}

impl fmt::Display for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re_string())
        } else {
            write!(f, "{} + {}i", self.re_string(), self.im_string())
        }
    }
}

/// π at the requested precision.
pub fn pi(prec: Precision) -> HpComplex {
    HpComplex {
        re: with_consts(|cc| cc.pi(prec.0, RM)),
        im: BigFloat::from_u64(0, prec.0),
        prec,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let p = Precision::default();
        let x = HpComplex::from_rational(&BigRational::new(1.into(), 3.into()), p);
        assert!((x.re_f64() - 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(x.im_f64(), 0.0);
    }

    #[test]
    fn integer_power_matches_exp_ln_route() {
        let p = Precision::default();
        let two = Exponent::real_integer(2);
        let fast = HpComplex::int_pow_neg(7, &two, p);
        // 2 + 0i with a non-integer representation would still be an integer;
        // force the transcendental route with s = 2 + 1e-30·i and compare.
        let slow = HpComplex::int_pow_neg(7, &"2.0000000000000000000000000001".parse().unwrap(), p);
        assert!(fast.dist_f64(&slow) < 1e-28);
        assert!((fast.re_f64() - 1.0 / 49.0).abs() < 1e-17);
    }

    #[test]
    fn complex_power_has_unit_phase() {
        let p = Precision::default();
        let s: Exponent = "0+1i".parse().unwrap();
        let v = HpComplex::int_pow_neg(5, &s, p);
        assert!((v.abs_f64() - 1.0).abs() < 1e-15);
        let theta = -(5f64).ln();
        assert!((v.re_f64() - theta.cos()).abs() < 1e-15);
        assert!((v.im_f64() - theta.sin()).abs() < 1e-15);
    }

    #[test]
    fn pi_digits() {
        let x = pi(Precision::default());
        assert!(x.re_string().starts_with("3.14159265358979323846264338327950"));
    }
}
