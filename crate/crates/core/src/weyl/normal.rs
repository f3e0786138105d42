//! Normal-ordered forms `Σ c_{jk} (a†)^j a^k` and the rewriting engine.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::expr::{Expr, Generator};
use crate::arith::factorial;

/// Exact linear combination of normal-ordered monomials `(a†)^j a^k`,
/// keyed by `(j, k)`. Zero coefficients are never stored, so structural
/// equality is operator equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalForm {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm::default()
    }

    pub fn one() -> Self {
        Self::scalar(BigRational::one())
    }

    pub fn scalar(c: BigRational) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c · (a†)^j a^k`
    pub fn monomial(j: u32, k: u32, c: BigRational) -> Self {
        let mut nf = NormalForm::zero();
        nf.add_term(j, k, c);
        nf
    }

    pub fn generator(g: Generator) -> Self {
        let one = BigRational::one();
        match g {
            Generator::Annihilate => Self::monomial(0, 1, one),
            Generator::Create => Self::monomial(1, 0, one),
            // n̂ = a†·a is already normal ordered.
            Generator::Number => Self::monomial(1, 1, one),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(j, k)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigRational)> {
        self.terms.iter().map(|(&(j, k), c)| (j, k, c))
    }

    pub fn coeff(&self, j: u32, k: u32) -> BigRational {
        self.terms.get(&(j, k)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Every monomial has equal numbers of `a†` and `a`.
    pub fn is_balanced(&self) -> bool {
        self.terms.keys().all(|&(j, k)| j == k)
    }

    /// Largest `j − k` over the terms; how far the operator can raise an occupation.
    pub fn max_raise(&self) -> u32 {
        self.terms
            .keys()
            .map(|&(j, k)| j.saturating_sub(k))
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, j: u32, k: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((j, k)).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(j, k));
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (j, k, c) in rhs.terms() {
            out.add_term(j, k, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return NormalForm::zero();
        }
        NormalForm {
            terms: self.terms.iter().map(|(&key, c)| (key, c * q)).collect(),
        }
    }

    /// Product computed by rewriting: the letters of `self` are pushed onto
    /// `rhs` one at a time from the right, using only `a·a† → a†·a + 1`.
    pub fn rewrite_mul(&self, rhs: &Self) -> Self {
        let mut out = NormalForm::zero();
        for (j, k, c) in self.terms() {
            let mut acc = rhs.scale(c);
            for _ in 0..k {
                acc = left_mul_annihilate(&acc);
            }
            for _ in 0..j {
                acc = left_mul_create(&acc);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Product computed from the closed PBW formula
    /// `(a†)^j a^k · (a†)^l a^m = Σ_r r! C(k,r) C(l,r) (a†)^{j+l−r} a^{k+m−r}`.
    pub fn pbw_mul(&self, rhs: &Self) -> Self {
        let mut out = NormalForm::zero();
        for (j, k, c) in self.terms() {
            for (l, m, d) in rhs.terms() {
                let cd = c * d;
                for r in 0..=k.min(l) {
                    let weight = BigInt::from(factorial(r as u64))
                        * binomial(BigInt::from(k), BigInt::from(r))
                        * binomial(BigInt::from(l), BigInt::from(r));
                    out.add_term(j + l - r, k + m - r, &cd * BigRational::from_integer(weight));
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = NormalForm::one();
        for _ in 0..e {
            acc = acc.rewrite_mul(self);
        }
        acc
    }

    /// `Σ c · ad^j * a^k` as an expression tree.
    pub fn to_expr(&self) -> Expr {
        if self.is_zero() {
            return Expr::int(0);
        }
        let terms: Vec<Expr> = self
            .terms()
            .map(|(j, k, c)| {
                let mut factors = vec![Expr::Scalar(c.clone())];
                if j > 0 {
                    factors.push(Expr::ad_pow(j));
                }
                if k > 0 {
                    factors.push(Expr::a_pow(k));
                }
                Expr::product(factors)
            })
            .collect();
        if terms.len() == 1 {
            terms.into_iter().next().unwrap()
        } else {
            Expr::Sum(terms)
        }
    }
}

/// `a · (a†)^l a^m = (a†)^l a^{m+1} + l (a†)^{l−1} a^m`, produced by commuting
/// the `a` past each `a†` in turn; each swap emits one `+1` term.
fn left_mul_annihilate(nf: &NormalForm) -> NormalForm {
    let mut out = NormalForm::zero();
    for (l, m, c) in nf.terms() {
        out.add_term(l, m + 1, c.clone());
        for _ in 0..l {
            out.add_term(l - 1, m, c.clone());
        }
    }
    out
}

fn left_mul_create(nf: &NormalForm) -> NormalForm {
    NormalForm {
        terms: nf.terms.iter().map(|(&(l, m), c)| ((l + 1, m), c.clone())).collect(),
    }
}

/// Rewrites an expression to its unique normal-ordered form.
pub fn normal_order(expr: &Expr) -> NormalForm {
    match expr {
        Expr::Gen(g) => NormalForm::generator(*g),
        Expr::Scalar(q) => NormalForm::scalar(q.clone()),
        Expr::Sum(xs) => xs
            .iter()
            .fold(NormalForm::zero(), |acc, x| acc.add(&normal_order(x))),
        Expr::Neg(x) => normal_order(x).neg(),
        Expr::Product(xs) => xs
            .iter()
            .fold(NormalForm::one(), |acc, x| acc.rewrite_mul(&normal_order(x))),
        Expr::Power(x, e) => normal_order(x).pow(*e),
        Expr::Commutator(x, y) => commutator_nf(&normal_order(x), &normal_order(y)),
    }
}

/// `[x, y] = xy − yx`, normal ordered.
pub fn commutator(x: &Expr, y: &Expr) -> NormalForm {
    commutator_nf(&normal_order(x), &normal_order(y))
}

fn commutator_nf(x: &NormalForm, y: &NormalForm) -> NormalForm {
    x.rewrite_mul(y).sub(&y.rewrite_mul(x))
}

fn write_monomial(f: &mut fmt::Formatter<'_>, j: u32, k: u32) -> fmt::Result {
    let mut parts = Vec::new();
    match j {
        0 => {}
        1 => parts.push("ad".to_string()),
        _ => parts.push(format!("ad^{j}")),
    }
    match k {
        0 => {}
        1 => parts.push("a".to_string()),
        _ => parts.push(format!("a^{k}")),
    }
    f.write_str(&parts.join("*"))
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// Renders in the input grammar, highest total degree first, e.g. `4*ad*a + 2`.
impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|&(j1, k1), &(j2, k2)| (j2 + k2, j2).cmp(&(j1 + k1, j1)));
        for (i, (j, k)) in keys.into_iter().enumerate() {
            let c = &self.terms[&(j, k)];
            let mag = if i == 0 {
                c.clone()
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
                c.abs()
            };
            if j == 0 && k == 0 {
                write_coeff(f, &mag)?;
            } else if mag.is_one() {
                write_monomial(f, j, k)?;
            } else {
                write_coeff(f, &mag)?;
                f.write_str("*")?;
                write_monomial(f, j, k)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::parse::parse;

    fn nf(text: &str) -> NormalForm {
        normal_order(&parse(text).unwrap())
    }

    #[test]
    fn canonical_relation() {
        assert_eq!(nf("a*ad").to_string(), "ad*a + 1");
        assert_eq!(nf("[a, ad]"), NormalForm::one());
        assert!(nf("[a, a]").is_zero());
        assert!(nf("[ad, ad]").is_zero());
    }

    #[test]
    fn low_order_commutators() {
        assert_eq!(nf("[a^2, ad^2]").to_string(), "4*ad*a + 2");
        assert_eq!(nf("[n, ad]"), nf("ad"));
        assert_eq!(nf("[n, a^5]"), nf("-5*a^5"));
        // 9n² + 9n + 6 with n² = ad²a² + ad a
        assert_eq!(nf("[a^3, ad^3]"), nf("9*ad^2*a^2 + 18*ad*a + 6"));
    }

    #[test]
    fn display_signs_and_fractions() {
        assert_eq!(nf("ad - a").to_string(), "ad - a");
        assert_eq!(nf("a - ad").to_string(), "-1*ad + a");
        assert_eq!(nf("-1*a + 1/2").to_string(), "-1*a + 1/2");
        assert_eq!(nf("0*a").to_string(), "0");
        assert_eq!(nf("-3").to_string(), "-3");
        for text in ["(a + ad)^4", "[a^3, ad^2] - 1/3*n^2", "-2*a*ad*a"] {
            let x = nf(text);
            assert_eq!(nf(&x.to_string()), x, "{text}");
        }
    }

    #[test]
    fn two_product_routes_agree() {
        let x = nf("(a + 2*ad)^3 - n");
        let y = nf("a^2*ad - 1/2*ad^3*a");
        assert_eq!(x.rewrite_mul(&y), x.pbw_mul(&y));
    }

    #[test]
    fn round_trip_through_expr() {
        let x = nf("[a^3, ad^4] + 7/5*n^3");
        assert_eq!(normal_order(&x.to_expr()), x);
    }
}
