//! Operator expression trees over the generators `a`, `a†`, `n̂` and exact scalars.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `a`
    Annihilate,
    /// `a†`, written `ad`
    Create,
    /// `n̂ = a†a`, written `n`
    Number,
}

impl Generator {
    pub fn token(self) -> &'static str {
        match self {
            Generator::Annihilate => "a",
            Generator::Create => "ad",
            Generator::Number => "n",
        }
    }
}

/// Parsed operator expression.
///
/// The identity operator is `Scalar(1)`. `Neg` marks a subtracted term and is
/// only produced as a non-leading child of `Sum`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Gen(Generator),
    Scalar(BigRational),
    Sum(Vec<Expr>),
    Neg(Box<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, u32),
    Commutator(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn a() -> Self {
        Expr::Gen(Generator::Annihilate)
    }

    pub fn ad() -> Self {
        Expr::Gen(Generator::Create)
    }

    pub fn n() -> Self {
        Expr::Gen(Generator::Number)
    }

    pub fn int(k: i64) -> Self {
        Expr::Scalar(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn scalar(q: BigRational) -> Self {
        Expr::Scalar(q)
    }

    pub fn pow(self, k: u32) -> Self {
        Expr::Power(Box::new(self), k)
    }

    /// `a_ℓ = a^ℓ`
    pub fn a_pow(ell: u32) -> Self {
        Expr::a().pow(ell)
    }

    /// `a_ℓ† = (a†)^ℓ`
    pub fn ad_pow(ell: u32) -> Self {
        Expr::ad().pow(ell)
    }

    pub fn product(factors: Vec<Expr>) -> Self {
        match factors.len() {
            0 => Expr::int(1),
            1 => factors.into_iter().next().unwrap(),
            _ => Expr::Product(factors),
        }
    }

    pub fn mul(self, rhs: Expr) -> Self {
        Expr::Product(vec![self, rhs])
    }

    pub fn add(self, rhs: Expr) -> Self {
        Expr::Sum(vec![self, rhs])
    }

    pub fn sub(self, rhs: Expr) -> Self {
        Expr::Sum(vec![self, Expr::Neg(Box::new(rhs))])
    }

    pub fn commutator(x: Expr, y: Expr) -> Self {
        Expr::Commutator(Box::new(x), Box::new(y))
    }

    /// Largest number of ladder letters in any word of the expansion (`n̂` counts as two).
    pub fn degree(&self) -> u32 {
        match self {
            Expr::Gen(Generator::Number) => 2,
            Expr::Gen(_) => 1,
            Expr::Scalar(_) => 0,
            Expr::Sum(xs) => xs.iter().map(Expr::degree).max().unwrap_or(0),
            Expr::Neg(x) => x.degree(),
            Expr::Product(xs) => xs.iter().map(Expr::degree).sum(),
            Expr::Power(x, k) => x.degree() * k,
            Expr::Commutator(x, y) => x.degree() + y.degree(),
        }
    }

    /// Upper bound on how far above its starting occupation any word of the
    /// expansion can climb when applied letter by letter (counts `a†` letters;
    /// `n̂` is diagonal and never climbs).
    pub fn max_raise(&self) -> u32 {
        match self {
            Expr::Gen(Generator::Create) => 1,
            Expr::Gen(_) | Expr::Scalar(_) => 0,
            Expr::Sum(xs) => xs.iter().map(Expr::max_raise).max().unwrap_or(0),
            Expr::Neg(x) => x.max_raise(),
            Expr::Product(xs) => xs.iter().map(Expr::max_raise).sum(),
            Expr::Power(x, k) => x.max_raise() * k,
            Expr::Commutator(x, y) => x.max_raise() + y.max_raise(),
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        // level 0: sum position, 1: factor of a product, 2: base of a power.
        match self {
            Expr::Gen(g) => f.write_str(g.token()),
            Expr::Scalar(q) => write_rational(f, q),
            Expr::Sum(xs) => {
                if level > 0 {
                    f.write_str("(")?;
                }
                for (i, x) in xs.iter().enumerate() {
                    match (i, x) {
                        (0, Expr::Neg(inner)) => {
                            f.write_str("-1*")?;
                            inner.write_at(f, 1)?;
                        }
                        (0, x) => x.write_term(f)?,
                        (_, Expr::Neg(inner)) => {
                            f.write_str(" - ")?;
                            inner.write_term(f)?;
                        }
                        (_, x) => {
                            f.write_str(" + ")?;
                            x.write_term(f)?;
                        }
                    }
                }
                if level > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Expr::Neg(inner) => {
                f.write_str("(0 - ")?;
                inner.write_term(f)?;
                f.write_str(")")
            }
            Expr::Product(xs) => {
                if level > 0 {
                    f.write_str("(")?;
                }
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    x.write_at(f, 1)?;
                }
                if level > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Expr::Power(x, k) => {
                if level > 1 {
                    f.write_str("(")?;
                }
                x.write_at(f, 2)?;
                write!(f, "^{k}")?;
                if level > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Expr::Commutator(x, y) => {
                f.write_str("[")?;
                x.write_at(f, 0)?;
                f.write_str(", ")?;
                y.write_at(f, 0)?;
                f.write_str("]")
            }
        }
    }

    /// A term after `+`/`-`: nested sums need parentheses to survive re-parsing.
    fn write_term(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Sum(_) => self.write_at(f, 1),
            other => other.write_at(f, 0),
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// Pretty-printer emitting the input grammar.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_with_minimal_parentheses() {
        let e = Expr::ad_pow(2).mul(Expr::a_pow(2));
        assert_eq!(e.to_string(), "ad^2*a^2");
        let e = Expr::a().add(Expr::ad()).pow(3);
        assert_eq!(e.to_string(), "(a + ad)^3");
        let e = Expr::commutator(Expr::a_pow(2), Expr::ad_pow(2));
        assert_eq!(e.to_string(), "[a^2, ad^2]");
        let e = Expr::a().sub(Expr::int(3).mul(Expr::n()));
        assert_eq!(e.to_string(), "a - 3*n");
        let e = Expr::a().pow(2).pow(3);
        assert_eq!(e.to_string(), "(a^2)^3");
    }

    #[test]
    fn degree_and_raise() {
        let e = Expr::commutator(Expr::a_pow(3), Expr::ad_pow(3));
        assert_eq!(e.degree(), 6);
        assert_eq!(e.max_raise(), 3);
        assert_eq!(Expr::n().pow(2).degree(), 4);
        assert_eq!(Expr::n().max_raise(), 0);
    }
}
