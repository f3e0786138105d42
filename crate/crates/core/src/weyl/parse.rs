//! Recursive-descent parser for operator expressions.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ('^' uint)?
//! atom     := 'a' | 'ad' | 'n' | rational | '(' expr ')' | '[' expr ',' expr ']'
//! rational := int ('/' uint)?
//! ```
//!
//! `int` may carry a leading `-` when it stands in atom position.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::expr::{Expr, Generator};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unknown identifier {0:?} (expected `a`, `ad` or `n`)")]
    UnknownIdentifier(String),
    #[error("unexpected {found}, expected {expected}")]
    Unexpected { found: String, expected: &'static str },
    #[error("negative exponent")]
    NegativeExponent,
    #[error("non-integer exponent")]
    NonIntegerExponent,
    #[error("exponent too large")]
    ExponentTooLarge,
    #[error("zero denominator")]
    ZeroDenominator,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at position {position}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Gen(Generator),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Dot,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Gen(g) => format!("`{}`", g.token()),
            Tok::Int(n) => format!("number {n}"),
            Tok::End => "end of input".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = pos;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                chars.next();
            }
            let n: BigInt = text[pos..end].parse().expect("digit run");
            out.push((Tok::Int(n), pos));
            continue;
        }
        if c.is_alphabetic() {
            let mut end = pos;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_alphanumeric() && d != '_' {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
            }
            let gen = match &text[pos..end] {
                "a" => Generator::Annihilate,
                "ad" => Generator::Create,
                "n" => Generator::Number,
                other => {
                    return Err(ParseError {
                        kind: ParseErrorKind::UnknownIdentifier(other.to_string()),
                        position: pos,
                    })
                }
            };
            out.push((Tok::Gen(gen), pos));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '.' => Tok::Dot,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            other => {
                return Err(ParseError {
                    kind: ParseErrorKind::UnexpectedChar(other),
                    position: pos,
                })
            }
        };
        out.push((tok, pos));
        chars.next();
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.at + offset).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError {
            kind,
            position: self.pos(),
        })
    }

    fn unexpected<T>(&self, expected: &'static str) -> Result<T, ParseError> {
        self.fail(ParseErrorKind::Unexpected {
            found: self.peek().describe(),
            expected,
        })
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.unexpected(expected)
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(Expr::Neg(Box::new(self.term()?)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Minus => self.fail(ParseErrorKind::NegativeExponent),
            Tok::Int(k) => {
                if matches!(self.peek_at(1), Tok::Slash | Tok::Dot) {
                    return self.fail(ParseErrorKind::NonIntegerExponent);
                }
                let Ok(k) = u32::try_from(k) else {
                    return self.fail(ParseErrorKind::ExponentTooLarge);
                };
                self.bump();
                Ok(Expr::Power(Box::new(base), k))
            }
            Tok::Dot => self.fail(ParseErrorKind::NonIntegerExponent),
            _ => self.unexpected("a non-negative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Gen(g) => {
                self.bump();
                Ok(Expr::Gen(g))
            }
            Tok::Int(_) => self.rational(false),
            Tok::Minus if matches!(self.peek_at(1), Tok::Int(_)) => {
                self.bump();
                self.rational(true)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::LBracket => {
                self.bump();
                let x = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let y = self.expr()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Expr::Commutator(Box::new(x), Box::new(y)))
            }
            _ => self.unexpected("an operand"),
        }
    }

    fn rational(&mut self, negative: bool) -> Result<Expr, ParseError> {
        let Tok::Int(mut num) = self.bump() else {
            unreachable!("rational() called off an integer token")
        };
        if negative {
            num = -num;
        }
        if *self.peek() == Tok::Dot {
            return self.unexpected("an integer or fraction (decimals are not supported)");
        }
        if *self.peek() != Tok::Slash {
            return Ok(Expr::Scalar(BigRational::from_integer(num)));
        }
        self.bump();
        match self.peek().clone() {
            Tok::Int(den) => {
                if den.is_zero() {
                    return self.fail(ParseErrorKind::ZeroDenominator);
                }
                self.bump();
                Ok(Expr::Scalar(BigRational::new(num, den)))
            }
            _ => self.unexpected("an unsigned denominator"),
        }
    }
}

/// Parses an operator expression.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.unexpected("an operator or end of input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leaves_and_brackets() {
        assert_eq!(parse("a").unwrap(), Expr::a());
        assert_eq!(parse("[a, ad]").unwrap(), Expr::commutator(Expr::a(), Expr::ad()));
        assert_eq!(
            parse("ad^2 * a^2").unwrap(),
            Expr::Product(vec![Expr::ad_pow(2), Expr::a_pow(2)])
        );
    }

    #[test]
    fn rationals_and_signs() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(parse("1/2").unwrap(), Expr::Scalar(half));
        assert_eq!(parse("-5*a^5").unwrap(), Expr::int(-5).mul(Expr::a_pow(5)));
        assert_eq!(parse("a - 1").unwrap(), Expr::a().sub(Expr::int(1)));
        assert_eq!(parse("a - -1").unwrap(), Expr::a().sub(Expr::int(-1)));
    }

    #[test]
    fn exponent_errors() {
        let e = parse("a^-1").unwrap_err();
        assert_eq!((e.kind, e.position), (ParseErrorKind::NegativeExponent, 2));
        assert_eq!(parse("a^1/2").unwrap_err().kind, ParseErrorKind::NonIntegerExponent);
        assert_eq!(parse("a^1.5").unwrap_err().kind, ParseErrorKind::NonIntegerExponent);
        assert_eq!(parse("a^99999999999").unwrap_err().kind, ParseErrorKind::ExponentTooLarge);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse("a + ").unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse("[a ad]").unwrap_err();
        assert_eq!(e.position, 3);
        let e = parse("a $ b").unwrap_err();
        assert_eq!((e.kind, e.position), (ParseErrorKind::UnexpectedChar('$'), 2));
        let e = parse("b").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownIdentifier("b".into()));
        assert_eq!(parse("1/0").unwrap_err().kind, ParseErrorKind::ZeroDenominator);
        assert!(parse("-a").is_err());
        assert!(parse("(a").is_err());
        assert!(parse("a b").is_err());
    }

    #[test]
    fn printer_round_trip_samples() {
        for text in [
            "a",
            "[a^2, ad^2]",
            "ad*a + 1",
            "4*ad*a + 2",
            "(a + ad)^3 - 1/2*n",
            "[n, [a, ad^3]] - -2",
            "(a^2)^3*(ad*a)",
            "-3/4 + (a + n) + ad",
            "[a, ad]^0",
        ] {
            let e = parse(text).unwrap();
            let printed = e.to_string();
            assert_eq!(parse(&printed).unwrap(), e, "{text} -> {printed}");
        }
    }
}
