//! Recursive-descent parser for rational-function expressions in `z`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | 'z' | '(' expr ')'
//! ```
//! Positions in errors are byte offsets into the input.

use num_bigint::BigInt;

use super::Rational;
use crate::error::{Error, Result};
use crate::funcfield::RatFunc;

/// Exponents above this are rejected to keep degrees desk-sized.
const MAX_EXPONENT: u32 = 100_000;

pub fn parse_expr(text: &str) -> Result<RatFunc> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if op == b'*' {
                acc * rhs
            } else {
                acc.checked_div(&rhs).ok_or(Error::DivisionByZero { pos: at })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(Error::BadExponent { pos: at });
        }
        let e: u32 = digits.parse().ok().filter(|&e| e <= MAX_EXPONENT).ok_or(Error::BadExponent { pos: at })?;
        if self.peek() == Some(b'^') {
            return Err(self.syntax("chained '^' needs parentheses"));
        }
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                Ok(RatFunc::z())
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().parse().expect("ascii digits");
                Ok(RatFunc::constant(Rational::from_integer(n)))
            }
            Some(c) => Err(self.syntax(format!("unexpected '{}'", c as char))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::Poly;
    use num_traits::One;

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(parse_expr("z^2 + 1").unwrap(), rf(&[1, 0, 1], &[1]));
        let f = parse_expr("(z+1)/(z-1)").unwrap();
        assert_eq!(f.numer(), &Poly::from_ints(&[1, 1]));
        assert_eq!(f.denom(), &Poly::from_ints(&[-1, 1]));
        assert_eq!(parse_expr("3/2 * z / z").unwrap(), RatFunc::constant(Rational::new(3.into(), 2.into())));
    }

    #[test]
    fn precedence() {
        assert_eq!(parse_expr("-z^2").unwrap(), rf(&[0, 0, -1], &[1]));
        assert_eq!(parse_expr("(-z)^2").unwrap(), rf(&[0, 0, 1], &[1]));
        assert_eq!(parse_expr("1 - 2 - 3").unwrap(), rf(&[-4], &[1]));
        assert_eq!(parse_expr("12/3/2").unwrap(), rf(&[2], &[1]));
        assert_eq!(parse_expr("2*z^3/z").unwrap(), rf(&[0, 0, 2], &[1]));
        assert_eq!(parse_expr("--z").unwrap(), RatFunc::z());
        assert_eq!(parse_expr("z^0").unwrap(), RatFunc::one());
    }

    #[test]
    fn spellings_agree() {
        let a = parse_expr("(z^2 - 1)/(2*z + 2)").unwrap();
        let b = parse_expr("z/2 - 1/2").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_expr("1/(z-z)"), Err(Error::DivisionByZero { pos: 1 }));
        assert_eq!(parse_expr("z^-1"), Err(Error::BadExponent { pos: 2 }));
        assert_eq!(parse_expr("z^(2)"), Err(Error::BadExponent { pos: 2 }));
        assert!(matches!(parse_expr("z^2^3"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_expr("2z"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_expr(""), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_expr("(z+1"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_expr("x"), Err(Error::Syntax { pos: 0, .. })));
    }
}
