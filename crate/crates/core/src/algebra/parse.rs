use num_bigint::BigInt;
use thiserror::Error;

use super::poly::{MultiPoly, Var};
use super::Rat;

/// Error raised while parsing a polynomial expression, with the byte
/// position of the offending token.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {0}: {1}")]
    Syntax(usize, String),
    #[error("unknown variable '{1}' at position {0} (expected x, y or z)")]
    UnknownVariable(usize, char),
}

/// Parse an expression in the variables `x, y, z` with integer and `a/b`
/// rational literals, the operators `+ - * ^` and parentheses.  Whitespace
/// is insignificant.  The result is in canonical form and round-trips
/// through `Display`.
pub fn parse_poly(text: &str) -> Result<MultiPoly, ParseError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(ParseError::Syntax(
            p.pos,
            format!("unexpected character '{}'", p.bytes[p.pos] as char),
        ));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let n = self.integer()?;
            let exp: u32 = n.try_into().map_err(|_| {
                ParseError::Syntax(start, "exponent out of range".into())
            })?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(ParseError::Syntax(self.pos, "expected ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let start = self.pos;
                    let den = self.integer()?;
                    if den == 0u32.into() {
                        return Err(ParseError::Syntax(start, "zero denominator".into()));
                    }
                    Ok(MultiPoly::constant(Rat::new(num, den)))
                } else {
                    Ok(MultiPoly::constant(Rat::from_integer(num)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let v = match c {
                    b'x' => Var::X,
                    b'y' => Var::Y,
                    b'z' => Var::Z,
                    other => {
                        return Err(ParseError::UnknownVariable(self.pos, other as char))
                    }
                };
                self.pos += 1;
                Ok(MultiPoly::var(v))
            }
            Some(c) => Err(ParseError::Syntax(
                self.pos,
                format!("unexpected character '{}'", c as char),
            )),
            None => Err(ParseError::Syntax(self.pos, "unexpected end of input".into())),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::Syntax(start, "expected a number".into()));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Exponent;
    use crate::algebra::rat;

    #[test]
    fn direct_reading() {
        let f = parse_poly("x^2 - y^3").unwrap();
        assert_eq!(f.coeff(&Exponent([2, 0, 0])), rat(1));
        assert_eq!(f.coeff(&Exponent([0, 3, 0])), rat(-1));
        assert_eq!(f.num_terms(), 2);
    }

    #[test]
    fn zero_polynomial() {
        assert!(parse_poly("0").unwrap().is_zero());
    }

    #[test]
    fn cancellation_to_canonical_form() {
        let f = parse_poly("1/2*x*y + 1/2*x*y").unwrap();
        assert_eq!(f.num_terms(), 1);
        assert_eq!(f.coeff(&Exponent([1, 1, 0])), rat(1));
    }

    #[test]
    fn errors_carry_position() {
        match parse_poly("x + w") {
            Err(ParseError::UnknownVariable(4, 'w')) => {}
            other => panic!("expected unknown-variable error, got {:?}", other),
        }
        assert!(matches!(parse_poly("x + "), Err(ParseError::Syntax(..))));
    }

    #[test]
    fn round_trip_through_printing() {
        for s in [
            "x^2 - y^3",
            "0",
            "-x + 1/2*y^4 - 7",
            "x*y*z - z^3",
            "3/4",
        ] {
            let f = parse_poly(s).unwrap();
            let g = parse_poly(&f.to_string()).unwrap();
            assert_eq!(f, g, "round trip failed for {}", s);
        }
    }
}
