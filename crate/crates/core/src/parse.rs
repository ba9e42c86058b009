//! Recursive-descent parser for the textual polynomial grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Variables are `x1..xn`, `y`, `a1..an`, `b1..bn`. Whitespace is ignored.
//! A rational literal `p/q` is ordinary division of two integers.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::ratfunc::RatFunc;
use crate::var::VarId;
use crate::Rational;

/// Parses `text` and requires the result to be a polynomial.
pub fn parse_poly(text: &str, n: usize) -> Result<MultiPoly> {
    let r = parse_ratfunc(text, n)?;
    match r.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(Error::NotPolynomial),
    }
}

/// Parses a rational function in the same grammar.
pub fn parse_ratfunc(text: &str, n: usize) -> Result<RatFunc> {
    if n == 0 {
        return Err(Error::OutOfRange(
            "ambient dimension must be at least 1".into(),
        ));
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n,
    };
    let r = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.expected("operator or end of input"));
    }
    Ok(r)
}

/// Smallest ambient dimension in which every variable of `text` is valid.
pub fn infer_dimension(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut n = 1;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if matches!(c, b'x' | b'a' | b'b') {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j > start {
                if let Ok(k) = text[start..j].parse::<usize>() {
                    n = n.max(k);
                }
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    n
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
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

    fn expected(&self, what: &str) -> Error {
        Error::SyntaxError {
            position: self.pos,
            expected: what.to_string(),
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.expected("non-negative integer exponent"));
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| self.expected("exponent that fits in 32 bits"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
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
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.expected("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let v: BigInt = digits.parse().expect("ascii digits");
                Ok(RatFunc::constant(self.n, Rational::from_integer(v)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match VarId::parse(name, self.n) {
                    Some(v) => Ok(RatFunc::var(self.n, v)),
                    None => Err(Error::UnknownVariable {
                        name: name.to_string(),
                        position: start,
                        n: self.n,
                    }),
                }
            }
            _ => Err(self.expected("number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcribes_simple_polynomials() {
        assert_eq!(parse_poly("y^2 - x1", 1).unwrap().to_string(), "y^2-x1");
        let z = parse_poly("0", 2).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
    }

    #[test]
    fn expands_products() {
        let p = parse_poly("(y - 1)*(y + 1)", 1).unwrap();
        assert_eq!(p, parse_poly("y^2-1", 1).unwrap());
    }

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(parse_poly("-y^2", 1).unwrap().to_string(), "-y^2");
        assert_eq!(parse_poly("2*-y", 1).unwrap().to_string(), "-2*y");
        assert_eq!(parse_poly("1/2*a1", 1).unwrap().to_string(), "1/2*a1");
        assert_eq!(parse_poly(" 3 - - 2 ", 1).unwrap().to_string(), "5");
    }

    #[test]
    fn reports_unknown_variable() {
        match parse_poly("y - x3", 2) {
            Err(Error::UnknownVariable { name, position, .. }) => {
                assert_eq!(name, "x3");
                assert_eq!(position, 4);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_poly("y + z", 1),
            Err(Error::UnknownVariable { .. })
        ));
    }

    #[test]
    fn reports_syntax_errors_with_position() {
        match parse_poly("y^", 1) {
            Err(Error::SyntaxError { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_poly("(y", 1),
            Err(Error::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_poly("y y", 1),
            Err(Error::SyntaxError { .. })
        ));
    }

    #[test]
    fn rejects_division_that_leaves_a_fraction() {
        assert_eq!(parse_poly("1/y", 1), Err(Error::NotPolynomial));
        assert_eq!(parse_poly("1/0", 1), Err(Error::DivisionByZero));
        assert_eq!(parse_poly("(y^2-1)/(y-1)", 1).unwrap().to_string(), "y+1");
    }

    #[test]
    fn dimension_inference() {
        assert_eq!(infer_dimension("b1^2"), 1);
        assert_eq!(infer_dimension("a2*y + x3"), 3);
        assert_eq!(infer_dimension("y"), 1);
    }
}
