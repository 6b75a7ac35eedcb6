use std::sync::Arc;

use num_bigint::BigInt;


use crate::error::{Error, Result};
use crate::poly::{BigRational, Polynomial, Ring};

/// Parses `y1^2*y2*y3 + y1*y4 - 2/3*y2` style text; `*` may be omitted.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    parse_polynomial_at(text, ring, 1, 1)
}

/// Parses an optionally signed integer or fraction `p/q`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let empty = Ring::new(Vec::<String>::new());
    let p = parse_polynomial(text, &empty)?;
    Ok(p.constant_term())
}

/// Like [`parse_polynomial`], reporting positions relative to `(line, column)`.
pub(crate) fn parse_polynomial_at(
    text: &str,
    ring: &Arc<Ring>,
    line: usize,
    column: usize,
) -> Result<Polynomial> {
    let mut p = ExprParser {
        chars: text.chars().collect(),
        pos: 0,
        line,
        column,
        ring,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("expected a polynomial"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(format!("unexpected character '{}'", p.chars[p.pos])));
    }
    Ok(e)
}

struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    ring: &'a Arc<Ring>,
}

impl ExprParser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.column, msg)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                self.bump();
                negate = true;
            }
            Some('+') => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some('-') => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                Some('/') => {
                    self.bump();
                    self.skip_ws();
                    let (line, column) = (self.line, self.column);
                    let f = self.power()?;
                    if !f.is_constant() || f.is_zero() {
                        return Err(Error::parse(
                            line,
                            column,
                            "division only by nonzero constants",
                        ));
                    }
                    acc = acc.scale(&f.constant_term().recip());
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '(' => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected a nonnegative integer exponent"));
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        s
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().expect("digits");
                Ok(Polynomial::constant(self.ring, BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                match self.ring.index_of(&name) {
                    Some(i) => Ok(Polynomial::variable(self.ring, i)),
                    None => Err(Error::parse(
                        line,
                        column,
                        format!("undeclared variable '{name}'"),
                    )),
                }
            }
            Some(c) => Err(self.error(format!("unexpected character '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec_syntax() {
        let r = Ring::new(["y1", "y2", "y3", "y4"]);
        let f = parse_polynomial("y1^2*y2*y3 + y1*y4 + y2*y3^2*y4", &r).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.to_string(), "y1^2*y2*y3 + y1*y4 + y2*y3^2*y4");
        let g = parse_polynomial("y1^2 y2 y3 + y1 y4 + y2 y3^2 y4", &r).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn rationals_and_parentheses() {
        let r = Ring::new(["x", "y"]);
        let f = parse_polynomial("-(x - 1/2 y)^2 + 3x/4", &r).unwrap();
        let g = parse_polynomial("-x^2 + x*y - 1/4*y^2 + 3/4*x", &r).unwrap();
        assert_eq!(f, g);
        assert_eq!(parse_rational("-2/3").unwrap().to_string(), "-2/3");
    }

    #[test]
    fn errors_carry_positions() {
        let r = Ring::new(["x"]);
        match parse_polynomial("x + q", &r) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("x/x", &r).is_err());
        assert!(parse_polynomial("", &r).is_err());
        assert!(parse_polynomial("x^", &r).is_err());
    }
}
