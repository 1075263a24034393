//! Reader for the text form of rational functions in one variable.
//!
//! Accepts sums, products, quotients, parentheses, integer literals and
//! integer powers of the variable, e.g. `(alpha^2 + 1)/(alpha - 1)` or `-3/2`.

use num_bigint::BigInt;

use super::rat::Rat;
use super::ratfun::RatFun;
use crate::error::{Error, Result};

pub fn parse_ratfun(input: &str, var: &str) -> Result<RatFun> {
    let mut p = Reader { src: input.as_bytes(), pos: 0, var: var.as_bytes() };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("end of input"));
    }
    Ok(value)
}

struct Reader<'a> {
    src: &'a [u8],
    pos: usize,
    var: &'a [u8],
}

impl Reader<'_> {
    fn error(&self, expected: &str) -> Error {
        Error::Parse(format!("expected {expected} at position {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFun> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                acc = acc.checked_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let negative = self.eat(b'-');
            let e = self.integer()?;
            let e: i64 = e.try_into().map_err(|_| self.error("small exponent"))?;
            return base.pow(if negative { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("`)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(RatFun::constant(Rat::from_integer(self.integer()?))),
            Some(_) if self.src[self.pos..].starts_with(self.var) => {
                self.pos += self.var.len();
                Ok(RatFun::x())
            }
            _ => Err(self.error("number, variable or `(`")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit run parses"))
    }
}
