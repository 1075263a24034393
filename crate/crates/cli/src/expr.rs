//! Expressions over `p`, `q`, `alpha`, `T` and rational literals.
//!
//! Precedence, tightest first: `^` (integer literal exponent), unary `-`,
//! `*`, binary `+`/`-`. `*` and binary `±` associate to the left and `*`
//! keeps operand order. `inv(x)` and `comm(x, y)` are the only functions.
//! `/` only appears inside a rational literal such as `3/4`.

use std::collections::BTreeSet;
use std::fmt;

use dlaurent::Rat;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    P,
    Q,
    Alpha,
    T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Atom(Atom),
    /// A nonnegative rational literal.
    Num(Rat),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Inv(Box<Expr>),
    Comm(Box<Expr>, Box<Expr>),
}

/// Byte offset into the input and the tokens that would have been accepted
/// there.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at position {position}: expected {}, found {found}", expected_list(.expected))]
pub struct ParseError {
    pub position: usize,
    pub expected: BTreeSet<String>,
    pub found: String,
}

fn expected_list(expected: &BTreeSet<String>) -> String {
    let items: Vec<&str> = expected.iter().map(String::as_str).collect();
    match items.len() {
        1 => items[0].to_string(),
        _ => format!("one of {}", items.join(", ")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(num_bigint::BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(input[start..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(input[start..i].to_string())));
        } else if "+-*/^(),".contains(c as char) {
            out.push((i, Tok::Sym(c as char)));
            i += 1;
        } else {
            let ch = input[i..].chars().next().expect("in bounds");
            return Err(ParseError {
                position: i,
                expected: ["expression".to_string()].into(),
                found: format!("'{ch}'"),
            });
        }
    }
    out.push((input.len(), Tok::End));
    Ok(out)
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(input)?, pos: 0 };
    let e = p.sum()?;
    p.expect_end()?;
    Ok(e)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

const PRIMARY_START: [&str; 9] = ["'('", "'-'", "'T'", "'alpha'", "'comm'", "'inv'", "'p'", "'q'", "integer"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            position: self.toks[self.pos].0,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.error(&["'*'", "'+'", "'-'", "'^'", "end of input"])),
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.product()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.product()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.product()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.primary()?;
        while self.eat('^') {
            let negative = self.eat('-');
            let Tok::Int(n) = self.peek().clone() else {
                let expected: &[&str] = if negative { &["integer"] } else { &["'-'", "integer"] };
                return Err(self.error(expected));
            };
            let n: i64 = i64::try_from(n).map_err(|_| self.error(&["integer exponent in range"]))?;
            self.pos += 1;
            base = Expr::Pow(Box::new(base), if negative { -n } else { n });
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                if self.eat('/') {
                    let Tok::Int(d) = self.peek().clone() else {
                        return Err(self.error(&["integer"]));
                    };
                    if d.is_zero() {
                        return Err(self.error(&["nonzero integer"]));
                    }
                    self.pos += 1;
                    return Ok(Expr::Num(Rat::new(n, d)));
                }
                Ok(Expr::Num(Rat::from_integer(n)))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                match name.as_str() {
                    "p" => Ok(Expr::Atom(Atom::P)),
                    "q" => Ok(Expr::Atom(Atom::Q)),
                    "alpha" => Ok(Expr::Atom(Atom::Alpha)),
                    "T" => Ok(Expr::Atom(Atom::T)),
                    "inv" => {
                        self.expect('(')?;
                        let arg = self.sum()?;
                        self.expect(')')?;
                        Ok(Expr::Inv(Box::new(arg)))
                    }
                    "comm" => {
                        self.expect('(')?;
                        let a = self.sum()?;
                        self.expect(',')?;
                        let b = self.sum()?;
                        self.expect(')')?;
                        Ok(Expr::Comm(Box::new(a), Box::new(b)))
                    }
                    _ => {
                        self.pos -= 1;
                        Err(self.error(&PRIMARY_START))
                    }
                }
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.error(&PRIMARY_START)),
        }
    }
}

/// Fully parenthesized text that parses back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(Atom::P) => write!(f, "p"),
            Expr::Atom(Atom::Q) => write!(f, "q"),
            Expr::Atom(Atom::Alpha) => write!(f, "alpha"),
            Expr::Atom(Atom::T) => write!(f, "T"),
            Expr::Num(c) if c.denom().is_one() => write!(f, "{}", c.numer()),
            Expr::Num(c) => write!(f, "({}/{})", c.numer(), c.denom()),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a}*{b})"),
            Expr::Pow(a, n) => write!(f, "{a}^{n}"),
            Expr::Inv(a) => write!(f, "inv({a})"),
            Expr::Comm(a, b) => write!(f, "comm({a}, {b})"),
        }
    }
}
