//! Text grammar for polynomials: `3/2*x1^2*x2 - x3`.
//!
//! ```text
//! poly   := sign? term (sign term)*
//! term   := factor ('*' factor)*
//! factor := integer ('/' integer)? | 'x' index ('^' integer)?
//! ```
//! Whitespace is ignored everywhere. Variable indices are 1-based.

use num_bigint::BigInt;

use super::multi::{Multi, MAX_DIM};
use super::rational::Rational;
use super::xpoly::XPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("polynomial parse error at column {column}: {message}")]
pub struct PolyParseError {
    /// 1-based character column in the input.
    pub column: usize,
    pub message: String,
}

struct Cursor {
    chars: Vec<(usize, char)>,
    pos: usize,
    dim: usize,
    stem: char,
}

impl Cursor {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn column(&self) -> usize {
        self.chars.get(self.pos).map(|c| c.0 + 1).unwrap_or_else(|| self.chars.last().map(|c| c.0 + 2).unwrap_or(1))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyParseError> {
        Err(PolyParseError { column: self.column(), message: msg.into() })
    }

    fn integer(&mut self) -> Result<BigInt, PolyParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        Ok(s.parse().expect("digits"))
    }

    fn small(&mut self, what: &str) -> Result<usize, PolyParseError> {
        let col = self.column();
        let n = self.integer()?;
        usize::try_from(n)
            .ok()
            .filter(|&v| v < 256)
            .ok_or(PolyParseError { column: col, message: format!("{what} out of range") })
    }

    fn factor(&mut self, coef: &mut Rational, mono: &mut Multi) -> Result<(), PolyParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut r = Rational::from(n);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let col = self.column();
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return Err(PolyParseError { column: col, message: "zero denominator".into() });
                    }
                    r = &r / &Rational::from(d);
                }
                *coef = &*coef * &r;
                Ok(())
            }
            Some(c) if c == self.stem => {
                self.pos += 1;
                let col = self.column();
                let i = self.small("variable index")?;
                if i == 0 || i > self.dim {
                    return Err(PolyParseError {
                        column: col,
                        message: format!("variable index {i} outside 1..{}", self.dim),
                    });
                }
                let mut e = 1usize;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    e = self.small("exponent")?;
                }
                let total = mono.0[i - 1] as usize + e;
                if total > 200 {
                    return self.err("exponent too large");
                }
                mono.0[i - 1] = total as u8;
                Ok(())
            }
            Some(c) => self.err(format!("unexpected character `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial in `x1..x<dim>`.
pub fn parse_xpoly(s: &str, dim: usize) -> Result<XPoly, PolyParseError> {
    parse_with_stem(s, dim, 'x')
}

/// Parses with a different variable letter (for fiber-variable fixtures).
pub fn parse_with_stem(s: &str, dim: usize, stem: char) -> Result<XPoly, PolyParseError> {
    assert!(dim <= MAX_DIM);
    let chars: Vec<(usize, char)> = s.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut cur = Cursor { chars, pos: 0, dim, stem };
    let mut out = XPoly::zero();
    if cur.peek().is_none() {
        return cur.err("empty polynomial");
    }
    let mut first = true;
    loop {
        let mut neg = false;
        match cur.peek() {
            Some('+') => cur.pos += 1,
            Some('-') => {
                neg = true;
                cur.pos += 1;
            }
            _ if first => {}
            Some(c) => return cur.err(format!("expected `+` or `-`, found `{c}`")),
            None => break,
        }
        first = false;
        let mut coef = Rational::one();
        let mut mono = Multi::ZERO;
        cur.factor(&mut coef, &mut mono)?;
        while cur.peek() == Some('*') {
            cur.pos += 1;
            cur.factor(&mut coef, &mut mono)?;
        }
        if neg {
            coef = -coef;
        }
        out.add_term(mono, &coef);
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(out)
}
