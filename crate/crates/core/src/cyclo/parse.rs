//! Recursive-descent parser for cyclotomic value expressions.
//!
//! Grammar:
//!   expr     := term (('+'|'-') term)*
//!   term     := factor ('*' factor)*
//!   factor   := '-' factor | atom ('^' integer)?
//!   atom     := rational | 'z(' integer ')' | '(' expr ')'
//!   rational := integer ('/' positive-integer)?
//!
//! ```
//! use charfield_core::cyclo::{parse, Cyclotomic};
//! let two = parse("(z(8) + z(8)^7)^2").unwrap();
//! assert_eq!(two, Cyclotomic::from_integer(2));
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::Rational;

use super::Cyclotomic;

pub fn parse(src: &str) -> Result<Cyclotomic, Error> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
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

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Cyclotomic, Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Cyclotomic, Error> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Cyclotomic, Error> {
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            let e = i64::try_from(e).map_err(|_| self.error("exponent out of range"))?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Cyclotomic, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'z') => {
                self.pos += 1;
                self.expect(b'(')?;
                let n = self.integer()?;
                self.expect(b')')?;
                let n = u64::try_from(n)
                    .ok()
                    .filter(|&n| (1..=super::tables::MAX_MODULUS).contains(&n))
                    .ok_or_else(|| {
                        self.error(format!(
                            "root-of-unity order must be in 1..={}",
                            super::tables::MAX_MODULUS
                        ))
                    })?;
                Ok(Cyclotomic::root_of_unity(n))
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            _ => Err(self.error("expected a rational, z(n), or parenthesized expression")),
        }
    }

    fn rational(&mut self) -> Result<Cyclotomic, Error> {
        let num = self.integer()?;
        let den = if self.eat(b'/') {
            let d = self.integer()?;
            if d <= BigInt::zero() {
                return Err(self.error("denominator must be positive"));
            }
            d
        } else {
            BigInt::from(1)
        };
        Ok(Cyclotomic::from_rational(Rational::new(num, den)))
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let neg = self.src.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let mut x: BigInt = digits.parse().unwrap();
        if neg {
            x = -x;
        }
        Ok(x)
    }
}
