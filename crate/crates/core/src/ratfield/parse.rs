//! Recursive-descent parser for rational expressions such as
//! `(1 + y1 + y1*y2)/(y2)`, `y1^-1`, `a0*(1 - a1)/q`.

use num::BigInt;

use super::{RatError, RationalFunction, Var};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> RatError {
        RatError::Parse(format!("{msg} at offset {}", self.pos))
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

    fn expr(&mut self) -> Result<RationalFunction, RatError> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
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

    fn term(&mut self) -> Result<RationalFunction, RatError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.eat(b'/') {
                let d = self.factor()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFunction, RatError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let k = self.exponent()?;
            return base.power(k);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, RatError> {
        if self.eat(b'(') {
            let k = self.exponent()?;
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            return Ok(k);
        }
        let neg = self.eat(b'-');
        let digits = self.take(|c| c.is_ascii_digit());
        let k: i64 = digits.parse().map_err(|_| self.err("expected integer exponent"))?;
        Ok(if neg { -k } else { k })
    }

    fn take(&mut self, pred: impl Fn(u8) -> bool) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && pred(self.src[self.pos]) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<RationalFunction, RatError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take(|c| c.is_ascii_digit());
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(RationalFunction::from_poly(super::Polynomial::constant(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.take(|c| c.is_ascii_alphanumeric() || c == b'_');
                let v = Var::from_name(&name).ok_or_else(|| self.err(&format!("unknown variable '{name}'")))?;
                Ok(RationalFunction::var(v))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

impl RationalFunction {
    pub fn parse(s: &str) -> Result<RationalFunction, RatError> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

impl std::str::FromStr for RationalFunction {
    type Err = RatError;
    fn from_str(s: &str) -> Result<Self, RatError> {
        RationalFunction::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_canonical_text() {
        for s in ["(1 + y1 + y1*y2)/(y2)", "-y1*y2", "(1)/(y1)", "(-1 - y1)/(2*y3)", "1 + a0*q + t^3"] {
            assert_eq!(RationalFunction::parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn exponents_and_errors() {
        let a = RationalFunction::parse("y1^-2 * y1^(2)").unwrap();
        assert!(a.equals(&RationalFunction::int(1)));
        assert!(RationalFunction::parse("y1 +").is_err());
        assert!(RationalFunction::parse("z1").is_err());
        assert!(RationalFunction::parse("1/(y1 - y1)").is_err());
    }
}
