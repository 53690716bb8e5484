//! Parser for readable field expressions such as `-1/2*eps*mu^2` or
//! `(eps + 1)*mu`.

use super::{FieldError, Tower};
use crate::scalar::{BaseField, Field, Ring};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
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

    fn error(&self) -> FieldError {
        FieldError::BadCoordinate(String::from_utf8_lossy(self.src).into_owned())
    }

    fn expr<Q: BaseField>(&mut self) -> Result<Tower<Q>, FieldError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add_ref(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub_ref(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<Q: BaseField>(&mut self) -> Result<Tower<Q>, FieldError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul_ref(&self.unary()?);
            } else if self.eat(b'/') {
                let d = self.unary()?;
                acc = acc.div_ref(&d).ok_or(FieldError::DivisionByZero)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary<Q: BaseField>(&mut self) -> Result<Tower<Q>, FieldError> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg_ref());
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| self.error())?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom<Q: BaseField>(&mut self) -> Result<Tower<Q>, FieldError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error());
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).map_err(|_| self.error())?;
                Q::parse_fraction(digits).map(Tower::from_base).ok_or_else(|| self.error())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    b"eps" => Ok(Tower::eps()),
                    b"mu" => Ok(Tower::mu()),
                    _ => Err(self.error()),
                }
            }
            _ => Err(self.error()),
        }
    }
}

impl<Q: BaseField> Tower<Q> {
    /// Parses `+ - * / ^`, parentheses, rational literals and the generators
    /// `eps`, `mu`.
    pub fn parse_expr(s: &str) -> Result<Self, FieldError> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        if p.peek().is_some() {
            return Err(p.error());
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use crate::{FieldElement, Rational};
    use crate::scalar::Ring;

    #[test]
    fn parses_generators_and_fractions() {
        let e = FieldElement::eps();
        let m = FieldElement::mu();
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(FieldElement::parse_expr("-1/2*eps*mu^2").unwrap(), e.mul_ref(&m.pow(2)).scale(&-half.clone()));
        assert_eq!(FieldElement::parse_expr("(eps + 1)*mu").unwrap(), (e.clone() + FieldElement::from_i64(1)) * m.clone());
        assert_eq!(FieldElement::parse_expr("-eps - 1").unwrap(), FieldElement::from_i64(-1) - e.clone());
        assert_eq!(FieldElement::parse_expr("-(1/2)*mu^2").unwrap(), m.pow(2).scale(&-half));
        assert_eq!(FieldElement::parse_expr("mu^3").unwrap(), FieldElement::from_i64(2));
        assert!(FieldElement::parse_expr("nu").is_err());
        assert!(FieldElement::parse_expr("1/0").is_err());
        assert!(FieldElement::parse_expr("(1").is_err());
    }
}
