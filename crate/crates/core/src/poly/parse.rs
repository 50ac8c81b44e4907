use num_bigint::BigInt;

use super::{GradedRing, PolyError, Polynomial};
use crate::Rational;

/// Parses an expression over `ring`.
///
/// Grammar: `expr := [+|-] term ((+|-) term)*`, `term := factor ((*|/) factor)*`,
/// `factor := base (^ nat)?`, `base := int | ident | ( expr )`. Division is
/// only allowed by nonzero constants, which covers fraction literals `a/b`.
pub fn parse_polynomial(text: &str, ring: &GradedRing) -> Result<Polynomial, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a GradedRing,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> PolyError {
        PolyError::Syntax { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
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
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.factor()?;
                    if !d.is_constant() {
                        return Err(PolyError::Syntax { pos: at, msg: "divisor must be a constant".into() });
                    }
                    let c = d.leading_coefficient().cloned().ok_or(PolyError::ZeroDenominator { pos: at })?;
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.natural()?;
            let e = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn natural(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string parses"))
    }

    fn base(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.natural()?;
                Ok(Polynomial::constant(self.ring, Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                match self.ring.index_of(name) {
                    Some(i) => Ok(Polynomial::variable(self.ring, i)),
                    None => Err(PolyError::UnknownVariable { name: name.to_string(), pos: start }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> GradedRing {
        GradedRing::new([("x", 1), ("y", 1)]).unwrap()
    }

    #[test]
    fn expands_to_zero() {
        let p = parse_polynomial("(x+y)^2 - x^2 - 2*x*y - y^2", &xy()).unwrap();
        assert!(p.is_zero());
        assert!(parse_polynomial("0", &xy()).unwrap().is_zero());
    }

    #[test]
    fn fractions_and_unary_minus() {
        let p = parse_polynomial("-3/6*x + y/2", &xy()).unwrap();
        assert_eq!(p.to_string(), "-1/2*x + 1/2*y");
    }

    #[test]
    fn reports_positions() {
        assert_eq!(parse_polynomial("x + zz", &xy()), Err(PolyError::UnknownVariable { name: "zz".into(), pos: 4 }));
        assert_eq!(parse_polynomial("x/0", &xy()), Err(PolyError::ZeroDenominator { pos: 2 }));
        assert!(matches!(parse_polynomial("x + * y", &xy()), Err(PolyError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_polynomial("(x + y", &xy()), Err(PolyError::Syntax { pos: 6, .. })));
        assert!(matches!(parse_polynomial("x/y", &xy()), Err(PolyError::Syntax { pos: 2, .. })));
    }

    #[test]
    fn a2_class() {
        let r = GradedRing::new([("lambda1", 1), ("lambda2", 2)]).unwrap();
        let p = parse_polynomial("24*lambda1^2 - 48*lambda2", &r).unwrap();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.to_string(), "24*lambda1^2 - 48*lambda2");
    }
}
