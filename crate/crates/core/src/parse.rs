//! Expression grammar for scalars and the canonical printer.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := number | identifier | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Scalar, Vars};

pub const DEFAULT_MAX_DEGREE: u32 = 64;

pub fn parse_scalar(text: &str, vars: &Vars) -> Result<Scalar> {
    parse_scalar_limited(text, vars, DEFAULT_MAX_DEGREE)
}

/// Parses with an explicit total-degree limit on every intermediate value.
pub fn parse_scalar_limited(text: &str, vars: &Vars, max_degree: u32) -> Result<Scalar> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
        max_degree,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
    max_degree: u32,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn guard(&self, s: Scalar) -> Result<Scalar> {
        s.check_degree(self.max_degree)?;
        Ok(s)
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                self.guard(acc * rhs)?
            } else {
                self.guard(acc.checked_div(&rhs)?)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar> {
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

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected a nonnegative integer exponent"));
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
            let exp: u32 = text.parse().map_err(|_| Error::Parse {
                pos: start,
                msg: "exponent too large".into(),
            })?;
            let degree = u64::from(base.degree()) * u64::from(exp);
            if degree > u64::from(self.max_degree) {
                return Err(Error::DegreeOverflow {
                    degree: degree.min(u64::from(u32::MAX)) as u32,
                    limit: self.max_degree,
                });
            }
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar> {
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
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let v = self.vars.index(name)?;
                Ok(Scalar::var(v))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Scalar> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let int_part = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let mut frac_part = "";
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            let fs = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            frac_part = std::str::from_utf8(&self.src[fs..self.pos]).expect("ascii");
        }
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::Parse {
                pos: start,
                msg: "malformed number".into(),
            });
        }
        let digits = format!("{int_part}{frac_part}");
        let n: BigInt = digits.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "malformed number".into(),
        })?;
        let d = num_traits::pow(BigInt::from(10), frac_part.len());
        Ok(Scalar::from_rational(BigRational::new(n, d)))
    }
}

/// Canonical text form: `num` or `(num)/(den)`, terms in graded-lex order.
pub fn print_scalar(s: &Scalar, vars: &Vars) -> String {
    if s.denominator().is_one() {
        print_poly(s.numerator(), vars)
    } else {
        format!(
            "({})/({})",
            print_poly(s.numerator(), vars),
            print_poly(s.denominator(), vars)
        )
    }
}

pub fn print_poly(p: &Poly, vars: &Vars) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let factors: Vec<String> = m
            .factors()
            .map(|(v, e)| {
                let name = vars.name(v);
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if factors.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vars {
        Vars::coordinates(2)
    }

    #[test]
    fn literal_parse() {
        let v = vars();
        let s = parse_scalar("x1^2*x2/2", &v).unwrap();
        assert_eq!(print_scalar(&s, &v), "1/2*x1^2*x2");
        assert!(s.is_polynomial());
    }

    #[test]
    fn zero_denominator() {
        assert_eq!(
            parse_scalar("1/(x1-x1)", &vars()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn reduces_common_factor() {
        let v = vars();
        assert_eq!(
            parse_scalar("(x1+1)^2/(x1+1)", &v).unwrap(),
            parse_scalar("x1+1", &v).unwrap()
        );
        assert_eq!(
            parse_scalar("(x1^2-1)/(x1-1)", &v).unwrap(),
            parse_scalar("x1+1", &v).unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        let v = vars();
        assert!(matches!(
            parse_scalar("x1 + * 2", &v),
            Err(Error::Parse { pos: 5, .. })
        ));
        assert!(matches!(
            parse_scalar("x1 + y", &v),
            Err(Error::UnknownVariable(_))
        ));
        assert!(matches!(
            parse_scalar("x1^-1", &v),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_scalar("(x1", &v), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_scalar("x1^100", &v),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn printer_round_trip() {
        let v = vars();
        for text in [
            "0",
            "-3/2",
            "x1 - x2",
            "(x1^2 - 3*x1*x2 + 7/5)/(x2^3 + 2)",
            "-1/(x1*x2)",
            "0.25*x1",
        ] {
            let s = parse_scalar(text, &v).unwrap();
            let printed = print_scalar(&s, &v);
            assert_eq!(
                parse_scalar(&printed, &v).unwrap(),
                s,
                "{text} -> {printed}"
            );
        }
    }
}
