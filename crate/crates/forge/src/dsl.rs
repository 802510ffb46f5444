//! Text grammar for Laurent polynomials.
//!
//! ```text
//! expr   := sign? sterm (('+' | '-') sterm)*
//! sterm  := coeff ('*' word)? | word
//! coeff  := int | int '/' int
//! word   := factor ('*' factor)*
//! factor := 'x' digits ('^' sint)?
//! ```
//!
//! Whitespace between tokens is ignored. The output is normalized, so
//! `x1*x1^-1` parses to the constant `1`.

use lpi_core::laurent::{LaurentError, LaurentPoly};
use lpi_core::scalar::{FieldSpec, Scalar};
use lpi_core::word::{ReducedWord, Syllable};
use thiserror::Error;

/// Keeps exponent sums of any parsed word far from `i64` overflow.
pub const MAX_EXPONENT: i64 = 1 << 31;
pub const MAX_VARIABLE: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("coefficient `{literal}` at byte {offset} is not an element of {field}")]
    FieldMismatch { offset: usize, literal: String, field: FieldSpec },
    #[error("all coefficients cancel; the zero element is not a Laurent polynomial")]
    ZeroElement,
}

impl DslError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            DslError::Syntax { offset, .. } | DslError::FieldMismatch { offset, .. } => Some(*offset),
            DslError::ZeroElement => None,
        }
    }
}

pub fn parse_lpi(text: &str, field: FieldSpec) -> Result<LaurentPoly, DslError> {
    let terms = Parser { src: text.as_bytes(), text, pos: 0, field }.expr()?;
    LaurentPoly::normalize(field, terms).map_err(|e| match e {
        LaurentError::ZeroElement => DslError::ZeroElement,
        other => unreachable!("normalize only rejects the zero element: {other}"),
    })
}

struct Parser<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    field: FieldSpec,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, DslError> {
        Err(DslError::Syntax { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn found(&mut self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(_) => {
                let c = self.text[self.pos..].chars().next().unwrap_or('?');
                format!("`{c}`")
            }
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn expr(&mut self) -> Result<Vec<(ReducedWord, Scalar)>, DslError> {
        let mut terms = Vec::new();
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (w, c) = self.sterm()?;
            terms.push((w, if negate { -c } else { c }));
            match self.peek() {
                None => return Ok(terms),
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(_) => {
                    let found = self.found();
                    return self.err(format!("expected `+`, `-` or end of input, found {found}"));
                }
            }
            self.pos += 1;
        }
    }

    fn sterm(&mut self) -> Result<(ReducedWord, Scalar), DslError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.coeff()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    if self.peek() != Some(b'x') {
                        let found = self.found();
                        return self.err(format!("expected a variable after `*`, found {found}"));
                    }
                    Ok((self.word()?, coeff))
                } else {
                    Ok((ReducedWord::identity(), coeff))
                }
            }
            Some(b'x') => Ok((self.word()?, self.field.one())),
            _ => {
                let found = self.found();
                self.err(format!("expected a coefficient or a variable, found {found}"))
            }
        }
    }

    fn coeff(&mut self) -> Result<Scalar, DslError> {
        let start = self.pos;
        let num = self.digits().to_string();
        let mut literal = num.clone();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let den = self.digits();
            if den.is_empty() {
                let found = self.found();
                return self.err(format!("expected a denominator, found {found}"));
            }
            literal = format!("{num}/{den}");
        }
        self.field.parse_scalar(&literal).map_err(|_| DslError::FieldMismatch {
            offset: start,
            literal,
            field: self.field,
        })
    }

    fn word(&mut self) -> Result<ReducedWord, DslError> {
        let mut syllables = vec![self.factor()?];
        while self.peek() == Some(b'*') {
            self.pos += 1;
            if self.peek() != Some(b'x') {
                let found = self.found();
                return self.err(format!("expected a variable after `*`, found {found}"));
            }
            syllables.push(self.factor()?);
        }
        Ok(ReducedWord::reduce(syllables))
    }

    fn factor(&mut self) -> Result<Syllable, DslError> {
        self.pos += 1; // the `x`, checked by the caller
        let at = self.pos;
        let var = match self.digits().parse::<u32>() {
            Ok(v) if v > MAX_VARIABLE => {
                self.pos = at;
                return self.err(format!("variable index above {MAX_VARIABLE}"));
            }
            Ok(v) if v >= 1 => v,
            Ok(_) => {
                self.pos = at;
                return self.err("variable indices start at 1");
            }
            Err(_) => {
                self.pos = at;
                return self.err("expected a variable index after `x`");
            }
        };
        let mut exp = 1i64;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let negative = match self.src.get(self.pos) {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            self.skip_ws();
            let text = self.digits();
            exp = match text.parse::<i64>() {
                Ok(e) if e > MAX_EXPONENT => {
                    self.pos = at;
                    return self.err(format!("exponent magnitude above {MAX_EXPONENT}"));
                }
                Ok(e) if negative => -e,
                Ok(e) => e,
                Err(_) => {
                    self.pos = at;
                    return self.err("expected an integer exponent after `^`");
                }
            };
        }
        Ok(Syllable::new(var, exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    #[test]
    fn spec_examples() {
        let p = parse_lpi("2 - x1*x2 - x1^-1", q()).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.constant_coefficient(), q().from_i64(2));
        assert_eq!(p.terms()[&ReducedWord::from_pairs(&[(1, 1), (2, 1)])], q().from_i64(-1));
        assert_eq!(p.terms()[&ReducedWord::from_pairs(&[(1, -1)])], q().from_i64(-1));

        let f3 = FieldSpec::prime(3).unwrap();
        let c = parse_lpi("1 - x1^-1*x2^-1*x1*x2", f3).unwrap();
        let w = ReducedWord::from_pairs(&[(1, -1), (2, -1), (1, 1), (2, 1)]);
        assert_eq!(c, LaurentPoly::from_group_identity(f3, &w).unwrap());

        let one = parse_lpi("x1*x1^-1", q()).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one.constant_coefficient().is_one());
    }

    #[test]
    fn whitespace_signs_and_fractions() {
        let a = parse_lpi("  -1/2 * x1 ^ - 2*x2+3/4", q()).unwrap();
        let b = parse_lpi("3/4-1/2*x1^-2*x2", q()).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.to_string(), "3/4 - 1/2*x1^-2*x2");
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_lpi("1 - x", q()).unwrap_err();
        assert_eq!(e.offset(), Some(5));
        let e = parse_lpi("1 + + x1", q()).unwrap_err();
        assert_eq!(e.offset(), Some(4));
        let e = parse_lpi("2*3", q()).unwrap_err();
        assert!(matches!(e, DslError::Syntax { offset: 2, .. }));
        let e = parse_lpi("x1^", q()).unwrap_err();
        assert_eq!(e.offset(), Some(3));
        let e = parse_lpi("x0", q()).unwrap_err();
        assert_eq!(e.offset(), Some(1));
        let e = parse_lpi("1 x1", q()).unwrap_err();
        assert_eq!(e.offset(), Some(2));
        assert_eq!(parse_lpi("", q()).unwrap_err().offset(), Some(0));
        assert_eq!(parse_lpi("1 - é", q()).unwrap_err().offset(), Some(4));
    }

    #[test]
    fn field_and_zero_errors() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(
            parse_lpi("1 + 1/2*x1", f2),
            Err(DslError::FieldMismatch { offset: 4, literal: "1/2".into(), field: f2 })
        );
        assert_eq!(parse_lpi("x1 - x1", q()), Err(DslError::ZeroElement));
        assert_eq!(parse_lpi("1 + 1", f2), Err(DslError::ZeroElement));
        assert!(parse_lpi("1/0", q()).is_err());
    }
}
