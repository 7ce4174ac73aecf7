//! Recursive-descent parser for cyclotomic expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' '-'? int)?
//! atom   := int | 'z' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. Rationals `p/q` fall out of the division rule.

use num::{BigInt, BigRational};
use thiserror::Error;

use super::{CycField, CycNum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ExprError {
    /// 1-based character offset into the parsed text.
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    field: &'a CycField,
    chars: Vec<char>,
    pos: usize,
}

pub(super) fn parse(field: &CycField, text: &str) -> Result<CycNum, ExprError> {
    let mut p = Parser {
        field,
        chars: text.chars().collect(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(value)
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ExprError {
        ExprError {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<CycNum, ExprError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<CycNum, ExprError> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' {
                acc * rhs
            } else {
                acc.try_div(&rhs).map_err(|_| ExprError {
                    column: at + 1,
                    message: "division by zero".into(),
                })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<CycNum, ExprError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<CycNum, ExprError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let digits = self.integer()?;
        let e: i64 = digits
            .parse()
            .ok()
            .filter(|e: &i64| *e <= u32::MAX as i64)
            .ok_or_else(|| self.error("exponent too large"))?;
        let e = if negative { -e } else { e };
        base.powi(e).map_err(|_| ExprError {
            column: at + 1,
            message: "negative power of zero".into(),
        })
    }

    fn integer(&mut self) -> Result<String, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn atom(&mut self) -> Result<CycNum, ExprError> {
        match self.peek() {
            Some('z') => {
                self.pos += 1;
                Ok(self.field.gen())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.integer()?;
                let n: BigInt = digits.parse().expect("digit string");
                Ok(self.field.from_rational(BigRational::from_integer(n)))
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}
