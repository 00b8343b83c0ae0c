//! Scalars in input files: either a JSON number or a short exact expression
//! such as `"sqrt(3)/2"`, `"-1/2"` or `"2*sqrt(2)"`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Number(f64),
    Expr(String),
}

impl ScalarSpec {
    pub fn value(&self) -> Result<f64> {
        match self {
            ScalarSpec::Number(x) => Ok(*x),
            ScalarSpec::Expr(s) => parse_scalar(s),
        }
    }
}

impl From<f64> for ScalarSpec {
    fn from(x: f64) -> Self {
        ScalarSpec::Number(x)
    }
}

/// Evaluates `+ - * /`, parentheses, decimal literals and `sqrt(..)`.
pub fn parse_scalar(src: &str) -> Result<f64> {
    let mut p = Parser { s: src.as_bytes(), pos: 0, src };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() || !v.is_finite() {
        return Err(Error::Scalar(src.to_string()));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self) -> Error {
        Error::Scalar(self.src.to_string())
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<f64> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<f64> {
        let mut acc = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = if op == b'*' { acc * rhs } else { acc / rhs };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<f64> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(_) if self.s[self.pos..].starts_with(b"sqrt") => {
                self.pos += 4;
                self.expect(b'(')?;
                let v = self.expr()?;
                self.expect(b')')?;
                if v < 0.0 {
                    return Err(self.err());
                }
                Ok(v.sqrt())
            }
            _ => Err(self.err()),
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err())
        }
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        while self.pos < self.s.len() {
            let c = self.s[self.pos];
            let exp_sign = (c == b'-' || c == b'+') && self.pos > start && matches!(self.s[self.pos - 1], b'e' | b'E');
            if c.is_ascii_digit() || c == b'.' || c == b'e' || c == b'E' || exp_sign {
                self.pos += 1;
            } else {
                break;
            }
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok().and_then(|t| t.parse::<f64>().ok()).ok_or_else(|| self.err())
    }
}
