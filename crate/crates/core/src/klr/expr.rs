//! Small expression language for building operators from named generators.
//!
//! Grammar: sums and differences of products; factors are rational constants,
//! `s<k>` (`sigma_k`), `k<l>` (`kappa_l`), `pi` (`pi_1`), `e[<seq>]` (an
//! idempotent, sequence given by its right half) and parenthesised expressions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ground::ThetaSequence;

use super::{Ambient, KlrOperator};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(String),
    Sigma(usize),
    Kappa(usize),
    Pi,
    Idem(ThetaSequence),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected an index"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                b'-' => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek().ok_or_else(|| self.err("unexpected end"))? {
            b'-' => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            b'(' => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            b's' => {
                self.pos += 1;
                Ok(Expr::Sigma(self.digits()?))
            }
            b'k' => {
                self.pos += 1;
                Ok(Expr::Kappa(self.digits()?))
            }
            b'p' if self.s[self.pos..].starts_with(b"pi") => {
                self.pos += 2;
                Ok(Expr::Pi)
            }
            b'e' => {
                self.pos += 1;
                if self.peek() != Some(b'[') {
                    return Err(self.err("expected `[` after e"));
                }
                let start = self.pos + 1;
                let end = self.s[start..]
                    .iter()
                    .position(|&c| c == b']')
                    .ok_or_else(|| self.err("unterminated idempotent"))?;
                let body = std::str::from_utf8(&self.s[start..start + end]).unwrap();
                self.pos = start + end + 1;
                Ok(Expr::Idem(body.parse()?))
            }
            c if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'/') {
                    self.pos += 1;
                }
                Ok(Expr::Const(std::str::from_utf8(&self.s[start..self.pos]).unwrap().to_string()))
            }
            _ => Err(self.err("unexpected character")),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser { s: s.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

impl Expr {
    pub fn eval<F: Field>(&self, amb: &Arc<Ambient>) -> Result<KlrOperator<F>> {
        Ok(match self {
            Expr::Const(c) => {
                let x: F = c.parse().map_err(|_| Error::Parse(format!("bad constant `{c}`")))?;
                KlrOperator::identity(amb).scale(&x)
            }
            Expr::Sigma(k) => KlrOperator::sigma_all(amb, *k)?,
            Expr::Kappa(l) => KlrOperator::kappa_all(amb, *l)?,
            Expr::Pi => KlrOperator::pi1_all(amb)?,
            Expr::Idem(i) => KlrOperator::idempotent(amb, i)?,
            Expr::Add(a, b) => a.eval(amb)?.try_add(&b.eval(amb)?)?,
            Expr::Sub(a, b) => a.eval(amb)?.try_sub(&b.eval(amb)?)?,
            Expr::Mul(a, b) => a.eval(amb)?.multiply(&b.eval(amb)?)?,
            Expr::Neg(a) => -a.eval::<F>(amb)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::DimVec;
    use crate::klr::Flavor;
    use crate::Rat;

    #[test]
    fn parse_and_eval() {
        let a = Ambient::new("p,p^-1,p^3,p^-3".parse::<DimVec>().unwrap(), Flavor::D).unwrap();
        let e = parse_expr("s1 * k2 * e[+p^1,+p^3] - 2*k1").unwrap();
        let x: KlrOperator<Rat> = e.eval(&a).unwrap();
        assert!(!x.is_zero());
        assert!(parse_expr("s1 *").is_err());
        assert!(parse_expr("q").is_err());
        assert!(parse_expr("pi").unwrap().eval::<Rat>(&a).is_err());
    }
}
