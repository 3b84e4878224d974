//! Exact coefficient fields.
//!
//! Everything in this crate is generic over [`Field`], a thin layer on top of
//! `num_traits::Num` that adds the few operations exact linear algebra and the
//! Hecke transport need. Two instances ship with the crate: [`Rat`] (the
//! rationals, enough for the KLR side where `p` never appears) and
//! [`crate::Qp`] (rational functions in the formal Hecke parameter).

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

use crate::ground::Vertex;

/// Arbitrary precision rationals.
pub type Rat = BigRational;

pub trait Field:
    Num + Neg<Output = Self> + Clone + Eq + Hash + Debug + Display + FromStr + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Canonical text form, parseable by `FromStr`.
    fn to_text(&self) -> String {
        self.to_string()
    }
}

/// A field that contains the Hecke parameter `p` and hence every vertex label
/// `±p^n`.
pub trait ParamField: Field {
    /// `p^n` for any integer `n`.
    fn p_pow(n: i32) -> Self;

    fn vertex_value(v: Vertex) -> Self {
        let x = Self::p_pow(v.exponent());
        if v.sign() < 0 {
            -x
        } else {
            x
        }
    }
}

impl Field for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_text(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Parses `a` or `a/b` as a rational (the `num-rational` parser rejects
/// surrounding whitespace, this one trims it).
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(BigRational::new(a, b))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}
