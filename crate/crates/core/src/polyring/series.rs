//! Truncated Laurent series in `v` with integer coefficients.
//!
//! A series is known exactly up to and including `order`; terms above it are
//! discarded. Shifting by `v^d` moves the order along with the terms.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Series {
    coeffs: BTreeMap<i32, i64>,
    order: i32,
}

impl Series {
    pub fn zero(order: i32) -> Self {
        Series { coeffs: BTreeMap::new(), order }
    }

    pub fn monomial(d: i32, c: i64, order: i32) -> Self {
        let mut s = Series::zero(order);
        s.add_term(d, c);
        s
    }

    pub fn one(order: i32) -> Self {
        Series::monomial(0, 1, order)
    }

    /// Finite Laurent polynomial, exact to `order`.
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>, order: i32) -> Self {
        let mut s = Series::zero(order);
        for (d, c) in terms {
            s.add_term(d, c);
        }
        s
    }

    fn add_term(&mut self, d: i32, c: i64) {
        if d > self.order || c == 0 {
            return;
        }
        let e = self.coeffs.entry(d).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&d);
        }
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn coeff(&self, d: i32) -> i64 {
        self.coeffs.get(&d).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn truncate(&self, order: i32) -> Self {
        let order = order.min(self.order);
        Series { coeffs: self.coeffs.range(..=order).map(|(d, c)| (*d, *c)).collect(), order }
    }

    pub fn add(&self, other: &Series) -> Series {
        let mut s = Series::zero(self.order.min(other.order));
        for (d, c) in self.terms().chain(other.terms()) {
            s.add_term(d, c);
        }
        s
    }

    pub fn neg(&self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c)).collect(), order: self.order }
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    /// Multiplication by `v^d`.
    pub fn shift(&self, d: i32) -> Series {
        Series { coeffs: self.coeffs.iter().map(|(e, c)| (e + d, *c)).collect(), order: self.order + d }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let la = self.low_degree().unwrap_or(self.order + 1);
        let lb = other.low_degree().unwrap_or(other.order + 1);
        let order = (self.order + lb).min(other.order + la);
        let mut s = Series::zero(order);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                s.add_term(a + b, x * y);
            }
        }
        s
    }

    /// Equality of the coefficients up to and including `n`.
    pub fn agrees_to(&self, other: &Series, n: i32) -> bool {
        assert!(n <= self.order && n <= other.order, "comparison beyond the known order");
        self.truncate(n).coeffs == other.truncate(n).coeffs
    }

    /// Value at `v = 1` of the retained terms.
    pub fn sum_coeffs(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// `(1 - v^2)^{-m}` to `order`.
    pub fn free_block(m: usize, order: i32) -> Series {
        let mut s = Series::one(order);
        let geo = Series::from_terms((0..=order.max(0) / 2).map(|k| (2 * k, 1)), order);
        for _ in 0..m {
            s = s.mul(&geo);
        }
        s
    }

    /// `(1 - v^2)^m` as an exact polynomial.
    pub fn free_block_inverse(m: usize, order: i32) -> Series {
        let mut s = Series::one(order);
        let f = Series::from_terms([(0, 1), (2, -1)], order);
        for _ in 0..m {
            s = s.mul(&f);
        }
        s
    }
}

/// `(1 - v^2)^{-m}` truncated at `n`.
pub fn gdim_free_block(m: usize, n: i32) -> Series {
    Series::free_block(m, n)
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&d, &c) in &self.coeffs {
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { "-" } else { "+" })?;
            }
            first = false;
            match (d, mag) {
                (0, _) => write!(f, "{mag}")?,
                (_, 1) => write!(f, "v^{d}")?,
                _ => write!(f, "{mag}*v^{d}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_blocks() {
        assert_eq!(gdim_free_block(1, 6).to_string(), "1+v^2+v^4+v^6");
        assert_eq!(gdim_free_block(2, 4).to_string(), "1+2*v^2+3*v^4");
        assert_eq!(gdim_free_block(0, 4).to_string(), "1");
    }

    #[test]
    fn shifts_track_order() {
        let s = gdim_free_block(1, 6).shift(-3);
        assert_eq!(s.order(), 3);
        assert_eq!(s.coeff(-3), 1);
        let t = s.mul(&Series::free_block_inverse(1, 10));
        assert_eq!(t.order(), 3);
        assert_eq!(t.to_string(), "v^-3");
    }

    #[test]
    fn inverse_pair() {
        let a = gdim_free_block(3, 12).mul(&Series::free_block_inverse(3, 12));
        assert!(a.agrees_to(&Series::one(12), 12));
    }
}
