//! The field Q(p) of rational functions in the formal Hecke parameter `p`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, One, Signed, Zero};

use crate::error::Error;
use crate::field::{Field, ParamField};

/// Dense univariate integer polynomial, coefficients from degree 0 upwards.
/// Never has trailing zero coefficients; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly(Vec<BigInt>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: BigInt) -> Self {
        UPoly(vec![c]).trimmed()
    }

    pub fn monomial(c: BigInt, deg: usize) -> Self {
        let mut v = vec![BigInt::zero(); deg + 1];
        v[deg] = c;
        UPoly(v).trimmed()
    }

    pub fn from_coeffs(c: Vec<BigInt>) -> Self {
        UPoly(c).trimmed()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn scale(&self, c: &BigInt) -> Self {
        UPoly(self.0.iter().map(|x| x * c).collect()).trimmed()
    }

    fn div_scalar_exact(&self, c: &BigInt) -> Self {
        UPoly(self.0.iter().map(|x| x / c).collect())
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.div_scalar_exact(&c)
    }

    fn add_ref(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.0.get(k).cloned().unwrap_or_default();
            let b = o.0.get(k).cloned().unwrap_or_default();
            v.push(a + b);
        }
        UPoly(v).trimmed()
    }

    fn neg_ref(&self) -> Self {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly(v).trimmed()
    }

    /// Pseudo-remainder of `self` by `d` (nonzero).
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo_rem by zero");
        let mut r = self.clone();
        let ld = d.lead();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lr = r.lead();
            let shift = rd - dd;
            // r <- ld * r - lr * p^shift * d
            let mut next = r.scale(&ld);
            let sub = UPoly::monomial(lr, shift).mul_ref(d);
            next = next.add_ref(&sub.neg_ref());
            r = next;
        }
        r
    }

    /// Exact quotient `self / d`; `None` if the division is not exact in Z[p].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); r.0.len().saturating_sub(dd).max(1)];
        let ld = d.lead();
        while let Some(rd) = r.degree() {
            if rd < dd {
                return None;
            }
            let (c, rem) = r.lead().div_rem(&ld);
            if !rem.is_zero() {
                return None;
            }
            let shift = rd - dd;
            q[shift] = c.clone();
            r = r.add_ref(&UPoly::monomial(c, shift).mul_ref(d).neg_ref());
        }
        Some(UPoly(q).trimmed())
    }

    /// Greatest common divisor in Z[p], normalized to a positive leading
    /// coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normalized_sign();
        }
        if o.is_zero() {
            return self.normalized_sign();
        }
        let c = self.content().gcd(&o.content());
        let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.scale(&c).normalized_sign()
    }

    fn normalized_sign(&self) -> Self {
        if self.lead().is_negative() {
            self.neg_ref()
        } else {
            self.clone()
        }
    }

    fn write_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first && !c.is_negative() {
                write!(f, "+")?;
            }
            let unit = c.abs().is_one();
            if c.is_negative() && unit && k > 0 {
                write!(f, "-")?;
            }
            match (k, unit) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "p")?,
                (_, true) => write!(f, "p^{k}")?,
                (1, false) => write!(f, "{c}*p")?,
                _ => write!(f, "{c}*p^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// An element of Q(p): a reduced fraction of integer polynomials in `p`.
///
/// The representation is canonical: numerator and denominator are coprime in
/// Z[p] (integer contents included) and the denominator has a positive leading
/// coefficient. Equal values therefore compare equal structurally.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Qp {
    num: UPoly,
    den: UPoly,
}

impl Qp {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator in Q(p)".into()));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return Qp { num, den: UPoly::constant(BigInt::one()) };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        if den.lead().is_negative() {
            num = num.neg_ref();
            den = den.neg_ref();
        }
        Qp { num, den }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Qp { num: UPoly::constant(n), den: UPoly::constant(BigInt::one()) }
    }

    pub fn from_rat(r: &crate::Rat) -> Self {
        Qp::from_bigint(r.numer().clone()) / Qp::from_bigint(r.denom().clone())
    }

    pub fn p() -> Self {
        Self::p_pow(1)
    }

    pub fn numer(&self) -> &UPoly {
        &self.num
    }

    pub fn denom(&self) -> &UPoly {
        &self.den
    }
}

impl Zero for Qp {
    fn zero() -> Self {
        Qp { num: UPoly::zero(), den: UPoly::constant(BigInt::one()) }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Qp {
    fn one() -> Self {
        Self::from_bigint(BigInt::one())
    }
}

impl Add for Qp {
    type Output = Qp;
    fn add(self, o: Qp) -> Qp {
        if self.den == o.den {
            return Qp::reduced(self.num.add_ref(&o.num), self.den);
        }
        let n = self.num.mul_ref(&o.den).add_ref(&o.num.mul_ref(&self.den));
        Qp::reduced(n, self.den.mul_ref(&o.den))
    }
}

impl Sub for Qp {
    type Output = Qp;
    fn sub(self, o: Qp) -> Qp {
        self + (-o)
    }
}

impl Neg for Qp {
    type Output = Qp;
    fn neg(self) -> Qp {
        Qp { num: self.num.neg_ref(), den: self.den }
    }
}

impl Mul for Qp {
    type Output = Qp;
    fn mul(self, o: Qp) -> Qp {
        if self.is_zero() || o.is_zero() {
            return Qp::zero();
        }
        Qp::reduced(self.num.mul_ref(&o.num), self.den.mul_ref(&o.den))
    }
}

impl Div for Qp {
    type Output = Qp;
    fn div(self, o: Qp) -> Qp {
        assert!(!o.is_zero(), "division by zero in Q(p)");
        Qp::reduced(self.num.mul_ref(&o.den), self.den.mul_ref(&o.num))
    }
}

impl Rem for Qp {
    type Output = Qp;
    /// Field remainder: always zero.
    fn rem(self, _o: Qp) -> Qp {
        Qp::zero()
    }
}

impl Num for Qp {
    type FromStrRadixErr = Error;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Error> {
        if radix != 10 {
            return Err(Error::Parse(format!("unsupported radix {radix}")));
        }
        s.parse()
    }
}

impl Field for Qp {
    fn from_int(n: i64) -> Self {
        Qp::from_bigint(BigInt::from(n))
    }
}

impl ParamField for Qp {
    fn p_pow(n: i32) -> Self {
        let one = BigInt::one();
        match n.cmp(&0) {
            Ordering::Less => Qp {
                num: UPoly::constant(one.clone()),
                den: UPoly::monomial(one, n.unsigned_abs() as usize),
            },
            _ => Qp { num: UPoly::monomial(one.clone(), n as usize), den: UPoly::constant(one) },
        }
    }
}

impl fmt::Display for Qp {
    /// `num` when the denominator is 1, else `num/den` with multi-term sides
    /// in parentheses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let several = |u: &UPoly| u.0.iter().filter(|c| !c.is_zero()).count() > 1;
        if self.den.is_one() {
            return self.num.write_terms(f);
        }
        for (k, u) in [&self.num, &self.den].into_iter().enumerate() {
            if k == 1 {
                write!(f, "/")?;
            }
            if several(u) {
                write!(f, "(")?;
                u.write_terms(f)?;
                write!(f, ")")?;
            } else {
                u.write_terms(f)?;
            }
        }
        Ok(())
    }
}

/// Parses a Laurent polynomial in `p` written as a sum of terms `c*p^k`,
/// `c`, `p^k` or `p`. Returns (coefficients keyed by exponent).
fn parse_laurent(s: &str) -> Result<Vec<(i64, BigInt)>, Error> {
    let bad = || Error::Parse(format!("bad polynomial in p: {s:?}"));
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let s = match s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        Some(t) => t.to_string(),
        None => s,
    };
    if s.is_empty() {
        return Err(bad());
    }
    // split into signed terms; a sign directly after '^' belongs to the exponent
    let mut terms = Vec::new();
    let mut cur = String::new();
    let chars: Vec<char> = s.chars().collect();
    for (idx, &ch) in chars.iter().enumerate() {
        if (ch == '+' || ch == '-') && idx > 0 && chars[idx - 1] != '^' {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut out = Vec::new();
    for t in terms {
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t.strip_prefix('+').unwrap_or(&t)),
        };
        let (coef, exp) = if let Some((c, rest)) = body.split_once('*') {
            let c: BigInt = c.parse().map_err(|_| bad())?;
            (c, parse_p_power(rest).ok_or_else(bad)?)
        } else if body.starts_with('p') {
            (BigInt::one(), parse_p_power(body).ok_or_else(bad)?)
        } else {
            (body.parse::<BigInt>().map_err(|_| bad())?, 0)
        };
        out.push((exp, if neg { -coef } else { coef }));
    }
    Ok(out)
}

fn parse_p_power(s: &str) -> Option<i64> {
    let rest = s.strip_prefix('p')?;
    if rest.is_empty() {
        return Some(1);
    }
    rest.strip_prefix('^')?.parse().ok()
}

fn laurent_to_fraction(terms: &[(i64, BigInt)]) -> (UPoly, i64) {
    let lo = terms.iter().map(|t| t.0).min().unwrap_or(0).min(0);
    let hi = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, c) in terms {
        v[(e - lo) as usize] += c;
    }
    (UPoly::from_coeffs(v), -lo)
}

impl FromStr for Qp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let (na, sa) = laurent_to_fraction(&parse_laurent(a)?);
        let (nb, sb) = match b {
            Some(b) => laurent_to_fraction(&parse_laurent(b)?),
            None => (UPoly::constant(BigInt::one()), 0),
        };
        if nb.is_zero() {
            return Err(Error::Parse(format!("zero denominator: {s:?}")));
        }
        // value = (na / p^sa) / (nb / p^sb)
        let shift = sb - sa;
        let one = BigInt::one();
        let (num, den) = if shift >= 0 {
            (na.mul_ref(&UPoly::monomial(one, shift as usize)), nb)
        } else {
            (na, nb.mul_ref(&UPoly::monomial(one, (-shift) as usize)))
        };
        Qp::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Qp {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_forms() {
        let a = q("2*p^2-2*p^0/4*p^1-4*p^0");
        assert_eq!(a, q("1*p^1+1*p^0/2"));
        assert_eq!(a.to_string(), "(p+1)/2");
        assert_eq!(q("-1*p^0/1*p^3+1*p^1").to_string(), "-1/(p^3+p)");
        assert_eq!(q("-p^2+3*p").to_string(), "-p^2+3*p");
        assert_eq!(q("-1/-2"), q("1/2"));
        assert_eq!(Qp::p_pow(-3) * Qp::p_pow(3), Qp::one());
        assert_eq!(q("p^-3"), Qp::p_pow(-3));
    }

    #[test]
    fn field_ops() {
        let p = Qp::p();
        let x = (p.clone() - p.inv()) / (p.clone() + Qp::one());
        let back = x.clone() * (p.clone() + Qp::one()) + p.inv();
        assert_eq!(back, p);
        assert_eq!(x.clone() - x, Qp::zero());
    }

    #[test]
    fn round_trip_text() {
        for s in ["0", "3", "p^5", "-1*p^2+3*p^0/7*p^3-1*p^0", "(p^4+p^2+1)/(p^3+p)", "-p/2"] {
            let a = q(s);
            assert_eq!(q(&a.to_string()), a);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!("p^x".parse::<Qp>().is_err());
        assert!("1/0".parse::<Qp>().is_err());
    }
}
