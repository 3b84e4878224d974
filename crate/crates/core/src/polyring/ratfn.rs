//! Rational functions whose denominators are products of the localizing
//! linear forms `kappa_a`, `kappa_a - kappa_b`, `kappa_a + kappa_b`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::polyring::poly::{Mono, Poly};
use crate::weyl::SPerm;

/// A normalized linear form; indices are 1-based and `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum LinForm {
    Var(u8),
    Diff(u8, u8),
    Sum(u8, u8),
}

impl LinForm {
    /// Writes `c1 kappa_a + c2 kappa_b` (`a != b`, `c = ±1`) as `sign * form`.
    fn normalize(c1: i32, a: u8, c2: i32, b: u8) -> (i32, LinForm) {
        let (c1, a, c2, b) = if a < b { (c1, a, c2, b) } else { (c2, b, c1, a) };
        match (c1, c2) {
            (1, -1) => (1, LinForm::Diff(a, b)),
            (1, 1) => (1, LinForm::Sum(a, b)),
            (-1, 1) => (-1, LinForm::Diff(a, b)),
            _ => (-1, LinForm::Sum(a, b)),
        }
    }

    /// `kappa_k - kappa_{s_k(k)}` as `sign * form`.
    pub fn root(k: usize) -> (i32, LinForm) {
        if k == 0 {
            (-1, LinForm::Sum(1, 2))
        } else {
            (1, LinForm::Diff(k as u8, k as u8 + 1))
        }
    }

    pub fn to_poly<F: Field>(&self) -> Poly<F> {
        match *self {
            LinForm::Var(a) => Poly::var(a as usize),
            LinForm::Diff(a, b) => &Poly::var(a as usize) - &Poly::var(b as usize),
            LinForm::Sum(a, b) => &Poly::var(a as usize) + &Poly::var(b as usize),
        }
    }

    pub fn weyl_act(&self, w: &SPerm) -> (i32, LinForm) {
        let img = |a: u8| {
            let c = w.code(a as usize);
            (c.signum(), c.unsigned_abs() as u8)
        };
        match *self {
            LinForm::Var(a) => {
                let (s, x) = img(a);
                (s, LinForm::Var(x))
            }
            LinForm::Diff(a, b) => {
                let ((sa, x), (sb, y)) = (img(a), img(b));
                LinForm::normalize(sa, x, -sb, y)
            }
            LinForm::Sum(a, b) => {
                let ((sa, x), (sb, y)) = (img(a), img(b));
                LinForm::normalize(sa, x, sb, y)
            }
        }
    }

    /// Every form in `m` variables.
    pub fn all(m: usize) -> Vec<LinForm> {
        let mut v: Vec<LinForm> = (1..=m as u8).map(LinForm::Var).collect();
        for a in 1..=m as u8 {
            for b in a + 1..=m as u8 {
                v.push(LinForm::Diff(a, b));
                v.push(LinForm::Sum(a, b));
            }
        }
        v
    }

    fn max_index(&self) -> usize {
        match *self {
            LinForm::Var(a) => a as usize,
            LinForm::Diff(_, b) | LinForm::Sum(_, b) => b as usize,
        }
    }

    /// Exact quotient `f / self`, or `None` if the division leaves a remainder.
    pub fn divide<F: Field>(&self, f: &Poly<F>) -> Option<Poly<F>> {
        if f.is_zero() {
            return Some(Poly::zero());
        }
        match *self {
            LinForm::Var(a) => {
                let a = a as usize;
                let mut out = Vec::with_capacity(f.len());
                for (m, c) in f.terms() {
                    if m.exp(a) == 0 {
                        return None;
                    }
                    let mut n = *m;
                    n.0[a - 1] -= 1;
                    out.push((n, c.clone()));
                }
                Some(Poly::from_terms(out))
            }
            LinForm::Diff(a, b) | LinForm::Sum(a, b) => {
                // synthetic division by (kappa_a - r), r = ±kappa_b
                let r_neg = matches!(self, LinForm::Sum(..));
                let rb = Mono::var(b as usize);
                let times_r = |p: &Poly<F>| {
                    let q = p.mul_mono(&rb);
                    if r_neg {
                        -q
                    } else {
                        q
                    }
                };
                let parts = f.split_by_var(a as usize);
                let n = parts.len() - 1;
                if n == 0 {
                    return None;
                }
                let mut q = vec![Poly::zero(); n];
                q[n - 1] = parts[n].clone();
                for k in (1..n).rev() {
                    q[k - 1] = &parts[k] + &times_r(&q[k]);
                }
                let rem = &parts[0] + &times_r(&q[0]);
                if !rem.is_zero() {
                    return None;
                }
                let va = Mono::var(a as usize);
                let mut out = Poly::zero();
                let mut pw = Mono::one();
                for qk in q {
                    out = out + qk.mul_mono(&pw);
                    pw = pw.mul(&va);
                }
                Some(out)
            }
        }
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinForm::Var(a) => write!(f, "k{a}"),
            LinForm::Diff(a, b) => write!(f, "(k{a}-k{b})"),
            LinForm::Sum(a, b) => write!(f, "(k{a}+k{b})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFn<F> {
    num: Poly<F>,
    den: BTreeMap<LinForm, u32>,
}

impl<F: Field> Default for RatFn<F> {
    fn default() -> Self {
        RatFn::zero()
    }
}

impl<F: Field> From<Poly<F>> for RatFn<F> {
    fn from(p: Poly<F>) -> Self {
        RatFn { num: p, den: BTreeMap::new() }
    }
}

impl<F: Field> RatFn<F> {
    pub fn zero() -> Self {
        Poly::zero().into()
    }

    pub fn one() -> Self {
        Poly::one().into()
    }

    pub fn constant(c: F) -> Self {
        Poly::constant(c).into()
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den_factors(&self) -> &BTreeMap<LinForm, u32> {
        &self.den
    }

    pub fn den_poly(&self) -> Poly<F> {
        let mut d = Poly::one();
        for (f, e) in &self.den {
            d = &d * &f.to_poly::<F>().pow(*e);
        }
        d
    }

    /// `sign * form^e` with `e` of either sign.
    pub fn form_power(sign: i32, form: LinForm, e: i32) -> Self {
        let s = if sign < 0 && e.rem_euclid(2) == 1 { -F::one() } else { F::one() };
        if e >= 0 {
            RatFn::from(form.to_poly::<F>().pow(e as u32).scale(&s))
        } else {
            RatFn { num: Poly::constant(s), den: BTreeMap::from([(form, (-e) as u32)]) }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&Poly<F>> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn into_poly(self) -> Option<Poly<F>> {
        if self.den.is_empty() {
            Some(self.num)
        } else {
            None
        }
    }

    fn reduced(mut num: Poly<F>, mut den: BTreeMap<LinForm, u32>) -> Self {
        if num.is_zero() {
            return RatFn::zero();
        }
        den.retain(|_, e| *e > 0);
        let forms: Vec<LinForm> = den.keys().copied().collect();
        for form in forms {
            while den[&form] > 0 {
                match form.divide(&num) {
                    Some(q) => {
                        num = q;
                        *den.get_mut(&form).unwrap() -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|_, e| *e > 0);
        RatFn { num, den }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly<F>) -> Self {
        RatFn::reduced(&self.num * p, self.den.clone())
    }

    /// `(sign*form)^{-1}`-multiple; cheap path used by divided differences.
    pub fn div_form(&self, form: LinForm) -> Self {
        match form.divide(&self.num) {
            Some(q) => RatFn { num: q, den: self.den.clone() },
            None => {
                let mut den = self.den.clone();
                *den.entry(form).or_insert(0) += 1;
                RatFn { num: self.num.clone(), den }
            }
        }
    }

    pub fn weyl_act(&self, w: &SPerm) -> Self {
        if w.is_identity() {
            return self.clone();
        }
        let mut num = self.num.weyl_act(w);
        let mut den = BTreeMap::new();
        let mut neg = false;
        for (f, e) in &self.den {
            let (s, g) = f.weyl_act(w);
            if s < 0 && e % 2 == 1 {
                neg = !neg;
            }
            *den.entry(g).or_insert(0) += *e;
        }
        if neg {
            num = -num;
        }
        RatFn { num, den }
    }

    /// Multiplicative inverse. The numerator must factor into localizing
    /// linear forms times a constant.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inverse of zero".into()));
        }
        let mut num = self.num.clone();
        let mut factors: BTreeMap<LinForm, u32> = BTreeMap::new();
        let m = num.num_vars();
        let candidates = LinForm::all(m);
        'outer: while !num.is_constant() {
            for f in &candidates {
                if let Some(q) = f.divide(&num) {
                    num = q;
                    *factors.entry(*f).or_insert(0) += 1;
                    continue 'outer;
                }
            }
            return Err(Error::Arithmetic(format!(
                "cannot invert {self}: numerator is not a product of localizing forms"
            )));
        }
        let c = num.constant_term().inv();
        let mut out = Poly::constant(c);
        for (f, e) in &self.den {
            out = &out * &f.to_poly::<F>().pow(*e);
        }
        Ok(RatFn { num: out, den: factors })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Degree with `deg kappa = 2`, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<i32> {
        let d = self.num.homogeneous_degree()? as i32;
        let e: u32 = self.den.values().sum();
        Some(2 * (d - e as i32))
    }

    /// Sets `kappa_l = 0`; fails if `kappa_l` occurs in the denominator.
    pub fn set_zero(&self, l: usize) -> Result<Self> {
        let hits = self.den.keys().any(|f| match *f {
            LinForm::Var(a) => a as usize == l,
            LinForm::Diff(a, b) | LinForm::Sum(a, b) => a as usize == l || b as usize == l,
        });
        if hits {
            return Err(Error::Arithmetic(format!("cannot set k{l} = 0 in {self}")));
        }
        Ok(RatFn::reduced(self.num.set_zero(l), self.den.clone()))
    }

    pub fn num_vars(&self) -> usize {
        self.num.num_vars().max(self.den.keys().map(|f| f.max_index()).max().unwrap_or(0))
    }
}

impl<F: Field> Add for &RatFn<F> {
    type Output = RatFn<F>;
    fn add(self, rhs: &RatFn<F>) -> RatFn<F> {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RatFn::reduced(&self.num + &rhs.num, self.den.clone());
        }
        let mut lcm = self.den.clone();
        for (f, e) in &rhs.den {
            let x = lcm.entry(*f).or_insert(0);
            *x = (*x).max(*e);
        }
        let lift = |r: &RatFn<F>| {
            let mut n = r.num.clone();
            for (f, e) in &lcm {
                let have = r.den.get(f).copied().unwrap_or(0);
                if *e > have {
                    n = &n * &f.to_poly::<F>().pow(e - have);
                }
            }
            n
        };
        let num = &lift(self) + &lift(rhs);
        RatFn::reduced(num, lcm)
    }
}

impl<F: Field> Add for RatFn<F> {
    type Output = RatFn<F>;
    fn add(self, rhs: RatFn<F>) -> RatFn<F> {
        &self + &rhs
    }
}

impl<F: Field> Neg for RatFn<F> {
    type Output = RatFn<F>;
    fn neg(self) -> RatFn<F> {
        RatFn { num: -self.num, den: self.den }
    }
}

impl<F: Field> Neg for &RatFn<F> {
    type Output = RatFn<F>;
    fn neg(self) -> RatFn<F> {
        -self.clone()
    }
}

impl<F: Field> Sub for &RatFn<F> {
    type Output = RatFn<F>;
    fn sub(self, rhs: &RatFn<F>) -> RatFn<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Sub for RatFn<F> {
    type Output = RatFn<F>;
    fn sub(self, rhs: RatFn<F>) -> RatFn<F> {
        &self - &rhs
    }
}

impl<F: Field> Mul for &RatFn<F> {
    type Output = RatFn<F>;
    fn mul(self, rhs: &RatFn<F>) -> RatFn<F> {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        let mut den = self.den.clone();
        for (f, e) in &rhs.den {
            *den.entry(*f).or_insert(0) += *e;
        }
        if rhs.den.is_empty() && self.den.is_empty() {
            return RatFn { num: &self.num * &rhs.num, den };
        }
        RatFn::reduced(&self.num * &rhs.num, den)
    }
}

impl<F: Field> Mul for RatFn<F> {
    type Output = RatFn<F>;
    fn mul(self, rhs: RatFn<F>) -> RatFn<F> {
        &self * &rhs
    }
}

impl<F: Field> fmt::Display for RatFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let d: Vec<String> = self
            .den
            .iter()
            .map(|(g, e)| if *e == 1 { g.to_string() } else { format!("{g}^{e}") })
            .collect();
        write!(f, "({})/({})", self.num, d.join("*"))
    }
}

impl<F: Field> fmt::Debug for RatFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
