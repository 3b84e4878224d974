//! Sparse polynomials in `kappa_1, ..., kappa_m`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::weyl::{SPerm, MAX_RANK};

/// Exponent vector; index `l-1` holds the power of `kappa_l`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(pub [u16; MAX_RANK]);

impl Mono {
    pub fn one() -> Self {
        Mono::default()
    }

    pub fn var(l: usize) -> Self {
        let mut e = [0; MAX_RANK];
        e[l - 1] = 1;
        Mono(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, l: usize) -> u16 {
        self.0[l - 1]
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Mono(e)
    }

    /// Highest variable index with nonzero exponent.
    pub fn support_len(&self) -> usize {
        self.0.iter().rposition(|&e| e > 0).map_or(0, |p| p + 1)
    }

    /// Signed image under `kappa_l -> sign * kappa_|code|`.
    fn act(&self, w: &SPerm) -> (Mono, bool) {
        let mut e = [0u16; MAX_RANK];
        let mut neg = false;
        for l in 1..=w.rank() {
            let x = self.0[l - 1];
            if x == 0 {
                continue;
            }
            let c = w.code(l);
            e[c.unsigned_abs() as usize - 1] = x;
            if c < 0 && x % 2 == 1 {
                neg = !neg;
            }
        }
        for l in w.rank()..MAX_RANK {
            e[l] += self.0[l];
        }
        (Mono(e), neg)
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..self.support_len()])
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<F> {
    terms: BTreeMap<Mono, F>,
}

impl<F: Field> Default for Poly<F> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Poly::monomial(Mono::one(), c)
    }

    pub fn monomial(m: Mono, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// `kappa_l`, `l >= 1`.
    pub fn var(l: usize) -> Self {
        Poly::monomial(Mono::var(l), F::one())
    }

    /// `kappa_x` for a signed position `x` in `{1-m, ..., m}`, i.e. `-kappa_{1-x}` if `x <= 0`.
    pub fn kappa_at(x: i32) -> Self {
        if x >= 1 {
            Poly::var(x as usize)
        } else {
            -Poly::var((1 - x) as usize)
        }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Mono, F)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> F {
        self.terms.get(&Mono::one()).cloned().unwrap_or_else(F::zero)
    }

    pub fn coeff(&self, m: &Mono) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    fn add_term(&mut self, m: Mono, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (*m, x.clone() * c.clone())).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        Poly { terms: self.terms.iter().map(|(n, x)| (n.mul(m), x.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Largest total degree (in number of variables); `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// Common total degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Mono::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Highest variable index used.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(Mono::support_len).max().unwrap_or(0)
    }

    /// Substitution `kappa_l -> w(kappa_l)` with `kappa_{1-k} = -kappa_k`.
    pub fn weyl_act(&self, w: &SPerm) -> Self {
        debug_assert!(self.num_vars() <= w.rank() || w.is_identity());
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let (n, neg) = m.act(w);
                    (n, if neg { -c.clone() } else { c.clone() })
                })
                .collect(),
        }
    }

    /// Sets `kappa_l = 0`.
    pub fn set_zero(&self, l: usize) -> Self {
        Poly { terms: self.terms.iter().filter(|(m, _)| m.exp(l) == 0).map(|(m, c)| (*m, c.clone())).collect() }
    }

    /// Splits by powers of `kappa_a`: entry `k` holds the coefficient of `kappa_a^k`.
    pub(crate) fn split_by_var(&self, a: usize) -> Vec<Poly<F>> {
        let mut out: Vec<Poly<F>> = Vec::new();
        for (m, c) in &self.terms {
            let k = m.exp(a) as usize;
            if out.len() <= k {
                out.resize_with(k + 1, Poly::zero);
            }
            let mut n = *m;
            n.0[a - 1] = 0;
            out[k].terms.insert(n, c.clone());
        }
        out
    }

    /// Evaluates with `kappa_l -> vals[l-1]` in any commutative ring-like target.
    pub fn eval_with<T: Clone>(
        &self,
        vals: &[T],
        one: T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
        scal: impl Fn(&F, &T) -> T,
        zero: T,
    ) -> T {
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = one.clone();
            for l in 0..m.support_len() {
                for _ in 0..m.0[l] {
                    t = mul(&t, &vals[l]);
                }
            }
            acc = add(&acc, &scal(c, &t));
        }
        acc
    }

    /// Serializable term list.
    pub fn to_terms(&self, nvars: usize) -> Vec<PolyTerm> {
        self.terms
            .iter()
            .map(|(m, c)| PolyTerm {
                exps: m.0[..nvars.max(m.support_len())].iter().map(|&e| e as u32).collect(),
                coeff: c.to_text(),
            })
            .collect()
    }

    pub fn from_term_list(terms: &[PolyTerm]) -> Result<Self> {
        let mut p = Poly::zero();
        for t in terms {
            if t.exps.len() > MAX_RANK {
                return Err(Error::OutOfRange(format!("{} variables", t.exps.len())));
            }
            let mut e = [0u16; MAX_RANK];
            for (x, y) in e.iter_mut().zip(&t.exps) {
                *x = u16::try_from(*y).map_err(|_| Error::Parse("exponent too large".into()))?;
            }
            let c: F = t.coeff.parse().map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.coeff)))?;
            p.add_term(Mono(e), c);
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub exps: Vec<u32>,
    pub coeff: String,
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<F: Field> Add for Poly<F> {
    type Output = Poly<F>;
    fn add(mut self, rhs: Poly<F>) -> Poly<F> {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -self.clone()
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<F: Field> Sub for Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Poly<F>) -> Poly<F> {
        &self - &rhs
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        let mut out = Poly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x.clone() * y.clone());
            }
        }
        out
    }
}

impl<F: Field> Mul for Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Poly<F>) -> Poly<F> {
        &self * &rhs
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let vars: Vec<String> = (1..=m.support_len())
                .filter(|&l| m.exp(l) > 0)
                .map(|l| if m.exp(l) == 1 { format!("k{l}") } else { format!("k{l}^{}", m.exp(l)) })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "({c})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The denominator of the `k`-th divided difference: `kappa_k - kappa_{s_k(k)}`.
pub fn root_poly<F: Field>(k: usize) -> Poly<F> {
    if k == 0 {
        &Poly::kappa_at(0) - &Poly::var(2)
    } else {
        &Poly::var(k) - &Poly::var(k + 1)
    }
}

/// `Delta_k f = (kappa_k - kappa_{s_k(k)})^{-1} (s_k f - f)`.
pub fn divided_difference<F: Field>(k: usize, f: &Poly<F>, m: usize) -> Result<Poly<F>> {
    let s = SPerm::generator(k, m)?;
    let diff = &f.weyl_act(&s) - f;
    let (sign, form) = crate::polyring::LinForm::root(k);
    let q = form.divide(&diff).ok_or_else(|| {
        Error::Arithmetic(format!("divided difference Delta_{k} of {f} is not exact"))
    })?;
    Ok(if sign < 0 { -q } else { q })
}

/// Invariance under `s_0, ..., s_{m-1}`.
pub fn is_d_invariant<F: Field>(f: &Poly<F>, m: usize) -> bool {
    crate::weyl::generators(crate::weyl::GroupKind::D, m)
        .into_iter()
        .all(|g| f.weyl_act(&SPerm::from_gen(g, m).unwrap()) == *f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    type P = Poly<Rat>;

    fn k(l: usize) -> P {
        P::var(l)
    }

    #[test]
    fn actions() {
        let s1 = SPerm::generator(1, 2).unwrap();
        let s0 = SPerm::generator(0, 2).unwrap();
        assert_eq!(k(1).weyl_act(&s1), k(2));
        assert_eq!(k(1).weyl_act(&s0), -k(2));
        assert_eq!(k(2).weyl_act(&s0), -k(1));
        assert_eq!(k(1).weyl_act(&SPerm::eps(1, 2)), -k(1));
        let f = &(&k(1) * &k(1)) * &k(2);
        assert_eq!(f.weyl_act(&s0), -(&(&k(2) * &k(2)) * &k(1)));
    }

    #[test]
    fn divided_differences() {
        assert_eq!(divided_difference(1, &k(1), 2).unwrap(), -P::one());
        assert_eq!(divided_difference(0, &k(1), 2).unwrap(), P::one());
        assert!(divided_difference(1, &P::one(), 2).unwrap().is_zero());
        assert!(divided_difference(0, &P::constant(Rat::from_int(7)), 3).unwrap().is_zero());
    }

    #[test]
    fn invariants() {
        let sq = &(&k(1) * &k(1)) + &(&k(2) * &k(2));
        assert!(is_d_invariant(&sq, 2));
        assert!(is_d_invariant(&(&k(1) * &k(2)), 2));
        assert!(!is_d_invariant(&(&k(1) + &k(2)), 2));
    }

    #[test]
    fn term_round_trip() {
        let f = &(&k(1) * &k(3)) - &P::constant(Rat::from_int(3));
        let t = f.to_terms(3);
        assert_eq!(P::from_term_list(&t).unwrap(), f);
    }
}
