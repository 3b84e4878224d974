use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ground::{arrow_count, cartan_product, ThetaSequence, Vertex};
use crate::polyring::{LinForm, Poly, RatFn};
use crate::weyl::{Gen, SPerm};

use super::{Ambient, Flavor, KlrOperator, Mutation};

/// `(i_k, i_{s_k(k)})`, with `i_0 = theta(i_1)` and `s_0(0) = 2`.
pub(crate) fn neighbours(i: &ThetaSequence, k: usize) -> (Vertex, Vertex) {
    if k == 0 {
        (i.entry(0), i.entry(2))
    } else {
        (i.entry(k as i32), i.entry(k as i32 + 1))
    }
}

/// Degree of `sigma_k 1_i`.
pub fn sigma_degree(i: &ThetaSequence, k: usize) -> i32 {
    let (a, b) = neighbours(i, k);
    -cartan_product(a, b)
}

/// Degree of `1_i sigma_{k_1} ... sigma_{k_r}` (`pi_1` has degree 0).
pub fn word_degree_from_target(i: &ThetaSequence, word: &[Gen]) -> i32 {
    let m = i.rank();
    let mut cur = *i;
    let mut d = 0;
    for &g in word {
        let s = SPerm::from_gen(g, m).expect("letter in range");
        cur = s.act_on_sequence(&cur);
        if let Gen::S(k) = g {
            d += sigma_degree(&cur, k as usize);
        }
    }
    d
}

/// Degree of `sigma_{k_1} ... sigma_{k_r} 1_j`.
pub fn word_degree_from_source(j: &ThetaSequence, word: &[Gen]) -> i32 {
    let m = j.rank();
    let mut cur = *j;
    let mut d = 0;
    for &g in word.iter().rev() {
        if let Gen::S(k) = g {
            d += sigma_degree(&cur, k as usize);
        }
        cur = SPerm::from_gen(g, m).expect("letter in range").act_on_sequence(&cur);
    }
    d
}

impl<F: Field> KlrOperator<F> {
    pub fn identity(amb: &Arc<Ambient>) -> Self {
        let e = SPerm::identity(amb.rank());
        let mut a = KlrOperator::zero(amb);
        for i in amb.sequences() {
            a.add_term(*i, e, RatFn::one());
        }
        a
    }

    pub fn idempotent(amb: &Arc<Ambient>, i: &ThetaSequence) -> Result<Self> {
        amb.check_seq(i)?;
        Ok(KlrOperator::single(amb, *i, SPerm::identity(amb.rank()), RatFn::one()))
    }

    /// `f 1_i`.
    pub fn poly_at(amb: &Arc<Ambient>, f: Poly<F>, i: &ThetaSequence) -> Result<Self> {
        amb.check_seq(i)?;
        if f.num_vars() > amb.rank() {
            return Err(Error::OutOfRange(format!("{f} uses more than {} variables", amb.rank())));
        }
        Ok(KlrOperator::single(amb, *i, SPerm::identity(amb.rank()), f.into()))
    }

    /// `sum_i f 1_i`.
    pub fn poly_everywhere(amb: &Arc<Ambient>, f: &Poly<F>) -> Result<Self> {
        let mut a = KlrOperator::zero(amb);
        for i in amb.sequences() {
            a = a.try_add(&KlrOperator::poly_at(amb, f.clone(), i)?)?;
        }
        Ok(a)
    }

    pub fn kappa(amb: &Arc<Ambient>, l: usize, i: &ThetaSequence) -> Result<Self> {
        if l == 0 || l > amb.rank() {
            return Err(Error::OutOfRange(format!("kappa_{l} at rank {}", amb.rank())));
        }
        KlrOperator::poly_at(amb, Poly::var(l), i)
    }

    pub fn kappa_all(amb: &Arc<Ambient>, l: usize) -> Result<Self> {
        if l == 0 || l > amb.rank() {
            return Err(Error::OutOfRange(format!("kappa_{l} at rank {}", amb.rank())));
        }
        KlrOperator::poly_everywhere(amb, &Poly::var(l))
    }

    /// `sigma_k 1_i` in its localized form.
    pub fn sigma(amb: &Arc<Ambient>, k: usize, i: &ThetaSequence) -> Result<Self> {
        let m = amb.rank();
        amb.check_seq(i)?;
        let s = SPerm::generator(k, m)?;
        let (sign, form) = LinForm::root(k);
        let (a, b) = neighbours(i, k);
        let mut out = KlrOperator::zero(amb);
        if a == b {
            let cinv = RatFn::<F>::form_power(sign, form, -1);
            out.add_term(*i, s, cinv.clone());
            if amb.mutation() != Some(Mutation::DropSigmaCorrection) {
                out.add_term(*i, SPerm::identity(m), -cinv);
            }
        } else {
            let h = arrow_count(b, a) as i32;
            let mut c = RatFn::<F>::form_power(sign, form, h);
            if amb.mutation() == Some(Mutation::DoubleSigma) {
                c = c.scale(&F::from_int(2));
            }
            out.add_term(s.act_on_sequence(i), s, c);
        }
        Ok(out)
    }

    pub fn sigma_all(amb: &Arc<Ambient>, k: usize) -> Result<Self> {
        let mut a = KlrOperator::zero(amb);
        for i in amb.sequences() {
            for (t, w, f) in KlrOperator::sigma(amb, k, i)?.terms.into_iter().map(|((t, w), f)| (t, w, f)) {
                a.add_term(t, w, f);
            }
        }
        Ok(a)
    }

    /// `pi_1 1_i` (type-B flavor only).
    pub fn pi1(amb: &Arc<Ambient>, i: &ThetaSequence) -> Result<Self> {
        if amb.flavor() != Flavor::B {
            return Err(Error::Invalid("pi_1 exists only in the type-B flavor".into()));
        }
        amb.check_seq(i)?;
        let e1 = SPerm::eps(1, amb.rank());
        Ok(KlrOperator::single(amb, i.eps1(), e1, RatFn::one()))
    }

    pub fn pi1_all(amb: &Arc<Ambient>) -> Result<Self> {
        let mut a = KlrOperator::zero(amb);
        for i in amb.sequences() {
            a = a.try_add(&KlrOperator::pi1(amb, i)?)?;
        }
        Ok(a)
    }

    /// One letter applied to `1_i`.
    pub fn letter(amb: &Arc<Ambient>, g: Gen, i: &ThetaSequence) -> Result<Self> {
        match g {
            Gen::S(k) => KlrOperator::sigma(amb, k as usize, i),
            Gen::Eps1 => KlrOperator::pi1(amb, i),
        }
    }

    /// `sigma_{k_1} ... sigma_{k_r} 1_j`, built right to left.
    pub fn word_product(amb: &Arc<Ambient>, word: &[Gen], j: &ThetaSequence) -> Result<Self> {
        let m = amb.rank();
        let mut acc = KlrOperator::idempotent(amb, j)?;
        let mut cur = *j;
        for &g in word.iter().rev() {
            let gen = KlrOperator::letter(amb, g, &cur)?;
            acc = gen.multiply(&acc)?;
            cur = SPerm::from_gen(g, m)?.act_on_sequence(&cur);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::DimVec;
    use crate::klr::BlockPoly;
    use crate::Rat;

    type Op = KlrOperator<Rat>;

    fn amb(s: &str, fl: Flavor) -> Arc<Ambient> {
        Ambient::new(s.parse::<DimVec>().unwrap(), fl).unwrap()
    }

    fn seq(s: &str) -> ThetaSequence {
        s.parse().unwrap()
    }

    fn block(i: &ThetaSequence, f: Poly<Rat>) -> BlockPoly<Rat> {
        BlockPoly::from([(*i, f)])
    }

    #[test]
    fn idempotents_and_kappa() {
        let a = amb("p,p^-1,p^5,p^-5", Flavor::D);
        let i = seq("p,p^5");
        let j = seq("p^5,p");
        let ei = Op::idempotent(&a, &i).unwrap();
        let ej = Op::idempotent(&a, &j).unwrap();
        assert_eq!(&ei * &ei, ei);
        assert!((&ei * &ej).is_zero());
        let k1 = Op::kappa_all(&a, 1).unwrap();
        let k2 = Op::kappa_all(&a, 2).unwrap();
        assert_eq!(&k1 * &k2, &k2 * &k1);
        assert!(Op::kappa(&a, 3, &i).is_err());
    }

    #[test]
    fn sigma_on_polynomials() {
        let a = amb("p,p^-1,p,p^-1", Flavor::D);
        let i = seq("p,p");
        let s1 = Op::sigma(&a, 1, &i).unwrap();
        assert!(s1.apply(&block(&i, Poly::one())).unwrap().is_empty());
        let out = s1.apply(&block(&i, Poly::var(1))).unwrap();
        assert_eq!(out[&i], -Poly::<Rat>::one());
    }

    #[test]
    fn sigma0_adjacent_case() {
        let a = amb("p^-3,p^3,p,p^-1", Flavor::D);
        // i_0 = p^3, i_2 = p
        let j = seq("p^-3,p");
        let s0 = Op::sigma(&a, 0, &j).unwrap();
        let out = s0.apply(&block(&j, Poly::one())).unwrap();
        let target = SPerm::generator(0, 2).unwrap().act_on_sequence(&j);
        // h_{i_2, i_0} = h_{p, p^3} = 0, so the coefficient is 1
        assert_eq!(out[&target], Poly::one());
        let jj = seq("p^-1,p^3");
        // i_0 = p, i_2 = p^3: h_{p^3, p} = 1, coefficient -k1-k2
        let out = Op::sigma(&a, 0, &jj).unwrap().apply(&block(&jj, Poly::one())).unwrap();
        let target = SPerm::generator(0, 2).unwrap().act_on_sequence(&jj);
        assert_eq!(out[&target], -(&Poly::var(1) + &Poly::var(2)));
    }

    #[test]
    fn sigma_commutes_with_idempotents() {
        let a = amb("p,p^-1,p^3,p^-3", Flavor::D);
        for k in 0..2 {
            let s = Op::sigma_all(&a, k).unwrap();
            for i in a.sequences() {
                let si = SPerm::generator(k, 2).unwrap().act_on_sequence(i);
                let lhs = &s * &Op::idempotent(&a, i).unwrap();
                let rhs = &Op::idempotent(&a, &si).unwrap() * &s;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn pi1_relations() {
        let a = amb("p,p^-1,p^3,p^-3", Flavor::B);
        let pi = Op::pi1_all(&a).unwrap();
        assert_eq!(&pi * &pi, Op::identity(&a));
        let k1 = Op::kappa_all(&a, 1).unwrap();
        assert_eq!(&(&pi * &k1) * &pi, -&k1);
        let s1 = Op::sigma_all(&a, 1).unwrap();
        assert_eq!(&(&pi * &s1) * &pi, Op::sigma_all(&a, 0).unwrap());
        assert!(Op::pi1_all(&amb("p,p^-1", Flavor::D)).is_err());
    }

    #[test]
    fn degrees_of_letters() {
        let i = seq("p,p");
        assert_eq!(sigma_degree(&i, 1), -2);
        let j = seq("p^-1,p^3");
        assert_eq!(sigma_degree(&j, 0), 1);
    }
}
