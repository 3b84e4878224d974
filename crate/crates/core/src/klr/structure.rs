//! The anti-involution `omega`, the twist `gamma`, orbit idempotents and the center.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ground::orbit_split;
use crate::polyring::Poly;
use crate::weyl::SPerm;

use super::{Ambient, KlrOperator, PbwTable};

/// The anti-automorphism fixing `1_i`, `kappa_l` and `sigma_k`: reverses
/// every PBW word and moves the coefficient to the right.
pub fn omega<F: Field>(a: &KlrOperator<F>, table: &PbwTable<F>) -> Result<KlrOperator<F>> {
    let amb = a.ambient();
    let form = table.decompose_left(a)?;
    let e = SPerm::identity(amb.rank());
    let mut out = KlrOperator::zero(amb);
    for ((w, j), g) in &form.entries {
        let mut word = table.word(w)?.to_vec();
        word.reverse();
        let top = w.act_on_sequence(j);
        let body = KlrOperator::word_product(amb, &word, &top)?;
        let coeff = KlrOperator::single(amb, top, e, g.clone());
        out = out.try_add(&body.multiply(&coeff)?)?;
    }
    Ok(out)
}

/// Conjugation by `pi_1`: `f 1_i w -> eps_1(f) 1_{eps_1 i} eps_1 w eps_1`.
pub fn gamma<F: Field>(a: &KlrOperator<F>) -> KlrOperator<F> {
    let amb = a.ambient();
    let e1 = SPerm::eps(1, amb.rank());
    let mut out = KlrOperator::zero(amb);
    for (i, w, f) in a.terms() {
        out.add_term(i.eps1(), e1.compose(w).compose(&e1), f.weyl_act(&e1));
    }
    out
}

/// `1_{nu,+}` (`sign > 0`) or `1_{nu,-}`.
pub fn idempotent_pm<F: Field>(amb: &Arc<Ambient>, sign: i32) -> Result<KlrOperator<F>> {
    let (plus, minus) = orbit_split(amb.nu())?;
    let part = if sign > 0 { plus } else { minus };
    let mut out = KlrOperator::zero(amb);
    for i in &part {
        out = out.try_add(&KlrOperator::idempotent(amb, i)?)?;
    }
    Ok(out)
}

/// Whether `sum_i f 1_i` commutes with every generator.
pub fn center_test<F: Field>(amb: &Arc<Ambient>, f: &Poly<F>) -> Result<bool> {
    let m = amb.rank();
    if f.num_vars() > m {
        return Err(Error::OutOfRange(format!("{f} uses more than {m} variables")));
    }
    let z = KlrOperator::poly_everywhere(amb, f)?;
    if m >= 2 {
        for k in 0..m {
            let s = KlrOperator::sigma_all(amb, k)?;
            if s.multiply(&z)? != z.multiply(&s)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::{DimVec, ThetaSequence};
    use crate::klr::Flavor;
    use crate::polyring::is_d_invariant;
    use crate::Rat;

    type Op = KlrOperator<Rat>;

    fn amb(s: &str) -> Arc<Ambient> {
        Ambient::new(s.parse::<DimVec>().unwrap(), Flavor::D).unwrap()
    }

    #[test]
    fn omega_fixes_generators_and_reverses() {
        let a = amb("p,p^-1,p,p^-1,p^3,p^-3");
        let t = PbwTable::new(&a);
        let s1 = Op::sigma_all(&a, 1).unwrap();
        let s2 = Op::sigma_all(&a, 2).unwrap();
        let s0 = Op::sigma_all(&a, 0).unwrap();
        let k1 = Op::kappa_all(&a, 1).unwrap();
        for g in [&s0, &s1, &s2, &k1] {
            assert_eq!(&omega(g, &t).unwrap(), g);
        }
        let x = &(&s1 * &k1) * &s2;
        let y = &(&s0 * &s1) * &k1;
        let xy = omega(&(&x * &y), &t).unwrap();
        let rev = &omega(&y, &t).unwrap() * &omega(&x, &t).unwrap();
        assert_eq!(xy, rev);
        assert_eq!(omega(&omega(&x, &t).unwrap(), &t).unwrap(), x);
    }

    #[test]
    fn gamma_swaps_s0_s1() {
        let a = amb("p,p^-1,p^3,p^-3");
        let s0 = Op::sigma_all(&a, 0).unwrap();
        let s1 = Op::sigma_all(&a, 1).unwrap();
        assert_eq!(gamma(&s0), s1);
        assert_eq!(gamma(&s1), s0);
        let k1 = Op::kappa_all(&a, 1).unwrap();
        assert_eq!(gamma(&k1), -&k1);
        let i: ThetaSequence = "p,p^3".parse().unwrap();
        assert_eq!(gamma(&Op::idempotent(&a, &i).unwrap()), Op::idempotent(&a, &i.eps1()).unwrap());
    }

    #[test]
    fn orbit_idempotents() {
        let a = amb("p,p^-1,p^3,p^-3");
        let plus = idempotent_pm::<Rat>(&a, 1).unwrap();
        let minus = idempotent_pm::<Rat>(&a, -1).unwrap();
        assert_eq!(&plus + &minus, Op::identity(&a));
        assert_eq!(gamma(&plus), minus);
        for k in 0..2 {
            let s = Op::sigma_all(&a, k).unwrap();
            assert_eq!(&plus * &s, &s * &plus);
        }
    }

    #[test]
    fn center() {
        let a = amb("p,p^-1,p,p^-1");
        let k1 = Poly::<Rat>::var(1);
        let k2 = Poly::<Rat>::var(2);
        let prod = &k1 * &k2;
        assert!(center_test(&a, &prod).unwrap());
        assert!(is_d_invariant(&prod, 2));
        assert!(!center_test(&a, &(&k1 + &k2)).unwrap());
        assert!(center_test(&a, &Poly::constant(Rat::from_int(5))).unwrap());
    }
}
