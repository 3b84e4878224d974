//! `E_i` (restriction to blocks ending in `i`) and `F_i` (induction
//! `°R_{m+1} ⊗_{°R_{m,1}} (M ⊗ L_i)`).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ground::{ThetaSequence, Vertex};
use crate::klr::{word_degree_from_source, Ambient, Flavor, KlrOperator, PbwTable};
use crate::matrix::Matrix;
use crate::weyl::{left_coset_reps, Gen, SPerm, WordStrategy, WordTable};

use super::{sigma_count, FDModule};

/// Result of `E_i`: a module one rank down, or multiplicities of `phi_±`
/// when the input has rank one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restricted<F> {
    Phi { plus: usize, minus: usize },
    Module(Option<FDModule<F>>),
}

/// `E_i M = 1_{m-1,i} M`.
pub fn e_functor<F: Field>(md: &FDModule<F>, i: Vertex) -> Result<Restricted<F>> {
    let m = md.rank();
    if m == 1 {
        let one = |v: Vertex| md.block_dim(&ThetaSequence::from_half_unchecked(&[v]));
        return Ok(Restricted::Phi { plus: one(i), minus: one(i.theta()) });
    }
    let Some(nu) = md.nu().sub_pair(i) else {
        return Ok(Restricted::Module(None));
    };
    let keep: Vec<(ThetaSequence, ThetaSequence)> = md
        .blocks()
        .filter(|(s, _)| s.last() == Some(i))
        .map(|(s, _)| (*s, s.truncate()))
        .collect();
    if keep.is_empty() {
        return Ok(Restricted::Module(None));
    }
    let dims = keep.iter().map(|(s, t)| (*t, md.block_dim(s))).collect();
    let kappa = (1..m).map(|l| keep.iter().map(|(s, t)| (*t, md.kappa(l, s))).collect()).collect();
    let sigma = (0..sigma_count(m - 1))
        .map(|k| keep.iter().map(|(s, t)| (*t, md.sigma(k, s))).collect())
        .collect();
    let grading = md
        .grading()
        .map(|g| keep.iter().map(|(s, t)| (*t, g[s].clone())).collect());
    Ok(Restricted::Module(Some(FDModule::new(nu, dims, kappa, sigma, grading)?)))
}

/// `F_i(phi_+)` and `F_i(phi_-)`: the one-dimensional module at `(i)` or `(theta(i))`.
pub fn f_functor_phi<F: Field>(sign: i32, i: Vertex) -> Result<FDModule<F>> {
    let v = if sign > 0 { i } else { i.theta() };
    super::permutation_module(&ThetaSequence::from_half_unchecked(&[v]))
}

/// Basis slot of `F_i M`: coset representative index and source block of `M`.
type Slot = (usize, ThetaSequence);

/// `F_i M` with basis `sigma_w ⊗ 1_c M` for `w` among the minimal left coset
/// representatives of `W_{m+1} / W_m`.
pub fn f_functor<F: Field>(md: &FDModule<F>, i: Vertex) -> Result<FDModule<F>> {
    let m = md.rank();
    let n = m + 1;
    let nu1 = md.nu().add_pair(i);
    let amb = Ambient::new(nu1.clone(), Flavor::D)?;
    let words = WordTable::nested(n, WordStrategy::from_env())?;
    let table = PbwTable::<F>::with_words(&amb, words.clone())?;
    let reps = left_coset_reps(m)?;
    let pushed = |c: &ThetaSequence| c.push(i).expect("rank within bounds");

    // layout: slots grouped by the block w(c i) they live in
    let mut layout: BTreeMap<ThetaSequence, Vec<Slot>> = BTreeMap::new();
    for (wi, w) in reps.iter().enumerate() {
        for (c, _) in md.blocks() {
            layout.entry(w.act_on_sequence(&pushed(c))).or_default().push((wi, *c));
        }
    }
    let mut place: BTreeMap<Slot, (ThetaSequence, usize)> = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for (s, slots) in &layout {
        let mut off = 0;
        for sl in slots {
            place.insert(*sl, (*s, off));
            off += md.block_dim(&sl.1);
        }
        dims.insert(*s, off);
    }

    // splits u = w' u' with w' a representative and u' fixing position m+1
    let split = |u: &SPerm| -> Result<(usize, SPerm)> {
        for (wi, w) in reps.iter().enumerate() {
            if let Some(r) = w.inverse().compose(u).restrict() {
                return Ok((wi, r));
            }
        }
        Err(Error::Invalid(format!("{u} has no coset factorization")))
    };
    let inner_word = |u: &SPerm| -> Vec<usize> {
        if m < 2 {
            return Vec::new();
        }
        WordTable::get(crate::weyl::GroupKind::D, m, words.strategy)
            .word(u)
            .iter()
            .map(|g| match g {
                Gen::S(k) => *k as usize,
                Gen::Eps1 => unreachable!("type-D words"),
            })
            .collect()
    };

    // image of the slot (w, c) under an element g of °R_{m+1}
    let act = |g: &KlrOperator<F>, wi: usize, c: &ThetaSequence, out: &mut BTreeMap<ThetaSequence, Matrix<F>>| -> Result<()> {
        let j = pushed(c);
        let x = g.multiply(&*table.element(&reps[wi], &j)?)?;
        let form = table.decompose_right(&x)?;
        let (src_s, src_off) = place[&(wi, *c)];
        for ((u, jj), h) in &form.entries {
            debug_assert_eq!(*jj, j);
            let h = h.as_poly().ok_or_else(|| Error::NotInAlgebra(format!("coefficient {h} is not polynomial")))?;
            let h = h.set_zero(n);
            let (wi2, u2) = split(u)?;
            let (mat, c2) = md.sigma_word(&inner_word(&u2), c);
            let block = &mat * &md.eval_poly(&h, c);
            let (dst_s, dst_off) = place[&(wi2, c2)];
            let e = out.entry(src_s).or_insert_with(|| Matrix::zeros(dims[&dst_s], dims[&src_s]));
            let mut cur = e.submatrix(
                &(dst_off..dst_off + block.rows()).collect::<Vec<_>>(),
                &(src_off..src_off + block.cols()).collect::<Vec<_>>(),
            );
            cur = &cur + &block;
            e.put(dst_off, src_off, &cur);
        }
        Ok(())
    };

    let mut kappa = Vec::new();
    for l in 1..=n {
        let mut fam = BTreeMap::new();
        for (s, slots) in &layout {
            let g = KlrOperator::kappa(&amb, l, s)?;
            for (wi, c) in slots {
                act(&g, *wi, c, &mut fam)?;
            }
        }
        kappa.push(fam);
    }
    let mut sigma = Vec::new();
    for k in 0..n {
        let mut fam = BTreeMap::new();
        for (s, slots) in &layout {
            let g = KlrOperator::sigma(&amb, k, s)?;
            for (wi, c) in slots {
                act(&g, *wi, c, &mut fam)?;
            }
        }
        sigma.push(fam);
    }
    let grading = md.grading().map(|g| {
        layout
            .iter()
            .map(|(s, slots)| {
                let mut v = Vec::new();
                for (wi, c) in slots {
                    let d = word_degree_from_source(&pushed(c), words.word(&reps[*wi]));
                    v.extend(g[c].iter().map(|x| x + d));
                }
                (*s, v)
            })
            .collect()
    });
    FDModule::new(nu1, dims, kappa, sigma, grading)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdmod::{check_fdmodule, permutation_module, truncated_module};
    use crate::Rat;

    fn seq(s: &str) -> ThetaSequence {
        s.parse().unwrap()
    }

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    #[test]
    fn restriction_blocks() {
        let md = permutation_module::<Rat>(&seq("p,p^5")).unwrap();
        let Restricted::Module(Some(e)) = e_functor(&md, v("p^5")).unwrap() else { panic!() };
        assert_eq!(e.dim(), 1);
        assert!(check_fdmodule(&e).passed());
        assert_eq!(e_functor(&md, v("p^3")).unwrap(), Restricted::Module(None));
        let one = permutation_module::<Rat>(&seq("p")).unwrap();
        assert_eq!(e_functor(&one, v("p")).unwrap(), Restricted::Phi { plus: 1, minus: 0 });
        assert_eq!(e_functor(&one, v("p^-1")).unwrap(), Restricted::Phi { plus: 0, minus: 1 });
    }

    #[test]
    fn induction_dimensions_and_relations() {
        let one = permutation_module::<Rat>(&seq("p")).unwrap();
        for i in ["p", "p^-1", "p^3", "p^5"] {
            let f = f_functor(&one, v(i)).unwrap();
            assert_eq!(f.dim(), 4, "{i}");
            let r = check_fdmodule(&f);
            assert!(r.passed(), "{i}: {:?}", r.failures);
        }
        let t = truncated_module::<Rat>(&seq("p"), 2).unwrap();
        let f = f_functor(&t, v("p")).unwrap();
        assert_eq!(f.dim(), 8);
        assert!(check_fdmodule(&f).passed());
    }
}
