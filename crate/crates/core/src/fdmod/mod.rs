//! Finite-dimensional `°R_nu`-modules as block matrix data.
//!
//! A module is a family of blocks `1_i M` with `kappa_l` acting on each block
//! and `sigma_k` given as block maps `1_i M -> 1_{s_k(i)} M`. Blocks that are
//! not listed are zero; a missing `sigma_k` map is the zero map.

mod functors;
mod json;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ground::{orbit_split, DimVec, ThetaSequence};
use crate::klr::{braid_rhs, far_pair, kappa_sigma_constant, partner, quadratic_rhs, RelationFailure, RelationReport};
use crate::matrix::Matrix;
use crate::polyring::Poly;
use crate::weyl::{SPerm, MAX_RANK};

pub use functors::{e_functor, f_functor, f_functor_phi, Restricted};
pub use json::{BlockJson, ModuleJson, SigmaMapJson};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FDModule<F> {
    nu: DimVec,
    m: usize,
    dims: BTreeMap<ThetaSequence, usize>,
    kappa: Vec<BTreeMap<ThetaSequence, Matrix<F>>>,
    sigma: Vec<BTreeMap<ThetaSequence, Matrix<F>>>,
    grading: Option<BTreeMap<ThetaSequence, Vec<i32>>>,
}

/// Number of `sigma_k` at rank `m`.
pub(crate) fn sigma_count(m: usize) -> usize {
    if m >= 2 {
        m
    } else {
        0
    }
}

impl<F: Field> FDModule<F> {
    /// Validates shapes and membership; zero blocks are dropped and missing
    /// `kappa` blocks are filled with zeros.
    pub fn new(
        nu: DimVec,
        dims: BTreeMap<ThetaSequence, usize>,
        kappa: Vec<BTreeMap<ThetaSequence, Matrix<F>>>,
        sigma: Vec<BTreeMap<ThetaSequence, Matrix<F>>>,
        grading: Option<BTreeMap<ThetaSequence, Vec<i32>>>,
    ) -> Result<Self> {
        let m = nu.rank();
        if m == 0 || m > MAX_RANK {
            return Err(Error::OutOfRange(format!("module rank {m} outside 1..={MAX_RANK}")));
        }
        let dims: BTreeMap<_, _> = dims.into_iter().filter(|(_, d)| *d > 0).collect();
        for i in dims.keys() {
            if i.dimvec() != nu {
                return Err(Error::Invalid(format!("block {i} is not a sequence of {nu}")));
            }
        }
        if kappa.len() > m {
            return Err(Error::Invalid(format!("{} kappa families at rank {m}", kappa.len())));
        }
        if sigma.len() > sigma_count(m) {
            return Err(Error::Invalid(format!("{} sigma families at rank {m}", sigma.len())));
        }
        let d = |i: &ThetaSequence| dims.get(i).copied().unwrap_or(0);
        let mut kap = Vec::with_capacity(m);
        for l in 0..m {
            let given = kappa.get(l).cloned().unwrap_or_default();
            let mut fam = BTreeMap::new();
            for (i, x) in given {
                if x.rows() != d(&i) || x.cols() != d(&i) {
                    return Err(Error::Invalid(format!("kappa_{} on {i} has the wrong shape", l + 1)));
                }
                if d(&i) > 0 {
                    fam.insert(i, x);
                }
            }
            for (i, n) in &dims {
                fam.entry(*i).or_insert_with(|| Matrix::zeros(*n, *n));
            }
            kap.push(fam);
        }
        let mut sig = Vec::new();
        for k in 0..sigma_count(m) {
            let s = SPerm::generator(k, m)?;
            let given = sigma.get(k).cloned().unwrap_or_default();
            let mut fam = BTreeMap::new();
            for (i, x) in given {
                let t = s.act_on_sequence(&i);
                if x.rows() != d(&t) || x.cols() != d(&i) {
                    return Err(Error::Invalid(format!("sigma_{k} on {i} has the wrong shape")));
                }
                if !x.is_zero() {
                    fam.insert(i, x);
                }
            }
            sig.push(fam);
        }
        if let Some(g) = &grading {
            for (i, n) in &dims {
                if g.get(i).map(Vec::len) != Some(*n) {
                    return Err(Error::Invalid(format!("grading on {i} has the wrong length")));
                }
            }
        }
        Ok(FDModule { nu, m, dims, kappa: kap, sigma: sig, grading })
    }

    pub fn nu(&self) -> &DimVec {
        &self.nu
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn block_dim(&self, i: &ThetaSequence) -> usize {
        self.dims.get(i).copied().unwrap_or(0)
    }

    /// Nonzero blocks in sequence order.
    pub fn blocks(&self) -> impl Iterator<Item = (&ThetaSequence, usize)> {
        self.dims.iter().map(|(i, d)| (i, *d))
    }

    pub fn grading(&self) -> Option<&BTreeMap<ThetaSequence, Vec<i32>>> {
        self.grading.as_ref()
    }

    /// `kappa_l` on `1_i M`.
    pub fn kappa(&self, l: usize, i: &ThetaSequence) -> Matrix<F> {
        let n = self.block_dim(i);
        self.kappa[l - 1].get(i).cloned().unwrap_or_else(|| Matrix::zeros(n, n))
    }

    /// `kappa_x` for a signed position `x` (`kappa_{1-l} = -kappa_l`).
    pub fn kappa_at(&self, x: i32, i: &ThetaSequence) -> Matrix<F> {
        if x >= 1 {
            self.kappa(x as usize, i)
        } else {
            -&self.kappa((1 - x) as usize, i)
        }
    }

    /// `sigma_k : 1_i M -> 1_{s_k(i)} M`.
    pub fn sigma(&self, k: usize, i: &ThetaSequence) -> Matrix<F> {
        let t = SPerm::generator(k, self.m).expect("generator in range").act_on_sequence(i);
        self.sigma[k]
            .get(i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.block_dim(&t), self.block_dim(i)))
    }

    /// A polynomial in `kappa` evaluated on `1_i M`.
    pub fn eval_poly(&self, f: &Poly<F>, i: &ThetaSequence) -> Matrix<F> {
        let n = self.block_dim(i);
        let vals: Vec<Matrix<F>> = (1..=MAX_RANK)
            .map(|l| if l <= self.m { self.kappa(l, i) } else { Matrix::zeros(n, n) })
            .collect();
        f.eval_with(&vals, Matrix::identity(n), |a, b| a + b, |a, b| a * b, |c, a| a.scale(c), Matrix::zeros(n, n))
    }

    /// Applies `sigma_{k_1} ... sigma_{k_r}` (rightmost first) to `1_i M`.
    pub fn sigma_word(&self, word: &[usize], i: &ThetaSequence) -> (Matrix<F>, ThetaSequence) {
        let mut acc = Matrix::identity(self.block_dim(i));
        let mut cur = *i;
        for &k in word.iter().rev() {
            acc = &self.sigma(k, &cur) * &acc;
            cur = SPerm::generator(k, self.m).unwrap().act_on_sequence(&cur);
        }
        (acc, cur)
    }

    /// Offsets of the blocks in the concatenated basis.
    pub fn offsets(&self) -> BTreeMap<ThetaSequence, usize> {
        let mut off = 0;
        self.dims
            .iter()
            .map(|(i, d)| {
                let o = off;
                off += d;
                (*i, o)
            })
            .collect()
    }

    pub fn kappa_full(&self, l: usize) -> Matrix<F> {
        let off = self.offsets();
        let mut a = Matrix::zeros(self.dim(), self.dim());
        for i in self.dims.keys() {
            a.put(off[i], off[i], &self.kappa(l, i));
        }
        a
    }

    pub fn sigma_full(&self, k: usize) -> Matrix<F> {
        let off = self.offsets();
        let s = SPerm::generator(k, self.m).unwrap();
        let mut a = Matrix::zeros(self.dim(), self.dim());
        for (i, x) in &self.sigma[k] {
            a.put(off[&s.act_on_sequence(i)], off[i], x);
        }
        a
    }

    /// `i -> dim 1_i M`.
    pub fn character(&self) -> BTreeMap<ThetaSequence, usize> {
        self.dims.clone()
    }

    /// `i -> {degree: multiplicity}` when graded.
    pub fn graded_character(&self) -> Option<BTreeMap<ThetaSequence, BTreeMap<i32, usize>>> {
        let g = self.grading.as_ref()?;
        Some(
            g.iter()
                .map(|(i, ds)| {
                    let mut c = BTreeMap::new();
                    for d in ds {
                        *c.entry(*d).or_insert(0) += 1;
                    }
                    (*i, c)
                })
                .collect(),
        )
    }

    /// Total dimension of the blocks in the `+` and `-` orbit parts.
    pub fn orbit_parts(&self) -> Result<(usize, usize)> {
        let (plus, _) = orbit_split(&self.nu)?;
        let mut out = (0, 0);
        for (i, d) in &self.dims {
            if plus.binary_search(i).is_ok() {
                out.0 += d;
            } else {
                out.1 += d;
            }
        }
        Ok(out)
    }

    /// `Some(a)` when `1_{nu,-a} M = 0` and `M != 0`.
    pub fn supported_part(&self) -> Result<Option<i32>> {
        Ok(match self.orbit_parts()? {
            (0, 0) => None,
            (_, 0) => Some(1),
            (0, _) => Some(-1),
            _ => None,
        })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.nu != other.nu {
            return Err(Error::AmbientMismatch(format!("{} vs {}", self.nu, other.nu)));
        }
        let mut dims = self.dims.clone();
        for (i, d) in &other.dims {
            *dims.entry(*i).or_insert(0) += d;
        }
        let diag = |a: &Matrix<F>, b: &Matrix<F>| {
            let mut x = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
            x.put(0, 0, a);
            x.put(a.rows(), a.cols(), b);
            x
        };
        let kappa = (1..=self.m)
            .map(|l| dims.keys().map(|i| (*i, diag(&self.kappa(l, i), &other.kappa(l, i)))).collect())
            .collect();
        let sigma = (0..sigma_count(self.m))
            .map(|k| dims.keys().map(|i| (*i, diag(&self.sigma(k, i), &other.sigma(k, i)))).collect())
            .collect();
        let grading = match (&self.grading, &other.grading) {
            (Some(a), Some(b)) => Some(
                dims.keys()
                    .map(|i| {
                        let mut v = a.get(i).cloned().unwrap_or_default();
                        v.extend(b.get(i).cloned().unwrap_or_default());
                        (*i, v)
                    })
                    .collect(),
            ),
            _ => None,
        };
        FDModule::new(self.nu.clone(), dims, kappa, sigma, grading)
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> FDModule<G> {
        let conv = |fam: &BTreeMap<ThetaSequence, Matrix<F>>| fam.iter().map(|(i, x)| (*i, x.map(f))).collect();
        FDModule {
            nu: self.nu.clone(),
            m: self.m,
            dims: self.dims.clone(),
            kappa: self.kappa.iter().map(conv).collect(),
            sigma: self.sigma.iter().map(conv).collect(),
            grading: self.grading.clone(),
        }
    }

    /// Replaces one `sigma_k` block map (negative controls).
    pub fn with_sigma(&self, k: usize, i: &ThetaSequence, x: Matrix<F>) -> Result<Self> {
        let mut sigma = self.sigma.clone();
        sigma[k].insert(*i, x);
        FDModule::new(self.nu.clone(), self.dims.clone(), self.kappa.clone(), sigma, self.grading.clone())
    }
}

/// One-dimensional blocks on the type-D orbit of `i`, `kappa = 0` and
/// `sigma_k` permuting blocks. Requires labels that pairwise neither agree nor
/// share an arrow, so that every `Q` on the orbit is `1`.
pub fn permutation_module<F: Field>(i: &ThetaSequence) -> Result<FDModule<F>> {
    let h = i.half();
    for (a, &x) in h.iter().enumerate() {
        for (b, &y) in h.iter().enumerate() {
            if a == b {
                continue;
            }
            for z in [y, y.theta()] {
                if x == z || crate::ground::arrow_count(x, z) > 0 || crate::ground::arrow_count(z, x) > 0 {
                    return Err(Error::Invalid(format!("labels {x} and {z} of {i} interact")));
                }
            }
        }
    }
    let m = i.rank();
    let orbit = type_d_orbit(i);
    let dims: BTreeMap<_, _> = orbit.iter().map(|s| (*s, 1)).collect();
    let one = || Matrix::identity(1);
    let sigma = (0..sigma_count(m))
        .map(|_| orbit.iter().map(|s| (*s, one())).collect())
        .collect();
    let grading = Some(orbit.iter().map(|s| (*s, vec![0])).collect());
    FDModule::new(i.dimvec(), dims, Vec::new(), sigma, grading)
}

fn type_d_orbit(i: &ThetaSequence) -> Vec<ThetaSequence> {
    let m = i.rank();
    let mut seen = std::collections::BTreeSet::from([*i]);
    let mut stack = vec![*i];
    while let Some(s) = stack.pop() {
        for k in 0..sigma_count(m) {
            let t = SPerm::generator(k, m).unwrap().act_on_sequence(&s);
            if seen.insert(t) {
                stack.push(t);
            }
        }
    }
    seen.into_iter().collect()
}

/// `k[kappa_1]/(kappa_1^n)` on the rank-one block `(theta(j), j)`.
pub fn truncated_module<F: Field>(i: &ThetaSequence, n: usize) -> Result<FDModule<F>> {
    if i.rank() != 1 || n == 0 {
        return Err(Error::Invalid("truncated modules live at rank 1 with n >= 1".into()));
    }
    let mut k = Matrix::zeros(n, n);
    for r in 1..n {
        k.set(r, r - 1, F::one());
    }
    FDModule::new(
        i.dimvec(),
        BTreeMap::from([(*i, n)]),
        vec![BTreeMap::from([(*i, k)])],
        Vec::new(),
        Some(BTreeMap::from([(*i, (0..n as i32).map(|d| 2 * d).collect())])),
    )
}

/// Every relation instance as a matrix identity on each block, plus
/// nilpotency of each `kappa_l`.
pub fn check_fdmodule<F: Field>(md: &FDModule<F>) -> RelationReport {
    let m = md.m;
    let mut rep = RelationReport { nu: vec![md.nu.to_string()], ..Default::default() };
    let mut check = |name: &str, i: &ThetaSequence, k: Option<usize>, l: Option<usize>, ok: bool| {
        rep.instances += 1;
        if !ok {
            rep.failures.push(RelationFailure { relation: name.into(), seq: *i, k, l });
        }
    };
    let nk = sigma_count(m);
    for i in md.dims.keys() {
        let id = Matrix::<F>::identity(md.block_dim(i));
        for l in 1..=m {
            check("nilpotent", i, None, Some(l), md.kappa(l, i).is_nilpotent());
            for l2 in l + 1..=m {
                let (a, b) = (md.kappa(l, i), md.kappa(l2, i));
                check("b:kappa-commute", i, Some(l2), Some(l), &a * &b == &b * &a);
            }
        }
        for k in 0..nk {
            let (sq, _) = md.sigma_word(&[k, k], i);
            check("c:quadratic", i, Some(k), None, sq == md.eval_poly(&quadratic_rhs(i, k), i));
            for k2 in k + 1..nk {
                if far_pair(k, k2) {
                    let (a, _) = md.sigma_word(&[k, k2], i);
                    let (b, _) = md.sigma_word(&[k2, k], i);
                    check("d:far-commute", i, Some(k), Some(k2), a == b);
                }
            }
            if let Some(r) = braid_rhs::<F>(i, k) {
                let t = partner(k) as usize;
                let (a, ta) = md.sigma_word(&[t, k, t], i);
                let (b, _) = md.sigma_word(&[k, t, k], i);
                let lhs = &a - &b;
                let ok = if r.is_zero() { lhs.is_zero() } else { ta == *i && lhs == md.eval_poly(&r, i) };
                check("e:braid", i, Some(k), None, ok);
            }
            let s = SPerm::generator(k, m).unwrap();
            let si = s.act_on_sequence(i);
            let sk = md.sigma(k, i);
            for l in 1..=m {
                let lhs = &(&sk * &md.kappa(l, i)) - &(&md.kappa_at(s.apply_pos(l as i32), &si) * &sk);
                let c = kappa_sigma_constant(i, k, l);
                let ok = if c == 0 { lhs.is_zero() } else { si == *i && lhs == id.scale(&F::from_int(c)) };
                check("f:kappa-sigma", i, Some(k), Some(l), ok);
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;

    fn seq(s: &str) -> ThetaSequence {
        s.parse().unwrap()
    }

    #[test]
    fn one_dimensional_rank_one() {
        let md = permutation_module::<Rat>(&seq("p")).unwrap();
        assert_eq!(md.dim(), 1);
        assert!(check_fdmodule(&md).passed());
    }

    #[test]
    fn permutation_modules() {
        let md = permutation_module::<Rat>(&seq("p,p^5")).unwrap();
        assert_eq!(md.dim(), 4);
        let r = check_fdmodule(&md);
        assert!(r.passed(), "{:?}", r.failures);
        let i = seq("p,p^5");
        let (sq, _) = md.sigma_word(&[1, 1], &i);
        assert_eq!(sq, Matrix::identity(1));
        assert_eq!(md.supported_part().unwrap(), Some(1));
        assert!(permutation_module::<Rat>(&seq("p,p^3")).is_err());
        assert!(permutation_module::<Rat>(&seq("p,p^-1")).is_err());
        let big = permutation_module::<Rat>(&seq("p,p^5,p^9")).unwrap();
        assert_eq!(big.dim(), 24);
        assert!(check_fdmodule(&big).passed());
    }

    #[test]
    fn corrupted_sigma_fails_quadratic() {
        let md = permutation_module::<Rat>(&seq("p,p^5")).unwrap();
        let i = seq("p,p^5");
        let bad = md.with_sigma(1, &i, Matrix::scalar(1, Rat::from_int(2))).unwrap();
        let r = check_fdmodule(&bad);
        assert!(r.failures.iter().any(|f| f.relation == "c:quadratic"));
    }

    #[test]
    fn truncated() {
        for n in 1..=4 {
            let md = truncated_module::<Rat>(&seq("p^3"), n).unwrap();
            assert!(check_fdmodule(&md).passed());
            assert_eq!(md.dim(), n);
        }
    }
}
