//! Modules over the affine Hecke algebra `H_m` of type D, and the transport
//! `Psi` from nilpotent `°R_m`-modules with `f(kappa) = 1 + kappa`.
//!
//! `X_l` acts on `1_i M` as `i_l^{-1}(1 + kappa_l)`. `T_k` is assembled per
//! source block from a `sigma_k` part and a diagonal correction; the
//! coefficient in front of `sigma_k` is a function of `kappa` evaluated on the
//! target block.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fdmod::{e_functor, FDModule, Restricted};
use crate::field::{Field, ParamField};
use crate::ground::{arrow_count, ThetaSequence, Vertex};
use crate::klr::{far_pair, partner};
use crate::matrix::Matrix;
use crate::weyl::SPerm;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeckeModule<F> {
    m: usize,
    x: Vec<Matrix<F>>,
    t: Vec<Matrix<F>>,
    blocks: Vec<(ThetaSequence, usize)>,
}

impl<F: Field> HeckeModule<F> {
    /// `x[l-1] = X_l`, `t[k] = T_k`; `t` is empty for `m = 1`.
    pub fn new(x: Vec<Matrix<F>>, t: Vec<Matrix<F>>, blocks: Vec<(ThetaSequence, usize)>) -> Result<Self> {
        let m = x.len();
        if m == 0 {
            return Err(Error::Invalid("no X generators".into()));
        }
        let want = if m >= 2 { m } else { 0 };
        if t.len() != want {
            return Err(Error::Invalid(format!("expected {want} T generators, got {}", t.len())));
        }
        let n = x[0].rows();
        if x.iter().chain(&t).any(|a| a.rows() != n || a.cols() != n) {
            return Err(Error::Invalid(format!("all generators must be {n}x{n}")));
        }
        if !blocks.is_empty() && blocks.iter().map(|b| b.1).sum::<usize>() != n {
            return Err(Error::Invalid("block dimensions do not add up".into()));
        }
        Ok(HeckeModule { m, x, t, blocks })
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.x[0].rows()
    }

    pub fn x(&self, l: usize) -> &Matrix<F> {
        &self.x[l - 1]
    }

    pub fn t(&self, k: usize) -> &Matrix<F> {
        &self.t[k]
    }

    /// Block labels inherited from the KLR side, in basis order.
    pub fn blocks(&self) -> &[(ThetaSequence, usize)] {
        &self.blocks
    }

    pub fn with_t(&self, k: usize, a: Matrix<F>) -> Result<Self> {
        let mut t = self.t.clone();
        *t.get_mut(k).ok_or_else(|| Error::OutOfRange(format!("no T_{k} at rank {}", self.m)))? = a;
        HeckeModule::new(self.x.clone(), t, self.blocks.clone())
    }

    /// `X_x` for a signed position, `X_{1-l} = X_l^{-1}`.
    fn x_at(&self, x: i32) -> Result<Matrix<F>> {
        if x >= 1 {
            Ok(self.x(x as usize).clone())
        } else {
            self.x((1 - x) as usize)
                .inverse()
                .ok_or_else(|| Error::Invalid(format!("X_{} is singular", 1 - x)))
        }
    }
}

/// The series `f` with `f(kappa) = 1 + kappa mod kappa^2` used by `Psi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KappaFn {
    /// `1 + kappa`.
    Linear,
    /// `(2 + kappa)/(2 - kappa)`, which satisfies `f(-kappa) = f(kappa)^{-1}`.
    Cayley,
}

impl KappaFn {
    /// `f(x)` for a nilpotent matrix `x`.
    pub fn eval<F: Field>(self, x: &Matrix<F>) -> Matrix<F> {
        let id = Matrix::identity(x.rows());
        match self {
            KappaFn::Linear => &id + x,
            KappaFn::Cayley => {
                let two = id.scale(&F::from_int(2));
                &(&two + x) * &(&two - x).inverse().expect("2 - nilpotent is invertible")
            }
        }
    }

    /// `(x - y)/(f(x) - f(y))` for commuting nilpotent `x`, `y`.
    pub fn quotient<F: Field>(self, x: &Matrix<F>, y: &Matrix<F>) -> Matrix<F> {
        let id = Matrix::identity(x.rows());
        match self {
            KappaFn::Linear => id,
            KappaFn::Cayley => {
                let two = id.scale(&F::from_int(2));
                (&(&two - x) * &(&two - y)).scale(&F::from_int(4).inv())
            }
        }
    }
}

/// `Psi(M)` with `f(kappa) = 1 + kappa`.
pub fn psi_transport<F: ParamField>(md: &FDModule<F>) -> Result<HeckeModule<F>> {
    psi_transport_with(md, KappaFn::Linear)
}

/// `Psi(M)`: `X_l = i_l^{-1} f(kappa_l)` and `T_k` by the three-case rule,
/// with `kappa_0 = -kappa_1` and `i_0 = i_1^{-1}`.
pub fn psi_transport_with<F: ParamField>(md: &FDModule<F>, f: KappaFn) -> Result<HeckeModule<F>> {
    let m = md.rank();
    let n = md.dim();
    let off = md.offsets();
    let p = F::p_pow(1);
    let pinv = F::p_pow(-1);
    let mut x = vec![Matrix::zeros(n, n); m];
    for (i, _) in md.blocks() {
        for (l, xl) in x.iter_mut().enumerate() {
            let fl = f.eval(&md.kappa(l + 1, i));
            xl.put(off[i], off[i], &fl.scale(&F::vertex_value(i.entry(l as i32 + 1)).inv()));
        }
    }
    let count = if m >= 2 { m } else { 0 };
    let mut t = Vec::with_capacity(count);
    let inv = |a: &Matrix<F>| a.inverse().ok_or_else(|| Error::Invalid("correction matrix is singular".into()));
    let range = |b: &ThetaSequence| (off[b]..off[b] + md.block_dim(b)).collect::<Vec<_>>();
    for k in 0..count {
        let s = SPerm::generator(k, m)?;
        let kt = partner(k);
        let mut tk = Matrix::zeros(n, n);
        for (i, d) in md.blocks() {
            let j = s.act_on_sequence(i);
            let (ik, it) = (i.entry(k as i32), i.entry(kt));
            let (vk, vt) = (F::vertex_value(ik), F::vertex_value(it));
            // kappa_k, kappa_t and their images under f on a block
            let ks = |b: &ThetaSequence| {
                let (a, c) = (md.kappa_at(k as i32, b), md.kappa_at(kt, b));
                (f.eval(&a), f.eval(&c), a, c)
            };
            let (fk_t, ft_t, kk_t, kt_t) = ks(&j);
            let (fk, ft, _, _) = ks(i);
            let lin = |a: &F, x: &Matrix<F>, b: &F, y: &Matrix<F>| &x.scale(a) - &y.scale(b);
            let (coef, corr) = if it == ik {
                let c = &lin(&p, &fk_t, &pinv, &ft_t) * &f.quotient(&kk_t, &kt_t);
                (c, Matrix::scalar(d, p.clone()))
            } else if arrow_count(it, ik) == 1 {
                let c = inv(&(&lin(&pinv, &fk_t, &p, &ft_t) * &f.quotient(&kk_t, &kt_t)))?;
                let r = &ft * &inv(&lin(&p, &fk, &pinv, &ft))?;
                (c, r.scale(&(F::p_pow(-2) - F::one())))
            } else {
                let num = lin(&(p.clone() * vk.clone()), &fk_t, &(pinv.clone() * vt.clone()), &ft_t);
                let c = &num * &inv(&lin(&vk, &fk_t, &vt, &ft_t))?;
                let r = &ft * &inv(&lin(&vt, &fk, &vk, &ft))?;
                (c, r.scale(&((pinv.clone() - p.clone()) * vk.clone())))
            };
            if md.block_dim(&j) > 0 {
                let cur = tk.submatrix(&range(&j), &range(i));
                tk.put(off[&j], off[i], &(&cur + &(&coef * &md.sigma(k, i))));
            }
            let cur = tk.submatrix(&range(i), &range(i));
            tk.put(off[i], off[i], &(&cur + &corr));
        }
        t.push(tk);
    }
    HeckeModule::new(x, t, md.blocks().map(|(i, d)| (*i, d)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeFailure {
    pub relation: String,
    pub k: Option<usize>,
    pub l: Option<usize>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct HeckeReport {
    pub instances: usize,
    pub failures: Vec<HeckeFailure>,
}

impl HeckeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, relation: &str, k: Option<usize>, l: Option<usize>, ok: bool) {
        self.instances += 1;
        if !ok {
            self.failures.push(HeckeFailure { relation: relation.into(), k, l });
        }
    }
}

/// Defining relations of `H_m` as matrix identities.
pub fn check_hecke<F: ParamField>(h: &HeckeModule<F>) -> HeckeReport {
    let m = h.m;
    let mut rep = HeckeReport::default();
    let p = F::p_pow(1);
    let n = h.dim();
    for l in 1..=m {
        rep.record("a:invertible", None, Some(l), h.x(l).inverse().is_some());
        for l2 in l + 1..=m {
            rep.record("a:commute", Some(l2), Some(l), h.x(l) * h.x(l2) == h.x(l2) * h.x(l));
        }
    }
    for k in 0..h.t.len() {
        let tk = h.t(k);
        let q = &(tk - &Matrix::scalar(n, p.clone())) * &(tk + &Matrix::scalar(n, F::p_pow(-1)));
        rep.record("c:quadratic", Some(k), None, q.is_zero());
        let kt = partner(k) as usize;
        if kt < m {
            let tt = h.t(kt);
            rep.record("b:braid", Some(k), Some(kt), &(tk * tt) * tk == &(tt * tk) * tt);
        }
        for k2 in k + 1..m {
            if far_pair(k, k2) {
                let t2 = h.t(k2);
                rep.record("b:commute", Some(k), Some(k2), tk * t2 == t2 * tk);
            }
        }
        if k == 0 {
            let xi = h.x(1).inverse();
            rep.record("d:t0", Some(0), Some(1), xi.is_some_and(|xi| &(tk * &xi) * tk == *h.x(2)));
        } else {
            rep.record("d:tk", Some(k), Some(k), &(tk * h.x(k)) * tk == *h.x(k + 1));
        }
        for l in 1..=m {
            let moves = if k == 0 { l == 1 || l == 2 } else { l == k || l == k + 1 };
            if !moves {
                rep.record("d:commute", Some(k), Some(l), tk * h.x(l) == h.x(l) * tk);
            }
        }
    }
    rep
}

/// `phi_k = 1 + (X_k - X_t)(p X_k - p^{-1} X_t)^{-1}(T_k - p)` with `t = s_k(k)`.
pub fn intertwiner<F: ParamField>(h: &HeckeModule<F>, k: usize) -> Result<Matrix<F>> {
    if h.m < 2 || k >= h.m {
        return Err(Error::OutOfRange(format!("no intertwiner phi_{k} at rank {}", h.m)));
    }
    let n = h.dim();
    let xk = h.x_at(k as i32)?;
    let xt = h.x_at(partner(k))?;
    let den = &xk.scale(&F::p_pow(1)) - &xt.scale(&F::p_pow(-1));
    let den = den.inverse().ok_or_else(|| Error::Invalid(format!("p X_{k} - p^-1 X_{} is singular", partner(k))))?;
    let t = h.t(k) - &Matrix::scalar(n, F::p_pow(1));
    Ok(&Matrix::identity(n) + &(&(&(&xk - &xt) * &den) * &t))
}

/// `s_k(X_l)` as a matrix on `h`.
pub fn reflected_x<F: ParamField>(h: &HeckeModule<F>, k: usize, l: usize) -> Result<Matrix<F>> {
    let s = SPerm::generator(k, h.m)?;
    h.x_at(s.apply_pos(l as i32))
}

/// `phi_k X_l = s_k(X_l) phi_k` for every `l`.
pub fn check_intertwiner<F: ParamField>(h: &HeckeModule<F>, k: usize) -> Result<HeckeReport> {
    let phi = intertwiner(h, k)?;
    let mut rep = HeckeReport::default();
    for l in 1..=h.m {
        let lhs = &phi * h.x(l);
        let rhs = &reflected_x(h, k, l)? * &phi;
        rep.record("intertwiner", Some(k), Some(l), lhs == rhs);
    }
    Ok(rep)
}

/// Generalized `i^{-1}`-eigenspace of `X_m`, as columns.
pub fn hecke_e_functor<F: ParamField>(h: &HeckeModule<F>, i: Vertex) -> Matrix<F> {
    h.x(h.m).generalized_eigenspace(&F::vertex_value(i).inv())
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct BranchingReport {
    pub vertex: String,
    pub eigenspace_dim: usize,
    pub carrier_dim: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl BranchingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, what: String, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push(what);
        }
    }
}

/// Compares `E_i` on both sides of `Psi`: the generalized `i^{-1}`-eigenspace of
/// `X_m` against the blocks ending in `i`, and the restricted `H_{m-1}`-action
/// against `Psi(E_i M)`.
pub fn compare_branching<F: ParamField>(md: &FDModule<F>, i: Vertex) -> Result<BranchingReport> {
    compare_branching_with(md, i, KappaFn::Linear)
}

pub fn compare_branching_with<F: ParamField>(md: &FDModule<F>, i: Vertex, f: KappaFn) -> Result<BranchingReport> {
    let h = psi_transport_with(md, f)?;
    let m = md.rank();
    let off = md.offsets();
    let carrier: Vec<usize> = md
        .blocks()
        .filter(|(s, _)| s.last() == Some(i))
        .flat_map(|(s, d)| off[s]..off[s] + d)
        .collect();
    let coords: Vec<Vec<F>> = carrier
        .iter()
        .map(|&c| (0..h.dim()).map(|r| if r == c { F::one() } else { F::zero() }).collect())
        .collect();
    let carrier_m = Matrix::from_cols(h.dim(), &coords);
    let eig = hecke_e_functor(&h, i);
    let mut rep = BranchingReport {
        vertex: i.to_string(),
        eigenspace_dim: eig.cols(),
        carrier_dim: carrier.len(),
        ..Default::default()
    };
    rep.record("eigenspace equals block carrier".into(), eig.same_column_space(&carrier_m));
    match e_functor(md, i)? {
        Restricted::Phi { plus, .. } => {
            rep.record("rank-one multiplicity".into(), plus == carrier.len());
        }
        Restricted::Module(None) => {
            rep.record("empty restriction".into(), carrier.is_empty());
        }
        Restricted::Module(Some(e)) => {
            let he = psi_transport_with(&e, f)?;
            // carrier coordinates in the order of the blocks of E_i M
            let idx: Vec<usize> = e
                .blocks()
                .flat_map(|(s, d)| {
                    let o = off[&s.push(i).expect("rank in range")];
                    o..o + d
                })
                .collect();
            rep.record("carrier matches E_i blocks".into(), idx.len() == carrier.len());
            let rest: Vec<usize> = (0..h.dim()).filter(|r| !carrier.contains(r)).collect();
            let mut restricted = |name: String, a: &Matrix<F>, b: &Matrix<F>| {
                let stable = a.submatrix(&rest, &idx).is_zero();
                rep.record(format!("{name} preserves the carrier"), stable);
                rep.record(format!("{name} matches Psi(E_i M)"), a.submatrix(&idx, &idx) == *b);
            };
            for l in 1..m {
                restricted(format!("X_{l}"), h.x(l), he.x(l));
            }
            for k in 0..he.t.len() {
                restricted(format!("T_{k}"), h.t(k), he.t(k));
            }
        }
    }
    Ok(rep)
}

/// `X[l-1]` and `T[k]` as dense text matrices, blocks in basis order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeJson {
    pub m: usize,
    pub blocks: Vec<HeckeBlockJson>,
    #[serde(rename = "X")]
    pub x: Vec<Vec<Vec<String>>>,
    #[serde(rename = "T")]
    pub t: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeBlockJson {
    pub seq: ThetaSequence,
    pub dim: usize,
}

impl HeckeJson {
    pub fn from_module<F: Field>(h: &HeckeModule<F>) -> Self {
        HeckeJson {
            m: h.m,
            blocks: h.blocks.iter().map(|(seq, dim)| HeckeBlockJson { seq: *seq, dim: *dim }).collect(),
            x: h.x.iter().map(Matrix::to_text).collect(),
            t: h.t.iter().map(Matrix::to_text).collect(),
        }
    }

    pub fn to_module<F: Field>(&self) -> Result<HeckeModule<F>> {
        let parse = |key: &str, v: &[Vec<Vec<String>>]| -> Result<Vec<Matrix<F>>> {
            v.iter()
                .enumerate()
                .map(|(n, rows)| Matrix::from_text(rows).map_err(|e| Error::Parse(format!("/{key}/{n}: {e}"))))
                .collect()
        };
        let x = parse("X", &self.x)?;
        if x.len() != self.m {
            return Err(Error::Parse(format!("/X: expected {} matrices", self.m)));
        }
        HeckeModule::new(x, parse("T", &self.t)?, self.blocks.iter().map(|b| (b.seq, b.dim)).collect())
    }
}

/// Block labels of `h` with their `X`-eigenvalues `i_l^{-1}`, for display.
pub fn x_eigenvalues<F: ParamField>(h: &HeckeModule<F>) -> BTreeMap<ThetaSequence, Vec<F>> {
    h.blocks
        .iter()
        .map(|(s, _)| (*s, (1..=h.m).map(|l| F::vertex_value(s.entry(l as i32)).inv()).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdmod::{check_fdmodule, permutation_module, truncated_module};
    use crate::Qp;

    fn seq(s: &str) -> ThetaSequence {
        s.parse().unwrap()
    }

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    #[test]
    fn rank_one_scalar() {
        let md = permutation_module::<Qp>(&seq("p^3")).unwrap();
        let h = psi_transport(&md).unwrap();
        assert_eq!(*h.x(1), Matrix::scalar(1, Qp::p_pow(-3)));
        assert!(check_hecke(&h).passed());
        assert!(intertwiner(&h, 0).is_err());
    }

    #[test]
    fn truncated_is_unipotent_times_scalar() {
        let md = truncated_module::<Qp>(&seq("p"), 3).unwrap();
        let h = psi_transport(&md).unwrap();
        let u = h.x(1).scale(&Qp::p_pow(1));
        assert!((&u - &Matrix::identity(3)).is_nilpotent());
        assert!(check_hecke(&h).passed());
    }

    #[test]
    fn permutation_rank_two() {
        let md = permutation_module::<Qp>(&seq("p,p^5")).unwrap();
        let h = psi_transport(&md).unwrap();
        let r = check_hecke(&h);
        assert!(r.passed(), "{:?}", r.failures);
        // the T_1 coefficients on the block (p, p^5)
        let off = md.offsets();
        let (a, b) = (&seq("p,p^5"), &seq("p^5,p"));
        let (i1, i2) = (Qp::p_pow(1), Qp::p_pow(5));
        let p = Qp::p();
        let coef = (p.clone() * i1.clone() - p.inv() * i2.clone()) / (i1.clone() - i2.clone());
        let corr = (p.inv() - p) * i1.clone() / (i2 - i1);
        assert_eq!(*h.t(1).get(off[b], off[a]), coef);
        assert_eq!(*h.t(1).get(off[a], off[a]), corr);
        for k in 0..2 {
            assert!(check_intertwiner(&h, k).unwrap().passed());
        }
        let phi = intertwiner(&h, 1).unwrap();
        let pi = phi.inverse().unwrap();
        assert_eq!(&(&phi * h.x(1)) * &pi, *h.x(2));
        let phi0 = intertwiner(&h, 0).unwrap();
        let x1i = h.x(1).inverse().unwrap();
        assert_eq!(&(&phi0 * &x1i) * &phi0.inverse().unwrap(), *h.x(2));
        assert!(intertwiner(&h, 2).is_err());
    }

    #[test]
    fn perturbed_t0_fails() {
        let md = permutation_module::<Qp>(&seq("p,p^5")).unwrap();
        let h = psi_transport(&md).unwrap();
        let mut t0 = h.t(0).clone();
        let x = t0.get(0, 0).clone() + Qp::from_int(3);
        t0.set(0, 0, x);
        let bad = h.with_t(0, t0).unwrap();
        let r = check_hecke(&bad);
        assert!(r.failures.iter().any(|f| f.relation.starts_with("d:")), "{:?}", r.failures);
    }

    #[test]
    fn branching_on_permutation_module() {
        let md = permutation_module::<Qp>(&seq("p,p^5,p^9")).unwrap();
        assert!(check_fdmodule(&md).passed());
        assert!(check_hecke(&psi_transport(&md).unwrap()).passed());
        for i in ["p", "p^-1", "p^5", "p^-5", "p^9", "p^-9", "p^3"] {
            let r = compare_branching(&md, v(i)).unwrap();
            assert!(r.passed(), "{i}: {:?}", r.failures);
        }
    }

    #[test]
    fn json_round_trip() {
        let md = permutation_module::<Qp>(&seq("p,p^5")).unwrap();
        let h = psi_transport(&md).unwrap();
        let j = HeckeJson::from_module(&h);
        let back: HeckeJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back.to_module::<Qp>().unwrap(), h);
    }
}
