//! Elements of the type-D quiver Hecke algebra (and its type-B extension by
//! `pi_1`) realized as localized operators `sum f * 1_i * w` acting on
//! `⊕_i k[kappa_1..kappa_m] 1_i`.

mod expr;
mod generators;
mod json;
mod pbw;
mod relations;
mod structure;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ground::{sequences_of, DimVec, ThetaSequence};
use crate::polyring::{Poly, RatFn};
use crate::weyl::{GroupKind, SPerm, MAX_RANK};

pub use expr::{parse_expr, Expr};
pub use json::{OperatorJson, PbwJson, RatFnJson, TermJson};
pub use generators::{sigma_degree, word_degree_from_source, word_degree_from_target};
pub use pbw::{degrees_over_all_words, Degree, PbwForm, PbwSide, PbwTable};
pub use relations::{verify_relations, verify_relations_with, RelationFailure, RelationReport};
pub use structure::{center_test, gamma, idempotent_pm, omega};
pub(crate) use relations::{braid_rhs, far_pair, kappa_sigma_constant, partner, quadratic_rhs};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Flavor {
    /// `°R_nu`, Weyl group elements in the type-D subgroup.
    D,
    /// `θR_nu`, with `pi_1` and the full signed permutation group.
    B,
}

impl Flavor {
    pub fn group(self) -> GroupKind {
        match self {
            Flavor::D => GroupKind::D,
            Flavor::B => GroupKind::B,
        }
    }
}

/// Deliberate corruptions of a generator, used as negative controls.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mutation {
    /// Drop the `-c^{-1} 1_i` term of `sigma_k` when `i_k = i_{s_k(k)}`.
    DropSigmaCorrection,
    /// Double `sigma_k 1_i` when the neighbouring labels differ.
    DoubleSigma,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ambient {
    nu: DimVec,
    m: usize,
    flavor: Flavor,
    mutation: Option<Mutation>,
    seqs: Vec<ThetaSequence>,
}

impl Ambient {
    pub fn new(nu: DimVec, flavor: Flavor) -> Result<Arc<Self>> {
        let m = nu.rank();
        if m == 0 {
            return Err(Error::Invalid("the operator model needs m >= 1".into()));
        }
        if m > MAX_RANK {
            return Err(Error::OutOfRange(format!("rank {m} > {MAX_RANK}")));
        }
        let seqs = sequences_of(&nu);
        Ok(Arc::new(Ambient { nu, m, flavor, mutation: None, seqs }))
    }

    pub fn with_mutation(&self, mutation: Mutation) -> Arc<Self> {
        Arc::new(Ambient { mutation: Some(mutation), ..self.clone() })
    }

    pub fn nu(&self) -> &DimVec {
        &self.nu
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    pub fn sequences(&self) -> &[ThetaSequence] {
        &self.seqs
    }

    pub fn contains(&self, i: &ThetaSequence) -> bool {
        self.seqs.binary_search(i).is_ok()
    }

    pub(crate) fn check_seq(&self, i: &ThetaSequence) -> Result<()> {
        if self.contains(i) {
            Ok(())
        } else {
            Err(Error::Invalid(format!("{i} is not a sequence of {}", self.nu)))
        }
    }
}

/// Polynomials on each block `1_i`.
pub type BlockPoly<F> = BTreeMap<ThetaSequence, Poly<F>>;

type Key = (ThetaSequence, SPerm);

/// A finite sum of terms `f * 1_i * w`, keyed by the target sequence `i` and `w`.
#[derive(Clone)]
pub struct KlrOperator<F> {
    amb: Arc<Ambient>,
    terms: BTreeMap<Key, RatFn<F>>,
}

impl<F: Field> PartialEq for KlrOperator<F> {
    fn eq(&self, other: &Self) -> bool {
        self.amb.nu == other.amb.nu && self.amb.flavor == other.amb.flavor && self.terms == other.terms
    }
}

impl<F: Field> Eq for KlrOperator<F> {}

impl<F: Field> KlrOperator<F> {
    pub fn zero(amb: &Arc<Ambient>) -> Self {
        KlrOperator { amb: amb.clone(), terms: BTreeMap::new() }
    }

    /// Builds from raw terms; checks sequences and group membership.
    pub fn from_terms(
        amb: &Arc<Ambient>,
        terms: impl IntoIterator<Item = (ThetaSequence, SPerm, RatFn<F>)>,
    ) -> Result<Self> {
        let mut a = KlrOperator::zero(amb);
        for (i, w, f) in terms {
            amb.check_seq(&i)?;
            if w.rank() != amb.m {
                return Err(Error::AmbientMismatch(format!("{w} has rank {} not {}", w.rank(), amb.m)));
            }
            if amb.flavor == Flavor::D && !w.is_in_half() {
                return Err(Error::Invalid(format!("{w} is not in the type-D group")));
            }
            a.add_term(i, w, f);
        }
        Ok(a)
    }

    pub(crate) fn single(amb: &Arc<Ambient>, i: ThetaSequence, w: SPerm, f: RatFn<F>) -> Self {
        let mut a = KlrOperator::zero(amb);
        a.add_term(i, w, f);
        a
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.amb
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ThetaSequence, &SPerm, &RatFn<F>)> {
        self.terms.iter().map(|((i, w), f)| (i, w, f))
    }

    pub fn coeff(&self, i: &ThetaSequence, w: &SPerm) -> RatFn<F> {
        self.terms.get(&(*i, *w)).cloned().unwrap_or_default()
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

    pub(crate) fn add_term(&mut self, i: ThetaSequence, w: SPerm, f: RatFn<F>) {
        if f.is_zero() {
            return;
        }
        match self.terms.entry((i, w)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &f;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.amb.nu != other.amb.nu || self.amb.flavor != other.amb.flavor {
            return Err(Error::AmbientMismatch(format!(
                "{} ({:?}) vs {} ({:?})",
                self.amb.nu, self.amb.flavor, other.amb.nu, other.amb.flavor
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for ((i, w), f) in &other.terms {
            out.add_term(*i, *w, f.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = KlrOperator::zero(&self.amb);
        for ((i, w), f) in &self.terms {
            out.add_term(*i, *w, f.scale(c));
        }
        out
    }

    /// `g * self`, `g` acting by left multiplication on every block.
    pub fn left_mul(&self, g: &RatFn<F>) -> Self {
        let mut out = KlrOperator::zero(&self.amb);
        for ((i, w), f) in &self.terms {
            out.add_term(*i, *w, g * f);
        }
        out
    }

    /// `(f 1_i w)(g 1_j u) = f w(g) 1_i wu` when `w(j) = i`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut by_target: HashMap<ThetaSequence, Vec<(SPerm, &RatFn<F>)>> = HashMap::new();
        for ((j, u), g) in &other.terms {
            by_target.entry(*j).or_default().push((*u, g));
        }
        let mut out = KlrOperator::zero(&self.amb);
        for ((i, w), f) in &self.terms {
            let j = w.inverse().act_on_sequence(i);
            if let Some(v) = by_target.get(&j) {
                for (u, g) in v {
                    out.add_term(*i, w.compose(u), f * &g.weyl_act(w));
                }
            }
        }
        Ok(out)
    }

    /// Action on block polynomials. Fails if the result leaves the polynomial
    /// ring, which means `self` is not in the algebra.
    pub fn apply(&self, x: &BlockPoly<F>) -> Result<BlockPoly<F>> {
        let mut acc: BTreeMap<ThetaSequence, RatFn<F>> = BTreeMap::new();
        for ((i, w), f) in &self.terms {
            let j = w.inverse().act_on_sequence(i);
            if let Some(g) = x.get(&j) {
                let t = f.mul_poly(&g.weyl_act(w));
                let e = acc.entry(*i).or_default();
                *e = &*e + &t;
            }
        }
        let mut out = BlockPoly::new();
        for (i, r) in acc {
            if r.is_zero() {
                continue;
            }
            let p = r.into_poly().ok_or_else(|| {
                Error::NotInAlgebra(format!("non-polynomial output on block {i}"))
            })?;
            out.insert(i, p);
        }
        Ok(out)
    }

    /// Largest Weyl length in the support.
    pub fn max_length(&self) -> Option<usize> {
        let kind = self.amb.flavor.group();
        self.terms.keys().map(|(_, w)| w.length(kind)).max()
    }
}

impl<F: Field> Neg for &KlrOperator<F> {
    type Output = KlrOperator<F>;
    fn neg(self) -> KlrOperator<F> {
        KlrOperator {
            amb: self.amb.clone(),
            terms: self.terms.iter().map(|(k, f)| (*k, -f)).collect(),
        }
    }
}

impl<F: Field> Neg for KlrOperator<F> {
    type Output = KlrOperator<F>;
    fn neg(self) -> KlrOperator<F> {
        -&self
    }
}

/// Panicking operator forms for code that already checked the ambients.
impl<F: Field> Add for &KlrOperator<F> {
    type Output = KlrOperator<F>;
    fn add(self, rhs: &KlrOperator<F>) -> KlrOperator<F> {
        self.try_add(rhs).expect("ambient mismatch in +")
    }
}

impl<F: Field> Sub for &KlrOperator<F> {
    type Output = KlrOperator<F>;
    fn sub(self, rhs: &KlrOperator<F>) -> KlrOperator<F> {
        self.try_sub(rhs).expect("ambient mismatch in -")
    }
}

impl<F: Field> Mul for &KlrOperator<F> {
    type Output = KlrOperator<F>;
    fn mul(self, rhs: &KlrOperator<F>) -> KlrOperator<F> {
        self.multiply(rhs).expect("ambient mismatch in *")
    }
}

impl<F: Field> fmt::Display for KlrOperator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|((i, w), c)| format!("[{c}]*1_{i}*{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field> fmt::Debug for KlrOperator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
