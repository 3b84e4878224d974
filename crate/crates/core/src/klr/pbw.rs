//! PBW elements `sigma_w 1_j` and triangular decomposition of operators over
//! them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ground::ThetaSequence;
use crate::polyring::RatFn;
use crate::weyl::{Gen, SPerm, WordStrategy, WordTable};

use super::generators::word_degree_from_source;
use super::{Ambient, KlrOperator};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum PbwSide {
    /// `sum g * sigma_w 1_j`.
    Left,
    /// `sum sigma_w * h * 1_j`.
    Right,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Degree {
    Zero,
    Homogeneous(i32),
    Inhomogeneous,
}

impl Degree {
    fn join(self, d: Option<i32>) -> Degree {
        match (self, d) {
            (Degree::Inhomogeneous, _) | (_, None) => Degree::Inhomogeneous,
            (Degree::Zero, Some(d)) => Degree::Homogeneous(d),
            (Degree::Homogeneous(a), Some(b)) if a == b => Degree::Homogeneous(a),
            _ => Degree::Inhomogeneous,
        }
    }
}

/// Coefficients over the PBW basis, keyed by `(w, j)` with `j` the source sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct PbwForm<F: Field> {
    pub side: PbwSide,
    pub strategy: WordStrategy,
    pub entries: BTreeMap<(SPerm, ThetaSequence), RatFn<F>>,
}

impl<F: Field> PbwForm<F> {
    /// All coefficients are polynomials.
    pub fn is_member(&self) -> bool {
        self.entries.values().all(RatFn::is_polynomial)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

type Cache<F> = Mutex<HashMap<(SPerm, ThetaSequence), Arc<KlrOperator<F>>>>;

/// Lazily expanded PBW elements for one ambient and one word table.
pub struct PbwTable<F> {
    amb: Arc<Ambient>,
    words: Arc<WordTable>,
    cache: Cache<F>,
}

impl<F: Field> PbwTable<F> {
    pub fn new(amb: &Arc<Ambient>) -> Self {
        PbwTable::with_strategy(amb, WordStrategy::from_env())
    }

    pub fn with_strategy(amb: &Arc<Ambient>, strategy: WordStrategy) -> Self {
        let words = WordTable::get(amb.flavor().group(), amb.rank(), strategy);
        PbwTable { amb: amb.clone(), words, cache: Mutex::new(HashMap::new()) }
    }

    /// Uses a caller-supplied word table for the same group and rank.
    pub fn with_words(amb: &Arc<Ambient>, words: Arc<WordTable>) -> Result<Self> {
        if words.kind != amb.flavor().group() || words.m != amb.rank() {
            return Err(Error::AmbientMismatch("word table does not match the ambient".into()));
        }
        Ok(PbwTable { amb: amb.clone(), words, cache: Mutex::new(HashMap::new()) })
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.amb
    }

    pub fn strategy(&self) -> WordStrategy {
        self.words.strategy
    }

    pub fn words(&self) -> &WordTable {
        &self.words
    }

    pub fn word(&self, w: &SPerm) -> Result<&[Gen]> {
        self.words
            .words
            .get(w)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Invalid(format!("{w} is not in the group of this ambient")))
    }

    /// `sigma_w 1_j`.
    pub fn element(&self, w: &SPerm, j: &ThetaSequence) -> Result<Arc<KlrOperator<F>>> {
        if let Some(x) = self.cache.lock().unwrap().get(&(*w, *j)) {
            return Ok(x.clone());
        }
        let x = Arc::new(KlrOperator::word_product(&self.amb, self.word(w)?, j)?);
        self.cache.lock().unwrap().insert((*w, *j), x.clone());
        Ok(x)
    }

    /// Coefficient of `1_{w(j)} w` in `sigma_w 1_j`.
    pub fn leading(&self, w: &SPerm, j: &ThetaSequence) -> Result<RatFn<F>> {
        let x = self.element(w, j)?;
        Ok(x.coeff(&w.act_on_sequence(j), w))
    }

    /// Degree of `sigma_w 1_j`.
    pub fn element_degree(&self, w: &SPerm, j: &ThetaSequence) -> Result<i32> {
        Ok(word_degree_from_source(j, self.word(w)?))
    }

    fn top_term(a: &KlrOperator<F>) -> Option<(ThetaSequence, SPerm, RatFn<F>)> {
        let kind = a.ambient().flavor().group();
        a.terms()
            .max_by_key(|(i, w, _)| (w.length(kind), **w, **i))
            .map(|(i, w, f)| (*i, *w, f.clone()))
    }

    pub fn decompose(&self, a: &KlrOperator<F>, side: PbwSide) -> Result<PbwForm<F>> {
        if a.ambient().nu() != self.amb.nu() || a.ambient().flavor() != self.amb.flavor() {
            return Err(Error::AmbientMismatch("operator and PBW table differ".into()));
        }
        let mut rest = a.clone();
        let mut entries: BTreeMap<(SPerm, ThetaSequence), RatFn<F>> = BTreeMap::new();
        while let Some((i, u, f)) = Self::top_term(&rest) {
            let j = u.inverse().act_on_sequence(&i);
            let c = self.leading(&u, &j)?;
            let q = f.checked_div(&c)?;
            let sub = match side {
                PbwSide::Left => {
                    let x = self.element(&u, &j)?.left_mul(&q);
                    let e = entries.entry((u, j)).or_default();
                    *e = &*e + &q;
                    x
                }
                PbwSide::Right => {
                    let h = q.weyl_act(&u.inverse());
                    let hj = KlrOperator::single(&self.amb, j, SPerm::identity(self.amb.rank()), h.clone());
                    let x = self.element(&u, &j)?.multiply(&hj)?;
                    let e = entries.entry((u, j)).or_default();
                    *e = &*e + &h;
                    x
                }
            };
            rest = rest.try_sub(&sub)?;
        }
        entries.retain(|_, g| !g.is_zero());
        Ok(PbwForm { side, strategy: self.strategy(), entries })
    }

    pub fn decompose_left(&self, a: &KlrOperator<F>) -> Result<PbwForm<F>> {
        self.decompose(a, PbwSide::Left)
    }

    pub fn decompose_right(&self, a: &KlrOperator<F>) -> Result<PbwForm<F>> {
        self.decompose(a, PbwSide::Right)
    }

    pub fn reconstruct(&self, form: &PbwForm<F>) -> Result<KlrOperator<F>> {
        let mut out = KlrOperator::zero(&self.amb);
        let e = SPerm::identity(self.amb.rank());
        for ((w, j), g) in &form.entries {
            let x = self.element(w, j)?;
            let t = match form.side {
                PbwSide::Left => x.left_mul(g),
                PbwSide::Right => x.multiply(&KlrOperator::single(&self.amb, *j, e, g.clone()))?,
            };
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// Membership in the (non-localized) algebra.
    pub fn is_member(&self, a: &KlrOperator<F>) -> Result<bool> {
        Ok(self.decompose_left(a)?.is_member())
    }

    /// Grading through the left PBW form.
    pub fn degree(&self, a: &KlrOperator<F>) -> Result<Degree> {
        let form = self.decompose_left(a)?;
        let mut d = Degree::Zero;
        for ((w, j), g) in &form.entries {
            let e = self.element_degree(w, j)?;
            d = d.join(g.degree().map(|x| x + e));
        }
        Ok(d)
    }
}

/// Sets of degrees of `1_i sigma_w` over every reduced word of `w`, computed
/// by splitting off a left descent.
pub fn degrees_over_all_words(
    w: &SPerm,
    i: &ThetaSequence,
    memo: &mut HashMap<(SPerm, ThetaSequence), Vec<i32>>,
) -> Vec<i32> {
    use crate::weyl::{left_descents, GroupKind};
    if let Some(v) = memo.get(&(*w, *i)) {
        return v.clone();
    }
    let m = w.rank();
    let out = if w.length_d() == 0 {
        vec![0]
    } else {
        let mut set = std::collections::BTreeSet::new();
        for g in left_descents(w, GroupKind::D) {
            let s = SPerm::from_gen(g, m).unwrap();
            let Gen::S(k) = g else { unreachable!() };
            let si = s.act_on_sequence(i);
            let d0 = super::generators::sigma_degree(&si, k as usize);
            for d in degrees_over_all_words(&s.compose(w), &si, memo) {
                set.insert(d0 + d);
            }
        }
        set.into_iter().collect()
    };
    memo.insert((*w, *i), out.clone());
    out
}
