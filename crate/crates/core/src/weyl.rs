//! Signed permutation groups `W_m` (type B) and their type-D subgroups.
//!
//! An element acts on the index set `{1-m, ..., m}`. We store the images of
//! `1..=m` as signed codes: a positive code `k` is the position `k`, a negative
//! code `-k` is the position `1-k`. With this encoding the action on the
//! polynomial generators is `w(kappa_l) = sign(code) * kappa_|code|`, which is
//! exactly the convention `kappa_{1-l} = -kappa_l`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ground::ThetaSequence;

/// Largest rank supported by the fixed-size representations.
pub const MAX_RANK: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SPerm {
    m: u8,
    img: [i8; MAX_RANK],
}

/// A Coxeter generator. Type-D words use `S(0..m)`, type-B words use `Eps1`
/// and `S(1..m)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Gen {
    S(u8),
    Eps1,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum GroupKind {
    /// The type-D subgroup generated by `s_0, ..., s_{m-1}`.
    D,
    /// The full signed permutation group generated by `eps_1, s_1, ..., s_{m-1}`.
    B,
}

impl SPerm {
    pub fn identity(m: usize) -> Self {
        assert!(m <= MAX_RANK, "rank {m} exceeds {MAX_RANK}");
        let mut img = [0i8; MAX_RANK];
        for (l, x) in img.iter_mut().enumerate().take(m) {
            *x = (l + 1) as i8;
        }
        SPerm { m: m as u8, img }
    }

    /// Builds from signed image codes; validates that absolute values form a
    /// permutation of `1..=m`.
    pub fn from_images(images: &[i32]) -> Result<Self> {
        let m = images.len();
        if m > MAX_RANK {
            return Err(Error::OutOfRange(format!("rank {m} exceeds {MAX_RANK}")));
        }
        let mut seen = vec![false; m];
        let mut img = [0i8; MAX_RANK];
        for (l, &c) in images.iter().enumerate() {
            let a = c.unsigned_abs() as usize;
            if a == 0 || a > m || seen[a - 1] {
                return Err(Error::Invalid(format!("not a signed permutation: {images:?}")));
            }
            seen[a - 1] = true;
            img[l] = c as i8;
        }
        Ok(SPerm { m: m as u8, img })
    }

    pub fn rank(&self) -> usize {
        self.m as usize
    }

    pub fn images(&self) -> Vec<i32> {
        self.img[..self.rank()].iter().map(|&c| c as i32).collect()
    }

    /// Signed code of the image of `l` (1-based).
    #[inline]
    pub fn code(&self, l: usize) -> i32 {
        self.img[l - 1] as i32
    }

    pub fn is_identity(&self) -> bool {
        *self == SPerm::identity(self.rank())
    }

    /// Simple reflection `s_k`; `s_0 = eps_1 s_1 eps_1`.
    pub fn generator(k: usize, m: usize) -> Result<Self> {
        if k >= m.max(1) || (k <= 1 && m < 2) {
            return Err(Error::OutOfRange(format!("generator s_{k} does not exist at rank {m}")));
        }
        let mut w = SPerm::identity(m);
        if k == 0 {
            w.img[0] = -2;
            w.img[1] = -1;
        } else {
            w.img.swap(k - 1, k);
        }
        Ok(w)
    }

    /// `eps_l`: swaps positions `l` and `1-l`.
    pub fn eps(l: usize, m: usize) -> Self {
        let mut w = SPerm::identity(m);
        w.img[l - 1] = -(l as i8);
        w
    }

    pub fn from_gen(g: Gen, m: usize) -> Result<Self> {
        match g {
            Gen::S(k) => SPerm::generator(k as usize, m),
            Gen::Eps1 => {
                if m == 0 {
                    Err(Error::OutOfRange("eps_1 at rank 0".into()))
                } else {
                    Ok(SPerm::eps(1, m))
                }
            }
        }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &SPerm) -> SPerm {
        debug_assert_eq!(self.m, other.m);
        let mut img = [0i8; MAX_RANK];
        for l in 0..self.rank() {
            let c = other.img[l];
            let a = c.unsigned_abs() as usize;
            let v = self.img[a - 1];
            img[l] = if c > 0 { v } else { -v };
        }
        SPerm { m: self.m, img }
    }

    pub fn inverse(&self) -> SPerm {
        let mut img = [0i8; MAX_RANK];
        for l in 0..self.rank() {
            let c = self.img[l];
            let a = c.unsigned_abs() as usize;
            img[a - 1] = if c > 0 { (l + 1) as i8 } else { -((l + 1) as i8) };
        }
        SPerm { m: self.m, img }
    }

    /// Image of a position `x` in `{1-m, ..., m}`.
    pub fn apply_pos(&self, x: i32) -> i32 {
        let decode = |c: i32| if c > 0 { c } else { 1 + c };
        if x >= 1 {
            decode(self.code(x as usize))
        } else {
            1 - decode(self.code((1 - x) as usize))
        }
    }

    /// Number of sign changes, i.e. negative codes.
    pub fn neg_count(&self) -> usize {
        self.img[..self.rank()].iter().filter(|&&c| c < 0).count()
    }

    /// Membership in the type-D subgroup.
    pub fn is_in_half(&self) -> bool {
        self.neg_count() % 2 == 0
    }

    fn inversions(&self) -> (usize, usize, usize) {
        let w = &self.img[..self.rank()];
        let mut inv = 0;
        let mut neg_pairs = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
                if (w[i] as i32) + (w[j] as i32) < 0 {
                    neg_pairs += 1;
                }
            }
        }
        (inv, neg_pairs, self.neg_count())
    }

    /// Coxeter length in `W_m` (type B, generators `eps_1, s_1, ...`).
    pub fn length_b(&self) -> usize {
        let (inv, neg_pairs, neg) = self.inversions();
        inv + neg_pairs + neg
    }

    /// Coxeter length in the type-D subgroup (generators `s_0, ..., s_{m-1}`).
    pub fn length_d(&self) -> usize {
        debug_assert!(self.is_in_half());
        let (inv, neg_pairs, _) = self.inversions();
        inv + neg_pairs
    }

    pub fn length(&self, kind: GroupKind) -> usize {
        match kind {
            GroupKind::D => self.length_d(),
            GroupKind::B => self.length_b(),
        }
    }

    /// Embeds into rank `m+1`, fixing the new position.
    pub fn embed(&self) -> SPerm {
        let mut w = *self;
        w.img[self.rank()] = (self.m + 1) as i8;
        w.m += 1;
        w
    }

    /// Action on a theta-sequence: `w(i) = i ∘ w^{-1}`.
    pub fn act_on_sequence(&self, seq: &ThetaSequence) -> ThetaSequence {
        assert_eq!(self.rank(), seq.rank(), "rank mismatch acting on a sequence");
        let inv = self.inverse();
        let half: Vec<_> = (1..=self.rank() as i32).map(|l| seq.entry(inv.apply_pos(l))).collect();
        ThetaSequence::from_half_unchecked(&half)
    }
}

impl fmt::Debug for SPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images())
    }
}

impl fmt::Display for SPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for SPerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SPerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i32>::deserialize(d)?;
        SPerm::from_images(&v).map_err(serde::de::Error::custom)
    }
}

/// Generators of the group of the given kind at rank `m`.
pub fn generators(kind: GroupKind, m: usize) -> Vec<Gen> {
    match kind {
        GroupKind::D if m >= 2 => (0..m as u8).map(Gen::S).collect(),
        GroupKind::D => Vec::new(),
        GroupKind::B if m >= 1 => {
            let mut g = vec![Gen::Eps1];
            g.extend((1..m as u8).map(Gen::S));
            g
        }
        GroupKind::B => Vec::new(),
    }
}

/// Evaluates a word (left to right product).
pub fn eval_word(word: &[Gen], m: usize) -> Result<SPerm> {
    let mut w = SPerm::identity(m);
    for &g in word {
        w = w.compose(&SPerm::from_gen(g, m)?);
    }
    Ok(w)
}

/// All elements, ordered by length and then by signed images.
pub fn enumerate(kind: GroupKind, m: usize) -> Vec<SPerm> {
    let gens: Vec<SPerm> =
        generators(kind, m).into_iter().map(|g| SPerm::from_gen(g, m).unwrap()).collect();
    let mut seen = BTreeSet::new();
    let e = SPerm::identity(m);
    seen.insert(e);
    let mut queue = VecDeque::from([e]);
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let x = w.compose(g);
            if seen.insert(x) {
                queue.push_back(x);
            }
        }
    }
    let mut all: Vec<SPerm> = seen.into_iter().collect();
    all.sort_by_key(|w| (w.length(kind), *w));
    all
}

/// Order of the group: `2^{m-1} m!` for type D (`m >= 1`), `2^m m!` for type B.
pub fn group_order(kind: GroupKind, m: usize) -> usize {
    let fact: usize = (1..=m).product();
    match kind {
        GroupKind::D if m <= 1 => 1,
        GroupKind::D => fact << (m - 1),
        GroupKind::B => fact << m,
    }
}

/// Rule for choosing reduced words.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum WordStrategy {
    /// Peel right descents, smallest generator first. The default table.
    SmallestFirst,
    /// Peel right descents, largest generator first.
    LargestFirst,
}

impl WordStrategy {
    pub fn name(self) -> &'static str {
        match self {
            WordStrategy::SmallestFirst => "right-descent-smallest-v1",
            WordStrategy::LargestFirst => "right-descent-largest-v1",
        }
    }

    /// Reads `KLRD_WORD_TABLE` (`smallest` or `largest`), defaulting to
    /// [`WordStrategy::SmallestFirst`].
    pub fn from_env() -> Self {
        match std::env::var("KLRD_WORD_TABLE").as_deref() {
            Ok("largest") => WordStrategy::LargestFirst,
            _ => WordStrategy::SmallestFirst,
        }
    }
}

fn gen_order(kind: GroupKind, m: usize, strategy: WordStrategy) -> Vec<Gen> {
    let mut g = generators(kind, m);
    if strategy == WordStrategy::LargestFirst {
        g.reverse();
    }
    g
}

/// Deterministic reduced word: `word(w) = word(w g) ++ [g]` where `g` is the
/// first right descent in strategy order.
pub fn reduced_word_with(w: &SPerm, kind: GroupKind, strategy: WordStrategy) -> Result<Vec<Gen>> {
    if kind == GroupKind::D && !w.is_in_half() {
        return Err(Error::Invalid(format!("{w} is not in the type-D subgroup")));
    }
    let m = w.rank();
    let gens: Vec<(Gen, SPerm)> = gen_order(kind, m, strategy)
        .into_iter()
        .map(|g| (g, SPerm::from_gen(g, m).unwrap()))
        .collect();
    let mut cur = *w;
    let mut rev = Vec::new();
    let mut len = cur.length(kind);
    while len > 0 {
        let (g, next) = gens
            .iter()
            .map(|(g, s)| (*g, cur.compose(s)))
            .find(|(_, x)| x.length(kind) < len)
            .expect("nonidentity element has a right descent");
        rev.push(g);
        cur = next;
        len -= 1;
    }
    rev.reverse();
    Ok(rev)
}

pub fn reduced_word(w: &SPerm, kind: GroupKind) -> Result<Vec<Gen>> {
    reduced_word_with(w, kind, WordStrategy::SmallestFirst)
}

/// Right descents `g` with `l(w g) < l(w)`.
pub fn right_descents(w: &SPerm, kind: GroupKind) -> Vec<Gen> {
    let m = w.rank();
    let l = w.length(kind);
    generators(kind, m)
        .into_iter()
        .filter(|&g| w.compose(&SPerm::from_gen(g, m).unwrap()).length(kind) < l)
        .collect()
}

/// Left descents `g` with `l(g w) < l(w)`.
pub fn left_descents(w: &SPerm, kind: GroupKind) -> Vec<Gen> {
    let m = w.rank();
    let l = w.length(kind);
    generators(kind, m)
        .into_iter()
        .filter(|&g| SPerm::from_gen(g, m).unwrap().compose(w).length(kind) < l)
        .collect()
}

/// Every reduced word of `w` (exponential; intended for small ranks).
pub fn all_reduced_words(w: &SPerm, kind: GroupKind) -> Vec<Vec<Gen>> {
    fn go(w: &SPerm, kind: GroupKind, memo: &mut HashMap<SPerm, Vec<Vec<Gen>>>) -> Vec<Vec<Gen>> {
        if let Some(v) = memo.get(w) {
            return v.clone();
        }
        let m = w.rank();
        let out = if w.length(kind) == 0 {
            vec![Vec::new()]
        } else {
            let mut out = Vec::new();
            for g in right_descents(w, kind) {
                let x = w.compose(&SPerm::from_gen(g, m).unwrap());
                for mut word in go(&x, kind, memo) {
                    word.push(g);
                    out.push(word);
                }
            }
            out
        };
        memo.insert(*w, out.clone());
        out
    }
    go(w, kind, &mut HashMap::new())
}

fn parabolic_gens(m: usize) -> Vec<usize> {
    // generators of W_m inside W_{m+1}
    if m >= 2 {
        (0..m).collect()
    } else {
        Vec::new()
    }
}

/// Minimal length representatives `D_{m,1}` of the right cosets
/// `W_m \ W_{m+1}` (type D): elements without left descents in `W_m`.
pub fn coset_reps_d_m1(m: usize) -> Result<Vec<SPerm>> {
    if m == 0 {
        return Err(Error::Invalid("coset representatives need m >= 1".into()));
    }
    let j = parabolic_gens(m);
    Ok(enumerate(GroupKind::D, m + 1)
        .into_iter()
        .filter(|x| {
            let l = x.length_d();
            j.iter().all(|&k| SPerm::generator(k, m + 1).unwrap().compose(x).length_d() > l)
        })
        .collect())
}

/// Minimal length representatives of the left cosets `W_{m+1} / W_m`
/// (the inverses of [`coset_reps_d_m1`]). `W_{m+1}` is a free right module
/// over the parabolic part with this basis, which is what induction needs.
pub fn left_coset_reps(m: usize) -> Result<Vec<SPerm>> {
    let mut v: Vec<SPerm> = coset_reps_d_m1(m)?.iter().map(|w| w.inverse()).collect();
    v.sort_by_key(|w| (w.length_d(), *w));
    Ok(v)
}

/// Splits `x` in `W_{m+1}` as `u w` with `u` in `W_m` and `w` in `D_{m,1}`.
pub fn factor_right_coset(x: &SPerm, reps: &[SPerm]) -> Option<(SPerm, SPerm)> {
    let m = x.rank() - 1;
    reps.iter().find_map(|w| {
        let u = x.compose(&w.inverse());
        let in_sub = u.code(m + 1) == (m + 1) as i32;
        in_sub.then_some((u, *w))
    })
}

/// The double coset representatives `{e, s_m, eps_{m+1} eps_1}` of
/// `W_m \ W_{m+1} / W_m` (type D), `m > 1`.
pub fn dmm_reps(m: usize) -> Result<Vec<SPerm>> {
    if m <= 1 {
        return Err(Error::Invalid(format!("double coset representatives need m > 1, got {m}")));
    }
    let n = m + 1;
    Ok(vec![
        SPerm::identity(n),
        SPerm::generator(m, n)?,
        SPerm::eps(n, n).compose(&SPerm::eps(1, n)),
    ])
}

/// Cached table of reduced words for every element of one group.
#[derive(Debug)]
pub struct WordTable {
    pub kind: GroupKind,
    pub m: usize,
    pub strategy: WordStrategy,
    pub elements: Vec<SPerm>,
    pub words: BTreeMap<SPerm, Vec<Gen>>,
}

impl WordTable {
    fn build(kind: GroupKind, m: usize, strategy: WordStrategy) -> Self {
        let elements = enumerate(kind, m);
        let words = elements
            .iter()
            .map(|w| (*w, reduced_word_with(w, kind, strategy).unwrap()))
            .collect();
        WordTable { kind, m, strategy, elements, words }
    }

    /// Shared, lazily built table.
    pub fn get(kind: GroupKind, m: usize, strategy: WordStrategy) -> Arc<WordTable> {
        type Cache = Mutex<HashMap<(GroupKind, usize, WordStrategy), Arc<WordTable>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().unwrap().get(&(kind, m, strategy)) {
            return t.clone();
        }
        let t = Arc::new(WordTable::build(kind, m, strategy));
        cache.lock().unwrap().entry((kind, m, strategy)).or_insert(t).clone()
    }

    pub fn word(&self, w: &SPerm) -> &[Gen] {
        &self.words[w]
    }

    /// Type-D table at rank `m >= 2` whose words split along
    /// `W_m = L * W_{m-1}`: `word(w u) = word(w) ++ word(u)` with `w` a minimal
    /// left coset representative and `u` in the parabolic subgroup.
    pub fn nested(m: usize, strategy: WordStrategy) -> Result<Arc<WordTable>> {
        if m < 2 {
            return Err(Error::Invalid(format!("nested word table needs m >= 2, got {m}")));
        }
        let outer = WordTable::get(GroupKind::D, m, strategy);
        let inner = WordTable::get(GroupKind::D, m - 1, strategy);
        let reps = left_coset_reps(m - 1)?;
        let mut words = BTreeMap::new();
        for w in &reps {
            for u in &inner.elements {
                let mut word = outer.word(w).to_vec();
                word.extend_from_slice(inner.word(u));
                words.insert(w.compose(&u.embed()), word);
            }
        }
        debug_assert_eq!(words.len(), outer.elements.len());
        Ok(Arc::new(WordTable { kind: GroupKind::D, m, strategy, elements: outer.elements.clone(), words }))
    }
}

impl SPerm {
    /// Drops the last position, which must be fixed.
    pub fn restrict(&self) -> Option<SPerm> {
        let m = self.rank();
        let im = self.images();
        (m >= 1 && im[m - 1] == m as i32).then(|| SPerm::from_images(&im[..m - 1]).ok()).flatten()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(v: &[i32]) -> SPerm {
        SPerm::from_images(v).unwrap()
    }

    #[test]
    fn generators_match_definition() {
        assert_eq!(SPerm::generator(1, 2).unwrap(), sp(&[2, 1]));
        assert_eq!(SPerm::generator(0, 2).unwrap(), sp(&[-2, -1]));
        let e1 = SPerm::eps(1, 2);
        let s1 = SPerm::generator(1, 2).unwrap();
        assert_eq!(e1.compose(&s1).compose(&e1), SPerm::generator(0, 2).unwrap());
        let s0 = SPerm::generator(0, 3).unwrap();
        assert!(s0.compose(&s0).is_identity());
        assert!(SPerm::generator(3, 3).is_err());
        assert!(SPerm::generator(0, 1).is_err());
    }

    #[test]
    fn s0_on_positions() {
        let s0 = SPerm::generator(0, 2).unwrap();
        assert_eq!(s0.apply_pos(1), -1);
        assert_eq!(s0.apply_pos(2), 0);
        assert_eq!(s0.apply_pos(0), 2);
        assert_eq!(s0.apply_pos(-1), 1);
    }

    #[test]
    fn orders_and_longest() {
        for (m, ord, longest) in [(2, 4, 2), (3, 24, 6), (4, 192, 12)] {
            let all = enumerate(GroupKind::D, m);
            assert_eq!(all.len(), ord);
            assert_eq!(all.len(), group_order(GroupKind::D, m));
            assert_eq!(all.last().unwrap().length_d(), longest);
        }
        assert_eq!(enumerate(GroupKind::B, 3).len(), 48);
    }

    #[test]
    fn length_matches_cayley_distance() {
        for kind in [GroupKind::D, GroupKind::B] {
            let m = 3;
            let gens: Vec<SPerm> =
                generators(kind, m).into_iter().map(|g| SPerm::from_gen(g, m).unwrap()).collect();
            let mut dist = HashMap::new();
            dist.insert(SPerm::identity(m), 0usize);
            let mut q = VecDeque::from([SPerm::identity(m)]);
            while let Some(w) = q.pop_front() {
                let d = dist[&w];
                for g in &gens {
                    let x = w.compose(g);
                    dist.entry(x).or_insert_with(|| {
                        q.push_back(x);
                        d + 1
                    });
                }
            }
            for (w, d) in dist {
                assert_eq!(w.length(kind), d, "{w}");
            }
        }
    }

    #[test]
    fn s0s1_has_length_two() {
        let w = SPerm::generator(0, 2).unwrap().compose(&SPerm::generator(1, 2).unwrap());
        assert_eq!(w.length_d(), 2);
        assert_eq!(reduced_word(&SPerm::identity(2), GroupKind::D).unwrap(), vec![]);
    }

    #[test]
    fn type_d_braid_relations() {
        let m = 4;
        let s = |k| SPerm::generator(k, m).unwrap();
        let braid = |a: SPerm, b: SPerm| a.compose(&b).compose(&a) == b.compose(&a).compose(&b);
        let commute = |a: SPerm, b: SPerm| a.compose(&b) == b.compose(&a);
        assert!(braid(s(1), s(2)));
        assert!(braid(s(2), s(3)));
        assert!(braid(s(0), s(2)));
        assert!(commute(s(0), s(1)));
        assert!(commute(s(0), s(3)));
        assert!(commute(s(1), s(3)));
        assert!(!SPerm::eps(1, m).is_in_half());
    }

    #[test]
    fn words_evaluate_and_are_reduced() {
        for strategy in [WordStrategy::SmallestFirst, WordStrategy::LargestFirst] {
            let t = WordTable::get(GroupKind::D, 3, strategy);
            for w in &t.elements {
                let word = t.word(w);
                assert_eq!(eval_word(word, 3).unwrap(), *w);
                assert_eq!(word.len(), w.length_d());
            }
            let t = WordTable::get(GroupKind::B, 3, strategy);
            for w in &t.elements {
                assert_eq!(eval_word(t.word(w), 3).unwrap(), *w);
            }
        }
        assert!(reduced_word(&SPerm::eps(1, 2), GroupKind::D).is_err());
    }

    #[test]
    fn coset_representatives() {
        assert_eq!(coset_reps_d_m1(1).unwrap().len(), 4);
        for m in 1..=4 {
            assert_eq!(coset_reps_d_m1(m).unwrap().len(), 2 * (m + 1));
        }
        // unique factorization with additive length at m = 2
        let reps = coset_reps_d_m1(2).unwrap();
        for x in enumerate(GroupKind::D, 3) {
            let mut count = 0;
            for w in &reps {
                let u = x.compose(&w.inverse());
                if u.code(3) == 3 {
                    count += 1;
                    assert_eq!(x.length_d(), u.length_d() + w.length_d());
                }
            }
            assert_eq!(count, 1);
        }
    }

    #[test]
    fn nested_words_for_left_cosets() {
        let m = 2;
        let small = WordTable::get(GroupKind::D, m, WordStrategy::SmallestFirst);
        let big = WordTable::get(GroupKind::D, m + 1, WordStrategy::SmallestFirst);
        for w in left_coset_reps(m).unwrap() {
            for u in &small.elements {
                let x = w.compose(&u.embed());
                let mut expect = big.word(&w).to_vec();
                expect.extend_from_slice(small.word(u));
                assert_eq!(big.word(&x), expect.as_slice());
            }
        }
    }

    #[test]
    fn double_coset_reps() {
        assert!(dmm_reps(1).is_err());
        let m = 2;
        let d = coset_reps_d_m1(m).unwrap();
        let reps = dmm_reps(m).unwrap();
        assert_eq!(reps[1], SPerm::generator(2, 3).unwrap());
        for w in reps {
            assert!(d.contains(&w));
            assert!(d.contains(&w.inverse()));
        }
    }

    #[test]
    fn all_words_of_longest_d3() {
        let w0 = *enumerate(GroupKind::D, 3).last().unwrap();
        let words = all_reduced_words(&w0, GroupKind::D);
        assert!(words.len() > 1);
        for word in words {
            assert_eq!(eval_word(&word, 3).unwrap(), w0);
        }
    }
}
