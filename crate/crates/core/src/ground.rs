//! Vertex labels `±p^n` (n odd), the quiver attached to them, dimension
//! vectors and theta-symmetric sequences.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::{self, GroupKind, SPerm, MAX_RANK};

/// The scalar `sign * p^exponent`. Ordered by sign, then exponent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    sign: i8,
    exponent: i32,
}

impl Vertex {
    pub fn new(sign: i32, exponent: i32) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::Invalid(format!("vertex sign must be ±1, got {sign}")));
        }
        if exponent % 2 == 0 {
            return Err(Error::Invalid(format!("vertex exponent must be odd, got {exponent}")));
        }
        Ok(Vertex { sign: sign as i8, exponent })
    }

    pub fn sign(&self) -> i32 {
        self.sign as i32
    }

    pub fn exponent(&self) -> i32 {
        self.exponent
    }

    pub fn theta(&self) -> Vertex {
        Vertex { sign: self.sign, exponent: -self.exponent }
    }
}

pub fn make_vertex(sign: i32, exponent: i32) -> Result<Vertex> {
    Vertex::new(sign, exponent)
}

pub fn theta_vertex(i: Vertex) -> Vertex {
    i.theta()
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign > 0 { '+' } else { '-' };
        write!(f, "{s}p^{}", self.exponent)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Vertex {
    type Err = Error;

    /// Accepts `+p^-3`, `-p^5`, `p^1`, `p`, `-p`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (sign, rest) = match t.as_bytes().first() {
            Some(b'+') => (1, &t[1..]),
            Some(b'-') => (-1, &t[1..]),
            _ => (1, t),
        };
        let bad = || Error::Parse(format!("bad vertex `{s}`, expected [+|-]p^<odd>"));
        let exp = match rest.strip_prefix('p').ok_or_else(bad)? {
            "" => 1,
            e => e.strip_prefix('^').ok_or_else(bad)?.parse::<i32>().map_err(|_| bad())?,
        };
        Vertex::new(sign, exp).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for Vertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Number of arrows `i -> j`; the only arrows are `p^2 j -> j`.
pub fn arrow_count(i: Vertex, j: Vertex) -> u32 {
    (i.sign == j.sign && i.exponent == j.exponent + 2) as u32
}

pub fn cartan_product(i: Vertex, j: Vertex) -> i32 {
    if i == j {
        2
    } else {
        -(arrow_count(i, j) as i32) - (arrow_count(j, i) as i32)
    }
}

/// `Q_{i,j}(u,v)`: zero, or `sign * (u - v)^power`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QPoly {
    Zero,
    Power { sign: i32, power: u32 },
}

pub fn q_polynomial(i: Vertex, j: Vertex) -> QPoly {
    if i == j {
        return QPoly::Zero;
    }
    let sign = if arrow_count(i, j) % 2 == 0 { 1 } else { -1 };
    QPoly::Power { sign, power: (-cartan_product(i, j)) as u32 }
}

/// The finite sub-quiver spanned by a set of labels and their theta images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverData {
    pub vertices: BTreeSet<Vertex>,
}

impl QuiverData {
    pub fn spanned_by(labels: &[Vertex]) -> Self {
        let vertices = labels.iter().flat_map(|v| [*v, v.theta()]).collect();
        QuiverData { vertices }
    }

    /// Arrows `(source, goal)`.
    pub fn arrows(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for &i in &self.vertices {
            for &j in &self.vertices {
                if arrow_count(i, j) == 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Theta-symmetric dimension vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DimVec {
    mult: BTreeMap<Vertex, u32>,
}

impl DimVec {
    pub fn new(mult: BTreeMap<Vertex, u32>) -> Result<Self> {
        let mult: BTreeMap<Vertex, u32> = mult.into_iter().filter(|(_, n)| *n > 0).collect();
        for (v, n) in &mult {
            if mult.get(&v.theta()).copied().unwrap_or(0) != *n {
                return Err(Error::Invalid(format!(
                    "dimension vector is not theta-symmetric at {v}"
                )));
            }
        }
        Ok(DimVec { mult })
    }

    /// Multiset of vertices; must be theta-symmetric.
    pub fn from_vertices(vs: &[Vertex]) -> Result<Self> {
        let mut mult = BTreeMap::new();
        for v in vs {
            *mult.entry(*v).or_insert(0) += 1;
        }
        DimVec::new(mult)
    }

    /// `sum_l (i_l + theta(i_l))` over a right half.
    pub fn from_half(half: &[Vertex]) -> Self {
        let mut mult = BTreeMap::new();
        for v in half {
            *mult.entry(*v).or_insert(0) += 1;
            *mult.entry(v.theta()).or_insert(0) += 1;
        }
        DimVec { mult }
    }

    pub fn zero() -> Self {
        DimVec::default()
    }

    pub fn get(&self, v: Vertex) -> u32 {
        self.mult.get(&v).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.mult.iter().map(|(v, n)| (*v, *n))
    }

    pub fn size(&self) -> u32 {
        self.mult.values().sum()
    }

    pub fn rank(&self) -> usize {
        (self.size() / 2) as usize
    }

    /// `self + i + theta(i)`.
    pub fn add_pair(&self, i: Vertex) -> DimVec {
        let mut d = self.clone();
        *d.mult.entry(i).or_insert(0) += 1;
        *d.mult.entry(i.theta()).or_insert(0) += 1;
        d
    }

    /// `self - i - theta(i)`, if nonnegative.
    pub fn sub_pair(&self, i: Vertex) -> Option<DimVec> {
        let mut d = self.clone();
        for v in [i, i.theta()] {
            let n = d.mult.get_mut(&v)?;
            if *n == 0 {
                return None;
            }
            *n -= 1;
            if *n == 0 {
                d.mult.remove(&v);
            }
        }
        Some(d)
    }

    /// Bilinear extension of the Cartan product.
    pub fn dot(&self, other: &DimVec) -> i64 {
        let mut s = 0i64;
        for (i, a) in self.support() {
            for (j, b) in other.support() {
                s += a as i64 * b as i64 * cartan_product(i, j) as i64;
            }
        }
        s
    }

    /// `self . v` for a single vertex `v`.
    pub fn dot_vertex(&self, v: Vertex) -> i64 {
        self.support().map(|(i, a)| a as i64 * cartan_product(i, v) as i64).sum()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.support().flat_map(|(v, n)| std::iter::repeat(v).take(n as usize)).collect()
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mult.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .support()
            .map(|(v, n)| if n == 1 { v.to_string() } else { format!("{n}*{v}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for DimVec {
    type Err = Error;

    /// Comma separated vertex list, repeated entries adding multiplicity.
    fn from_str(s: &str) -> Result<Self> {
        let vs = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Vertex>>>()?;
        DimVec::from_vertices(&vs)
    }
}

impl Serialize for DimVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DimVec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let vs = Vec::<Vertex>::deserialize(d)?;
        DimVec::from_vertices(&vs).map_err(serde::de::Error::custom)
    }
}

const FILLER: Vertex = Vertex { sign: 1, exponent: 1 };

/// A theta-symmetric sequence, stored through its right half `(i_1, ..., i_m)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaSequence {
    m: u8,
    half: [Vertex; MAX_RANK],
}

impl ThetaSequence {
    pub fn from_half(half: &[Vertex]) -> Result<Self> {
        if half.len() > MAX_RANK {
            return Err(Error::OutOfRange(format!("sequence length {} > {MAX_RANK}", half.len())));
        }
        Ok(Self::from_half_unchecked(half))
    }

    pub(crate) fn from_half_unchecked(half: &[Vertex]) -> Self {
        let mut h = [FILLER; MAX_RANK];
        h[..half.len()].copy_from_slice(half);
        ThetaSequence { m: half.len() as u8, half: h }
    }

    pub fn rank(&self) -> usize {
        self.m as usize
    }

    pub fn half(&self) -> &[Vertex] {
        &self.half[..self.rank()]
    }

    /// Entry at position `x` in `{1-m, ..., m}`.
    pub fn entry(&self, x: i32) -> Vertex {
        if x >= 1 {
            self.half[x as usize - 1]
        } else {
            self.half[(-x) as usize].theta()
        }
    }

    /// Full sequence `(i_{1-m}, ..., i_m)`.
    pub fn full(&self) -> Vec<Vertex> {
        let m = self.rank() as i32;
        (1 - m..=m).map(|x| self.entry(x)).collect()
    }

    pub fn last(&self) -> Option<Vertex> {
        self.half().last().copied()
    }

    pub fn dimvec(&self) -> DimVec {
        DimVec::from_half(self.half())
    }

    /// `(i_1, ..., i_m, j)`.
    pub fn push(&self, j: Vertex) -> Result<ThetaSequence> {
        let mut v = self.half().to_vec();
        v.push(j);
        ThetaSequence::from_half(&v)
    }

    /// Drops `i_m`.
    pub fn truncate(&self) -> ThetaSequence {
        ThetaSequence::from_half_unchecked(&self.half()[..self.rank().saturating_sub(1)])
    }

    /// Image under `eps_1`.
    pub fn eps1(&self) -> ThetaSequence {
        let mut h = self.half().to_vec();
        if let Some(x) = h.first_mut() {
            *x = x.theta();
        }
        ThetaSequence::from_half_unchecked(&h)
    }
}

impl fmt::Display for ThetaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.half().iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for ThetaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ThetaSequence {
    type Err = Error;

    /// Right half as a comma separated list, optionally parenthesised.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let vs = t
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Vertex>>>()?;
        ThetaSequence::from_half(&vs)
    }
}

impl Serialize for ThetaSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.half().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ThetaSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let vs = Vec::<Vertex>::deserialize(d)?;
        ThetaSequence::from_half(&vs).map_err(serde::de::Error::custom)
    }
}

/// Every `nu` of rank `m` built from pairs `i + theta(i)` with `i` in `labels`.
pub fn dimvecs_of_rank(labels: &[Vertex], m: usize) -> Vec<DimVec> {
    let pairs: Vec<Vertex> = labels
        .iter()
        .map(|v| if v.exponent() > 0 { *v } else { v.theta() })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    fn go(pairs: &[Vertex], m: usize, from: usize, cur: &mut Vec<Vertex>, out: &mut Vec<DimVec>) {
        if cur.len() == m {
            out.push(DimVec::from_half(cur));
            return;
        }
        for k in from..pairs.len() {
            cur.push(pairs[k]);
            go(pairs, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&pairs, m, 0, &mut Vec::new(), &mut out);
    out
}

/// All sequences with entry multiset `nu`, in lexicographic order of right halves.
pub fn sequences_of(nu: &DimVec) -> Vec<ThetaSequence> {
    let m = nu.rank();
    // budget per theta-pair, keyed by the smaller member
    let mut budget: BTreeMap<Vertex, u32> = BTreeMap::new();
    for (v, n) in nu.support() {
        budget.insert(v.min(v.theta()), n);
    }
    let verts: Vec<Vertex> = nu.support().map(|(v, _)| v).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn go(
        m: usize,
        verts: &[Vertex],
        budget: &mut BTreeMap<Vertex, u32>,
        cur: &mut Vec<Vertex>,
        out: &mut Vec<ThetaSequence>,
    ) {
        if cur.len() == m {
            out.push(ThetaSequence::from_half_unchecked(cur));
            return;
        }
        for &v in verts {
            let key = v.min(v.theta());
            if budget[&key] == 0 {
                continue;
            }
            *budget.get_mut(&key).unwrap() -= 1;
            cur.push(v);
            go(m, verts, budget, cur, out);
            cur.pop();
            *budget.get_mut(&key).unwrap() += 1;
        }
    }
    go(m, &verts, &mut budget, &mut cur, &mut out);
    out
}

/// Splits the sequences of `nu` into the two type-D orbits; the `+` part holds
/// the lexicographically smallest sequence.
pub fn orbit_split(nu: &DimVec) -> Result<(Vec<ThetaSequence>, Vec<ThetaSequence>)> {
    let m = nu.rank();
    if m == 0 {
        return Err(Error::Invalid("orbit split needs m >= 1".into()));
    }
    if m > MAX_RANK {
        return Err(Error::OutOfRange(format!("rank {m} > {MAX_RANK}")));
    }
    let all = sequences_of(nu);
    let gens: Vec<SPerm> = weyl::generators(GroupKind::D, m)
        .into_iter()
        .map(|g| SPerm::from_gen(g, m).unwrap())
        .collect();
    let start = all[0];
    let mut plus = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for g in &gens {
            let t = g.act_on_sequence(&s);
            if plus.insert(t) {
                queue.push_back(t);
            }
        }
    }
    let minus: Vec<ThetaSequence> = all.iter().filter(|s| !plus.contains(s)).copied().collect();
    if minus.len() != plus.len() {
        return Err(Error::Invalid(format!(
            "orbit split of {nu} is not a pair of equal orbits ({} vs {})",
            plus.len(),
            minus.len()
        )));
    }
    Ok((plus.into_iter().collect(), minus))
}

/// Which part of the orbit split contains `seq`: `+1` or `-1`.
pub fn orbit_sign(seq: &ThetaSequence) -> Result<i32> {
    let (plus, _) = orbit_split(&seq.dimvec())?;
    Ok(if plus.binary_search(seq).is_ok() { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    #[test]
    fn vertices() {
        let p = make_vertex(1, 1).unwrap();
        assert_eq!(p.theta(), make_vertex(1, -1).unwrap());
        assert!(make_vertex(-1, 2).is_err());
        assert_eq!(theta_vertex(v("-p^3")), v("-p^-3"));
        assert_eq!(v("-p^-5").theta().theta(), v("-p^-5"));
        assert_eq!(v("p"), p);
        assert_eq!(v("+p^-3").to_string(), "+p^-3");
        assert!("q^1".parse::<Vertex>().is_err());
        assert!("+p^2".parse::<Vertex>().is_err());
    }

    #[test]
    fn arrows_and_cartan() {
        assert_eq!(arrow_count(v("p^3"), v("p")), 1);
        assert_eq!(arrow_count(v("p"), v("p^3")), 0);
        assert_eq!(arrow_count(v("p"), v("-p")), 0);
        assert_eq!(cartan_product(v("p"), v("p")), 2);
        assert_eq!(cartan_product(v("p"), v("p^3")), -1);
        assert_eq!(cartan_product(v("p"), v("p^5")), 0);
        assert_eq!(q_polynomial(v("p"), v("p")), QPoly::Zero);
        assert_eq!(q_polynomial(v("p"), v("p^5")), QPoly::Power { sign: 1, power: 0 });
        assert_eq!(q_polynomial(v("p"), v("p^3")), QPoly::Power { sign: 1, power: 1 });
        assert_eq!(q_polynomial(v("p^3"), v("p")), QPoly::Power { sign: -1, power: 1 });
        // theta is a quiver involution
        let q = QuiverData::spanned_by(&[v("p"), v("p^3"), v("-p^5")]);
        for (a, b) in q.arrows() {
            assert_eq!(arrow_count(b.theta(), a.theta()), 1);
        }
    }

    #[test]
    fn rank_enumeration() {
        let labels: Vec<Vertex> = ["p", "-p", "p^3", "-p^3", "p^5", "-p^5", "p^-1"]
            .iter()
            .map(|x| x.parse().unwrap())
            .collect();
        assert_eq!(dimvecs_of_rank(&labels, 1).len(), 6);
        assert_eq!(dimvecs_of_rank(&labels, 3).len(), 56);
        assert!(dimvecs_of_rank(&labels, 2).iter().all(|n| n.rank() == 2));
    }

    #[test]
    fn sequences() {
        let nu: DimVec = "+p^1,+p^-1".parse().unwrap();
        let s = sequences_of(&nu);
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].half(), &[v("p^-1")]);
        let nu: DimVec = "p,p^-1,p^3,p^-3".parse().unwrap();
        assert_eq!(sequences_of(&nu).len(), 8);
        assert!("p,p^-1,p^3".parse::<DimVec>().is_err());
        assert!("p,p".parse::<DimVec>().is_err());
    }

    #[test]
    fn sequence_positions() {
        let s: ThetaSequence = "(+p^1,+p^5)".parse().unwrap();
        assert_eq!(s.entry(0), v("p^-1"));
        assert_eq!(s.entry(-1), v("p^-5"));
        assert_eq!(s.full(), vec![v("p^-5"), v("p^-1"), v("p"), v("p^5")]);
        let s0 = SPerm::generator(0, 2).unwrap();
        assert_eq!(s0.act_on_sequence(&s).half(), &[v("p^-5"), v("p^-1")]);
        let s1 = SPerm::generator(1, 2).unwrap();
        assert_eq!(s1.act_on_sequence(&s).half(), &[v("p^5"), v("p")]);
        assert_eq!(SPerm::eps(1, 2).act_on_sequence(&s), s.eps1());
    }

    #[test]
    fn orbits() {
        let nu: DimVec = "p,p^-1".parse().unwrap();
        let (plus, minus) = orbit_split(&nu).unwrap();
        assert_eq!(plus[0].half(), &[v("p^-1")]);
        assert_eq!(minus[0].half(), &[v("p")]);
        let nu: DimVec = "p,p^-1,p^3,p^-3".parse().unwrap();
        let (plus, minus) = orbit_split(&nu).unwrap();
        assert_eq!((plus.len(), minus.len()), (4, 4));
        for s in &plus {
            assert!(minus.contains(&s.eps1()));
        }
        assert!(orbit_split(&DimVec::zero()).is_err());
        let nu: DimVec = "p,p^-1,p,p^-1,p^3,p^-3".parse().unwrap();
        let (plus, minus) = orbit_split(&nu).unwrap();
        assert_eq!(plus.len(), minus.len());
    }
}
