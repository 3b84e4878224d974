//! Graded dimensions of idempotent truncations `1_b °R_nu 1_a` and the
//! e/f, ind/res identities they satisfy.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ground::{orbit_sign, sequences_of, DimVec, ThetaSequence, Vertex};
use crate::klr::word_degree_from_source;
use crate::polyring::Series;
use crate::weyl::{left_coset_reps, GroupKind, SPerm, WordStrategy, WordTable};

/// Default truncation order.
pub const DEFAULT_ORDER: i32 = 12;

/// An indecomposable-by-idempotent projective: `°R_nu 1_a`, or `phi_±` at rank 0.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Proj {
    Phi(i8),
    Seq(ThetaSequence),
}

impl Proj {
    pub fn phi_plus() -> Self {
        Proj::Phi(1)
    }

    pub fn phi_minus() -> Self {
        Proj::Phi(-1)
    }

    pub fn rank(&self) -> usize {
        match self {
            Proj::Phi(_) => 0,
            Proj::Seq(s) => s.rank(),
        }
    }

    pub fn nu(&self) -> DimVec {
        match self {
            Proj::Phi(_) => DimVec::zero(),
            Proj::Seq(s) => s.dimvec(),
        }
    }

    /// `theta(j) a j`; at rank 0, `phi_+ -> (j)` and `phi_- -> (theta(j))`.
    pub fn push(&self, j: Vertex) -> Proj {
        match self {
            Proj::Phi(s) if *s > 0 => Proj::Seq(ThetaSequence::from_half_unchecked(&[j])),
            Proj::Phi(_) => Proj::Seq(ThetaSequence::from_half_unchecked(&[j.theta()])),
            Proj::Seq(a) => Proj::Seq(a.push(j).expect("rank within bounds")),
        }
    }

    /// Symbol of the gamma-twist.
    pub fn gamma(&self) -> Proj {
        match self {
            Proj::Phi(s) => Proj::Phi(-s),
            Proj::Seq(a) => Proj::Seq(a.eps1()),
        }
    }

    /// Orbit part containing the symbol.
    pub fn orbit_sign(&self) -> Result<i32> {
        match self {
            Proj::Phi(s) => Ok(*s as i32),
            Proj::Seq(a) => orbit_sign(a),
        }
    }

    /// Every symbol of rank `nu.rank()` with dimension vector `nu`.
    pub fn all_of(nu: &DimVec) -> Vec<Proj> {
        if nu.rank() == 0 {
            vec![Proj::Phi(1), Proj::Phi(-1)]
        } else {
            sequences_of(nu).into_iter().map(Proj::Seq).collect()
        }
    }
}

impl fmt::Display for Proj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Proj::Phi(s) if *s > 0 => write!(f, "phi+"),
            Proj::Phi(_) => write!(f, "phi-"),
            Proj::Seq(a) => write!(f, "{a}"),
        }
    }
}

impl std::str::FromStr for Proj {
    type Err = Error;

    /// `phi+`, `phi-`, or a right half such as `p,p^3`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "phi+" => Ok(Proj::Phi(1)),
            "phi-" => Ok(Proj::Phi(-1)),
            t => Ok(Proj::Seq(t.parse()?)),
        }
    }
}

fn check_pair(b: &ThetaSequence, a: &ThetaSequence, nu: &DimVec) -> Result<()> {
    for s in [a, b] {
        if &s.dimvec() != nu {
            return Err(Error::Invalid(format!("{s} is not a sequence of {nu}")));
        }
    }
    if nu.rank() == 0 {
        return Err(Error::Invalid("use phi symbols at rank 0".into()));
    }
    Ok(())
}

/// `sum v^{deg(sigma_w 1_a)}` over `w` in the group with `w(a) = b`.
pub fn degree_polynomial(b: &ThetaSequence, a: &ThetaSequence, kind: GroupKind, strategy: WordStrategy) -> Vec<(i32, i64)> {
    let t = WordTable::get(kind, a.rank(), strategy);
    let mut out = std::collections::BTreeMap::new();
    for w in &t.elements {
        if w.act_on_sequence(a) == *b {
            *out.entry(word_degree_from_source(a, t.word(w))).or_insert(0) += 1;
        }
    }
    out.into_iter().collect()
}

fn series_over_free(terms: &[(i32, i64)], m: usize, n: i32) -> Series {
    let mut s = Series::zero(n);
    for &(d, c) in terms {
        let block = Series::free_block(m, n - d).shift(d);
        for _ in 0..c {
            s = s.add(&block);
        }
    }
    s
}

pub fn gdim_block_with(b: &ThetaSequence, a: &ThetaSequence, nu: &DimVec, n: i32, strategy: WordStrategy) -> Result<Series> {
    check_pair(b, a, nu)?;
    let terms = degree_polynomial(b, a, GroupKind::D, strategy);
    Ok(series_over_free(&terms, nu.rank(), n))
}

/// `gdim 1_b °R_nu 1_a` to order `n`.
pub fn gdim_block(b: &ThetaSequence, a: &ThetaSequence, nu: &DimVec, n: i32) -> Result<Series> {
    gdim_block_with(b, a, nu, n, WordStrategy::from_env())
}

/// `gdim 1_b θR_nu 1_a` to order `n`.
pub fn gdim_typeb_block(b: &ThetaSequence, a: &ThetaSequence, nu: &DimVec, n: i32) -> Result<Series> {
    check_pair(b, a, nu)?;
    let terms = degree_polynomial(b, a, GroupKind::B, WordStrategy::from_env());
    Ok(series_over_free(&terms, nu.rank(), n))
}

/// `gdim_block` extended to symbols; zero across different dimension vectors.
pub fn gdim_proj(b: &Proj, a: &Proj, n: i32) -> Series {
    match (b, a) {
        (Proj::Phi(x), Proj::Phi(y)) => {
            if x == y {
                Series::one(n)
            } else {
                Series::zero(n)
            }
        }
        (Proj::Seq(b), Proj::Seq(a)) if b.dimvec() == a.dimvec() => {
            gdim_block(b, a, &a.dimvec(), n).expect("same dimension vector")
        }
        _ => Series::zero(n),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GdimRow {
    pub identity: String,
    pub block: String,
    pub order: i32,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GdimReport {
    pub rows: Vec<GdimRow>,
}

impl GdimReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &GdimRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    fn push(&mut self, identity: &str, block: String, n: i32, lhs: &Series, rhs: &Series) {
        self.rows.push(GdimRow {
            identity: identity.into(),
            block,
            order: n,
            lhs: lhs.truncate(n).to_string(),
            rhs: rhs.truncate(n).to_string(),
            pass: lhs.agrees_to(rhs, n),
        });
    }

    pub fn merge(&mut self, other: GdimReport) {
        self.rows.extend(other.rows);
    }
}

/// `res ind (°R 1_a) = °R 1_a + (°R 1_a)^gamma`, blockwise.
pub fn check_res_ind(a: &ThetaSequence, n: i32) -> Result<GdimReport> {
    let nu = a.dimvec();
    if nu.rank() == 0 {
        return Err(Error::Invalid("res/ind needs m >= 1".into()));
    }
    let mut rep = GdimReport::default();
    for b in sequences_of(&nu) {
        let lhs = gdim_typeb_block(&b, a, &nu, n)?;
        let rhs = gdim_block(&b, a, &nu, n)?.add(&gdim_block(&b, &a.eps1(), &nu, n)?);
        rep.push("res-ind", format!("{b} <- {a}"), n, &lhs, &rhs);
    }
    Ok(rep)
}

/// `t_i P = v^{-nu.(i+theta(i))} P^gamma`; `t_i phi_± = phi_∓`.
pub fn t_twist(a: &Proj, i: Vertex) -> (i32, Proj) {
    let nu = a.nu();
    let e = -(nu.dot_vertex(i) + nu.dot_vertex(i.theta()));
    (e as i32, a.gamma())
}

/// `s / (1 - v^2)` at the order of `s`.
fn over_free1(s: &Series) -> Series {
    let low = s.low_degree().unwrap_or(0).min(0);
    s.mul(&Series::free_block(1, s.order() - low))
}

/// `gdim 1_b f_j(N)` for a rank `r` module `N` given blockwise by `gdim_n`, `b`
/// of rank `r + 1`.
fn f_side(b: &Proj, j: Vertex, sources: &[Proj], gdim_n: impl Fn(&Proj) -> Series, n: i32) -> Result<Series> {
    let r = sources.first().map(Proj::rank).unwrap_or(0);
    let mut out = Series::zero(n);
    let Proj::Seq(bs) = b else { return Ok(out) };
    let (reps, table) = if r == 0 {
        (vec![SPerm::identity(1)], WordTable::get(GroupKind::D, 1, WordStrategy::from_env()))
    } else {
        (left_coset_reps(r)?, WordTable::get(GroupKind::D, r + 1, WordStrategy::from_env()))
    };
    for c in sources {
        let Proj::Seq(cj) = c.push(j) else { unreachable!() };
        let inner = gdim_n(c);
        if inner.is_zero() {
            continue;
        }
        for w in &reps {
            if w.act_on_sequence(&cj) != *bs {
                continue;
            }
            let d = word_degree_from_source(&cj, table.word(w));
            // the right action of k[kappa_{r+1}] is free
            let free = Series::free_block(1, n - d - inner.low_degree().unwrap_or(0)).shift(d);
            out = out.add(&free.mul(&inner));
        }
    }
    Ok(out.truncate(n))
}

/// Blockwise check of the three e'f identities on `P = °R_nu 1_a` (or `phi_±`).
pub fn verify_ef_identity(i: Vertex, j: Vertex, a: &Proj, n: i32) -> Result<GdimReport> {
    let nu = a.nu();
    let nu1 = nu.add_pair(j);
    let mut rep = GdimReport::default();
    let Some(nu2) = nu1.sub_pair(i) else {
        // no block of e'_i f_j(P); the right side is empty as well
        return Ok(rep);
    };
    let name = if i == j {
        "e'f:i=j"
    } else if i.theta() == j {
        "e'f:j=theta(i)"
    } else {
        "e'f:generic"
    };
    let m = nu.rank();
    // generous inner order: block degrees are bounded below by -2 per letter
    let pad = n + 4 * (m as i32 + 2) * (m as i32 + 2);
    let aj = a.push(j);
    let shift = -crate::ground::cartan_product(i, j);
    let rest = if m == 0 { None } else { nu.sub_pair(i) };
    let inner_sources = rest.as_ref().map(Proj::all_of).unwrap_or_default();
    for b in Proj::all_of(&nu2) {
        let lhs = gdim_proj(&b.push(i), &aj, n);
        let mut rhs = Series::zero(n);
        if i == j {
            rhs = rhs.add(&over_free1(&gdim_proj(&b, a, n)));
        }
        if i.theta() == j {
            let dp = -(nu.dot_vertex(i) + nu.dot_vertex(i.theta())) / 2;
            let dp = dp as i32;
            let g = over_free1(&gdim_proj(&b, &a.gamma(), n - dp)).shift(dp);
            rhs = rhs.add(&g);
        }
        if !inner_sources.is_empty() {
            let fe = f_side(&b, j, &inner_sources, |c| gdim_proj(&c.push(i), a, pad), n - shift)?;
            rhs = rhs.add(&fe.shift(shift));
        }
        rep.push(name, format!("{b} | i={i} j={j} a={a}"), n, &lhs, &rhs);
    }
    Ok(rep)
}

/// `(P_a : P_b) = gdim 1_a °R 1_b`.
pub fn pairing_cartan(a: &Proj, b: &Proj, n: i32) -> Series {
    gdim_proj(a, b, n)
}

/// `(1 - v^2)^m (P_a : P_b)`, an exact Laurent polynomial.
pub fn pairing_ke(a: &Proj, b: &Proj, n: i32) -> Series {
    match (a, b) {
        (Proj::Seq(x), Proj::Seq(y)) if x.dimvec() == y.dimvec() => {
            Series::from_terms(degree_polynomial(x, y, GroupKind::D, WordStrategy::from_env()), n)
        }
        _ => gdim_proj(a, b, n),
    }
}

/// `a_i`: `push(i)` maps the `+` part of `nu` into the `a_i` part of `nu + i + theta(i)`.
pub fn push_sign(nu: &DimVec, i: Vertex) -> Result<i32> {
    let plus = Proj::all_of(nu)
        .into_iter()
        .find(|p| p.orbit_sign().ok() == Some(1))
        .ok_or_else(|| Error::Invalid(format!("no + part in {nu}")))?;
    plus.push(i).orbit_sign()
}

/// Orbit support of `f_i` on symbols: every `a` of `nu` lands in part
/// `a_i * sign(a)` and `f_theta(i)` in the opposite part.
pub fn check_push_support(nu: &DimVec, i: Vertex) -> Result<GdimReport> {
    let ai = push_sign(nu, i)?;
    let mut rep = GdimReport::default();
    for a in Proj::all_of(nu) {
        let s = a.orbit_sign()?;
        for (v, want) in [(i, ai * s), (i.theta(), -ai * s)] {
            let got = a.push(v).orbit_sign()?;
            rep.rows.push(GdimRow {
                identity: "push-support".into(),
                block: format!("{a} -> {}", a.push(v)),
                order: 0,
                lhs: got.to_string(),
                rhs: want.to_string(),
                pass: got == want,
            });
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    fn seq(s: &str) -> ThetaSequence {
        s.parse().unwrap()
    }

    #[test]
    fn rank_one_blocks() {
        let a = seq("p");
        let nu = a.dimvec();
        assert_eq!(gdim_block(&a, &a, &nu, 6).unwrap().to_string(), "1+v^2+v^4+v^6");
        assert!(gdim_block(&seq("p^-1"), &a, &nu, 6).unwrap().is_zero());
    }

    #[test]
    fn element_counts() {
        let nu: DimVec = "p,p^-1,p^3,p^-3".parse().unwrap();
        let seqs = sequences_of(&nu);
        let mut total = 0;
        for a in &seqs {
            for b in &seqs {
                let t = degree_polynomial(b, a, GroupKind::D, WordStrategy::SmallestFirst);
                total += t.iter().map(|x| x.1).sum::<i64>();
            }
        }
        // every w in °W_2 sends a to exactly one b
        assert_eq!(total, 4 * seqs.len() as i64);
        // trivial stabilizer: only the identity reaches the diagonal block
        let a = seq("p,p^-3");
        assert_eq!(gdim_block(&a, &a, &nu, 0).unwrap().coeff(0), 1);
    }

    #[test]
    fn res_ind_rank_one() {
        for s in ["p", "p^-1", "-p^3"] {
            assert!(check_res_ind(&seq(s), 8).unwrap().passed());
        }
    }

    #[test]
    fn twist_exponents() {
        let a = Proj::Seq(seq("p^3"));
        let (e, t) = t_twist(&a, v("p^3"));
        assert_eq!(e, -4);
        assert_eq!(t, Proj::Seq(seq("p^-3")));
        assert_eq!(t_twist(&Proj::phi_plus(), v("p")), (0, Proj::phi_minus()));
    }

    #[test]
    fn ef_rank_zero_and_one() {
        for a in [Proj::phi_plus(), Proj::phi_minus(), Proj::Seq(seq("p"))] {
            for (i, j) in [("p", "p"), ("p", "p^-1"), ("p", "p^5"), ("p", "p^3")] {
                let r = verify_ef_identity(v(i), v(j), &a, 10).unwrap();
                assert!(r.passed(), "{a} {i} {j}: {:?}", r.failures().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn ke_pairing_base() {
        assert_eq!(pairing_ke(&Proj::phi_plus(), &Proj::phi_plus(), 4).to_string(), "1");
        assert!(pairing_ke(&Proj::phi_plus(), &Proj::phi_minus(), 4).is_zero());
        let a = Proj::Seq(seq("p"));
        assert_eq!(pairing_ke(&a, &a, 8).to_string(), "1");
    }
}
