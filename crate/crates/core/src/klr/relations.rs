//! Exhaustive check of the defining relations on the operator model.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::Field;
use crate::ground::{q_polynomial, DimVec, QPoly, ThetaSequence};
use crate::polyring::{LinForm, Poly};
use crate::weyl::SPerm;

use super::generators::neighbours;
use super::{Ambient, Flavor, KlrOperator};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFailure {
    pub relation: String,
    pub seq: ThetaSequence,
    pub k: Option<usize>,
    pub l: Option<usize>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RelationReport {
    pub nu: Vec<String>,
    pub instances: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: RelationReport) {
        self.nu.extend(other.nu);
        self.instances += other.instances;
        self.failures.extend(other.failures);
    }
}

/// `kappa_x` for a signed position.
fn kp<F: Field>(x: i32) -> Poly<F> {
    Poly::kappa_at(x)
}

/// `s_k(k)` as a position.
pub(crate) fn partner(k: usize) -> i32 {
    if k == 0 {
        2
    } else {
        k as i32 + 1
    }
}

fn q_eval<F: Field>(q: QPoly, u: &Poly<F>, v: &Poly<F>) -> Poly<F> {
    match q {
        QPoly::Zero => Poly::zero(),
        QPoly::Power { sign, power } => {
            let p = (u - v).pow(power);
            if sign < 0 {
                -p
            } else {
                p
            }
        }
    }
}

/// Right side of `sigma_k^2 1_i = Q(kappa_{s_k(k)}, kappa_k) 1_i`.
pub(crate) fn quadratic_rhs<F: Field>(i: &ThetaSequence, k: usize) -> Poly<F> {
    let (a, b) = neighbours(i, k);
    q_eval(q_polynomial(a, b), &kp(partner(k)), &kp(k as i32))
}

/// Pairs `k < k2` whose generators commute.
pub(crate) fn far_pair(k: usize, k2: usize) -> bool {
    (k >= 1 && k2 >= k + 2) || (k == 0 && k2 != 2)
}

/// Right side of the braid relation between `sigma_k` and `sigma_{s_k(k)}` on
/// `1_i`; `None` when `s_k(k) + 1 > m`.
pub(crate) fn braid_rhs<F: Field>(i: &ThetaSequence, k: usize) -> Option<Poly<F>> {
    let t = partner(k) as usize;
    if t + 1 > i.rank() {
        return None;
    }
    let (a, b) = neighbours(i, k);
    if a != i.entry(t as i32 + 1) {
        return Some(Poly::zero());
    }
    let q = q_polynomial(a, b);
    let u = kp::<F>(t as i32);
    let num = &q_eval(q, &u, &kp(k as i32)) - &q_eval(q, &u, &kp(t as i32 + 1));
    let (sign, form) = if k == 0 { (-1, LinForm::Sum(1, 3)) } else { (1, LinForm::Diff(k as u8, k as u8 + 2)) };
    let quot = form.divide(&num).expect("braid correction divides exactly");
    Some(if sign < 0 { -quot } else { quot })
}

/// `c` in `(sigma_k kappa_l - kappa_{s_k(l)} sigma_k) 1_i = c 1_i`.
pub(crate) fn kappa_sigma_constant(i: &ThetaSequence, k: usize, l: usize) -> i64 {
    let (a, b) = neighbours(i, k);
    if a != b {
        0
    } else if k == 0 {
        if l <= 2 { 1 } else { 0 }
    } else if l == k {
        -1
    } else if l == k + 1 {
        1
    } else {
        0
    }
}

struct Gens<F> {
    amb: Arc<Ambient>,
    sig: Vec<KlrOperator<F>>,
    kap: Vec<KlrOperator<F>>,
    pi: Option<KlrOperator<F>>,
}

struct Sink {
    instances: usize,
    failures: Vec<RelationFailure>,
    seq: ThetaSequence,
}

impl Sink {
    fn check<F: Field>(&mut self, name: &str, k: Option<usize>, l: Option<usize>, lhs: &KlrOperator<F>, rhs: &KlrOperator<F>) {
        self.instances += 1;
        if lhs != rhs {
            self.failures.push(RelationFailure { relation: name.to_string(), seq: self.seq, k, l });
        }
    }
}

fn check_sequence<F: Field>(g: &Gens<F>, i: &ThetaSequence) -> Result<Sink> {
    let amb = &g.amb;
    let m = amb.rank();
    let mut out = Sink { instances: 0, failures: Vec::new(), seq: *i };
    let ei = KlrOperator::idempotent(amb, i)?;
    let zero = KlrOperator::zero(amb);
    let at = |f: Poly<F>| KlrOperator::poly_at(amb, f, i);

    // (a)
    for j in amb.sequences() {
        let ej = KlrOperator::idempotent(amb, j)?;
        let rhs = if j == i { ei.clone() } else { zero.clone() };
        out.check("a:idempotents", None, None, &(&ei * &ej), &rhs);
    }
    for (k, s) in g.sig.iter().enumerate() {
        let si = SPerm::generator(k, m)?.act_on_sequence(i);
        let esi = KlrOperator::idempotent(amb, &si)?;
        out.check("a:sigma-idempotent", Some(k), None, &(s * &ei), &(&esi * s));
    }
    for (l, x) in g.kap.iter().enumerate() {
        out.check("a:kappa-idempotent", None, Some(l + 1), &(x * &ei), &(&ei * x));
    }
    // (b)
    for l in 0..m {
        for l2 in l + 1..m {
            let lhs = &(&g.kap[l] * &g.kap[l2]) * &ei;
            let rhs = &(&g.kap[l2] * &g.kap[l]) * &ei;
            out.check("b:kappa-commute", Some(l2 + 1), Some(l + 1), &lhs, &rhs);
        }
    }
    // (c)
    for (k, s) in g.sig.iter().enumerate() {
        out.check("c:quadratic", Some(k), None, &(&(s * s) * &ei), &at(quadratic_rhs(i, k))?);
    }
    // (d)
    for k in 0..g.sig.len() {
        for k2 in k + 1..g.sig.len() {
            if !far_pair(k, k2) {
                continue;
            }
            let lhs = &(&g.sig[k] * &g.sig[k2]) * &ei;
            let rhs = &(&g.sig[k2] * &g.sig[k]) * &ei;
            out.check("d:far-commute", Some(k), Some(k2), &lhs, &rhs);
        }
    }
    // (e)
    for k in 0..g.sig.len() {
        let Some(r) = braid_rhs::<F>(i, k) else { continue };
        let t = partner(k) as usize;
        let (sk, st) = (&g.sig[k], &g.sig[t]);
        let lhs = &(&(&(st * sk) * st) - &(&(sk * st) * sk)) * &ei;
        out.check("e:braid", Some(k), None, &lhs, &at(r)?);
    }
    // (f), over the signed index set
    for (k, s) in g.sig.iter().enumerate() {
        let sk = SPerm::generator(k, m)?;
        for l in 1..=m {
            let img = sk.apply_pos(l as i32);
            let lhs = &(&(s * &g.kap[l - 1]) - &(&KlrOperator::poly_everywhere(amb, &kp(img))? * s)) * &ei;
            let c = kappa_sigma_constant(i, k, l);
            out.check("f:kappa-sigma", Some(k), Some(l), &lhs, &ei.scale(&F::from_int(c)));
        }
    }
    // type-B relations
    if let Some(pi) = &g.pi {
        let ee = KlrOperator::idempotent(amb, &i.eps1())?;
        out.check("B:pi-square", None, None, &(&(pi * pi) * &ei), &ei);
        out.check("B:pi-idempotent", None, None, &(&(pi * &ei) * pi), &ee);
        for l in 1..=m {
            let target = if l == 1 { -KlrOperator::kappa(amb, 1, i)? } else { KlrOperator::kappa(amb, l, i)? };
            out.check("B:pi-kappa", None, Some(l), &(&(&(pi * &g.kap[l - 1]) * pi) * &ei), &target);
        }
        if m >= 2 {
            let s1 = &g.sig[1];
            let lhs = &(&(&(pi * s1) * pi) * s1) * &ei;
            let rhs = &(&(&(s1 * pi) * s1) * pi) * &ei;
            out.check("B:pi-sigma1-braid", Some(1), None, &lhs, &rhs);
            for k in 2..m {
                out.check("B:pi-sigma-commute", Some(k), None, &(&(&(pi * &g.sig[k]) * pi) * &ei), &(&g.sig[k] * &ei));
            }
            out.check("B:sigma0", Some(0), None, &(&(&(pi * s1) * pi) * &ei), &(&g.sig[0] * &ei));
        }
    }
    Ok(out)
}

/// Checks every relation instance at `amb`.
pub fn verify_relations_with<F: Field>(amb: &Arc<Ambient>) -> Result<RelationReport> {
    let m = amb.rank();
    let sig = if m >= 2 {
        (0..m).map(|k| KlrOperator::<F>::sigma_all(amb, k)).collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let kap = (1..=m).map(|l| KlrOperator::kappa_all(amb, l)).collect::<Result<Vec<_>>>()?;
    let pi = match amb.flavor() {
        Flavor::B => Some(KlrOperator::pi1_all(amb)?),
        Flavor::D => None,
    };
    let g = Gens { amb: amb.clone(), sig, kap, pi };
    let sinks: Vec<Sink> = amb
        .sequences()
        .par_iter()
        .map(|i| check_sequence(&g, i))
        .collect::<Result<Vec<_>>>()?;
    let mut rep = RelationReport { nu: vec![amb.nu().to_string()], ..Default::default() };
    for s in sinks {
        rep.instances += s.instances;
        rep.failures.extend(s.failures);
    }
    Ok(rep)
}

/// Relation suite over the rationals.
pub fn verify_relations(nu: &DimVec, flavor: Flavor) -> Result<RelationReport> {
    let amb = Ambient::new(nu.clone(), flavor)?;
    verify_relations_with::<crate::Rat>(&amb)
}
