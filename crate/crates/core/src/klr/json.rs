//! JSON forms of operators and PBW expansions.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ground::{DimVec, ThetaSequence, Vertex};
use crate::polyring::{LinForm, Poly, PolyTerm, RatFn};
use crate::weyl::{eval_word, Gen, SPerm};

use super::{Ambient, Flavor, KlrOperator, PbwForm, PbwSide, PbwTable};

/// Letters as integers: `k` for `s_k`, `-1` for `eps_1`.
fn encode_word(word: &[Gen]) -> Vec<i32> {
    word.iter().map(|g| match g {
        Gen::S(k) => *k as i32,
        Gen::Eps1 => -1,
    }).collect()
}

fn decode_word(word: &[i32]) -> Result<Vec<Gen>> {
    word.iter()
        .map(|&x| match x {
            -1 => Ok(Gen::Eps1),
            k if k >= 0 => Ok(Gen::S(k as u8)),
            _ => Err(Error::Parse(format!("bad letter {x}"))),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenJson {
    pub form: String,
    pub exp: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFnJson {
    pub num: Vec<PolyTerm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub den: Vec<DenJson>,
}

fn form_text(f: &LinForm) -> String {
    match f {
        LinForm::Var(a) => format!("k{a}"),
        LinForm::Diff(a, b) => format!("k{a}-k{b}"),
        LinForm::Sum(a, b) => format!("k{a}+k{b}"),
    }
}

fn parse_form(s: &str) -> Result<LinForm> {
    let bad = || Error::Parse(format!("bad linear form `{s}`"));
    let idx = |t: &str| t.trim().strip_prefix('k').and_then(|x| x.parse::<u8>().ok()).ok_or_else(bad);
    let f = if let Some((a, b)) = s.split_once('-') {
        LinForm::Diff(idx(a)?, idx(b)?)
    } else if let Some((a, b)) = s.split_once('+') {
        LinForm::Sum(idx(a)?, idx(b)?)
    } else {
        LinForm::Var(idx(s)?)
    };
    match f {
        LinForm::Diff(a, b) | LinForm::Sum(a, b) if a >= b || a == 0 => Err(bad()),
        LinForm::Var(0) => Err(bad()),
        f => Ok(f),
    }
}

impl RatFnJson {
    pub fn from_ratfn<F: Field>(f: &RatFn<F>, nvars: usize) -> Self {
        RatFnJson {
            num: f.num().to_terms(nvars),
            den: f.den_factors().iter().map(|(g, e)| DenJson { form: form_text(g), exp: *e }).collect(),
        }
    }

    pub fn to_ratfn<F: Field>(&self) -> Result<RatFn<F>> {
        let mut r = RatFn::from(Poly::from_term_list(&self.num)?);
        for d in &self.den {
            r = &r * &RatFn::form_power(1, parse_form(&d.form)?, -(d.exp as i32));
        }
        Ok(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub seq: ThetaSequence,
    pub word: Vec<i32>,
    pub coeff: RatFnJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub flavor: Flavor,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<Vertex>>,
    pub terms: Vec<TermJson>,
}

impl OperatorJson {
    pub fn from_op<F: Field>(a: &KlrOperator<F>, table: &PbwTable<F>) -> Result<Self> {
        let amb = a.ambient();
        let terms = a
            .terms()
            .map(|(i, w, f)| {
                Ok(TermJson {
                    seq: *i,
                    word: encode_word(table.word(w)?),
                    coeff: RatFnJson::from_ratfn(f, amb.rank()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorJson { flavor: amb.flavor(), m: amb.rank(), nu: Some(amb.nu().vertices()), terms })
    }

    pub fn ambient(&self) -> Result<Arc<Ambient>> {
        let nu = match &self.nu {
            Some(v) => DimVec::from_vertices(v)?,
            None => self
                .terms
                .first()
                .map(|t| t.seq.dimvec())
                .ok_or_else(|| Error::Invalid("operator without terms needs `nu`".into()))?,
        };
        if nu.rank() != self.m {
            return Err(Error::Invalid(format!("m = {} but nu has rank {}", self.m, nu.rank())));
        }
        Ambient::new(nu, self.flavor)
    }

    pub fn to_op<F: Field>(&self) -> Result<KlrOperator<F>> {
        let amb = self.ambient()?;
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.seq, eval_word(&decode_word(&t.word)?, self.m)?, t.coeff.to_ratfn()?)))
            .collect::<Result<Vec<(ThetaSequence, SPerm, RatFn<F>)>>>()?;
        KlrOperator::from_terms(&amb, terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbwEntryJson {
    pub word: Vec<i32>,
    pub perm: SPerm,
    pub source: ThetaSequence,
    pub coeff: RatFnJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbwJson {
    pub word_table: String,
    pub side: PbwSide,
    pub flavor: Flavor,
    pub m: usize,
    pub member: bool,
    pub entries: Vec<PbwEntryJson>,
}

impl PbwJson {
    pub fn from_form<F: Field>(form: &PbwForm<F>, table: &PbwTable<F>) -> Result<Self> {
        let amb = table.ambient();
        let entries = form
            .entries
            .iter()
            .map(|((w, j), g)| {
                Ok(PbwEntryJson {
                    word: encode_word(table.word(w)?),
                    perm: *w,
                    source: *j,
                    coeff: RatFnJson::from_ratfn(g, amb.rank()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PbwJson {
            word_table: form.strategy.name().to_string(),
            side: form.side,
            flavor: amb.flavor(),
            m: amb.rank(),
            member: form.is_member(),
            entries,
        })
    }
}
