use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ground::{DimVec, ThetaSequence};
use crate::matrix::Matrix;
use crate::weyl::SPerm;

use super::{sigma_count, FDModule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub seq: ThetaSequence,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<i32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaMapJson {
    pub from: ThetaSequence,
    pub to: ThetaSequence,
    pub matrix: Vec<Vec<String>>,
}

/// `kappa[l-1][b]` is `kappa_l` on the `b`-th block; `sigma[k]` lists nonzero
/// block maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub nu: DimVec,
    pub blocks: Vec<BlockJson>,
    pub kappa: Vec<Vec<Vec<Vec<String>>>>,
    pub sigma: Vec<Vec<SigmaMapJson>>,
}

fn at(path: String, e: Error) -> Error {
    Error::Parse(format!("{path}: {e}"))
}

impl ModuleJson {
    pub fn from_module<F: Field>(md: &FDModule<F>) -> Self {
        let blocks: Vec<BlockJson> = md
            .blocks()
            .map(|(s, d)| BlockJson { seq: *s, dim: d, degrees: md.grading().map(|g| g[s].clone()) })
            .collect();
        let kappa = (1..=md.rank())
            .map(|l| blocks.iter().map(|b| md.kappa(l, &b.seq).to_text()).collect())
            .collect();
        let sigma = (0..sigma_count(md.rank()))
            .map(|k| {
                let s = SPerm::generator(k, md.rank()).unwrap();
                blocks
                    .iter()
                    .filter_map(|b| {
                        let x = md.sigma(k, &b.seq);
                        (!x.is_zero()).then(|| SigmaMapJson {
                            from: b.seq,
                            to: s.act_on_sequence(&b.seq),
                            matrix: x.to_text(),
                        })
                    })
                    .collect()
            })
            .collect();
        ModuleJson { nu: md.nu().clone(), blocks, kappa, sigma }
    }

    /// Errors name the offending field as a JSON pointer.
    pub fn to_module<F: Field>(&self) -> Result<FDModule<F>> {
        let m = self.nu.rank();
        let mut dims = BTreeMap::new();
        for (b, blk) in self.blocks.iter().enumerate() {
            if blk.seq.dimvec() != self.nu {
                return Err(at(format!("/blocks/{b}/seq"), Error::Invalid(format!("{} is not a sequence of {}", blk.seq, self.nu))));
            }
            if dims.insert(blk.seq, blk.dim).is_some() {
                return Err(at(format!("/blocks/{b}/seq"), Error::Invalid("repeated block".into())));
            }
        }
        if self.kappa.len() > m {
            return Err(at("/kappa".into(), Error::Invalid(format!("expected at most {m} entries"))));
        }
        let mut kappa = Vec::new();
        for (l, fam) in self.kappa.iter().enumerate() {
            if fam.len() != self.blocks.len() {
                return Err(at(format!("/kappa/{l}"), Error::Invalid("one matrix per block expected".into())));
            }
            let mut out = BTreeMap::new();
            for (b, rows) in fam.iter().enumerate() {
                let x = Matrix::<F>::from_text(rows).map_err(|e| at(format!("/kappa/{l}/{b}"), e))?;
                let d = self.blocks[b].dim;
                if d > 0 && (x.rows() != d || x.cols() != d) {
                    return Err(at(format!("/kappa/{l}/{b}"), Error::Invalid(format!("expected {d}x{d}"))));
                }
                out.insert(self.blocks[b].seq, if d == 0 { Matrix::zeros(0, 0) } else { x });
            }
            kappa.push(out);
        }
        if self.sigma.len() > sigma_count(m) {
            return Err(at("/sigma".into(), Error::Invalid(format!("expected at most {} entries", sigma_count(m)))));
        }
        let mut sigma = Vec::new();
        for (k, fam) in self.sigma.iter().enumerate() {
            let s = SPerm::generator(k, m)?;
            let mut out = BTreeMap::new();
            for (e, map) in fam.iter().enumerate() {
                let path = format!("/sigma/{k}/{e}");
                if s.act_on_sequence(&map.from) != map.to {
                    return Err(at(format!("{path}/to"), Error::Invalid(format!("s_{k} sends {} elsewhere", map.from))));
                }
                let x = Matrix::<F>::from_text(&map.matrix).map_err(|e| at(format!("{path}/matrix"), e))?;
                let (r, c) = (dims.get(&map.to).copied().unwrap_or(0), dims.get(&map.from).copied().unwrap_or(0));
                if x.rows() != r || (r > 0 && x.cols() != c) {
                    return Err(at(format!("{path}/matrix"), Error::Invalid(format!("expected {r}x{c}"))));
                }
                out.insert(map.from, if r == 0 { Matrix::zeros(0, c) } else { x });
            }
            sigma.push(out);
        }
        let grading = if self.blocks.iter().all(|b| b.degrees.is_some()) && !self.blocks.is_empty() {
            Some(self.blocks.iter().map(|b| (b.seq, b.degrees.clone().unwrap())).collect())
        } else {
            None
        };
        FDModule::new(self.nu.clone(), dims, kappa, sigma, grading)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdmod::{permutation_module, truncated_module};
    use crate::Qp;

    #[test]
    fn round_trip() {
        let md = permutation_module::<Qp>(&"p,p^5".parse().unwrap()).unwrap();
        let j = ModuleJson::from_module(&md);
        let text = serde_json::to_string(&j).unwrap();
        let back: ModuleJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_module::<Qp>().unwrap(), md);
        let t = truncated_module::<Qp>(&"p".parse().unwrap(), 3).unwrap();
        assert_eq!(ModuleJson::from_module(&t).to_module::<Qp>().unwrap(), t);
    }

    #[test]
    fn pointer_in_errors() {
        let md = truncated_module::<Qp>(&"p".parse().unwrap(), 2).unwrap();
        let mut j = ModuleJson::from_module(&md);
        j.kappa[0][0] = vec![vec!["1".into()]];
        let e = j.to_module::<Qp>().unwrap_err().to_string();
        assert!(e.contains("/kappa/0/0"), "{e}");
    }
}
