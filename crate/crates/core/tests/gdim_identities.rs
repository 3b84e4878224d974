use klrd::gdim::{check_push_support, check_res_ind, gdim_block, gdim_block_with, verify_ef_identity, Proj};
use klrd::ground::{sequences_of, DimVec, Vertex};
use klrd::weyl::WordStrategy;

fn v(s: &str) -> Vertex {
    s.parse().unwrap()
}

fn nus() -> Vec<DimVec> {
    ["p,p^-1", "p^3,p^-3", "p,p^-1,p^3,p^-3", "p,p^-1,p,p^-1", "p,p^-1,-p,-p^-1", "p^3,p^-3,p^-5,p^5"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

#[test]
fn ef_identities_rank_one_and_two() {
    let labels = ["p", "p^-1", "p^3", "p^-3", "-p"];
    for nu in nus() {
        for a in sequences_of(&nu) {
            for i in labels {
                for j in labels {
                    let r = verify_ef_identity(v(i), v(j), &Proj::Seq(a), 12).unwrap();
                    let bad: Vec<_> = r.failures().collect();
                    assert!(bad.is_empty(), "{a} i={i} j={j}: {bad:#?}");
                }
            }
        }
    }
}

#[test]
fn res_ind_rank_two() {
    for nu in nus() {
        for a in sequences_of(&nu) {
            assert!(check_res_ind(&a, 12).unwrap().passed(), "{a}");
        }
    }
}

#[test]
fn word_table_independence() {
    for nu in nus().into_iter().chain(["p,p^-1,p,p^-1,p^3,p^-3".parse().unwrap()]) {
        let seqs = sequences_of(&nu);
        for a in &seqs {
            for b in &seqs {
                let x = gdim_block_with(b, a, &nu, 10, WordStrategy::SmallestFirst).unwrap();
                let y = gdim_block_with(b, a, &nu, 10, WordStrategy::LargestFirst).unwrap();
                assert_eq!(x, y, "{b} <- {a}");
            }
        }
    }
}

#[test]
fn symmetry_of_blocks() {
    for nu in nus() {
        let seqs = sequences_of(&nu);
        for a in &seqs {
            for b in &seqs {
                assert_eq!(gdim_block(b, a, &nu, 10).unwrap(), gdim_block(a, b, &nu, 10).unwrap());
            }
        }
    }
}

#[test]
fn push_support() {
    for nu in nus().into_iter().chain([DimVec::zero()]) {
        for i in ["p", "p^3", "-p^-5"] {
            assert!(check_push_support(&nu, v(i)).unwrap().passed(), "{nu} {i}");
        }
    }
}
