use std::sync::Arc;

use klrd::fdmod::{check_fdmodule, permutation_module, truncated_module};
use klrd::ground::{sequences_of, DimVec};
use klrd::klr::{Ambient, BlockPoly, Flavor, KlrOperator, PbwTable};
use klrd::polyring::{divided_difference, Poly};
use klrd::weyl::{enumerate, GroupKind, SPerm};
use klrd::{Field, ParamField, Qp, Rat};
use proptest::prelude::*;

type Op = KlrOperator<Rat>;

fn poly(terms: &[(Vec<u32>, i64)]) -> Poly<Rat> {
    terms.iter().fold(Poly::zero(), |acc, (exps, c)| {
        let mono = exps.iter().enumerate().fold(Poly::one(), |p, (l, e)| p * Poly::var(l + 1).pow(*e));
        acc + mono.scale(&Rat::from_int(*c))
    })
}

fn poly_strategy(m: usize) -> impl Strategy<Value = Poly<Rat>> {
    prop::collection::vec((prop::collection::vec(0u32..3, m), -4i64..=4), 0..5).prop_map(|t| poly(&t))
}

fn ambient() -> Arc<Ambient> {
    Ambient::new("p,p^-1,p,p^-1,p^3,p^-3".parse().unwrap(), Flavor::D).unwrap()
}

/// Generators of the rank-3 algebra: sigma_0..2, kappa_1..3, and idempotents.
fn generators(amb: &Arc<Ambient>) -> Vec<Op> {
    let mut g: Vec<Op> = (0..3).map(|k| Op::sigma_all(amb, k).unwrap()).collect();
    g.extend((1..=3).map(|l| Op::kappa_all(amb, l).unwrap()));
    g.extend(amb.sequences().iter().step_by(5).map(|i| Op::idempotent(amb, i).unwrap()));
    g
}

fn product(g: &[Op], idx: &[usize]) -> Op {
    idx.iter().skip(1).fold(g[idx[0] % g.len()].clone(), |acc, &k| &acc * &g[k % g.len()])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn weyl_action_on_sequences_and_polynomials(a in 0usize..192, b in 0usize..192, f in poly_strategy(4)) {
        let g = enumerate(GroupKind::D, 4);
        let (u, w) = (g[a], g[b]);
        let uw = u.compose(&w);
        let seqs = sequences_of(&"p,p^-1,p^3,p^-3,p,p^-1,-p^5,-p^-5".parse::<DimVec>().unwrap());
        for i in seqs.iter().take(6) {
            prop_assert_eq!(uw.act_on_sequence(i), u.act_on_sequence(&w.act_on_sequence(i)));
            prop_assert_eq!(u.inverse().act_on_sequence(&u.act_on_sequence(i)), *i);
        }
        prop_assert_eq!(f.weyl_act(&uw), f.weyl_act(&w).weyl_act(&u));
        prop_assert_eq!(u.compose(&u.inverse()), SPerm::identity(4));
    }

    #[test]
    fn divided_differences(k in 0usize..3, f in poly_strategy(3), g in poly_strategy(3)) {
        let m = 3;
        let s = SPerm::generator(k, m).unwrap();
        let df = divided_difference(k, &f, m).unwrap();
        prop_assert!(divided_difference(k, &df, m).unwrap().is_zero());
        let lhs = divided_difference(k, &(&f * &g), m).unwrap();
        let rhs = &(&df * &g) + &(&f.weyl_act(&s) * &divided_difference(k, &g, m).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn operator_products_associate(a in prop::collection::vec(0usize..64, 1..3),
                                   b in prop::collection::vec(0usize..64, 1..3),
                                   c in prop::collection::vec(0usize..64, 1..3)) {
        let amb = ambient();
        let g = generators(&amb);
        let (x, y, z) = (product(&g, &a), product(&g, &b), product(&g, &c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn action_is_faithful_and_multiplicative(a in prop::collection::vec(0usize..64, 1..4),
                                             b in prop::collection::vec(0usize..64, 1..3),
                                             f in poly_strategy(3)) {
        let amb = ambient();
        let g = generators(&amb);
        let (x, y) = (product(&g, &a), product(&g, &b));
        let input: BlockPoly<Rat> = amb.sequences().iter().map(|i| (*i, f.clone())).collect();
        let xy = (&x * &y).apply(&input).unwrap();
        prop_assert_eq!(xy, x.apply(&y.apply(&input).unwrap()).unwrap());
        // a nonzero element moves some low-degree test polynomial
        if !x.is_zero() {
            let table = PbwTable::<Rat>::new(&amb);
            prop_assert!(table.is_member(&x).unwrap());
            let mut tests = Vec::new();
            for e1 in 0..4u32 {
                for e2 in 0..4u32 {
                    for e3 in 0..4u32 {
                        tests.push(poly(&[(vec![e1, e2, e3], 1)]));
                    }
                }
            }
            let moved = amb.sequences().iter().any(|i| {
                tests.iter().any(|t| {
                    let input: BlockPoly<Rat> = [(*i, t.clone())].into_iter().collect();
                    !x.apply(&input).unwrap().is_empty()
                })
            });
            prop_assert!(moved);
        }
    }

    #[test]
    fn qp_field_axioms(a in -20i64..20, b in 1i64..20, e in -4i32..4) {
        let x = Qp::from_int(a) + <Qp as ParamField>::p_pow(e);
        let y = Qp::from_int(b) * <Qp as ParamField>::p_pow(-e);
        prop_assert_eq!(x.clone() * y.clone() * y.inv(), x.clone());
        prop_assert_eq!(x.clone() + y.clone() - y, x.clone());
        let text = x.to_string();
        prop_assert_eq!(text.parse::<Qp>().unwrap(), x);
    }
}

#[test]
fn fixtures_are_modules() {
    for s in ["p,p^5", "p,p^5,p^9"] {
        assert!(check_fdmodule(&permutation_module::<Rat>(&s.parse().unwrap()).unwrap()).passed());
    }
    for n in 1..=4 {
        assert!(check_fdmodule(&truncated_module::<Rat>(&"p".parse().unwrap(), n).unwrap()).passed());
    }
}
