use klrd::fdmod::{check_fdmodule, f_functor, permutation_module, truncated_module, FDModule};
use klrd::ground::{ThetaSequence, Vertex};
use klrd::hecke::{
    check_hecke, check_intertwiner, compare_branching_with, psi_transport, psi_transport_with, KappaFn,
};
use klrd::{Qp, Rat};

fn v(s: &str) -> Vertex {
    s.parse().unwrap()
}

fn seq(s: &str) -> ThetaSequence {
    s.parse().unwrap()
}

fn lift(md: &FDModule<Rat>) -> FDModule<Qp> {
    md.map_scalars(Qp::from_rat)
}

fn assert_transports(md: &FDModule<Rat>, f: KappaFn, what: &str) {
    let r = check_fdmodule(md);
    assert!(r.passed(), "{what}: klr side {:?}", r.failures);
    let q = lift(md);
    let h = psi_transport_with(&q, f).unwrap();
    let r = check_hecke(&h);
    assert!(r.passed(), "{what}: hecke side {:?}", r.failures);
    let mut labels: Vec<Vertex> = md.blocks().filter_map(|(s, _)| s.last()).collect();
    labels.sort();
    labels.dedup();
    for i in labels {
        let b = compare_branching_with(&q, i, f).unwrap();
        assert!(b.passed(), "{what}, i = {i}: {:?}", b.failures);
    }
}

#[test]
fn permutation_and_truncated_with_linear_f() {
    for s in ["p,p^5", "p^-3,p^7", "-p,p^7", "p,p^5,p^9", "p^3,-p,p^-9"] {
        assert_transports(&permutation_module(&seq(s)).unwrap(), KappaFn::Linear, s);
    }
    for n in 1..=4 {
        assert_transports(&truncated_module(&seq("p^3"), n).unwrap(), KappaFn::Linear, "truncated");
    }
}

#[test]
fn induced_rank_two() {
    for j in ["p", "p^3", "-p"] {
        let base = permutation_module::<Rat>(&seq(j)).unwrap();
        for i in ["p", "p^-1", "p^3", "p^-3", "p^-5", "-p"] {
            let f = f_functor(&base, v(i)).unwrap();
            assert_transports(&f, KappaFn::Cayley, &format!("F_{i} L_{j}"));
        }
    }
    let t = truncated_module::<Rat>(&seq("p"), 2).unwrap();
    for i in ["p", "p^3", "p^-1"] {
        assert_transports(&f_functor(&t, v(i)).unwrap(), KappaFn::Cayley, &format!("F_{i} trunc"));
    }
}

#[test]
fn induced_rank_three() {
    let base = permutation_module::<Rat>(&seq("p")).unwrap();
    for (a, b) in [("p", "p^3"), ("p^3", "p"), ("p", "p"), ("p^-1", "p^3")] {
        let f = f_functor(&f_functor(&base, v(a)).unwrap(), v(b)).unwrap();
        assert_eq!(f.dim(), 24);
        assert_transports(&f, KappaFn::Cayley, &format!("F_{b} F_{a} L_p"));
    }
}

// With f = 1 + kappa, f(kappa_0) = 1 - kappa_1 is not the inverse of
// f(kappa_1), and T_0 stops commuting with T_1 once kappa_1 acts nontrivially
// on a block where T_0 mixes the p^2-neighbours.
#[test]
fn linear_f_breaks_t0_t1_on_induced() {
    let f = lift(&f_functor(&permutation_module::<Rat>(&seq("p")).unwrap(), v("p")).unwrap());
    let r = check_hecke(&psi_transport(&f).unwrap());
    assert_eq!(r.failures.len(), 1, "{:?}", r.failures);
    assert_eq!(r.failures[0].relation, "b:commute");
    assert_eq!((r.failures[0].k, r.failures[0].l), (Some(0), Some(1)));
}

#[test]
fn intertwiners_on_induced() {
    let base = permutation_module::<Rat>(&seq("p")).unwrap();
    let f = lift(&f_functor(&base, v("p^5")).unwrap());
    let h = psi_transport(&f).unwrap();
    for k in 0..2 {
        assert!(check_intertwiner(&h, k).unwrap().passed());
    }
}

#[test]
fn direct_sums_transport_to_direct_sums() {
    let a = lift(&permutation_module::<Rat>(&seq("p,p^5")).unwrap());
    let b = lift(&f_functor(&permutation_module::<Rat>(&seq("p")).unwrap(), v("p^5")).unwrap());
    let s = a.direct_sum(&b).unwrap();
    let (ha, hb, hs) = (psi_transport(&a).unwrap(), psi_transport(&b).unwrap(), psi_transport(&s).unwrap());
    assert_eq!(hs.dim(), ha.dim() + hb.dim());
    assert_eq!(s.character().values().sum::<usize>(), a.dim() + b.dim());
    assert!(check_hecke(&hs).passed());
}
