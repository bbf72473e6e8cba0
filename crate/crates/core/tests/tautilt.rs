mod common;

use common::{fp, q};
use tilt_core::approx::*;
use tilt_core::repmod::*;
use tilt_core::tautilt::*;

#[test]
fn approximation_of_projective_by_projective() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    let r = left_add_approximation(&s.projectives[1], &s.projectives[0], true).unwrap();
    assert_eq!(r.summands.len(), 1);
    assert!(is_isomorphic(&r.cokernel, &s.simples[0]).unwrap());
    assert!(is_left_approximation(&r.map, &[s.projectives[0].clone()]));
    let big = Rep::sum_of(&a, &[s.projectives[0].clone(), s.projectives[0].clone()]);
    let nm = left_add_approximation(&s.projectives[1], &big, false).unwrap();
    assert!(is_left_approximation(&nm.map, &[big.clone()]));
    assert_eq!(minimalise(&nm.map).unwrap().summands.len(), 1);
}

#[test]
fn cone_of_surjection_onto_simple() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    let tri = approximation_triangle(&s.simples[0]).unwrap();
    assert!(tri.t1.is_zero());
    assert!(tri.sigma1.cokernel().is_zero());
    let tri = approximation_triangle(&s.projectives[0]).unwrap();
    assert!(is_isomorphic(&tri.t1, &s.simples[0]).unwrap());
    assert!(is_isomorphic(&tri.sigma1.cokernel(), &s.simples[0]).unwrap());
}

#[test]
fn presilting_tests() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    let p = min_proj_presentation(&s.simples[0]);
    assert!(is_presilting(&p.complex));
    let d = q("dual_numbers", None);
    let sd = standard_modules(&d);
    let p = min_proj_presentation(&sd.simples[0]);
    assert!(!is_presilting(&p.complex));
    assert!(!is_tau_rigid(&sd.simples[0]));
    assert!(is_tau_rigid(&sd.projectives[0]));
}

#[test]
fn bongartz_completion_of_simple_top() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    let p = min_proj_presentation(&s.simples[0]);
    let pair = bongartz_complete(&p.complex).unwrap();
    assert!(pair.support_complement.is_empty());
    let expect = Rep::sum_of(&a, &[s.projectives[0].clone(), s.simples[0].clone()]);
    assert!(is_isomorphic(&pair.module, &expect).unwrap());
    let d = q("dual_numbers", None);
    let bad = min_proj_presentation(&standard_modules(&d).simples[0]);
    assert!(matches!(bongartz_complete(&bad.complex), Err(tilt_core::Error::NotPresilting)));
}

fn position_of<K: tilt_core::exactalg::Field>(p: &SiltingPair<K>, x: &Rep<K>) -> usize {
    p.summands.iter().position(|s| is_iso_indec(&s.rep, x)).unwrap()
}

#[test]
fn mutations_linear_a2() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    let top = SiltingPair::regular(&a).unwrap();
    assert!(top.validate().ok());
    let at_p2 = top.mutate(position_of(&top, &s.projectives[1])).unwrap();
    let expect = Rep::sum_of(&a, &[s.projectives[0].clone(), s.simples[0].clone()]);
    assert!(is_isomorphic(&at_p2.module, &expect).unwrap());
    assert!(at_p2.support_complement.is_empty());
    let at_p1 = top.mutate(position_of(&top, &s.projectives[0])).unwrap();
    assert!(is_isomorphic(&at_p1.module, &s.projectives[1]).unwrap());
    assert_eq!(at_p1.support_complement, vec![0]);
    for pos in 0..2 {
        let there = top.mutate(pos).unwrap();
        let back = top.exchanged_position(&there).unwrap();
        assert_eq!(there.mutate(back).unwrap().canonical_key(), top.canonical_key());
    }
}

#[test]
fn mutation_dual_numbers() {
    let d = q("dual_numbers", None);
    let top = SiltingPair::regular(&d).unwrap();
    let m = top.mutate(0).unwrap();
    assert!(m.module.is_zero());
    assert_eq!(m.support_complement, vec![0]);
    assert_eq!(m.mutate(0).unwrap().canonical_key(), top.canonical_key());
}

#[test]
fn exchange_graphs_small() {
    let g = exchange_graph(&q("linear_A", Some(2)), ExchangeCaps::default()).unwrap();
    assert!(g.is_complete());
    assert_eq!((g.nodes.len(), g.edges.len()), (5, 5));
    let g = exchange_graph(&q("dual_numbers", None), ExchangeCaps::default()).unwrap();
    assert_eq!((g.nodes.len(), g.edges.len()), (2, 1));
    let g = exchange_graph(&q("preprojective_A", Some(2)), ExchangeCaps::default()).unwrap();
    assert_eq!((g.nodes.len(), g.edges.len()), (6, 6));
    let g = exchange_graph(&q("linear_A", Some(3)), ExchangeCaps::default()).unwrap();
    assert_eq!(g.nodes.len(), 14);
    assert_eq!(g.edges.len(), 14 * 3 / 2);
    for p in &g.nodes {
        assert!(p.validate().ok());
    }
    assert!(g.bottom().is_some());
}

#[test]
fn kronecker_is_truncated() {
    let a = fp("kronecker", None, 101);
    let g = exchange_graph(&a, ExchangeCaps { max_nodes: 20, max_dim: 60 }).unwrap();
    assert!(matches!(g.status, GraphStatus::Truncated { node_cap_hit: true, .. }));
    assert_eq!(g.nodes.len(), 20);
    let d = decide_tau_tilting_finite(&a, ExchangeCaps { max_nodes: 20, max_dim: 60 }).unwrap();
    assert!(!d.is_finite());
}
