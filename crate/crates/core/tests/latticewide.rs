mod common;

use common::q;
use tilt_core::latticewide::*;
use tilt_core::repmod::*;
use tilt_core::tautilt::*;

fn complete<K: tilt_core::exactalg::Field>(a: &tilt_core::quiveralg::Algebra<K>) -> ExchangeGraph<K> {
    let g = exchange_graph(a, ExchangeCaps::default()).unwrap();
    assert!(g.is_complete());
    g
}

#[test]
fn pentagon_for_linear_a2() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    let g = complete(&a);
    let h = hasse(&g).unwrap();
    assert_eq!(h.arrows.len(), 5);
    assert_eq!(h.bricks.len(), 3);
    assert_eq!(h.fallbacks, 0);
    for b in [&s.simples[0], &s.simples[1], &s.projectives[0]] {
        assert_eq!(h.bricks.iter().filter(|x| is_isomorphic(x, b).unwrap()).count(), 1);
    }
    assert!(h.is_lattice());
    let top = h.semibrick_at(h.top);
    assert_eq!(top.len(), 2);
    assert!(h.semibrick_at(h.bottom).is_empty());
    let leq = h.leq_closure();
    for i in 0..h.num_nodes {
        assert!(leq(h.bottom, i) && leq(i, h.top));
        assert_eq!(gen_leq(&g.nodes[h.bottom], &g.nodes[i]), true);
        assert_eq!(gen_leq(&g.nodes[i], &g.nodes[h.top]), true);
    }
}

#[test]
fn labels_are_bricks_for_preprojective_a2() {
    let a = q("preprojective_A", Some(2));
    let g = complete(&a);
    let h = hasse(&g).unwrap();
    assert_eq!(h.arrows.len(), 6);
    assert_eq!(h.bricks.len(), 4);
    assert!(h.is_lattice());
    for i in 0..h.num_nodes {
        verify_semibrick(&h.semibrick_at(i)).unwrap();
    }
}

#[test]
fn local_semibrick_matches_hasse() {
    let a = q("linear_A", Some(3));
    let g = complete(&a);
    let h = hasse(&g).unwrap();
    assert!(h.is_lattice());
    for (i, node) in g.nodes.iter().enumerate() {
        let local = semibrick_at(node).unwrap();
        let global = h.semibrick_at(i);
        assert_eq!(local.len(), global.len());
        for b in &local {
            assert!(global.iter().any(|c| is_isomorphic(b, c).unwrap()));
        }
    }
}

#[test]
fn wide_subcategories_of_linear_a2() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    let g = complete(&a);
    let h = hasse(&g).unwrap();
    let all = [&s.simples[0], &s.simples[1], &s.projectives[0]];
    let top = wide_subcategory(&g.nodes[h.top], h.semibrick_at(h.top)).unwrap();
    let bottom = wide_subcategory(&g.nodes[h.bottom], vec![]).unwrap();
    for x in all {
        assert!(top.contains(x) && top.contains_closed_form(x));
        assert!(!bottom.contains(x) && !bottom.contains_closed_form(x));
    }
    for i in 0..h.num_nodes {
        let w = wide_subcategory(&g.nodes[i], h.semibrick_at(i)).unwrap();
        for x in all {
            assert_eq!(w.contains(x), w.contains_closed_form(x));
            assert_eq!(w.contains(x), a_map_membership(&g.nodes[i], x).unwrap());
        }
    }
}

#[test]
fn filtrations() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    let both = [s.simples[0].clone(), s.simples[1].clone()];
    assert!(filtgen_membership_bounded(&both, &s.projectives[0], 4).unwrap());
    assert!(!filtgen_membership_bounded(&s.simples[..1], &s.projectives[0], 4).unwrap());
    assert!(filtgen_membership_bounded(&s.simples[1..], &s.projectives[0], 1).is_err());
}

#[test]
fn hasse_needs_complete_graph() {
    let a = common::fp("kronecker", None, 101);
    let g = exchange_graph(&a, ExchangeCaps { max_nodes: 6, ..ExchangeCaps::default() }).unwrap();
    assert!(hasse(&g).is_err());
}
