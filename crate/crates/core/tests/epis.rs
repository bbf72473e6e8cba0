mod common;

use common::q;
use tilt_core::epis::*;
use tilt_core::exactalg::Field;
use tilt_core::latticewide::hasse;
use tilt_core::repmod::*;
use tilt_core::tautilt::*;

fn census_of<K: Field>(a: &tilt_core::quiveralg::Algebra<K>) -> (ExchangeGraph<K>, Census) {
    let g = exchange_graph(a, ExchangeCaps::default()).unwrap();
    let h = hasse(&g).unwrap();
    let c = epiclass_census(&g, &h, EpiCaps::default()).unwrap();
    (g, c)
}

#[test]
fn linear_a2_census() {
    let a = q("linear_A", Some(2));
    let (g, c) = census_of(&a);
    assert_eq!(c.rows.len(), 5);
    assert_eq!(c.epiclasses, 5);
    let top = &c.rows[g.top()];
    assert_eq!(top.dim_b, 3);
    assert_eq!(c.rows[g.bottom().unwrap()].dim_b, 0);
    let mut dims: Vec<usize> = c.rows.iter().map(|r| r.dim_b).collect();
    dims.sort();
    assert_eq!(dims, vec![0, 1, 1, 3, 4]);
    assert!(c.rows.iter().all(|r| r.flags.all_pass()));
}

#[test]
fn identity_and_zero() {
    let a = q("linear_A", Some(2));
    let top = SiltingPair::regular(&a).unwrap();
    let e = ring_epi_from_node(&top, EpiCaps::default()).unwrap();
    assert_eq!(e.dim_b(), a.dim());
    assert!(e.structure().check_associative_unital());
    assert!(is_isomorphic(&e.reflection_module(), &regular_module(&a)).unwrap());
    let z = ring_epi_from_node(&SiltingPair::zero(&a), EpiCaps::default()).unwrap();
    assert_eq!(z.dim_b(), 0);
    assert!(z.flags.all_pass());
}

#[test]
fn simple_node_gives_the_field() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    let node = SiltingPair::new(&s.simples[0], vec![1]).unwrap();
    let e = ring_epi_from_node(&node, EpiCaps::default()).unwrap();
    assert_eq!(e.dim_b(), 1);
    assert_eq!(e.flags.tor1_dim, 0);
    assert!(e.factors_through_unit(&s.simples[0]));
    assert!(!e.factors_through_unit(&s.simples[1]));
    assert!(!e.factors_through_unit(&s.projectives[0]));
}

#[test]
fn quotient_by_idempotent_ideal() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    let k = a.field();
    let sigma = TwoTermComplex::stalk1(&a, &[1]);
    let e = quotient_candidate(&s.simples[0], vec![k.one()], Some(sigma)).unwrap();
    assert!(e.flags.all_pass(), "{:?}", e.flags);
    assert_eq!(e.flags.sigma_inverting, Some(true));
}

#[test]
fn dual_numbers_surjection_is_excluded() {
    let d = q("dual_numbers", None);
    let s = standard_modules(&d);
    let e = quotient_candidate(&s.simples[0], vec![d.field().one()], None).unwrap();
    assert!(e.flags.is_ring_hom);
    assert!(e.flags.is_epimorphism);
    assert!(!e.flags.tor1_zero);
    assert_eq!(e.flags.tor1_dim, 1);
    let (g, c) = census_of(&d);
    assert_eq!(g.nodes.len(), 2);
    assert_eq!(c.epiclasses, 2);
    let mut dims: Vec<usize> = c.rows.iter().map(|r| r.dim_b).collect();
    dims.sort();
    assert_eq!(dims, vec![0, 2]);
}

#[test]
fn preprojective_a2_census() {
    let a = q("preprojective_A", Some(2));
    let (_, c) = census_of(&a);
    assert_eq!(c.epiclasses, 6);
}

#[test]
fn diagram_commutes_for_linear_a2() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    let indecs = [s.simples[0].clone(), s.simples[1].clone(), s.projectives[0].clone()];
    let mut modules: Vec<Rep<_>> = indecs.to_vec();
    for x in &indecs {
        for y in &indecs {
            modules.push(Rep::sum_of(&a, &[x.clone(), y.clone()]));
        }
    }
    let g = exchange_graph(&a, ExchangeCaps::default()).unwrap();
    for node in &g.nodes {
        let e = ring_epi_from_node(node, EpiCaps::default()).unwrap();
        assert!(diagram_commutes(node, &e, &modules).unwrap());
    }
}

#[test]
fn universal_extension_tower_reaches_projective() {
    let a = q("linear_A", Some(3));
    let s = standard_modules(&a);
    let p = wide_projective(&s.simples[0], &s.simples, EpiCaps::default()).unwrap();
    assert!(is_isomorphic(&p, &s.projectives[0]).unwrap());
    assert!(matches!(
        wide_projective(&s.simples[0], &s.simples, EpiCaps { tower_dim: 2 }),
        Err(tilt_core::Error::TowerDiverged(2))
    ));
}

#[test]
fn unit_is_multiplicative_on_every_node() {
    for (name, n) in [("linear_A", Some(3)), ("preprojective_A", Some(2))] {
        let a = q(name, n);
        let g = exchange_graph(&a, ExchangeCaps::default()).unwrap();
        let h = hasse(&g).unwrap();
        for (i, node) in g.nodes.iter().enumerate() {
            let e = ring_epi_with_semibrick(node, h.semibrick_at(i), EpiCaps::default()).unwrap();
            let b = e.structure();
            assert!(b.check_associative_unital());
            let mut u1 = vec![a.field().zero(); e.dim_b()];
            for (p, c) in a.one().iter().enumerate() {
                for (o, v) in u1.iter_mut().zip(&e.unit[p]) {
                    a.field().add_mul_assign(o, c, v);
                }
            }
            assert_eq!(b.one, u1);
            for x in 0..a.dim() {
                for y in 0..a.dim() {
                    let xy = a.mul(&a.basis_elem(x), &a.basis_elem(y));
                    let mut uxy = vec![a.field().zero(); e.dim_b()];
                    for (p, c) in xy.iter().enumerate() {
                        for (o, v) in uxy.iter_mut().zip(&e.unit[p]) {
                            a.field().add_mul_assign(o, c, v);
                        }
                    }
                    assert_eq!(b.mul(&e.unit[x], &e.unit[y]), uxy, "{name} node {i}");
                }
            }
        }
    }
}
