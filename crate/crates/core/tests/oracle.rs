mod common;

use common::fp;
use tilt_core::approx::is_presilting;
use tilt_core::exactalg::PrimeField;
use tilt_core::latticewide::hasse;
use tilt_core::oracle::*;
use tilt_core::quiveralg::Algebra;
use tilt_core::repmod::*;
use tilt_core::tautilt::*;

fn dims_of(list: &[Rep<PrimeField>]) -> Vec<Vec<usize>> {
    let mut d: Vec<Vec<usize>> = list.iter().map(|m| m.dims().to_vec()).collect();
    d.sort();
    d
}

#[test]
fn indecomposables_of_small_algebras() {
    let a = fp("linear_A", Some(2), 2);
    let ind = enumerate_reps_upto_iso(&a, &EnumerationCaps::total(2)).unwrap();
    assert_eq!(dims_of(&ind), vec![vec![0, 1], vec![1, 0], vec![1, 1]]);

    let d = fp("dual_numbers", None, 2);
    let ind = enumerate_reps_upto_iso(&d, &EnumerationCaps::total(2)).unwrap();
    assert_eq!(dims_of(&ind), vec![vec![1], vec![2]]);
    assert!(is_isomorphic(&ind[1], &regular_module(&d)).unwrap());

    let k = fp("kronecker", None, 2);
    let caps = EnumerationCaps {
        per_vertex: Some(vec![1, 1]),
        ..EnumerationCaps::total(2)
    };
    let ind = enumerate_reps_upto_iso(&k, &caps).unwrap();
    assert_eq!(ind.iter().filter(|m| m.dims() == [1, 1]).count(), 3);
}

#[test]
fn module_counts_over_f3() {
    let k = fp("kronecker", None, 3);
    let caps = EnumerationCaps {
        per_vertex: Some(vec![1, 1]),
        ..EnumerationCaps::total(2)
    };
    let ind = enumerate_reps_upto_iso(&k, &caps).unwrap();
    assert_eq!(ind.iter().filter(|m| m.dims() == [1, 1]).count(), 4);
    // all modules of linear A2 up to dimension 2: three indecomposables and
    // the three sums of two simples
    let a = fp("linear_A", Some(2), 3);
    assert_eq!(enumerate_modules_upto_iso(&a, &EnumerationCaps::total(2)).unwrap().len(), 6);
}

#[test]
fn caps_are_enforced() {
    let k = fp("kronecker", None, 2);
    let caps = EnumerationCaps {
        max_states: 1000,
        ..EnumerationCaps::total(6)
    };
    assert!(matches!(enumerate_reps_upto_iso(&k, &caps), Err(tilt_core::error::Error::CapTooLarge(_))));
    let rational = common::q("kronecker", None);
    assert!(enumerate_reps_upto_iso(&rational, &EnumerationCaps::total(1)).is_err());
}

#[test]
fn torsion_class_counts() {
    for (name, n, count) in [("linear_A", Some(2), 5), ("preprojective_A", Some(2), 6), ("dual_numbers", None, 2)] {
        let a = fp(name, n, 2);
        let ind = enumerate_reps_upto_iso(&a, &EnumerationCaps::total(4)).unwrap();
        let lat = enumerate_torsion_classes_repfinite(&ind).unwrap();
        assert_eq!(lat.len(), count, "{name}");
        assert!(lat.classes[0].is_empty());
        assert_eq!(lat.classes.last().unwrap().len(), ind.len());
    }
}

#[test]
fn pentagon_covers() {
    let a = fp("linear_A", Some(2), 2);
    let ind = enumerate_reps_upto_iso(&a, &EnumerationCaps::total(2)).unwrap();
    let lat = enumerate_torsion_classes_repfinite(&ind).unwrap();
    assert_eq!(lat.covers.len(), 5);
}

#[test]
fn bricks() {
    let p = fp("preprojective_A", Some(2), 2);
    let b = brute_bricks(&p, &EnumerationCaps::total(2)).unwrap();
    assert_eq!(b.len(), 4);
    assert_eq!(dims_of(&b), vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 1]]);
    let a = fp("linear_A", Some(2), 2);
    assert_eq!(brute_bricks(&a, &EnumerationCaps::total(2)).unwrap().len(), 3);
    let d = fp("dual_numbers", None, 2);
    assert_eq!(dims_of(&brute_bricks(&d, &EnumerationCaps::total(2)).unwrap()), vec![vec![1]]);
}

#[test]
fn homotopy_hom_dims() {
    let a = fp("linear_A", Some(2), 2);
    let s = standard_modules(&a);
    let sigma = min_proj_presentation(&s.simples[0]).complex;
    assert_eq!(homotopy_hom_dim(&sigma, &sigma, 1).unwrap(), 0);
    assert_eq!(homotopy_hom_dim(&sigma, &sigma, 0).unwrap(), 1);
    let d = fp("dual_numbers", None, 2);
    let sd = min_proj_presentation(&standard_modules(&d).simples[0]).complex;
    assert!(homotopy_hom_dim(&sd, &sd, 1).unwrap() > 0);
    for v in 0..2 {
        let stalk = TwoTermComplex::stalk0(&a, &[v]);
        assert_eq!(homotopy_hom_dim(&stalk, &stalk, 0).unwrap(), hom_dim(&s.projectives[v], &s.projectives[v]));
    }
    let both = TwoTermComplex::stalk0(&a, &[0, 1]);
    let shifted = TwoTermComplex::stalk1(&a, &[0]);
    assert_eq!(homotopy_hom_dim(&both, &shifted, 1).unwrap(), 0);
    assert_eq!(homotopy_hom_dim(&shifted, &both, 1).unwrap(), 1);
}

/// `cap` covers every indecomposable; `check` is a larger cap that must not
/// add any.
fn oracle_matches_fast_path(a: &Algebra<PrimeField>, cap: usize, check: usize) {
    let ind = enumerate_reps_upto_iso(a, &EnumerationCaps::total(cap)).unwrap();
    let doubled = enumerate_reps_upto_iso(a, &EnumerationCaps::total(check)).unwrap();
    assert_eq!(ind.len(), doubled.len(), "enumeration is not saturated");
    let lat = enumerate_torsion_classes_repfinite(&ind).unwrap();
    let g = exchange_graph(a, ExchangeCaps::default()).unwrap();
    assert!(g.is_complete());
    assert_eq!(g.nodes.len(), lat.len());
    let h = hasse(&g).unwrap();
    let bricks = brute_bricks(a, &EnumerationCaps::total(cap)).unwrap();
    for b in &h.bricks {
        assert!(position_in(&bricks, b).is_some());
    }
    assert_eq!(h.bricks.len(), bricks.len());
    for m in &ind {
        let sigma = min_proj_presentation(m).complex;
        assert_eq!(is_presilting(&sigma), homotopy_hom_dim(&sigma, &sigma, 1).unwrap() == 0);
    }
}

#[test]
fn oracle_and_fast_path_agree() {
    for p in [2, 3] {
        oracle_matches_fast_path(&fp("linear_A", Some(2), p), 2, 4);
        oracle_matches_fast_path(&fp("linear_A", Some(3), p), 3, 6);
        oracle_matches_fast_path(&fp("preprojective_A", Some(2), p), 2, 4);
    }
    oracle_matches_fast_path(&fp("dual_numbers", None, 2), 2, 4);
    oracle_matches_fast_path(&fp("dual_numbers", None, 3), 2, 3);
    oracle_matches_fast_path(&fp("preprojective_A", Some(3), 2), 4, 6);
}
