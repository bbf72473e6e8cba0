mod common;

use common::{fp, q, rep};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tilt_core::quiveralg::Algebra;
use tilt_core::repmod::*;

#[test]
fn standard_modules_linear_a2() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    assert_eq!(s.projectives[0].dims(), &[1, 1]);
    assert_eq!(s.projectives[1].dims(), &[0, 1]);
    assert_eq!(s.injectives[0].dims(), &[1, 0]);
    assert_eq!(s.injectives[1].dims(), &[1, 1]);
    assert!(is_isomorphic(&s.projectives[1], &s.simples[1]).unwrap());
    assert!(is_isomorphic(&s.injectives[0], &s.simples[0]).unwrap());
    for m in s.projectives.iter().chain(&s.injectives) {
        assert!(m.satisfies_relations());
    }
}

#[test]
fn standard_modules_dual_numbers_and_preprojective() {
    let a = q("dual_numbers", None);
    let s = standard_modules(&a);
    assert_eq!(s.projectives[0].dim(), 2);
    assert!(is_isomorphic(&s.projectives[0], &s.injectives[0]).unwrap());
    let b = q("preprojective_A", Some(2));
    let s = standard_modules(&b);
    assert_eq!(s.projectives[0].dims(), &[1, 1]);
    assert_eq!(s.projectives[1].dims(), &[1, 1]);
}

#[test]
fn hom_dimensions() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    assert_eq!(hom_dim(&s.projectives[0], &s.simples[0]), 1);
    assert_eq!(hom_dim(&s.projectives[0], &s.simples[1]), 0);
    let reg = regular_module(&a);
    assert_eq!(hom_dim(&reg, &reg), 3);
    for f in hom_basis(&reg, &reg) {
        assert!(f.is_homomorphism());
    }
}

#[test]
fn duality_spot_check() {
    let a = q("preprojective_A", Some(3));
    let s = standard_modules(&a);
    let m = Rep::sum_of(&a, &[s.projectives[1].clone(), s.simples[0].clone()]);
    for v in 0..3 {
        assert_eq!(hom_dim(&m, &s.injectives[v]), m.dims()[v]);
        assert_eq!(hom_dim(&s.projectives[v], &m), m.dims()[v]);
    }
}

#[test]
fn kernel_cokernel_image() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    let f = &hom_basis(&s.projectives[0], &s.simples[0])[0];
    let kci = f.kernel_cokernel_image();
    assert!(is_isomorphic(&kci.ker, &s.simples[1]).unwrap());
    assert!(kci.coker.is_zero());
    assert!(f.after(&kci.ker_incl).is_zero());
    let id = RepMap::identity(&s.projectives[0]);
    assert!(id.cokernel().0.is_zero());
    let z = RepMap::zero(&s.projectives[0], &s.simples[0]);
    assert!(z.image().0.is_zero());
}

#[test]
fn minimal_presentations() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    let p = min_proj_presentation(&s.simples[0]);
    assert_eq!(p.complex.p0, vec![0]);
    assert_eq!(p.complex.p1, vec![1]);
    assert!(p.complex.is_radical());
    assert!(is_isomorphic(&p.complex.cokernel(), &s.simples[0]).unwrap());
    let p = min_proj_presentation(&s.projectives[0]);
    assert!(p.complex.p1.is_empty());
    let d = q("dual_numbers", None);
    let sd = standard_modules(&d);
    let p = min_proj_presentation(&sd.simples[0]);
    assert_eq!((p.complex.p1.clone(), p.complex.p0.clone()), (vec![0], vec![0]));
    assert_eq!(d.format_elem(&p.complex.diff[0][0]), "x");
}

#[test]
fn auslander_reiten_translate() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    assert!(is_isomorphic(&tau(&s.simples[0]), &s.simples[1]).unwrap());
    for p in &s.projectives {
        assert!(tau(p).is_zero());
    }
    let d = q("dual_numbers", None);
    let sd = standard_modules(&d);
    assert!(is_isomorphic(&tau(&sd.simples[0]), &sd.simples[0]).unwrap());
}

#[test]
fn ext_groups() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    assert_eq!(ext1_dim(&s.simples[0], &s.simples[1]), 1);
    assert_eq!(ext1_dim(&s.simples[1], &s.simples[0]), 0);
    for x in s.simples.iter().chain(&s.projectives) {
        assert_eq!(ext1_dim(&s.projectives[0], x), 0);
    }
    let d = q("dual_numbers", None);
    let sd = standard_modules(&d);
    assert_eq!(ext1_dim(&sd.simples[0], &sd.simples[0]), 1);
}

#[test]
fn tensor_and_tor() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    let op = a.opposite();
    let left_p1 = projective(&op, 0);
    assert_eq!(tensor_and_tor1(&s.simples[1], &left_p1).1, 0);
    // B = A / A e2 A is S1 on both sides
    let left_s1 = simple(&op, 0);
    assert_eq!(tensor_and_tor1(&s.simples[0], &left_s1), (1, 0));
    assert_eq!(tensor_dim(&regular_module(&a), &left_s1), 1);
    let d = q("dual_numbers", None);
    let sd = standard_modules(&d);
    let k_left = simple(&d.opposite(), 0);
    assert_eq!(tensor_and_tor1(&sd.simples[0], &k_left), (1, 1));
    assert_eq!(tensor_and_tor1(&regular_module(&d), &projective(&d.opposite(), 0)), (2, 0));
}

fn conjugated<K: tilt_core::exactalg::Field>(alg: &Algebra<K>, parts: &[Rep<K>], seed: u64) -> Rep<K> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Rep::sum_of(alg, parts).random_base_change(&mut rng).0
}

#[test]
fn decomposition() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    let m = Rep::sum_of(&a, &[s.projectives[0].clone(), s.projectives[0].clone(), s.simples[1].clone()]);
    let g = decompose_grouped(&m).unwrap();
    assert_eq!(g.len(), 2);
    let mult = |x: &Rep<_>| g.iter().find(|(r, _)| is_isomorphic(r, x).unwrap()).map(|e| e.1);
    assert_eq!(mult(&s.projectives[0]), Some(2));
    assert_eq!(mult(&s.simples[1]), Some(1));

    let c = conjugated(&a, &[s.projectives[0].clone(), s.simples[0].clone()], 3);
    let parts = decompose_with_maps(&c).unwrap();
    assert_eq!(parts.len(), 2);
    for p in &parts {
        assert!(p.proj.after(&p.incl).is_iso());
        assert!(p.incl.is_homomorphism() && p.proj.is_homomorphism());
    }
    assert_eq!(decompose(&s.projectives[0]).unwrap().len(), 1);
}

#[test]
fn decomposition_over_small_field() {
    let a = fp("kronecker", None, 2);
    // the three (1,1) indecomposables over F_2 and a conjugated sum
    let x = rep(&a, &[1, 1], &[&[&[1]], &[&[0]]]);
    let y = rep(&a, &[1, 1], &[&[&[0]], &[&[1]]]);
    let z = rep(&a, &[1, 1], &[&[&[1]], &[&[1]]]);
    assert!(!is_isomorphic(&x, &y).unwrap());
    assert!(!is_isomorphic(&x, &z).unwrap());
    let c = conjugated(&a, &[x.clone(), y.clone(), z.clone()], 9);
    let parts = decompose(&c).unwrap();
    assert_eq!(parts.len(), 3);
    for t in [&x, &y, &z] {
        assert_eq!(parts.iter().filter(|p| is_iso_indec(p, t)).count(), 1);
    }
}

#[test]
fn isomorphism_tests() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    let m = Rep::sum_of(&a, &[s.projectives[0].clone(), s.simples[0].clone()]);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (c, _) = m.random_base_change(&mut rng);
    assert!(is_isomorphic(&m, &c).unwrap());
    let ss = Rep::sum_of(&a, &[s.simples[0].clone(), s.simples[1].clone()]);
    assert!(!is_isomorphic(&s.projectives[0], &ss).unwrap());
    assert!(is_isomorphic(&Rep::zero(&a), &Rep::zero(&a)).unwrap());
}

#[test]
fn traces() {
    let a = q("linear_A", Some(2));
    let s = standard_modules(&a);
    assert_eq!(trace_submodule(&s.projectives[0], &s.simples[0]).0.dims(), &[1, 0]);
    assert!(trace_submodule(&s.projectives[0], &s.simples[1]).0.is_zero());
    assert!(trace_submodule(&s.simples[0], &s.projectives[0]).0.is_zero());
    assert!(in_gen(&s.projectives[0], &s.simples[0]));
    let (t, _) = trace_submodule(&s.projectives[1], &s.projectives[0]);
    let (tt, _) = trace_submodule(&s.projectives[1], &t);
    assert_eq!(t.dims(), tt.dims());
}

#[test]
fn bricks() {
    let d = q("dual_numbers", None);
    let sd = standard_modules(&d);
    assert!(is_brick(&sd.simples[0]).unwrap());
    assert!(!is_brick(&sd.projectives[0]).unwrap());
    let a = q("preprojective_A", Some(2));
    for p in standard_modules(&a).projectives {
        assert!(is_brick(&p).unwrap());
    }
}
