mod common;

use std::collections::HashSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tilt_core::approx::is_presilting;
use tilt_core::exactalg::{Field, Matrix, PrimeField};
use tilt_core::format::{parse_module, print_module};
use tilt_core::latticewide::{a_map_membership, filtgen_membership_bounded, gen_leq, hasse, wide_subcategory, Hasse};
use tilt_core::oracle::{enumerate_reps_upto_iso, homotopy_hom_dim, EnumerationCaps};
use tilt_core::quiveralg::Algebra;
use tilt_core::repmod::{hom_basis, hom_dim, in_gen_of, min_proj_presentation, tau, Rep, RepMap};
use tilt_core::tautilt::{exchange_graph, ExchangeCaps, ExchangeGraph};

type F = PrimeField;

struct Fixture {
    alg: Algebra<F>,
    graph: ExchangeGraph<F>,
    hasse: Option<Hasse<F>>,
    indecs: Vec<Rep<F>>,
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        let entries: [(&str, Option<usize>, usize, usize); 8] = [
            ("linear_A", Some(3), 3, 10_000),
            ("dual_numbers", None, 2, 10_000),
            ("preprojective_A", Some(2), 2, 10_000),
            ("preprojective_A", Some(3), 3, 10_000),
            ("two_loop_gdp", None, 3, 10_000),
            ("wild_R", Some(3), 3, 10_000),
            ("kronecker", None, 3, 30),
            ("linear_A", Some(4), 3, 10_000),
        ];
        entries
            .iter()
            .map(|&(name, n, cap, max_nodes)| {
                let alg = common::fp(name, n, 3);
                let graph = exchange_graph(&alg, ExchangeCaps { max_nodes, max_dim: 40 }).unwrap();
                let hasse = graph.is_complete().then(|| hasse(&graph).unwrap());
                let indecs = enumerate_reps_upto_iso(&alg, &EnumerationCaps::total(cap)).unwrap();
                Fixture { alg, graph, hasse, indecs }
            })
            .collect()
    })
}

fn complete() -> Vec<usize> {
    (0..fixtures().len()).filter(|&i| fixtures()[i].hasse.is_some()).collect()
}

/// A direct sum of enumerated indecomposables under a random base change.
fn random_module(f: &Fixture, picks: &[usize], seed: u64) -> Rep<F> {
    let parts: Vec<Rep<F>> = picks.iter().map(|&i| f.indecs[i % f.indecs.len()].clone()).collect();
    let m = Rep::sum_of(&f.alg, &parts);
    m.random_base_change(&mut ChaCha8Rng::seed_from_u64(seed)).0
}

fn random_map(x: &Rep<F>, y: &Rep<F>, seed: u64) -> Option<RepMap<F>> {
    let basis = hom_basis(x, y);
    if basis.is_empty() {
        return None;
    }
    let k = x.field();
    let coeffs: Vec<_> = (0..basis.len()).map(|i| k.from_i64(((seed >> (2 * i)) % 3) as i64 + i as i64)).collect();
    Some(RepMap::combination(x, y, &basis, &coeffs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prime_field_axioms(p in prop::sample::select(vec![2u64, 3, 101, PrimeField::LARGE]), a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let k = PrimeField::new(p).unwrap();
        let (a, b, c) = (k.from_i64(a), k.from_i64(b), k.from_i64(c));
        prop_assert_eq!(k.mul(&k.add(&a, &b), &c), k.add(&k.mul(&a, &c), &k.mul(&b, &c)));
        prop_assert_eq!(k.sub(&k.add(&a, &b), &b), a);
        if !k.is_zero(&a) {
            prop_assert!(k.is_one(&k.mul(&a, &k.inv(&a).unwrap())));
        }
    }

    #[test]
    fn rank_nullity(rows in 1usize..6, cols in 1usize..6, data in prop::collection::vec(0i64..5, 36)) {
        let k = PrimeField::new(5).unwrap();
        let m = Matrix::from_fn(&k, rows, cols, |r, c| k.from_i64(data[r * 6 + c]));
        let ker = m.kernel_basis();
        prop_assert_eq!(m.rank() + ker.len(), cols);
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|x| k.is_zero(x)));
        }
        if rows == cols {
            prop_assert_eq!(m.inverse().is_some(), m.rank() == rows);
            if let Some(inv) = m.inverse() {
                prop_assert!(m.mul(&inv).is_identity());
            }
        }
    }

    #[test]
    fn mutation_is_an_involution(fi in 0usize..8, node in any::<usize>(), pos in any::<usize>()) {
        let f = &fixtures()[fi];
        let g = &f.graph;
        let i = node % g.nodes.len();
        let p = &g.nodes[i];
        prop_assert_eq!(p.num_positions(), f.alg.num_vertices());
        let pos = pos % p.num_positions();
        let q = p.mutate(pos).unwrap();
        let back = p.exchanged_position(&q).expect("mutation changes one summand");
        prop_assert_eq!(q.mutate(back).unwrap().canonical_key(), p.canonical_key());
        if let Some(j) = g.neighbours[i][pos] {
            prop_assert_eq!(g.find(&q), Some(j));
        }
        prop_assert!(q.validate().ok());
    }

    #[test]
    fn presilting_iff_tau_rigid(fi in 0usize..8, picks in prop::collection::vec(any::<usize>(), 1..3), seed in any::<u64>()) {
        let f = &fixtures()[fi];
        let m = random_module(f, &picks, seed);
        let sigma = min_proj_presentation(&m).complex;
        let fast = is_presilting(&sigma);
        prop_assert_eq!(fast, hom_dim(&m, &tau(&m)) == 0);
        prop_assert_eq!(fast, homotopy_hom_dim(&sigma, &sigma, 1).unwrap() == 0);
    }

    #[test]
    fn module_files_round_trip(fi in 0usize..8, picks in prop::collection::vec(any::<usize>(), 1..3), seed in any::<u64>()) {
        let f = &fixtures()[fi];
        let m = random_module(f, &picks, seed);
        let back = parse_module(&f.alg, &print_module(&m)).unwrap();
        prop_assert_eq!(back.dims(), m.dims());
        prop_assert_eq!(back.arrow_maps(), m.arrow_maps());
    }

    #[test]
    fn torsion_wide_identities(ci in any::<usize>(), node in any::<usize>(), picks in prop::collection::vec(any::<usize>(), 1..3), seed in any::<u64>()) {
        let c = complete();
        let f = &fixtures()[c[ci % c.len()]];
        let h = f.hasse.as_ref().unwrap();
        let i = node % f.graph.nodes.len();
        let t = &f.graph.nodes[i];
        let semibrick = h.semibrick_at(i);
        let w = wide_subcategory(t, semibrick.clone()).unwrap();
        let x = random_module(f, &picks, seed);
        let inw = w.contains(&x);
        prop_assert_eq!(inw, w.contains_closed_form(&x));
        prop_assert_eq!(inw, a_map_membership(t, &x).unwrap());
        // FiltGen of the semibrick is the torsion class of the node
        prop_assert_eq!(in_gen_of(&t.indec_summands(), &x), filtgen_membership_bounded(&semibrick, &x, 16).unwrap());
    }

    #[test]
    fn wide_subcategories_are_closed(ci in any::<usize>(), node in any::<usize>(), a in any::<usize>(), b in any::<usize>(), seed in any::<u64>()) {
        let c = complete();
        let f = &fixtures()[c[ci % c.len()]];
        let h = f.hasse.as_ref().unwrap();
        let i = node % f.graph.nodes.len();
        let w = wide_subcategory(&f.graph.nodes[i], h.semibrick_at(i)).unwrap();
        let members: Vec<&Rep<F>> = f.indecs.iter().chain(&w.semibrick).filter(|x| w.contains(x)).collect();
        prop_assume!(!members.is_empty());
        let x = members[a % members.len()];
        let y = members[b % members.len()];
        if let Some(map) = random_map(x, y, seed) {
            let kc = map.kernel_cokernel_image();
            prop_assert!(w.contains(&kc.ker));
            prop_assert!(w.contains(&kc.coker));
            prop_assert!(w.contains(&kc.im));
        }
        let sum = Rep::sum_of(&f.alg, &[x.clone(), y.clone()]);
        prop_assert!(w.contains(&sum));
    }

    #[test]
    fn generation_order_is_the_hasse_order(ci in any::<usize>(), a in any::<usize>(), b in any::<usize>()) {
        let c = complete();
        let f = &fixtures()[c[ci % c.len()]];
        let h = f.hasse.as_ref().unwrap();
        let n = f.graph.nodes.len();
        let (i, j) = (a % n, b % n);
        let leq = h.leq_closure();
        prop_assert_eq!(gen_leq(&f.graph.nodes[i], &f.graph.nodes[j]), leq(i, j));
    }
}

#[test]
fn exchange_graphs_are_regular() {
    for f in fixtures() {
        let n = f.alg.num_vertices();
        for (i, p) in f.graph.nodes.iter().enumerate() {
            assert_eq!(p.num_positions(), n);
            if f.graph.is_complete() {
                assert!(f.graph.neighbours[i].iter().all(|x| x.is_some()));
            }
        }
        if f.graph.is_complete() {
            assert_eq!(2 * f.graph.edges.len(), n * f.graph.nodes.len());
        }
    }
}

#[test]
fn semibricks_determine_nodes() {
    for &c in &complete() {
        let f = &fixtures()[c];
        let h = f.hasse.as_ref().unwrap();
        let keys: HashSet<Vec<usize>> = (0..h.num_nodes)
            .map(|i| {
                let mut s = h.semibrick_ids(i);
                s.sort();
                s
            })
            .collect();
        assert_eq!(keys.len(), h.num_nodes);
    }
}
