//! Indecomposable projectives `e_v A`, injectives `D(A e_v)`, simples, and
//! the maps between projectives and injectives induced by algebra elements.

use crate::exactalg::{Field, Matrix};
use crate::quiveralg::{Algebra, BasedAlgebra};

use super::rep::{Rep, RepMap};

/// Matrix of `y ↦ x·y` from `e_u A e_k` to `e_v A e_k`, for `x ∈ e_v A e_u`.
pub fn left_mult_block<K: Field>(alg: &BasedAlgebra<K>, x: &[K::Elem], u: usize, v: usize, k: usize) -> Matrix<K> {
    let f = alg.field();
    let rows = alg.peirce(v, k);
    let cols = alg.peirce(u, k);
    let mut m = Matrix::zeros(f, rows.len(), cols.len());
    for (c, &q) in cols.iter().enumerate() {
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (l, coef) in alg.mul_basis(i, q) {
                let r = alg.peirce_pos(*l);
                let e = m.get_mut(r, c);
                f.add_mul_assign(e, xi, coef);
            }
        }
    }
    m
}

/// Matrix of `y ↦ y·x` from `e_k A e_v` to `e_k A e_u`, for `x ∈ e_v A e_u`.
pub fn right_mult_block<K: Field>(alg: &BasedAlgebra<K>, x: &[K::Elem], k: usize, v: usize, u: usize) -> Matrix<K> {
    let f = alg.field();
    let rows = alg.peirce(k, u);
    let cols = alg.peirce(k, v);
    let mut m = Matrix::zeros(f, rows.len(), cols.len());
    for (c, &q) in cols.iter().enumerate() {
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (l, coef) in alg.mul_basis(q, i) {
                let r = alg.peirce_pos(*l);
                let e = m.get_mut(r, c);
                f.add_mul_assign(e, xi, coef);
            }
        }
    }
    m
}

/// `P_v = e_v A`, with basis at vertex `k` the basis paths from `v` to `k`.
pub fn projective<K: Field>(alg: &Algebra<K>, v: usize) -> Rep<K> {
    let q = alg.quiver();
    let dims: Vec<usize> = (0..alg.num_vertices()).map(|k| alg.peirce(v, k).len()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| right_mult_block(alg, &alg.arrow_elem(a), v, arr.source, arr.target))
        .collect();
    Rep::new_unchecked(alg, dims, maps)
}

/// `I_u = D(A e_u)`, with vertex `k` space dual to the paths from `k` to `u`.
pub fn injective<K: Field>(alg: &Algebra<K>, u: usize) -> Rep<K> {
    let q = alg.quiver();
    let dims: Vec<usize> = (0..alg.num_vertices()).map(|k| alg.peirce(k, u).len()).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| left_mult_block(alg, &alg.arrow_elem(a), arr.target, arr.source, u).transpose())
        .collect();
    Rep::new_unchecked(alg, dims, maps)
}

pub fn simple<K: Field>(alg: &Algebra<K>, v: usize) -> Rep<K> {
    let k = alg.field();
    let mut dims = vec![0; alg.num_vertices()];
    dims[v] = 1;
    let maps = alg
        .quiver()
        .arrows()
        .iter()
        .map(|arr| Matrix::zeros(k, dims[arr.target], dims[arr.source]))
        .collect();
    Rep::new_unchecked(alg, dims, maps)
}

/// The regular module `A_A = ⊕_v P_v` (in vertex order).
pub fn regular_module<K: Field>(alg: &Algebra<K>) -> Rep<K> {
    let ps: Vec<Rep<K>> = (0..alg.num_vertices()).map(|v| projective(alg, v)).collect();
    Rep::sum_of(alg, &ps)
}

/// Left multiplication by `x ∈ e_v A e_u` as a map `P_u -> P_v`.
pub fn projective_map<K: Field>(alg: &Algebra<K>, x: &[K::Elem], u: usize, v: usize) -> RepMap<K> {
    let src = projective(alg, u);
    let tgt = projective(alg, v);
    projective_map_between(alg, x, u, v, &src, &tgt)
}

pub(crate) fn projective_map_between<K: Field>(
    alg: &Algebra<K>,
    x: &[K::Elem],
    u: usize,
    v: usize,
    src: &Rep<K>,
    tgt: &Rep<K>,
) -> RepMap<K> {
    let comps = (0..alg.num_vertices()).map(|k| left_mult_block(alg, x, u, v, k)).collect();
    RepMap::new_unchecked(src, tgt, comps)
}

/// The Nakayama functor on `x ∈ e_v A e_u`: the map `I_u -> I_v` dual to
/// right multiplication by `x`.
pub fn injective_map_between<K: Field>(
    alg: &Algebra<K>,
    x: &[K::Elem],
    u: usize,
    v: usize,
    src: &Rep<K>,
    tgt: &Rep<K>,
) -> RepMap<K> {
    let comps = (0..alg.num_vertices())
        .map(|k| right_mult_block(alg, x, k, v, u).transpose())
        .collect();
    RepMap::new_unchecked(src, tgt, comps)
}

/// Projectives, simples and injectives for every vertex.
pub struct StandardModules<K: Field> {
    pub projectives: Vec<Rep<K>>,
    pub simples: Vec<Rep<K>>,
    pub injectives: Vec<Rep<K>>,
}

pub fn standard_modules<K: Field>(alg: &Algebra<K>) -> StandardModules<K> {
    let n = alg.num_vertices();
    StandardModules {
        projectives: (0..n).map(|v| projective(alg, v)).collect(),
        simples: (0..n).map(|v| simple(alg, v)).collect(),
        injectives: (0..n).map(|v| injective(alg, v)).collect(),
    }
}
