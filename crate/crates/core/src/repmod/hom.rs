//! Hom spaces as solution spaces of the intertwining equations, and traces.

use crate::exactalg::{Field, Matrix};

use super::rep::{Rep, RepMap};

/// Coefficient matrix of the linear system whose kernel is `Hom(M, N)`;
/// unknown `off_v + i * dM_v + j` is entry `(i, j)` of the vertex-`v` component.
fn hom_system<K: Field>(m: &Rep<K>, n: &Rep<K>) -> Matrix<K> {
    let k = m.field();
    let alg = m.alg();
    let (dm, dn) = (m.dims(), n.dims());
    let mut off = Vec::with_capacity(dm.len());
    let mut cols = 0;
    for v in 0..dm.len() {
        off.push(cols);
        cols += dm[v] * dn[v];
    }
    let rows: usize = alg
        .quiver()
        .arrows()
        .iter()
        .map(|arr| dn[arr.target] * dm[arr.source])
        .sum();
    let mut sys = Matrix::zeros(k, rows, cols);
    let mut r0 = 0;
    for (a, arr) in alg.quiver().arrows().iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        let na = n.arrow(a);
        let ma = m.arrow(a);
        for i in 0..dn[t] {
            for j in 0..dm[s] {
                let r = r0 + i * dm[s] + j;
                // Σ_k N(a)[i][k] F_s[k][j]
                for kk in 0..dn[s] {
                    let c = na.get(i, kk);
                    if !k.is_zero(c) {
                        let e = sys.get_mut(r, off[s] + kk * dm[s] + j);
                        *e = k.add(e, c);
                    }
                }
                // - Σ_l F_t[i][l] M(a)[l][j]
                for l in 0..dm[t] {
                    let c = ma.get(l, j);
                    if !k.is_zero(c) {
                        let e = sys.get_mut(r, off[t] + i * dm[t] + l);
                        *e = k.sub(e, c);
                    }
                }
            }
        }
        r0 += dn[t] * dm[s];
    }
    sys
}

/// A basis of `Hom_A(M, N)`.
pub fn hom_basis<K: Field>(m: &Rep<K>, n: &Rep<K>) -> Vec<RepMap<K>> {
    if m.is_zero() || n.is_zero() {
        return vec![];
    }
    let sys = hom_system(m, n);
    sys.kernel_basis()
        .into_iter()
        .map(|v| RepMap::from_flat(m, n, &v))
        .collect()
}

pub fn hom_dim<K: Field>(m: &Rep<K>, n: &Rep<K>) -> usize {
    if m.is_zero() || n.is_zero() {
        return 0;
    }
    let sys = hom_system(m, n);
    sys.cols() - sys.rank()
}

/// Per-vertex bases of the trace of `T` in `X`: the sum of the images of all
/// maps `T -> X`.
pub fn trace_subspaces<K: Field>(t: &Rep<K>, x: &Rep<K>) -> Vec<Matrix<K>> {
    let k = x.field();
    let maps = hom_basis(t, x);
    (0..x.dims().len())
        .map(|v| {
            if maps.is_empty() {
                return Matrix::zeros(k, x.dims()[v], 0);
            }
            let blocks: Vec<&Matrix<K>> = maps.iter().map(|f| f.comp(v)).collect();
            Matrix::hstack(k, x.dims()[v], &blocks).column_space()
        })
        .collect()
}

pub fn trace_submodule<K: Field>(t: &Rep<K>, x: &Rep<K>) -> (Rep<K>, RepMap<K>) {
    x.subrep(trace_subspaces(t, x))
}

/// Whether `X ∈ gen T`, i.e. the trace of `T` in `X` is all of `X`.
pub fn in_gen<K: Field>(t: &Rep<K>, x: &Rep<K>) -> bool {
    if x.is_zero() {
        return true;
    }
    let tr = trace_subspaces(t, x);
    tr.iter().zip(x.dims()).all(|(s, d)| s.cols() == *d)
}

/// `in_gen` against the direct sum of several modules.
pub fn in_gen_of<K: Field>(ts: &[Rep<K>], x: &Rep<K>) -> bool {
    trace_dims_of(ts, x) == x.dims()
}

/// Dimension vector of the trace of `⊕ ts` in `X`.
pub fn trace_dims_of<K: Field>(ts: &[Rep<K>], x: &Rep<K>) -> Vec<usize> {
    sum_trace_subspaces(ts, x).iter().map(|s| s.cols()).collect()
}

pub fn sum_trace_subspaces<K: Field>(ts: &[Rep<K>], x: &Rep<K>) -> Vec<Matrix<K>> {
    let k = x.field();
    let spaces: Vec<Vec<Matrix<K>>> = ts.iter().map(|t| trace_subspaces(t, x)).collect();
    (0..x.dims().len())
        .map(|v| {
            let d = x.dims()[v];
            let blocks: Vec<&Matrix<K>> = spaces.iter().map(|s| &s[v]).collect();
            if blocks.iter().all(|b| b.cols() == 0) {
                return Matrix::zeros(k, d, 0);
            }
            Matrix::hstack(k, d, &blocks).column_space()
        })
        .collect()
}
