//! Two-term complexes of projectives, minimal projective presentations, the
//! Auslander-Reiten translate, and Ext/Tor dimensions.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix};
use crate::quiveralg::{Algebra, Elem};

use super::hom::hom_dim;
use super::rep::{Rep, RepMap};
use super::standard::{injective, left_mult_block, projective, right_mult_block};

/// A map `⊕_s P_{p1[s]} -> ⊕_r P_{p0[r]}` between projectives, given by the
/// matrix `diff[r][s] ∈ e_{p0[r]} A e_{p1[s]}` acting by left multiplication.
#[derive(Clone)]
pub struct TwoTermComplex<K: Field> {
    alg: Algebra<K>,
    pub p1: Vec<usize>,
    pub p0: Vec<usize>,
    pub diff: Vec<Vec<Elem<K>>>,
}

impl<K: Field> fmt::Debug for TwoTermComplex<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

impl<K: Field> TwoTermComplex<K> {
    pub fn new(alg: &Algebra<K>, p1: Vec<usize>, p0: Vec<usize>, diff: Vec<Vec<Elem<K>>>) -> Result<Self> {
        if diff.len() != p0.len() || diff.iter().any(|row| row.len() != p1.len()) {
            return Err(Error::Shape("differential has the wrong shape".into()));
        }
        for (r, row) in diff.iter().enumerate() {
            for (s, x) in row.iter().enumerate() {
                if x.len() != alg.dim() || !alg.in_peirce(x, p0[r], p1[s]) {
                    return Err(Error::Shape(format!("entry ({r},{s}) is not in the right Peirce component")));
                }
            }
        }
        Ok(TwoTermComplex {
            alg: alg.clone(),
            p1,
            p0,
            diff,
        })
    }

    /// `Hom_A(-, A)` shifted back into degrees `-1, 0`, as a complex over
    /// `target`, which must be the opposite algebra.
    pub fn dual(&self, target: &Algebra<K>) -> Result<Self> {
        let diff = (0..self.p1.len())
            .map(|s| (0..self.p0.len()).map(|r| self.diff[r][s].clone()).collect())
            .collect();
        Self::new(target, self.p0.clone(), self.p1.clone(), diff)
    }

    pub fn zero(alg: &Algebra<K>) -> Self {
        TwoTermComplex {
            alg: alg.clone(),
            p1: vec![],
            p0: vec![],
            diff: vec![],
        }
    }

    /// `0 -> ⊕ P_v`, the stalk complex in degree zero.
    pub fn stalk0(alg: &Algebra<K>, vertices: &[usize]) -> Self {
        TwoTermComplex {
            alg: alg.clone(),
            p1: vec![],
            p0: vertices.to_vec(),
            diff: vec![vec![]; vertices.len()],
        }
    }

    /// `⊕ P_v -> 0`, the stalk complex in degree minus one.
    pub fn stalk1(alg: &Algebra<K>, vertices: &[usize]) -> Self {
        TwoTermComplex {
            alg: alg.clone(),
            p1: vertices.to_vec(),
            p0: vec![],
            diff: vec![],
        }
    }

    /// The stalk complex of the regular module.
    pub fn regular(alg: &Algebra<K>) -> Self {
        let vs: Vec<usize> = (0..alg.num_vertices()).collect();
        Self::stalk0(alg, &vs)
    }

    pub fn alg(&self) -> &Algebra<K> {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.p0.is_empty() && self.p1.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let alg = &self.alg;
        let mut p1 = self.p1.clone();
        p1.extend(&other.p1);
        let mut p0 = self.p0.clone();
        p0.extend(&other.p0);
        let mut diff = Vec::new();
        for row in &self.diff {
            let mut r = row.clone();
            r.extend(other.p1.iter().map(|_| alg.zero()));
            diff.push(r);
        }
        for row in &other.diff {
            let mut r: Vec<Elem<K>> = self.p1.iter().map(|_| alg.zero()).collect();
            r.extend(row.iter().cloned());
            diff.push(r);
        }
        TwoTermComplex {
            alg: alg.clone(),
            p1,
            p0,
            diff,
        }
    }

    /// `[P0] - [P1]` in the basis of indecomposable projectives.
    pub fn gkey(&self) -> Vec<i64> {
        let mut g = vec![0i64; self.alg.num_vertices()];
        for &v in &self.p0 {
            g[v] += 1;
        }
        for &v in &self.p1 {
            g[v] -= 1;
        }
        g
    }

    /// Realises the differential as a map of representations `P1 -> P0`.
    pub fn realize(&self) -> RepMap<K> {
        let alg = &self.alg;
        let k = alg.field();
        let src = Rep::sum_of(alg, &self.p1.iter().map(|&v| projective(alg, v)).collect::<Vec<_>>());
        let tgt = Rep::sum_of(alg, &self.p0.iter().map(|&v| projective(alg, v)).collect::<Vec<_>>());
        let comps = (0..alg.num_vertices())
            .map(|kv| {
                let mut m = Matrix::zeros(k, tgt.dims()[kv], src.dims()[kv]);
                let mut ro = 0;
                for (r, &v) in self.p0.iter().enumerate() {
                    let mut co = 0;
                    for (s, &u) in self.p1.iter().enumerate() {
                        let b = left_mult_block(alg, &self.diff[r][s], u, v, kv);
                        m.set_block(ro, co, &b);
                        co += alg.peirce(u, kv).len();
                    }
                    ro += alg.peirce(v, kv).len();
                }
                m
            })
            .collect();
        RepMap::new_unchecked(&src, &tgt, comps)
    }

    /// `H^0`, the cokernel of the differential.
    pub fn cokernel(&self) -> Rep<K> {
        self.realize().cokernel().0
    }

    /// `H^{-1}`, the kernel of the differential.
    pub fn kernel(&self) -> Rep<K> {
        self.realize().kernel().0
    }

    /// The Nakayama functor applied to the differential: `νP1 -> νP0`.
    pub fn nakayama(&self) -> RepMap<K> {
        let alg = &self.alg;
        let k = alg.field();
        let src = Rep::sum_of(alg, &self.p1.iter().map(|&v| injective(alg, v)).collect::<Vec<_>>());
        let tgt = Rep::sum_of(alg, &self.p0.iter().map(|&v| injective(alg, v)).collect::<Vec<_>>());
        let comps = (0..alg.num_vertices())
            .map(|kv| {
                let mut m = Matrix::zeros(k, tgt.dims()[kv], src.dims()[kv]);
                let mut ro = 0;
                for (r, &v) in self.p0.iter().enumerate() {
                    let mut co = 0;
                    for (s, &u) in self.p1.iter().enumerate() {
                        let b = right_mult_block(alg, &self.diff[r][s], kv, v, u).transpose();
                        m.set_block(ro, co, &b);
                        co += alg.peirce(kv, u).len();
                    }
                    ro += alg.peirce(kv, v).len();
                }
                m
            })
            .collect();
        RepMap::new_unchecked(&src, &tgt, comps)
    }

    /// The induced map `Hom(P0, X) -> Hom(P1, X)`, written as a matrix from
    /// `⊕_r X_{p0[r]}` to `⊕_s X_{p1[s]}`.
    pub fn hom_into(&self, x: &Rep<K>) -> Matrix<K> {
        let k = x.field();
        let rows: usize = self.p1.iter().map(|&v| x.dims()[v]).sum();
        let cols: usize = self.p0.iter().map(|&v| x.dims()[v]).sum();
        let mut m = Matrix::zeros(k, rows, cols);
        let mut co = 0;
        for (r, &v) in self.p0.iter().enumerate() {
            let mut ro = 0;
            for (s, &u) in self.p1.iter().enumerate() {
                let b = x.elem_matrix(&self.diff[r][s], v, u);
                m.set_block(ro, co, &b);
                ro += x.dims()[u];
            }
            co += x.dims()[v];
        }
        m
    }

    /// Removes contractible summands `P_v --unit--> P_v`.
    pub fn prune(&self) -> Self {
        let alg = &self.alg;
        let k = alg.field();
        let mut c = self.clone();
        loop {
            let mut found = None;
            'outer: for (r, &v) in c.p0.iter().enumerate() {
                for (s, &u) in c.p1.iter().enumerate() {
                    if u == v && !k.is_zero(&alg.unit_coeff(&c.diff[r][s], v)) {
                        found = Some((r, s, v));
                        break 'outer;
                    }
                }
            }
            let Some((r, s, v)) = found else {
                return c;
            };
            let w = alg.local_inverse(&c.diff[r][s], v).expect("unit");
            for s2 in 0..c.p1.len() {
                if s2 == s || alg.is_zero(&c.diff[r][s2]) {
                    continue;
                }
                let t = alg.mul(&w, &c.diff[r][s2]);
                for r2 in 0..c.p0.len() {
                    let delta = alg.mul(&c.diff[r2][s], &t);
                    c.diff[r2][s2] = alg.sub(&c.diff[r2][s2], &delta);
                }
            }
            c.p0.remove(r);
            c.p1.remove(s);
            c.diff.remove(r);
            for row in c.diff.iter_mut() {
                row.remove(s);
            }
        }
    }

    /// Whether every entry of the differential lies in the radical.
    pub fn is_radical(&self) -> bool {
        let k = self.alg.field();
        self.diff.iter().enumerate().all(|(r, row)| {
            row.iter()
                .enumerate()
                .all(|(s, x)| self.p0[r] != self.p1[s] || k.is_zero(&x[self.p0[r]]))
        })
    }

    /// Composite `other ∘ self` of differentials, for `self: P1 -> P0` and
    /// `other: P0 -> Q0`, as a complex `P1 -> Q0`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if other.p1 != self.p0 {
            return Err(Error::Shape("differentials are not composable".into()));
        }
        let alg = &self.alg;
        let diff = (0..other.p0.len())
            .map(|t| {
                (0..self.p1.len())
                    .map(|s| {
                        let mut acc = alg.zero();
                        for r in 0..self.p0.len() {
                            acc = alg.add(&acc, &alg.mul(&other.diff[t][r], &self.diff[r][s]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(TwoTermComplex {
            alg: alg.clone(),
            p1: self.p1.clone(),
            p0: other.p0.clone(),
            diff,
        })
    }

    pub fn describe(&self) -> String {
        let q = self.alg.quiver();
        let name = |vs: &[usize]| -> String {
            if vs.is_empty() {
                "0".into()
            } else {
                vs.iter()
                    .map(|&v| format!("P{}", q.vertices()[v]))
                    .collect::<Vec<_>>()
                    .join("+")
            }
        };
        let mut s = format!("{} -> {}", name(&self.p1), name(&self.p0));
        for (r, row) in self.diff.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if !self.alg.is_zero(x) {
                    s.push_str(&format!(" [{r},{c}]={}", self.alg.format_elem(x)));
                }
            }
        }
        s
    }
}

/// A minimal projective presentation together with the cover and syzygy.
pub struct Presentation<K: Field> {
    pub module: Rep<K>,
    pub complex: TwoTermComplex<K>,
    pub p0: Rep<K>,
    pub cover: RepMap<K>,
    pub syzygy: Rep<K>,
    pub syz_incl: RepMap<K>,
}

/// Per-vertex complements of the radical, as columns of coordinate vectors.
fn top_generators<K: Field>(m: &Rep<K>) -> Vec<Matrix<K>> {
    m.radical_subspaces().iter().map(|r| r.quotient_maps().1).collect()
}

/// The projective cover `⊕ P_{v_r} -> M` sending `e_{v_r}` to the given
/// generators, returned with the list of vertices.
fn cover_from_generators<K: Field>(m: &Rep<K>, gens: &[Matrix<K>]) -> (Vec<usize>, Rep<K>, RepMap<K>) {
    let alg = m.alg();
    let k = alg.field();
    let mut verts = Vec::new();
    let mut vecs: Vec<Vec<K::Elem>> = Vec::new();
    for (v, g) in gens.iter().enumerate() {
        for c in 0..g.cols() {
            verts.push(v);
            vecs.push(g.col(c));
        }
    }
    let p0 = Rep::sum_of(alg, &verts.iter().map(|&v| projective(alg, v)).collect::<Vec<_>>());
    let acts = m.basis_actions();
    let comps = (0..alg.num_vertices())
        .map(|kv| {
            let mut cols = Vec::new();
            for (r, &v) in verts.iter().enumerate() {
                for &q in alg.peirce(v, kv) {
                    cols.push(acts[q].mul_vec(&vecs[r]));
                }
            }
            if cols.is_empty() {
                Matrix::zeros(k, m.dims()[kv], 0)
            } else {
                Matrix::from_cols(k, m.dims()[kv], &cols)
            }
        })
        .collect();
    let cover = RepMap::new_unchecked(&p0, m, comps);
    (verts, p0, cover)
}

/// Projective cover of `M` (`P0 -> M` with generators a basis of the top).
pub fn projective_cover<K: Field>(m: &Rep<K>) -> (Vec<usize>, Rep<K>, RepMap<K>) {
    cover_from_generators(m, &top_generators(m))
}

pub fn min_proj_presentation<K: Field>(m: &Rep<K>) -> Presentation<K> {
    let alg = m.alg();
    let (p0v, p0, cover) = projective_cover(m);
    let (syz, incl) = cover.kernel();
    let gens = top_generators(&syz);
    let mut p1v = Vec::new();
    let mut cols: Vec<Vec<Elem<K>>> = Vec::new();
    for (s, g) in gens.iter().enumerate() {
        for c in 0..g.cols() {
            let y = incl.comp(s).mul_vec(&g.col(c));
            // y lives in (P0)_s = ⊕_r e_{p0[r]} A e_s
            let mut col = Vec::with_capacity(p0v.len());
            let mut off = 0;
            for &v in &p0v {
                let mut x = alg.zero();
                for (j, &q) in alg.peirce(v, s).iter().enumerate() {
                    x[q] = y[off + j].clone();
                }
                off += alg.peirce(v, s).len();
                col.push(x);
            }
            p1v.push(s);
            cols.push(col);
        }
    }
    let diff = (0..p0v.len())
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let complex = TwoTermComplex {
        alg: alg.clone(),
        p1: p1v,
        p0: p0v,
        diff,
    };
    Presentation {
        module: m.clone(),
        complex,
        p0,
        cover,
        syzygy: syz,
        syz_incl: incl,
    }
}

/// The Auslander-Reiten translate `τM = ker(νP1 -> νP0)`.
pub fn tau<K: Field>(m: &Rep<K>) -> Rep<K> {
    if m.is_zero() {
        return m.clone();
    }
    let pres = min_proj_presentation(m);
    pres.complex.nakayama().kernel().0
}

pub fn ext1_dim<K: Field>(m: &Rep<K>, n: &Rep<K>) -> usize {
    if m.is_zero() || n.is_zero() {
        return 0;
    }
    let pres = min_proj_presentation(m);
    let hom_p0: usize = pres.complex.p0.iter().map(|&v| n.dims()[v]).sum();
    hom_dim(&pres.syzygy, n) + hom_dim(m, n) - hom_p0
}

/// `dim_K M ⊗_A N` for a right module `M` and a left module `N`, given as a
/// right module over the opposite algebra.
pub fn tensor_dim<K: Field>(m: &Rep<K>, n: &Rep<K>) -> usize {
    let alg = m.alg();
    let k = alg.field();
    let (dm, dn) = (m.dims(), n.dims());
    let mut off = Vec::new();
    let mut total = 0;
    for v in 0..dm.len() {
        off.push(total);
        total += dm[v] * dn[v];
    }
    if total == 0 {
        return 0;
    }
    // for a: s -> t, relation (m·a) ⊗ n' - m ⊗ (a·n') with m ∈ M_s, n' ∈ N_t
    let mut rows = Vec::new();
    for (a, arr) in alg.quiver().arrows().iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        let ma = m.arrow(a);
        let na = n.arrow(a);
        for i in 0..dm[s] {
            for j in 0..dn[t] {
                let mut row = vec![k.zero(); total];
                for p in 0..dm[t] {
                    let c = ma.get(p, i);
                    if !k.is_zero(c) {
                        k.add_mul_assign(&mut row[off[t] + p * dn[t] + j], c, &k.one());
                    }
                }
                for q in 0..dn[s] {
                    let c = na.get(q, j);
                    if !k.is_zero(c) {
                        k.sub_mul_assign(&mut row[off[s] + i * dn[s] + q], c, &k.one());
                    }
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return total;
    }
    total - Matrix::from_rows(k, total, rows).rank()
}

/// `(dim M ⊗_A N, dim Tor_1^A(M, N))`.
pub fn tensor_and_tor1<K: Field>(m: &Rep<K>, n: &Rep<K>) -> (usize, usize) {
    let t0 = tensor_dim(m, n);
    if m.is_zero() {
        return (0, 0);
    }
    let pres = min_proj_presentation(m);
    let p0n: usize = pres.complex.p0.iter().map(|&v| n.dims()[v]).sum();
    let tor = tensor_dim(&pres.syzygy, n) + t0 - p0n;
    (t0, tor)
}

/// A right module over `A` reinterpreted as a left module, i.e. a right
/// module over the opposite algebra, via the transpose (dual) action.
pub fn dual_to_left<K: Field>(m: &Rep<K>) -> Rep<K> {
    let op = m.alg().opposite();
    let maps = m.arrow_maps().iter().map(|x| x.transpose()).collect();
    Rep::new_unchecked(&op, m.dims().to_vec(), maps)
}
