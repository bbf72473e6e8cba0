//! Ring epimorphisms `A -> B` attached to support τ-tilting pairs, their
//! verification, and the census over a complete exchange graph.
//!
//! The reflection of `A_A` into a wide subcategory is `R = ⊕ Q_i^{m_i}` with
//! `Q_i` the projective covers of the semibrick members in the wide
//! subcategory, and `η(1) = r0 = (r0_{i,c})`. `B = End_A(R)` with
//! composition as multiplication. Its basis consists of block units: a copy
//! `(i,c)` as target, a copy `(j,b)` as source and a basis map
//! `h: Q_j -> Q_i`. Evaluation at `r0` identifies `B` with `R`, and the unit
//! sends `a` to the endomorphism extending `r0 ↦ r0·a`.

use std::collections::HashMap;

use serde::Serialize;

use crate::approx::{approximation_triangle_by, x_sigma_membership};
use crate::error::{Error, Result};
use crate::exactalg::{EchelonSpace, Field, Matrix};
use crate::latticewide::{a_map_membership, semibrick_at, Hasse};
use crate::quiveralg::Algebra;
use crate::repmod::{
    hom_basis, is_iso_indec, local_data, min_proj_presentation, standard_modules, tensor_dim, Rep, RepMap,
    TwoTermComplex,
};
use crate::tautilt::{ExchangeGraph, SiltingPair};

/// A finite dimensional algebra given by structure constants: `left[a]` is
/// the matrix of `y ↦ b_a·y` in the basis.
#[derive(Clone, Debug)]
pub struct FdAlgebra<K: Field> {
    pub field: K,
    pub left: Vec<Matrix<K>>,
    pub one: Vec<K::Elem>,
}

impl<K: Field> FdAlgebra<K> {
    pub fn dim(&self) -> usize {
        self.one.len()
    }

    /// Coefficient of `b_k` in `b_i·b_j`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &K::Elem {
        self.left[i].get(k, j)
    }

    pub fn mul(&self, x: &[K::Elem], y: &[K::Elem]) -> Vec<K::Elem> {
        let k = &self.field;
        let mut out = vec![k.zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if k.is_zero(xa) {
                continue;
            }
            let ly = self.left[a].mul_vec(y);
            for (o, v) in out.iter_mut().zip(&ly) {
                k.add_mul_assign(o, xa, v);
            }
        }
        out
    }

    pub fn check_associative_unital(&self) -> bool {
        let n = self.dim();
        let e = |i: usize| {
            let mut v = vec![self.field.zero(); n];
            v[i] = self.field.one();
            v
        };
        (0..n).all(|i| {
            self.mul(&self.one, &e(i)) == e(i)
                && self.mul(&e(i), &self.one) == e(i)
                && (0..n).all(|j| {
                    let ij = self.mul(&e(i), &e(j));
                    (0..n).all(|l| self.mul(&ij, &e(l)) == self.mul(&e(i), &self.mul(&e(j), &e(l))))
                })
        })
    }
}

/// Outcome of the verification clauses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FlagReport {
    pub is_ring_hom: bool,
    pub is_epimorphism: bool,
    pub tor1_zero: bool,
    /// `None` when the candidate carries no presentation to invert.
    pub sigma_inverting: Option<bool>,
    pub essential_image_consistent: Option<bool>,
    pub dim_b: usize,
    pub dim_b_tensor_b: usize,
    pub tor1_dim: usize,
    pub failures: Vec<String>,
}

impl FlagReport {
    pub fn all_pass(&self) -> bool {
        self.is_ring_hom
            && self.is_epimorphism
            && self.tor1_zero
            && self.sigma_inverting != Some(false)
            && self.essential_image_consistent != Some(false)
    }
}

fn apply<K: Field>(h: &RepMap<K>, v: &[K::Elem]) -> Vec<K::Elem> {
    let offs = h.source.offsets();
    let mut out = Vec::with_capacity(h.target.dim());
    for (w, d) in h.source.dims().iter().enumerate() {
        out.extend(h.comp(w).mul_vec(&v[offs[w]..offs[w] + d]));
    }
    out
}

/// `v·x` for a vector of the total space of `M` and an algebra element `x`.
fn act<K: Field>(m: &Rep<K>, v: &[K::Elem], x: &[K::Elem]) -> Vec<K::Elem> {
    let alg = m.alg();
    let k = m.field();
    let offs = m.offsets();
    let acts = m.basis_actions();
    let mut out = vec![k.zero(); m.dim()];
    for (p, xp) in x.iter().enumerate() {
        if k.is_zero(xp) {
            continue;
        }
        let path = &alg.basis()[p];
        let (s, t) = (path.source, path.target);
        if m.dims()[s] == 0 || m.dims()[t] == 0 {
            continue;
        }
        let img = acts[p].mul_vec(&v[offs[s]..offs[s] + m.dims()[s]]);
        for (o, y) in out[offs[t]..].iter_mut().zip(&img) {
            k.add_mul_assign(o, xp, y);
        }
    }
    out
}

/// A ring homomorphism `A -> B = End(R)` for `R = ⊕ Q_i^{m_i}` and a vector
/// `r0 ∈ R` such that evaluation at `r0` is bijective on `End(R)`.
#[derive(Clone)]
pub struct RingEpiPresentation<K: Field> {
    /// Pairwise non-isomorphic indecomposable summands `Q_i` of `R`.
    pub projectives: Vec<Rep<K>>,
    /// `generators[i][c]` is `r0_{i,c} ∈ Q_i`; there are `m_i` of them.
    pub generators: Vec<Vec<Vec<K::Elem>>>,
    /// `homs[j][i]` is a basis of `Hom(Q_j, Q_i)`.
    pub homs: Vec<Vec<Vec<RepMap<K>>>>,
    /// `unit[p]` holds the coordinates in `B` of the image of basis element `p` of `A`.
    pub unit: Vec<Vec<K::Elem>>,
    pub sigma1: Option<TwoTermComplex<K>>,
    pub semibrick: Vec<Rep<K>>,
    pub flags: FlagReport,
    alg: Algebra<K>,
    /// Copies `(i, c)` in basis order.
    copies: Vec<(usize, usize)>,
    /// Offset of each target copy in the basis of `B`.
    row_off: Vec<usize>,
    /// `col_off[i][s]`: offset of source copy `s` among the columns of `Φ_i`.
    col_off: Vec<Vec<usize>>,
    /// `Φ_i`: columns `h(r0_{j,b})` for all source copies and `h: Q_j -> Q_i`.
    eval: Vec<Matrix<K>>,
    eval_inv: Vec<Matrix<K>>,
    /// `flats[j][i]`: the maps of `homs[j][i]` flattened into columns.
    flats: Vec<Vec<Matrix<K>>>,
}

impl<K: Field> RingEpiPresentation<K> {
    /// Builds `B` from summands `Q_i` and their generators. Fails if
    /// evaluation at `r0` is not bijective.
    pub fn from_parts(
        alg: &Algebra<K>,
        parts: Vec<(Rep<K>, Vec<Vec<K::Elem>>)>,
        homs: Option<Vec<Vec<Vec<RepMap<K>>>>>,
        sigma1: Option<TwoTermComplex<K>>,
        semibrick: Vec<Rep<K>>,
    ) -> Result<Self> {
        let k = alg.field().clone();
        let (projectives, generators): (Vec<Rep<K>>, Vec<Vec<Vec<K::Elem>>>) = parts.into_iter().unzip();
        let r = projectives.len();
        let homs = homs.unwrap_or_else(|| {
            (0..r)
                .map(|j| (0..r).map(|i| hom_basis(&projectives[j], &projectives[i])).collect())
                .collect()
        });
        let copies: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..generators[i].len()).map(move |c| (i, c))).collect();
        let mut row_off = Vec::with_capacity(copies.len());
        let mut acc = 0;
        for &(i, _) in &copies {
            row_off.push(acc);
            acc += projectives[i].dim();
        }
        let mut col_off = Vec::with_capacity(r);
        let mut eval = Vec::with_capacity(r);
        let mut eval_inv = Vec::with_capacity(r);
        for i in 0..r {
            let mut offs = Vec::with_capacity(copies.len());
            let mut cols: Vec<Vec<K::Elem>> = Vec::new();
            for &(j, b) in &copies {
                offs.push(cols.len());
                for h in &homs[j][i] {
                    cols.push(apply(h, &generators[j][b]));
                }
            }
            let d = projectives[i].dim();
            if cols.len() != d {
                return Err(Error::VerificationFailed(format!(
                    "evaluation onto summand {i} maps a space of dimension {} to one of dimension {d}",
                    cols.len()
                )));
            }
            let phi = Matrix::from_cols(&k, d, &cols);
            let inv = phi.inverse().ok_or_else(|| {
                Error::VerificationFailed(format!("evaluation onto summand {i} is not bijective"))
            })?;
            col_off.push(offs);
            eval.push(phi);
            eval_inv.push(inv);
        }
        let flats = homs
            .iter()
            .map(|row| {
                row.iter()
                    .map(|hs| {
                        let cols: Vec<Vec<K::Elem>> = hs.iter().map(|h| h.flatten()).collect();
                        let len = cols.first().map_or(0, |c| c.len());
                        Matrix::from_cols(&k, len, &cols)
                    })
                    .collect()
            })
            .collect();
        let mut e = RingEpiPresentation {
            projectives,
            generators,
            homs,
            unit: Vec::new(),
            sigma1,
            semibrick,
            flags: FlagReport::default(),
            alg: alg.clone(),
            copies,
            row_off,
            col_off,
            eval,
            eval_inv,
            flats,
        };
        e.unit = (0..alg.dim()).map(|p| e.unit_coords(&alg.basis_elem(p))).collect();
        Ok(e)
    }

    pub fn alg(&self) -> &Algebra<K> {
        &self.alg
    }

    pub fn dim_b(&self) -> usize {
        self.row_off.last().map_or(0, |o| o + self.projectives[self.copies.last().unwrap().0].dim())
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.generators.iter().map(|g| g.len()).collect()
    }

    /// `R = ⊕ Q_i^{m_i}`, which is `B_B` restricted to `A`.
    pub fn reflection_module(&self) -> Rep<K> {
        let parts: Vec<Rep<K>> = self.copies.iter().map(|&(i, _)| self.projectives[i].clone()).collect();
        Rep::sum_of(&self.alg, &parts)
    }

    /// `r0 = η(1)` in the total space of `R`.
    pub fn r0(&self) -> Vec<K::Elem> {
        let r = self.reflection_module();
        let offs = r.offsets();
        let k = self.alg.field();
        let mut out = vec![k.zero(); r.dim()];
        let mut inner = vec![0; self.alg.num_vertices()];
        for &(i, c) in &self.copies {
            let q = &self.projectives[i];
            let qo = q.offsets();
            for (v, d) in q.dims().iter().enumerate() {
                for t in 0..*d {
                    out[offs[v] + inner[v] + t] = self.generators[i][c][qo[v] + t].clone();
                }
                inner[v] += d;
            }
        }
        out
    }

    fn unit_coords(&self, x: &[K::Elem]) -> Vec<K::Elem> {
        let mut out = Vec::with_capacity(self.dim_b());
        for &(i, c) in &self.copies {
            let target = act(&self.projectives[i], &self.generators[i][c], x);
            out.extend(self.eval_inv[i].mul_vec(&target));
        }
        out
    }

    /// Coordinates of `h'∘h` for `h ∈ Hom(Q_j, Q_i)` and each basis
    /// `h' ∈ Hom(Q_i, Q_i2)`, as matrices `Hom(Q_j,Q_i) -> Hom(Q_j,Q_i2)`.
    fn composition(&self, j: usize, i: usize, i2: usize) -> Vec<Matrix<K>> {
        let k = self.alg.field();
        let (src, tgt) = (&self.homs[j][i], &self.homs[j][i2]);
        let outer = &self.homs[i][i2];
        if src.is_empty() || tgt.is_empty() {
            return outer.iter().map(|_| Matrix::zeros(k, tgt.len(), src.len())).collect();
        }
        let flat = &self.flats[j][i2];
        outer
            .iter()
            .map(|g| {
                let cols: Vec<Vec<K::Elem>> = src.iter().map(|h| g.after(h).flatten()).collect();
                let rhs = Matrix::from_cols(k, flat.rows(), &cols);
                flat.solve_right(&rhs).expect("composite of basis maps lies in the Hom space")
            })
            .collect()
    }

    /// The structure constants of `B` in the block basis. Quadratic in
    /// `dim B`; intended for export and small cases.
    pub fn structure(&self) -> FdAlgebra<K> {
        let k = self.alg.field().clone();
        let n = self.dim_b();
        let r = self.projectives.len();
        let mut comp: HashMap<(usize, usize, usize), Vec<Matrix<K>>> = HashMap::new();
        for j in 0..r {
            for i in 0..r {
                for i2 in 0..r {
                    comp.insert((j, i, i2), self.composition(j, i, i2));
                }
            }
        }
        // basis element (t, s, h): target copy t, source copy s, h ∈ Hom(Q_j(s), Q_i(t))
        let index = |t: usize, s: usize, h: usize| self.row_off[t] + self.col_off[self.copies[t].0][s] + h;
        let mut left = vec![Matrix::zeros(&k, n, n); n];
        for (t1, &(i1, _)) in self.copies.iter().enumerate() {
            for (s1, &(j1, _)) in self.copies.iter().enumerate() {
                for h1 in 0..self.homs[j1][i1].len() {
                    let a = index(t1, s1, h1);
                    // b_a · (t2 = s1, s2, h2) = (t1, s2, h1∘h2)
                    for (s2, &(j2, _)) in self.copies.iter().enumerate() {
                        let cm = &comp[&(j2, j1, i1)][h1];
                        for h2 in 0..self.homs[j2][j1].len() {
                            let col = index(s1, s2, h2);
                            for h in 0..self.homs[j2][i1].len() {
                                left[a].set(index(t1, s2, h), col, cm.get(h, h2).clone());
                            }
                        }
                    }
                }
            }
        }
        let one = self.unit_of(&self.alg.one());
        FdAlgebra { field: k, left, one }
    }

    /// Coordinates of the identity of `R` in the block basis.
    fn identity_coords(&self) -> Option<Vec<K::Elem>> {
        let k = self.alg.field();
        let mut out = vec![k.zero(); self.dim_b()];
        for (t, &(i, _)) in self.copies.iter().enumerate() {
            let id = RepMap::identity(&self.projectives[i]).flatten();
            let c = self.flats[i][i].solve(&id)?;
            let base = self.row_off[t] + self.col_off[i][t];
            for (h, x) in c.into_iter().enumerate() {
                out[base + h] = x;
            }
        }
        Some(out)
    }

    /// Whether `X` is a `B`-module through the unit: evaluation
    /// `Hom_A(R, X) -> X, f ↦ f(r0)` is bijective.
    pub fn factors_through_unit(&self, x: &Rep<K>) -> bool {
        if x.is_zero() {
            return true;
        }
        let mut cols: Vec<Vec<K::Elem>> = Vec::new();
        for (i, q) in self.projectives.iter().enumerate() {
            let hs = hom_basis(q, x);
            if hs.is_empty() {
                continue;
            }
            for g in &self.generators[i] {
                for h in &hs {
                    cols.push(apply(h, g));
                }
            }
            if cols.len() > x.dim() {
                return false;
            }
        }
        cols.len() == x.dim() && Matrix::from_cols(x.field(), x.dim(), &cols).rank() == x.dim()
    }

    /// Unit clause. The unit is `a ↦ Σ_i Φ_i^{-1}(r0·a)`, so `u(a)` is an
    /// `A`-linear endomorphism with `u(a)(r0) = r0·a`; with evaluation at
    /// `r0` injective this makes `u` multiplicative. Each ingredient is
    /// checked, as is `u(1) = 1`.
    fn check_ring_hom(&self) -> std::result::Result<(), String> {
        for (j, row) in self.homs.iter().enumerate() {
            for (i, hs) in row.iter().enumerate() {
                if hs.iter().any(|h| !h.is_homomorphism()) {
                    return Err(format!("a basis map Q{j} -> Q{i} is not a homomorphism"));
                }
            }
        }
        for (i, (phi, inv)) in self.eval.iter().zip(&self.eval_inv).enumerate() {
            if !phi.mul(inv).is_identity() {
                return Err(format!("evaluation onto summand {i} is not inverted"));
            }
        }
        let alg = &self.alg;
        let gens: Vec<Vec<K::Elem>> = (0..alg.num_vertices())
            .map(|v| alg.idempotent(v))
            .chain((0..alg.quiver().arrows().len()).map(|a| alg.arrow_elem(a)))
            .collect();
        for x in &gens {
            let ux = self.unit_of(x);
            for (t, &(i, c)) in self.copies.iter().enumerate() {
                let d = self.projectives[i].dim();
                let at_r0 = self.eval[i].mul_vec(&ux[self.row_off[t]..self.row_off[t] + d]);
                if at_r0 != act(&self.projectives[i], &self.generators[i][c], x) {
                    return Err("u(a)(r0) differs from r0·a".into());
                }
            }
        }
        match self.identity_coords() {
            Some(id) if id == self.unit_of(&alg.one()) => Ok(()),
            _ => Err("u(1) is not the identity".into()),
        }
    }

    /// `u(x)` as coordinates in `B`.
    pub fn unit_of(&self, x: &[K::Elem]) -> Vec<K::Elem> {
        let k = self.alg.field();
        let mut out = vec![k.zero(); self.dim_b()];
        for (c, u) in x.iter().zip(&self.unit) {
            if !k.is_zero(c) {
                for (o, v) in out.iter_mut().zip(u) {
                    k.add_mul_assign(o, c, v);
                }
            }
        }
        out
    }
}

/// The left modules `B·ε_j = Hom_A(Q_j, R)`, with `a` acting by `u(a)∘-`,
/// built from cached composition constants.
struct Columns<'a, K: Field> {
    e: &'a RingEpiPresentation<K>,
    comp: HashMap<(usize, usize, usize), Vec<Matrix<K>>>,
    basis_acts: HashMap<(usize, usize), Matrix<K>>,
}

impl<'a, K: Field> Columns<'a, K> {
    fn new(e: &'a RingEpiPresentation<K>) -> Self {
        Columns { e, comp: HashMap::new(), basis_acts: HashMap::new() }
    }

    fn dim(&self, j: usize) -> usize {
        self.e.copies.iter().map(|&(i, _)| self.e.homs[j][i].len()).sum()
    }

    fn basis_action(&mut self, j: usize, p: usize) -> &Matrix<K> {
        if !self.basis_acts.contains_key(&(j, p)) {
            let e = self.e;
            let k = e.alg.field();
            let dim = self.dim(j);
            let mut offs = Vec::with_capacity(e.copies.len());
            let mut acc = 0;
            for &(i, _) in &e.copies {
                offs.push(acc);
                acc += e.homs[j][i].len();
            }
            let ux = &e.unit[p];
            let mut m = Matrix::zeros(k, dim, dim);
            for (t2, &(i2, _)) in e.copies.iter().enumerate() {
                for (t, &(i, _)) in e.copies.iter().enumerate() {
                    let base = e.row_off[t2] + e.col_off[i2][t];
                    let coefs = &ux[base..base + e.homs[i][i2].len()];
                    if coefs.iter().all(|c| k.is_zero(c)) {
                        continue;
                    }
                    let cm = self.comp.entry((j, i, i2)).or_insert_with(|| e.composition(j, i, i2));
                    let mut block = Matrix::zeros(k, e.homs[j][i2].len(), e.homs[j][i].len());
                    for (c, g) in coefs.iter().zip(cm.iter()) {
                        if !k.is_zero(c) {
                            block.add_scaled(c, g);
                        }
                    }
                    m.set_block(offs[t2], offs[t], &block);
                }
            }
            self.basis_acts.insert((j, p), m);
        }
        &self.basis_acts[&(j, p)]
    }

    fn action(&mut self, j: usize, x: &[K::Elem]) -> Matrix<K> {
        let k = self.e.alg.field().clone();
        let dim = self.dim(j);
        let mut m = Matrix::zeros(&k, dim, dim);
        for (p, c) in x.iter().enumerate() {
            if !k.is_zero(c) {
                m.add_scaled(c, self.basis_action(j, p));
            }
        }
        m
    }

    /// `B·ε_j` as a module over the opposite algebra, with its vertex
    /// spaces `u(e_v)·B·ε_j` inside the total space.
    fn module(&mut self, j: usize) -> (Rep<K>, Vec<Matrix<K>>) {
        let alg = self.e.alg.clone();
        let k = alg.field();
        let spaces: Vec<Matrix<K>> = (0..alg.num_vertices())
            .map(|v| self.action(j, &alg.idempotent(v)).column_space())
            .collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let (s, t) = (arr.source, arr.target);
                if spaces[t].cols() == 0 || spaces[s].cols() == 0 {
                    return Matrix::zeros(k, spaces[s].cols(), spaces[t].cols());
                }
                let img = self.action(j, &alg.arrow_elem(a)).mul(&spaces[t]);
                spaces[s].solve_right(&img).expect("arrow image inside vertex space")
            })
            .collect();
        let dims = spaces.iter().map(|s| s.cols()).collect();
        (Rep::new_unchecked(&alg.opposite(), dims, maps), spaces)
    }

    /// `σ ⊗_A B·ε_j`: the block matrix of left multiplications by `u(x)`
    /// between the spaces `u(e_v)·B·ε_j`.
    fn sigma_tensor_is_iso(&mut self, sigma: &TwoTermComplex<K>, j: usize, spaces: &[Matrix<K>]) -> bool {
        let k = self.e.alg.field().clone();
        let rows: usize = sigma.p0.iter().map(|&v| spaces[v].cols()).sum();
        let cols: usize = sigma.p1.iter().map(|&v| spaces[v].cols()).sum();
        if rows != cols {
            return false;
        }
        if rows == 0 {
            return true;
        }
        let mut m = Matrix::zeros(&k, rows, cols);
        let mut r0 = 0;
        for (r, &pv) in sigma.p0.iter().enumerate() {
            let mut c0 = 0;
            for (s, &qv) in sigma.p1.iter().enumerate() {
                if spaces[pv].cols() > 0 && spaces[qv].cols() > 0 {
                    let img = self.action(j, &sigma.diff[r][s]).mul(&spaces[qv]);
                    match spaces[pv].solve_right(&img) {
                        Some(block) => m.set_block(r0, c0, &block),
                        None => return false,
                    }
                }
                c0 += spaces[qv].cols();
            }
            r0 += spaces[pv].cols();
        }
        m.rank() == rows
    }
}

/// Runs every verification clause. `samples` are the modules used for the
/// essential-image comparison with `X_σ1`.
///
/// With `B_B = ⊕ Q_i^{m_i}` and `B = ⊕ (B·ε_j)^{m_j}` as a left module,
/// `B ⊗_A B` and `Tor_1^A(B, B)` split into the pieces `Q_i ⊗_A B·ε_j`,
/// each of which must have the dimension of `ε_i·B·ε_j = Hom(Q_j, Q_i)`.
pub fn verify_ring_epi<K: Field>(e: &RingEpiPresentation<K>, samples: &[Rep<K>]) -> FlagReport {
    let mut f = FlagReport {
        dim_b: e.dim_b(),
        ..FlagReport::default()
    };
    match e.check_ring_hom() {
        Ok(()) => f.is_ring_hom = true,
        Err(msg) => f.failures.push(msg),
    }
    let mult = e.multiplicities();
    let r = e.projectives.len();
    let pres: Vec<_> = e.projectives.iter().map(min_proj_presentation).collect();
    let mut columns = Columns::new(e);
    let mut epi = true;
    let mut sigma_ok = true;
    for j in 0..r {
        let (col, spaces) = columns.module(j);
        for i in 0..r {
            let t0 = tensor_dim(&e.projectives[i], &col);
            let p0n: usize = pres[i].complex.p0.iter().map(|&v| col.dims()[v]).sum();
            let tor = tensor_dim(&pres[i].syzygy, &col) + t0 - p0n;
            f.dim_b_tensor_b += mult[i] * mult[j] * t0;
            f.tor1_dim += mult[i] * mult[j] * tor;
            if t0 != e.homs[j][i].len() {
                epi = false;
            }
        }
        if let Some(sigma) = &e.sigma1 {
            sigma_ok &= columns.sigma_tensor_is_iso(sigma, j, &spaces);
        }
    }
    f.is_epimorphism = epi && f.dim_b_tensor_b == f.dim_b;
    if !f.is_epimorphism {
        f.failures
            .push(format!("dim B ⊗_A B = {} but dim B = {}", f.dim_b_tensor_b, f.dim_b));
    }
    f.tor1_zero = f.tor1_dim == 0;
    if !f.tor1_zero {
        f.failures.push(format!("dim Tor_1(B, B) = {}", f.tor1_dim));
    }
    if let Some(sigma) = &e.sigma1 {
        if !sigma_ok {
            f.failures.push("σ1 ⊗_A B is not invertible".into());
        }
        f.sigma_inverting = Some(sigma_ok);
        let bad: Vec<usize> = samples
            .iter()
            .enumerate()
            .filter(|(_, x)| e.factors_through_unit(x) != x_sigma_membership(sigma, x))
            .map(|(i, _)| i)
            .collect();
        if !bad.is_empty() {
            f.failures
                .push(format!("essential image disagrees with X_σ1 on samples {bad:?}"));
        }
        f.essential_image_consistent = Some(bad.is_empty());
    }
    f
}

#[derive(Clone, Copy, Debug)]
pub struct EpiCaps {
    /// Largest dimension allowed for a module in an extension tower.
    pub tower_dim: usize,
}

impl Default for EpiCaps {
    fn default() -> Self {
        EpiCaps { tower_dim: 500 }
    }
}

/// Extends `M` by a copy of `S_j` for each basis element of a complement of
/// the restrictions `Hom(P0, S_j) -> Hom(ΩM, S_j)`, for all `j` at once.
/// Returns `None` when `Ext^1(M, S_j) = 0` for every `j`.
pub fn universal_extension<K: Field>(m: &Rep<K>, bricks: &[Rep<K>]) -> Option<Rep<K>> {
    let alg = m.alg();
    let k = m.field();
    let pres = min_proj_presentation(m);
    if pres.syzygy.is_zero() {
        return None;
    }
    let iota = &pres.syz_incl;
    let mut chosen: Vec<RepMap<K>> = Vec::new();
    for s in bricks {
        let on_syz = hom_basis(&pres.syzygy, s);
        if on_syz.is_empty() {
            continue;
        }
        let len = on_syz[0].flatten().len();
        let mut space = EchelonSpace::new(k, len);
        for g in hom_basis(&pres.p0, s) {
            space.insert(&g.after(iota).flatten());
        }
        for g in on_syz {
            if space.insert(&g.flatten()) {
                chosen.push(g.scale(&k.neg(&k.one())));
            }
        }
    }
    if chosen.is_empty() {
        return None;
    }
    let mut maps = vec![iota.clone()];
    maps.extend(chosen);
    let phi = RepMap::column(alg, &pres.syzygy, &maps);
    Some(phi.cokernel().0)
}

/// Projective cover of `S` in the wide subcategory with simples `bricks`.
pub fn wide_projective<K: Field>(s: &Rep<K>, bricks: &[Rep<K>], caps: EpiCaps) -> Result<Rep<K>> {
    let mut m = s.clone();
    while let Some(e) = universal_extension(&m, bricks) {
        if e.dim() > caps.tower_dim {
            return Err(Error::TowerDiverged(caps.tower_dim));
        }
        m = e;
    }
    Ok(m)
}

/// Sample modules for the essential-image clause: the simples, the
/// semibrick and `T1`.
fn samples<K: Field>(node: &SiltingPair<K>, t1: &Rep<K>, semibrick: &[Rep<K>]) -> Vec<Rep<K>> {
    let mut out: Vec<Rep<K>> = standard_modules(node.alg()).simples;
    out.extend(semibrick.iter().cloned());
    if !t1.is_zero() {
        out.push(t1.clone());
    }
    out
}

/// The ring epimorphism of a node, with a precomputed semibrick.
///
/// The minimal left approximation of `A` by `add ⊕ Q_i` has `Q_i`
/// components given by a complement in `Q_i ≅ Hom(A, Q_i)` of the images of
/// the radical maps into `Q_i`; the complement basis is `r0_{i,c}`.
pub fn ring_epi_with_semibrick<K: Field>(
    node: &SiltingPair<K>,
    semibrick: Vec<Rep<K>>,
    caps: EpiCaps,
) -> Result<RingEpiPresentation<K>> {
    let alg = node.alg();
    let k = alg.field();
    let classes: Vec<_> = node.summands.iter().map(|s| s.local.clone()).collect();
    let tri = approximation_triangle_by(alg, &classes)?;
    let mut qs = Vec::with_capacity(semibrick.len());
    let mut rads = Vec::with_capacity(semibrick.len());
    let mut ends = Vec::with_capacity(semibrick.len());
    for s in &semibrick {
        let p = wide_projective(s, &semibrick, caps)?;
        let local = local_data(&p)?
            .ok_or_else(|| Error::VerificationFailed("wide projective is decomposable".into()))?;
        qs.push(p);
        rads.push(local.rad);
        ends.push(local.end);
    }
    let r = qs.len();
    let mut homs: Vec<Vec<Vec<RepMap<K>>>> = vec![Vec::with_capacity(r); r];
    for j in 0..r {
        for i in 0..r {
            homs[j].push(if i == j { ends[i].clone() } else { hom_basis(&qs[j], &qs[i]) });
        }
    }
    let mut parts = Vec::with_capacity(r);
    for i in 0..r {
        let d = qs[i].dim();
        let mut space = EchelonSpace::new(k, d);
        let radical = homs.iter().enumerate().flat_map(|(j, row)| {
            if j == i {
                rads[i].iter().collect::<Vec<_>>()
            } else {
                row[i].iter().collect()
            }
        });
        for h in radical {
            let full = Matrix::block_diag(k, &h.comps().iter().collect::<Vec<_>>());
            for c in 0..full.cols() {
                space.insert(&full.col(c));
            }
        }
        let mut gens = Vec::new();
        for c in 0..d {
            let mut v = vec![k.zero(); d];
            v[c] = k.one();
            if space.insert(&v) {
                gens.push(v);
            }
        }
        if gens.is_empty() {
            return Err(Error::VerificationFailed(format!(
                "wide projective {i} is not a summand of the reflection of A"
            )));
        }
        parts.push((qs[i].clone(), gens));
    }
    let mut e = RingEpiPresentation::from_parts(alg, parts, Some(homs), Some(tri.sigma1), semibrick)?;
    let samp = samples(node, &tri.t1, &e.semibrick);
    e.flags = verify_ring_epi(&e, &samp);
    if !e.flags.all_pass() {
        return Err(Error::VerificationFailed(e.flags.failures.join("; ")));
    }
    Ok(e)
}

/// The ring epimorphism attached to a node.
pub fn ring_epi_from_node<K: Field>(node: &SiltingPair<K>, caps: EpiCaps) -> Result<RingEpiPresentation<K>> {
    let semibrick = semibrick_at(node)?;
    ring_epi_with_semibrick(node, semibrick, caps)
}

/// The map `A -> End(R)` for an indecomposable `R` generated by `r0`, as a
/// candidate to be verified. With `sigma` absent, σ-inversion is not checked.
pub fn quotient_candidate<K: Field>(
    r: &Rep<K>,
    r0: Vec<K::Elem>,
    sigma: Option<TwoTermComplex<K>>,
) -> Result<RingEpiPresentation<K>> {
    if local_data(r)?.is_none() {
        return Err(Error::Semantic("quotient candidate needs an indecomposable module".into()));
    }
    let mut e = RingEpiPresentation::from_parts(r.alg(), vec![(r.clone(), vec![r0])], None, sigma, Vec::new())?;
    let st = standard_modules(r.alg());
    let samp: Vec<Rep<K>> = st.simples.into_iter().chain(st.projectives).chain(st.injectives).collect();
    e.flags = verify_ring_epi(&e, &samp);
    Ok(e)
}

/// For every module `X`: `X` is a `B`-module through the unit exactly when
/// it lies in the wide subcategory of the node.
pub fn diagram_commutes<K: Field>(node: &SiltingPair<K>, e: &RingEpiPresentation<K>, modules: &[Rep<K>]) -> Result<bool> {
    for x in modules {
        if e.factors_through_unit(x) != a_map_membership(node, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub node: usize,
    pub dim_b: usize,
    pub semibrick_dims: Vec<Vec<usize>>,
    pub semibrick_ids: Vec<usize>,
    pub flags: FlagReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub rows: Vec<CensusRow>,
    /// Number of pairwise inequivalent epimorphisms, certified by distinct
    /// semibricks.
    pub epiclasses: usize,
}

/// One verified ring epimorphism per node of a complete graph.
pub fn epiclass_census<K: Field>(g: &ExchangeGraph<K>, h: &Hasse<K>, caps: EpiCaps) -> Result<Census> {
    if !g.is_complete() {
        return Err(Error::NotComplete);
    }
    let mut rows = Vec::with_capacity(g.nodes.len());
    for (i, node) in g.nodes.iter().enumerate() {
        let semibrick = h.semibrick_at(i);
        let e = ring_epi_with_semibrick(node, semibrick, caps)?;
        rows.push(CensusRow {
            node: i,
            dim_b: e.dim_b(),
            semibrick_dims: e.semibrick.iter().map(|b| b.dims().to_vec()).collect(),
            semibrick_ids: h.semibrick_ids(i),
            flags: e.flags,
        });
    }
    let mut keys: Vec<&Vec<usize>> = rows.iter().map(|r| &r.semibrick_ids).collect();
    keys.sort();
    keys.dedup();
    let epiclasses = keys.len();
    Ok(Census { rows, epiclasses })
}

/// Whether two summand lists describe the same basic module.
pub fn same_summands<K: Field>(a: &[Rep<K>], b: &[Rep<K>]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| x.dims() == y.dims() && is_iso_indec(x, y)))
}
