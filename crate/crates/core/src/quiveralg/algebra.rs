//! Based finite dimensional algebras `KQ/I` with explicit structure constants.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactalg::{EchelonSpace, Field, Matrix};

use super::quiver::{Path, PathExpr, Quiver};

/// Limits for building an algebra from a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlgebraCaps {
    pub max_path_length: usize,
}

impl Default for AlgebraCaps {
    fn default() -> Self {
        AlgebraCaps { max_path_length: 16 }
    }
}

pub const DEFAULT_SEED: u64 = 0x7a11_5eed;

/// An algebra element in the coordinates of the path basis.
pub type Elem<K> = Vec<<K as Field>::Elem>;

/// A finite dimensional algebra `KQ/I` given on a basis of path monomials.
///
/// Basis element `v` is the trivial path at vertex `v` for every vertex; the
/// remaining basis paths follow in length-then-lexicographic order.
#[derive(Clone, Debug)]
pub struct BasedAlgebra<K: Field> {
    field: K,
    quiver: Quiver,
    relations: Vec<PathExpr>,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    table: Vec<Vec<(usize, K::Elem)>>,
    peirce: Vec<Vec<Vec<usize>>>,
    peirce_pos: Vec<usize>,
    nilpotency: usize,
    seed: u64,
    opposite: OnceLock<Arc<BasedAlgebra<K>>>,
}

impl<K: Field> PartialEq for BasedAlgebra<K> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.quiver == other.quiver
            && self.basis == other.basis
            && self.table == other.table
    }
}

fn to_field<K: Field>(field: &K, expr: &PathExpr) -> Vec<(K::Elem, Path)> {
    let mut acc: Vec<(K::Elem, Path)> = Vec::new();
    for (c, p) in &expr.terms {
        let c = field.from_i64(*c);
        match acc.iter_mut().find(|(_, q)| q == p) {
            Some(entry) => entry.0 = field.add(&entry.0, &c),
            None => acc.push((c, p.clone())),
        }
    }
    acc.retain(|(c, _)| !field.is_zero(c));
    acc
}

/// Paths grouped by length and indexed by endpoints, grown on demand.
struct PathTable {
    by_len: Vec<Vec<Path>>,
}

impl PathTable {
    fn new(q: &Quiver) -> Self {
        PathTable {
            by_len: vec![q.paths_of_length(0)],
        }
    }

    fn ensure(&mut self, q: &Quiver, len: usize) {
        while self.by_len.len() <= len {
            let last = self.by_len.last().expect("length zero present");
            let mut next = Vec::new();
            for p in last {
                for (i, a) in q.arrows().iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(i);
                        next.push(Path {
                            source: p.source,
                            target: a.target,
                            arrows,
                        });
                    }
                }
            }
            next.sort();
            self.by_len.push(next);
        }
    }

    fn ending_at(&self, len: usize, v: usize) -> impl Iterator<Item = &Path> {
        self.by_len[len].iter().filter(move |p| p.target == v)
    }

    fn starting_at(&self, len: usize, v: usize) -> impl Iterator<Item = &Path> {
        self.by_len[len].iter().filter(move |p| p.source == v)
    }
}

/// All `u * r * v` with `len(u) + len(v) <= budget`, as term lists.
fn ideal_generators<K: Field>(
    paths: &PathTable,
    rels: &[Vec<(K::Elem, Path)>],
    budget_for: impl Fn(&[(K::Elem, Path)]) -> Option<usize>,
) -> Vec<Vec<(K::Elem, Path)>> {
    let mut out = Vec::new();
    for r in rels {
        let Some(budget) = budget_for(r) else { continue };
        let (s, t) = (r[0].1.source, r[0].1.target);
        for lu in 0..=budget {
            for u in paths.ending_at(lu, s) {
                for lv in 0..=budget - lu {
                    for v in paths.starting_at(lv, t) {
                        let terms = r
                            .iter()
                            .map(|(c, p)| {
                                let up = u.concat(p).expect("composable");
                                (c.clone(), up.concat(v).expect("composable"))
                            })
                            .collect();
                        out.push(terms);
                    }
                }
            }
        }
    }
    out
}

impl<K: Field> BasedAlgebra<K> {
    /// Builds `KQ/I` for the ideal generated by `relations`, by truncated
    /// saturation of the ideal and row reduction.
    pub fn build(field: &K, quiver: Quiver, relations: Vec<PathExpr>, caps: AlgebraCaps) -> Result<Self> {
        for r in &relations {
            r.check_parallel(&quiver)?;
            if r.terms.is_empty() {
                return Err(Error::MalformedRelation("empty relation".into()));
            }
            if r.min_len() < 2 {
                return Err(Error::NonAdmissible(format!(
                    "relation {} has a term of length < 2",
                    r.format(&quiver)
                )));
            }
        }
        let rels: Vec<Vec<(K::Elem, Path)>> = relations
            .iter()
            .map(|r| to_field(field, r))
            .filter(|r| !r.is_empty())
            .collect();
        let mut paths = PathTable::new(&quiver);

        // smallest l such that every path of length l lies in the ideal
        let mut found = None;
        'outer: for n in 1..=caps.max_path_length {
            paths.ensure(&quiver, n);
            let mut cols: Vec<&Path> = paths.by_len[..=n].iter().flatten().collect();
            cols.sort_by(|a, b| b.cmp(a));
            let col_of: HashMap<&Path, usize> = cols.iter().enumerate().map(|(i, p)| (*p, i)).collect();
            let gens = ideal_generators::<K>(&paths, &rels, |r| {
                let ml = r.iter().map(|(_, p)| p.len()).max().unwrap_or(0);
                n.checked_sub(ml)
            });
            let mut space = EchelonSpace::new(field, cols.len());
            for g in &gens {
                let mut v = vec![field.zero(); cols.len()];
                for (c, p) in g {
                    let i = col_of[p];
                    v[i] = field.add(&v[i], c);
                }
                space.insert(&v);
            }
            for l in 1..=n {
                let all_in = paths.by_len[l].iter().all(|p| {
                    let mut v = vec![field.zero(); cols.len()];
                    v[col_of[p]] = field.one();
                    space.contains(&v)
                });
                if all_in {
                    found = Some(l);
                    break 'outer;
                }
            }
        }
        let Some(big_l) = found else {
            return Err(Error::NonAdmissible(format!(
                "paths of length up to {} do not all vanish; the algebra looks infinite dimensional",
                caps.max_path_length
            )));
        };

        // the ideal truncated below length big_l
        paths.ensure(&quiver, big_l);
        let mut cols: Vec<Path> = paths.by_len[..big_l].iter().flatten().cloned().collect();
        cols.sort_by(|a, b| b.cmp(a));
        let col_of: HashMap<Path, usize> = cols.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let gens = ideal_generators::<K>(&paths, &rels, |r| {
            let ml = r.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
            (big_l - 1).checked_sub(ml)
        });
        let mut rows = Vec::new();
        for g in &gens {
            let mut v = vec![field.zero(); cols.len()];
            let mut nonzero = false;
            for (c, p) in g {
                if p.len() < big_l {
                    let i = col_of[p];
                    v[i] = field.add(&v[i], c);
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(v);
            }
        }
        let rr = Matrix::from_rows(field, cols.len(), rows).rref();
        let mut pivot_row = vec![None; cols.len()];
        for (i, &p) in rr.pivots.iter().enumerate() {
            pivot_row[p] = Some(i);
        }
        let mut basis: Vec<Path> = cols
            .iter()
            .enumerate()
            .filter(|(i, _)| pivot_row[*i].is_none())
            .map(|(_, p)| p.clone())
            .collect();
        basis.sort();
        let index: HashMap<Path, usize> = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();

        // normal forms of all paths shorter than big_l
        let normal_form = |p: &Path| -> Vec<(usize, K::Elem)> {
            if p.len() >= big_l {
                return vec![];
            }
            if let Some(&i) = index.get(p) {
                return vec![(i, field.one())];
            }
            let row = pivot_row[col_of[p]].expect("non-basis paths are pivots");
            let mut out = Vec::new();
            for (c, q) in cols.iter().enumerate() {
                if pivot_row[c].is_none() {
                    let e = rr.matrix.get(row, c);
                    if !field.is_zero(e) {
                        out.push((index[q], field.neg(e)));
                    }
                }
            }
            out.sort_by_key(|(i, _)| *i);
            out
        };

        let dim = basis.len();
        let mut table = vec![Vec::new(); dim * dim];
        for (i, bi) in basis.iter().enumerate() {
            for (j, bj) in basis.iter().enumerate() {
                if let Some(q) = bi.concat(bj) {
                    table[i * dim + j] = normal_form(&q);
                }
            }
        }
        let nv = quiver.num_vertices();
        let mut peirce = vec![vec![Vec::new(); nv]; nv];
        let mut peirce_pos = vec![0; dim];
        for (i, b) in basis.iter().enumerate() {
            peirce_pos[i] = peirce[b.source][b.target].len();
            peirce[b.source][b.target].push(i);
        }
        let mut nilpotency = big_l;
        for l in 1..big_l {
            if paths.by_len[l].iter().all(|p| normal_form(p).is_empty()) {
                nilpotency = l;
                break;
            }
        }
        let alg = BasedAlgebra {
            field: field.clone(),
            quiver,
            relations,
            basis,
            index,
            table,
            peirce,
            peirce_pos,
            nilpotency,
            seed: DEFAULT_SEED,
            opposite: OnceLock::new(),
        };
        for r in &alg.relations {
            debug_assert!(alg.is_zero(&alg.element_from_expr(r)), "relation survives in quotient");
        }
        Ok(alg)
    }

    /// The same algebra with a different seed for randomised subroutines.
    pub fn with_seed(&self, seed: u64) -> Self {
        let mut a = self.clone();
        a.seed = seed;
        a.opposite = OnceLock::new();
        a
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[PathExpr] {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Smallest `L` such that every path of length `L` vanishes.
    pub fn nilpotency_degree(&self) -> usize {
        self.nilpotency
    }

    /// Basis indices of the paths from `s` to `t`, spanning `e_s A e_t`.
    pub fn peirce(&self, s: usize, t: usize) -> &[usize] {
        &self.peirce[s][t]
    }

    /// Position of basis element `i` inside its Peirce block.
    pub fn peirce_pos(&self, i: usize) -> usize {
        self.peirce_pos[i]
    }

    /// Product of two basis elements as a sparse combination.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, K::Elem)] {
        &self.table[i * self.dim() + j]
    }

    pub fn zero(&self) -> Elem<K> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_elem(&self, i: usize) -> Elem<K> {
        let mut x = self.zero();
        x[i] = self.field.one();
        x
    }

    pub fn idempotent(&self, v: usize) -> Elem<K> {
        self.basis_elem(v)
    }

    pub fn one(&self) -> Elem<K> {
        let mut x = self.zero();
        for v in 0..self.num_vertices() {
            x[v] = self.field.one();
        }
        x
    }

    pub fn arrow_elem(&self, a: usize) -> Elem<K> {
        let arr = &self.quiver.arrows()[a];
        let p = Path {
            source: arr.source,
            target: arr.target,
            arrows: vec![a],
        };
        match self.basis_index(&p) {
            Some(i) => self.basis_elem(i),
            None => self.zero(),
        }
    }

    pub fn is_zero(&self, x: &[K::Elem]) -> bool {
        x.iter().all(|c| self.field.is_zero(c))
    }

    pub fn add(&self, x: &[K::Elem], y: &[K::Elem]) -> Elem<K> {
        x.iter().zip(y).map(|(a, b)| self.field.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[K::Elem], y: &[K::Elem]) -> Elem<K> {
        x.iter().zip(y).map(|(a, b)| self.field.sub(a, b)).collect()
    }

    pub fn scale(&self, s: &K::Elem, x: &[K::Elem]) -> Elem<K> {
        x.iter().map(|a| self.field.mul(s, a)).collect()
    }

    pub fn mul(&self, x: &[K::Elem], y: &[K::Elem]) -> Elem<K> {
        let k = &self.field;
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if k.is_zero(b) {
                    continue;
                }
                let ab = k.mul(a, b);
                for (l, c) in self.mul_basis(i, j) {
                    k.add_mul_assign(&mut out[*l], &ab, c);
                }
            }
        }
        out
    }

    /// The image of a path in the algebra.
    pub fn path_elem(&self, p: &Path) -> Elem<K> {
        let mut x = self.idempotent(p.source);
        for &a in &p.arrows {
            x = self.mul(&x, &self.arrow_elem(a));
        }
        x
    }

    pub fn element_from_expr(&self, e: &PathExpr) -> Elem<K> {
        let mut x = self.zero();
        for (c, p) in &e.terms {
            let px = self.path_elem(p);
            x = self.add(&x, &self.scale(&self.field.from_i64(*c), &px));
        }
        x
    }

    /// Whether `x` lies in `e_s A e_t`.
    pub fn in_peirce(&self, x: &[K::Elem], s: usize, t: usize) -> bool {
        x.iter().enumerate().all(|(i, c)| {
            self.field.is_zero(c) || (self.basis[i].source == s && self.basis[i].target == t)
        })
    }

    /// Coefficient of the trivial path `e_v` in `x`.
    pub fn unit_coeff(&self, x: &[K::Elem], v: usize) -> K::Elem {
        x[v].clone()
    }

    /// Inverse of a unit `x` of `e_v A e_v` (nonzero `e_v` coefficient), by a
    /// terminating Neumann series.
    pub fn local_inverse(&self, x: &[K::Elem], v: usize) -> Option<Elem<K>> {
        let k = &self.field;
        let c = k.inv(&x[v])?;
        // x = c^{-1}(e_v - n) with n radical
        let mut n = self.scale(&k.neg(&c), x);
        n[v] = k.add(&n[v], &k.one());
        let mut acc = self.idempotent(v);
        let mut pow = self.idempotent(v);
        for _ in 0..=self.nilpotency {
            pow = self.mul(&pow, &n);
            if self.is_zero(&pow) {
                break;
            }
            acc = self.add(&acc, &pow);
        }
        Some(self.scale(&c, &acc))
    }

    pub fn format_elem(&self, x: &[K::Elem]) -> String {
        let k = &self.field;
        let mut parts = Vec::new();
        for (i, c) in x.iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            let p = self.quiver.format_path(&self.basis[i]);
            if k.is_one(c) {
                parts.push(p);
            } else {
                parts.push(format!("{}*{}", k.format(c), p));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// The opposite algebra, on the reversed quiver with the same basis indices.
    pub fn opposite(&self) -> Arc<BasedAlgebra<K>> {
        self.opposite
            .get_or_init(|| {
                let dim = self.dim();
                let basis: Vec<Path> = self.basis.iter().map(|p| p.reversed()).collect();
                let index = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
                let mut table = vec![Vec::new(); dim * dim];
                for i in 0..dim {
                    for j in 0..dim {
                        table[i * dim + j] = self.table[j * dim + i].clone();
                    }
                }
                let nv = self.num_vertices();
                let mut peirce = vec![vec![Vec::new(); nv]; nv];
                let mut peirce_pos = vec![0; dim];
                for (i, b) in basis.iter().enumerate() {
                    peirce_pos[i] = peirce[b.source][b.target].len();
                    peirce[b.source][b.target].push(i);
                }
                Arc::new(BasedAlgebra {
                    field: self.field.clone(),
                    quiver: self.quiver.opposite(),
                    relations: self.relations.iter().map(|r| r.reversed()).collect(),
                    basis,
                    index,
                    table,
                    peirce,
                    peirce_pos,
                    nilpotency: self.nilpotency,
                    seed: self.seed,
                    opposite: OnceLock::new(),
                })
            })
            .clone()
    }

    /// Checks associativity and unitality on all basis triples.
    pub fn check_associative_unital(&self) -> bool {
        let dim = self.dim();
        let one = self.one();
        for i in 0..dim {
            let b = self.basis_elem(i);
            if self.mul(&one, &b) != b || self.mul(&b, &one) != b {
                return false;
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = self.mul(&self.basis_elem(i), &self.basis_elem(j));
                for l in 0..dim {
                    let bl = self.basis_elem(l);
                    let lhs = self.mul(&ij, &bl);
                    let rhs = self.mul(&self.basis_elem(i), &self.mul(&self.basis_elem(j), &bl));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}
