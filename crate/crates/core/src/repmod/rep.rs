//! Quiver representations (right modules) and morphisms between them.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix};
use crate::quiveralg::{Algebra, Path};

struct RepInner<K: Field> {
    alg: Algebra<K>,
    dims: Vec<usize>,
    maps: Vec<Matrix<K>>,
    actions: OnceLock<Vec<Matrix<K>>>,
}

/// A finite dimensional right module: a vector space per vertex and a
/// `d_t x d_s` matrix for each arrow `s -> t` (acting on column vectors).
pub struct Rep<K: Field> {
    inner: Arc<RepInner<K>>,
}

impl<K: Field> Clone for Rep<K> {
    fn clone(&self) -> Self {
        Rep {
            inner: self.inner.clone(),
        }
    }
}

impl<K: Field> PartialEq for Rep<K> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.dims == other.inner.dims && self.inner.maps == other.inner.maps)
    }
}

impl<K: Field> fmt::Debug for Rep<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}", self.inner.dims)
    }
}

impl<K: Field> Rep<K> {
    /// Builds a representation, checking shapes and the defining relations.
    pub fn new(alg: &Algebra<K>, dims: Vec<usize>, maps: Vec<Matrix<K>>) -> Result<Self> {
        let q = alg.quiver();
        if dims.len() != q.num_vertices() || maps.len() != q.arrows().len() {
            return Err(Error::Shape("wrong number of vertices or arrows".into()));
        }
        for (m, a) in maps.iter().zip(q.arrows()) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::Shape(format!(
                    "arrow {} needs a {}x{} matrix",
                    a.name, dims[a.target], dims[a.source]
                )));
            }
        }
        let rep = Self::new_unchecked(alg, dims, maps);
        if !rep.satisfies_relations() {
            return Err(Error::Semantic("representation violates a relation".into()));
        }
        Ok(rep)
    }

    pub(crate) fn new_unchecked(alg: &Algebra<K>, dims: Vec<usize>, maps: Vec<Matrix<K>>) -> Self {
        Rep {
            inner: Arc::new(RepInner {
                alg: alg.clone(),
                dims,
                maps,
                actions: OnceLock::new(),
            }),
        }
    }

    pub fn zero(alg: &Algebra<K>) -> Self {
        let k = alg.field();
        let maps = alg.quiver().arrows().iter().map(|_| Matrix::zeros(k, 0, 0)).collect();
        Self::new_unchecked(alg, vec![0; alg.num_vertices()], maps)
    }

    pub fn alg(&self) -> &Algebra<K> {
        &self.inner.alg
    }

    pub fn field(&self) -> &K {
        self.inner.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.inner.dims
    }

    pub fn dim(&self) -> usize {
        self.inner.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn arrow(&self, a: usize) -> &Matrix<K> {
        &self.inner.maps[a]
    }

    pub fn arrow_maps(&self) -> &[Matrix<K>] {
        &self.inner.maps
    }

    /// Offsets of the vertex spaces in the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims().len());
        let mut acc = 0;
        for d in self.dims() {
            out.push(acc);
            acc += d;
        }
        out
    }

    /// Action of a path: `M(a_k) ... M(a_1)` for the word `a_1 * ... * a_k`.
    pub fn path_matrix(&self, p: &Path) -> Matrix<K> {
        let k = self.field();
        let mut m = Matrix::identity(k, self.dims()[p.source]);
        for &a in &p.arrows {
            m = self.arrow(a).mul(&m);
        }
        m
    }

    /// Actions of all basis paths, indexed like the algebra basis.
    pub fn basis_actions(&self) -> &[Matrix<K>] {
        self.inner.actions.get_or_init(|| {
            let alg = self.alg();
            alg.basis().iter().map(|p| self.path_matrix(p)).collect()
        })
    }

    /// Action of an element of `e_s A e_t` as a map `M_s -> M_t`.
    pub fn elem_matrix(&self, x: &[K::Elem], s: usize, t: usize) -> Matrix<K> {
        let k = self.field();
        let alg = self.alg();
        let mut m = Matrix::zeros(k, self.dims()[t], self.dims()[s]);
        if m.rows() == 0 || m.cols() == 0 {
            return m;
        }
        let acts = self.basis_actions();
        for &i in alg.peirce(s, t) {
            if !k.is_zero(&x[i]) {
                m.add_scaled(&x[i], &acts[i]);
            }
        }
        m
    }

    pub fn satisfies_relations(&self) -> bool {
        let alg = self.alg();
        alg.relations().iter().all(|r| {
            let (Some(s), Some(t)) = (r.source(), r.target()) else {
                return true;
            };
            let k = self.field();
            let mut m = Matrix::zeros(k, self.dims()[t], self.dims()[s]);
            for (c, p) in &r.terms {
                m.add_scaled(&k.from_i64(*c), &self.path_matrix(p));
            }
            m.is_zero()
        })
    }

    /// Direct sum with the canonical injections and projections.
    pub fn direct_sum(alg: &Algebra<K>, parts: &[Rep<K>]) -> (Rep<K>, Vec<RepMap<K>>, Vec<RepMap<K>>) {
        let k = alg.field();
        let nv = alg.num_vertices();
        let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims()[v]).sum()).collect();
        let maps = (0..alg.quiver().arrows().len())
            .map(|a| {
                let blocks: Vec<&Matrix<K>> = parts.iter().map(|p| p.arrow(a)).collect();
                Matrix::block_diag(k, &blocks)
            })
            .collect();
        let sum = Rep::new_unchecked(alg, dims.clone(), maps);
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        let mut off = vec![0; nv];
        for p in parts {
            let mut ic = Vec::new();
            let mut pc = Vec::new();
            for v in 0..nv {
                let mut i = Matrix::zeros(k, dims[v], p.dims()[v]);
                for j in 0..p.dims()[v] {
                    i.set(off[v] + j, j, k.one());
                }
                pc.push(i.transpose());
                ic.push(i);
                off[v] += p.dims()[v];
            }
            inj.push(RepMap::new_unchecked(p, &sum, ic));
            proj.push(RepMap::new_unchecked(&sum, p, pc));
        }
        (sum, inj, proj)
    }

    pub fn sum_of(alg: &Algebra<K>, parts: &[Rep<K>]) -> Rep<K> {
        Self::direct_sum(alg, parts).0
    }

    /// `self^n`
    pub fn power(&self, n: usize) -> Rep<K> {
        Self::sum_of(self.alg(), &vec![self.clone(); n])
    }

    /// The subrepresentation spanned at each vertex by the columns of
    /// `basis[v]` (assumed independent and closed under the arrows).
    pub fn subrep(&self, basis: Vec<Matrix<K>>) -> (Rep<K>, RepMap<K>) {
        let alg = self.alg();
        let dims: Vec<usize> = basis.iter().map(|b| b.cols()).collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let img = self.arrow(a).mul(&basis[arr.source]);
                basis[arr.target]
                    .solve_right(&img)
                    .expect("subspace must be closed under the arrows")
            })
            .collect();
        let sub = Rep::new_unchecked(alg, dims, maps);
        let incl = RepMap::new_unchecked(&sub, self, basis);
        (sub, incl)
    }

    /// The quotient by the subrepresentation spanned by the columns of
    /// `sub[v]` (independent, closed under the arrows), with the projection.
    pub fn quotient(&self, sub: &[Matrix<K>]) -> (Rep<K>, RepMap<K>) {
        let alg = self.alg();
        let mut projs = Vec::new();
        let mut sections = Vec::new();
        for s in sub {
            let (p, sec) = s.quotient_maps();
            projs.push(p);
            sections.push(sec);
        }
        let dims: Vec<usize> = projs.iter().map(|p| p.rows()).collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| projs[arr.target].mul(self.arrow(a)).mul(&sections[arr.source]))
            .collect();
        let q = Rep::new_unchecked(alg, dims, maps);
        let proj = RepMap::new_unchecked(self, &q, projs);
        (q, proj)
    }

    /// Per-vertex bases of the smallest subrepresentation containing the
    /// columns of `gens[v]`.
    pub fn generated_subspaces(&self, gens: &[Matrix<K>]) -> Vec<Matrix<K>> {
        let alg = self.alg();
        let k = self.field();
        let nv = alg.num_vertices();
        let mut spaces: Vec<Matrix<K>> = (0..nv)
            .map(|v| {
                if gens[v].cols() == 0 {
                    Matrix::zeros(k, self.dims()[v], 0)
                } else {
                    gens[v].column_space()
                }
            })
            .collect();
        loop {
            let mut changed = false;
            for (a, arr) in alg.quiver().arrows().iter().enumerate() {
                if spaces[arr.source].cols() == 0 {
                    continue;
                }
                let img = self.arrow(a).mul(&spaces[arr.source]);
                let t = arr.target;
                let joined = Matrix::hstack(k, self.dims()[t], &[&spaces[t], &img]);
                let r = joined.rank();
                if r > spaces[t].cols() {
                    spaces[t] = joined.column_space();
                    changed = true;
                }
            }
            if !changed {
                return spaces;
            }
        }
    }

    /// The radical `M * rad A`: at vertex `t` the sum of images of arrows into `t`.
    pub fn radical_subspaces(&self) -> Vec<Matrix<K>> {
        let alg = self.alg();
        let k = self.field();
        (0..alg.num_vertices())
            .map(|t| {
                let imgs: Vec<&Matrix<K>> = alg
                    .quiver()
                    .arrows()
                    .iter()
                    .enumerate()
                    .filter(|(_, arr)| arr.target == t)
                    .map(|(a, _)| self.arrow(a))
                    .collect();
                if imgs.is_empty() {
                    return Matrix::zeros(k, self.dims()[t], 0);
                }
                Matrix::hstack(k, self.dims()[t], &imgs).column_space()
            })
            .collect()
    }

    /// Dimension vector of the top `M / M rad A`.
    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_subspaces()
            .iter()
            .zip(self.dims())
            .map(|(r, d)| d - r.cols())
            .collect()
    }

    /// Conjugates by random invertible base changes at every vertex.
    pub fn random_base_change<R: Rng + ?Sized>(&self, rng: &mut R) -> (Rep<K>, RepMap<K>) {
        let k = self.field();
        let gs: Vec<Matrix<K>> = self
            .dims()
            .iter()
            .map(|&d| loop {
                let g = Matrix::from_fn(k, d, d, |_, _| k.random(rng, 5));
                if g.is_invertible() {
                    break g;
                }
            })
            .collect();
        let maps = self
            .alg()
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                gs[arr.target]
                    .mul(self.arrow(a))
                    .mul(&gs[arr.source].inverse().expect("invertible"))
            })
            .collect();
        let r = Rep::new_unchecked(self.alg(), self.dims().to_vec(), maps);
        let iso = RepMap::new_unchecked(self, &r, gs);
        (r, iso)
    }
}

/// A morphism of representations, one `d^N_v x d^M_v` matrix per vertex.
#[derive(Clone)]
pub struct RepMap<K: Field> {
    pub source: Rep<K>,
    pub target: Rep<K>,
    comps: Vec<Matrix<K>>,
}

impl<K: Field> fmt::Debug for RepMap<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RepMap({:?} -> {:?}) {:?}", self.source, self.target, self.comps)
    }
}

impl<K: Field> RepMap<K> {
    pub fn new(source: &Rep<K>, target: &Rep<K>, comps: Vec<Matrix<K>>) -> Result<Self> {
        let f = Self::new_unchecked(source, target, comps);
        for (v, c) in f.comps.iter().enumerate() {
            if c.rows() != target.dims()[v] || c.cols() != source.dims()[v] {
                return Err(Error::Shape(format!("component at vertex {v} has the wrong shape")));
            }
        }
        if !f.is_homomorphism() {
            return Err(Error::Semantic("map does not commute with the arrows".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &Rep<K>, target: &Rep<K>, comps: Vec<Matrix<K>>) -> Self {
        RepMap {
            source: source.clone(),
            target: target.clone(),
            comps,
        }
    }

    pub fn zero(source: &Rep<K>, target: &Rep<K>) -> Self {
        let k = source.field();
        let comps = (0..source.dims().len())
            .map(|v| Matrix::zeros(k, target.dims()[v], source.dims()[v]))
            .collect();
        Self::new_unchecked(source, target, comps)
    }

    pub fn identity(m: &Rep<K>) -> Self {
        let k = m.field();
        let comps = m.dims().iter().map(|&d| Matrix::identity(k, d)).collect();
        Self::new_unchecked(m, m, comps)
    }

    pub fn comps(&self) -> &[Matrix<K>] {
        &self.comps
    }

    pub fn comp(&self, v: usize) -> &Matrix<K> {
        &self.comps[v]
    }

    pub fn is_homomorphism(&self) -> bool {
        self.source
            .alg()
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(a, arr)| {
                self.target.arrow(a).mul(&self.comps[arr.source]) == self.comps[arr.target].mul(self.source.arrow(a))
            })
    }

    /// `self ∘ g`
    pub fn after(&self, g: &RepMap<K>) -> RepMap<K> {
        let comps = self.comps.iter().zip(&g.comps).map(|(a, b)| a.mul(b)).collect();
        Self::new_unchecked(&g.source, &self.target, comps)
    }

    pub fn add(&self, other: &RepMap<K>) -> RepMap<K> {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect();
        Self::new_unchecked(&self.source, &self.target, comps)
    }

    pub fn sub(&self, other: &RepMap<K>) -> RepMap<K> {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect();
        Self::new_unchecked(&self.source, &self.target, comps)
    }

    pub fn scale(&self, s: &K::Elem) -> RepMap<K> {
        let comps = self.comps.iter().map(|a| a.scale(s)).collect();
        Self::new_unchecked(&self.source, &self.target, comps)
    }

    /// `Σ c_i f_i` for maps with a common source and target.
    pub fn combination(source: &Rep<K>, target: &Rep<K>, maps: &[RepMap<K>], coeffs: &[K::Elem]) -> RepMap<K> {
        let mut acc = Self::zero(source, target);
        let k = source.field();
        for (f, c) in maps.iter().zip(coeffs) {
            if k.is_zero(c) {
                continue;
            }
            for (a, b) in acc.comps.iter_mut().zip(&f.comps) {
                a.add_scaled(c, b);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.is_square() && c.is_invertible())
    }

    pub fn rank(&self) -> usize {
        self.comps.iter().map(|c| c.rank()).sum()
    }

    /// Entries of all components concatenated.
    pub fn flatten(&self) -> Vec<K::Elem> {
        self.comps.iter().flat_map(|c| c.data().iter().cloned()).collect()
    }

    pub fn from_flat(source: &Rep<K>, target: &Rep<K>, flat: &[K::Elem]) -> RepMap<K> {
        let k = source.field();
        let mut off = 0;
        let comps = (0..source.dims().len())
            .map(|v| {
                let (r, c) = (target.dims()[v], source.dims()[v]);
                let m = Matrix::from_vec(k, r, c, flat[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect();
        Self::new_unchecked(source, target, comps)
    }

    pub fn kernel(&self) -> (Rep<K>, RepMap<K>) {
        let basis = self.comps.iter().map(|c| c.kernel_matrix()).collect();
        self.source.subrep(basis)
    }

    pub fn image_subspaces(&self) -> Vec<Matrix<K>> {
        self.comps.iter().map(|c| c.column_space()).collect()
    }

    pub fn image(&self) -> (Rep<K>, RepMap<K>) {
        self.target.subrep(self.image_subspaces())
    }

    pub fn cokernel(&self) -> (Rep<K>, RepMap<K>) {
        self.target.quotient(&self.image_subspaces())
    }

    /// Kernel, cokernel and image with their structure maps.
    pub fn kernel_cokernel_image(&self) -> KerCokerIm<K> {
        let (ker, ker_incl) = self.kernel();
        let (coker, coker_proj) = self.cokernel();
        let (im, im_incl) = self.image();
        KerCokerIm {
            ker,
            ker_incl,
            coker,
            coker_proj,
            im,
            im_incl,
        }
    }

    /// The map `⊕ sources -> target` given by the row of maps.
    pub fn row(alg: &Algebra<K>, maps: &[RepMap<K>], target: &Rep<K>) -> RepMap<K> {
        let sources: Vec<Rep<K>> = maps.iter().map(|f| f.source.clone()).collect();
        let (sum, _, _) = Rep::direct_sum(alg, &sources);
        let k = alg.field();
        let comps = (0..alg.num_vertices())
            .map(|v| {
                let blocks: Vec<&Matrix<K>> = maps.iter().map(|f| f.comp(v)).collect();
                Matrix::hstack(k, target.dims()[v], &blocks)
            })
            .collect();
        Self::new_unchecked(&sum, target, comps)
    }

    /// The map `source -> ⊕ targets` given by the column of maps.
    pub fn column(alg: &Algebra<K>, source: &Rep<K>, maps: &[RepMap<K>]) -> RepMap<K> {
        let targets: Vec<Rep<K>> = maps.iter().map(|f| f.target.clone()).collect();
        let (sum, _, _) = Rep::direct_sum(alg, &targets);
        let k = alg.field();
        let comps = (0..alg.num_vertices())
            .map(|v| {
                let blocks: Vec<&Matrix<K>> = maps.iter().map(|f| f.comp(v)).collect();
                Matrix::vstack(k, source.dims()[v], &blocks)
            })
            .collect();
        Self::new_unchecked(source, &sum, comps)
    }

    /// Same components, reinterpreted between isomorphic copies.
    pub fn retarget(&self, source: &Rep<K>, target: &Rep<K>) -> RepMap<K> {
        Self::new_unchecked(source, target, self.comps.clone())
    }
}

pub struct KerCokerIm<K: Field> {
    pub ker: Rep<K>,
    pub ker_incl: RepMap<K>,
    pub coker: Rep<K>,
    pub coker_proj: RepMap<K>,
    pub im: Rep<K>,
    pub im_incl: RepMap<K>,
}
