//! Support τ-tilting pairs, mutation, and the exchange graph.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::approx::{hom_shift1_dim, is_presilting, left_approximation_by};
use crate::error::{Error, Result};
use crate::exactalg::Field;
use crate::quiveralg::Algebra;
use crate::repmod::{
    decompose, decompose_grouped, hom_dim, in_gen_of, is_iso_indec, local_data, min_proj_presentation,
    projective, regular_module, tau, Indec, Rep, TwoTermComplex,
};

/// An indecomposable summand with its endomorphism data and minimal presentation.
#[derive(Debug)]
pub struct SummandInfo<K: Field> {
    pub rep: Rep<K>,
    pub local: Indec<K>,
    pub presentation: TwoTermComplex<K>,
    pub gkey: Vec<i64>,
    dual: OnceLock<Item<K>>,
}

/// A summand seen from the opposite algebra: a module or a support vertex.
#[derive(Clone, Debug)]
enum Item<K: Field> {
    Module(Arc<SummandInfo<K>>),
    Support(usize),
}

impl<K: Field> SummandInfo<K> {
    pub fn new(rep: &Rep<K>) -> Result<Arc<Self>> {
        let presentation = min_proj_presentation(rep).complex;
        Self::with_presentation(rep, presentation)
    }

    fn with_presentation(rep: &Rep<K>, presentation: TwoTermComplex<K>) -> Result<Arc<Self>> {
        let local = local_data(rep)?
            .ok_or_else(|| Error::VerificationFailed(format!("summand {:?} is decomposable", rep.dims())))?;
        let gkey = presentation.gkey();
        Ok(Arc::new(SummandInfo {
            rep: rep.clone(),
            local,
            presentation,
            gkey,
            dual: OnceLock::new(),
        }))
    }

    fn dual(&self) -> Result<Item<K>> {
        if let Some(d) = self.dual.get() {
            return Ok(d.clone());
        }
        let op = self.rep.alg().opposite();
        let d = item_of(&self.presentation.dual(&op)?)?;
        Ok(self.dual.get_or_init(|| d).clone())
    }
}

/// An indecomposable presilting complex is a stalk `P_v -> 0` or the minimal
/// presentation of its cokernel.
fn item_of<K: Field>(c: &TwoTermComplex<K>) -> Result<Item<K>> {
    if c.p0.is_empty() {
        return match c.p1.as_slice() {
            [v] => Ok(Item::Support(*v)),
            _ => Err(Error::MutationFailed("stalk summand is not indecomposable".into())),
        };
    }
    Ok(Item::Module(SummandInfo::with_presentation(&c.cokernel(), c.clone())?))
}

/// Canonical summands met so far. Summands are identified up to isomorphism,
/// and pairwise data is computed once per pair.
pub struct SummandCache<K: Field> {
    all: Vec<Arc<SummandInfo<K>>>,
    by_gkey: HashMap<Vec<i64>, Vec<usize>>,
    by_ptr: HashMap<usize, usize>,
    compatible: HashMap<(usize, usize), bool>,
    stalk_duals: HashMap<usize, Arc<SummandInfo<K>>>,
    /// Distinct summands that share a g-vector with an earlier one.
    pub collisions: usize,
}

impl<K: Field> Default for SummandCache<K> {
    fn default() -> Self {
        SummandCache {
            all: Vec::new(),
            by_gkey: HashMap::new(),
            by_ptr: HashMap::new(),
            compatible: HashMap::new(),
            stalk_duals: HashMap::new(),
            collisions: 0,
        }
    }
}

impl<K: Field> SummandCache<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    /// Identifier and canonical representative of `info`'s isomorphism class.
    pub fn intern(&mut self, info: &Arc<SummandInfo<K>>) -> (usize, Arc<SummandInfo<K>>) {
        let ptr = Arc::as_ptr(info) as usize;
        if let Some(&id) = self.by_ptr.get(&ptr) {
            return (id, self.all[id].clone());
        }
        let bucket = self.by_gkey.entry(info.gkey.clone()).or_default();
        for &id in bucket.iter() {
            if is_iso_indec(&self.all[id].rep, &info.rep) {
                return (id, self.all[id].clone());
            }
        }
        if !bucket.is_empty() {
            self.collisions += 1;
        }
        let id = self.all.len();
        bucket.push(id);
        self.by_ptr.insert(ptr, id);
        self.all.push(info.clone());
        (id, info.clone())
    }

    fn intern_rep(&mut self, rep: &Rep<K>) -> Result<Arc<SummandInfo<K>>> {
        let presentation = min_proj_presentation(rep).complex;
        if let Some(bucket) = self.by_gkey.get(&presentation.gkey()) {
            for &id in bucket {
                if is_iso_indec(&self.all[id].rep, rep) {
                    return Ok(self.all[id].clone());
                }
            }
        }
        let info = SummandInfo::with_presentation(rep, presentation)?;
        Ok(self.intern(&info).1)
    }

    /// Whether every chain map `σ_a -> σ_b[1]` is null-homotopic.
    fn compatible(&mut self, a: &Arc<SummandInfo<K>>, b: &Arc<SummandInfo<K>>) -> bool {
        let key = (self.intern(a).0, self.intern(b).0);
        *self
            .compatible
            .entry(key)
            .or_insert_with(|| hom_shift1_dim(&a.presentation, &b.presentation) == 0)
    }

    fn stalk_dual(&mut self, alg: &Algebra<K>, v: usize) -> Result<Arc<SummandInfo<K>>> {
        if let Some(d) = self.stalk_duals.get(&v) {
            return Ok(d.clone());
        }
        let op = alg.opposite();
        let d = SummandInfo::new(&projective(&op, v))?;
        self.stalk_duals.insert(v, d.clone());
        Ok(d)
    }
}

/// A pair `(M, P)`: a module with pairwise non-isomorphic indecomposable
/// summands and a set of vertices standing for `P = ⊕ P_v`.
#[derive(Clone)]
pub struct SiltingPair<K: Field> {
    pub module: Rep<K>,
    pub support_complement: Vec<usize>,
    pub summands: Vec<Arc<SummandInfo<K>>>,
}

impl<K: Field> fmt::Debug for SiltingPair<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.gkeys(), self.support_complement)
    }
}

/// Outcome of `validate`; `failures` names every violated condition.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<K: Field> SiltingPair<K> {
    /// Decomposes `module`, keeping every summand (repeats included).
    pub fn new(module: &Rep<K>, support: Vec<usize>) -> Result<Self> {
        let infos = decompose(module)?
            .iter()
            .map(SummandInfo::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_infos(module.alg(), infos, support))
    }

    /// Like `new`, but keeps one summand per isomorphism class.
    pub fn new_basic(module: &Rep<K>, support: Vec<usize>) -> Result<Self> {
        let infos = decompose_grouped(module)?
            .iter()
            .map(|(r, _)| SummandInfo::new(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_infos(module.alg(), infos, support))
    }

    pub fn from_infos(alg: &Algebra<K>, mut infos: Vec<Arc<SummandInfo<K>>>, mut support: Vec<usize>) -> Self {
        infos.sort_by(|a, b| a.gkey.cmp(&b.gkey));
        support.sort_unstable();
        support.dedup();
        let parts: Vec<Rep<K>> = infos.iter().map(|i| i.rep.clone()).collect();
        SiltingPair {
            module: Rep::sum_of(alg, &parts),
            support_complement: support,
            summands: infos,
        }
    }

    /// `(A, ∅)`.
    pub fn regular(alg: &Algebra<K>) -> Result<Self> {
        Self::new(&regular_module(alg), vec![])
    }

    /// `(0, all vertices)`.
    pub fn zero(alg: &Algebra<K>) -> Self {
        Self::from_infos(alg, vec![], (0..alg.num_vertices()).collect())
    }

    pub fn alg(&self) -> &Algebra<K> {
        self.module.alg()
    }

    pub fn gkeys(&self) -> Vec<Vec<i64>> {
        self.summands.iter().map(|s| s.gkey.clone()).collect()
    }

    pub fn indec_summands(&self) -> Vec<Rep<K>> {
        self.summands.iter().map(|s| s.rep.clone()).collect()
    }

    /// Number of mutable positions: summands first, then support vertices.
    pub fn num_positions(&self) -> usize {
        self.summands.len() + self.support_complement.len()
    }

    /// Identity up to isomorphism: sorted g-vectors plus the support set.
    pub fn canonical_key(&self) -> (Vec<Vec<i64>>, Vec<usize>) {
        (self.gkeys(), self.support_complement.clone())
    }

    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let n = self.alg().num_vertices();
        let count = self.num_positions();
        if count != n {
            failures.push(format!("summand count {count} ≠ {n}"));
        }
        let names = self.alg().quiver().vertices();
        for &v in &self.support_complement {
            if self.module.dims()[v] != 0 {
                failures.push(format!("Hom(P{}, M) ≠ 0", names[v]));
            }
        }
        for i in 0..self.summands.len() {
            for j in 0..i {
                let (a, b) = (&self.summands[i], &self.summands[j]);
                if a.gkey == b.gkey && is_iso_indec(&a.rep, &b.rep) {
                    failures.push(format!("summands {j} and {i} are isomorphic"));
                }
            }
        }
        if !is_presilting(&self.module_presentation()) {
            failures.push("M is not τ-rigid".into());
        }
        ValidationReport { failures }
    }

    /// `validate` with pairwise data shared through `cache`.
    pub fn validate_cached(&self, cache: &mut SummandCache<K>) -> ValidationReport {
        let mut failures = Vec::new();
        let n = self.alg().num_vertices();
        let count = self.num_positions();
        if count != n {
            failures.push(format!("summand count {count} ≠ {n}"));
        }
        let names = self.alg().quiver().vertices();
        for &v in &self.support_complement {
            if self.module.dims()[v] != 0 {
                failures.push(format!("Hom(P{}, M) ≠ 0", names[v]));
            }
        }
        let ids: Vec<usize> = self.summands.iter().map(|s| cache.intern(s).0).collect();
        for i in 0..ids.len() {
            for j in 0..i {
                if ids[i] == ids[j] {
                    failures.push(format!("summands {j} and {i} are isomorphic"));
                }
            }
        }
        let rigid = self
            .summands
            .iter()
            .all(|a| self.summands.iter().all(|b| cache.compatible(a, b)));
        if !rigid {
            failures.push("M is not τ-rigid".into());
        }
        ValidationReport { failures }
    }

    /// Direct sum of the minimal presentations of the summands.
    pub fn module_presentation(&self) -> TwoTermComplex<K> {
        let alg = self.alg();
        self.summands
            .iter()
            .fold(TwoTermComplex::zero(alg), |acc, s| acc.direct_sum(&s.presentation))
    }

    /// The silting complex `σ_M ⊕ (P -> 0)`.
    pub fn presentation(&self) -> TwoTermComplex<K> {
        self.module_presentation()
            .direct_sum(&TwoTermComplex::stalk1(self.alg(), &self.support_complement))
    }

    /// Mutation at a summand position or, after the summands, at a support vertex.
    pub fn mutate(&self, pos: usize) -> Result<SiltingPair<K>> {
        self.mutate_cached(pos, &mut SummandCache::new())
    }

    /// `mutate`, sharing summand data through `cache`.
    pub fn mutate_cached(&self, pos: usize, cache: &mut SummandCache<K>) -> Result<SiltingPair<K>> {
        if pos >= self.num_positions() {
            return Err(Error::MutationFailed(format!("position {pos} out of range")));
        }
        let alg = self.alg().clone();
        let new = match self.left_exchange(pos)? {
            Some(x) => x,
            None => self.right_exchange(pos, cache)?,
        };
        let mut infos = self.rest(pos);
        let mut support = self.support_complement.clone();
        if pos >= self.summands.len() {
            support.remove(pos - self.summands.len());
        }
        match new {
            Exchange::Module(y) => infos.push(cache.intern_rep(&y)?),
            Exchange::Support(v) => support.push(v),
        }
        let result = SiltingPair::from_infos(&alg, infos, support);
        let report = result.validate_cached(cache);
        if !report.ok() {
            return Err(Error::MutationFailed(report.failures.join("; ")));
        }
        if result.canonical_key() == self.canonical_key() {
            return Err(Error::MutationFailed("mutation returned the same pair".into()));
        }
        Ok(result)
    }

    fn rest(&self, pos: usize) -> Vec<Arc<SummandInfo<K>>> {
        let mut rest = self.summands.clone();
        if pos < rest.len() {
            rest.remove(pos);
        }
        rest
    }

    /// The replacement produced by the cokernel of a minimal left
    /// approximation; `None` when the position is a support vertex or the
    /// summand lies in `gen` of the rest.
    fn left_exchange(&self, pos: usize) -> Result<Option<Exchange<K>>> {
        let alg = self.alg();
        if pos >= self.summands.len() {
            return Ok(None);
        }
        let x = &self.summands[pos];
        let rest = self.rest(pos);
        let rest_reps: Vec<Rep<K>> = rest.iter().map(|s| s.rep.clone()).collect();
        if !rest.is_empty() && in_gen_of(&rest_reps, &x.rep) {
            return Ok(None);
        }
        let locals: Vec<Indec<K>> = rest.iter().map(|s| s.local.clone()).collect();
        let y = left_approximation_by(&x.rep, &locals, true).cokernel;
        if y.is_zero() {
            let rest_sum = Rep::sum_of(alg, &rest_reps);
            let missing: Vec<usize> = (0..alg.num_vertices())
                .filter(|v| rest_sum.dims()[*v] == 0 && !self.support_complement.contains(v))
                .collect();
            return match missing.as_slice() {
                [v] => Ok(Some(Exchange::Support(*v))),
                _ => Err(Error::MutationFailed(format!(
                    "expected one new support vertex, found {missing:?}"
                ))),
            };
        }
        let parts = decompose_grouped(&y)?;
        if parts.len() != 1 {
            return Err(Error::MutationFailed(format!(
                "exchange cokernel has {} non-isomorphic summands",
                parts.len()
            )));
        }
        Ok(Some(Exchange::Module(parts[0].0.clone())))
    }

    /// Mutation upwards, computed as a left mutation over the opposite
    /// algebra: `Hom_A(-, A)` reverses the order on two-term silting complexes.
    fn right_exchange(&self, pos: usize, cache: &mut SummandCache<K>) -> Result<Exchange<K>> {
        let alg = self.alg().clone();
        let op = alg.opposite();
        let ns = self.summands.len();
        let mut infos = Vec::new();
        let mut support = Vec::new();
        let mut target = None;
        for i in 0..self.num_positions() {
            let d = if i < ns {
                self.summands[i].dual()?
            } else {
                Item::Module(cache.stalk_dual(&alg, self.support_complement[i - ns])?)
            };
            if i == pos {
                target = Some(d.clone());
            }
            match d {
                Item::Module(m) => infos.push(m),
                Item::Support(v) => support.push(v),
            }
        }
        let dual = SiltingPair::from_infos(&op, infos, support);
        let dpos = match target.expect("position in range") {
            Item::Module(m) => dual.summands.iter().position(|s| Arc::ptr_eq(s, &m)),
            Item::Support(v) => dual
                .support_complement
                .iter()
                .position(|&w| w == v)
                .map(|j| dual.summands.len() + j),
        }
        .ok_or_else(|| Error::MutationFailed("exchanged summand lost under duality".into()))?;
        let complex = match dual.left_exchange(dpos)? {
            Some(Exchange::Module(y)) => min_proj_presentation(&y).complex,
            Some(Exchange::Support(v)) => TwoTermComplex::stalk1(&op, &[v]),
            None => return Err(Error::MutationFailed("dual mutation is not a left mutation".into())),
        };
        let back = complex.dual(&alg)?;
        if back.p0.is_empty() {
            return match back.p1.as_slice() {
                [v] => Ok(Exchange::Support(*v)),
                _ => Err(Error::MutationFailed("stalk summand is not indecomposable".into())),
            };
        }
        Ok(Exchange::Module(back.cokernel()))
    }

    /// Position in `other` of the summand or support vertex not shared with `self`.
    pub fn exchanged_position(&self, other: &SiltingPair<K>) -> Option<usize> {
        let mine = self.gkeys();
        for (i, g) in other.gkeys().iter().enumerate() {
            if !mine.contains(g) {
                return Some(i);
            }
        }
        let ns = other.summands.len();
        other
            .support_complement
            .iter()
            .position(|v| !self.support_complement.contains(v))
            .map(|j| ns + j)
    }
}

enum Exchange<K: Field> {
    Module(Rep<K>),
    Support(usize),
}

pub fn is_tau_rigid<K: Field>(m: &Rep<K>) -> bool {
    hom_dim(m, &tau(m)) == 0
}

pub fn validate_pair<K: Field>(p: &SiltingPair<K>) -> ValidationReport {
    p.validate()
}

pub fn silting_to_presentation<K: Field>(p: &SiltingPair<K>) -> TwoTermComplex<K> {
    p.presentation()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeCaps {
    pub max_nodes: usize,
    pub max_dim: usize,
}

impl Default for ExchangeCaps {
    fn default() -> Self {
        ExchangeCaps {
            max_nodes: 10_000,
            max_dim: 60,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphStatus {
    Complete,
    Truncated { node_cap_hit: bool, dim_cap_hit: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub pos_a: usize,
    pub pos_b: usize,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct GraphStats {
    pub gkey_collisions: usize,
    pub frontier_sizes: Vec<usize>,
    pub max_summand_dim: usize,
    pub distinct_summands: usize,
}

type NodeKey = (Vec<usize>, Vec<usize>);

pub struct ExchangeGraph<K: Field> {
    pub nodes: Vec<SiltingPair<K>>,
    pub edges: Vec<Edge>,
    pub status: GraphStatus,
    pub stats: GraphStats,
    /// `neighbours[i][pos]` is the node reached by mutating node `i` at `pos`.
    pub neighbours: Vec<Vec<Option<usize>>>,
}

impl<K: Field> ExchangeGraph<K> {
    pub fn is_complete(&self) -> bool {
        self.status == GraphStatus::Complete
    }

    /// Index of the node with the given canonical key.
    pub fn find(&self, p: &SiltingPair<K>) -> Option<usize> {
        let key = p.canonical_key();
        self.nodes.iter().position(|q| q.canonical_key() == key)
    }

    pub fn top(&self) -> usize {
        0
    }

    pub fn bottom(&self) -> Option<usize> {
        let n = self.nodes.first()?.alg().num_vertices();
        self.nodes.iter().position(|p| p.support_complement.len() == n)
    }
}

/// Breadth-first closure of `(A, ∅)` under mutation.
pub fn exchange_graph<K: Field>(alg: &Algebra<K>, caps: ExchangeCaps) -> Result<ExchangeGraph<K>> {
    exchange_graph_ordered(alg, caps, None)
}

/// As `exchange_graph`; a seed shuffles the order in which positions are tried.
pub fn exchange_graph_ordered<K: Field>(
    alg: &Algebra<K>,
    caps: ExchangeCaps,
    shuffle: Option<u64>,
) -> Result<ExchangeGraph<K>> {
    let n = alg.num_vertices();
    let mut cache = SummandCache::new();
    let mut index: HashMap<NodeKey, usize> = HashMap::new();
    let mut nodes: Vec<SiltingPair<K>> = Vec::new();
    let mut neighbours: Vec<Vec<Option<usize>>> = Vec::new();
    let mut depth: Vec<usize> = Vec::new();
    let mut edges = Vec::new();
    let mut stats = GraphStats::default();
    let mut node_cap_hit = false;
    let mut dim_cap_hit = false;
    let mut rng = shuffle.map(ChaCha8Rng::seed_from_u64);

    let key_of = |p: &SiltingPair<K>, cache: &mut SummandCache<K>| -> NodeKey {
        let mut ids: Vec<usize> = p.summands.iter().map(|s| cache.intern(s).0).collect();
        ids.sort_unstable();
        (ids, p.support_complement.clone())
    };

    let start = SiltingPair::regular(alg)?;
    let k0 = key_of(&start, &mut cache);
    index.insert(k0, 0);
    nodes.push(start);
    neighbours.push(vec![None; n]);
    depth.push(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let mut order: Vec<usize> = (0..n).collect();
        if let Some(r) = rng.as_mut() {
            order.shuffle(r);
        }
        for pos in order {
            if neighbours[i][pos].is_some() {
                continue;
            }
            let next = nodes[i].mutate_cached(pos, &mut cache)?;
            let key = key_of(&next, &mut cache);
            let back = nodes[i]
                .exchanged_position(&next)
                .ok_or_else(|| Error::MutationFailed("no exchanged position".into()))?;
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    if next.summands.iter().any(|s| s.rep.dim() > caps.max_dim) {
                        dim_cap_hit = true;
                        continue;
                    }
                    if nodes.len() >= caps.max_nodes {
                        node_cap_hit = true;
                        continue;
                    }
                    let j = nodes.len();
                    stats.max_summand_dim = stats
                        .max_summand_dim
                        .max(next.summands.iter().map(|s| s.rep.dim()).max().unwrap_or(0));
                    index.insert(key, j);
                    nodes.push(next);
                    neighbours.push(vec![None; n]);
                    depth.push(depth[i] + 1);
                    queue.push_back(j);
                    j
                }
            };
            if let Some(prev) = neighbours[j][back] {
                if prev != i {
                    return Err(Error::MutationFailed(format!(
                        "mutation is not an involution between nodes {i} and {j}"
                    )));
                }
            }
            neighbours[i][pos] = Some(j);
            neighbours[j][back] = Some(i);
            edges.push(Edge {
                a: i,
                b: j,
                pos_a: pos,
                pos_b: back,
            });
        }
    }
    let max_depth = depth.iter().copied().max().unwrap_or(0);
    stats.frontier_sizes = (0..=max_depth).map(|d| depth.iter().filter(|&&x| x == d).count()).collect();
    stats.gkey_collisions = cache.collisions;
    stats.distinct_summands = cache.len();
    let status = if node_cap_hit || dim_cap_hit {
        GraphStatus::Truncated {
            node_cap_hit,
            dim_cap_hit,
        }
    } else {
        GraphStatus::Complete
    };
    Ok(ExchangeGraph {
        nodes,
        edges,
        status,
        stats,
        neighbours,
    })
}

pub enum Decision<K: Field> {
    Finite(ExchangeGraph<K>),
    Inconclusive(ExchangeGraph<K>),
}

impl<K: Field> Decision<K> {
    pub fn graph(&self) -> &ExchangeGraph<K> {
        match self {
            Decision::Finite(g) | Decision::Inconclusive(g) => g,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Decision::Finite(_))
    }
}

/// `Finite` exactly when the exchange graph closes within the caps; never
/// claims infiniteness.
pub fn decide_tau_tilting_finite<K: Field>(alg: &Algebra<K>, caps: ExchangeCaps) -> Result<Decision<K>> {
    let g = exchange_graph(alg, caps)?;
    Ok(if g.is_complete() {
        Decision::Finite(g)
    } else {
        Decision::Inconclusive(g)
    })
}
