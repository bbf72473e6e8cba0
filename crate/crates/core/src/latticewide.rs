//! The lattice of functorially finite torsion classes: inclusion, the Hasse
//! quiver with brick labels, semibricks, and the wide subcategories attached
//! to support τ-tilting pairs.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::approx::{approximation_triangle, x_sigma_membership};
use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix};
use crate::repmod::{hom_dim, in_gen_of, is_brick, is_iso_indec, trace_subspaces, Rep, TwoTermComplex};
use crate::tautilt::{ExchangeGraph, SiltingPair, SummandInfo};

/// Whether `gen(a.module) ⊆ gen(b.module)`.
pub fn gen_leq<K: Field>(a: &SiltingPair<K>, b: &SiltingPair<K>) -> bool {
    let gens = b.indec_summands();
    a.summands.iter().all(|s| in_gen_of(&gens, &s.rep))
}

fn sum_spaces<K: Field>(k: &K, d: usize, spaces: &[&Matrix<K>]) -> Matrix<K> {
    let nonempty: Vec<&Matrix<K>> = spaces.iter().copied().filter(|m| m.cols() > 0).collect();
    if nonempty.is_empty() {
        return Matrix::zeros(k, d, 0);
    }
    Matrix::hstack(k, d, &nonempty).column_space()
}

/// Canonical form of a family of subspaces, usable as a hash key.
fn subspace_key<K: Field>(spaces: &[Matrix<K>]) -> Vec<Vec<K::Elem>> {
    spaces
        .iter()
        .map(|s| {
            let r = s.transpose().rref();
            let mut v: Vec<K::Elem> = vec![s.field().from_i64(r.rank as i64)];
            v.extend(r.matrix.data()[..r.rank * s.rows()].iter().cloned());
            v
        })
        .collect()
}

/// A brick label with a note on how it was found.
#[derive(Clone, Debug)]
pub struct Label<K: Field> {
    pub brick: Rep<K>,
    /// Set when the trace-quotient candidate failed and the bounded search
    /// over quotients produced the label instead.
    pub fallback: bool,
}

/// Caches pairwise data (traces, Hom dimensions) for labelling many arrows
/// between pairs built from the same summands.
struct LabelEngine<K: Field> {
    ids: HashMap<usize, usize>,
    summands: Vec<Arc<SummandInfo<K>>>,
    traces: HashMap<(usize, usize), Vec<Matrix<K>>>,
    rad_images: HashMap<usize, Vec<Matrix<K>>>,
    candidates: HashMap<(usize, Vec<Vec<K::Elem>>), Option<usize>>,
    bricks: Vec<Rep<K>>,
    brick_traces: HashMap<(usize, usize), Vec<Matrix<K>>>,
    brick_homs: HashMap<(usize, usize), usize>,
}

impl<K: Field> LabelEngine<K> {
    fn new() -> Self {
        LabelEngine {
            ids: HashMap::new(),
            summands: Vec::new(),
            traces: HashMap::new(),
            rad_images: HashMap::new(),
            candidates: HashMap::new(),
            bricks: Vec::new(),
            brick_traces: HashMap::new(),
            brick_homs: HashMap::new(),
        }
    }

    fn id(&mut self, s: &Arc<SummandInfo<K>>) -> usize {
        let ptr = Arc::as_ptr(s) as usize;
        if let Some(&id) = self.ids.get(&ptr) {
            return id;
        }
        let id = self.summands.len();
        self.summands.push(s.clone());
        self.ids.insert(ptr, id);
        id
    }

    fn trace(&mut self, u: usize, x: usize) -> &Vec<Matrix<K>> {
        let (su, sx) = (&self.summands[u], &self.summands[x]);
        self.traces
            .entry((u, x))
            .or_insert_with(|| trace_subspaces(&su.rep, &sx.rep))
    }

    fn rad_image(&mut self, x: usize) -> &Vec<Matrix<K>> {
        let s = &self.summands[x];
        self.rad_images.entry(x).or_insert_with(|| {
            let k = s.rep.field();
            (0..s.rep.dims().len())
                .map(|v| {
                    let blocks: Vec<&Matrix<K>> = s.local.rad.iter().map(|f| f.comp(v)).collect();
                    sum_spaces(k, s.rep.dims()[v], &blocks)
                })
                .collect()
        })
    }

    /// Index of `b` in the brick list, adding it if new.
    fn brick_index(&mut self, b: &Rep<K>) -> usize {
        for (i, c) in self.bricks.iter().enumerate() {
            if c.dims() == b.dims() && is_iso_indec(c, b) {
                return i;
            }
        }
        self.bricks.push(b.clone());
        self.bricks.len() - 1
    }

    fn in_gen(&mut self, gens: &[usize], b: usize) -> bool {
        let brick = self.bricks[b].clone();
        let k = brick.field().clone();
        let traces: Vec<Vec<Matrix<K>>> = gens
            .iter()
            .map(|&u| {
                let rep = &self.summands[u].rep;
                self.brick_traces
                    .entry((u, b))
                    .or_insert_with(|| trace_subspaces(rep, &brick))
                    .clone()
            })
            .collect();
        (0..brick.dims().len()).all(|v| {
            let blocks: Vec<&Matrix<K>> = traces.iter().map(|t| &t[v]).collect();
            sum_spaces(&k, brick.dims()[v], &blocks).cols() == brick.dims()[v]
        })
    }

    fn hom_zero(&mut self, from: &[usize], b: usize) -> bool {
        from.iter().all(|&u| {
            let rep = self.summands[u].rep.clone();
            let brick = &self.bricks[b];
            *self.brick_homs.entry((u, b)).or_insert_with(|| hom_dim(&rep, brick)) == 0
        })
    }

    /// Label of the arrow `upper ⋗ lower` obtained by mutating `upper` at
    /// summand `pos`.
    fn label(&mut self, upper: &SiltingPair<K>, lower: &SiltingPair<K>, pos: usize) -> Result<(usize, bool)> {
        if pos >= upper.summands.len() {
            return Err(Error::LabelNotFound("the larger side of an arrow lost a support vertex".into()));
        }
        let x = self.id(&upper.summands[pos]);
        let rest: Vec<usize> = upper
            .summands
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pos)
            .map(|(_, s)| s.clone())
            .collect::<Vec<_>>()
            .iter()
            .map(|s| self.id(s))
            .collect();
        let xr = self.summands[x].rep.clone();
        let k = xr.field().clone();
        let mut parts: Vec<Vec<Matrix<K>>> = rest.iter().map(|&u| self.trace(u, x).clone()).collect();
        parts.push(self.rad_image(x).clone());
        let sub: Vec<Matrix<K>> = (0..xr.dims().len())
            .map(|v| {
                let blocks: Vec<&Matrix<K>> = parts.iter().map(|p| &p[v]).collect();
                sum_spaces(&k, xr.dims()[v], &blocks)
            })
            .collect();
        let key = (x, subspace_key(&sub));
        let cand = match self.candidates.get(&key) {
            Some(c) => *c,
            None => {
                let (b, _) = xr.quotient(&sub);
                let c = if !b.is_zero() && is_brick(&b)? {
                    Some(self.brick_index(&b))
                } else {
                    None
                };
                self.candidates.insert(key, c);
                c
            }
        };
        let upper_ids: Vec<usize> = upper.summands.iter().map(|s| self.id(s)).collect();
        let lower_ids: Vec<usize> = lower.summands.iter().map(|s| self.id(s)).collect();
        if let Some(b) = cand {
            if self.in_gen(&upper_ids, b) && self.hom_zero(&lower_ids, b) {
                return Ok((b, false));
            }
        }
        for q in quotient_candidates(&xr)? {
            if !is_brick(&q)? {
                continue;
            }
            let b = self.brick_index(&q);
            if self.in_gen(&upper_ids, b) && self.hom_zero(&lower_ids, b) {
                return Ok((b, true));
            }
        }
        Err(Error::LabelNotFound(format!(
            "no quotient of the summand with dimension vector {:?} passes verification",
            xr.dims()
        )))
    }
}

/// Bounded search space of quotients of `X`: `X` itself and `X` modulo the
/// submodules generated by one or two basis vectors.
fn quotient_candidates<K: Field>(x: &Rep<K>) -> Result<Vec<Rep<K>>> {
    let k = x.field();
    let nv = x.dims().len();
    let mut gens: Vec<(usize, usize)> = Vec::new();
    for v in 0..nv {
        for i in 0..x.dims()[v] {
            gens.push((v, i));
        }
    }
    if gens.len() > 24 {
        return Err(Error::LabelNotFound(format!("bounded search refused for dimension {}", x.dim())));
    }
    let unit = |v: usize, i: usize| {
        let mut m = Matrix::zeros(k, x.dims()[v], 1);
        m.set(i, 0, k.one());
        m
    };
    let mut out = vec![x.clone()];
    let mut subsets: Vec<Vec<(usize, usize)>> = gens.iter().map(|g| vec![*g]).collect();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            subsets.push(vec![gens[a], gens[b]]);
        }
    }
    for subset in subsets {
        let mut g: Vec<Matrix<K>> = (0..nv).map(|v| Matrix::zeros(k, x.dims()[v], 0)).collect();
        for (v, i) in subset {
            g[v] = Matrix::hstack(k, x.dims()[v], &[&g[v], &unit(v, i)]);
        }
        let sub = x.generated_subspaces(&g);
        let (q, _) = x.quotient(&sub);
        if !q.is_zero() {
            out.push(q);
        }
    }
    Ok(out)
}

/// Brick label of the arrow from `upper` to `lower = upper.mutate(pos)`.
pub fn brick_label<K: Field>(upper: &SiltingPair<K>, lower: &SiltingPair<K>, pos: usize) -> Result<Label<K>> {
    let mut engine = LabelEngine::new();
    let (b, fallback) = engine.label(upper, lower, pos)?;
    Ok(Label {
        brick: engine.bricks[b].clone(),
        fallback,
    })
}

/// An arrow `upper ⋗ lower` of the Hasse quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HasseArrow {
    pub upper: usize,
    pub lower: usize,
    /// Position in `upper` of the exchanged summand.
    pub pos: usize,
    /// Index into `Hasse::bricks`.
    pub label: usize,
    pub fallback: bool,
}

/// Hasse quiver of the torsion classes of a complete exchange graph.
pub struct Hasse<K: Field> {
    pub num_nodes: usize,
    pub arrows: Vec<HasseArrow>,
    /// Distinct labels up to isomorphism.
    pub bricks: Vec<Rep<K>>,
    pub top: usize,
    pub bottom: usize,
    pub fallbacks: usize,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
}

impl<K: Field> Hasse<K> {
    pub fn down_arrows(&self, node: usize) -> impl Iterator<Item = &HasseArrow> {
        self.down[node].iter().map(|&i| &self.arrows[i])
    }

    pub fn up_arrows(&self, node: usize) -> impl Iterator<Item = &HasseArrow> {
        self.up[node].iter().map(|&i| &self.arrows[i])
    }

    /// Labels of the arrows leaving `node` downwards.
    pub fn semibrick_at(&self, node: usize) -> Vec<Rep<K>> {
        self.down_arrows(node).map(|a| self.bricks[a.label].clone()).collect()
    }

    /// Label indices of the arrows leaving `node` downwards, sorted.
    pub fn semibrick_ids(&self, node: usize) -> Vec<usize> {
        let mut ids: Vec<usize> = self.down_arrows(node).map(|a| a.label).collect();
        ids.sort_unstable();
        ids
    }

    /// `reach[i]` holds every node below or equal to `i`.
    fn below_sets(&self) -> Vec<Vec<u64>> {
        let n = self.num_nodes;
        let words = n.div_ceil(64);
        let mut below = vec![vec![0u64; words]; n];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for a in &self.arrows {
            children[a.upper].push(a.lower);
        }
        for i in topological_order(n, &self.arrows).into_iter().rev() {
            below[i][i / 64] |= 1 << (i % 64);
            for &c in &children[i] {
                let (lo, hi) = if c < i { below.split_at_mut(i) } else { below.split_at_mut(c) };
                let (src, dst) = if c < i { (&lo[c], &mut hi[0]) } else { (&hi[0], &mut lo[i]) };
                for (d, s) in dst.iter_mut().zip(src) {
                    *d |= s;
                }
            }
        }
        below
    }

    /// Whether `a ≤ b` in the transitive closure.
    pub fn leq_closure(&self) -> impl Fn(usize, usize) -> bool {
        let below = self.below_sets();
        move |a, b| below[b][a / 64] >> (a % 64) & 1 == 1
    }

    /// Whether every pair of nodes has a meet and a join. Quadratic in the
    /// number of nodes; intended for small graphs.
    pub fn is_lattice(&self) -> bool {
        let n = self.num_nodes;
        let below = self.below_sets();
        let leq = |a: usize, b: usize| below[b][a / 64] >> (a % 64) & 1 == 1;
        let has_extremum = |lower: bool| {
            (0..n).all(|x| {
                (x + 1..n).all(|y| {
                    let common: Vec<usize> = (0..n)
                        .filter(|&z| if lower { leq(z, x) && leq(z, y) } else { leq(x, z) && leq(y, z) })
                        .collect();
                    common
                        .iter()
                        .any(|&m| common.iter().all(|&z| if lower { leq(z, m) } else { leq(m, z) }))
                })
            })
        };
        has_extremum(true) && has_extremum(false)
    }
}

/// Kahn's algorithm from the top; panics never, returns fewer nodes on cycles.
fn topological_order(n: usize, arrows: &[HasseArrow]) -> Vec<usize> {
    let mut indeg = vec![0usize; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in arrows {
        indeg[a.lower] += 1;
        children[a.upper].push(a.lower);
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(i) = queue.pop_front() {
        order.push(i);
        for &c in &children[i] {
            indeg[c] -= 1;
            if indeg[c] == 0 {
                queue.push_back(c);
            }
        }
    }
    order
}

/// Orients the mutation edges by inclusion of torsion classes and labels
/// each arrow by a verified brick.
pub fn hasse<K: Field>(g: &ExchangeGraph<K>) -> Result<Hasse<K>> {
    if !g.is_complete() {
        return Err(Error::NotComplete);
    }
    let n = g.nodes.len();
    let mut engine = LabelEngine::new();
    let mut arrows = Vec::with_capacity(g.edges.len());
    for e in &g.edges {
        let (a, b) = (&g.nodes[e.a], &g.nodes[e.b]);
        let b_le_a = side_leq(&mut engine, b, e.pos_b, a);
        let a_le_b = side_leq(&mut engine, a, e.pos_a, b);
        let (upper, lower, pos) = match (b_le_a, a_le_b) {
            (true, false) => (e.a, e.b, e.pos_a),
            (false, true) => (e.b, e.a, e.pos_b),
            _ => {
                return Err(Error::VerificationFailed(format!(
                    "mutation edge {}-{} is not a strict inclusion of torsion classes",
                    e.a, e.b
                )))
            }
        };
        let (label, fallback) = engine.label(&g.nodes[upper], &g.nodes[lower], pos)?;
        arrows.push(HasseArrow {
            upper,
            lower,
            pos,
            label,
            fallback,
        });
    }
    if topological_order(n, &arrows).len() != n {
        return Err(Error::VerificationFailed("Hasse quiver has an oriented cycle".into()));
    }
    let mut down = vec![Vec::new(); n];
    let mut up = vec![Vec::new(); n];
    for (i, a) in arrows.iter().enumerate() {
        down[a.upper].push(i);
        up[a.lower].push(i);
    }
    let sources: Vec<usize> = (0..n).filter(|&i| up[i].is_empty()).collect();
    let sinks: Vec<usize> = (0..n).filter(|&i| down[i].is_empty()).collect();
    let bottom = g.bottom().ok_or_else(|| Error::VerificationFailed("no bottom node".into()))?;
    if sources != [g.top()] || sinks != [bottom] {
        return Err(Error::VerificationFailed(format!(
            "expected a unique maximum and minimum, found {sources:?} and {sinks:?}"
        )));
    }
    let fallbacks = arrows.iter().filter(|a| a.fallback).count();
    Ok(Hasse {
        num_nodes: n,
        arrows,
        bricks: engine.bricks,
        top: g.top(),
        bottom,
        fallbacks,
        down,
        up,
    })
}

/// Whether the pair `p` lies below `q`, given that they differ only at
/// position `pos` of `p`.
fn side_leq<K: Field>(engine: &mut LabelEngine<K>, p: &SiltingPair<K>, pos: usize, q: &SiltingPair<K>) -> bool {
    if pos >= p.summands.len() {
        return true;
    }
    let y = engine.id(&p.summands[pos]);
    let gens: Vec<usize> = q.summands.iter().map(|s| engine.id(s)).collect();
    let yr = engine.summands[y].rep.clone();
    let k = yr.field().clone();
    let traces: Vec<Vec<Matrix<K>>> = gens.iter().map(|&u| engine.trace(u, y).clone()).collect();
    (0..yr.dims().len()).all(|v| {
        let blocks: Vec<&Matrix<K>> = traces.iter().map(|t| &t[v]).collect();
        sum_spaces(&k, yr.dims()[v], &blocks).cols() == yr.dims()[v]
    })
}

/// Simple modules of the wide subcategory at a node, read off locally: one
/// label for each summand whose mutation goes down.
pub fn semibrick_at<K: Field>(node: &SiltingPair<K>) -> Result<Vec<Rep<K>>> {
    let mut engine = LabelEngine::new();
    let mut out = Vec::new();
    for pos in 0..node.summands.len() {
        let rest: Vec<Rep<K>> = node
            .summands
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pos)
            .map(|(_, s)| s.rep.clone())
            .collect();
        if !rest.is_empty() && in_gen_of(&rest, &node.summands[pos].rep) {
            continue;
        }
        let lower = node.mutate(pos)?;
        let (b, _) = engine.label(node, &lower, pos)?;
        out.push(engine.bricks[b].clone());
    }
    verify_semibrick(&out)?;
    Ok(out)
}

/// Bricks with pairwise vanishing Hom.
pub fn verify_semibrick<K: Field>(bricks: &[Rep<K>]) -> Result<()> {
    for (i, x) in bricks.iter().enumerate() {
        if !is_brick(x)? {
            return Err(Error::VerificationFailed(format!("semibrick member {i} is not a brick")));
        }
        for (j, y) in bricks.iter().enumerate() {
            if i != j && hom_dim(x, y) != 0 {
                return Err(Error::VerificationFailed(format!("Hom between semibrick members {i} and {j} is nonzero")));
            }
        }
    }
    Ok(())
}

/// The wide subcategory `gen T ∩ T1°` of a node, with the presentation `σ1`
/// whose perpendicular category it is.
#[derive(Clone)]
pub struct WidePredicate<K: Field> {
    pub node: SiltingPair<K>,
    pub sigma1: TwoTermComplex<K>,
    pub t1: Rep<K>,
    pub semibrick: Vec<Rep<K>>,
}

impl<K: Field> WidePredicate<K> {
    /// Membership through `σ1`: `Hom(σ1, X)` bijective.
    pub fn contains(&self, x: &Rep<K>) -> bool {
        x_sigma_membership(&self.sigma1, x)
    }

    /// Membership through the closed form `X ∈ gen T` and `Hom(T1, X) = 0`.
    pub fn contains_closed_form(&self, x: &Rep<K>) -> bool {
        in_gen_of(&self.node.indec_summands(), x) && hom_dim(&self.t1, x) == 0
    }
}

/// Builds the wide subcategory of `node` with the given semibrick (the
/// down-labels at the node).
pub fn wide_subcategory<K: Field>(node: &SiltingPair<K>, semibrick: Vec<Rep<K>>) -> Result<WidePredicate<K>> {
    let tri = approximation_triangle(&node.module)?;
    let w = WidePredicate {
        node: node.clone(),
        sigma1: tri.sigma1,
        t1: tri.t1,
        semibrick,
    };
    for (i, s) in w.semibrick.iter().enumerate() {
        if !w.contains(s) {
            return Err(Error::VerificationFailed(format!(
                "semibrick member {i} is not in the wide subcategory"
            )));
        }
    }
    Ok(w)
}

/// `X ∈ a(gen T)`, decided by `X ∈ gen T` and `Hom(T1, X) = 0`.
pub fn a_map_membership<K: Field>(node: &SiltingPair<K>, x: &Rep<K>) -> Result<bool> {
    let tri = approximation_triangle(&node.module)?;
    Ok(in_gen_of(&node.indec_summands(), x) && hom_dim(&tri.t1, x) == 0)
}

/// Whether `X` has a finite filtration with factors generated by `gens`,
/// found by repeatedly dividing out the trace of `gens`.
pub fn filtgen_membership_bounded<K: Field>(gens: &[Rep<K>], x: &Rep<K>, depth_cap: usize) -> Result<bool> {
    let mut cur = x.clone();
    for _ in 0..depth_cap {
        if cur.is_zero() {
            return Ok(true);
        }
        let k = cur.field().clone();
        let traces: Vec<Vec<Matrix<K>>> = gens.iter().map(|g| trace_subspaces(g, &cur)).collect();
        let sub: Vec<Matrix<K>> = (0..cur.dims().len())
            .map(|v| {
                let blocks: Vec<&Matrix<K>> = traces.iter().map(|t| &t[v]).collect();
                sum_spaces(&k, cur.dims()[v], &blocks)
            })
            .collect();
        if sub.iter().all(|s| s.cols() == 0) {
            return Ok(false);
        }
        cur = cur.quotient(&sub).0;
    }
    if cur.is_zero() {
        Ok(true)
    } else {
        Err(Error::DepthExceeded(depth_cap))
    }
}
