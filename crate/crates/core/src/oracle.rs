//! Brute-force ground truth on tiny instances: modules over small prime
//! fields up to isomorphism, torsion classes of representation-finite
//! algebras, bricks, and Hom dimensions in the homotopy category.
//!
//! Enumeration walks every tuple of arrow matrices of a dimension vector,
//! `p^(number of matrix entries)` states, keeps those satisfying the
//! relations and collapses each base-change orbit onto its first member in
//! encoding order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{EchelonSpace, Field, Matrix};
use crate::quiveralg::Algebra;
use crate::repmod::{
    decompose, hom_basis, hom_dim, in_gen_of, is_brick, is_indecomposable, is_iso_indec, min_proj_presentation, Rep,
    RepMap, TwoTermComplex,
};

#[derive(Clone, Debug)]
pub struct EnumerationCaps {
    pub max_total_dim: usize,
    /// Optional cap on each vertex dimension.
    pub per_vertex: Option<Vec<usize>>,
    /// Largest number of matrix tuples walked, summed over dimension vectors.
    pub max_states: u64,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps {
            max_total_dim: 6,
            per_vertex: None,
            max_states: 1 << 22,
        }
    }
}

impl EnumerationCaps {
    pub fn total(max_total_dim: usize) -> Self {
        EnumerationCaps {
            max_total_dim,
            ..Self::default()
        }
    }
}

fn dim_vectors(n: usize, total: usize, per_vertex: Option<&[usize]>) -> Vec<Vec<usize>> {
    fn go(v: usize, left: usize, cur: &mut Vec<usize>, per: Option<&[usize]>, out: &mut Vec<Vec<usize>>) {
        if v == cur.len() {
            if cur.iter().any(|&d| d > 0) {
                out.push(cur.clone());
            }
            return;
        }
        let cap = per.map_or(left, |p| p[v].min(left));
        for d in 0..=cap {
            cur[v] = d;
            go(v + 1, left - d, cur, per, out);
        }
        cur[v] = 0;
    }
    let mut out = Vec::new();
    go(0, total, &mut vec![0; n], per_vertex, &mut out);
    out.sort_by_key(|d| (d.iter().sum::<usize>(), d.clone()));
    out
}

/// Arrow matrices of one dimension vector stored row-major in a flat tuple
/// of residues mod `p`.
struct Layout {
    p: u32,
    dims: Vec<usize>,
    /// `(source, target, offset)` per arrow.
    arrows: Vec<(usize, usize, usize)>,
    len: usize,
}

impl Layout {
    fn new<K: Field>(alg: &Algebra<K>, p: u32, dims: &[usize]) -> Self {
        let mut arrows = Vec::new();
        let mut len = 0;
        for a in alg.quiver().arrows() {
            arrows.push((a.source, a.target, len));
            len += dims[a.source] * dims[a.target];
        }
        Layout {
            p,
            dims: dims.to_vec(),
            arrows,
            len,
        }
    }

    fn states(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.len as u32)
    }

    fn encode(&self, t: &[u32]) -> u64 {
        t.iter().rev().fold(0, |acc, &d| acc * self.p as u64 + d as u64)
    }

    fn decode(&self, mut code: u64, t: &mut [u32]) {
        for d in t.iter_mut() {
            *d = (code % self.p as u64) as u32;
            code /= self.p as u64;
        }
    }

    /// Matrix of the word `a_1 * ... * a_k`, `dims[t] x dims[s]`.
    fn path(&self, t: &[u32], arrows: &[usize], source: usize) -> Vec<u32> {
        let p = self.p;
        let mut n = self.dims[source];
        let mut m: Vec<u32> = (0..n * n).map(|i| (i / n == i % n) as u32).collect();
        let cols = n;
        for &a in arrows {
            let (s, tg, off) = self.arrows[a];
            let (r, c) = (self.dims[tg], self.dims[s]);
            debug_assert_eq!(c, n);
            let mut out = vec![0u32; r * cols];
            for i in 0..r {
                for k in 0..c {
                    let x = t[off + i * c + k];
                    if x == 0 {
                        continue;
                    }
                    for j in 0..cols {
                        out[i * cols + j] = (out[i * cols + j] + x * m[k * cols + j]) % p;
                    }
                }
            }
            m = out;
            n = r;
        }
        m
    }

    fn satisfies<K: Field>(&self, alg: &Algebra<K>, t: &[u32]) -> bool {
        let p = self.p as i64;
        alg.relations().iter().all(|r| {
            let (Some(s), Some(tg)) = (r.source(), r.target()) else {
                return true;
            };
            let mut acc = vec![0i64; self.dims[tg] * self.dims[s]];
            for (c, path) in &r.terms {
                let m = self.path(t, &path.arrows, s);
                for (x, y) in acc.iter_mut().zip(&m) {
                    *x = (*x + c * *y as i64).rem_euclid(p);
                }
            }
            acc.iter().all(|&x| x == 0)
        })
    }

    /// Elementary base changes at one vertex: `row i += row j` on incoming
    /// matrices with the inverse column operation on outgoing ones, and
    /// scaling by a generator of `F_p^*`.
    fn generators(&self) -> Vec<(usize, usize, usize, u32)> {
        let mut out = Vec::new();
        let g = primitive_root(self.p);
        for (v, &n) in self.dims.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        out.push((v, i, j, 1));
                    }
                }
                if self.p > 2 {
                    out.push((v, i, i, g));
                }
            }
        }
        out
    }

    fn apply(&self, t: &[u32], (v, i, j, c): (usize, usize, usize, u32)) -> Vec<u32> {
        let p = self.p;
        let mut out = t.to_vec();
        let inv_c = if i == j { pow_mod(c, p - 2, p) } else { 0 };
        for &(s, tg, off) in &self.arrows {
            let (r, cc) = (self.dims[tg], self.dims[s]);
            if tg == v {
                // g M with g = I + E_ij or diag scaling
                for k in 0..cc {
                    if i == j {
                        out[off + i * cc + k] = out[off + i * cc + k] * c % p;
                    } else {
                        out[off + i * cc + k] = (out[off + i * cc + k] + out[off + j * cc + k]) % p;
                    }
                }
            }
            if s == v {
                // M g^{-1}
                for k in 0..r {
                    if i == j {
                        out[off + k * cc + i] = out[off + k * cc + i] * inv_c % p;
                    } else {
                        out[off + k * cc + j] = (out[off + k * cc + j] + (p - out[off + k * cc + i])) % p;
                    }
                }
            }
        }
        out
    }

    fn to_rep<K: Field>(&self, alg: &Algebra<K>, t: &[u32]) -> Result<Rep<K>> {
        let k = alg.field();
        let maps = self
            .arrows
            .iter()
            .map(|&(s, tg, off)| {
                let (r, c) = (self.dims[tg], self.dims[s]);
                Matrix::from_fn(k, r, c, |i, j| k.from_i64(t[off + i * c + j] as i64))
            })
            .collect();
        Rep::new(alg, self.dims.clone(), maps)
    }
}

fn pow_mod(b: u32, mut e: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = b as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| (1..p - 1).all(|e| pow_mod(g, e, p) != 1))
        .expect("prime modulus has a primitive root")
}

fn prime_of<K: Field>(alg: &Algebra<K>) -> Result<u32> {
    match alg.field().order() {
        Some(q) if q <= 251 => Ok(q as u32),
        Some(q) => Err(Error::CapTooLarge(format!("brute force over F_{q} is not supported"))),
        None => Err(Error::CapTooLarge("brute force needs a finite field".into())),
    }
}

/// Number of matrix tuples walked by an enumeration with these caps.
pub fn enumeration_cost<K: Field>(alg: &Algebra<K>, caps: &EnumerationCaps) -> Result<u64> {
    let p = prime_of(alg)?;
    let mut total: u64 = 0;
    for d in dim_vectors(alg.num_vertices(), caps.max_total_dim, caps.per_vertex.as_deref()) {
        let s = Layout::new(alg, p, &d)
            .states()
            .ok_or_else(|| Error::CapTooLarge(format!("dimension vector {d:?}")))?;
        total = total.saturating_add(s);
    }
    Ok(total)
}

/// Every module up to isomorphism with nonzero dimension vector inside the
/// caps, one representative per base-change orbit.
pub fn enumerate_modules_upto_iso<K: Field>(alg: &Algebra<K>, caps: &EnumerationCaps) -> Result<Vec<Rep<K>>> {
    let cost = enumeration_cost(alg, caps)?;
    if cost > caps.max_states {
        return Err(Error::CapTooLarge(format!(
            "{cost} matrix tuples exceed the cap of {}",
            caps.max_states
        )));
    }
    let p = prime_of(alg)?;
    let mut out = Vec::new();
    for d in dim_vectors(alg.num_vertices(), caps.max_total_dim, caps.per_vertex.as_deref()) {
        let layout = Layout::new(alg, p, &d);
        let states = layout.states().expect("checked above");
        let gens = layout.generators();
        let mut seen = vec![0u64; (states as usize).div_ceil(64)];
        let mark = |seen: &mut Vec<u64>, c: u64| -> bool {
            let (w, b) = ((c / 64) as usize, c % 64);
            let fresh = seen[w] >> b & 1 == 0;
            seen[w] |= 1 << b;
            fresh
        };
        let mut t = vec![0u32; layout.len];
        for code in 0..states {
            if seen[(code / 64) as usize] >> (code % 64) & 1 == 1 {
                continue;
            }
            layout.decode(code, &mut t);
            if !layout.satisfies(alg, &t) {
                continue;
            }
            mark(&mut seen, code);
            let mut stack = vec![t.clone()];
            while let Some(x) = stack.pop() {
                for &g in &gens {
                    let y = layout.apply(&x, g);
                    if mark(&mut seen, layout.encode(&y)) {
                        stack.push(y);
                    }
                }
            }
            out.push(layout.to_rep(alg, &t)?);
        }
    }
    Ok(out)
}

/// Indecomposable modules up to isomorphism inside the caps.
pub fn enumerate_reps_upto_iso<K: Field>(alg: &Algebra<K>, caps: &EnumerationCaps) -> Result<Vec<Rep<K>>> {
    let mut out = Vec::new();
    for m in enumerate_modules_upto_iso(alg, caps)? {
        if is_indecomposable(&m)? {
            out.push(m);
        }
    }
    Ok(out)
}

/// Indecomposables inside the caps whose endomorphism ring is a division ring.
pub fn brute_bricks<K: Field>(alg: &Algebra<K>, caps: &EnumerationCaps) -> Result<Vec<Rep<K>>> {
    let mut out = Vec::new();
    for m in enumerate_reps_upto_iso(alg, caps)? {
        if is_brick(&m)? {
            out.push(m);
        }
    }
    Ok(out)
}

/// Position of `x` in `list` up to isomorphism.
pub fn position_in<K: Field>(list: &[Rep<K>], x: &Rep<K>) -> Option<usize> {
    list.iter().position(|y| y.dims() == x.dims() && is_iso_indec(x, y))
}

/// Torsion classes of a representation-finite algebra as subsets of a
/// complete list of indecomposables, ordered by inclusion-compatible size.
#[derive(Clone, Debug, Serialize)]
pub struct TorsionLattice {
    pub classes: Vec<Vec<usize>>,
    /// Pairs `(larger, smaller)` with nothing strictly between.
    pub covers: Vec<(usize, usize)>,
}

impl TorsionLattice {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Indecomposables occurring in middle terms of extensions of `z` by `x`.
/// Every class in `Ext^1(z, x)` is realised as a pushout of the syzygy
/// sequence of `z`.
pub fn extension_middles<K: Field>(z: &Rep<K>, x: &Rep<K>, list: &[Rep<K>]) -> Result<Vec<usize>> {
    let alg = z.alg();
    let k = alg.field();
    let pres = min_proj_presentation(z);
    if pres.syzygy.is_zero() {
        return Ok(Vec::new());
    }
    let on_syz = hom_basis(&pres.syzygy, x);
    if on_syz.is_empty() {
        return Ok(Vec::new());
    }
    let len = on_syz[0].flatten().len();
    let mut trivial = EchelonSpace::new(k, len);
    for g in hom_basis(&pres.p0, x) {
        trivial.insert(&g.after(&pres.syz_incl).flatten());
    }
    let mut classes: Vec<RepMap<K>> = Vec::new();
    for g in on_syz {
        if trivial.insert(&g.flatten()) {
            classes.push(g);
        }
    }
    let elems = k
        .elements()
        .ok_or_else(|| Error::CapTooLarge("extension realisation needs a finite field".into()))?;
    let q = elems.len() as u64;
    let count = q
        .checked_pow(classes.len() as u32)
        .filter(|&c| c <= 1 << 16)
        .ok_or_else(|| Error::CapTooLarge(format!("{} extension classes", classes.len())))?;
    let mut out = Vec::new();
    for code in 1..count {
        let mut c = code;
        let coeffs: Vec<K::Elem> = (0..classes.len())
            .map(|_| {
                let e = elems[(c % q) as usize].clone();
                c /= q;
                k.neg(&e)
            })
            .collect();
        let f = RepMap::combination(&pres.syzygy, x, &classes, &coeffs);
        let phi = RepMap::column(alg, &pres.syzygy, &[pres.syz_incl.clone(), f]);
        for m in decompose(&phi.cokernel().0)? {
            let i = position_in(list, &m).ok_or_else(|| {
                Error::VerificationFailed(format!("extension summand {:?} is missing from the list", m.dims()))
            })?;
            if !out.contains(&i) {
                out.push(i);
            }
        }
    }
    Ok(out)
}

/// All torsion classes of a representation-finite algebra, given every
/// indecomposable up to isomorphism.
///
/// A subset `S` is returned when `S = ⊥(S^⊥)` inside the list; each returned
/// subset is then checked to be closed under quotients (trace tests) and
/// under extensions of its members (realised middle terms).
pub fn enumerate_torsion_classes_repfinite<K: Field>(indecs: &[Rep<K>]) -> Result<TorsionLattice> {
    let n = indecs.len();
    if n > 20 {
        return Err(Error::CapTooLarge(format!("{n} indecomposables")));
    }
    // zero[i] has bit j when Hom(X_i, X_j) = 0
    let zero: Vec<u32> = indecs
        .iter()
        .map(|x| {
            indecs
                .iter()
                .enumerate()
                .filter(|(_, y)| hom_dim(x, y) == 0)
                .fold(0u32, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    let full = (1u32 << n) - 1;
    let perp = |s: u32| (0..n).filter(|&i| s >> i & 1 == 1).fold(full, |acc, i| acc & zero[i]);
    let left_perp = |f: u32| (0..n).filter(|&i| zero[i] & f == f).fold(0u32, |acc, i| acc | 1 << i);
    let mut masks: Vec<u32> = (0..=full).filter(|&s| left_perp(perp(s)) == s).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut middles = vec![vec![None; n]; n];
    for &s in &masks {
        let members: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
        let reps: Vec<Rep<K>> = members.iter().map(|&i| indecs[i].clone()).collect();
        for y in 0..n {
            if s >> y & 1 == 0 && !reps.is_empty() && in_gen_of(&reps, &indecs[y]) {
                return Err(Error::VerificationFailed(format!(
                    "class {members:?} is not closed under quotients"
                )));
            }
        }
        for &z in &members {
            for &x in &members {
                if middles[z][x].is_none() {
                    middles[z][x] = Some(extension_middles(&indecs[z], &indecs[x], indecs)?);
                }
                if middles[z][x].as_ref().unwrap().iter().any(|&m| s >> m & 1 == 0) {
                    return Err(Error::VerificationFailed(format!(
                        "class {members:?} is not closed under extensions"
                    )));
                }
            }
        }
    }
    let mut covers = Vec::new();
    for (a, &big) in masks.iter().enumerate() {
        for (b, &small) in masks.iter().enumerate() {
            if a == b || big & small != small {
                continue;
            }
            let between = masks
                .iter()
                .any(|&m| m != big && m != small && big & m == m && m & small == small);
            if !between {
                covers.push((a, b));
            }
        }
    }
    let classes = masks
        .iter()
        .map(|&m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    Ok(TorsionLattice { classes, covers })
}

/// `dim Hom_K(σ, τ[shift])` in the homotopy category, for `shift` 0 or 1,
/// from chain maps and homotopies between the realised projectives.
pub fn homotopy_hom_dim<K: Field>(sigma: &TwoTermComplex<K>, tau: &TwoTermComplex<K>, shift: usize) -> Result<usize> {
    let alg = sigma.alg();
    let k = alg.field();
    let ds = sigma.realize();
    let dt = tau.realize();
    let (s1, s0) = (&ds.source, &ds.target);
    let (t1, t0) = (&dt.source, &dt.target);
    let span_dim = |maps: Vec<Vec<K::Elem>>, len: usize| {
        let mut space = EchelonSpace::new(k, len);
        for m in maps {
            space.insert(&m);
        }
        space.dim()
    };
    match shift {
        1 => {
            let total = hom_dim(s1, t0);
            if total == 0 {
                return Ok(0);
            }
            let len = RepMap::zero(s1, t0).flatten().len();
            let mut null: Vec<Vec<K::Elem>> = hom_basis(s0, t0).iter().map(|h| h.after(&ds).flatten()).collect();
            null.extend(hom_basis(s1, t1).iter().map(|h| dt.after(h).flatten()));
            Ok(total - span_dim(null, len))
        }
        0 => {
            let h1 = hom_basis(s1, t1);
            let h0 = hom_basis(s0, t0);
            // chain maps: dτ∘f1 = f0∘dσ
            let len = RepMap::zero(s1, t0).flatten().len();
            let cols: Vec<Vec<K::Elem>> = h1
                .iter()
                .map(|f| dt.after(f).flatten())
                .chain(h0.iter().map(|f| {
                    let g = f.after(&ds);
                    g.scale(&k.neg(&k.one())).flatten()
                }))
                .collect();
            let chain = if cols.is_empty() {
                0
            } else if len == 0 {
                cols.len()
            } else {
                cols.len() - Matrix::from_cols(k, len, &cols).rank()
            };
            // null-homotopic: (h∘dσ, dτ∘h) for h: P0σ -> P1τ
            let l1 = RepMap::zero(s1, t1).flatten().len();
            let l0 = RepMap::zero(s0, t0).flatten().len();
            let null: Vec<Vec<K::Elem>> = hom_basis(s0, t1)
                .iter()
                .map(|h| {
                    let mut v = h.after(&ds).flatten();
                    v.extend(dt.after(h).flatten());
                    v
                })
                .collect();
            Ok(chain - span_dim(null, l1 + l0))
        }
        _ => Err(Error::Semantic("shift must be 0 or 1".into())),
    }
}
