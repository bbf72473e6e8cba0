//! Left approximations by additive closures, the cone of an approximation of
//! the regular module, presilting tests, and Bongartz completion.

use crate::error::{Error, Result};
use crate::exactalg::{EchelonSpace, Field, Matrix};
use crate::quiveralg::{Algebra, Elem};
use crate::repmod::{
    decompose_grouped, hom_basis, hom_dim, local_data, min_proj_presentation, regular_module, Indec,
    Presentation, Rep, RepMap, TwoTermComplex,
};
use crate::tautilt::SiltingPair;

#[derive(Clone, Debug)]
pub struct ApproximationResult<K: Field> {
    /// `X -> U0` with `U0 ∈ add U`.
    pub map: RepMap<K>,
    /// Indecomposable summands of `U0`, in the order used by `map`.
    pub summands: Vec<Rep<K>>,
    pub cokernel: Rep<K>,
    pub coker_proj: RepMap<K>,
    pub minimal: bool,
}

/// Indecomposable summands of `U` up to isomorphism, with local data.
pub fn indecomposable_classes<K: Field>(u: &Rep<K>) -> Result<Vec<Indec<K>>> {
    decompose_grouped(u)?
        .into_iter()
        .map(|(r, _)| local_data(&r).map(|d| d.expect("indecomposable summand")))
        .collect()
}

/// Left `add U`-approximation of `X`.
pub fn left_add_approximation<K: Field>(x: &Rep<K>, u: &Rep<K>, minimal: bool) -> Result<ApproximationResult<K>> {
    let classes = indecomposable_classes(u)?;
    Ok(left_approximation_by(x, &classes, minimal))
}

/// Left approximation of `X` by the additive closure of pairwise
/// non-isomorphic indecomposables `us`.
///
/// The minimal version uses, for each `U_i`, a complement in `Hom(X, U_i)` of
/// the maps factoring through a radical map `U_j -> U_i`.
pub fn left_approximation_by<K: Field>(x: &Rep<K>, us: &[Indec<K>], minimal: bool) -> ApproximationResult<K> {
    let alg = x.alg();
    let homs: Vec<Vec<RepMap<K>>> = us.iter().map(|u| hom_basis(x, &u.rep)).collect();
    let mut chosen: Vec<RepMap<K>> = Vec::new();
    let mut summands = Vec::new();
    for (i, ui) in us.iter().enumerate() {
        if homs[i].is_empty() {
            continue;
        }
        if !minimal {
            for f in &homs[i] {
                chosen.push(f.clone());
                summands.push(ui.rep.clone());
            }
            continue;
        }
        let k = x.field();
        let len = homs[i][0].flatten().len();
        let mut space = EchelonSpace::new(k, len);
        for (j, uj) in us.iter().enumerate() {
            if homs[j].is_empty() {
                continue;
            }
            let rad: Vec<RepMap<K>> = if i == j { ui.rad.clone() } else { hom_basis(&uj.rep, &ui.rep) };
            for g in &rad {
                for h in &homs[j] {
                    space.insert(&g.after(h).flatten());
                    if space.dim() == homs[i].len() {
                        break;
                    }
                }
            }
        }
        for f in &homs[i] {
            if space.insert(&f.flatten()) {
                chosen.push(f.clone());
                summands.push(ui.rep.clone());
            }
        }
    }
    let map = if chosen.is_empty() {
        RepMap::zero(x, &Rep::zero(alg))
    } else {
        RepMap::column(alg, x, &chosen)
    };
    let (cokernel, coker_proj) = map.cokernel();
    ApproximationResult {
        map,
        summands,
        cokernel,
        coker_proj,
        minimal,
    }
}

/// Whether every map from `X` to each `U_i` factors through `f`.
pub fn is_left_approximation<K: Field>(f: &RepMap<K>, us: &[Rep<K>]) -> bool {
    let k = f.source.field();
    us.iter().all(|u| {
        let target = hom_dim(&f.source, u);
        if target == 0 {
            return true;
        }
        let gs = hom_basis(&f.target, u);
        if gs.is_empty() {
            return false;
        }
        let len = gs[0].after(f).flatten().len();
        let mut space = EchelonSpace::new(k, len);
        for g in &gs {
            space.insert(&g.after(f).flatten());
        }
        space.dim() == target
    })
}

/// Recomputes a minimal left approximation with the same additive closure.
pub fn minimalise<K: Field>(f: &RepMap<K>) -> Result<ApproximationResult<K>> {
    left_add_approximation(&f.source, &f.target, true)
}

/// Coordinate of `e_v` in the regular module at vertex `v`.
fn unit_coordinate<K: Field>(alg: &Algebra<K>, v: usize) -> usize {
    (0..v).map(|u| alg.peirce(u, v).len()).sum::<usize>() + alg.peirce_pos(v)
}

/// The mapping cone of the chain map from the stalk complex `A` lifting
/// `f: A -> T0` through the presentation of `T0`, with contractible summands
/// removed. Its cokernel is `coker f`.
pub fn cone_presentation<K: Field>(f: &RepMap<K>, pres: &Presentation<K>) -> Result<TwoTermComplex<K>> {
    let alg = f.source.alg();
    let k = alg.field();
    let n = alg.num_vertices();
    let reg_dims: Vec<usize> = (0..n).map(|v| (0..n).map(|u| alg.peirce(u, v).len()).sum()).collect();
    if f.source.dims() != reg_dims.as_slice() {
        return Err(Error::Shape("cone_presentation needs a map out of the regular module".into()));
    }
    if f.target.dims() != pres.module.dims() {
        return Err(Error::Shape("presentation does not present the target".into()));
    }
    let c0 = &pres.complex;
    let mut lift: Vec<Vec<Elem<K>>> = vec![Vec::new(); c0.p0.len()];
    for v in 0..n {
        let mut e = vec![k.zero(); reg_dims[v]];
        e[unit_coordinate(alg, v)] = k.one();
        let img = f.comp(v).mul_vec(&e);
        let y = pres
            .cover
            .comp(v)
            .solve(&img)
            .ok_or_else(|| Error::LiftFailure(format!("image of e_{v} does not lift")))?;
        let mut off = 0;
        for (r, &w) in c0.p0.iter().enumerate() {
            let mut x = alg.zero();
            for (j, &q) in alg.peirce(w, v).iter().enumerate() {
                x[q] = y[off + j].clone();
            }
            off += alg.peirce(w, v).len();
            lift[r].push(x);
        }
    }
    let mut p1: Vec<usize> = (0..n).collect();
    p1.extend(&c0.p1);
    let diff = (0..c0.p0.len())
        .map(|r| {
            let mut row = lift[r].clone();
            row.extend(c0.diff[r].iter().cloned());
            row
        })
        .collect();
    Ok(TwoTermComplex::new(alg, p1, c0.p0.clone(), diff)?.prune())
}

/// Data of the approximation sequence `A -> T0 -> T1 -> 0` of a module.
pub struct ApproximationTriangle<K: Field> {
    pub approx: ApproximationResult<K>,
    pub t1: Rep<K>,
    pub sigma1: TwoTermComplex<K>,
}

/// Minimal left `add T`-approximation of `A`, its cokernel `T1` and the
/// presentation `σ1` of `T1` obtained from the cone.
pub fn approximation_triangle<K: Field>(t: &Rep<K>) -> Result<ApproximationTriangle<K>> {
    let classes = indecomposable_classes(t)?;
    approximation_triangle_by(t.alg(), &classes)
}

/// `approximation_triangle` for `T` given by its indecomposable summands.
pub fn approximation_triangle_by<K: Field>(alg: &Algebra<K>, classes: &[Indec<K>]) -> Result<ApproximationTriangle<K>> {
    let a = regular_module(alg);
    let approx = left_approximation_by(&a, classes, true);
    let target = approx.map.target.clone();
    let pres = min_proj_presentation(&target);
    let sigma1 = cone_presentation(&approx.map, &pres)?;
    Ok(ApproximationTriangle {
        t1: approx.cokernel.clone(),
        approx,
        sigma1,
    })
}

/// Spans `{s0 ∘ Dσ + Dτ ∘ s1}` inside `Hom(P1σ, P0τ)`.
fn null_homotopic_span<K: Field>(sigma: &TwoTermComplex<K>, tau: &TwoTermComplex<K>) -> EchelonSpace<K> {
    let alg = sigma.alg();
    let k = alg.field();
    // offsets of the (r, s) blocks e_{τ.p0[r]} A e_{σ.p1[s]}
    let mut offs = vec![vec![0; sigma.p1.len()]; tau.p0.len()];
    let mut total = 0;
    for (r, &w) in tau.p0.iter().enumerate() {
        for (s, &u) in sigma.p1.iter().enumerate() {
            offs[r][s] = total;
            total += alg.peirce(w, u).len();
        }
    }
    let mut space = EchelonSpace::new(k, total);
    let place = |vec: &mut Vec<K::Elem>, r: usize, s: usize, x: &[K::Elem]| {
        let (w, u) = (tau.p0[r], sigma.p1[s]);
        for (j, &q) in alg.peirce(w, u).iter().enumerate() {
            vec[offs[r][s] + j] = x[q].clone();
        }
    };
    for (r2, &w) in tau.p0.iter().enumerate() {
        for (r, &w0) in sigma.p0.iter().enumerate() {
            for &q in alg.peirce(w, w0) {
                if space.is_full() {
                    return space;
                }
                let x = alg.basis_elem(q);
                let mut vec = vec![k.zero(); total];
                for s in 0..sigma.p1.len() {
                    place(&mut vec, r2, s, &alg.mul(&x, &sigma.diff[r][s]));
                }
                space.insert(&vec);
            }
        }
    }
    for (s, &u) in tau.p1.iter().enumerate() {
        for (s2, &u2) in sigma.p1.iter().enumerate() {
            for &q in alg.peirce(u, u2) {
                if space.is_full() {
                    return space;
                }
                let y = alg.basis_elem(q);
                let mut vec = vec![k.zero(); total];
                for r in 0..tau.p0.len() {
                    place(&mut vec, r, s2, &alg.mul(&tau.diff[r][s], &y));
                }
                space.insert(&vec);
            }
        }
    }
    space
}

/// `dim Hom_K(σ, τ[1])` in the homotopy category of projectives.
pub fn hom_shift1_dim<K: Field>(sigma: &TwoTermComplex<K>, tau: &TwoTermComplex<K>) -> usize {
    let space = null_homotopic_span(sigma, tau);
    space.ambient_dim() - space.dim()
}

/// Whether every chain map `σ -> σ[1]` is null-homotopic.
pub fn is_presilting<K: Field>(sigma: &TwoTermComplex<K>) -> bool {
    hom_shift1_dim(sigma, sigma) == 0
}

/// Whether `Hom(σ, X): Hom(P0, X) -> Hom(P1, X)` is surjective.
pub fn d_sigma_membership<K: Field>(sigma: &TwoTermComplex<K>, x: &Rep<K>) -> bool {
    let m = sigma.hom_into(x);
    m.rank() == m.rows()
}

/// Whether `Hom(σ, X)` is bijective.
pub fn x_sigma_membership<K: Field>(sigma: &TwoTermComplex<K>, x: &Rep<K>) -> bool {
    let m = sigma.hom_into(x);
    m.rows() == m.cols() && m.rank() == m.rows()
}

/// Bongartz completion of a presilting complex `σ1`: the cocone `E` of the
/// universal map `σ1^k -> A[1]` gives the silting complex `E ⊕ σ1`, whose
/// degree zero cohomology is returned as a support τ-tilting pair.
pub fn bongartz_complete<K: Field>(sigma1: &TwoTermComplex<K>) -> Result<SiltingPair<K>> {
    if !is_presilting(sigma1) {
        return Err(Error::NotPresilting);
    }
    let alg = sigma1.alg();
    let k = alg.field();
    let n = alg.num_vertices();
    let stalk = TwoTermComplex::regular(alg);
    let mut space = null_homotopic_span(sigma1, &stalk);
    // complement basis of the null-homotopic maps inside Hom(P1, A)
    let mut hs: Vec<Vec<Vec<Elem<K>>>> = Vec::new();
    let mut off = 0;
    let total = space.ambient_dim();
    for v in 0..n {
        for (s, &u) in sigma1.p1.iter().enumerate() {
            for (j, &q) in alg.peirce(v, u).iter().enumerate() {
                let mut e = vec![k.zero(); total];
                e[off + j] = k.one();
                if space.insert(&e) {
                    let mut h = vec![vec![alg.zero(); sigma1.p1.len()]; n];
                    h[v][s] = alg.basis_elem(q);
                    hs.push(h);
                }
            }
            off += alg.peirce(v, u).len();
        }
    }
    let copies = hs.len();
    let m1 = sigma1.p1.len();
    let m0 = sigma1.p0.len();
    let mut p1 = Vec::new();
    for _ in 0..copies {
        p1.extend(&sigma1.p1);
    }
    let mut p0: Vec<usize> = (0..n).collect();
    for _ in 0..copies {
        p0.extend(&sigma1.p0);
    }
    let mut diff = vec![vec![alg.zero(); p1.len()]; p0.len()];
    for (j, h) in hs.iter().enumerate() {
        for v in 0..n {
            for s in 0..m1 {
                diff[v][j * m1 + s] = h[v][s].clone();
            }
        }
        for r in 0..m0 {
            for s in 0..m1 {
                diff[n + j * m0 + r][j * m1 + s] = sigma1.diff[r][s].clone();
            }
        }
    }
    let e = TwoTermComplex::new(alg, p1, p0, diff)?.prune();
    let t = Rep::sum_of(alg, &[e.cokernel(), sigma1.cokernel()]);
    let support: Vec<usize> = (0..n).filter(|&v| t.dims()[v] == 0).collect();
    let pair = SiltingPair::new_basic(&t, support)?;
    let report = pair.validate();
    if !report.ok() {
        return Err(Error::VerificationFailed(format!(
            "Bongartz completion is not support τ-tilting: {}",
            report.failures.join("; ")
        )));
    }
    Ok(pair)
}

/// Column vector `e_v` in the regular module, used by callers building maps
/// out of `A`.
pub fn regular_unit<K: Field>(alg: &Algebra<K>, v: usize) -> Matrix<K> {
    let k = alg.field();
    let d: usize = (0..alg.num_vertices()).map(|u| alg.peirce(u, v).len()).sum();
    let mut m = Matrix::zeros(k, d, 1);
    m.set(unit_coordinate(alg, v), 0, k.one());
    m
}
