//! Krull-Schmidt decomposition by Fitting splitting of endomorphisms, local
//! endomorphism rings of indecomposables, and isomorphism tests.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::{minimal_polynomial, Field, Matrix, Poly};

use super::hom::hom_basis;
use super::rep::{Rep, RepMap};

const RANDOM_TRIES: usize = 12;
const EXHAUSTIVE_LIMIT: u64 = 50_000;

pub(crate) fn rng_for<K: Field>(m: &Rep<K>, salt: u64) -> ChaCha8Rng {
    let mut h = m.alg().seed() ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for &d in m.dims() {
        h = h.wrapping_mul(31).wrapping_add(d as u64);
    }
    ChaCha8Rng::seed_from_u64(h)
}

/// An indecomposable summand of a module with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand<K: Field> {
    pub rep: Rep<K>,
    pub incl: RepMap<K>,
    pub proj: RepMap<K>,
}

/// An indecomposable module with a basis of its endomorphism ring and of
/// the radical of that ring.
#[derive(Clone, Debug)]
pub struct Indec<K: Field> {
    pub rep: Rep<K>,
    pub end: Vec<RepMap<K>>,
    pub rad: Vec<RepMap<K>>,
}

enum Outcome<K: Field> {
    Split(Vec<Matrix<K>>, Vec<Matrix<K>>),
    Local(Vec<RepMap<K>>),
}

fn poly_of_map<K: Field>(f: &RepMap<K>, g: &Poly<K>) -> Vec<Matrix<K>> {
    f.comps().iter().map(|c| g.eval_matrix(c)).collect()
}

enum Spectrum<K: Field> {
    Split(Vec<Matrix<K>>, Vec<Matrix<K>>),
    Eigen(K::Elem),
    Irreducible,
}

/// Splits `M` along the generalised eigenspaces of `f` when its minimal
/// polynomial has two coprime factors.
fn spectrum<K: Field>(f: &RepMap<K>) -> Result<Spectrum<K>> {
    let k = f.source.field();
    let factors = minimal_polynomial(k, f.comps()).factor()?;
    if factors.len() < 2 {
        let (g, _) = &factors[0];
        if g.deg() == 1 {
            return Ok(Spectrum::Eigen(k.neg(&g.coeff(0))));
        }
        return Ok(Spectrum::Irreducible);
    }
    let (g, e) = &factors[0];
    let h1 = g.pow(*e);
    let mut rest = Poly::one(k);
    for (g2, e2) in &factors[1..] {
        rest = rest.mul(&g2.pow(*e2));
    }
    let a = poly_of_map(f, &h1).iter().map(|x| x.kernel_matrix()).collect();
    let b = poly_of_map(f, &rest).iter().map(|x| x.kernel_matrix()).collect();
    Ok(Spectrum::Split(a, b))
}

/// Radical basis if `{b_i - λ_i}` spans a nilpotent subalgebra of
/// codimension one, which makes the endomorphism ring local and split.
fn local_radical<K: Field>(m: &Rep<K>, end: &[RepMap<K>], lambdas: &[K::Elem]) -> Option<Vec<RepMap<K>>> {
    let k = m.field();
    let id = RepMap::identity(m);
    let mut ideal: Vec<RepMap<K>> = Vec::new();
    let flat_len = id.flatten().len();
    let mut space = crate::exactalg::EchelonSpace::new(k, flat_len);
    for (b, l) in end.iter().zip(lambdas) {
        let x = b.sub(&id.scale(l));
        if space.insert(&x.flatten()) {
            ideal.push(x);
        }
    }
    if ideal.len() + 1 != end.len() {
        return None;
    }
    // powers I^j must shrink to zero, staying inside I
    let mut power = ideal.clone();
    let mut prev_dim = ideal.len();
    loop {
        let mut next_space = crate::exactalg::EchelonSpace::new(k, flat_len);
        let mut next = Vec::new();
        for x in &power {
            for y in &ideal {
                let z = x.after(y);
                let fz = z.flatten();
                if !space.contains(&fz) {
                    return None;
                }
                if next_space.insert(&fz) {
                    next.push(z);
                }
            }
        }
        if next.is_empty() {
            return Some(ideal);
        }
        if next.len() >= prev_dim {
            return None;
        }
        prev_dim = next.len();
        power = next;
    }
}

fn analyse<K: Field>(m: &Rep<K>, end: &[RepMap<K>]) -> Result<Outcome<K>> {
    let k = m.field();
    let mut lambdas = Vec::with_capacity(end.len());
    let mut all_linear = true;
    for f in end {
        match spectrum(f)? {
            Spectrum::Split(a, b) => return Ok(Outcome::Split(a, b)),
            Spectrum::Eigen(l) => lambdas.push(l),
            Spectrum::Irreducible => {
                all_linear = false;
                lambdas.push(k.zero());
            }
        }
    }
    if all_linear {
        if let Some(rad) = local_radical(m, end, &lambdas) {
            return Ok(Outcome::Local(rad));
        }
    }
    let mut rng = rng_for(m, 0xdec0);
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<K::Elem> = end.iter().map(|_| k.random(&mut rng, 1000)).collect();
        let f = RepMap::combination(m, m, end, &coeffs);
        if let Spectrum::Split(a, b) = spectrum(&f)? {
            return Ok(Outcome::Split(a, b));
        }
    }
    if let Some(q) = k.order() {
        let n = end.len() as u32;
        if q.checked_pow(n).is_some_and(|t| t <= EXHAUSTIVE_LIMIT) {
            let elems = k.elements().expect("finite");
            let total = q.pow(n);
            for idx in 1..total {
                let mut t = idx;
                let coeffs: Vec<K::Elem> = (0..n)
                    .map(|_| {
                        let c = elems[(t % q) as usize].clone();
                        t /= q;
                        c
                    })
                    .collect();
                let f = RepMap::combination(m, m, end, &coeffs);
                if let Spectrum::Split(a, b) = spectrum(&f)? {
                    return Ok(Outcome::Split(a, b));
                }
            }
        }
    }
    Err(Error::NotSplit(format!(
        "endomorphism ring of a module with dimension vector {:?} is not split over {}; try another field",
        m.dims(),
        k.spec()
    )))
}

/// Local data of `M` if it is indecomposable, `None` if it splits.
pub fn local_data<K: Field>(m: &Rep<K>) -> Result<Option<Indec<K>>> {
    if m.is_zero() {
        return Ok(None);
    }
    let end = hom_basis(m, m);
    match analyse(m, &end)? {
        Outcome::Split(..) => Ok(None),
        Outcome::Local(rad) => Ok(Some(Indec {
            rep: m.clone(),
            end,
            rad,
        })),
    }
}

pub fn is_indecomposable<K: Field>(m: &Rep<K>) -> Result<bool> {
    Ok(local_data(m)?.is_some())
}

/// Decomposes `M` into indecomposables with split inclusions and projections.
pub fn decompose_with_maps<K: Field>(m: &Rep<K>) -> Result<Vec<Summand<K>>> {
    if m.is_zero() {
        return Ok(vec![]);
    }
    let end = hom_basis(m, m);
    match analyse(m, &end)? {
        Outcome::Local(_) => Ok(vec![Summand {
            rep: m.clone(),
            incl: RepMap::identity(m),
            proj: RepMap::identity(m),
        }]),
        Outcome::Split(a, b) => {
            let k = m.field();
            let mut pa = Vec::new();
            let mut pb = Vec::new();
            for v in 0..m.dims().len() {
                let d = m.dims()[v];
                let full = Matrix::hstack(k, d, &[&a[v], &b[v]]);
                let inv = full.inverse().expect("generalised eigenspaces are complementary");
                pa.push(inv.block(0, 0, a[v].cols(), d));
                pb.push(inv.block(a[v].cols(), 0, b[v].cols(), d));
            }
            let mut out = Vec::new();
            for (basis, projs) in [(a, pa), (b, pb)] {
                let (sub, incl) = m.subrep(basis);
                let proj = RepMap::new_unchecked(m, &sub, projs);
                for s in decompose_with_maps(&sub)? {
                    out.push(Summand {
                        rep: s.rep.clone(),
                        incl: incl.after(&s.incl),
                        proj: s.proj.after(&proj),
                    });
                }
            }
            Ok(out)
        }
    }
}

pub fn decompose<K: Field>(m: &Rep<K>) -> Result<Vec<Rep<K>>> {
    Ok(decompose_with_maps(m)?.into_iter().map(|s| s.rep).collect())
}

/// Isomorphism test for indecomposables: `X ≅ Y` iff some composite
/// `g ∘ f` of basis maps is invertible, seen at any vertex where `X ≠ 0`.
pub fn is_iso_indec<K: Field>(x: &Rep<K>, y: &Rep<K>) -> bool {
    if x.dims() != y.dims() {
        return false;
    }
    if x.is_zero() {
        return true;
    }
    let v = x.dims().iter().position(|&d| d > 0).expect("nonzero");
    let fs = hom_basis(x, y);
    if fs.is_empty() {
        return false;
    }
    let gs = hom_basis(y, x);
    fs.iter()
        .any(|f| gs.iter().any(|g| g.comp(v).mul(f.comp(v)).is_invertible()))
}

/// Groups indecomposables into isomorphism classes with multiplicities.
pub fn group_isoclasses<K: Field>(list: Vec<Rep<K>>) -> Vec<(Rep<K>, usize)> {
    let mut out: Vec<(Rep<K>, usize)> = Vec::new();
    for r in list {
        match out.iter_mut().find(|(s, _)| is_iso_indec(s, &r)) {
            Some(e) => e.1 += 1,
            None => out.push((r, 1)),
        }
    }
    out
}

/// Isomorphism classes of indecomposable summands with multiplicities.
pub fn decompose_grouped<K: Field>(m: &Rep<K>) -> Result<Vec<(Rep<K>, usize)>> {
    Ok(group_isoclasses(decompose(m)?))
}

/// Sum of one copy of each indecomposable summand.
pub fn basic_part<K: Field>(m: &Rep<K>) -> Result<Rep<K>> {
    let parts: Vec<Rep<K>> = decompose_grouped(m)?.into_iter().map(|(r, _)| r).collect();
    Ok(Rep::sum_of(m.alg(), &parts))
}

pub fn is_isomorphic<K: Field>(m: &Rep<K>, n: &Rep<K>) -> Result<bool> {
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let hs = hom_basis(m, n);
    if hs.is_empty() {
        return Ok(false);
    }
    let k = m.field();
    let mut rng = rng_for(m, 0x1507);
    for _ in 0..8 {
        let coeffs: Vec<K::Elem> = hs.iter().map(|_| k.random(&mut rng, 1000)).collect();
        if RepMap::combination(m, n, &hs, &coeffs).is_iso() {
            return Ok(true);
        }
    }
    let a = decompose_grouped(m)?;
    let b = decompose_grouped(n)?;
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for (x, mx) in &a {
        let hit = b
            .iter()
            .enumerate()
            .position(|(j, (y, my))| !used[j] && my == mx && is_iso_indec(x, y));
        match hit {
            Some(j) => used[j] = true,
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// Whether `End(X)` is a division ring that is one dimensional.
pub fn is_brick<K: Field>(x: &Rep<K>) -> Result<bool> {
    if x.is_zero() {
        return Ok(false);
    }
    let end = hom_basis(x, x);
    if end.len() == 1 {
        return Ok(true);
    }
    match analyse(x, &end)? {
        Outcome::Split(..) => Ok(false),
        Outcome::Local(rad) => Ok(rad.is_empty()),
    }
}
