//! Univariate polynomials, minimal polynomials of matrices, and factorisation
//! into irreducibles (Berlekamp over `F_p`, Zassenhaus over `Q`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Field, PrimeField, Rationals};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Degrees above this are refused by the factoriser.
pub const FACTOR_DEGREE_CAP: usize = 256;

/// Polynomial with coefficients listed from the constant term upwards; never
/// carries trailing zeros.
#[derive(Clone, PartialEq)]
pub struct Poly<K: Field> {
    field: K,
    coeffs: Vec<K::Elem>,
}

impl<K: Field> std::fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

impl<K: Field> Poly<K> {
    pub fn new(field: &K, mut coeffs: Vec<K::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_i64(field: &K, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &K) -> Self {
        Self::new(field, vec![])
    }

    pub fn one(field: &K) -> Self {
        Self::new(field, vec![field.one()])
    }

    pub fn constant(field: &K, c: K::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `x - c`
    pub fn linear(field: &K, c: &K::Elem) -> Self {
        Self::new(field, vec![field.neg(c), field.one()])
    }

    pub fn monomial(field: &K, deg: usize) -> Self {
        let mut c = vec![field.zero(); deg + 1];
        c[deg] = field.one();
        Self::new(field, c)
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn coeffs(&self) -> &[K::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> K::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeff(&self, i: usize) -> K::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.lead()).expect("nonzero lead");
        self.scale(&inv)
    }

    pub fn scale(&self, s: &K::Elem) -> Self {
        let k = &self.field;
        Self::new(k, self.coeffs.iter().map(|c| k.mul(c, s)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(k, (0..n).map(|i| k.add(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(k, (0..n).map(|i| k.sub(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(k);
        }
        let mut out = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                k.add_mul_assign(&mut out[i + j], a, b);
            }
        }
        Self::new(k, out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let k = &self.field;
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.deg();
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(k), self.clone());
        }
        let inv = k.inv(&d.lead()).expect("nonzero lead");
        let mut r = self.coeffs.clone();
        let mut q = vec![k.zero(); self.coeffs.len() - dd];
        for i in (0..q.len()).rev() {
            let c = k.mul(&r[i + dd], &inv);
            if k.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                k.sub_mul_assign(&mut r[i + j], &c, dc);
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(k, q), Self::new(k, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*a + t*b = g = gcd(a, b)` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let k = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(k), Self::zero(k));
        let (mut t0, mut t1) = (Self::zero(k), Self::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = k.inv(&r0.lead()).expect("nonzero lead");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        let k = &self.field;
        Self::new(
            k,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| k.mul(c, &k.from_i64(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &K::Elem) -> K::Elem {
        let k = &self.field;
        let mut acc = k.zero();
        for c in self.coeffs.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        acc
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix<K>) -> Matrix<K> {
        let k = &self.field;
        let n = m.rows();
        let mut acc = Matrix::zeros(k, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let v = k.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let k = &self.field;
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let cs = k.format(c);
            let term = match i {
                0 => cs,
                _ => {
                    let mono = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                    if k.is_one(c) {
                        mono
                    } else {
                        format!("{cs}*{mono}")
                    }
                }
            };
            parts.push(term);
        }
        parts.join(" + ")
    }

    /// Factorisation into monic irreducibles with multiplicities (the
    /// leading coefficient is dropped).
    pub fn factor(&self) -> Result<Vec<(Poly<K>, usize)>> {
        if self.is_zero() {
            return Err(Error::Factorisation("cannot factor the zero polynomial".into()));
        }
        if self.deg() > FACTOR_DEGREE_CAP {
            return Err(Error::DegreeCapExceeded {
                degree: self.deg(),
                cap: FACTOR_DEGREE_CAP,
            });
        }
        let mut out: Vec<(Poly<K>, usize)> = Vec::new();
        for (part, mult) in squarefree_decomposition(&self.monic()) {
            for irr in self.field.factor_squarefree(&part)? {
                match out.iter_mut().find(|(g, _)| *g == irr) {
                    Some(entry) => entry.1 += mult,
                    None => out.push((irr, mult)),
                }
            }
        }
        out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then(a.1.cmp(&b.1)));
        Ok(out)
    }
}

/// Squarefree decomposition `f = prod g_i^{m_i}` with the `g_i` squarefree
/// and pairwise coprime; handles `p`-th powers in characteristic `p`.
pub fn squarefree_decomposition<K: Field>(f: &Poly<K>) -> Vec<(Poly<K>, usize)> {
    let k = f.field().clone();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let fp = f.derivative();
    if fp.is_zero() {
        // f(x) = g(x^p) = g(x)^p over a prime field
        let p = k.characteristic() as usize;
        let root = Poly::new(&k, f.coeffs().iter().step_by(p).cloned().collect());
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&fp);
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.deg() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if c.deg() > 0 {
        let p = k.characteristic() as usize;
        debug_assert!(p > 0, "leftover content only occurs in positive characteristic");
        let root = Poly::new(&k, c.coeffs().iter().step_by(p).cloned().collect());
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Minimal polynomial of the block-diagonal operator with the given square
/// blocks, found as the first linear dependency among its powers.
pub fn minimal_polynomial<K: Field>(field: &K, blocks: &[Matrix<K>]) -> Poly<K> {
    let total: usize = blocks.iter().map(|b| b.rows() * b.cols()).sum();
    if total == 0 {
        return Poly::one(field);
    }
    let flatten = |bs: &[Matrix<K>]| -> Vec<K::Elem> { bs.iter().flat_map(|b| b.data().iter().cloned()).collect() };
    let max_deg = blocks.iter().map(|b| b.rows()).sum::<usize>();
    let mut rows: Vec<(usize, Vec<K::Elem>, Vec<K::Elem>)> = Vec::new();
    let mut cur: Vec<Matrix<K>> = blocks.iter().map(|b| Matrix::identity(field, b.rows())).collect();
    for deg in 0..=max_deg {
        let mut v = flatten(&cur);
        let mut combo = vec![field.zero(); deg + 1];
        combo[deg] = field.one();
        for (p, row, rc) in &rows {
            let f = v[*p].clone();
            if field.is_zero(&f) {
                continue;
            }
            for (a, b) in v.iter_mut().zip(row) {
                field.sub_mul_assign(a, &f, b);
            }
            for (a, b) in combo.iter_mut().zip(rc) {
                field.sub_mul_assign(a, &f, b);
            }
        }
        match v.iter().position(|e| !field.is_zero(e)) {
            None => return Poly::new(field, combo),
            Some(p) => {
                let inv = field.inv(&v[p]).expect("nonzero pivot");
                let v: Vec<_> = v.iter().map(|e| field.mul(e, &inv)).collect();
                let combo: Vec<_> = combo.iter().map(|e| field.mul(e, &inv)).collect();
                rows.push((p, v, combo));
            }
        }
        cur = cur.iter().zip(blocks).map(|(c, b)| c.mul(b)).collect();
    }
    unreachable!("Cayley-Hamilton bounds the degree of the minimal polynomial")
}

/// Minimal polynomial of a square matrix together with its irreducible factorisation.
pub fn minimal_polynomial_and_factor<K: Field>(m: &Matrix<K>) -> Result<Vec<(Poly<K>, usize)>> {
    assert!(m.is_square(), "minimal polynomial needs a square matrix");
    minimal_polynomial(m.field(), std::slice::from_ref(m)).factor()
}

// ---------------------------------------------------------------------------
// F_p: Berlekamp

pub(crate) fn berlekamp(f: &Poly<PrimeField>) -> Result<Vec<Poly<PrimeField>>> {
    let k = *f.field();
    let f = f.monic();
    let n = f.deg();
    if n <= 1 {
        return Ok(if n == 1 { vec![f] } else { vec![] });
    }
    let p = k.modulus();
    // rows of Q: x^{ip} mod f
    let xp = Poly::monomial(&k, 1).pow_mod(p as u128, &f);
    let mut qm = Matrix::zeros(&k, n, n);
    let mut cur = Poly::one(&k);
    for i in 0..n {
        for j in 0..n {
            qm.set(i, j, cur.coeff(j));
        }
        cur = cur.mul(&xp).rem(&f);
    }
    let shifted = qm.sub(&Matrix::identity(&k, n)).transpose();
    let basis: Vec<Poly<PrimeField>> = shifted
        .kernel_basis()
        .into_iter()
        .map(|v| Poly::new(&k, v))
        .filter(|g| g.deg() > 0)
        .collect();
    let r = basis.len() + 1;
    let mut factors = vec![f.clone()];
    if r == 1 {
        return Ok(factors);
    }
    if p <= 64 {
        'outer: for v in &basis {
            let mut next = Vec::new();
            for h in factors.drain(..) {
                let mut pending = vec![h];
                for s in 0..p {
                    let shifted = v.sub(&Poly::constant(&k, s));
                    let mut split = Vec::new();
                    for h in pending.drain(..) {
                        if h.deg() <= 1 {
                            split.push(h);
                            continue;
                        }
                        let g = h.gcd(&shifted);
                        if g.deg() > 0 && g.deg() < h.deg() {
                            let other = h.div_exact(&g);
                            split.push(g);
                            split.push(other.monic());
                        } else {
                            split.push(h);
                        }
                    }
                    pending = split;
                }
                next.extend(pending);
            }
            factors = next;
            if factors.len() == r {
                break 'outer;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
        let mut guard = 0;
        while factors.len() < r {
            guard += 1;
            if guard > 10_000 {
                return Err(Error::Factorisation("Berlekamp splitting did not converge".into()));
            }
            let mut v = Poly::zero(&k);
            for b in &basis {
                v = v.add(&b.scale(&k.random(&mut rng, 0)));
            }
            let mut next = Vec::new();
            for h in factors.drain(..) {
                if h.deg() <= 1 {
                    next.push(h);
                    continue;
                }
                let w = v.pow_mod(((p - 1) / 2) as u128, &h).sub(&Poly::one(&k));
                let g = h.gcd(&w);
                if g.deg() > 0 && g.deg() < h.deg() {
                    let other = h.div_exact(&g);
                    next.push(g);
                    next.push(other.monic());
                } else {
                    next.push(h);
                }
            }
            factors = next;
        }
    }
    if factors.len() != r {
        return Err(Error::Factorisation(format!(
            "Berlekamp found {} of {} factors",
            factors.len(),
            r
        )));
    }
    Ok(factors.into_iter().map(|g| g.monic()).collect())
}

// ---------------------------------------------------------------------------
// Q: Zassenhaus (mod-p factorisation, Hensel lifting, recombination)

pub(crate) fn factor_squarefree_rational(f: &Poly<Rationals>) -> Result<Vec<Poly<Rationals>>> {
    if f.deg() <= 1 {
        return Ok(if f.deg() == 1 { vec![f.monic()] } else { vec![] });
    }
    let zf = primitive_integer(f);
    let factors = zassenhaus(&zf)?;
    Ok(factors
        .into_iter()
        .map(|g| {
            let q: Vec<BigRational> = g.into_iter().map(BigRational::from_integer).collect();
            Poly::new(&Rationals, q).monic()
        })
        .collect())
}

type ZPoly = Vec<BigInt>;

fn ztrim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Clears denominators and content; leading coefficient made positive.
fn primitive_integer(f: &Poly<Rationals>) -> ZPoly {
    let lcm = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut out: ZPoly = ints.into_iter().map(|c| c / &content).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        out = out.into_iter().map(|c| -c).collect();
    }
    ztrim(out)
}

fn zprimitive(v: ZPoly) -> ZPoly {
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return v;
    }
    let mut out: ZPoly = v.into_iter().map(|c| c / &content).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        out = out.into_iter().map(|c| -c).collect();
    }
    out
}

fn to_fp(f: &[BigInt], k: &PrimeField) -> Poly<PrimeField> {
    let p = BigInt::from(k.modulus());
    Poly::new(
        k,
        f.iter()
            .map(|c| {
                let r = c.mod_floor(&p);
                u64::try_from(r).expect("residue fits")
            })
            .collect(),
    )
}

fn from_fp(f: &Poly<PrimeField>) -> ZPoly {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zsymmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn zdivides(d: &[BigInt], f: &[BigInt]) -> Option<ZPoly> {
    let q = |v: &[BigInt]| Poly::new(&Rationals, v.iter().cloned().map(BigRational::from_integer).collect());
    let (quot, rem) = q(f).divrem(&q(d));
    if !rem.is_zero() || quot.coeffs().iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(quot.coeffs().iter().map(|c| c.to_integer()).collect())
}

/// Lifts `f = g * h (mod p)` with `g` monic to the same identity mod `p^k`.
fn hensel_pair(f: &[BigInt], g0: &Poly<PrimeField>, h0: &Poly<PrimeField>, k: &PrimeField, e: u32) -> (ZPoly, ZPoly) {
    let p = BigInt::from(k.modulus());
    let (one, s, t) = g0.xgcd(h0);
    debug_assert!(one.is_one(), "modular factors must be coprime");
    let mut g = from_fp(g0);
    let mut h = from_fp(h0);
    let mut pm = p.clone();
    for _ in 1..e {
        let err = zsub(f, &zmul(&g, &h));
        let err: ZPoly = err.into_iter().map(|c| c.div_floor(&pm)).collect();
        let err_p = to_fp(&err, k);
        let te = t.mul(&err_p);
        let (q, sigma) = te.divrem(g0);
        let tau = s.mul(&err_p).add(&h0.mul(&q));
        let sigma_z: ZPoly = from_fp(&sigma).into_iter().map(|c| c * &pm).collect();
        let tau_z: ZPoly = from_fp(&tau).into_iter().map(|c| c * &pm).collect();
        pm *= &p;
        g = zmod(&add_z(&g, &sigma_z), &pm);
        h = zmod(&add_z(&h, &tau_z), &pm);
    }
    (g, h)
}

fn add_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

/// Lifts the monic modular factors of `f` (whose product is `f / lc` mod p)
/// to monic factors mod `p^e`.
fn hensel_multi(f: &[BigInt], factors: &[Poly<PrimeField>], k: &PrimeField, e: u32) -> Vec<ZPoly> {
    let pe = BigInt::from(k.modulus()).pow(e);
    if factors.len() == 1 {
        let lc = f.last().cloned().unwrap_or_else(BigInt::one);
        let inv = mod_inverse(&lc, &pe);
        return vec![zmod(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), &pe)];
    }
    let mid = factors.len() / 2;
    let g0 = factors[..mid].iter().fold(Poly::one(k), |acc, x| acc.mul(x));
    let h_monic = factors[mid..].iter().fold(Poly::one(k), |acc, x| acc.mul(x));
    let lc = to_fp(&[f.last().cloned().unwrap_or_else(BigInt::one)], k).coeff(0);
    let h0 = h_monic.scale(&lc);
    let (g, h) = hensel_pair(f, &g0, &h0, k, e);
    let mut out = hensel_multi(&g, &factors[..mid], k, e);
    out.extend(hensel_multi(&h, &factors[mid..], k, e));
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let eg = a.mod_floor(m).extended_gcd(m);
    eg.x.mod_floor(m)
}

const SMALL_PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

fn zassenhaus(f: &[BigInt]) -> Result<Vec<ZPoly>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    let lc = f[n].clone();
    // pick a prime keeping degree and squarefreeness, preferring few factors
    let mut best: Option<(PrimeField, Vec<Poly<PrimeField>>)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES.iter().chain([101u64, 103, 107, 109, 113, 127, 131, 137, 139, 149].iter()) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let k = PrimeField::new(p).expect("prime");
        let fp = to_fp(f, &k);
        if fp.deg() != n || fp.gcd(&fp.derivative()).deg() > 0 {
            continue;
        }
        let facs = berlekamp(&fp)?;
        if facs.len() == 1 {
            return Ok(vec![f.to_vec()]);
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((k, facs));
        }
        tried += 1;
        if tried >= 3 {
            break;
        }
    }
    let Some((k, modular)) = best else {
        return Err(Error::Factorisation("no suitable prime for modular factorisation".into()));
    };
    if modular.len() > 24 {
        return Err(Error::DegreeCapExceeded {
            degree: modular.len(),
            cap: 24,
        });
    }
    // coefficient bound for lc * (any factor): 2 * |lc| * 2^n * ||f||_2
    let p = BigInt::from(k.modulus());
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let bound_sq = BigInt::from(4) * &lc * &lc * (BigInt::one() << (2 * n)) * norm_sq;
    let mut e = 1u32;
    let mut pe = p.clone();
    while &pe * &pe <= bound_sq {
        pe *= &p;
        e += 1;
    }
    let lifted = hensel_multi(f, &modular, &k, e);

    let mut remaining: Vec<ZPoly> = lifted;
    let mut f_cur = f.to_vec();
    let mut result = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = false;
        let lc_cur = f_cur.last().cloned().expect("nonzero");
        for subset in combinations(remaining.len(), size) {
            let prod = subset
                .iter()
                .fold(vec![lc_cur.clone()], |acc, &i| zmod(&zmul(&acc, &remaining[i]), &pe));
            let cand = zprimitive(zsymmetric(&prod, &pe));
            if let Some(q) = zdivides(&cand, &f_cur) {
                result.push(cand);
                f_cur = q;
                let keep: Vec<ZPoly> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, v)| v.clone())
                    .collect();
                remaining = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if f_cur.len() > 1 {
        result.push(zprimitive(f_cur));
    }
    Ok(result)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product<K: Field>(fs: &[(Poly<K>, usize)], field: &K) -> Poly<K> {
        fs.iter().fold(Poly::one(field), |acc, (g, m)| acc.mul(&g.pow(*m)))
    }

    #[test]
    fn nilpotent_jordan_block() {
        let q = Rationals;
        let m = Matrix::from_i64(&q, &[&[0, 1], &[0, 0]]);
        let f = minimal_polynomial_and_factor(&m).unwrap();
        assert_eq!(f, vec![(Poly::from_i64(&q, &[0, 1]), 2)]);
    }

    #[test]
    fn identity_and_diagonal() {
        let q = Rationals;
        let f = minimal_polynomial_and_factor(&Matrix::identity(&q, 3)).unwrap();
        assert_eq!(f, vec![(Poly::from_i64(&q, &[-1, 1]), 1)]);
        let d = Matrix::from_i64(&q, &[&[1, 0], &[0, 2]]);
        let f = minimal_polynomial_and_factor(&d).unwrap();
        assert_eq!(
            f,
            vec![(Poly::from_i64(&q, &[-1, 1]), 1), (Poly::from_i64(&q, &[-2, 1]), 1)]
        );
    }

    #[test]
    fn factors_over_q_with_quadratic() {
        let q = Rationals;
        // (x^2 + 1)(x - 3)^2 (x^2 - 2)
        let f = Poly::from_i64(&q, &[1, 0, 1])
            .mul(&Poly::from_i64(&q, &[-3, 1]).pow(2))
            .mul(&Poly::from_i64(&q, &[-2, 0, 1]));
        let fs = f.factor().unwrap();
        assert_eq!(product(&fs, &q), f.monic());
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&(Poly::from_i64(&q, &[1, 0, 1]), 1)));
        assert!(fs.contains(&(Poly::from_i64(&q, &[-2, 0, 1]), 1)));
        assert!(fs.contains(&(Poly::from_i64(&q, &[-3, 1]), 2)));
    }

    #[test]
    fn swinnerton_dyer_style_irreducible_quartic() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime
        let q = Rationals;
        let f = Poly::from_i64(&q, &[1, 0, -10, 0, 1]);
        let fs = f.factor().unwrap();
        assert_eq!(fs, vec![(f.clone(), 1)]);
    }

    #[test]
    fn factors_over_f2_and_f3() {
        let f2 = PrimeField::new(2).unwrap();
        // x^4 + x = x (x + 1)(x^2 + x + 1)
        let f = Poly::from_i64(&f2, &[0, 1, 0, 0, 1]);
        let fs = f.factor().unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs, &f2), f);

        let f3 = PrimeField::new(3).unwrap();
        // (x^2 + 1)^3 (x + 2)  -- exercises the p-th power branch
        let g = Poly::from_i64(&f3, &[1, 0, 1]).pow(3).mul(&Poly::from_i64(&f3, &[2, 1]));
        let gs = g.factor().unwrap();
        assert_eq!(gs.len(), 2);
        assert!(gs.contains(&(Poly::from_i64(&f3, &[1, 0, 1]), 3)));
        assert_eq!(product(&gs, &f3), g);
    }

    #[test]
    fn large_prime_uses_random_splitting() {
        let k = PrimeField::new(PrimeField::LARGE).unwrap();
        let f = Poly::from_i64(&k, &[-1, 1])
            .mul(&Poly::from_i64(&k, &[-2, 1]))
            .mul(&Poly::from_i64(&k, &[-5, 1]));
        let fs = f.factor().unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs, &k), f);
    }

    #[test]
    fn minimal_polynomial_of_blocks_is_lcm() {
        let q = Rationals;
        let a = Matrix::from_i64(&q, &[&[2]]);
        let b = Matrix::from_i64(&q, &[&[3, 1], &[0, 3]]);
        let mp = minimal_polynomial(&q, &[a, b]);
        let expect = Poly::from_i64(&q, &[-2, 1]).mul(&Poly::from_i64(&q, &[-3, 1]).pow(2));
        assert_eq!(mp, expect);
    }
}
