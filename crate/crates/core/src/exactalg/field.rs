//! Scalar fields: prime fields `F_p` (p < 2^32) and the rationals.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::poly::{self, Poly};
use crate::error::{Error, Result};

/// Runtime description of a ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Prime { p: u64 },
    Rationals,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        PrimeField::new(p).map(|f| f.spec())
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime { p } => *p,
            FieldSpec::Rationals => 0,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "F {p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

/// Arithmetic of a field whose elements are kept in canonical form, so that
/// structural equality of elements is field equality.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// A random element. Over `F_p` this is uniform; over `Q` it is an integer
    /// in `[-spread, spread]`.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R, spread: u64) -> Self::Elem;

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Option<Self::Elem>;

    /// Splits a monic squarefree polynomial into monic irreducibles.
    fn factor_squarefree(&self, f: &Poly<Self>) -> Result<Vec<Poly<Self>>>;

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u64> {
        match self.spec() {
            FieldSpec::Prime { p } => Some(p),
            FieldSpec::Rationals => None,
        }
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `a -= b * c`
    fn sub_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *a = self.sub(a, &self.mul(b, c));
    }

    /// `a += b * c`
    fn add_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *a = self.add(a, &self.mul(b, c));
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Enumerates all elements of a finite field in increasing order.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let q = self.order()?;
        Some((0..q as i64).map(|v| self.from_i64(v)).collect())
    }
}

/// The prime field `F_p` with `p < 2^32`, elements stored as residues `0 <= e < p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// The Mersenne prime 2^31 - 1, used as the fast large-characteristic field.
    pub const LARGE: u64 = 2_147_483_647;

    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= (1 << 32) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^32")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }

    #[inline]
    fn zero(&self) -> u64 {
        0
    }

    #[inline]
    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on i64
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u64)
    }

    #[inline]
    fn sub_mul_assign(&self, a: &mut u64, b: &u64, c: &u64) {
        let prod = (b * c) % self.p;
        *a = if *a >= prod { *a - prod } else { *a + self.p - prod };
    }

    #[inline]
    fn add_mul_assign(&self, a: &mut u64, b: &u64, c: &u64) {
        *a = (*a + b * c) % self.p;
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R, _spread: u64) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Option<u64> {
        let v: i64 = s.trim().parse().ok()?;
        Some(self.from_i64(v))
    }

    fn factor_squarefree(&self, f: &Poly<Self>) -> Result<Vec<Poly<Self>>> {
        poly::berlekamp(f)
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn sub_mul_assign(&self, a: &mut BigRational, b: &BigRational, c: &BigRational) {
        if b.is_zero() || c.is_zero() {
            return;
        }
        *a -= b * c;
    }

    fn add_mul_assign(&self, a: &mut BigRational, b: &BigRational, c: &BigRational) {
        if b.is_zero() || c.is_zero() {
            return;
        }
        *a += b * c;
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R, spread: u64) -> BigRational {
        let s = spread.max(1) as i64;
        self.from_i64(rng.gen_range(-s..=s))
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse(&self, s: &str) -> Option<BigRational> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().ok()?;
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    None
                } else {
                    Some(BigRational::new(n, d))
                }
            }
            None => Some(BigRational::from_integer(s.parse().ok()?)),
        }
    }

    fn factor_squarefree(&self, f: &Poly<Self>) -> Result<Vec<Poly<Self>>> {
        poly::factor_squarefree_rational(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse_and_canonical_form() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7u64 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(PrimeField::LARGE).is_ok());
    }

    #[test]
    fn rationals_are_reduced() {
        let q = Rationals;
        let a = q.parse("2/4").unwrap();
        assert_eq!(q.format(&a), "1/2");
        assert_eq!(q.parse("-3").unwrap(), q.from_i64(-3));
        assert!(q.parse("1/0").is_none());
    }
}
