//! Exact scalars and dense linear algebra.

pub mod field;
pub mod matrix;
pub mod poly;

pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{EchelonSpace, Matrix, Rref};
pub use poly::{minimal_polynomial, minimal_polynomial_and_factor, Poly};
