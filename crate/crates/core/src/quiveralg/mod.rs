//! Bound quiver algebras given by generators and relations.

mod algebra;
mod quiver;

use std::sync::Arc;

pub use algebra::{AlgebraCaps, BasedAlgebra, Elem, DEFAULT_SEED};
pub use quiver::{Arrow, Path, PathExpr, Quiver};

use crate::error::Result;
use crate::exactalg::Field;

/// Shared handle to an algebra; modules and complexes keep one of these.
pub type Algebra<K> = Arc<BasedAlgebra<K>>;

pub fn build_based_algebra<K: Field>(
    field: &K,
    quiver: Quiver,
    relations: Vec<PathExpr>,
    caps: AlgebraCaps,
) -> Result<Algebra<K>> {
    BasedAlgebra::build(field, quiver, relations, caps).map(Arc::new)
}

pub fn multiply<K: Field>(alg: &BasedAlgebra<K>, x: &[K::Elem], y: &[K::Elem]) -> Elem<K> {
    alg.mul(x, y)
}

/// Convenience constructor from string labels and `*`-joined relation words
/// with unit coefficients, e.g. `&["a*b", "b*a"]`.
pub fn algebra_from_words<K: Field>(
    field: &K,
    vertices: &[&str],
    arrows: &[(&str, &str, &str)],
    relations: &[&[(i64, &str)]],
) -> Result<Algebra<K>> {
    let quiver = Quiver::new(
        vertices.iter().map(|s| s.to_string()).collect(),
        arrows
            .iter()
            .map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string()))
            .collect(),
    )?;
    let mut rels = Vec::new();
    for r in relations {
        let words: Vec<(i64, Vec<String>)> = r
            .iter()
            .map(|(c, w)| (*c, w.split('*').map(|s| s.trim().to_string()).collect()))
            .collect();
        rels.push(PathExpr::from_words(&quiver, &words)?);
    }
    build_based_algebra(field, quiver, rels, AlgebraCaps::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::exactalg::{PrimeField, Rationals};

    fn linear_a2() -> Algebra<Rationals> {
        algebra_from_words(&Rationals, &["1", "2"], &[("a", "1", "2")], &[]).unwrap()
    }

    #[test]
    fn linear_a2_basis() {
        let a = linear_a2();
        assert_eq!(a.dim(), 3);
        let names: Vec<String> = a.basis().iter().map(|p| a.quiver().format_path(p)).collect();
        assert_eq!(names, vec!["e_1", "e_2", "a"]);
        assert_eq!(a.nilpotency_degree(), 2);
    }

    #[test]
    fn dual_numbers() {
        let a = algebra_from_words(&Rationals, &["1"], &[("x", "1", "1")], &[&[(1, "x*x")]]).unwrap();
        assert_eq!(a.dim(), 2);
        let x = a.arrow_elem(0);
        assert!(a.is_zero(&a.mul(&x, &x)));
    }

    #[test]
    fn preprojective_a2() {
        let a = algebra_from_words(
            &Rationals,
            &["1", "2"],
            &[("a", "1", "2"), ("b", "2", "1")],
            &[&[(1, "a*b")], &[(1, "b*a")]],
        )
        .unwrap();
        assert_eq!(a.dim(), 4);
        assert!(a.is_zero(&a.mul(&a.arrow_elem(0), &a.arrow_elem(1))));
        assert!(a.check_associative_unital());
    }

    #[test]
    fn free_loop_is_not_admissible() {
        let r = algebra_from_words(&Rationals, &["1"], &[("x", "1", "1")], &[]);
        assert!(matches!(r, Err(Error::NonAdmissible(_))));
    }

    #[test]
    fn idempotent_bookkeeping() {
        let a = linear_a2();
        let ar = a.arrow_elem(0);
        assert_eq!(a.mul(&a.idempotent(0), &ar), ar);
        assert!(a.is_zero(&a.mul(&ar, &a.idempotent(0))));
    }

    #[test]
    fn two_loop_algebra_has_dimension_nine() {
        let a = algebra_from_words(
            &PrimeField::new(101).unwrap(),
            &["1", "2", "3"],
            &[("alpha", "1", "1"), ("gamma", "1", "2"), ("delta", "3", "2"), ("beta", "3", "3")],
            &[
                &[(1, "alpha*alpha")],
                &[(1, "alpha*gamma")],
                &[(1, "beta*beta*beta")],
                &[(1, "beta*beta*delta")],
            ],
        )
        .unwrap();
        assert_eq!(a.dim(), 9);
        assert!(a.check_associative_unital());
    }

    #[test]
    fn non_monomial_relation_and_opposite() {
        // commutative square
        let a = algebra_from_words(
            &Rationals,
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
            &[&[(1, "a*b"), (-1, "c*d")]],
        )
        .unwrap();
        assert_eq!(a.dim(), 9);
        assert!(a.check_associative_unital());
        let op = a.opposite();
        assert_eq!(op.dim(), 9);
        assert!(op.check_associative_unital());
    }
}
