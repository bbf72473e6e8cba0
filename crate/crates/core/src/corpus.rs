//! Named algebras used as test cases and examples.
//!
//! Paths compose left to right: `a*b` means "first `a`, then `b`". A relation
//! written right to left as `βα` in the usual notation is entered as `alpha*beta`.

use crate::error::{Error, Result};
use crate::exactalg::FieldSpec;
use crate::format::{AlgebraFile, Term};

pub const NAMES: &[&str] = &[
    "linear_A",
    "dual_numbers",
    "kronecker",
    "preprojective_A",
    "wild_R",
    "two_loop_gdp",
];

fn term(c: i64, word: &[&str]) -> Term {
    (c, word.iter().map(|s| s.to_string()).collect())
}

fn file(
    comments: Vec<String>,
    vertices: Vec<String>,
    arrows: Vec<(String, String, String)>,
    relations: Vec<Vec<Term>>,
) -> AlgebraFile {
    AlgebraFile {
        comments,
        field: FieldSpec::Rationals,
        vertices,
        arrows,
        relations,
        caps: vec![],
    }
}

fn vs(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn arrow(name: &str, s: usize, t: usize) -> (String, String, String) {
    (name.to_string(), s.to_string(), t.to_string())
}

/// Path algebra of the linearly oriented `A_n` quiver `1 -> 2 -> ... -> n`.
pub fn linear_a(n: usize) -> Result<AlgebraFile> {
    if n == 0 {
        return Err(Error::Semantic("linear_A needs n >= 1".into()));
    }
    let arrows = (1..n).map(|i| arrow(&format!("a{i}"), i, i + 1)).collect();
    Ok(file(
        vec![format!("linear_A n={n}: path algebra of 1 -> ... -> {n}")],
        vs(n),
        arrows,
        vec![],
    ))
}

/// `K[x]/(x^2)`.
pub fn dual_numbers() -> AlgebraFile {
    file(
        vec!["dual_numbers: one loop x with x^2 = 0".into()],
        vs(1),
        vec![arrow("x", 1, 1)],
        vec![vec![term(1, &["x", "x"])]],
    )
}

/// Two vertices with two parallel arrows.
pub fn kronecker() -> AlgebraFile {
    file(
        vec!["kronecker: two parallel arrows a, b from 1 to 2".into()],
        vs(2),
        vec![arrow("a", 1, 2), arrow("b", 1, 2)],
        vec![],
    )
}

/// Preprojective algebra of type `A_n`: arrows `a_i: i -> i+1`, `b_i: i+1 -> i`
/// and the mesh relations at every vertex.
pub fn preprojective_a(n: usize) -> Result<AlgebraFile> {
    if n < 2 {
        return Err(Error::Semantic("preprojective_A needs n >= 2".into()));
    }
    let mut arrows = Vec::new();
    for i in 1..n {
        arrows.push(arrow(&format!("a{i}"), i, i + 1));
        arrows.push(arrow(&format!("b{i}"), i + 1, i));
    }
    let mut rels = Vec::new();
    let (a, b) = (|i: usize| format!("a{i}"), |i: usize| format!("b{i}"));
    rels.push(vec![term(1, &[&a(1), &b(1)])]);
    for i in 2..n {
        rels.push(vec![term(1, &[&a(i), &b(i)]), term(-1, &[&b(i - 1), &a(i - 1)])]);
    }
    rels.push(vec![term(1, &[&b(n - 1), &a(n - 1)])]);
    Ok(file(
        vec![format!(
            "preprojective_A n={n}: a_i: i -> i+1, b_i: i+1 -> i, mesh relations a_i*b_i = b_(i-1)*a_(i-1)"
        )],
        vs(n),
        arrows,
        rels,
    ))
}

/// The quiver `1 -> 2 -> ... -> n-2` with an arrow `n-2 -> n` and a detour
/// `n-2 -alpha-> n-1 -beta-> n`, modulo the composite of `alpha` and `beta`.
pub fn wild_r(n: usize) -> Result<AlgebraFile> {
    if n < 3 {
        return Err(Error::Semantic("wild_R needs n >= 3".into()));
    }
    let mut arrows: Vec<_> = (1..n - 2).map(|i| arrow(&format!("c{i}"), i, i + 1)).collect();
    arrows.push(arrow("d", n - 2, n));
    arrows.push(arrow("alpha", n - 2, n - 1));
    arrows.push(arrow("beta", n - 1, n));
    Ok(file(
        vec![
            format!("wild_R n={n}: chain 1 -> ... -> {}, arrow d: {} -> {n}", n - 2, n - 2),
            format!("alpha: {} -> {}, beta: {} -> {n}", n - 2, n - 1, n - 1),
            "relation 'beta alpha' (right to left) written as alpha*beta".into(),
        ],
        vs(n),
        arrows,
        vec![vec![term(1, &["alpha", "beta"])]],
    ))
}

/// Loop `alpha` at 1, `gamma: 1 -> 2`, `delta: 3 -> 2`, loop `beta` at 3, with
/// `alpha^2 = gamma alpha = beta^3 = delta beta^2 = 0` (right to left).
pub fn two_loop_gdp() -> AlgebraFile {
    file(
        vec![
            "two_loop_gdp: loop alpha at 1, gamma: 1 -> 2, delta: 3 -> 2, loop beta at 3".into(),
            "relations alpha^2, gamma alpha, beta^3, delta beta^2 (right to left)".into(),
            "written as alpha*alpha, alpha*gamma, beta*beta*beta, beta*beta*delta".into(),
        ],
        vs(3),
        vec![
            arrow("alpha", 1, 1),
            arrow("gamma", 1, 2),
            arrow("delta", 3, 2),
            arrow("beta", 3, 3),
        ],
        vec![
            vec![term(1, &["alpha", "alpha"])],
            vec![term(1, &["alpha", "gamma"])],
            vec![term(1, &["beta", "beta", "beta"])],
            vec![term(1, &["beta", "beta", "delta"])],
        ],
    )
}

/// Looks up a corpus entry; `n` is the size parameter where one applies.
pub fn load_corpus(name: &str, n: Option<usize>) -> Result<AlgebraFile> {
    match name {
        "linear_A" => linear_a(n.unwrap_or(2)),
        "dual_numbers" => Ok(dual_numbers()),
        "kronecker" => Ok(kronecker()),
        "preprojective_A" => preprojective_a(n.unwrap_or(2)),
        "wild_R" => wild_r(n.unwrap_or(9)),
        "two_loop_gdp" => Ok(two_loop_gdp()),
        other => Err(Error::UnknownCorpusEntry(other.to_string())),
    }
}

/// Parses `name` or `name:n` (for example `preprojective_A:3`).
pub fn load_corpus_spec(spec: &str) -> Result<AlgebraFile> {
    match spec.split_once(':') {
        Some((name, n)) => {
            let n: usize = n
                .parse()
                .map_err(|_| Error::Semantic(format!("bad corpus parameter in '{spec}'")))?;
            load_corpus(name, Some(n))
        }
        None => load_corpus(spec, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{PrimeField, Rationals};

    #[test]
    fn every_entry_builds_and_round_trips() {
        for name in NAMES {
            let f = load_corpus(name, None).unwrap();
            assert_eq!(AlgebraFile::parse(&f.print()).unwrap(), f, "{name}");
            let alg = f.build(&PrimeField::new(101).unwrap()).unwrap();
            assert!(alg.check_associative_unital(), "{name}");
        }
    }

    #[test]
    fn dimensions() {
        let dim = |f: AlgebraFile| f.build(&Rationals).unwrap().dim();
        assert_eq!(dim(kronecker()), 4);
        assert_eq!(dim(dual_numbers()), 2);
        assert_eq!(dim(two_loop_gdp()), 9);
        for n in 2..=4 {
            assert_eq!(dim(preprojective_a(n).unwrap()), n * (n + 1) * (n + 2) / 6);
            assert_eq!(dim(linear_a(n).unwrap()), n * (n + 1) / 2);
        }
        assert_eq!(dim(wild_r(5).unwrap()), 15);
    }

    #[test]
    fn unknown_entry() {
        assert!(matches!(load_corpus("nope", None), Err(Error::UnknownCorpusEntry(_))));
        assert_eq!(load_corpus_spec("linear_A:3").unwrap().vertices.len(), 3);
    }
}
