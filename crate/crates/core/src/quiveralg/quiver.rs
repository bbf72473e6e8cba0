//! Quivers, paths and integer linear combinations of paths.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with labelled vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut seen: HashMap<&str, ()> = HashMap::new();
        for v in &vertices {
            if seen.insert(v, ()).is_some() {
                return Err(Error::Semantic(format!("duplicate label {v}")));
            }
        }
        let mut out = Vec::new();
        for (name, s, t) in &arrows {
            if seen.insert(name, ()).is_some() {
                return Err(Error::Semantic(format!("duplicate label {name}")));
            }
            let find = |l: &str| {
                vertices
                    .iter()
                    .position(|v| v == l)
                    .ok_or_else(|| Error::Semantic(format!("arrow {name} uses unknown vertex {l}")))
            };
            out.push(Arrow {
                name: name.clone(),
                source: find(s)?,
                target: find(t)?,
            });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == label)
    }

    /// The quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    /// All paths of exactly the given length, in path order.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut cur: Vec<Path> = (0..self.num_vertices()).map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &cur {
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        next.push(p.then_arrow(i, a.target));
                    }
                }
            }
            cur = next;
        }
        cur.sort();
        cur
    }

    pub fn format_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", self.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A path in a quiver; `arrows` lists arrows in traversal order, so the
/// word `a*b` means "first `a`, then `b`". A trivial path has no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: vec![],
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    fn then_arrow(&self, a: usize, target: usize) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Path {
            source: self.source,
            target,
            arrows,
        }
    }

    /// Concatenation `self * other`, or `None` when not composable.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    pub fn reversed(&self) -> Path {
        Path {
            source: self.target,
            target: self.source,
            arrows: self.arrows.iter().rev().cloned().collect(),
        }
    }
}

/// Length first, then lexicographic on arrow indices, then source vertex.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A formal integer combination of parallel paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathExpr {
    pub terms: Vec<(i64, Path)>,
}

impl PathExpr {
    /// Builds an expression from `(coefficient, arrow word)` terms, checking
    /// composability and that all terms are parallel.
    pub fn from_words(quiver: &Quiver, words: &[(i64, Vec<String>)]) -> Result<Self> {
        let mut terms = Vec::new();
        for (c, word) in words {
            if word.is_empty() {
                return Err(Error::MalformedRelation("empty term".into()));
            }
            let mut path: Option<Path> = None;
            for name in word {
                let idx = quiver
                    .arrow_index(name)
                    .ok_or_else(|| Error::Semantic(format!("unknown arrow {name}")))?;
                let a = &quiver.arrows()[idx];
                path = Some(match path {
                    None => Path {
                        source: a.source,
                        target: a.target,
                        arrows: vec![idx],
                    },
                    Some(p) => {
                        if p.target != a.source {
                            return Err(Error::Semantic(format!(
                                "{} is not composable",
                                word.join("*")
                            )));
                        }
                        p.then_arrow(idx, a.target)
                    }
                });
            }
            terms.push((*c, path.expect("nonempty word")));
        }
        let expr = PathExpr { terms };
        expr.check_parallel(quiver)?;
        Ok(expr)
    }

    pub fn check_parallel(&self, quiver: &Quiver) -> Result<()> {
        if let Some((_, first)) = self.terms.first() {
            for (_, p) in &self.terms {
                if p.source != first.source || p.target != first.target {
                    return Err(Error::MalformedRelation(format!(
                        "terms {} and {} are not parallel",
                        quiver.format_path(first),
                        quiver.format_path(p)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> Option<usize> {
        self.terms.first().map(|(_, p)| p.source)
    }

    pub fn target(&self) -> Option<usize> {
        self.terms.first().map(|(_, p)| p.target)
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }

    pub fn reversed(&self) -> PathExpr {
        PathExpr {
            terms: self.terms.iter().map(|(c, p)| (*c, p.reversed())).collect(),
        }
    }

    pub fn format(&self, quiver: &Quiver) -> String {
        let mut s = String::new();
        for (i, (c, p)) in self.terms.iter().enumerate() {
            let word = quiver.format_path(p);
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if i == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            if mag != 1 {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(&word);
        }
        s
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.source)
        } else {
            let w: Vec<String> = self.arrows.iter().map(|a| a.to_string()).collect();
            write!(f, "{}", w.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::new(vec!["1".into(), "2".into()], vec![("a".into(), "1".into(), "2".into())]).unwrap()
    }

    #[test]
    fn rejects_duplicate_labels() {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![("a".into(), "1".into(), "2".into()), ("a".into(), "2".into(), "1".into())],
        );
        assert!(q.is_err());
    }

    #[test]
    fn non_composable_word_is_semantic_error() {
        let q = a2();
        let e = PathExpr::from_words(&q, &[(1, vec!["a".into(), "a".into()])]);
        assert!(matches!(e, Err(Error::Semantic(_))));
    }

    #[test]
    fn path_order_is_length_then_lex() {
        let q = a2();
        let mut ps = q.paths_of_length(0);
        ps.extend(q.paths_of_length(1));
        assert_eq!(ps.len(), 3);
        assert!(ps[0] < ps[1] && ps[1] < ps[2]);
        assert_eq!(q.format_path(&ps[2]), "a");
    }
}
