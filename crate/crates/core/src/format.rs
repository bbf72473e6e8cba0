//! Line-oriented text formats for algebras and modules.
//!
//! Algebra files:
//!
//! ```text
//! # linear A2
//! field Q
//! vertex 1
//! vertex 2
//! arrow a 1 2
//! relation a*b - 2*c*d
//! cap max_path_length 16
//! ```
//!
//! Module files list `dim VERTEX N` lines and one `arrow NAME : r1 ; r2 ; ...`
//! line per arrow with rows of whitespace-separated entries.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldSpec, Matrix};
use crate::quiveralg::{build_based_algebra, Algebra, AlgebraCaps, PathExpr, Quiver};
use crate::repmod::Rep;

/// A relation term: integer coefficient and arrow word.
pub type Term = (i64, Vec<String>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub comments: Vec<String>,
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<Vec<Term>>,
    pub caps: Vec<(String, u64)>,
}

const KNOWN_CAPS: &[&str] = &["max_path_length"];

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Parses `a*b - 2*c*d + e*f` into terms.
pub fn parse_relation(expr: &str, line: usize, col0: usize) -> Result<Vec<Term>> {
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut cur = String::new();
    let mut cur_col = col0;
    let mut pending = false;
    let flush = |cur: &mut String, sign: i64, col: usize, terms: &mut Vec<Term>| -> Result<()> {
        let t: String = cur.chars().filter(|c| !c.is_whitespace()).collect();
        cur.clear();
        if t.is_empty() {
            return Err(perr(line, col, "empty term"));
        }
        let mut factors: Vec<&str> = t.split('*').collect();
        let mut coeff = sign;
        if let Ok(c) = factors[0].parse::<i64>() {
            if factors.len() == 1 {
                return Err(perr(line, col, "term has a coefficient but no path"));
            }
            coeff *= c;
            factors.remove(0);
        }
        for f in &factors {
            if f.is_empty() {
                return Err(perr(line, col, "empty factor in path"));
            }
        }
        terms.push((coeff, factors.into_iter().map(String::from).collect()));
        Ok(())
    };
    for (i, ch) in expr.char_indices() {
        match ch {
            '+' | '-' => {
                if cur.trim().is_empty() {
                    if pending || !terms.is_empty() {
                        return Err(perr(line, col0 + i, "dangling sign"));
                    }
                    if ch == '-' {
                        sign = -sign;
                    }
                    pending = true;
                } else {
                    flush(&mut cur, sign, cur_col, &mut terms)?;
                    sign = if ch == '-' { -1 } else { 1 };
                    pending = true;
                }
                cur_col = col0 + i + 1;
            }
            c => {
                if !(c.is_alphanumeric() || c == '_' || c == '*' || c == '\'' || c.is_whitespace()) {
                    return Err(perr(line, col0 + i, format!("unexpected character '{c}'")));
                }
                cur.push(c);
            }
        }
    }
    flush(&mut cur, sign, cur_col, &mut terms)?;
    Ok(terms)
}

fn format_relation(terms: &[Term]) -> String {
    let mut s = String::new();
    for (i, (c, w)) in terms.iter().enumerate() {
        let word = w.join("*");
        let (neg, a) = (*c < 0, c.unsigned_abs());
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if a != 1 {
            let _ = write!(s, "{a}*");
        }
        s.push_str(&word);
    }
    s
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut comments = Vec::new();
        let mut field = None;
        let mut vertices = Vec::new();
        let mut arrows = Vec::new();
        let mut relations = Vec::new();
        let mut caps = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = ln + 1;
            let trimmed = raw.trim();
            if let Some(c) = trimmed.strip_prefix('#') {
                comments.push(c.trim().to_string());
                continue;
            }
            let body = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            if body.trim().is_empty() {
                continue;
            }
            let indent = body.len() - body.trim_start().len();
            let toks: Vec<&str> = body.split_whitespace().collect();
            let col = |i: usize| -> usize {
                let mut pos = indent;
                let rest = &body[indent..];
                let mut count = 0;
                let mut in_tok = false;
                for (j, c) in rest.char_indices() {
                    if !c.is_whitespace() && !in_tok {
                        if count == i {
                            pos = indent + j;
                            break;
                        }
                        count += 1;
                        in_tok = true;
                    } else if c.is_whitespace() {
                        in_tok = false;
                    }
                }
                pos + 1
            };
            match toks[0] {
                "field" => {
                    if field.is_some() {
                        return Err(perr(line, col(0), "field declared twice"));
                    }
                    field = Some(match toks.get(1..) {
                        Some(["Q"]) => FieldSpec::Rationals,
                        Some(["F", p]) => {
                            let p: u64 = p.parse().map_err(|_| perr(line, col(2), "expected a prime"))?;
                            FieldSpec::prime(p).map_err(|e| perr(line, col(2), e.to_string()))?
                        }
                        _ => return Err(perr(line, col(1), "expected 'Q' or 'F p'")),
                    });
                }
                "vertex" => {
                    if toks.len() != 2 || !is_name(toks[1]) {
                        return Err(perr(line, col(1), "expected 'vertex NAME'"));
                    }
                    vertices.push(toks[1].to_string());
                }
                "arrow" => {
                    if toks.len() != 4 {
                        return Err(perr(line, col(0), "expected 'arrow NAME SRC DST'"));
                    }
                    if !is_name(toks[1]) {
                        return Err(perr(line, col(1), "bad arrow name"));
                    }
                    arrows.push((toks[1].to_string(), toks[2].to_string(), toks[3].to_string()));
                }
                "relation" => {
                    let start = body.find("relation").expect("keyword") + "relation".len();
                    let expr = &body[start..];
                    if expr.trim().is_empty() {
                        return Err(perr(line, start + 1, "empty relation"));
                    }
                    relations.push(parse_relation(expr, line, start + 1)?);
                }
                "cap" => {
                    if toks.len() != 3 {
                        return Err(perr(line, col(0), "expected 'cap NAME VALUE'"));
                    }
                    if !KNOWN_CAPS.contains(&toks[1]) {
                        return Err(perr(line, col(1), format!("unknown cap '{}'", toks[1])));
                    }
                    let v: u64 = toks[2].parse().map_err(|_| perr(line, col(2), "expected an integer"))?;
                    caps.push((toks[1].to_string(), v));
                }
                other => return Err(perr(line, col(0), format!("unknown keyword '{other}'"))),
            }
        }
        let field = field.ok_or_else(|| perr(1, 1, "missing 'field' line"))?;
        let f = AlgebraFile {
            comments,
            field,
            vertices,
            arrows,
            relations,
            caps,
        };
        f.quiver()?;
        Ok(f)
    }

    pub fn print(&self) -> String {
        let mut s = String::new();
        for c in &self.comments {
            let _ = writeln!(s, "# {c}");
        }
        let _ = writeln!(s, "field {}", self.field);
        for v in &self.vertices {
            let _ = writeln!(s, "vertex {v}");
        }
        for (a, x, y) in &self.arrows {
            let _ = writeln!(s, "arrow {a} {x} {y}");
        }
        for r in &self.relations {
            let _ = writeln!(s, "relation {}", format_relation(r));
        }
        for (k, v) in &self.caps {
            let _ = writeln!(s, "cap {k} {v}");
        }
        s
    }

    pub fn quiver(&self) -> Result<Quiver> {
        let q = Quiver::new(self.vertices.clone(), self.arrows.clone())?;
        for r in &self.relations {
            PathExpr::from_words(&q, r)?;
        }
        Ok(q)
    }

    pub fn algebra_caps(&self) -> AlgebraCaps {
        let mut caps = AlgebraCaps::default();
        for (k, v) in &self.caps {
            if k == "max_path_length" {
                caps.max_path_length = *v as usize;
            }
        }
        caps
    }

    /// Builds the algebra over the given field, which overrides the header.
    pub fn build<K: Field>(&self, field: &K) -> Result<Algebra<K>> {
        let q = self.quiver()?;
        let rels = self
            .relations
            .iter()
            .map(|r| PathExpr::from_words(&q, r))
            .collect::<Result<Vec<_>>>()?;
        build_based_algebra(field, q, rels, self.algebra_caps())
    }

    /// Canonical serialisation used for cache digests.
    pub fn digest(&self) -> String {
        let mut canon = self.clone();
        canon.comments.clear();
        let text = canon.print();
        // FNV-1a, 64 bit
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in text.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100_0000_01b3);
        }
        format!("{h:016x}")
    }
}

/// Parses a module file over a given algebra.
pub fn parse_module<K: Field>(alg: &Algebra<K>, text: &str) -> Result<Rep<K>> {
    let q = alg.quiver();
    let k = alg.field();
    let nv = q.num_vertices();
    let mut dims: Vec<Option<usize>> = vec![None; nv];
    let mut maps: Vec<Option<(usize, Vec<Vec<K::Elem>>)>> = vec![None; q.arrows().len()];
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        if body.trim().is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks[0] {
            "dim" => {
                if toks.len() != 3 {
                    return Err(perr(line, 1, "expected 'dim VERTEX N'"));
                }
                let v = q
                    .vertex_index(toks[1])
                    .ok_or_else(|| Error::Semantic(format!("line {line}: unknown vertex '{}'", toks[1])))?;
                let d: usize = toks[2].parse().map_err(|_| perr(line, 1, "expected a dimension"))?;
                dims[v] = Some(d);
            }
            "arrow" => {
                let Some((head, rows)) = body.split_once(':') else {
                    return Err(perr(line, 1, "expected 'arrow NAME : rows'"));
                };
                let ht: Vec<&str> = head.split_whitespace().collect();
                if ht.len() != 2 {
                    return Err(perr(line, 1, "expected 'arrow NAME : rows'"));
                }
                let a = q
                    .arrow_index(ht[1])
                    .ok_or_else(|| Error::Semantic(format!("line {line}: unknown arrow '{}'", ht[1])))?;
                let mut parsed = Vec::new();
                let mut width = None;
                for row in rows.split(';') {
                    let entries: Vec<&str> = row.split_whitespace().collect();
                    if entries.is_empty() {
                        continue;
                    }
                    let vals = entries
                        .iter()
                        .map(|e| k.parse(e).ok_or_else(|| perr(line, 1, format!("bad scalar '{e}'"))))
                        .collect::<Result<Vec<_>>>()?;
                    if *width.get_or_insert(vals.len()) != vals.len() {
                        return Err(perr(line, 1, "rows of unequal length"));
                    }
                    parsed.push(vals);
                }
                maps[a] = Some((width.unwrap_or(0), parsed));
            }
            other => return Err(perr(line, 1, format!("unknown keyword '{other}'"))),
        }
    }
    let dims: Vec<usize> = dims.into_iter().map(|d| d.unwrap_or(0)).collect();
    let mut mats = Vec::new();
    for (a, arr) in q.arrows().iter().enumerate() {
        let (r, c) = (dims[arr.target], dims[arr.source]);
        let m = match maps[a].take() {
            None => Matrix::zeros(k, r, c),
            Some((w, rows)) => {
                if r * c == 0 && rows.is_empty() {
                    Matrix::zeros(k, r, c)
                } else if rows.len() != r || w != c {
                    return Err(Error::Shape(format!("arrow {} needs a {r}x{c} matrix", arr.name)));
                } else {
                    Matrix::from_rows(k, c, rows)
                }
            }
        };
        mats.push(m);
    }
    Rep::new(alg, dims, mats)
}

pub fn print_module<K: Field>(m: &Rep<K>) -> String {
    let q = m.alg().quiver();
    let k = m.field();
    let mut s = String::new();
    for (v, name) in q.vertices().iter().enumerate() {
        let _ = writeln!(s, "dim {name} {}", m.dims()[v]);
    }
    for (a, arr) in q.arrows().iter().enumerate() {
        let mat = m.arrow(a);
        let rows: Vec<String> = (0..mat.rows())
            .map(|r| mat.row(r).iter().map(|e| k.format(e)).collect::<Vec<_>>().join(" "))
            .collect();
        let _ = writeln!(s, "arrow {} : {}", arr.name, rows.join(" ; "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rationals;

    const A2: &str = "# linear A2\nfield Q\nvertex 1\nvertex 2\narrow a 1 2\n";

    #[test]
    fn parses_linear_a2() {
        let f = AlgebraFile::parse(A2).unwrap();
        assert_eq!(f.vertices.len(), 2);
        assert_eq!(f.arrows.len(), 1);
        assert!(f.relations.is_empty());
        assert_eq!(AlgebraFile::parse(&f.print()).unwrap(), f);
    }

    #[test]
    fn relation_terms() {
        let t = parse_relation(" a*b - 2*c*d + e*f", 1, 1).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[1].0, -2);
        assert_eq!(t[1].1, vec!["c".to_string(), "d".to_string()]);
        assert_eq!(format_relation(&t), "a*b - 2*c*d + e*f");
        assert!(parse_relation("a*b +", 1, 1).is_err());
        assert!(parse_relation("a*/b", 1, 1).is_err());
    }

    #[test]
    fn semantic_errors() {
        let bad = "field Q\nvertex 1\nvertex 2\narrow a 1 2\narrow b 1 2\nrelation b*a\n";
        assert!(matches!(AlgebraFile::parse(bad), Err(Error::Semantic(_))));
        let dup = "field Q\nvertex 1\nvertex 2\narrow a 1 2\narrow a 2 1\n";
        assert!(matches!(AlgebraFile::parse(dup), Err(Error::Semantic(_))));
        let unknown = "field Q\nvertex 1\nfoo bar\n";
        match AlgebraFile::parse(unknown) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (3, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn module_round_trip() {
        let f = AlgebraFile::parse(A2).unwrap();
        let alg = f.build(&Rationals).unwrap();
        let m = parse_module(&alg, "dim 1 1\ndim 2 1\narrow a : 1\n").unwrap();
        assert_eq!(m.dims(), &[1, 1]);
        let again = parse_module(&alg, &print_module(&m)).unwrap();
        assert_eq!(again, m);
        assert!(parse_module(&alg, "dim 1 1\ndim 2 1\narrow a : 1 2\n").is_err());
    }
}
