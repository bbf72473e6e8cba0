//! JSON, DOT and CSV output, and the on-disk exchange graph cache.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::epis::{Census, RingEpiPresentation};
use crate::error::{Error, Result};
use crate::exactalg::Field;
use crate::format::{parse_module, print_module, AlgebraFile};
use crate::latticewide::Hasse;
use crate::quiveralg::Algebra;
use crate::repmod::Rep;
use crate::tautilt::{Edge, ExchangeCaps, ExchangeGraph, GraphStats, GraphStatus, SiltingPair, SummandCache, SummandInfo};

pub const SCHEMA_VERSION: u32 = 1;

fn dims_label(dims: &[usize]) -> String {
    dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("")
}

fn node_label<K: Field>(p: &SiltingPair<K>) -> String {
    let mut parts: Vec<String> = p.summands.iter().map(|s| dims_label(s.rep.dims())).collect();
    let names = p.alg().quiver().vertices();
    parts.extend(p.support_complement.iter().map(|&v| format!("P{}[1]", names[v])));
    parts.join(" + ")
}

pub fn graph_json<K: Field>(g: &ExchangeGraph<K>) -> Value {
    json!({
        "schema": "exchange_graph",
        "version": SCHEMA_VERSION,
        "status": g.status,
        "num_nodes": g.nodes.len(),
        "num_edges": g.edges.len(),
        "nodes": g.nodes.iter().enumerate().map(|(i, p)| json!({
            "id": i,
            "gvectors": p.gkeys(),
            "summand_dims": p.summands.iter().map(|s| s.rep.dims().to_vec()).collect::<Vec<_>>(),
            "support_complement": p.support_complement,
        })).collect::<Vec<_>>(),
        "edges": g.edges,
        "stats": g.stats,
    })
}

pub fn graph_dot<K: Field>(g: &ExchangeGraph<K>) -> String {
    let mut s = String::from("graph exchange {\n");
    for (i, p) in g.nodes.iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label=\"{}\"];", node_label(p));
    }
    for e in &g.edges {
        let _ = writeln!(s, "  n{} -- n{};", e.a, e.b);
    }
    s.push_str("}\n");
    s
}

pub fn hasse_json<K: Field>(h: &Hasse<K>) -> Value {
    json!({
        "schema": "hasse",
        "version": SCHEMA_VERSION,
        "num_nodes": h.num_nodes,
        "top": h.top,
        "bottom": h.bottom,
        "fallbacks": h.fallbacks,
        "bricks": h.bricks.iter().map(|b| b.dims().to_vec()).collect::<Vec<_>>(),
        "arrows": h.arrows,
    })
}

pub fn hasse_dot<K: Field>(g: &ExchangeGraph<K>, h: &Hasse<K>) -> String {
    let mut s = String::from("digraph hasse {\n  rankdir=TB;\n");
    for (i, p) in g.nodes.iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label=\"{}\"];", node_label(p));
    }
    for a in &h.arrows {
        let _ = writeln!(
            s,
            "  n{} -> n{} [label=\"B{} {}\"];",
            a.upper,
            a.lower,
            a.label,
            dims_label(h.bricks[a.label].dims())
        );
    }
    s.push_str("}\n");
    s
}

pub fn census_json(c: &Census) -> Value {
    json!({
        "schema": "census",
        "version": SCHEMA_VERSION,
        "nodes": c.rows.len(),
        "epiclasses": c.epiclasses,
        "rows": c.rows,
    })
}

pub fn census_csv(c: &Census) -> String {
    let mut s = String::from("node,dim_b,semibrick_dims,is_ring_hom,is_epimorphism,tor1_zero,sigma_inverting,essential_image\n");
    let opt = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
    for r in &c.rows {
        let dims: Vec<String> = r.semibrick_dims.iter().map(|d| dims_label(d)).collect();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.node,
            r.dim_b,
            dims.join(" "),
            r.flags.is_ring_hom,
            r.flags.is_epimorphism,
            r.flags.tor1_zero,
            opt(r.flags.sigma_inverting),
            opt(r.flags.essential_image_consistent)
        );
    }
    s
}

/// `B` as raw structure constants: `structure` lists `[i, j, k, c]` with
/// `b_i b_j = Σ c b_k`; `unit` gives the image of each basis path of `A`.
pub fn epi_json<K: Field>(e: &RingEpiPresentation<K>, with_structure: bool) -> Value {
    let k = e.alg().field();
    let fmt = |v: &[K::Elem]| v.iter().map(|x| k.format(x)).collect::<Vec<_>>();
    let mut out = json!({
        "schema": "ring_epi",
        "version": SCHEMA_VERSION,
        "field": k.spec(),
        "dim_b": e.dim_b(),
        "summand_dims": e.projectives.iter().map(|q| q.dims().to_vec()).collect::<Vec<_>>(),
        "multiplicities": e.multiplicities(),
        "semibrick_dims": e.semibrick.iter().map(|b| b.dims().to_vec()).collect::<Vec<_>>(),
        "flags": e.flags,
        "universality": "not checked; only the σ-inverting clause is verified",
    });
    if with_structure {
        let b = e.structure();
        let mut consts = Vec::new();
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                for kk in 0..b.dim() {
                    let c = b.structure_constant(i, j, kk);
                    if !k.is_zero(c) {
                        consts.push(json!([i, j, kk, k.format(c)]));
                    }
                }
            }
        }
        out["one"] = json!(fmt(&b.one));
        out["structure"] = json!(consts);
        out["unit"] = json!(e.unit.iter().map(|u| fmt(u)).collect::<Vec<_>>());
    }
    out
}

#[derive(Serialize, Deserialize)]
struct CachedNode {
    summands: Vec<usize>,
    support_complement: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CachedGraph {
    schema: String,
    version: u32,
    digest: String,
    caps: ExchangeCaps,
    summands: Vec<String>,
    nodes: Vec<CachedNode>,
    edges: Vec<Edge>,
    status: GraphStatus,
    stats: GraphStats,
}

/// Cache file for an algebra built over `field` with the given caps.
pub fn cache_path<K: Field>(dir: &Path, file: &AlgebraFile, field: &K, caps: ExchangeCaps) -> PathBuf {
    let mut f = file.clone();
    f.field = field.spec();
    dir.join(format!("graph-{}-{}-{}.json", f.digest(), caps.max_nodes, caps.max_dim))
}

/// Writes the graph to a temporary file and renames it into place.
pub fn save_graph<K: Field>(dir: &Path, file: &AlgebraFile, caps: ExchangeCaps, g: &ExchangeGraph<K>) -> Result<PathBuf> {
    let Some(first) = g.nodes.first() else {
        return Err(Error::Semantic("empty exchange graph".into()));
    };
    let field = first.alg().field();
    let mut ids: HashMap<*const SummandInfo<K>, usize> = HashMap::new();
    let mut summands = Vec::new();
    let mut nodes = Vec::with_capacity(g.nodes.len());
    for p in &g.nodes {
        let idx = p
            .summands
            .iter()
            .map(|s| {
                *ids.entry(Arc::as_ptr(s)).or_insert_with(|| {
                    summands.push(print_module(&s.rep));
                    summands.len() - 1
                })
            })
            .collect();
        nodes.push(CachedNode {
            summands: idx,
            support_complement: p.support_complement.clone(),
        });
    }
    let path = cache_path(dir, file, field, caps);
    let doc = CachedGraph {
        schema: "exchange_graph_cache".into(),
        version: SCHEMA_VERSION,
        digest: path.file_stem().unwrap().to_string_lossy().into_owned(),
        caps,
        summands,
        nodes,
        edges: g.edges.clone(),
        status: g.status.clone(),
        stats: g.stats.clone(),
    };
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".{}.{}.tmp", path.file_name().unwrap().to_string_lossy(), std::process::id()));
    fs::write(&tmp, serde_json::to_vec(&doc)?)?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Reloads a cached graph, re-validating every node. `Ok(None)` when no
/// cache file exists.
pub fn load_graph<K: Field>(
    dir: &Path,
    file: &AlgebraFile,
    alg: &Algebra<K>,
    caps: ExchangeCaps,
) -> Result<Option<ExchangeGraph<K>>> {
    let path = cache_path(dir, file, alg.field(), caps);
    let bytes = match fs::read(&path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let doc: CachedGraph = serde_json::from_slice(&bytes)?;
    if doc.version != SCHEMA_VERSION || doc.caps != caps {
        return Err(Error::VerificationFailed(format!("cache {} does not match", path.display())));
    }
    let infos = doc
        .summands
        .iter()
        .map(|text| SummandInfo::new(&parse_module(alg, text)?))
        .collect::<Result<Vec<Arc<SummandInfo<K>>>>>()?;
    let mut cache = SummandCache::new();
    let mut nodes = Vec::with_capacity(doc.nodes.len());
    for (i, n) in doc.nodes.iter().enumerate() {
        let parts = n
            .summands
            .iter()
            .map(|&j| infos.get(j).cloned())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::VerificationFailed(format!("cached node {i} refers to a missing summand")))?;
        let p = SiltingPair::from_infos(alg, parts, n.support_complement.clone());
        let report = p.validate_cached(&mut cache);
        if !report.ok() {
            return Err(Error::VerificationFailed(format!(
                "cached node {i}: {}",
                report.failures.join("; ")
            )));
        }
        nodes.push(p);
    }
    let mut neighbours: Vec<Vec<Option<usize>>> = nodes.iter().map(|p| vec![None; p.num_positions()]).collect();
    for e in &doc.edges {
        let ok = e.a < nodes.len() && e.b < nodes.len() && e.pos_a < neighbours[e.a].len() && e.pos_b < neighbours[e.b].len();
        if !ok || nodes[e.b].exchanged_position(&nodes[e.a]) != Some(e.pos_a) {
            return Err(Error::VerificationFailed(format!("cached edge {}-{} is not a mutation", e.a, e.b)));
        }
        neighbours[e.a][e.pos_a] = Some(e.b);
        neighbours[e.b][e.pos_b] = Some(e.a);
    }
    Ok(Some(ExchangeGraph {
        nodes,
        edges: doc.edges,
        status: doc.status,
        stats: doc.stats,
        neighbours,
    }))
}

/// Module text of every summand of a node, for export.
pub fn node_modules<K: Field>(p: &SiltingPair<K>) -> Vec<String> {
    p.summands.iter().map(|s| print_module(&s.rep)).collect()
}

pub fn module_dims<K: Field>(m: &Rep<K>) -> String {
    dims_label(m.dims())
}
