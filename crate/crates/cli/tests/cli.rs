use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tilt_cli::parse_field;
use tilt_core::corpus::load_corpus_spec;
use tilt_core::exactalg::{FieldSpec, Rationals};
use tilt_core::export::{cache_path, load_graph, save_graph};
use tilt_core::format::print_module;
use tilt_core::repmod::standard_modules;
use tilt_core::tautilt::{exchange_graph, ExchangeCaps};

fn tilt(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilt"))
        .args(args)
        .arg("--out-dir")
        .arg(dir.join("out"))
        .output()
        .expect("run tilt")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_out(dir: &Path, name: &str) -> Value {
    serde_json::from_slice(&fs::read(dir.join("out").join(format!("{name}.json"))).unwrap()).unwrap()
}

#[test]
fn decide_two_loop_is_finite() {
    let d = tempfile::tempdir().unwrap();
    let o = tilt(d.path(), &["decide", "two_loop_gdp"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Finite"));
    assert_eq!(json_out(d.path(), "decide")["verdict"], "Finite");
}

#[test]
fn decide_kronecker_is_inconclusive() {
    let d = tempfile::tempdir().unwrap();
    let o = tilt(d.path(), &["decide", "kronecker", "--field", "2147483647"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Inconclusive"));
}

#[test]
fn census_of_linear_a2() {
    let d = tempfile::tempdir().unwrap();
    let o = tilt(d.path(), &["census", "linear_A:2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("5 nodes, 5 epiclasses: counts consistent"), "{text}");
    let j = json_out(d.path(), "census");
    assert_eq!(j["rows"].as_array().unwrap().len(), 5);
    assert_eq!(j["version"], 1);

    let o = tilt(d.path(), &["census", "linear_A:2", "--format", "csv"]);
    let csv = stdout(&o);
    assert!(csv.starts_with("node,dim_b,"));
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn usage_errors_exit_one() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(tilt(d.path(), &["frobnicate"]).status.code(), Some(1));
    assert_eq!(tilt(d.path(), &["decide", "no_such_algebra"]).status.code(), Some(1));
    assert_eq!(tilt(d.path(), &["decide", "linear_A:2", "--field", "F 4"]).status.code(), Some(1));
    assert_eq!(tilt(d.path(), &["wide", "linear_A:2", "99"]).status.code(), Some(1));
    assert_eq!(tilt(d.path(), &["enumerate", "linear_A:2", "--format", "csv"]).status.code(), Some(1));
}

#[test]
fn failed_comparison_exits_two() {
    let d = tempfile::tempdir().unwrap();
    // the Kronecker algebra has extensions beyond any enumeration cap
    let o = tilt(d.path(), &["oracle", "torsion", "kronecker", "--field", "2", "--cap", "2", "--max-nodes", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("verification failed"));
    // too small a cap for linear A3 misses torsion classes
    let o = tilt(d.path(), &["oracle", "torsion", "linear_A:3", "--field", "2", "--cap", "2"]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn oracle_commands() {
    let d = tempfile::tempdir().unwrap();
    let o = tilt(d.path(), &["oracle", "torsion", "preprojective_A:2", "--field", "F3", "--cap", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json_out(d.path(), "torsion");
    assert_eq!(j["torsion_classes"], 6);
    assert_eq!(j["nodes"], 6);
    let o = tilt(d.path(), &["oracle", "bricks", "preprojective_A:2", "--field", "2", "--cap", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(d.path(), "bricks")["count"], 4);
    let o = tilt(d.path(), &["oracle", "presilting", "linear_A:3", "--field", "2", "--cap", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(d.path(), "presilting")["disagreements"].as_array().unwrap().len(), 0);
    // enumeration needs a finite field
    let o = tilt(d.path(), &["oracle", "modules", "linear_A:2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn basis_standard_and_tau() {
    let d = tempfile::tempdir().unwrap();
    let o = tilt(d.path(), &["basis", "preprojective_A:2"]);
    assert!(stdout(&o).starts_with("dimension 4"));
    let o = tilt(d.path(), &["standard", "linear_A:2", "--format", "json"]);
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["projectives"], serde_json::json!([[1, 1], [0, 1]]));

    let a = load_corpus_spec("linear_A:2").unwrap().build(&Rationals).unwrap();
    let s = standard_modules(&a);
    let file = d.path().join("s1.txt");
    fs::write(&file, print_module(&s.simples[0])).unwrap();
    let o = tilt(d.path(), &["tau", "linear_A:2", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(d.path(), "tau")["tau_dims"], serde_json::json!([0, 1]));
}

#[test]
fn algebra_from_file() {
    let d = tempfile::tempdir().unwrap();
    let file = d.path().join("a2.alg");
    fs::write(&file, "field F 3\nvertex 1\nvertex 2\narrow a 1 2\n").unwrap();
    let o = tilt(d.path(), &["enumerate", file.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["num_nodes"], 5);
    assert_eq!(j["status"], "Complete");
    fs::write(&file, "field Q\nvertex 1\narrow a 1 2\n").unwrap();
    let o = tilt(d.path(), &["enumerate", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown vertex 2"));
    fs::write(&file, "field Q\nvertex 1\narrow a 1\n").unwrap();
    let o = tilt(d.path(), &["enumerate", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

fn dot_is_well_formed(s: &str, kind: &str) {
    assert!(s.starts_with(kind));
    assert!(s.trim_end().ends_with('}'));
    let edge = if kind == "digraph" { "->" } else { "--" };
    for line in s.lines().skip(1) {
        let l = line.trim();
        assert!(l == "}" || l.ends_with(';'), "{l}");
        if l.contains(edge) {
            assert!(l.starts_with('n'));
        }
    }
}

#[test]
fn dot_outputs() {
    let d = tempfile::tempdir().unwrap();
    let o = tilt(d.path(), &["hasse", "linear_A:3", "--format", "dot"]);
    let dot = stdout(&o);
    dot_is_well_formed(&dot, "digraph");
    assert_eq!(dot.matches("->").count(), 21);
    let o = tilt(d.path(), &["enumerate", "linear_A:3", "--format", "dot"]);
    dot_is_well_formed(&stdout(&o), "graph");
}

#[test]
fn wide_and_epi() {
    let d = tempfile::tempdir().unwrap();
    let o = tilt(d.path(), &["wide", "preprojective_A:2", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json_out(d.path(), "wide");
    assert!(!j["samples"].as_array().unwrap().is_empty());
    let o = tilt(d.path(), &["epi", "preprojective_A:2", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json_out(d.path(), "epi");
    assert!(j["structure"].is_array());
    assert_eq!(j["flags"]["tor1_zero"], true);
    let o = tilt(d.path(), &["epi", "preprojective_A:2", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(d.path(), "epi")["epis"].as_array().unwrap().len(), 6);
}

#[test]
fn field_specs() {
    assert_eq!(parse_field("Q").unwrap(), FieldSpec::Rationals);
    for s in ["F 5", "F5", "F_5", "5"] {
        assert_eq!(parse_field(s).unwrap(), FieldSpec::Prime { p: 5 });
    }
    assert!(parse_field("F 6").is_err());
    assert!(parse_field("R").is_err());
}

#[test]
fn cached_graph_matches_fresh_run() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path().join("cache");
    for spec in ["preprojective_A:3", "two_loop_gdp", "kronecker"] {
        let file = load_corpus_spec(spec).unwrap();
        let a = file.build(&Rationals).unwrap();
        let caps = ExchangeCaps { max_nodes: 30, max_dim: 30 };
        let g = exchange_graph(&a, caps).unwrap();
        save_graph(&dir, &file, caps, &g).unwrap();
        let back = load_graph(&dir, &file, &a, caps).unwrap().unwrap();
        assert_eq!(back.nodes.len(), g.nodes.len());
        for (x, y) in g.nodes.iter().zip(&back.nodes) {
            assert_eq!(x.canonical_key(), y.canonical_key());
        }
        assert_eq!(back.edges, g.edges);
        assert_eq!(back.status, g.status);
        assert_eq!(back.neighbours, g.neighbours);
    }
    // different caps miss the cache
    let file = load_corpus_spec("two_loop_gdp").unwrap();
    let a = file.build(&Rationals).unwrap();
    assert!(load_graph(&dir, &file, &a, ExchangeCaps::default()).unwrap().is_none());
}

#[test]
fn tampered_cache_is_rejected() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path().join("cache");
    let o = tilt(d.path(), &["enumerate", "linear_A:3", "--cache-dir", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let first = stdout(&o);
    let o = tilt(d.path(), &["enumerate", "linear_A:3", "--cache-dir", dir.to_str().unwrap()]);
    assert_eq!(stdout(&o), first);

    let file = load_corpus_spec("linear_A:3").unwrap();
    let path = cache_path(&dir, &file, &Rationals, ExchangeCaps::default());
    let mut doc: Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    // make one node repeat a summand
    let nodes = doc["nodes"].as_array_mut().unwrap();
    let s = nodes[1]["summands"].as_array_mut().unwrap();
    s[1] = s[0].clone();
    fs::write(&path, serde_json::to_vec(&doc).unwrap()).unwrap();
    let o = tilt(d.path(), &["enumerate", "linear_A:3", "--cache-dir", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_paper_subset() {
    let d = tempfile::tempdir().unwrap();
    let o = tilt(d.path(), &["verify-paper", "--only", "1,7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 2);
    assert_eq!(json_out(d.path(), "verify-paper")["pass"], true);
}
