//! The acceptance checks on the named algebras.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use tilt_core::approx::is_presilting;
use tilt_core::corpus::load_corpus_spec;
use tilt_core::epis::{diagram_commutes, epiclass_census, quotient_candidate, ring_epi_with_semibrick, same_summands, EpiCaps};
use tilt_core::exactalg::{Field, PrimeField, Rationals};
use tilt_core::latticewide::{filtgen_membership_bounded, hasse, semibrick_at, wide_subcategory, Hasse, WidePredicate};
use tilt_core::oracle::{
    brute_bricks, enumerate_modules_upto_iso, enumerate_reps_upto_iso, enumerate_torsion_classes_repfinite,
    enumeration_cost, extension_middles, position_in, EnumerationCaps,
};
use tilt_core::quiveralg::Algebra;
use tilt_core::repmod::{decompose, hom_basis, hom_dim, in_gen_of, is_iso_indec, min_proj_presentation, standard_modules, tau, Rep};
use tilt_core::tautilt::{decide_tau_tilting_finite, exchange_graph, Decision, ExchangeCaps};
use tilt_core::{Error, Result};

pub const TITLES: [&str; 9] = [
    "preprojective A2",
    "preprojective A3",
    "bricks are positive roots",
    "wild_R n=9",
    "two_loop_gdp",
    "kronecker",
    "dual numbers",
    "linear A2",
    "property suites",
];

/// Caps used for the Kronecker algebra: the dimension cap is large enough
/// that the node cap is what stops the smaller run.
pub const KRONECKER_MAX_DIM: usize = 104;

/// The n = 9 wild example has 42822 nodes, above the default node cap.
pub const WILD_CAPS: ExchangeCaps = ExchangeCaps {
    max_nodes: 50_000,
    max_dim: 60,
};

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "{} {}. {}: {} [{:.1} s]",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.seconds
        )
    }
}

/// Runs criterion `id` (1 to 9).
pub fn run(id: usize) -> Outcome {
    let t = Instant::now();
    let r = match id {
        1 => preprojective(2, 6, 5.0),
        2 => preprojective(3, 24, 60.0),
        3 => bricks_are_roots(),
        4 => wild_r9(),
        5 => two_loop(),
        6 => kronecker(),
        7 => dual_numbers(),
        8 => linear_a2(),
        9 => property_suites(),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (pass, detail) = r.unwrap_or_else(|e| (false, format!("error: {e}")));
    Outcome {
        id,
        title: TITLES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        pass,
        detail,
        seconds: t.elapsed().as_secs_f64(),
    }
}

pub fn run_all() -> Vec<Outcome> {
    (1..=9).map(run).collect()
}

fn build<K: Field>(spec: &str, k: &K) -> Result<Algebra<K>> {
    load_corpus_spec(spec)?.build(k)
}

fn large() -> PrimeField {
    PrimeField::new(PrimeField::LARGE).expect("prime")
}

fn yes(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn preprojective(n: usize, count: usize, limit: f64) -> Result<(bool, String)> {
    let t = Instant::now();
    let a = build(&format!("preprojective_A:{n}"), &Rationals)?;
    let g = exchange_graph(&a, ExchangeCaps::default())?;
    let h = hasse(&g)?;
    let c = epiclass_census(&g, &h, EpiCaps::default())?;
    let secs = t.elapsed().as_secs_f64();
    let flags = c.rows.iter().all(|r| r.flags.all_pass());
    let pass = g.is_complete() && g.nodes.len() == count && c.rows.len() == count && c.epiclasses == count && flags && secs < limit;
    Ok((
        pass,
        format!(
            "{} nodes ({}), census {} (expected {count}), epi flags {}, {:.2} s (limit {limit} s)",
            g.nodes.len(),
            if g.is_complete() { "complete" } else { "truncated" },
            c.epiclasses,
            yes(flags),
            secs
        ),
    ))
}

/// Dimension vectors of positive roots of type A: a nonempty interval of ones.
pub fn is_positive_root_a(d: &[usize]) -> bool {
    let support: Vec<usize> = (0..d.len()).filter(|&i| d[i] > 0).collect();
    !support.is_empty() && d.iter().all(|&x| x <= 1) && support[support.len() - 1] - support[0] + 1 == support.len()
}

fn bricks_are_roots() -> Result<(bool, String)> {
    let mut pass = true;
    let mut parts = Vec::new();
    for p in [2, 3] {
        let a = build("preprojective_A:2", &PrimeField::new(p)?)?;
        let b = brute_bricks(&a, &EnumerationCaps::total(2))?;
        let roots = b.iter().all(|x| is_positive_root_a(x.dims()));
        pass &= b.len() == 4 && roots;
        parts.push(format!("A2 over F{p}: {} bricks at cap 2, roots {}", b.len(), yes(roots)));
    }
    for p in [2, 3] {
        let a = build("preprojective_A:3", &PrimeField::new(p)?)?;
        let caps = EnumerationCaps::total(4);
        if p > 2 && enumeration_cost(&a, &caps)? > caps.max_states {
            continue;
        }
        let b = brute_bricks(&a, &caps)?;
        let roots = b.iter().all(|x| is_positive_root_a(x.dims()));
        pass &= roots;
        parts.push(format!("A3 over F{p}: {} bricks up to dim 4, roots {}", b.len(), yes(roots)));
    }
    Ok((pass, parts.join("; ")))
}

fn pairwise_distinct<K: Field>(bricks: &[Rep<K>]) -> bool {
    bricks.iter().enumerate().all(|(i, x)| {
        bricks[i + 1..]
            .iter()
            .all(|y| x.dims() != y.dims() || !is_iso_indec(x, y))
    })
}

fn wild_r9() -> Result<(bool, String)> {
    let a = build("wild_R:9", &large())?;
    let Decision::Finite(g) = decide_tau_tilting_finite(&a, WILD_CAPS)? else {
        return Ok((false, "decide returned Inconclusive".into()));
    };
    let h = hasse(&g)?;
    let labels: BTreeSet<usize> = h.arrows.iter().map(|x| x.label).collect();
    let distinct = pairwise_distinct(&h.bricks);
    let c = epiclass_census(&g, &h, EpiCaps::default())?;
    let flags = c.rows.iter().all(|r| r.flags.all_pass());
    let pass = labels.len() == h.bricks.len() && distinct && c.epiclasses == g.nodes.len() && c.rows.len() == g.nodes.len() && flags;
    Ok((
        pass,
        format!(
            "Finite with {} nodes; {} bricks, {} distinct labels, pairwise non-isomorphic {}; census {} vs {} nodes; epi flags {}",
            g.nodes.len(),
            h.bricks.len(),
            labels.len(),
            yes(distinct),
            c.epiclasses,
            g.nodes.len(),
            yes(flags)
        ),
    ))
}

fn two_loop() -> Result<(bool, String)> {
    let a = build("two_loop_gdp", &Rationals)?;
    let Decision::Finite(g) = decide_tau_tilting_finite(&a, ExchangeCaps::default())? else {
        return Ok((false, "decide returned Inconclusive".into()));
    };
    let h = hasse(&g)?;
    let c = epiclass_census(&g, &h, EpiCaps::default())?;
    let all = c.rows.iter().filter(|r| r.flags.all_pass()).count();
    let tor = c.rows.iter().filter(|r| r.flags.tor1_zero).count();
    let sigma = c.rows.iter().filter(|r| r.flags.sigma_inverting == Some(true)).count();
    let n = c.rows.len();
    let pass = all == n && tor == n && sigma == n && c.epiclasses == g.nodes.len();
    Ok((
        pass,
        format!("Finite with {} nodes; {n} epis: all clauses {all}, tor1 zero {tor}, σ-inverting {sigma}; census {}", g.nodes.len(), c.epiclasses),
    ))
}

fn kronecker() -> Result<(bool, String)> {
    let a = build("kronecker", &large())?;
    let mut counts = Vec::new();
    let mut pass = true;
    for max_nodes in [100, 1000] {
        let d = decide_tau_tilting_finite(&a, ExchangeCaps { max_nodes, max_dim: KRONECKER_MAX_DIM })?;
        pass &= !d.is_finite();
        counts.push((max_nodes, d.is_finite(), d.graph().nodes.len()));
    }
    pass &= counts[1].2 > counts[0].2;
    let s: Vec<String> = counts
        .iter()
        .map(|(c, f, n)| format!("cap {c}: {} with {n} nodes", if *f { "Finite" } else { "Inconclusive" }))
        .collect();
    Ok((pass, format!("{} (max_dim {KRONECKER_MAX_DIM})", s.join(", "))))
}

fn dual_numbers() -> Result<(bool, String)> {
    let a = build("dual_numbers", &Rationals)?;
    let g = exchange_graph(&a, ExchangeCaps::default())?;
    let h = hasse(&g)?;
    let c = epiclass_census(&g, &h, EpiCaps::default())?;
    let s = standard_modules(&a);
    let w = quotient_candidate(&s.simples[0], vec![a.field().one()], None)?;
    let pass = g.is_complete() && g.nodes.len() == 2 && c.epiclasses == 2 && !w.flags.tor1_zero && w.flags.tor1_dim == 1;
    Ok((
        pass,
        format!(
            "{} nodes, {} epiclasses; A -> K has tor1_zero = {}, dim Tor1 = {}",
            g.nodes.len(),
            c.epiclasses,
            w.flags.tor1_zero,
            w.flags.tor1_dim
        ),
    ))
}

/// Lengths of all maximal chains from top to bottom.
fn chain_lengths<K: Field>(h: &Hasse<K>) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut stack = vec![(h.top, 0)];
    while let Some((v, len)) = stack.pop() {
        let mut leaf = true;
        for a in h.down_arrows(v) {
            leaf = false;
            stack.push((a.lower, len + 1));
        }
        if leaf {
            out.insert(len);
        }
    }
    out
}

fn linear_a2() -> Result<(bool, String)> {
    let a = build("linear_A:2", &Rationals)?;
    let g = exchange_graph(&a, ExchangeCaps::default())?;
    let h = hasse(&g)?;
    let c = epiclass_census(&g, &h, EpiCaps::default())?;
    let chains = chain_lengths(&h);
    let pentagon = h.is_lattice() && h.num_nodes == 5 && h.arrows.len() == 5 && chains == BTreeSet::from([2, 3]);
    let mut pass = g.is_complete() && g.nodes.len() == 5 && g.edges.len() == 5 && pentagon && c.epiclasses == 5;
    let mut parts = vec![format!(
        "{} nodes, {} edges, pentagon {}, {} epiclasses",
        g.nodes.len(),
        g.edges.len(),
        yes(pentagon),
        c.epiclasses
    )];
    for p in [2, 3] {
        let a = build("linear_A:2", &PrimeField::new(p)?)?;
        let ind = enumerate_reps_upto_iso(&a, &EnumerationCaps::total(2))?;
        let saturated = enumerate_reps_upto_iso(&a, &EnumerationCaps::total(4))?.len() == ind.len();
        let lat = enumerate_torsion_classes_repfinite(&ind)?;
        let g = exchange_graph(&a, ExchangeCaps::default())?;
        let h = hasse(&g)?;
        let modules = enumerate_modules_upto_iso(&a, &EnumerationCaps::total(4))?;
        let mut commutes = true;
        for (i, node) in g.nodes.iter().enumerate() {
            let e = ring_epi_with_semibrick(node, h.semibrick_at(i), EpiCaps::default())?;
            commutes &= diagram_commutes(node, &e, &modules)?;
        }
        pass &= saturated && lat.len() == 5 && commutes;
        parts.push(format!(
            "F{p}: oracle {} torsion classes, diagram commutes on {} modules {}",
            lat.len(),
            modules.len(),
            yes(commutes)
        ));
    }
    Ok((pass, parts.join("; ")))
}

/// One corpus entry of the property suite.
struct Entry {
    spec: &'static str,
    caps: ExchangeCaps,
    /// Enumeration cap covering every indecomposable, for the oracle counts.
    saturated_at: Option<usize>,
}

const SUITE_FIELD: u64 = 2;
const SAMPLE: usize = 40;
const DEPTH_CAP: usize = 16;

fn suite() -> Vec<Entry> {
    let full = ExchangeCaps::default();
    let e = |spec, saturated_at| Entry { spec, caps: full, saturated_at };
    vec![
        e("linear_A:2", Some(2)),
        e("linear_A:3", Some(3)),
        e("linear_A:4", Some(4)),
        e("dual_numbers", Some(2)),
        Entry {
            spec: "kronecker",
            caps: ExchangeCaps { max_nodes: 40, max_dim: 60 },
            saturated_at: None,
        },
        e("preprojective_A:2", Some(2)),
        e("preprojective_A:3", Some(4)),
        e("wild_R:3", None),
        Entry {
            spec: "wild_R:9",
            caps: WILD_CAPS,
            saturated_at: None,
        },
        e("two_loop_gdp", None),
    ]
}

/// Largest enumeration cap up to 4 whose cost stays below `limit`. Callers
/// lower it further where a module has a non-split endomorphism ring.
fn affordable_cap<K: Field>(a: &Algebra<K>, limit: u64) -> Result<usize> {
    let mut cap = 1;
    for c in 2..=4 {
        if enumeration_cost(a, &EnumerationCaps::total(c))? <= limit {
            cap = c;
        }
    }
    Ok(cap)
}

fn sample_indices(n: usize, k: usize) -> Vec<usize> {
    if n <= k {
        return (0..n).collect();
    }
    (0..k).map(|i| i * n / k).collect()
}

/// `X` has a filtration by members of `c` inside `w`: a nonzero map from a
/// member of `c` is injective with cokernel in `w`, recursively.
fn in_filt<K: Field>(c: &[Rep<K>], w: &WidePredicate<K>, x: &Rep<K>) -> bool {
    if x.is_zero() {
        return true;
    }
    for s in c {
        if let Some(f) = hom_basis(s, x).into_iter().next() {
            let (ker, _) = f.kernel();
            let (coker, _) = f.cokernel();
            return ker.is_zero() && w.contains(&coker) && in_filt(c, w, &coker);
        }
    }
    false
}

fn check_entry<K: Field>(entry: &Entry, k: &K, fails: &mut Vec<String>) -> Result<String> {
    let a = build(entry.spec, k)?;
    let name = entry.spec;
    let mut fail = |msg: String| fails.push(format!("{name}: {msg}"));
    let g = exchange_graph(&a, entry.caps)?;
    let n = a.num_vertices();
    let mut cap = affordable_cap(&a, 1 << 20)?;
    let (modules, ind) = loop {
        let caps = EnumerationCaps::total(cap);
        match enumerate_modules_upto_iso(&a, &caps).and_then(|m| Ok((m, enumerate_reps_upto_iso(&a, &caps)?))) {
            Err(Error::NotSplit(_)) if cap > 1 => cap -= 1,
            r => break r?,
        }
    };
    let sample = sample_indices(g.nodes.len(), SAMPLE);

    // n-regularity and mutation involution
    for (i, node) in g.nodes.iter().enumerate() {
        if node.num_positions() != n {
            fail(format!("node {i} has {} positions", node.num_positions()));
        }
        if g.is_complete() && g.neighbours[i].iter().any(|x| x.is_none()) {
            fail(format!("node {i} is missing a neighbour"));
        }
    }
    for &i in &sample {
        let node = &g.nodes[i];
        for pos in 0..node.num_positions() {
            let q = node.mutate(pos)?;
            let back = node
                .exchanged_position(&q)
                .map(|p| q.mutate(p))
                .transpose()?;
            if back.map(|b| b.canonical_key()) != Some(node.canonical_key()) {
                fail(format!("mutation at node {i} position {pos} is not an involution"));
            }
            if let Some(j) = g.neighbours[i][pos] {
                if g.find(&q) != Some(j) {
                    fail(format!("graph neighbour of node {i} at {pos} disagrees with mutation"));
                }
            }
        }
    }

    // presilting against Hom(M, τM)
    for m in &modules {
        let sigma = min_proj_presentation(m).complex;
        if is_presilting(&sigma) != (hom_dim(m, &tau(m)) == 0) {
            fail(format!("presilting test disagrees on a module of dims {:?}", m.dims()));
        }
    }

    let mut checked = 0;
    if g.is_complete() {
        let h = hasse(&g)?;
        // a-injectivity
        let keys: HashSet<Vec<usize>> = (0..g.nodes.len())
            .map(|i| {
                let mut s = h.semibrick_ids(i);
                s.sort();
                s
            })
            .collect();
        if keys.len() != g.nodes.len() {
            fail("two nodes share a semibrick".into());
        }
        for &i in &sample {
            let node = &g.nodes[i];
            let c = h.semibrick_at(i);
            if !same_summands(&semibrick_at(node)?, &c) {
                fail(format!("local semibrick at node {i} differs from the Hasse labels"));
            }
            let w = wide_subcategory(node, c.clone())?;
            let t = node.indec_summands();
            let members: Vec<&Rep<K>> = ind.iter().filter(|x| w.contains(x)).collect();
            let mut gens: Vec<Rep<K>> = c.clone();
            gens.extend(members.iter().map(|x| (*x).clone()));
            for x in &modules {
                let inw = w.contains(x);
                if inw != w.contains_closed_form(x) {
                    fail(format!("node {i}: membership tests disagree on {:?}", x.dims()));
                }
                // a(FiltGen C) = C: members of the wide subcategory are filtered by C
                if inw && !in_filt(&c, &w, x) {
                    fail(format!("node {i}: {:?} lies in the wide subcategory but not in Filt C", x.dims()));
                }
                // FiltGen(a(gen T)) = gen T
                if in_gen_of(&t, x) != filtgen_membership_bounded(&gens, x, DEPTH_CAP)? {
                    fail(format!("node {i}: gen T and FiltGen of its wide subcategory differ on {:?}", x.dims()));
                }
            }
            // closure under kernels, cokernels and extensions
            for x in &members {
                for y in &members {
                    for f in hom_basis(x, y) {
                        let kc = f.kernel_cokernel_image();
                        if !w.contains(&kc.ker) || !w.contains(&kc.coker) {
                            fail(format!("node {i}: kernel or cokernel leaves the wide subcategory"));
                        }
                    }
                    if x.dim() + y.dim() <= cap {
                        for m in extension_middles(x, y, &ind)? {
                            if !w.contains(&ind[m]) {
                                fail(format!("node {i}: an extension leaves the wide subcategory"));
                            }
                        }
                    }
                }
            }
            checked += 1;
        }
        // every brick up to the cap is a label
        let bricks = brute_bricks(&a, &EnumerationCaps::total(cap))?;
        for b in &bricks {
            if position_in(&h.bricks, b).is_none() {
                fail(format!("brick {:?} is not a Hasse label", b.dims()));
            }
        }
        if let Some(sat) = entry.saturated_at {
            let ind = enumerate_reps_upto_iso(&a, &EnumerationCaps::total(sat))?;
            let lat = enumerate_torsion_classes_repfinite(&ind)?;
            if lat.len() != g.nodes.len() {
                fail(format!("{} torsion classes against {} nodes", lat.len(), g.nodes.len()));
            }
            let all = brute_bricks(&a, &EnumerationCaps::total(sat))?;
            if all.len() != h.bricks.len() {
                fail(format!("{} bricks against {} labels", all.len(), h.bricks.len()));
            }
            for m in &ind {
                if decompose(m)?.len() != 1 {
                    fail("enumerated indecomposable decomposes".into());
                }
            }
        }
    }
    Ok(format!(
        "{name}: {} nodes, {} modules up to dim {cap}, {checked} nodes checked",
        g.nodes.len(),
        modules.len()
    ))
}

fn property_suites() -> Result<(bool, String)> {
    let k = PrimeField::new(SUITE_FIELD)?;
    let mut fails = Vec::new();
    let mut done = Vec::new();
    for e in suite() {
        match check_entry(&e, &k, &mut fails) {
            Ok(s) => done.push(s),
            Err(err) => fails.push(format!("{}: {err}", e.spec)),
        }
    }
    let pass = fails.is_empty();
    let mut detail = format!("{} entries over F{SUITE_FIELD}", done.len());
    if !pass {
        detail.push_str(&format!("; {} failures, first: {}", fails.len(), fails[0]));
    }
    Ok((pass, detail))
}

/// Summary lines of the property suite, one per corpus entry.
pub fn property_report() -> Vec<String> {
    let k = PrimeField::new(SUITE_FIELD).expect("prime");
    let mut out = Vec::new();
    for e in suite() {
        let mut fails = Vec::new();
        match check_entry(&e, &k, &mut fails) {
            Ok(s) => out.push(format!("{s}; {} failures", fails.len())),
            Err(err) => out.push(format!("{}: {err}", e.spec)),
        }
        out.extend(fails.into_iter().take(5).map(|f| format!("  {f}")));
    }
    out
}
