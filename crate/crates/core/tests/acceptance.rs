//! One line per acceptance criterion, `PASS` or `FAIL`, with the measured
//! time against its limit. Exits nonzero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gaut_core::automaton::{check_run, run_search, GraphAutomaton, RunWitness};
use gaut_core::color::{is_k_colorable, make_color_automaton, oracle_k_colorable, standard_generators, verify_coloring};
use gaut_core::encoder::{encode_digraph, encode_graph, encode_graph_with_order, SimpleDigraph};
use gaut_core::hypergraph::{eval_graph, isomorphic, Hypergraph, NodeId};
use gaut_core::relation::{check_axioms, tsrel_dset, StateSet};
use gaut_core::term::{graphoid_equations, parse_term, rotation_equation, MagmoidTerm};
use rand::Rng;

use common::{a, canonical_arcs, random_hypergraph, rng, shuffled_order, F_TERM, G_TERM};

const AXIOMS_LIMIT: Duration = Duration::from_secs(5);
const GRAPH_AXIOMS_LIMIT: Duration = Duration::from_secs(5);
const FIXTURE_LIMIT: Duration = Duration::from_millis(100);
const ORACLE_LIMIT: Duration = Duration::from_secs(60);

const ORACLE_CORPUS: usize = 500;
const ORACLE_MAX_NODES: usize = 6;
const ORACLE_SEED: u64 = 0x6b63_6f6c;
const ORDER_CORPUS: usize = 100;
const ORDER_MAX_NODES: usize = 7;
const ORDER_SEED: u64 = 0x6672_6565;
const ROUND_TRIP_CORPUS: usize = 200;
const ROUND_TRIP_SEED: u64 = 0x7274_7270;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn color(k: usize) -> GraphAutomaton {
    make_color_automaton(k).expect("k ≥ 1")
}

/// A loop-free digraph on at most `max_nodes` nodes with distinct arcs,
/// occasionally with one self-loop added.
fn corpus_digraph(rng: &mut impl Rng, max_nodes: usize) -> SimpleDigraph {
    let n = rng.gen_range(0..=max_nodes);
    let mut pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (1..=n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    let m = rng.gen_range(0..=pairs.len().min(2 * n + 2));
    let mut arcs = Vec::with_capacity(m + 1);
    for _ in 0..m {
        arcs.push(pairs.swap_remove(rng.gen_range(0..pairs.len())));
    }
    if n > 0 && rng.gen_bool(0.05) {
        let v = rng.gen_range(1..=n);
        arcs.push((v, v));
    }
    SimpleDigraph::new(n, arcs).expect("arcs in range")
}

fn corpus(seed: u64, count: usize, max_nodes: usize) -> Vec<SimpleDigraph> {
    let mut r = rng(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = corpus_digraph(&mut r, max_nodes);
        if seen.insert(canonical_arcs(&d)) {
            out.push(d);
        }
    }
    out
}

fn oracle_corpus() -> Vec<SimpleDigraph> {
    corpus(ORACLE_SEED, ORACLE_CORPUS, ORACLE_MAX_NODES)
}

fn order_corpus() -> Vec<SimpleDigraph> {
    let mut r = rng(ORDER_SEED);
    (0..ORDER_CORPUS).map(|_| corpus_digraph(&mut r, ORDER_MAX_NODES)).collect()
}

fn criterion_axioms() -> Outcome {
    let mut checked = 0;
    for k in 1..=3 {
        let q = StateSet::range(k).map_err(err)?;
        let generators = standard_generators(k).map_err(err)?;
        let report = check_axioms(&q, &tsrel_dset(&q), &generators).map_err(err)?;
        ensure(report.holds, || format!("|Q| = {k}: {}", report.to_json()))?;
        checked += report.equations.len();
    }
    Ok(format!("{checked} equation instances over |Q| = 1, 2, 3"))
}

fn criterion_graph_axioms() -> Outcome {
    let mut equations = graphoid_equations();
    for t in ["(sym a 1 1)", "(i 2 1)", "(i 1 2)", "pi", "(box pi (sym a 1 1))"] {
        equations.push(rotation_equation(&parse_term(t).map_err(err)?).map_err(err)?);
    }
    for eq in &equations {
        let l = eval_graph(&eq.lhs).map_err(err)?;
        let r = eval_graph(&eq.rhs).map_err(err)?;
        ensure(isomorphic(&l, &r).is_some(), || format!("{} fails", eq.name))?;
    }
    Ok(format!("{} equations up to isomorphism", equations.len()))
}

fn timed_fixture(name: &str, check: impl FnOnce() -> Result<(), String>) -> Result<Duration, String> {
    let start = Instant::now();
    check().map_err(|e| format!("{name}: {e}"))?;
    let spent = start.elapsed();
    ensure(spent < FIXTURE_LIMIT, || format!("{name} took {spent:?}"))?;
    Ok(spent)
}

fn classes(w: &RunWitness) -> BTreeSet<BTreeSet<NodeId>> {
    let mut by_state: BTreeMap<_, BTreeSet<NodeId>> = BTreeMap::new();
    for (&v, &s) in &w.assignment {
        by_state.entry(s).or_default().insert(v);
    }
    by_state.into_values().collect()
}

fn proper_witness(k: usize, d: &SimpleDigraph) -> Result<RunWitness, String> {
    let g = d.to_hypergraph(&a()).map_err(err)?;
    let w = run_search(&color(k), &g).map_err(err)?.ok_or("no run found")?;
    ensure(check_run(&color(k), &g, &w).map_err(err)?, || "witness is not a run".into())?;
    let c = w.assignment.iter().map(|(&v, &s)| (v, s as u32)).collect();
    ensure(verify_coloring(d, &c).map_err(err)?, || "witness is not a proper coloring".into())?;
    Ok(w)
}

fn criterion_fixtures() -> Outcome {
    let g_term = parse_term(G_TERM).map_err(err)?;
    let f_term = parse_term(F_TERM).map_err(err)?;
    let mut slowest = Duration::ZERO;
    let mut pattern = String::new();
    let mut record = |d: Duration| slowest = slowest.max(d);

    record(timed_fixture("A3 on G", || {
        ensure(color(3).accepts(&g_term).map_err(err)?, || "G rejected".into())?;
        let w = proper_witness(3, &common::g_digraph())?;
        let reference = RunWitness {
            assignment: BTreeMap::from([(1, 1), (2, 2), (3, 3), (4, 1)]),
        };
        ensure(classes(&w) == classes(&reference), || format!("color classes {:?}", classes(&w)))?;
        pattern = (1..=4).map(|v| w.state_of(v).unwrap().to_string()).collect::<Vec<_>>().join(",");
        Ok(())
    })?);
    record(timed_fixture("A2 on G", || {
        ensure(!color(2).accepts(&g_term).map_err(err)?, || "G accepted".into())?;
        ensure(run_search(&color(2), &common::g_digraph().to_hypergraph(&a()).map_err(err)?).map_err(err)?.is_none(), || {
            "run found".into()
        })
    })?);
    record(timed_fixture("A3 on F", || {
        ensure(!color(3).accepts(&f_term).map_err(err)?, || "F accepted".into())?;
        ensure(run_search(&color(3), &common::f_digraph().to_hypergraph(&a()).map_err(err)?).map_err(err)?.is_none(), || {
            "run found".into()
        })
    })?);
    record(timed_fixture("A4 on F", || {
        ensure(color(4).accepts(&f_term).map_err(err)?, || "F rejected".into())?;
        proper_witness(4, &common::f_digraph()).map(drop)
    })?);
    record(timed_fixture("A2 on K3,3", || {
        ensure(color(2).accepts(&common::k33_term()).map_err(err)?, || "K3,3 rejected".into())?;
        let w = proper_witness(2, &common::k33_digraph())?;
        let sides = BTreeSet::from([BTreeSet::from([1, 2, 3]), BTreeSet::from([4, 5, 6])]);
        ensure(classes(&w) == sides, || format!("classes {:?}", classes(&w)))
    })?);
    Ok(format!(
        "5 fixtures, slowest {slowest:?}; G colored {pattern} (same classes as 1,2,3,1)"
    ))
}

fn criterion_oracle() -> Outcome {
    let corpus = oracle_corpus();
    let mut disagreements = Vec::new();
    let mut colorable = [0usize; 4];
    for (i, d) in corpus.iter().enumerate() {
        for k in 1..=4 {
            let (yes, witness) = is_k_colorable(d, k).map_err(err)?;
            if yes {
                colorable[k - 1] += 1;
                let ok = verify_coloring(d, witness.as_ref().ok_or("accepted without witness")?).map_err(err)?;
                ensure(ok, || format!("graph {i}, k = {k}: improper witness"))?;
            }
            if yes != oracle_k_colorable(d, k).map_err(err)? {
                disagreements.push((i, k));
            }
        }
    }
    ensure(disagreements.is_empty(), || format!("disagreements at {disagreements:?}"))?;
    Ok(format!(
        "{} non-isomorphic digraphs × k = 1..4, colorable counts {colorable:?}, 0 disagreements",
        corpus.len()
    ))
}

fn criterion_orders() -> Outcome {
    let corpus = order_corpus();
    let a3 = color(3);
    let mut r = rng(ORDER_SEED ^ 1);
    let mut distinct = 0;
    let mut accepted = 0;
    for (i, d) in corpus.iter().enumerate() {
        let g = d.to_hypergraph(&a()).map_err(err)?;
        let first = shuffled_order(&mut r, &g);
        let mut second = shuffled_order(&mut r, &g);
        if g.node_count() > 1 {
            while second == first {
                second = shuffled_order(&mut r, &g);
            }
        }
        let t1 = encode_graph_with_order(&g, &first).map_err(err)?;
        let t2 = encode_graph_with_order(&g, &second).map_err(err)?;
        distinct += usize::from(t1 != t2);
        let (r1, r2) = (a3.extend_delta(&t1).map_err(err)?, a3.extend_delta(&t2).map_err(err)?);
        ensure(r1 == r2, || format!("graph {i}: relations differ"))?;
        let (b1, b2) = (a3.accepts(&t1).map_err(err)?, a3.accepts(&t2).map_err(err)?);
        ensure(b1 == b2, || format!("graph {i}: acceptance differs"))?;
        accepted += usize::from(b1);
    }
    Ok(format!(
        "{} digraphs, {distinct} with syntactically distinct encodings, {accepted} accepted",
        corpus.len()
    ))
}

fn criterion_round_trip() -> Outcome {
    let mut r = rng(ROUND_TRIP_SEED);
    let mut edges = 0;
    for i in 0..ROUND_TRIP_CORPUS {
        let g = random_hypergraph(&mut r, 8, 12);
        edges += g.edges().len();
        let back = eval_graph(&encode_graph(&g)).map_err(err)?;
        ensure(isomorphic(&back, &g).is_some(), || format!("hypergraph {i} does not round-trip"))?;
    }
    Ok(format!("{ROUND_TRIP_CORPUS} hypergraphs, {edges} edges in total"))
}

fn agreement(g: &Hypergraph, k: usize) -> Result<bool, String> {
    let a = color(k);
    let relational = a.accepts(&encode_graph(g)).map_err(err)?;
    let search = run_search(&a, g).map_err(err)?.is_some();
    Ok(relational == search)
}

fn criterion_agreement() -> Outcome {
    let mut checks = 0;
    for (i, d) in oracle_corpus().iter().enumerate() {
        let g = d.to_hypergraph(&a()).map_err(err)?;
        for k in 1..=4 {
            ensure(agreement(&g, k)?, || format!("oracle corpus graph {i}, k = {k}"))?;
            checks += 1;
        }
    }
    for (i, d) in order_corpus().iter().enumerate() {
        let g = d.to_hypergraph(&a()).map_err(err)?;
        ensure(agreement(&g, 3)?, || format!("order corpus graph {i}"))?;
        checks += 1;
    }
    Ok(format!("{checks} graph/automaton pairs agree"))
}

fn criterion_leaves() -> Outcome {
    let encoded = encode_digraph(&common::k33_digraph(), &a()).map_err(err)?;
    let hand = common::k33_term();
    ensure(encoded.atom_count() == 9, || format!("encoding has {} leaves", encoded.atom_count()))?;
    ensure(hand.atom_count() == 9, || format!("hand term has {} leaves", hand.atom_count()))?;
    let same = isomorphic(&eval_graph(&encoded).map_err(err)?, &eval_graph(&hand).map_err(err)?).is_some();
    ensure(same, || "encoding and hand term differ".into())?;
    let leaves = encoded.atoms().iter().filter(|s| **s == &a()).count();
    ensure(leaves == 9, || format!("{leaves} leaves labelled a"))?;
    ensure(!matches!(encoded, MagmoidTerm::Atom(_)), || "degenerate encoding".into())?;
    Ok("9 leaves, evaluation isomorphic to the hand-built K3,3 term".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, Option<Duration>, fn() -> Outcome); 8] = [
        ("1", "graph equations in TSRel(Q)", Some(AXIOMS_LIMIT), criterion_axioms),
        ("2", "graph equations in GR(Σ)", Some(GRAPH_AXIOMS_LIMIT), criterion_graph_axioms),
        ("3", "worked fixtures", None, criterion_fixtures),
        ("4", "recognizer vs brute-force oracle", Some(ORACLE_LIMIT), criterion_oracle),
        ("5", "encoding order independence", None, criterion_orders),
        ("6", "encode/evaluate round-trip", None, criterion_round_trip),
        ("7", "relational vs search strategy", None, criterion_agreement),
        ("8", "K3,3 leaf count", None, criterion_leaves),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let spent = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(limit)) if spent >= limit => Err(format!("took {spent:.2?}, limit {limit:?}")),
            (r, _) => r,
        };
        let budget = limit.map(|l| format!(" / {l:?}")).unwrap_or_default();
        match result {
            Ok(detail) => println!("PASS criterion {id} ({name}) [{spent:.2?}{budget}]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id} ({name}) [{spent:.2?}{budget}]: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
