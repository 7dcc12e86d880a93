//! Fixtures and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use gaut_core::encoder::SimpleDigraph;
use gaut_core::hypergraph::{Edge, Hypergraph, NodeId};
use gaut_core::relation::{StateRelation, StateSet, StateWord};
use gaut_core::term::{perm_term, AtomSymbol, MagmoidTerm, Permutation, Rank};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The four-node graph with arcs 1→2, 2→3, 2→4, 3→4.
pub const G_TERM: &str =
    "(prod (i 0 1) (sym a 1 1) (i 1 2) (box (sym a 1 1) (sym a 1 1)) (box (sym a 1 1) e) (i 2 1) (i 1 0))";

/// An orientation of K₄.
pub const F_TERM: &str = "(prod (i 0 1) (i 1 3) (box (sym a 1 1) (sym a 1 1) (sym a 1 1)) (box e (i 1 2) e) \
                          (box e (sym a 1 1) (sym a 1 1) e) (box (i 2 1) (i 2 1)) (box (sym a 1 1) e) (i 2 1) (i 1 0))";

/// The transposition of a 3×3 grid of wires, used to wire K₃,₃.
pub const K33_PERMUTATION: [usize; 9] = [1, 4, 7, 2, 5, 8, 3, 6, 9];

pub fn a() -> AtomSymbol {
    AtomSymbol::new("a", 1, 1)
}

pub fn atom_a() -> MagmoidTerm {
    MagmoidTerm::Atom(a())
}

fn repeat(t: MagmoidTerm, n: usize) -> MagmoidTerm {
    MagmoidTerm::sum_all(std::iter::repeat(t).take(n))
}

/// Three sources each split three ways, nine arcs, the grid transposition,
/// then three merges.
pub fn k33_term() -> MagmoidTerm {
    let pi_s = perm_term(&Permutation::from_one_based(&K33_PERMUTATION).unwrap());
    MagmoidTerm::prod_all([
        repeat(MagmoidTerm::Iconst(0, 1), 3),
        repeat(MagmoidTerm::Iconst(1, 3), 3),
        repeat(atom_a(), 9),
        pi_s,
        repeat(MagmoidTerm::Iconst(3, 1), 3),
        repeat(MagmoidTerm::Iconst(1, 0), 3),
    ])
    .unwrap()
}

pub fn g_digraph() -> SimpleDigraph {
    SimpleDigraph::new(4, vec![(1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
}

/// Nodes: 1 the apex, 2 and 4 the ends of the bottom path, 3 the middle.
pub fn f_digraph() -> SimpleDigraph {
    SimpleDigraph::new(4, vec![(1, 2), (1, 3), (1, 4), (3, 2), (3, 4), (2, 4)]).unwrap()
}

pub fn k33_digraph() -> SimpleDigraph {
    let mut arcs = Vec::new();
    for x in 1..=3 {
        for y in 4..=6 {
            arcs.push((x, y));
        }
    }
    SimpleDigraph::new(6, arcs).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_digraph(rng: &mut impl Rng, max_nodes: usize, max_arcs: usize) -> SimpleDigraph {
    let n = rng.gen_range(0..=max_nodes);
    let m = if n == 0 { 0 } else { rng.gen_range(0..=max_arcs) };
    let arcs = (0..m).map(|_| (rng.gen_range(1..=n), rng.gen_range(1..=n))).collect();
    SimpleDigraph::new(n, arcs).unwrap()
}

/// Labels of rank at most (2,2).
pub fn labels() -> Vec<AtomSymbol> {
    vec![
        AtomSymbol::new("a", 1, 1),
        AtomSymbol::new("b", 2, 1),
        AtomSymbol::new("c", 1, 2),
        AtomSymbol::new("d", 2, 2),
        AtomSymbol::new("u", 0, 1),
        AtomSymbol::new("v", 1, 0),
        AtomSymbol::new("w", 0, 0),
        AtomSymbol::new("x", 2, 0),
    ]
}

pub fn random_hypergraph(rng: &mut impl Rng, max_nodes: usize, max_edges: usize) -> Hypergraph {
    let n = rng.gen_range(0..=max_nodes) as NodeId;
    let labels = labels();
    let pick = |rng: &mut dyn rand::RngCore, len: usize| -> Vec<NodeId> {
        (0..len).map(|_| rng.gen_range(1..=n)).collect()
    };
    let mut edges = Vec::new();
    if n > 0 {
        for _ in 0..rng.gen_range(0..=max_edges) {
            let l = labels.choose(rng).unwrap().clone();
            let (s, t) = (pick(rng, l.rank.m), pick(rng, l.rank.n));
            edges.push(Edge::new(l, s, t).unwrap());
        }
    } else if rng.gen_bool(0.3) {
        edges.push(Edge::new(AtomSymbol::new("w", 0, 0), vec![], vec![]).unwrap());
    }
    let (bl, el) = if n > 0 { (rng.gen_range(0..=3), rng.gen_range(0..=3)) } else { (0, 0) };
    let begin = pick(rng, bl);
    let end = pick(rng, el);
    Hypergraph::new(1..=n, edges, begin, end).unwrap()
}

/// A random rank-valid term of the requested rank over `atoms`.
pub fn random_term(rng: &mut impl Rng, rank: Rank, depth: usize, atoms: &[AtomSymbol]) -> MagmoidTerm {
    let (m, n) = (rank.m, rank.n);
    let leaf = |rng: &mut dyn rand::RngCore| -> MagmoidTerm {
        let mut options = vec![MagmoidTerm::Iconst(m, n)];
        if m == n {
            options.push(MagmoidTerm::UnitE(m));
        }
        if (m, n) == (2, 2) {
            options.push(MagmoidTerm::Pi);
        }
        options.extend(atoms.iter().filter(|s| s.rank == rank).map(|s| MagmoidTerm::Atom(s.clone())));
        options.choose(rng).unwrap().clone()
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.gen_range(0..4) {
        0 => leaf(rng),
        1 => {
            let k = rng.gen_range(0..=3);
            MagmoidTerm::prod(
                random_term(rng, Rank::new(m, k), depth - 1, atoms),
                random_term(rng, Rank::new(k, n), depth - 1, atoms),
            )
        }
        _ => {
            let m1 = rng.gen_range(0..=m);
            let n1 = rng.gen_range(0..=n);
            MagmoidTerm::sum(
                random_term(rng, Rank::new(m1, n1), depth - 1, atoms),
                random_term(rng, Rank::new(m - m1, n - n1), depth - 1, atoms),
            )
        }
    }
}

/// A random relation of the given rank over `q`, each pair kept with
/// probability `density`.
pub fn random_relation(rng: &mut impl Rng, q: &StateSet, rank: Rank, density: f64) -> StateRelation {
    let mut pairs = Vec::new();
    for u in q.words(rank.m).unwrap() {
        for v in q.words(rank.n).unwrap() {
            if rng.gen_bool(density) {
                pairs.push((u.clone(), v));
            }
        }
    }
    StateRelation::new(rank, pairs).unwrap()
}

/// Canonical arc list of a digraph: the lexicographically least sorted arc
/// list over all relabelings of its nodes.
pub fn canonical_arcs(d: &SimpleDigraph) -> (usize, Vec<(usize, usize)>) {
    let n = d.node_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut arcs: Vec<(usize, usize)> = d.arcs().iter().map(|&(u, v)| (perm[u - 1], perm[v - 1])).collect();
        arcs.sort_unstable();
        if best.as_ref().map_or(true, |b| arcs < *b) {
            best = Some(arcs);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    (n, best.unwrap_or_default())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Pairwise non-isomorphic digraphs with at most `max_nodes` nodes and
/// `max_arcs` arcs, drawn from a fixed seed until `count` are collected.
pub fn digraph_corpus(seed: u64, count: usize, max_nodes: usize, max_arcs: usize) -> Vec<SimpleDigraph> {
    let mut rng = rng(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 1_000_000, "corpus generator stalled at {}", out.len());
        let d = random_digraph(&mut rng, max_nodes, max_arcs);
        if seen.insert(canonical_arcs(&d)) {
            out.push(d);
        }
    }
    out
}

/// A shuffled node order for `g`.
pub fn shuffled_order(rng: &mut impl Rng, g: &Hypergraph) -> Vec<NodeId> {
    let mut order = g.nodes().to_vec();
    order.shuffle(rng);
    order
}

pub fn word(states: &[u8]) -> StateWord {
    StateWord(states.to_vec())
}
