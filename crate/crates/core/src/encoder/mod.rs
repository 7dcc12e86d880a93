//! Terms from graphs.
//!
//! A graph is written as a product of seven layers, read left to right:
//!
//! 1. node creation: begin wires are merged per node, other nodes are created;
//! 2. fan-out: every node is copied once per source occurrence, plus one
//!    carry wire if it still has targets to absorb or belongs to `end`;
//! 3. routing of the copies onto the source slots of the edges;
//! 4. the edges themselves, side by side, next to the carry wires;
//! 5. routing of edge targets next to their node's carry wire;
//! 6. fan-in of each carry wire with its target occurrences;
//! 7. fan-out to the end occurrences, followed by routing into end order.
//!
//! Layers that are identities are left out.

mod input;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, NodeId};
use crate::term::{perm_term, Alphabet, AtomSymbol, MagmoidTerm, Permutation, Rank};

pub use input::{parse_graph_input, GraphFormat};

/// An ordinary directed graph on nodes `1..=n`. Parallel arcs and loops are
/// allowed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimpleDigraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl SimpleDigraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = arcs.iter().find(|&&(u, v)| !(1..=n).contains(&u) || !(1..=n).contains(&v)) {
            return Err(Error::InvalidGraph(format!("arc {u}->{v} outside nodes 1..{n}")));
        }
        if n > NodeId::MAX as usize {
            return Err(Error::InvalidGraph(format!("{n} nodes is too many")));
        }
        Ok(SimpleDigraph { n, arcs })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn reversed(&self) -> SimpleDigraph {
        SimpleDigraph {
            n: self.n,
            arcs: self.arcs.iter().map(|&(u, v)| (v, u)).collect(),
        }
    }

    /// The (0,0)-hypergraph on nodes `1..=n` with one `label` edge per arc.
    pub fn to_hypergraph(&self, label: &AtomSymbol) -> Result<Hypergraph> {
        if label.rank != Rank::new(1, 1) {
            return Err(Error::RankMismatch {
                context: "digraph arcs need a (1,1) label",
                left: Rank::new(1, 1),
                right: label.rank,
            });
        }
        let edges = self
            .arcs
            .iter()
            .map(|&(u, v)| Edge::new(label.clone(), vec![u as NodeId], vec![v as NodeId]))
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::new(1..=self.n as NodeId, edges, vec![], vec![])
    }

    /// The digraph of a (0,0)-hypergraph whose edges all have rank (1,1).
    /// Nodes are renumbered `1..=n` in ascending id order; the renaming is
    /// returned alongside.
    pub fn from_hypergraph(g: &Hypergraph) -> Result<(Self, Vec<NodeId>)> {
        if g.rank() != Rank::new(0, 0) {
            return Err(Error::InvalidGraph(format!("expected a (0,0)-graph, got rank {}", g.rank())));
        }
        let ids = g.nodes().to_vec();
        let index = |v: NodeId| ids.binary_search(&v).expect("node declared") + 1;
        let mut arcs = Vec::with_capacity(g.edges().len());
        for e in g.edges() {
            if e.label.rank != Rank::new(1, 1) {
                return Err(Error::RankMismatch {
                    context: "digraph arcs need a (1,1) label",
                    left: Rank::new(1, 1),
                    right: e.label.rank,
                });
            }
            arcs.push((index(e.sources[0]), index(e.targets[0])));
        }
        Ok((SimpleDigraph { n: ids.len(), arcs }, ids))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Wire {
    Source(usize, usize),
    Target(usize, usize),
    Carry(usize),
    End(usize),
}

/// The permutation moving each wire of `from` to its position in `to`.
fn routing(from: &[Wire], to: &[Wire]) -> Option<MagmoidTerm> {
    let position: BTreeMap<Wire, usize> = to.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let p = Permutation::from_images(from.iter().map(|w| position[w]).collect()).expect("bijective routing");
    (!p.is_identity()).then(|| perm_term(&p))
}

/// A sum of parts, or `None` when every part is a unit.
fn layer(parts: Vec<MagmoidTerm>) -> Option<MagmoidTerm> {
    let mut merged: Vec<MagmoidTerm> = Vec::with_capacity(parts.len());
    for part in parts {
        match (merged.last_mut(), part) {
            (_, MagmoidTerm::UnitE(0)) => {}
            (Some(MagmoidTerm::UnitE(a)), MagmoidTerm::UnitE(b)) => *a += b,
            (_, part) => merged.push(part),
        }
    }
    match merged.as_slice() {
        [] | [MagmoidTerm::UnitE(_)] => None,
        _ => Some(MagmoidTerm::sum_all(merged)),
    }
}

fn split(p: usize, q: usize) -> MagmoidTerm {
    if p == 1 && q == 1 {
        MagmoidTerm::UnitE(1)
    } else {
        MagmoidTerm::Iconst(p, q)
    }
}

/// A term whose graph is isomorphic to `g`, with nodes in ascending id order.
pub fn encode_graph(g: &Hypergraph) -> MagmoidTerm {
    encode_graph_with_order(g, g.nodes()).expect("node list is a valid order")
}

/// Like [`encode_graph`], with nodes laid out in the given order. Different
/// orders give different terms for the same graph.
pub fn encode_graph_with_order(g: &Hypergraph, order: &[NodeId]) -> Result<MagmoidTerm> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != g.nodes() {
        return Err(Error::InvalidGraph("node order is not a permutation of the nodes".into()));
    }
    let slot: BTreeMap<NodeId, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = order.len();

    let mut begin_occ = vec![Vec::new(); n];
    for (i, v) in g.begin().iter().enumerate() {
        begin_occ[slot[v]].push(i);
    }
    let mut end_occ = vec![Vec::new(); n];
    for (i, v) in g.end().iter().enumerate() {
        end_occ[slot[v]].push(i);
    }
    let mut sources = vec![Vec::new(); n];
    let mut targets = vec![Vec::new(); n];
    for (e, edge) in g.edges().iter().enumerate() {
        for (j, v) in edge.sources.iter().enumerate() {
            sources[slot[v]].push(Wire::Source(e, j));
        }
        for (j, v) in edge.targets.iter().enumerate() {
            targets[slot[v]].push(Wire::Target(e, j));
        }
    }
    let carry: Vec<bool> = (0..n).map(|i| !targets[i].is_empty() || !end_occ[i].is_empty()).collect();
    let carried: Vec<usize> = (0..n).filter(|&i| carry[i]).collect();

    let mut stages: Vec<Option<MagmoidTerm>> = Vec::new();

    // 1. group the begin wires by node, then merge or create
    let mut grouped: Vec<usize> = (0..g.begin().len()).collect();
    grouped.sort_by_key(|&i| (slot[&g.begin()[i]], i));
    let mut images = vec![0; grouped.len()];
    for (to, &from) in grouped.iter().enumerate() {
        images[from] = to;
    }
    let p = Permutation::from_images(images)?;
    stages.push((!p.is_identity()).then(|| perm_term(&p)));
    stages.push(layer(begin_occ.iter().map(|b| split(b.len(), 1)).collect()));

    // 2. fan-out
    let mut fanned = Vec::new();
    let mut parts = Vec::with_capacity(n);
    for i in 0..n {
        let c = sources[i].len() + usize::from(carry[i]);
        parts.push(split(1, c));
        fanned.extend(sources[i].iter().copied());
        if carry[i] {
            fanned.push(Wire::Carry(i));
        }
    }
    stages.push(layer(parts));

    // 3. copies onto edge sources
    let mut edge_inputs: Vec<Wire> = g
        .edges()
        .iter()
        .enumerate()
        .flat_map(|(e, edge)| (0..edge.sources.len()).map(move |j| Wire::Source(e, j)))
        .collect();
    edge_inputs.extend(carried.iter().map(|&i| Wire::Carry(i)));
    stages.push(routing(&fanned, &edge_inputs));

    // 4. edges
    let mut parts: Vec<MagmoidTerm> = g.edges().iter().map(|e| MagmoidTerm::Atom(e.label.clone())).collect();
    parts.push(MagmoidTerm::UnitE(carried.len()));
    stages.push(layer(parts));

    // 5. targets next to their carry
    let mut edge_outputs: Vec<Wire> = g
        .edges()
        .iter()
        .enumerate()
        .flat_map(|(e, edge)| (0..edge.targets.len()).map(move |j| Wire::Target(e, j)))
        .collect();
    edge_outputs.extend(carried.iter().map(|&i| Wire::Carry(i)));
    let gathered: Vec<Wire> = carried
        .iter()
        .flat_map(|&i| std::iter::once(Wire::Carry(i)).chain(targets[i].iter().copied()))
        .collect();
    stages.push(routing(&edge_outputs, &gathered));

    // 6. fan-in
    stages.push(layer(carried.iter().map(|&i| split(1 + targets[i].len(), 1)).collect()));

    // 7. end occurrences, then end order
    stages.push(layer(carried.iter().map(|&i| split(1, end_occ[i].len())).collect()));
    let spread: Vec<Wire> = carried
        .iter()
        .flat_map(|&i| end_occ[i].iter().map(|&k| Wire::End(k)))
        .collect();
    let ordered: Vec<Wire> = (0..g.end().len()).map(Wire::End).collect();
    stages.push(routing(&spread, &ordered));

    Ok(MagmoidTerm::prod_all(stages.into_iter().flatten()).unwrap_or(MagmoidTerm::UnitE(g.begin().len())))
}

/// [`encode_graph`] after checking every edge label against `alphabet`.
pub fn encode_graph_checked(g: &Hypergraph, alphabet: &Alphabet) -> Result<MagmoidTerm> {
    for e in g.edges() {
        match alphabet.rank_of(&e.label.name) {
            None => return Err(Error::UnknownSymbol(e.label.name.clone())),
            Some(r) if r != e.label.rank => {
                return Err(Error::RankMismatch {
                    context: "edge label vs alphabet",
                    left: r,
                    right: e.label.rank,
                })
            }
            Some(_) => {}
        }
    }
    Ok(encode_graph(g))
}

/// Encodes a digraph with every arc labeled `label`, which must be (1,1).
pub fn encode_digraph(d: &SimpleDigraph, label: &AtomSymbol) -> Result<MagmoidTerm> {
    Ok(encode_graph(&d.to_hypergraph(label)?))
}
