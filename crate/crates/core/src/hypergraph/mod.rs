//! Concrete (m,n)-hypergraphs, the magmoid `GR(Σ)`.

mod iso;
mod json;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::term::{rank_of, AtomSymbol, MagmoidTerm, Rank};

pub use iso::isomorphic;
pub use json::HypergraphJson;

pub type NodeId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub label: AtomSymbol,
    pub sources: Vec<NodeId>,
    pub targets: Vec<NodeId>,
}

impl Edge {
    pub fn new(label: AtomSymbol, sources: Vec<NodeId>, targets: Vec<NodeId>) -> Result<Self> {
        let actual = Rank::new(sources.len(), targets.len());
        if actual != label.rank {
            return Err(Error::RankMismatch {
                context: "edge endpoints vs label",
                left: label.rank,
                right: actual,
            });
        }
        Ok(Edge { label, sources, targets })
    }

    fn relabel(&self, f: impl Fn(NodeId) -> NodeId) -> Edge {
        Edge {
            label: self.label.clone(),
            sources: self.sources.iter().map(|&v| f(v)).collect(),
            targets: self.targets.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// An (m,n)-hypergraph: nodes, labeled hyperedges with source and target
/// sequences, and begin/end sequences. Node ids may repeat in every
/// sequence. Graphs are compared up to [`isomorphic`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    nodes: Vec<NodeId>,
    edges: Vec<Edge>,
    begin: Vec<NodeId>,
    end: Vec<NodeId>,
}

impl Hypergraph {
    /// Checks that every referenced node is declared; duplicate declarations
    /// are merged.
    pub fn new(
        nodes: impl IntoIterator<Item = NodeId>,
        edges: Vec<Edge>,
        begin: Vec<NodeId>,
        end: Vec<NodeId>,
    ) -> Result<Self> {
        let nodes: BTreeSet<NodeId> = nodes.into_iter().collect();
        let missing = edges
            .iter()
            .flat_map(|e| e.sources.iter().chain(&e.targets))
            .chain(&begin)
            .chain(&end)
            .find(|v| !nodes.contains(v));
        if let Some(v) = missing {
            return Err(Error::InvalidGraph(format!("node {v} is referenced but not declared")));
        }
        for e in &edges {
            if Rank::new(e.sources.len(), e.targets.len()) != e.label.rank {
                return Err(Error::InvalidGraph(format!(
                    "edge labeled {} has {} sources and {} targets",
                    e.label,
                    e.sources.len(),
                    e.targets.len()
                )));
            }
        }
        Ok(Hypergraph {
            nodes: nodes.into_iter().collect(),
            edges,
            begin,
            end,
        })
    }

    pub fn empty() -> Self {
        Hypergraph {
            nodes: Vec::new(),
            edges: Vec::new(),
            begin: Vec::new(),
            end: Vec::new(),
        }
    }

    /// Sorted, without duplicates.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn begin(&self) -> &[NodeId] {
        &self.begin
    }

    pub fn end(&self) -> &[NodeId] {
        &self.end
    }

    pub fn rank(&self) -> Rank {
        Rank::new(self.begin.len(), self.end.len())
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    fn index_of(&self, v: NodeId) -> usize {
        self.nodes.binary_search(&v).expect("node declared")
    }

    /// Number of edge incidences (source and target occurrences) per node.
    pub fn degrees(&self) -> BTreeMap<NodeId, usize> {
        let mut deg: BTreeMap<NodeId, usize> = self.nodes.iter().map(|&v| (v, 0)).collect();
        for e in &self.edges {
            for v in e.sources.iter().chain(&e.targets) {
                *deg.get_mut(v).expect("node declared") += 1;
            }
        }
        deg
    }

    /// The same graph with nodes renamed `0..node_count` in sorted order.
    pub fn compacted(&self) -> Hypergraph {
        let f = |v: NodeId| self.index_of(v) as NodeId;
        Hypergraph {
            nodes: (0..self.nodes.len() as NodeId).collect(),
            edges: self.edges.iter().map(|e| e.relabel(f)).collect(),
            begin: self.begin.iter().map(|&v| f(v)).collect(),
            end: self.end.iter().map(|&v| f(v)).collect(),
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Graph product `G ∘ H`: the disjoint union with the i-th end node of `G`
/// identified with the i-th begin node of `H`. Identifications are closed
/// transitively, since repeated nodes in the boundaries chain them.
pub fn graph_product(g: &Hypergraph, h: &Hypergraph) -> Result<Hypergraph> {
    if g.end.len() != h.begin.len() {
        return Err(Error::RankMismatch {
            context: "graph product",
            left: g.rank(),
            right: h.rank(),
        });
    }
    let offset = g.nodes.len();
    let total = offset + h.nodes.len();
    let mut uf = UnionFind::new(total);
    for (&x, &y) in g.end.iter().zip(&h.begin) {
        uf.union(g.index_of(x), offset + h.index_of(y));
    }
    let mut fresh = vec![None; total];
    let mut next: NodeId = 0;
    let mut class = |i: usize, uf: &mut UnionFind| -> NodeId {
        let r = uf.find(i);
        *fresh[r].get_or_insert_with(|| {
            next += 1;
            next - 1
        })
    };
    let mut g_map = Vec::with_capacity(g.nodes.len());
    for i in 0..offset {
        g_map.push(class(i, &mut uf));
    }
    let mut h_map = Vec::with_capacity(h.nodes.len());
    for i in offset..total {
        h_map.push(class(i, &mut uf));
    }
    let fg = |v: NodeId| g_map[g.index_of(v)];
    let fh = |v: NodeId| h_map[h.index_of(v)];
    Ok(Hypergraph {
        nodes: (0..next).collect(),
        edges: g
            .edges
            .iter()
            .map(|e| e.relabel(fg))
            .chain(h.edges.iter().map(|e| e.relabel(fh)))
            .collect(),
        begin: g.begin.iter().map(|&v| fg(v)).collect(),
        end: h.end.iter().map(|&v| fh(v)).collect(),
    })
}

/// Graph sum `G □ H`: disjoint union, begin and end sequences concatenated.
pub fn graph_sum(g: &Hypergraph, h: &Hypergraph) -> Hypergraph {
    let g = g.compacted();
    let offset = g.nodes.len() as NodeId;
    let h = h.compacted();
    let shift = |v: NodeId| v + offset;
    Hypergraph {
        nodes: (0..offset + h.nodes.len() as NodeId).collect(),
        edges: g
            .edges
            .iter()
            .cloned()
            .chain(h.edges.iter().map(|e| e.relabel(shift)))
            .collect(),
        begin: g.begin.iter().copied().chain(h.begin.iter().map(|&v| shift(v))).collect(),
        end: g.end.iter().copied().chain(h.end.iter().map(|&v| shift(v))).collect(),
    }
}

/// The elementary graphs generating `GR(Σ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Elementary {
    /// `E_n`: n nodes, begin = end = x₁⋯x_n.
    Unit(usize),
    /// `Π`: two nodes, begin xy, end yx.
    Pi,
    /// `I_{p,q}`: one node, p times in begin and q times in end.
    Single(usize, usize),
    /// One σ-labeled edge with m + n distinct nodes.
    Atom(AtomSymbol),
}

pub fn elementary(kind: &Elementary) -> Hypergraph {
    match kind {
        Elementary::Unit(n) => {
            let xs: Vec<NodeId> = (0..*n as NodeId).collect();
            Hypergraph {
                nodes: xs.clone(),
                edges: Vec::new(),
                begin: xs.clone(),
                end: xs,
            }
        }
        Elementary::Pi => Hypergraph {
            nodes: vec![0, 1],
            edges: Vec::new(),
            begin: vec![0, 1],
            end: vec![1, 0],
        },
        Elementary::Single(p, q) => Hypergraph {
            nodes: vec![0],
            edges: Vec::new(),
            begin: vec![0; *p],
            end: vec![0; *q],
        },
        Elementary::Atom(sigma) => {
            let Rank { m, n } = sigma.rank;
            let sources: Vec<NodeId> = (0..m as NodeId).collect();
            let targets: Vec<NodeId> = (m as NodeId..(m + n) as NodeId).collect();
            Hypergraph {
                nodes: (0..(m + n) as NodeId).collect(),
                edges: vec![Edge {
                    label: sigma.clone(),
                    sources: sources.clone(),
                    targets: targets.clone(),
                }],
                begin: sources,
                end: targets,
            }
        }
    }
}

/// Evaluates a term in `GR(Σ)`.
pub fn eval_graph(t: &MagmoidTerm) -> Result<Hypergraph> {
    rank_of(t)?;
    eval_unchecked(t)
}

fn eval_unchecked(t: &MagmoidTerm) -> Result<Hypergraph> {
    Ok(match t {
        MagmoidTerm::Atom(s) => elementary(&Elementary::Atom(s.clone())),
        MagmoidTerm::UnitE(n) => elementary(&Elementary::Unit(*n)),
        MagmoidTerm::Pi => elementary(&Elementary::Pi),
        MagmoidTerm::Iconst(p, q) => elementary(&Elementary::Single(*p, *q)),
        MagmoidTerm::Prod(a, b) => graph_product(&eval_unchecked(a)?, &eval_unchecked(b)?)?,
        MagmoidTerm::SumBox(a, b) => graph_sum(&eval_unchecked(a)?, &eval_unchecked(b)?),
    })
}
