//! Backtracking isomorphism test for small hypergraphs.

use std::collections::{BTreeMap, HashMap};

use super::{Hypergraph, NodeId};
use crate::term::AtomSymbol;

/// Everything about a node that an isomorphism must preserve locally.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Signature {
    begin_positions: Vec<usize>,
    end_positions: Vec<usize>,
    /// (label, is_target, position within the edge's sequence)
    incidences: Vec<(AtomSymbol, bool, usize)>,
}

fn signatures(g: &Hypergraph) -> Vec<Signature> {
    let mut sig = vec![
        Signature {
            begin_positions: Vec::new(),
            end_positions: Vec::new(),
            incidences: Vec::new(),
        };
        g.nodes.len()
    ];
    for (i, &v) in g.begin.iter().enumerate() {
        sig[g.index_of(v)].begin_positions.push(i);
    }
    for (i, &v) in g.end.iter().enumerate() {
        sig[g.index_of(v)].end_positions.push(i);
    }
    for e in &g.edges {
        for (is_target, seq) in [(false, &e.sources), (true, &e.targets)] {
            for (pos, &v) in seq.iter().enumerate() {
                sig[g.index_of(v)].incidences.push((e.label.clone(), is_target, pos));
            }
        }
    }
    for s in &mut sig {
        s.incidences.sort();
    }
    sig
}

type EdgeKey = (AtomSymbol, Vec<usize>, Vec<usize>);

struct Search<'a> {
    g: &'a Hypergraph,
    candidates: Vec<Vec<usize>>,
    order: Vec<usize>,
    /// edges of `g` (by index) that become fully mapped at each step
    completed_at: Vec<Vec<usize>>,
    available: HashMap<EdgeKey, usize>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn edge_key(&self, edge: usize) -> EdgeKey {
        let e = &self.g.edges[edge];
        let f = |v: &NodeId| self.map[self.g.index_of(*v)].expect("mapped");
        (
            e.label.clone(),
            e.sources.iter().map(f).collect(),
            e.targets.iter().map(f).collect(),
        )
    }

    /// Consumes the images of `edges`; on failure nothing stays consumed.
    fn consume(&mut self, edges: &[usize]) -> bool {
        for (done, &edge) in edges.iter().enumerate() {
            let key = self.edge_key(edge);
            match self.available.get_mut(&key) {
                Some(c) if *c > 0 => *c -= 1,
                _ => {
                    self.release(&edges[..done]);
                    return false;
                }
            }
        }
        true
    }

    fn release(&mut self, edges: &[usize]) {
        for &edge in edges {
            let key = self.edge_key(edge);
            *self.available.get_mut(&key).expect("consumed before") += 1;
        }
    }

    fn extend(&mut self, step: usize) -> bool {
        if step == self.order.len() {
            return true;
        }
        let v = self.order[step];
        let done = std::mem::take(&mut self.completed_at[step + 1]);
        let mut found = false;
        for ci in 0..self.candidates[v].len() {
            let w = self.candidates[v][ci];
            if self.used[w] {
                continue;
            }
            self.map[v] = Some(w);
            self.used[w] = true;
            if self.consume(&done) {
                if self.extend(step + 1) {
                    found = true;
                    break;
                }
                self.release(&done);
            }
            self.map[v] = None;
            self.used[w] = false;
        }
        self.completed_at[step + 1] = done;
        found
    }
}

/// Returns a node bijection from `g` to `h` preserving edges (label, source
/// and target sequences), begin and end, or `None` if there is none.
///
/// Plain backtracking with signature pruning; meant for graphs of a few
/// dozen nodes.
pub fn isomorphic(g: &Hypergraph, h: &Hypergraph) -> Option<BTreeMap<NodeId, NodeId>> {
    if g.nodes.len() != h.nodes.len()
        || g.edges.len() != h.edges.len()
        || g.begin.len() != h.begin.len()
        || g.end.len() != h.end.len()
    {
        return None;
    }
    let (sg, sh) = (signatures(g), signatures(h));
    let mut sorted_g = sg.clone();
    let mut sorted_h = sh.clone();
    sorted_g.sort();
    sorted_h.sort();
    if sorted_g != sorted_h {
        return None;
    }

    let n = g.nodes.len();
    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    // boundary sequences pin their nodes
    for (gs, hs) in [(&g.begin, &h.begin), (&g.end, &h.end)] {
        for (&x, &y) in gs.iter().zip(hs.iter()) {
            let (i, j) = (g.index_of(x), h.index_of(y));
            match map[i] {
                Some(k) if k != j => return None,
                Some(_) => {}
                None => {
                    if used[j] {
                        return None;
                    }
                    map[i] = Some(j);
                    used[j] = true;
                }
            }
        }
    }
    if (0..n).any(|i| map[i].is_some_and(|j| sg[i] != sh[j])) {
        return None;
    }

    let mut by_sig: HashMap<&Signature, Vec<usize>> = HashMap::new();
    for (j, s) in sh.iter().enumerate() {
        by_sig.entry(s).or_default().push(j);
    }
    let candidates: Vec<Vec<usize>> = sg
        .iter()
        .map(|s| by_sig.get(s).cloned().unwrap_or_default())
        .collect();

    // Unpinned nodes: fewest candidates first, then most incidences.
    let mut order: Vec<usize> = (0..n).filter(|&i| map[i].is_none()).collect();
    order.sort_by_key(|&i| (candidates[i].len(), std::cmp::Reverse(sg[i].incidences.len()), i));
    let mut step_of = vec![0usize; n];
    for (step, &i) in order.iter().enumerate() {
        step_of[i] = step + 1;
    }
    let mut completed_at = vec![Vec::new(); order.len() + 1];
    for (ei, e) in g.edges.iter().enumerate() {
        let last = e
            .sources
            .iter()
            .chain(&e.targets)
            .map(|&v| step_of[g.index_of(v)])
            .max()
            .unwrap_or(0);
        completed_at[last].push(ei);
    }

    let mut available: HashMap<EdgeKey, usize> = HashMap::new();
    for e in &h.edges {
        let f = |v: &NodeId| h.index_of(*v);
        let key = (
            e.label.clone(),
            e.sources.iter().map(f).collect(),
            e.targets.iter().map(f).collect(),
        );
        *available.entry(key).or_default() += 1;
    }

    let pinned_edges = std::mem::take(&mut completed_at[0]);
    let mut search = Search {
        g,
        candidates,
        order,
        completed_at,
        available,
        map,
        used,
    };
    if !search.consume(&pinned_edges) || !search.extend(0) {
        return None;
    }
    Some(
        search
            .map
            .iter()
            .enumerate()
            .map(|(i, j)| (g.nodes[i], h.nodes[j.expect("total")]))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{elementary, graph_sum, Edge, Elementary};

    fn a() -> AtomSymbol {
        AtomSymbol::new("a", 1, 1)
    }

    fn digraph(n: u32, arcs: &[(u32, u32)]) -> Hypergraph {
        Hypergraph::new(
            1..=n,
            arcs.iter()
                .map(|&(s, t)| Edge::new(a(), vec![s], vec![t]).unwrap())
                .collect(),
            vec![],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn identity_on_itself() {
        let g = digraph(4, &[(1, 2), (2, 3), (2, 4), (3, 4)]);
        let iso = isomorphic(&g, &g).unwrap();
        // only automorphism respecting arc directions is the identity
        assert!(iso.iter().all(|(x, y)| x == y));
    }

    #[test]
    fn unit_sum_matches_unit() {
        let e2 = elementary(&Elementary::Unit(2));
        let e1 = elementary(&Elementary::Unit(1));
        assert!(isomorphic(&e2, &graph_sum(&e1, &e1)).is_some());
    }

    #[test]
    fn swap_is_not_the_unit() {
        let pi = elementary(&Elementary::Pi);
        let e2 = elementary(&Elementary::Unit(2));
        assert!(isomorphic(&pi, &e2).is_none());
    }

    #[test]
    fn direction_and_multiplicity_matter() {
        let path = digraph(3, &[(1, 2), (2, 3)]);
        let fork = digraph(3, &[(1, 2), (3, 2)]);
        assert!(isomorphic(&path, &fork).is_none());
        let relabeled = digraph(3, &[(3, 1), (2, 3)]);
        let iso = isomorphic(&path, &relabeled).unwrap();
        assert_eq!(iso[&1], 2);
        assert_eq!(iso[&2], 3);
        assert_eq!(iso[&3], 1);
        let doubled = digraph(2, &[(1, 2), (1, 2)]);
        let opposite = digraph(2, &[(1, 2), (2, 1)]);
        assert!(isomorphic(&doubled, &opposite).is_none());
        assert!(isomorphic(&doubled, &digraph(2, &[(2, 1), (2, 1)])).is_some());
    }

    #[test]
    fn hyperedge_positions_matter() {
        let b = AtomSymbol::new("b", 2, 0);
        let g = Hypergraph::new([0, 1], vec![Edge::new(b.clone(), vec![0, 1], vec![]).unwrap()], vec![0], vec![])
            .unwrap();
        let h = Hypergraph::new([0, 1], vec![Edge::new(b, vec![1, 0], vec![]).unwrap()], vec![0], vec![]).unwrap();
        assert!(isomorphic(&g, &h).is_none());
    }

    #[test]
    fn k33_orientations() {
        let arcs: Vec<(u32, u32)> = (1..=3).flat_map(|i| (4..=6).map(move |j| (i, j))).collect();
        let g = digraph(6, &arcs);
        let shuffled: Vec<(u32, u32)> = arcs.iter().rev().map(|&(s, t)| (7 - t, 7 - s)).collect();
        // reversing all arcs and mirroring ids gives the same orientation shape
        let h = digraph(6, &shuffled);
        assert!(isomorphic(&g, &h).is_some());
    }
}
