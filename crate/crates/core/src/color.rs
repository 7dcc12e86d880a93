//! k-colorability through the automaton `A^k_clr`, with an exhaustive
//! oracle for cross-checking.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};

use serde::Serialize;

use crate::automaton::{run_search, GraphAutomaton, WordSet};
use crate::encoder::SimpleDigraph;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeId};
use crate::relation::{sum_rel, tsrel_dset, StateRelation, StateSet, StateWord};
use crate::term::{AtomSymbol, Rank};

/// Largest `kⁿ` the oracle will enumerate.
pub const ORACLE_LIMIT: u128 = 100_000_000;

/// Node-to-color map, colors in `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct Coloring {
    pub colors: BTreeMap<NodeId, u32>,
}

impl Coloring {
    pub fn color_of(&self, node: NodeId) -> Option<u32> {
        self.colors.get(&node).copied()
    }
}

impl FromIterator<(NodeId, u32)> for Coloring {
    fn from_iter<I: IntoIterator<Item = (NodeId, u32)>>(iter: I) -> Self {
        Coloring {
            colors: iter.into_iter().collect(),
        }
    }
}

/// `A^k_clr`: one state per color, `δ(a) = {(i,j) | i ≠ j}`, `I = T = {ε}`.
pub fn make_color_automaton(k: usize) -> Result<GraphAutomaton> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let q = StateSet::range(k)?;
    let mut pairs = Vec::with_capacity(k * (k - 1));
    for &i in q.states() {
        for &j in q.states() {
            if i != j {
                pairs.push((StateWord(vec![i]), StateWord(vec![j])));
            }
        }
    }
    let delta = StateRelation::new(Rank::new(1, 1), pairs)?;
    GraphAutomaton::new(
        q,
        [(AtomSymbol::new("a", 1, 1), delta)],
        WordSet::epsilon(),
        WordSet::epsilon(),
    )
}

/// Generators for the rotation equation over `{1..k}`: `δ(a)`, `d₂₁`, `d₁₂`,
/// `s`, and `s □ δ(a)` of rank (3,3).
pub fn standard_generators(k: usize) -> Result<Vec<StateRelation>> {
    let a = make_color_automaton(k)?;
    let delta = a.delta("a").expect("coloring symbol").clone();
    let d = tsrel_dset(a.states());
    let wide = sum_rel(&d.s, &delta)?;
    Ok(vec![delta, d.d21, d.d12, d.s, wide])
}

/// Runs `A^k_clr` on a hypergraph over `a:(1,1)` and reads the coloring off
/// the run. The coloring is checked against the graph before it is returned.
pub fn recognize(g: &Hypergraph, k: usize) -> Result<(bool, Option<Coloring>)> {
    let a = make_color_automaton(k)?;
    let Some(run) = run_search(&a, g)? else {
        return Ok((false, None));
    };
    let coloring: Coloring = run.assignment.into_iter().map(|(v, s)| (v, u32::from(s))).collect();
    let (d, ids) = SimpleDigraph::from_hypergraph(g)?;
    let renamed: Coloring = ids
        .iter()
        .enumerate()
        .map(|(i, v)| (i as NodeId + 1, coloring.colors[v]))
        .collect();
    assert!(verify_coloring(&d, &renamed)?, "run search produced an improper coloring");
    Ok((true, Some(coloring)))
}

pub fn is_k_colorable(g: &SimpleDigraph, k: usize) -> Result<(bool, Option<Coloring>)> {
    recognize(&g.to_hypergraph(&AtomSymbol::new("a", 1, 1))?, k)
}

/// Whether every arc joins two differently colored nodes.
pub fn verify_coloring(g: &SimpleDigraph, c: &Coloring) -> Result<bool> {
    for v in 1..=g.node_count() as NodeId {
        if c.color_of(v).is_none() {
            return Err(Error::IncompleteColoring(v));
        }
    }
    Ok(g.arcs().iter().all(|&(u, v)| c.color_of(u as NodeId) != c.color_of(v as NodeId)))
}

/// Exhaustive search over all `kⁿ` assignments.
pub fn oracle_k_colorable(g: &SimpleDigraph, k: usize) -> Result<bool> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    oracle_k_colorable_with_workers(g, k, workers)
}

/// [`oracle_k_colorable`] with the assignments split by the color of node 1
/// across at most `workers` threads.
pub fn oracle_k_colorable_with_workers(g: &SimpleDigraph, k: usize, workers: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let n = g.node_count();
    let total = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > ORACLE_LIMIT {
        return Err(Error::BudgetExceeded {
            needed: total,
            limit: ORACLE_LIMIT,
        });
    }
    if n == 0 {
        return Ok(true);
    }
    let arcs: Vec<(usize, usize)> = g.arcs().iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    let found = AtomicBool::new(false);
    let proper = |colors: &[usize]| arcs.iter().all(|&(u, v)| colors[u] != colors[v]);
    // Each job fixes the first node's color and counts through the rest.
    let job = |first: usize| {
        let mut colors = vec![0; n];
        colors[0] = first;
        loop {
            if found.load(Ordering::Relaxed) {
                return;
            }
            if proper(&colors) {
                found.store(true, Ordering::Relaxed);
                return;
            }
            let mut i = 1;
            loop {
                if i == n {
                    return;
                }
                colors[i] += 1;
                if colors[i] < k {
                    break;
                }
                colors[i] = 0;
                i += 1;
            }
        }
    };
    let workers = workers.clamp(1, k);
    std::thread::scope(|scope| {
        for w in 0..workers {
            let job = &job;
            scope.spawn(move || {
                for first in (w..k).step_by(workers) {
                    job(first);
                }
            });
        }
    });
    Ok(found.into_inner())
}
