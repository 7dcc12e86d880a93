//! Direct search for a run: an assignment of states to nodes that satisfies
//! every edge's transition relation and the boundary word sets.

use std::collections::BTreeMap;

use super::{GraphAutomaton, WordSet};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeId};
use crate::relation::{State, StateWord};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunWitness {
    pub assignment: BTreeMap<NodeId, State>,
}

impl RunWitness {
    pub fn state_of(&self, node: NodeId) -> Option<State> {
        self.assignment.get(&node).copied()
    }
}

/// A table constraint on a tuple of variables. Variables may repeat.
struct Constraint {
    vars: Vec<usize>,
    allowed: Vec<Vec<usize>>,
}

struct Solver {
    domains: Vec<Vec<bool>>,
    assigned: Vec<Option<usize>>,
    constraints: Vec<Constraint>,
    watch: Vec<Vec<usize>>,
    trail: Vec<(usize, usize)>,
}

impl Solver {
    fn tuple_fits(&self, c: &Constraint, tuple: &[usize]) -> bool {
        let mut seen: Vec<(usize, usize)> = Vec::new();
        for (&v, &val) in c.vars.iter().zip(tuple) {
            let ok = match self.assigned[v] {
                Some(a) => a == val,
                None => self.domains[v][val],
            };
            if !ok {
                return false;
            }
            match seen.iter().find(|(w, _)| *w == v) {
                Some(&(_, prev)) if prev != val => return false,
                Some(_) => {}
                None => seen.push((v, val)),
            }
        }
        true
    }

    /// Removes unsupported values from the unassigned variables of every
    /// constraint watching `var`. Returns false on a wipe-out.
    fn propagate(&mut self, var: usize) -> bool {
        for ci in self.watch[var].clone() {
            let c = &self.constraints[ci];
            let mut support: BTreeMap<usize, Vec<bool>> = BTreeMap::new();
            for &v in &c.vars {
                if self.assigned[v].is_none() {
                    support.entry(v).or_insert_with(|| vec![false; self.domains[v].len()]);
                }
            }
            let mut any = false;
            for tuple in &c.allowed {
                if self.tuple_fits(c, tuple) {
                    any = true;
                    for (&v, &val) in c.vars.iter().zip(tuple) {
                        if let Some(s) = support.get_mut(&v) {
                            s[val] = true;
                        }
                    }
                }
            }
            if !any {
                return false;
            }
            for (v, s) in support {
                for (val, ok) in s.into_iter().enumerate() {
                    if !ok && self.domains[v][val] {
                        self.domains[v][val] = false;
                        self.trail.push((v, val));
                    }
                }
                if !self.domains[v].iter().any(|&b| b) {
                    return false;
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, val) = self.trail.pop().expect("trail entry");
            self.domains[v][val] = true;
        }
    }

    fn solve(&mut self, order: &[usize], depth: usize) -> bool {
        let Some(&var) = order.get(depth) else {
            return true;
        };
        for val in 0..self.domains[var].len() {
            if !self.domains[var][val] {
                continue;
            }
            let mark = self.trail.len();
            self.assigned[var] = Some(val);
            if self.propagate(var) && self.solve(order, depth + 1) {
                return true;
            }
            self.assigned[var] = None;
            self.undo_to(mark);
        }
        false
    }
}

fn boundary_tuples(ws: &WordSet, len: usize, index: &dyn Fn(State) -> usize) -> Option<Vec<Vec<usize>>> {
    match ws {
        WordSet::Universal => None,
        WordSet::Explicit(words) => Some(
            words
                .iter()
                .filter(|w| w.len() == len)
                .map(|w| w.states().iter().map(|&g| index(g)).collect())
                .collect(),
        ),
    }
}

/// Searches for a run of `a` on `g`.
///
/// Nodes are assigned in descending order of edge incidences, ties broken
/// by descending node id; states are tried in ascending order. After each
/// assignment, every constraint on the node prunes the domains of its other
/// nodes to the values that still have a supporting tuple.
pub fn run_search(a: &GraphAutomaton, g: &Hypergraph) -> Result<Option<RunWitness>> {
    if !a.graphoid().is_tsrel() {
        return Err(Error::NotTsRel);
    }
    for e in g.edges() {
        a.check_symbol(&e.label)?;
    }
    let states = a.states().states();
    let index = |s: State| states.binary_search(&s).expect("state of Q");
    let pos: BTreeMap<NodeId, usize> = g.nodes().iter().enumerate().map(|(i, &n)| (n, i)).collect();

    let mut constraints = Vec::new();
    for e in g.edges() {
        let delta = a.delta(&e.label.name).expect("checked symbol");
        let vars = e.sources.iter().chain(&e.targets).map(|n| pos[n]).collect();
        let allowed = delta
            .pairs()
            .iter()
            .map(|(u, v)| u.states().iter().chain(v.states()).map(|&s| index(s)).collect())
            .collect();
        constraints.push(Constraint { vars, allowed });
    }
    for (ws, seq) in [(a.initial(), g.begin()), (a.terminal(), g.end())] {
        if let Some(allowed) = boundary_tuples(ws, seq.len(), &index) {
            constraints.push(Constraint {
                vars: seq.iter().map(|n| pos[n]).collect(),
                allowed,
            });
        }
    }

    let n = g.node_count();
    let mut solver = Solver {
        domains: vec![vec![true; states.len()]; n],
        assigned: vec![None; n],
        constraints: Vec::new(),
        watch: vec![Vec::new(); n],
        trail: Vec::new(),
    };
    for c in constraints {
        if c.vars.is_empty() {
            if c.allowed.is_empty() {
                return Ok(None);
            }
            continue;
        }
        let ci = solver.constraints.len();
        let mut vars = c.vars.clone();
        vars.sort_unstable();
        vars.dedup();
        for v in vars {
            solver.watch[v].push(ci);
        }
        solver.constraints.push(c);
    }
    // States without support in some constraint are removed before the first
    // choice.
    for ci in 0..solver.constraints.len() {
        let c = &solver.constraints[ci];
        let mut support: BTreeMap<usize, Vec<bool>> = BTreeMap::new();
        for tuple in &c.allowed {
            if solver.tuple_fits(c, tuple) {
                for (&v, &val) in c.vars.iter().zip(tuple) {
                    support.entry(v).or_insert_with(|| vec![false; states.len()])[val] = true;
                }
            }
        }
        for &v in &c.vars {
            let s = support.get(&v);
            for val in 0..states.len() {
                if !s.is_some_and(|s| s[val]) {
                    solver.domains[v][val] = false;
                }
            }
            if !solver.domains[v].iter().any(|&b| b) {
                return Ok(None);
            }
        }
    }

    let degrees = g.degrees();
    let mut order: Vec<NodeId> = g.nodes().to_vec();
    order.sort_by(|x, y| degrees[y].cmp(&degrees[x]).then(y.cmp(x)));
    let order: Vec<usize> = order.iter().map(|n| pos[n]).collect();

    if !solver.solve(&order, 0) {
        return Ok(None);
    }
    let assignment = g
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, &node)| (node, states[solver.assigned[i].expect("complete")]))
        .collect();
    Ok(Some(RunWitness { assignment }))
}

/// Whether `w` is a run of `a` on `g`: total, within `Q`, consistent with
/// every edge's transition relation and with the boundary word sets.
pub fn check_run(a: &GraphAutomaton, g: &Hypergraph, w: &RunWitness) -> Result<bool> {
    for e in g.edges() {
        a.check_symbol(&e.label)?;
    }
    let word = |seq: &[NodeId]| -> Option<StateWord> {
        seq.iter().map(|n| w.state_of(*n)).collect::<Option<Vec<_>>>().map(StateWord)
    };
    if g.nodes().iter().any(|n| w.state_of(*n).map_or(true, |s| !a.states().contains(s))) {
        return Ok(false);
    }
    for e in g.edges() {
        let (Some(u), Some(v)) = (word(&e.sources), word(&e.targets)) else {
            return Ok(false);
        };
        if !a.delta(&e.label.name).expect("checked symbol").contains(&u, &v) {
            return Ok(false);
        }
    }
    let (Some(b), Some(t)) = (word(g.begin()), word(g.end())) else {
        return Ok(false);
    };
    Ok(a.initial().contains(&b) && a.terminal().contains(&t))
}
