//! Nondeterministic relational graph automata.
//!
//! An automaton `(Σ, Q, Rel(Q), δ, I, T)` assigns a relation to every edge
//! label. The extension `δ̄` to terms maps `Π` to `s`, `I_{κλ}` to `d_{κλ}`,
//! units to units, products to composition and sums to sums; a graph is
//! accepted when `δ̄` meets `I⁽ᵐ⁾ × T⁽ⁿ⁾`.

mod eval;
mod json;
mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::encoder::encode_graph;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::relation::{RelationalGraphoid, StateRelation, StateSet, StateWord};
use crate::term::{Alphabet, AtomSymbol, MagmoidTerm};

use eval::{Compiler, Runner, Table, Word};

pub use json::AutomatonJson;
pub use search::{check_run, run_search, RunWitness};

/// Initial or final words. Only finite sets and `Q*` itself are supported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordSet {
    Explicit(BTreeSet<StateWord>),
    Universal,
}

impl WordSet {
    /// `{ε}`.
    pub fn epsilon() -> Self {
        WordSet::Explicit(BTreeSet::from([StateWord::empty()]))
    }

    pub fn contains(&self, w: &StateWord) -> bool {
        match self {
            WordSet::Explicit(ws) => ws.contains(w),
            WordSet::Universal => true,
        }
    }

    /// The words of length `n`: `self ∩ Qⁿ`.
    pub fn of_length(&self, q: &StateSet, n: usize) -> Result<Vec<StateWord>> {
        match self {
            WordSet::Explicit(ws) => Ok(ws.iter().filter(|w| w.len() == n).cloned().collect()),
            WordSet::Universal => q.words(n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphAutomaton {
    alphabet: Alphabet,
    graphoid: RelationalGraphoid,
    delta: BTreeMap<String, StateRelation>,
    initial: WordSet,
    terminal: WordSet,
}

impl GraphAutomaton {
    /// An automaton over `TSRel(Q)`.
    pub fn new(
        states: StateSet,
        delta: impl IntoIterator<Item = (AtomSymbol, StateRelation)>,
        initial: WordSet,
        terminal: WordSet,
    ) -> Result<Self> {
        Self::with_graphoid(RelationalGraphoid::tsrel(states), delta, initial, terminal)
    }

    /// An automaton over an arbitrary D-set. Whether the D-set satisfies the
    /// graph equations is not checked here.
    pub fn with_graphoid(
        graphoid: RelationalGraphoid,
        delta: impl IntoIterator<Item = (AtomSymbol, StateRelation)>,
        initial: WordSet,
        terminal: WordSet,
    ) -> Result<Self> {
        let q = &graphoid.states;
        let mut alphabet = Alphabet::new();
        let mut table = BTreeMap::new();
        for (symbol, r) in delta {
            if r.rank() != symbol.rank {
                return Err(Error::RankMismatch {
                    context: "transition relation vs symbol",
                    left: symbol.rank,
                    right: r.rank(),
                });
            }
            let foreign = r
                .pairs()
                .iter()
                .flat_map(|(u, v)| u.states().iter().chain(v.states()))
                .find(|&&g| !q.contains(g));
            if let Some(g) = foreign {
                return Err(Error::InvalidAutomaton(format!("δ({}) uses state {g} outside Q", symbol.name)));
            }
            alphabet.insert(symbol.clone())?;
            if table.insert(symbol.name.clone(), r).is_some() {
                return Err(Error::InvalidAutomaton(format!("δ({}) given twice", symbol.name)));
            }
        }
        for ws in [&initial, &terminal] {
            if let WordSet::Explicit(words) = ws {
                if let Some(g) = words.iter().flat_map(|w| w.states()).find(|&&g| !q.contains(g)) {
                    return Err(Error::InvalidAutomaton(format!("boundary word uses state {g} outside Q")));
                }
            }
        }
        Ok(GraphAutomaton {
            alphabet,
            graphoid,
            delta: table,
            initial,
            terminal,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &StateSet {
        &self.graphoid.states
    }

    pub fn graphoid(&self) -> &RelationalGraphoid {
        &self.graphoid
    }

    pub fn delta(&self, symbol: &str) -> Option<&StateRelation> {
        self.delta.get(symbol)
    }

    pub fn initial(&self) -> &WordSet {
        &self.initial
    }

    pub fn terminal(&self) -> &WordSet {
        &self.terminal
    }

    fn check_symbol(&self, s: &AtomSymbol) -> Result<()> {
        if self.alphabet.contains(s) {
            Ok(())
        } else if self.alphabet.rank_of(&s.name).is_some() {
            Err(Error::RankMismatch {
                context: "symbol used with a rank other than declared",
                left: self.alphabet.rank_of(&s.name).expect("declared"),
                right: s.rank,
            })
        } else {
            Err(Error::UnknownSymbol(s.name.clone()))
        }
    }

    fn propagate(&self, t: &MagmoidTerm, inputs: Vec<StateWord>) -> Result<Vec<(StateWord, StateWord)>> {
        t.rank()?;
        for s in t.atoms() {
            self.check_symbol(s)?;
        }
        let mut tables: BTreeMap<&str, Arc<Table>> = BTreeMap::new();
        for (name, r) in &self.delta {
            tables.insert(name, Arc::new(Table::new(r)));
        }
        let lookup = |name: &str| {
            tables
                .get(name)
                .cloned()
                .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
        };
        let plan = Compiler::new(&self.graphoid, &lookup).compile(t)?;
        let frontier: Vec<(u32, Word)> = inputs
            .iter()
            .enumerate()
            .map(|(i, u)| (i as u32, u.0.clone()))
            .collect();
        let runner = Runner {
            states: &self.graphoid.states,
        };
        let out = runner.image(&plan, frontier)?;
        Ok(out
            .into_iter()
            .map(|(o, v)| (inputs[o as usize].clone(), StateWord(v)))
            .collect())
    }

    /// `δ̄(t)`, the graphoid morphism extending `δ`, applied to `t`.
    pub fn extend_delta(&self, t: &MagmoidTerm) -> Result<StateRelation> {
        let rank = t.rank()?;
        let inputs = self.graphoid.states.words(rank.m)?;
        let pairs = self.propagate(t, inputs)?;
        StateRelation::new(rank, pairs)
    }

    /// Whether `δ̄(t) ∩ (I⁽ᵐ⁾ × T⁽ⁿ⁾)` is nonempty.
    pub fn accepts(&self, t: &MagmoidTerm) -> Result<bool> {
        let rank = t.rank()?;
        let inputs = self.initial.of_length(&self.graphoid.states, rank.m)?;
        if inputs.is_empty() {
            // still validate the term
            for s in t.atoms() {
                self.check_symbol(s)?;
            }
            return Ok(false);
        }
        let pairs = self.propagate(t, inputs)?;
        Ok(pairs.iter().any(|(_, v)| self.terminal.contains(v)))
    }

    /// Membership of a graph in the behavior, decided through a term
    /// encoding of the graph and [`Self::accepts`].
    pub fn behavior_member(&self, g: &Hypergraph) -> Result<bool> {
        for e in g.edges() {
            self.check_symbol(&e.label)?;
        }
        self.accepts(&encode_graph(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{compose, sum_rel, unit_e, NoAtoms};
    use crate::term::{parse_term, Rank};

    fn coloring(k: usize) -> GraphAutomaton {
        let q = StateSet::range(k).unwrap();
        let pairs: Vec<_> = q
            .states()
            .iter()
            .flat_map(|&i| q.states().iter().filter(move |&&j| j != i).map(move |&j| (StateWord(vec![i]), StateWord(vec![j]))))
            .collect();
        GraphAutomaton::new(
            q,
            [(AtomSymbol::new("a", 1, 1), StateRelation::new(Rank::new(1, 1), pairs).unwrap())],
            WordSet::epsilon(),
            WordSet::epsilon(),
        )
        .unwrap()
    }

    const G: &str = "(prod (i 0 1) (sym a 1 1) (i 1 2) (box (sym a 1 1) (sym a 1 1)) \
                     (box (sym a 1 1) e) (i 2 1) (i 1 0))";

    #[test]
    fn units_map_to_units() {
        let a = coloring(3);
        assert_eq!(a.extend_delta(&MagmoidTerm::UnitE(1)).unwrap(), unit_e(a.states(), 1).unwrap());
        assert_eq!(a.extend_delta(&MagmoidTerm::UnitE(0)).unwrap(), unit_e(a.states(), 0).unwrap());
    }

    #[test]
    fn graph_g_under_three_colors() {
        let a = coloring(3);
        let r = a.extend_delta(&parse_term(G).unwrap()).unwrap();
        assert_eq!(r.rank(), Rank::new(0, 0));
        assert_eq!(r.len(), 1);
        assert!(a.accepts(&parse_term(G).unwrap()).unwrap());
        assert!(!coloring(2).accepts(&parse_term(G).unwrap()).unwrap());
    }

    #[test]
    fn unknown_symbols_and_bad_ranks() {
        let a = coloring(2);
        assert_eq!(
            a.extend_delta(&MagmoidTerm::atom("b", 1, 1)),
            Err(Error::UnknownSymbol("b".into()))
        );
        assert!(matches!(
            a.extend_delta(&MagmoidTerm::atom("a", 2, 1)),
            Err(Error::RankMismatch { .. })
        ));
        assert!(matches!(
            a.extend_delta(&MagmoidTerm::prod(MagmoidTerm::Pi, MagmoidTerm::UnitE(1))),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn empty_initial_set_rejects_everything() {
        let base = coloring(2);
        let a = GraphAutomaton::new(
            base.states().clone(),
            [(AtomSymbol::new("a", 1, 1), base.delta("a").unwrap().clone())],
            WordSet::Explicit(BTreeSet::new()),
            WordSet::Universal,
        )
        .unwrap();
        for t in ["(en 0)", "e", "(prod (i 0 1) (i 1 0))"] {
            assert!(!a.accepts(&parse_term(t).unwrap()).unwrap());
        }
    }

    #[test]
    fn universal_boundaries() {
        let base = coloring(2);
        let a = GraphAutomaton::new(
            base.states().clone(),
            [(AtomSymbol::new("a", 1, 1), base.delta("a").unwrap().clone())],
            WordSet::Universal,
            WordSet::Universal,
        )
        .unwrap();
        assert!(a.accepts(&parse_term("(sym a 1 1)").unwrap()).unwrap());
        // a self-loop is never properly colored
        assert!(!a.accepts(&parse_term("(prod (i 0 1) (i 1 2) (box (sym a 1 1) e) (i 2 0))").unwrap()).unwrap());
    }

    #[test]
    fn derived_constants_are_diagonal() {
        let a = coloring(3);
        let r = a.extend_delta(&MagmoidTerm::Iconst(1, 3)).unwrap();
        let via_d = a
            .graphoid()
            .evaluate(&parse_term("(prod (i 1 2) (box e (i 1 2)))").unwrap(), &NoAtoms)
            .unwrap();
        assert_eq!(r, via_d);
        assert_eq!(r.len(), 3);
    }

    #[test]
    fn agrees_with_explicit_evaluation() {
        let a = coloring(3);
        let delta = a.delta("a").unwrap().clone();
        let interpret = |_: &AtomSymbol| Some(delta.clone());
        for text in [
            G,
            "(prod (box (sym a 1 1) e) pi (box e (sym a 1 1)))",
            "(prod (i 2 1) (sym a 1 1) (i 1 2))",
            "(box (i 0 2) (sym a 1 1) (i 1 0))",
        ] {
            let t = parse_term(text).unwrap();
            assert_eq!(
                a.extend_delta(&t).unwrap(),
                a.graphoid().evaluate(&t, &interpret).unwrap(),
                "{text}"
            );
        }
        let ab = compose(&delta, &delta).unwrap();
        assert_eq!(a.extend_delta(&parse_term("(prod (sym a 1 1) (sym a 1 1))").unwrap()).unwrap(), ab);
        let par = sum_rel(&delta, &delta).unwrap();
        assert_eq!(a.extend_delta(&parse_term("(box (sym a 1 1) (sym a 1 1))").unwrap()).unwrap(), par);
    }

    #[test]
    fn dense_graphs_are_filtered_before_merging() {
        let arcs: Vec<(usize, usize)> = (1..=6).flat_map(|u| (u + 1..=6).map(move |v| (u, v))).collect();
        let k6 = crate::encoder::SimpleDigraph::new(6, arcs)
            .unwrap()
            .to_hypergraph(&AtomSymbol::new("a", 1, 1))
            .unwrap();
        assert!(!coloring(5).behavior_member(&k6).unwrap());
        assert!(coloring(6).behavior_member(&k6).unwrap());
    }
}
