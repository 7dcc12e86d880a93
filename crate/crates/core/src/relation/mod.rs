//! The relational magmoid `Rel(Q)` and relational graphoids over it.
//!
//! A [`StateRelation`] of rank (m,n) is an explicit set of pairs of state
//! words of lengths m and n. Composition is relational composition in
//! diagrammatic order; the sum pairs words by concatenation.

mod axioms;
mod dset;

use std::collections::BTreeSet;
use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result, PAIR_BUDGET};
use crate::term::{AtomSymbol, MagmoidTerm, Rank};

pub use axioms::{check_axioms, AxiomEntry, AxiomReport};
pub use dset::{tsrel_dset, DSet, RelationalGraphoid};

pub type State = u8;

/// A finite, nonempty, ordered state set `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateSet(Vec<State>);

impl StateSet {
    pub fn new(states: impl IntoIterator<Item = State>) -> Result<Self> {
        let set: BTreeSet<State> = states.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyStateSet);
        }
        Ok(StateSet(set.into_iter().collect()))
    }

    /// `{1, …, k}`.
    pub fn range(k: usize) -> Result<Self> {
        if k > State::MAX as usize {
            return Err(Error::InvalidAutomaton(format!("at most {} states are supported", State::MAX)));
        }
        Self::new(1..=k as State)
    }

    pub fn states(&self) -> &[State] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, q: State) -> bool {
        self.0.binary_search(&q).is_ok()
    }

    /// `|Q|^n`, saturating.
    pub fn word_count(&self, n: usize) -> u128 {
        (self.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
    }

    /// All words of length `n`, in lexicographic order.
    pub fn words(&self, n: usize) -> Result<Vec<StateWord>> {
        let count = self.word_count(n);
        if count > PAIR_BUDGET {
            return Err(Error::budget(count));
        }
        let mut out = vec![StateWord::empty()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|w| {
                    self.0.iter().map(move |&q| {
                        let mut v = w.0.clone();
                        v.push(q);
                        StateWord(v)
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// Whether every state prints as a single character, so words can be
    /// written without separators.
    pub fn compact(&self) -> bool {
        self.0.iter().all(|&q| q < 10)
    }

    pub fn format_word(&self, w: &StateWord) -> String {
        w.format(self.compact())
    }

    /// Reads a word: whitespace-separated states, or (when [`Self::compact`])
    /// one digit per state. The empty string is `ε`.
    pub fn parse_word(&self, text: &str) -> Result<StateWord> {
        let text = text.trim();
        let tokens: Vec<String> = if text.contains(char::is_whitespace) || !self.compact() {
            text.split_whitespace().map(str::to_string).collect()
        } else {
            text.chars().map(String::from).collect()
        };
        let word = tokens
            .iter()
            .map(|t| {
                t.parse::<State>()
                    .ok()
                    .filter(|q| self.contains(*q))
                    .ok_or_else(|| Error::InvalidAutomaton(format!("`{t}` is not a state")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(StateWord(word))
    }
}

/// A word over `Q`; the empty word is `ε`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StateWord(pub Vec<State>);

impl StateWord {
    pub fn empty() -> Self {
        StateWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn states(&self) -> &[State] {
        &self.0
    }

    pub fn concat(&self, other: &StateWord) -> StateWord {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        StateWord(v)
    }

    fn format(&self, compact: bool) -> String {
        let parts: Vec<String> = self.0.iter().map(|q| q.to_string()).collect();
        parts.join(if compact { "" } else { " " })
    }
}

impl From<Vec<State>> for StateWord {
    fn from(v: Vec<State>) -> Self {
        StateWord(v)
    }
}

impl<const N: usize> From<[State; N]> for StateWord {
    fn from(v: [State; N]) -> Self {
        StateWord(v.to_vec())
    }
}

impl fmt::Display for StateWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.format(self.0.iter().all(|&q| q < 10)))
        }
    }
}

pub type WordPair = (StateWord, StateWord);

/// An element of `Rel_{m,n}(Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateRelation {
    rank: Rank,
    pairs: BTreeSet<WordPair>,
}

impl StateRelation {
    pub fn new(rank: Rank, pairs: impl IntoIterator<Item = WordPair>) -> Result<Self> {
        let pairs: BTreeSet<WordPair> = pairs.into_iter().collect();
        if let Some((u, v)) = pairs.iter().find(|(u, v)| u.len() != rank.m || v.len() != rank.n) {
            return Err(Error::RankMismatch {
                context: "pair length vs declared relation rank",
                left: rank,
                right: Rank::new(u.len(), v.len()),
            });
        }
        Ok(StateRelation { rank, pairs })
    }

    pub fn empty(rank: Rank) -> Self {
        StateRelation {
            rank,
            pairs: BTreeSet::new(),
        }
    }

    pub(crate) fn from_set_unchecked(rank: Rank, pairs: BTreeSet<WordPair>) -> Self {
        StateRelation { rank, pairs }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn pairs(&self) -> &BTreeSet<WordPair> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, u: &StateWord, v: &StateWord) -> bool {
        self.pairs.contains(&(u.clone(), v.clone()))
    }

    /// Output words related to `u`.
    pub fn image_of<'a>(&'a self, u: &'a StateWord) -> impl Iterator<Item = &'a StateWord> + 'a {
        let lo = (u.clone(), StateWord::empty());
        self.pairs
            .range(lo..)
            .take_while(move |(x, _)| x == u)
            .map(|(_, v)| v)
    }

    /// Some pair in exactly one of the two relations.
    pub fn difference_witness(&self, other: &StateRelation) -> Option<WordPair> {
        self.pairs
            .symmetric_difference(&other.pairs)
            .next()
            .cloned()
    }
}

/// `R ∘ S = {(u,w) | ∃v. (u,v) ∈ R, (v,w) ∈ S}`.
pub fn compose(r: &StateRelation, s: &StateRelation) -> Result<StateRelation> {
    if r.rank.n != s.rank.m {
        return Err(Error::RankMismatch {
            context: "relation composition",
            left: r.rank,
            right: s.rank,
        });
    }
    let mut by_input: FxHashMap<&StateWord, Vec<&StateWord>> = FxHashMap::default();
    for (v, w) in &s.pairs {
        by_input.entry(v).or_default().push(w);
    }
    let mut out = BTreeSet::new();
    for (u, v) in &r.pairs {
        if let Some(ws) = by_input.get(v) {
            for &w in ws {
                out.insert((u.clone(), w.clone()));
                if out.len() as u128 > PAIR_BUDGET {
                    return Err(Error::budget(out.len() as u128));
                }
            }
        }
    }
    Ok(StateRelation {
        rank: Rank::new(r.rank.m, s.rank.n),
        pairs: out,
    })
}

/// `R □ S = {(u₁u₂, v₁v₂) | (u₁,v₁) ∈ R, (u₂,v₂) ∈ S}`.
pub fn sum_rel(r: &StateRelation, s: &StateRelation) -> Result<StateRelation> {
    let size = r.len() as u128 * s.len() as u128;
    if size > PAIR_BUDGET {
        return Err(Error::budget(size));
    }
    let pairs = r
        .pairs
        .iter()
        .flat_map(|(u1, v1)| s.pairs.iter().map(move |(u2, v2)| (u1.concat(u2), v1.concat(v2))))
        .collect();
    Ok(StateRelation {
        rank: Rank::new(r.rank.m + s.rank.m, r.rank.n + s.rank.n),
        pairs,
    })
}

/// The unit `e_n`: identity on `Qⁿ`.
pub fn unit_e(q: &StateSet, n: usize) -> Result<StateRelation> {
    Ok(StateRelation {
        rank: Rank::new(n, n),
        pairs: q.words(n)?.into_iter().map(|w| (w.clone(), w)).collect(),
    })
}

/// `{(gᵖ, g^q) | g ∈ Q}`: the relation of a single node seen `p` times at
/// the input and `q` times at the output.
pub fn diagonal(q: &StateSet, p: usize, out: usize) -> StateRelation {
    StateRelation {
        rank: Rank::new(p, out),
        pairs: q
            .states()
            .iter()
            .map(|&g| (StateWord(vec![g; p]), StateWord(vec![g; out])))
            .collect(),
    }
}

/// Relations assigned to atoms during explicit evaluation.
pub trait AtomInterpretation {
    fn interpret(&self, symbol: &AtomSymbol) -> Option<StateRelation>;
}

impl<F: Fn(&AtomSymbol) -> Option<StateRelation>> AtomInterpretation for F {
    fn interpret(&self, symbol: &AtomSymbol) -> Option<StateRelation> {
        self(symbol)
    }
}

/// No atoms at all; evaluating a term containing one fails.
pub struct NoAtoms;

impl AtomInterpretation for NoAtoms {
    fn interpret(&self, _: &AtomSymbol) -> Option<StateRelation> {
        None
    }
}

impl RelationalGraphoid {
    /// Bottom-up evaluation of `t` with explicit [`compose`] and [`sum_rel`].
    ///
    /// `Π` ↦ `s`, the five D-constants ↦ their `d`, any other `I_{p,q}` ↦
    /// [`diagonal`], `e_n` ↦ [`unit_e`].
    pub fn evaluate(&self, t: &MagmoidTerm, atoms: &dyn AtomInterpretation) -> Result<StateRelation> {
        t.rank()?;
        self.eval_rec(t, atoms)
    }

    fn eval_rec(&self, t: &MagmoidTerm, atoms: &dyn AtomInterpretation) -> Result<StateRelation> {
        match t {
            MagmoidTerm::Atom(sym) => {
                let r = atoms
                    .interpret(sym)
                    .ok_or_else(|| Error::UnknownSymbol(sym.name.clone()))?;
                if r.rank != sym.rank {
                    return Err(Error::RankMismatch {
                        context: "atom interpretation",
                        left: sym.rank,
                        right: r.rank,
                    });
                }
                Ok(r)
            }
            MagmoidTerm::UnitE(n) => unit_e(&self.states, *n),
            MagmoidTerm::Pi => Ok(self.d.s.clone()),
            MagmoidTerm::Iconst(p, q) => Ok(self
                .d
                .get(*p, *q)
                .cloned()
                .unwrap_or_else(|| diagonal(&self.states, *p, *q))),
            MagmoidTerm::Prod(a, b) => compose(&self.eval_rec(a, atoms)?, &self.eval_rec(b, atoms)?),
            MagmoidTerm::SumBox(a, b) => sum_rel(&self.eval_rec(a, atoms)?, &self.eval_rec(b, atoms)?),
        }
    }
}
