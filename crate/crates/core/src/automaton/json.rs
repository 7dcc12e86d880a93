use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{GraphAutomaton, WordSet};
use crate::error::{Error, Result};
use crate::relation::{State, StateRelation, StateSet};
use crate::term::{AtomSymbol, Rank};

/// A state written either as a number or as a string of digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateJson {
    Number(State),
    Text(String),
}

impl StateJson {
    fn state(&self) -> Result<State> {
        match self {
            StateJson::Number(q) => Ok(*q),
            StateJson::Text(t) => t
                .trim()
                .parse()
                .map_err(|_| Error::InvalidAutomaton(format!("`{t}` is not a state"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum WordSetJson {
    Explicit { words: Vec<String> },
    Universal,
}

/// Wire format of an automaton. `alphabet` is optional and only needed for
/// symbols whose transition relation is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonJson {
    pub states: Vec<StateJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub alphabet: BTreeMap<String, [usize; 2]>,
    pub delta: BTreeMap<String, Vec<[String; 2]>>,
    pub initial: WordSetJson,
    #[serde(rename = "final")]
    pub terminal: WordSetJson,
}

fn word_set(q: &StateSet, ws: &WordSetJson) -> Result<WordSet> {
    Ok(match ws {
        WordSetJson::Universal => WordSet::Universal,
        WordSetJson::Explicit { words } => {
            WordSet::Explicit(words.iter().map(|w| q.parse_word(w)).collect::<Result<BTreeSet<_>>>()?)
        }
    })
}

fn word_set_json(q: &StateSet, ws: &WordSet) -> WordSetJson {
    match ws {
        WordSet::Universal => WordSetJson::Universal,
        WordSet::Explicit(words) => WordSetJson::Explicit {
            words: words.iter().map(|w| q.format_word(w)).collect(),
        },
    }
}

impl AutomatonJson {
    pub fn into_automaton(self) -> Result<GraphAutomaton> {
        let q = StateSet::new(self.states.iter().map(StateJson::state).collect::<Result<Vec<_>>>()?)?;
        let mut delta = Vec::new();
        for name in self.alphabet.keys() {
            if !self.delta.contains_key(name) {
                return Err(Error::InvalidAutomaton(format!("symbol `{name}` has no transition relation")));
            }
        }
        for (name, pairs) in &self.delta {
            let mut parsed = Vec::with_capacity(pairs.len());
            for [u, v] in pairs {
                parsed.push((q.parse_word(u)?, q.parse_word(v)?));
            }
            let rank = match (self.alphabet.get(name), parsed.first()) {
                (Some(&[m, n]), _) => Rank::new(m, n),
                (None, Some((u, v))) => Rank::new(u.len(), v.len()),
                (None, None) => {
                    return Err(Error::InvalidAutomaton(format!(
                        "rank of `{name}` unknown: empty relation and no alphabet entry"
                    )))
                }
            };
            let r = StateRelation::new(rank, parsed)?;
            delta.push((AtomSymbol::new(name.clone(), rank.m, rank.n), r));
        }
        let initial = word_set(&q, &self.initial)?;
        let terminal = word_set(&q, &self.terminal)?;
        GraphAutomaton::new(q, delta, initial, terminal)
    }
}

impl From<&GraphAutomaton> for AutomatonJson {
    fn from(a: &GraphAutomaton) -> Self {
        let q = a.states();
        AutomatonJson {
            states: q.states().iter().map(|s| StateJson::Text(s.to_string())).collect(),
            alphabet: a
                .alphabet()
                .symbols()
                .map(|s| (s.name.clone(), [s.rank.m, s.rank.n]))
                .collect(),
            delta: a
                .delta
                .iter()
                .map(|(name, r)| {
                    let pairs = r.pairs().iter().map(|(u, v)| [q.format_word(u), q.format_word(v)]).collect();
                    (name.clone(), pairs)
                })
                .collect(),
            initial: word_set_json(q, a.initial()),
            terminal: word_set_json(q, a.terminal()),
        }
    }
}

impl GraphAutomaton {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<AutomatonJson>(text)?.into_automaton()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&AutomatonJson::from(self)).expect("serializable")
    }
}
