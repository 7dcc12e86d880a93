use super::{diagonal, StateRelation, StateSet, StateWord};
use crate::error::{Error, Result};
use crate::term::Rank;

/// The designated elements `{s, d₀₁, d₂₁, d₁₀, d₁₂}` of a relational graphoid.
/// Only the ranks are checked on construction; the graph equations are
/// checked by [`super::check_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSet {
    pub s: StateRelation,
    pub d01: StateRelation,
    pub d21: StateRelation,
    pub d10: StateRelation,
    pub d12: StateRelation,
}

impl DSet {
    pub fn new(
        s: StateRelation,
        d01: StateRelation,
        d21: StateRelation,
        d10: StateRelation,
        d12: StateRelation,
    ) -> Result<Self> {
        for (r, (m, n)) in [(&s, (2, 2)), (&d01, (0, 1)), (&d21, (2, 1)), (&d10, (1, 0)), (&d12, (1, 2))] {
            if r.rank() != Rank::new(m, n) {
                return Err(Error::RankMismatch {
                    context: "D-set element",
                    left: Rank::new(m, n),
                    right: r.rank(),
                });
            }
        }
        Ok(DSet { s, d01, d21, d10, d12 })
    }

    /// `d_{κλ}` for the four constants of the D-set.
    pub fn get(&self, kappa: usize, lambda: usize) -> Option<&StateRelation> {
        match (kappa, lambda) {
            (0, 1) => Some(&self.d01),
            (2, 1) => Some(&self.d21),
            (1, 0) => Some(&self.d10),
            (1, 2) => Some(&self.d12),
            _ => None,
        }
    }
}

/// The D-set of `TSRel(Q)`: `s` swaps two states, each `d` copies, merges,
/// creates or deletes equal states.
pub fn tsrel_dset(q: &StateSet) -> DSet {
    let swap = q
        .states()
        .iter()
        .flat_map(|&g1| q.states().iter().map(move |&g2| (StateWord(vec![g1, g2]), StateWord(vec![g2, g1]))))
        .collect();
    DSet {
        s: StateRelation::from_set_unchecked(Rank::new(2, 2), swap),
        d01: diagonal(q, 0, 1),
        d21: diagonal(q, 2, 1),
        d10: diagonal(q, 1, 0),
        d12: diagonal(q, 1, 2),
    }
}

/// `Rel(Q)` together with a D-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationalGraphoid {
    pub states: StateSet,
    pub d: DSet,
}

impl RelationalGraphoid {
    pub fn tsrel(states: StateSet) -> Self {
        let d = tsrel_dset(&states);
        RelationalGraphoid { states, d }
    }

    pub fn is_tsrel(&self) -> bool {
        self.d == tsrel_dset(&self.states)
    }
}
