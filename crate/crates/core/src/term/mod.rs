//! Doubly ranked symbols and the magmoid term language.
//!
//! A [`MagmoidTerm`] is an expression over atoms, the units `e_n`, the swap
//! `Π` and the single-node constants `I_{p,q}`, combined with the product `∘`
//! ([`MagmoidTerm::Prod`], diagrammatic order: the left operand is applied
//! first) and the sum `□` ([`MagmoidTerm::SumBox`], the top operand occupies
//! the first wire positions).

mod laws;
mod perm;
mod syntax;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use laws::{graphoid_equations, rotation_equation, Equation};
pub use perm::{perm_term, s_m1_term, Permutation};
pub use syntax::{parse_term, parse_term_checked, print_term};

/// Input and output arity of a symbol, term, graph or relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rank {
    pub m: usize,
    pub n: usize,
}

impl Rank {
    pub const fn new(m: usize, n: usize) -> Self {
        Rank { m, n }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// An edge label `σ ∈ Σ_{m,n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomSymbol {
    pub name: String,
    pub rank: Rank,
}

impl AtomSymbol {
    pub fn new(name: impl Into<String>, m: usize, n: usize) -> Self {
        AtomSymbol {
            name: name.into(),
            rank: Rank::new(m, n),
        }
    }
}

impl fmt::Display for AtomSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.rank)
    }
}

/// A doubly ranked alphabet. Names are unique; each carries a fixed rank.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    symbols: BTreeMap<String, Rank>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `symbol`; re-adding a name with a different rank is an error.
    pub fn insert(&mut self, symbol: AtomSymbol) -> Result<()> {
        match self.symbols.get(&symbol.name) {
            Some(&rank) if rank != symbol.rank => Err(Error::RankMismatch {
                context: "symbol redeclared with another rank",
                left: rank,
                right: symbol.rank,
            }),
            _ => {
                self.symbols.insert(symbol.name, symbol.rank);
                Ok(())
            }
        }
    }

    pub fn rank_of(&self, name: &str) -> Option<Rank> {
        self.symbols.get(name).copied()
    }

    pub fn contains(&self, symbol: &AtomSymbol) -> bool {
        self.rank_of(&symbol.name) == Some(symbol.rank)
    }

    pub fn symbols(&self) -> impl Iterator<Item = AtomSymbol> + '_ {
        self.symbols
            .iter()
            .map(|(name, &rank)| AtomSymbol { name: name.clone(), rank })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

impl FromIterator<AtomSymbol> for Alphabet {
    /// Later duplicates with conflicting ranks are ignored.
    fn from_iter<T: IntoIterator<Item = AtomSymbol>>(iter: T) -> Self {
        let mut alphabet = Alphabet::new();
        for s in iter {
            let _ = alphabet.insert(s);
        }
        alphabet
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MagmoidTerm {
    Atom(AtomSymbol),
    /// `e_n`; `UnitE(0)` is `e₀` and `UnitE(1)` is `e`.
    UnitE(usize),
    /// The swap `Π` of rank (2,2).
    Pi,
    /// The single-node constant `I_{p,q}`.
    Iconst(usize, usize),
    /// `left ∘ right`: `left` is applied first.
    Prod(Box<MagmoidTerm>, Box<MagmoidTerm>),
    /// `top □ bottom`.
    SumBox(Box<MagmoidTerm>, Box<MagmoidTerm>),
}

impl MagmoidTerm {
    pub fn atom(name: impl Into<String>, m: usize, n: usize) -> Self {
        MagmoidTerm::Atom(AtomSymbol::new(name, m, n))
    }

    pub fn prod(left: MagmoidTerm, right: MagmoidTerm) -> Self {
        MagmoidTerm::Prod(Box::new(left), Box::new(right))
    }

    pub fn sum(top: MagmoidTerm, bottom: MagmoidTerm) -> Self {
        MagmoidTerm::SumBox(Box::new(top), Box::new(bottom))
    }

    /// Right-folded product of `factors`; `None` when there are none.
    pub fn prod_all(factors: impl IntoIterator<Item = MagmoidTerm>) -> Option<Self> {
        let mut v: Vec<_> = factors.into_iter().collect();
        let mut acc = v.pop()?;
        while let Some(t) = v.pop() {
            acc = MagmoidTerm::prod(t, acc);
        }
        Some(acc)
    }

    /// Right-folded sum of `parts`; `UnitE(0)` when there are none.
    pub fn sum_all(parts: impl IntoIterator<Item = MagmoidTerm>) -> Self {
        let mut v: Vec<_> = parts.into_iter().collect();
        let Some(mut acc) = v.pop() else {
            return MagmoidTerm::UnitE(0);
        };
        while let Some(t) = v.pop() {
            acc = MagmoidTerm::sum(t, acc);
        }
        acc
    }

    pub fn rank(&self) -> Result<Rank> {
        rank_of(self)
    }

    /// Number of `Atom` leaves.
    pub fn atom_count(&self) -> usize {
        match self {
            MagmoidTerm::Atom(_) => 1,
            MagmoidTerm::UnitE(_) | MagmoidTerm::Pi | MagmoidTerm::Iconst(..) => 0,
            MagmoidTerm::Prod(a, b) | MagmoidTerm::SumBox(a, b) => a.atom_count() + b.atom_count(),
        }
    }

    /// Every atom symbol occurring in the term, in left-to-right order.
    pub fn atoms(&self) -> Vec<&AtomSymbol> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a AtomSymbol>) {
        match self {
            MagmoidTerm::Atom(s) => out.push(s),
            MagmoidTerm::Prod(a, b) | MagmoidTerm::SumBox(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            _ => {}
        }
    }
}

impl fmt::Display for MagmoidTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

/// Typing rule of the magmoid operations.
pub fn rank_of(t: &MagmoidTerm) -> Result<Rank> {
    Ok(match t {
        MagmoidTerm::Atom(s) => s.rank,
        MagmoidTerm::UnitE(n) => Rank::new(*n, *n),
        MagmoidTerm::Pi => Rank::new(2, 2),
        MagmoidTerm::Iconst(p, q) => Rank::new(*p, *q),
        MagmoidTerm::Prod(a, b) => {
            let (ra, rb) = (rank_of(a)?, rank_of(b)?);
            if ra.n != rb.m {
                return Err(Error::RankMismatch {
                    context: "product",
                    left: ra,
                    right: rb,
                });
            }
            Rank::new(ra.m, rb.n)
        }
        MagmoidTerm::SumBox(a, b) => {
            let (ra, rb) = (rank_of(a)?, rank_of(b)?);
            Rank::new(ra.m + rb.m, ra.n + rb.n)
        }
    })
}
