//! The graph equations every graphoid satisfies, written as pairs of terms
//! over `Π` (for `s`), `I_{κ,λ}` (for `d_{κλ}`) and units.

use super::{s_m1_term, MagmoidTerm};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    /// `"E3"` … `"E17"`.
    pub name: &'static str,
    pub lhs: MagmoidTerm,
    pub rhs: MagmoidTerm,
}

fn s() -> MagmoidTerm {
    MagmoidTerm::Pi
}
fn e() -> MagmoidTerm {
    MagmoidTerm::UnitE(1)
}
fn d(k: usize, l: usize) -> MagmoidTerm {
    MagmoidTerm::Iconst(k, l)
}
fn box2(a: MagmoidTerm, b: MagmoidTerm) -> MagmoidTerm {
    MagmoidTerm::sum(a, b)
}
fn seq(factors: impl IntoIterator<Item = MagmoidTerm>) -> MagmoidTerm {
    MagmoidTerm::prod_all(factors).expect("at least one factor")
}

/// The fourteen fixed-arity equations, `E3` through `E16`.
pub fn graphoid_equations() -> Vec<Equation> {
    let eq = |name, lhs, rhs| Equation { name, lhs, rhs };
    vec![
        eq("E3", seq([s(), s()]), MagmoidTerm::UnitE(2)),
        eq(
            "E4",
            seq([box2(s(), e()), box2(e(), s()), box2(s(), e())]),
            seq([box2(e(), s()), box2(s(), e()), box2(e(), s())]),
        ),
        eq(
            "E5",
            seq([box2(e(), d(2, 1)), d(2, 1)]),
            seq([box2(d(2, 1), e()), d(2, 1)]),
        ),
        eq("E6", seq([box2(e(), d(0, 1)), d(2, 1)]), e()),
        eq("E7", seq([s(), d(2, 1)]), d(2, 1)),
        eq("E8", seq([box2(e(), d(0, 1)), s()]), box2(d(0, 1), e())),
        eq(
            "E9",
            seq([box2(s(), e()), box2(e(), s()), box2(d(2, 1), e())]),
            seq([box2(e(), d(2, 1)), s()]),
        ),
        eq(
            "E10",
            seq([d(1, 2), box2(e(), d(1, 2))]),
            seq([d(1, 2), box2(d(1, 2), e())]),
        ),
        eq("E11", seq([d(1, 2), box2(e(), d(1, 0))]), e()),
        eq("E12", seq([d(1, 2), s()]), d(1, 2)),
        eq("E13", seq([s(), box2(e(), d(1, 0))]), box2(d(1, 0), e())),
        eq(
            "E14",
            seq([box2(d(1, 2), e()), box2(e(), s()), box2(s(), e())]),
            seq([s(), box2(e(), d(1, 2))]),
        ),
        eq("E15", seq([d(1, 2), d(2, 1)]), e()),
        eq(
            "E16",
            seq([box2(d(1, 2), e()), box2(e(), d(2, 1))]),
            seq([d(2, 1), d(1, 2)]),
        ),
    ]
}

/// The instance of the equation schema `s_{m,1} ∘ (p □ e) = (e □ p) ∘ s_{n,1}`
/// for a term `p` of rank (m,n).
pub fn rotation_equation(p: &MagmoidTerm) -> Result<Equation> {
    let r = p.rank()?;
    Ok(Equation {
        name: "E17",
        lhs: seq([s_m1_term(r.m), box2(p.clone(), e())]),
        rhs: seq([box2(e(), p.clone()), s_m1_term(r.n)]),
    })
}
