//! Relational evaluation of terms by forward propagation.
//!
//! Instead of materializing `δ̄(t)` for every subterm (whose size grows as
//! `|Q|^{m+n}`), a term is compiled into a [`Plan`] and a set of
//! (origin word, current word) pairs is pushed through it. Pure wiring
//! subterms built from `Π` and units collapse into a single position gather.

use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result, PAIR_BUDGET};
use crate::relation::{RelationalGraphoid, State, StateRelation, StateSet};
use crate::term::MagmoidTerm;

pub(crate) type Word = Vec<State>;

/// Rows of an explicit relation, keyed by input word.
#[derive(Debug, Default)]
pub(crate) struct Table {
    rows: FxHashMap<Word, Vec<Word>>,
}

impl Table {
    pub(crate) fn new(r: &StateRelation) -> Self {
        let mut rows: FxHashMap<Word, Vec<Word>> = FxHashMap::default();
        for (u, v) in r.pairs() {
            rows.entry(u.0.clone()).or_default().push(v.0.clone());
        }
        Table { rows }
    }
}

#[derive(Debug)]
pub(crate) enum Plan {
    /// `out[j] = in[idx[j]]`.
    Gather(Vec<usize>),
    Table(Arc<Table>),
    /// `{(gᵖ, g^q)}`.
    Diagonal(usize, usize),
    Seq(Vec<Plan>),
    /// Side-by-side parts. Output positions sharing a class must carry equal
    /// states; combinations violating this are never built.
    Par(Vec<Part>, Vec<Option<u32>>),
}

#[derive(Debug)]
pub(crate) struct Part {
    pub inputs: usize,
    pub outputs: usize,
    pub plan: Plan,
}

pub(crate) struct Compiler<'a> {
    pub graphoid: &'a RelationalGraphoid,
    pub atom_table: &'a dyn Fn(&str) -> Result<Arc<Table>>,
    swap_is_standard: bool,
    diag_d: [bool; 4],
}

impl<'a> Compiler<'a> {
    pub(crate) fn new(graphoid: &'a RelationalGraphoid, atom_table: &'a dyn Fn(&str) -> Result<Arc<Table>>) -> Self {
        let q = &graphoid.states;
        let tsrel = crate::relation::tsrel_dset(q);
        let d = &graphoid.d;
        Compiler {
            graphoid,
            atom_table,
            swap_is_standard: d.s == tsrel.s,
            diag_d: [d.d01 == tsrel.d01, d.d21 == tsrel.d21, d.d10 == tsrel.d10, d.d12 == tsrel.d12],
        }
    }

    /// Compiles a rank-valid term.
    pub(crate) fn compile(&self, t: &MagmoidTerm) -> Result<Plan> {
        Ok(match t {
            MagmoidTerm::Atom(s) => Plan::Table((self.atom_table)(&s.name)?),
            MagmoidTerm::UnitE(n) => Plan::Gather((0..*n).collect()),
            MagmoidTerm::Pi if self.swap_is_standard => Plan::Gather(vec![1, 0]),
            MagmoidTerm::Pi => Plan::Table(Arc::new(Table::new(&self.graphoid.d.s))),
            MagmoidTerm::Iconst(p, q) => {
                let slot = match (p, q) {
                    (0, 1) => Some(0),
                    (2, 1) => Some(1),
                    (1, 0) => Some(2),
                    (1, 2) => Some(3),
                    _ => None,
                };
                match slot {
                    Some(i) if !self.diag_d[i] => {
                        let r = self.graphoid.d.get(*p, *q).expect("D-constant");
                        Plan::Table(Arc::new(Table::new(r)))
                    }
                    _ => Plan::Diagonal(*p, *q),
                }
            }
            MagmoidTerm::Prod(a, b) => {
                let mut stages = Vec::new();
                for part in [self.compile(a)?, self.compile(b)?] {
                    match part {
                        Plan::Seq(inner) => stages.extend(inner),
                        other => stages.push(other),
                    }
                }
                fuse_seq(stages)
            }
            MagmoidTerm::SumBox(a, b) => {
                let mut parts = Vec::new();
                for sub in [a, b] {
                    let rank = sub.rank()?;
                    match self.compile(sub)? {
                        Plan::Par(inner, classes) if classes.iter().all(Option::is_none) => parts.extend(inner),
                        other => parts.push(Part {
                            inputs: rank.m,
                            outputs: rank.n,
                            plan: other,
                        }),
                    }
                }
                fuse_par(parts)
            }
        })
    }
}

fn fuse_seq(stages: Vec<Plan>) -> Plan {
    let mut out: Vec<Plan> = Vec::with_capacity(stages.len());
    for stage in stages {
        match (out.last_mut(), stage) {
            (Some(Plan::Gather(first)), Plan::Gather(second)) => {
                *first = second.iter().map(|&j| first[j]).collect();
            }
            (_, stage) => out.push(stage),
        }
    }
    for i in 1..out.len() {
        let mut groups = equal_inputs(&out[i]);
        if groups.is_empty() {
            continue;
        }
        let mut target = i - 1;
        if let (Plan::Gather(idx), true) = (&out[target], target > 0) {
            for g in &mut groups {
                for p in g.iter_mut() {
                    *p = idx[*p];
                }
            }
            target -= 1;
        }
        if let Plan::Par(_, classes) = &mut out[target] {
            merge_classes(classes, &groups);
        }
    }
    if out.len() == 1 {
        out.pop().expect("one stage")
    } else {
        Plan::Seq(out)
    }
}

/// Groups of input positions that a plan only accepts when equal.
fn equal_inputs(plan: &Plan) -> Vec<Vec<usize>> {
    match plan {
        Plan::Diagonal(p, _) if *p >= 2 => vec![(0..*p).collect()],
        Plan::Par(parts, _) => {
            let mut groups = Vec::new();
            let mut offset = 0;
            for part in parts {
                groups.extend(
                    equal_inputs(&part.plan)
                        .into_iter()
                        .map(|g| g.into_iter().map(|p| p + offset).collect()),
                );
                offset += part.inputs;
            }
            groups
        }
        Plan::Seq(stages) => stages.first().map(equal_inputs).unwrap_or_default(),
        _ => Vec::new(),
    }
}

fn merge_classes(classes: &mut [Option<u32>], groups: &[Vec<usize>]) {
    let n = classes.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut first_of: FxHashMap<u32, usize> = FxHashMap::default();
    for (p, c) in classes.iter().enumerate() {
        if let Some(c) = c {
            match first_of.get(c) {
                Some(&q) => parent[p] = q,
                None => {
                    first_of.insert(*c, p);
                }
            }
        }
    }
    let mut grouped = vec![false; n];
    for g in groups {
        for w in g.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
        for &p in g {
            grouped[p] = true;
        }
    }
    for p in 0..n {
        if classes[p].is_some() || grouped[p] {
            classes[p] = Some(find(&mut parent, p) as u32);
        }
    }
}

fn fuse_par(parts: Vec<Part>) -> Plan {
    if parts.iter().all(|p| matches!(p.plan, Plan::Gather(_))) {
        let mut idx = Vec::new();
        let mut offset = 0;
        for part in parts {
            let Plan::Gather(g) = part.plan else { unreachable!() };
            idx.extend(g.iter().map(|&j| j + offset));
            offset += part.inputs;
        }
        return Plan::Gather(idx);
    }
    let width = parts.iter().map(|p| p.outputs).sum();
    Plan::Par(parts, vec![None; width])
}

pub(crate) struct Runner<'a> {
    pub states: &'a StateSet,
}

impl Runner<'_> {
    /// All outputs related to `w`.
    pub(crate) fn row(&self, plan: &Plan, w: &[State]) -> Result<Vec<Word>> {
        Ok(match plan {
            Plan::Gather(idx) => vec![idx.iter().map(|&i| w[i]).collect()],
            Plan::Table(t) => t.rows.get(w).cloned().unwrap_or_default(),
            Plan::Diagonal(0, q) => self.states.states().iter().map(|&g| vec![g; *q]).collect(),
            Plan::Diagonal(_, q) => match w.split_first() {
                Some((&g, rest)) if rest.iter().all(|&x| x == g) => vec![vec![g; *q]],
                _ => Vec::new(),
            },
            Plan::Seq(stages) => {
                let mut current: Vec<Word> = vec![w.to_vec()];
                for stage in stages {
                    let mut next: FxHashSet<Word> = FxHashSet::default();
                    for u in &current {
                        next.extend(self.row(stage, u)?);
                    }
                    check_budget(next.len())?;
                    current = next.into_iter().collect();
                    if current.is_empty() {
                        break;
                    }
                }
                current
            }
            Plan::Par(parts, classes) => {
                let mut offset = 0;
                let mut rows = Vec::with_capacity(parts.len());
                let mut size: u128 = 1;
                for part in parts {
                    let r = self.row(&part.plan, &w[offset..offset + part.inputs])?;
                    offset += part.inputs;
                    if r.is_empty() {
                        return Ok(Vec::new());
                    }
                    size = size.saturating_mul(r.len() as u128);
                    rows.push(r);
                }
                if classes.iter().any(Option::is_some) {
                    return joined_rows(parts, &rows, classes);
                }
                if size > PAIR_BUDGET {
                    return Err(Error::budget(size));
                }
                let mut out: Vec<Word> = vec![Vec::new()];
                for r in rows {
                    out = out
                        .into_iter()
                        .flat_map(|prefix| {
                            r.iter().map(move |suffix| {
                                let mut v = prefix.clone();
                                v.extend_from_slice(suffix);
                                v
                            })
                        })
                        .collect();
                }
                out
            }
        })
    }

    /// Pushes `(origin, word)` pairs through `plan`, stage by stage.
    pub(crate) fn image(&self, plan: &Plan, frontier: Vec<(u32, Word)>) -> Result<Vec<(u32, Word)>> {
        let stages: &[Plan] = match plan {
            Plan::Seq(stages) => stages,
            other => std::slice::from_ref(other),
        };
        let mut current = frontier;
        for stage in stages {
            let mut next: FxHashSet<(u32, Word)> = FxHashSet::default();
            for (o, w) in &current {
                for v in self.row(stage, w)? {
                    next.insert((*o, v));
                }
                check_budget(next.len())?;
            }
            current = next.into_iter().collect();
            if current.is_empty() {
                break;
            }
        }
        Ok(current)
    }
}

/// The combinations of part rows whose outputs agree on every class,
/// choosing parts with fewer rows first.
fn joined_rows(parts: &[Part], rows: &[Vec<Word>], classes: &[Option<u32>]) -> Result<Vec<Word>> {
    struct Search<'a> {
        order: Vec<usize>,
        offsets: Vec<usize>,
        rows: &'a [Vec<Word>],
        classes: &'a [Option<u32>],
        value: Vec<Option<State>>,
        buffer: Vec<State>,
        out: Vec<Word>,
    }

    impl Search<'_> {
        fn go(&mut self, depth: usize) -> Result<()> {
            let Some(&part) = self.order.get(depth) else {
                self.out.push(self.buffer.clone());
                return check_budget(self.out.len());
            };
            let offset = self.offsets[part];
            'rows: for row in &self.rows[part] {
                let mut bound = Vec::new();
                for (i, &g) in row.iter().enumerate() {
                    self.buffer[offset + i] = g;
                    if let Some(c) = self.classes[offset + i] {
                        match self.value[c as usize] {
                            Some(h) if h != g => {
                                for c in bound {
                                    self.value[c] = None;
                                }
                                continue 'rows;
                            }
                            Some(_) => {}
                            None => {
                                self.value[c as usize] = Some(g);
                                bound.push(c as usize);
                            }
                        }
                    }
                }
                self.go(depth + 1)?;
                for c in bound {
                    self.value[c] = None;
                }
            }
            Ok(())
        }
    }

    let mut offsets = Vec::with_capacity(parts.len());
    let mut width = 0;
    for part in parts {
        offsets.push(width);
        width += part.outputs;
    }
    let mut order: Vec<usize> = (0..parts.len()).collect();
    order.sort_by_key(|&i| rows[i].len());
    let mut search = Search {
        order,
        offsets,
        rows,
        classes,
        value: vec![None; classes.len()],
        buffer: vec![0; width],
        out: Vec::new(),
    };
    search.go(0)?;
    Ok(search.out)
}

fn check_budget(n: usize) -> Result<()> {
    if n as u128 > PAIR_BUDGET {
        Err(Error::budget(n as u128))
    } else {
        Ok(())
    }
}
