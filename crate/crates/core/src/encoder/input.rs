use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, NodeId};
use crate::term::AtomSymbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// First line `n`, then one `i j` arc per line, nodes `1..=n`.
    EdgeList,
    HypergraphJson,
    /// `digraph [name] { a -> b -> c; d; ... }`, attributes ignored.
    Dot,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" | "edge-list" => Ok(GraphFormat::EdgeList),
            "json" | "hypergraph-json" => Ok(GraphFormat::HypergraphJson),
            "dot" | "dot-subset" => Ok(GraphFormat::Dot),
            other => Err(Error::InvalidGraph(format!("unknown graph format `{other}`"))),
        }
    }
}

/// Reads a graph. Edge lists and DOT give (0,0)-digraphs over the label
/// `a:(1,1)`.
pub fn parse_graph_input(text: &str, format: GraphFormat) -> Result<Hypergraph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::HypergraphJson => Hypergraph::from_json(text),
        GraphFormat::Dot => parse_dot(text),
    }
}

fn arc_label() -> AtomSymbol {
    AtomSymbol::new("a", 1, 1)
}

fn digraph(nodes: impl IntoIterator<Item = NodeId>, arcs: &[(NodeId, NodeId)]) -> Result<Hypergraph> {
    let edges = arcs
        .iter()
        .map(|&(u, v)| Edge::new(arc_label(), vec![u], vec![v]))
        .collect::<Result<Vec<_>>>()?;
    Hypergraph::new(nodes, edges, vec![], vec![])
}

fn parse_edge_list(text: &str) -> Result<Hypergraph> {
    let mut n: Option<NodeId> = None;
    let mut arcs = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let mut fields = Vec::new();
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let tail = &rest[start..];
            let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
            fields.push((offset + start, &tail[..len]));
            offset += start + len;
            rest = &tail[len..];
        }
        if fields.is_empty() {
            continue;
        }
        let column = |byte: usize| line[..byte].chars().count() + 1;
        let number = |(byte, tok): (usize, &str)| {
            tok.parse::<NodeId>()
                .map_err(|_| Error::syntax(li + 1, column(byte), format!("expected a number, found `{tok}`")))
        };
        match n {
            None => {
                if fields.len() != 1 {
                    return Err(Error::syntax(li + 1, column(fields[1].0), "first line holds only the node count"));
                }
                n = Some(number(fields[0])?);
            }
            Some(count) => {
                if fields.len() != 2 {
                    let at = fields.get(2).map_or(line.len(), |f| f.0);
                    return Err(Error::syntax(li + 1, column(at), "expected an arc `i j`"));
                }
                let mut ends = [0; 2];
                for (k, field) in fields.into_iter().enumerate() {
                    let v = number(field)?;
                    if v == 0 || v > count {
                        return Err(Error::syntax(
                            li + 1,
                            column(field.0),
                            format!("node {v} outside 1..{count}"),
                        ));
                    }
                    ends[k] = v;
                }
                arcs.push((ends[0], ends[1]));
            }
        }
    }
    let n = n.ok_or_else(|| Error::syntax(1, 1, "missing node count"))?;
    digraph(1..=n, &arcs)
}

#[derive(Debug, Clone, PartialEq)]
enum DotTok {
    Id(String, bool),
    Arrow,
    Open,
    Close,
    Semi,
    Attrs,
}

fn dot_tokens(text: &str) -> Result<Vec<(DotTok, usize, usize)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    let bump = |c: char, line: &mut usize, col: &mut usize| {
        if c == '\n' {
            *line += 1;
            *col = 1;
        } else {
            *col += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        match c {
            _ if c.is_whitespace() => {
                chars.next();
                bump(c, &mut line, &mut col);
            }
            '/' | '#' => {
                chars.next();
                bump(c, &mut line, &mut col);
                if c == '/' && chars.peek() != Some(&'/') {
                    return Err(Error::syntax(l, k, "unexpected `/`"));
                }
                while let Some(&d) = chars.peek() {
                    if d == '\n' {
                        break;
                    }
                    chars.next();
                    bump(d, &mut line, &mut col);
                }
            }
            '{' | '}' | ';' | ',' => {
                chars.next();
                bump(c, &mut line, &mut col);
                match c {
                    '{' => out.push((DotTok::Open, l, k)),
                    '}' => out.push((DotTok::Close, l, k)),
                    _ => out.push((DotTok::Semi, l, k)),
                }
            }
            '[' => {
                while let Some(d) = chars.next() {
                    bump(d, &mut line, &mut col);
                    if d == ']' {
                        break;
                    }
                }
                out.push((DotTok::Attrs, l, k));
            }
            '-' => {
                chars.next();
                bump(c, &mut line, &mut col);
                if chars.peek() == Some(&'>') {
                    chars.next();
                    bump('>', &mut line, &mut col);
                    out.push((DotTok::Arrow, l, k));
                } else {
                    return Err(Error::syntax(l, k, "expected `->`"));
                }
            }
            '"' => {
                chars.next();
                bump(c, &mut line, &mut col);
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => {
                            bump('"', &mut line, &mut col);
                            break;
                        }
                        Some('\\') => {
                            bump('\\', &mut line, &mut col);
                            if let Some(d) = chars.next() {
                                bump(d, &mut line, &mut col);
                                s.push(d);
                            }
                        }
                        Some(d) => {
                            bump(d, &mut line, &mut col);
                            s.push(d);
                        }
                        None => return Err(Error::syntax(l, k, "unterminated string")),
                    }
                }
                out.push((DotTok::Id(s, true), l, k));
            }
            _ if c.is_alphanumeric() || c == '_' || c == '.' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' || d == '.' {
                        s.push(d);
                        chars.next();
                        bump(d, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                out.push((DotTok::Id(s, false), l, k));
            }
            _ => return Err(Error::syntax(l, k, format!("unexpected `{c}`"))),
        }
    }
    Ok(out)
}

/// Integer ids keep their value; other ids get fresh numbers above the
/// largest integer id, in order of first appearance.
fn parse_dot(text: &str) -> Result<Hypergraph> {
    let toks = dot_tokens(text)?;
    let end_pos = || {
        let last = text.lines().count().max(1);
        Error::syntax(last, text.lines().last().map_or(1, |l| l.chars().count() + 1), "unexpected end of input")
    };
    let mut i = 0;
    match toks.first() {
        Some((DotTok::Id(kw, false), ..)) if kw == "digraph" => i += 1,
        Some((_, l, k)) => return Err(Error::syntax(*l, *k, "expected `digraph`")),
        None => return Err(end_pos()),
    }
    if let Some((DotTok::Id(..), ..)) = toks.get(i) {
        i += 1;
    }
    match toks.get(i) {
        Some((DotTok::Open, ..)) => i += 1,
        Some((_, l, k)) => return Err(Error::syntax(*l, *k, "expected `{`")),
        None => return Err(end_pos()),
    }

    let mut numeric: BTreeMap<String, NodeId> = BTreeMap::new();
    let mut mentioned: Vec<String> = Vec::new();
    let mut arcs: Vec<(String, String)> = Vec::new();
    let mut note = |id: &str, quoted: bool, l: usize, k: usize| -> Result<String> {
        if !quoted && id.chars().all(|c| c.is_ascii_digit()) {
            let v = id
                .parse::<NodeId>()
                .map_err(|_| Error::syntax(l, k, format!("node id `{id}` too large")))?;
            numeric.insert(id.to_string(), v);
        }
        let key = if quoted { format!("\"{id}") } else { id.to_string() };
        Ok(key)
    };
    loop {
        match toks.get(i) {
            None => return Err(end_pos()),
            Some((DotTok::Close, ..)) => {
                i += 1;
                break;
            }
            Some((DotTok::Semi, ..)) => i += 1,
            Some((DotTok::Id(kw, false), ..))
                if matches!(kw.as_str(), "node" | "edge" | "graph")
                    && matches!(toks.get(i + 1), Some((DotTok::Attrs, ..))) =>
            {
                i += 2;
            }
            Some((DotTok::Id(id, quoted), l, k)) => {
                let mut chain = vec![note(id, *quoted, *l, *k)?];
                i += 1;
                while let Some((DotTok::Arrow, ..)) = toks.get(i) {
                    match toks.get(i + 1) {
                        Some((DotTok::Id(id, quoted), l, k)) => chain.push(note(id, *quoted, *l, *k)?),
                        Some((_, l, k)) => return Err(Error::syntax(*l, *k, "expected a node id after `->`")),
                        None => return Err(end_pos()),
                    }
                    i += 2;
                }
                if let Some((DotTok::Attrs, ..)) = toks.get(i) {
                    i += 1;
                }
                for w in chain.windows(2) {
                    arcs.push((w[0].clone(), w[1].clone()));
                }
                mentioned.extend(chain);
            }
            Some((_, l, k)) => return Err(Error::syntax(*l, *k, "expected a statement")),
        }
    }
    if let Some((_, l, k)) = toks.get(i) {
        return Err(Error::syntax(*l, *k, "trailing input after `}`"));
    }

    let mut ids: BTreeMap<String, NodeId> = numeric.clone();
    let mut next = numeric.values().max().map_or(1, |m| m + 1);
    for key in &mentioned {
        if !ids.contains_key(key) {
            ids.insert(key.clone(), next);
            next += 1;
        }
    }
    let arcs: Vec<(NodeId, NodeId)> = arcs.iter().map(|(u, v)| (ids[u], ids[v])).collect();
    digraph(ids.values().copied(), &arcs)
}
