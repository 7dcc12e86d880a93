use serde::{Deserialize, Serialize};

use super::{Edge, Hypergraph, NodeId};
use crate::error::{Error, Result};
use crate::term::{Alphabet, AtomSymbol};

/// Wire format of a hypergraph:
/// `{"nodes":[..], "edges":[{"label":..,"src":[..],"tgt":[..]}], "begin":[..], "end":[..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphJson {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<EdgeJson>,
    pub begin: Vec<NodeId>,
    pub end: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub label: String,
    pub src: Vec<NodeId>,
    pub tgt: Vec<NodeId>,
}

impl From<&Hypergraph> for HypergraphJson {
    fn from(g: &Hypergraph) -> Self {
        HypergraphJson {
            nodes: g.nodes.clone(),
            edges: g
                .edges
                .iter()
                .map(|e| EdgeJson {
                    label: e.label.name.clone(),
                    src: e.sources.clone(),
                    tgt: e.targets.clone(),
                })
                .collect(),
            begin: g.begin.clone(),
            end: g.end.clone(),
        }
    }
}

impl HypergraphJson {
    /// Labels take their rank from the endpoint counts; a label used with
    /// two different ranks is rejected.
    pub fn into_graph(self) -> Result<Hypergraph> {
        let mut alphabet = Alphabet::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in self.edges {
            let label = AtomSymbol::new(e.label, e.src.len(), e.tgt.len());
            alphabet.insert(label.clone())?;
            edges.push(Edge::new(label, e.src, e.tgt)?);
        }
        Hypergraph::new(self.nodes, edges, self.begin, self.end)
    }
}

impl Hypergraph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&HypergraphJson::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Hypergraph> {
        let raw: HypergraphJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        raw.into_graph()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_field_names() {
        let text = r#"{"nodes":[1,2],"edges":[{"label":"a","src":[1],"tgt":[2]}],"begin":[],"end":[2]}"#;
        let g = Hypergraph::from_json(text).unwrap();
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.to_json(), text);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(Hypergraph::from_json(r#"{"nodes":[1],"edges":[],"begin":[2],"end":[]}"#).is_err());
        assert!(Hypergraph::from_json(r#"{"nodes":[],"edges":[]}"#).is_err());
        let mixed = r#"{"nodes":[1,2],"edges":[{"label":"a","src":[1],"tgt":[2]},
            {"label":"a","src":[1,2],"tgt":[]}],"begin":[],"end":[]}"#;
        assert!(matches!(Hypergraph::from_json(mixed), Err(Error::RankMismatch { .. })));
    }
}
