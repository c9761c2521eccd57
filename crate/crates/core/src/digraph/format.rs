//! Text, DOT and JSON forms of a [`DiGraph`].
//!
//! Edge-list text is one edge per line, `SRC DST [LABEL]`, with `#` starting a
//! comment. Vertices are numbered in order of first appearance and labeled
//! with their token. Either every edge carries a label or none does.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::DiGraph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<DiGraph> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut labels: Vec<Option<String>> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if !(2..=3).contains(&tokens.len()) {
            return Err(Error::Parse {
                line: lineno + 1,
                msg: format!("expected `SRC DST [LABEL]`, got {} fields", tokens.len()),
            });
        }
        let mut vertex = |name: &str| {
            *index.entry(name.to_owned()).or_insert_with(|| {
                names.push(name.to_owned());
                names.len() - 1
            })
        };
        let s = vertex(tokens[0]);
        let t = vertex(tokens[1]);
        edges.push((s, t));
        labels.push(tokens.get(2).map(|l| l.to_string()));
    }

    let g = DiGraph::from_edges(Some(names.len()), &edges)?.with_vertex_labels(names)?;
    attach_edge_labels(g, labels)
}

fn attach_edge_labels(g: DiGraph, labels: Vec<Option<String>>) -> Result<DiGraph> {
    if labels.iter().all(Option::is_none) {
        return Ok(g);
    }
    let labels = labels
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| {
            Error::InvalidParameter("either all edges carry a label or none does".into())
        })?;
    g.with_edge_labels(labels)
}

/// Inverse of [`parse_edge_list`] for graphs without isolated vertices.
pub fn to_edge_list(g: &DiGraph) -> String {
    let mut out = String::new();
    for e in g.edge_ids() {
        let (s, t) = (g.vertex_name(g.source(e)), g.vertex_name(g.target(e)));
        match g.edge_label(e) {
            Some(label) => writeln!(out, "{s} {t} {label}"),
            None => writeln!(out, "{s} {t}"),
        }
        .unwrap();
    }
    out
}

pub fn to_dot(g: &DiGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        writeln!(out, "  {} [label={:?}];", v.0, g.vertex_name(v)).unwrap();
    }
    for e in g.edge_ids() {
        let edge = g.edge(e);
        write!(out, "  {} -> {}", edge.source.0, edge.target.0).unwrap();
        if let Some(label) = g.edge_label(e) {
            write!(out, " [label={label:?}]").unwrap();
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

/// `{"vertices": [name, ..], "edges": [[source, target, label-or-null], ..]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize, Option<String>)>,
}

impl GraphJson {
    pub fn from_graph(g: &DiGraph) -> Self {
        GraphJson {
            vertices: g.vertices().map(|v| g.vertex_name(v)).collect(),
            edges: g
                .edge_ids()
                .map(|e| {
                    (
                        g.source(e).0,
                        g.target(e).0,
                        g.edge_label(e).map(str::to_owned),
                    )
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<DiGraph> {
        let pairs: Vec<_> = self.edges.iter().map(|&(s, t, _)| (s, t)).collect();
        let g = DiGraph::from_edges(Some(self.vertices.len()), &pairs)?
            .with_vertex_labels(self.vertices.clone())?;
        attach_edge_labels(g, self.edges.iter().map(|(_, _, l)| l.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{debruijn, VertexId};

    #[test]
    fn parse_numbers_vertices_by_first_appearance() {
        let g = parse_edge_list("# a comment\nb a\n\na b   # trailing\nb b\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.vertex_name(VertexId(0)), "b");
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.indeg(VertexId(0)), 2);
        assert_eq!(g.edge_label(crate::digraph::EdgeId(0)), None);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_edge_list("# nothing\n"), Err(Error::EmptyGraph));
        assert!(matches!(
            parse_edge_list("a b\nc\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_edge_list("a b x\nb a\n").is_err());
        assert!(parse_edge_list("a b x\nb a x\n").is_err());
    }

    #[test]
    fn text_and_json_round_trip() {
        let g = debruijn(2, 2).unwrap();
        let back = parse_edge_list(&to_edge_list(&g)).unwrap();
        assert_eq!(GraphJson::from_graph(&back), GraphJson::from_graph(&g));

        let json = serde_json::to_string(&GraphJson::from_graph(&g)).unwrap();
        assert!(json.starts_with(r#"{"vertices":["00","01","10","11"],"edges":[[0,0,"000"]"#));
        let parsed: GraphJson = serde_json::from_str(&json).unwrap();
        let h = parsed.to_graph().unwrap();
        assert_eq!(to_edge_list(&h), to_edge_list(&g));
    }

    #[test]
    fn dot_output() {
        let g = parse_edge_list("x y\ny x\n").unwrap();
        assert_eq!(
            to_dot(&g),
            "digraph G {\n  0 [label=\"x\"];\n  1 [label=\"y\"];\n  0 -> 1;\n  1 -> 0;\n}\n"
        );
    }
}
