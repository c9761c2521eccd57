//! Finite directed multigraphs with an ordered edge list.
//!
//! Edges are first-class records: parallel edges and self-loops are kept
//! apart, and the insertion order of the edges is the default total order
//! used by the tree-array bijection.

mod families;
mod format;

pub use families::{class_cycle, debruijn, kautz, similarity_classes, Family};
pub use format::{parse_edge_list, to_dot, to_edge_list, GraphJson};

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
}

/// A directed multigraph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiGraph {
    vertex_labels: Vec<Option<String>>,
    edges: Vec<Edge>,
    edge_labels: Vec<Option<String>>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    family: Option<Family>,
}

impl DiGraph {
    /// Builds a graph from `(source, target)` index pairs. The vertex count is
    /// `vertex_count` if given, otherwise one more than the largest index.
    pub fn from_edges(vertex_count: Option<usize>, edges: &[(usize, usize)]) -> Result<Self> {
        let inferred = edges.iter().map(|&(s, t)| s.max(t) + 1).max().unwrap_or(0);
        let count = vertex_count.unwrap_or(inferred);
        if count == 0 {
            return Err(Error::EmptyGraph);
        }
        for &(s, t) in edges {
            for index in [s, t] {
                if index >= count {
                    return Err(Error::VertexOutOfRange { index, count });
                }
            }
        }
        let edges = edges
            .iter()
            .map(|&(s, t)| Edge {
                source: VertexId(s),
                target: VertexId(t),
            })
            .collect::<Vec<_>>();
        let edge_labels = vec![None; edges.len()];
        Ok(Self::assemble(vec![None; count], edges, edge_labels, None))
    }

    pub fn with_vertex_labels<S: Into<String>>(mut self, labels: Vec<S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.vertex_count() {
            return Err(Error::InvalidParameter(format!(
                "{} vertex labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        check_unique(&labels, "vertex")?;
        self.vertex_labels = labels.into_iter().map(Some).collect();
        Ok(self)
    }

    pub fn with_edge_labels<S: Into<String>>(mut self, labels: Vec<S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.edge_count() {
            return Err(Error::InvalidParameter(format!(
                "{} edge labels for {} edges",
                labels.len(),
                self.edge_count()
            )));
        }
        check_unique(&labels, "edge")?;
        self.edge_labels = labels.into_iter().map(Some).collect();
        Ok(self)
    }

    pub(crate) fn assemble(
        vertex_labels: Vec<Option<String>>,
        edges: Vec<Edge>,
        edge_labels: Vec<Option<String>>,
        family: Option<Family>,
    ) -> Self {
        let n = vertex_labels.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.source.0].push(EdgeId(i));
            in_edges[e.target.0].push(EdgeId(i));
        }
        DiGraph {
            vertex_labels,
            edges,
            edge_labels,
            out_edges,
            in_edges,
            family,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl ExactSizeIterator<Item = EdgeId> {
        (0..self.edge_count()).map(EdgeId)
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e.0]
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].source
    }

    pub fn target(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].target
    }

    /// Out-edges of `v` in edge order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    /// In-edges of `v` in edge order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn indeg(&self, v: VertexId) -> usize {
        self.in_edges[v.0].len()
    }

    pub fn outdeg(&self, v: VertexId) -> usize {
        self.out_edges[v.0].len()
    }

    pub fn vertex_label(&self, v: VertexId) -> Option<&str> {
        self.vertex_labels[v.0].as_deref()
    }

    pub fn edge_label(&self, e: EdgeId) -> Option<&str> {
        self.edge_labels[e.0].as_deref()
    }

    /// The label of `v`, or its index when unlabeled.
    pub fn vertex_name(&self, v: VertexId) -> String {
        self.vertex_label(v)
            .map_or_else(|| v.0.to_string(), str::to_owned)
    }

    /// The label of `e`, or its index when unlabeled.
    pub fn edge_name(&self, e: EdgeId) -> String {
        self.edge_label(e)
            .map_or_else(|| e.0.to_string(), str::to_owned)
    }

    pub fn find_vertex(&self, name: &str) -> Option<VertexId> {
        self.vertices().find(|&v| self.vertex_name(v) == name)
    }

    pub fn find_edge(&self, name: &str) -> Option<EdgeId> {
        self.edge_ids().find(|&e| self.edge_name(e) == name)
    }

    /// The de Bruijn or Kautz family this graph was generated as, if any.
    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn min_indeg(&self) -> usize {
        self.in_edges.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_eulerian(&self) -> bool {
        self.vertices().all(|v| self.indeg(v) == self.outdeg(v))
    }

    pub fn is_strongly_connected(&self) -> bool {
        let forward = self.reach(VertexId(0), |v| {
            self.out_edges(v).iter().map(|&e| self.target(e))
        });
        if forward != self.vertex_count() {
            return false;
        }
        let backward = self.reach(VertexId(0), |v| {
            self.in_edges(v).iter().map(|&e| self.source(e))
        });
        backward == self.vertex_count()
    }

    fn reach<'a, I, F>(&'a self, start: VertexId, next: F) -> usize
    where
        I: Iterator<Item = VertexId> + 'a,
        F: Fn(VertexId) -> I,
    {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([start]);
        seen[start.0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for w in next(v) {
                if !seen[w.0] {
                    seen[w.0] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count
    }

    /// Eulerian circuit by Hierholzer's algorithm, starting at vertex 0 and
    /// always taking the lowest unused out-edge.
    pub fn eulerian_circuit(&self) -> Result<Vec<EdgeId>> {
        if !self.is_eulerian() {
            return Err(Error::NotEulerian);
        }
        if self.edge_count() == 0 {
            return Ok(Vec::new());
        }
        let start = self.source(EdgeId(0));
        let mut next_out = vec![0usize; self.vertex_count()];
        let mut stack: Vec<(VertexId, Option<EdgeId>)> = vec![(start, None)];
        let mut circuit = Vec::with_capacity(self.edge_count());
        while let Some(&(v, via)) = stack.last() {
            let outs = self.out_edges(v);
            if next_out[v.0] < outs.len() {
                let e = outs[next_out[v.0]];
                next_out[v.0] += 1;
                stack.push((self.target(e), Some(e)));
            } else {
                stack.pop();
                if let Some(e) = via {
                    circuit.push(e);
                }
            }
        }
        if circuit.len() != self.edge_count() {
            // Eulerian degrees but edges in more than one component.
            return Err(Error::NotStronglyConnected);
        }
        circuit.reverse();
        Ok(circuit)
    }

    /// Number of parallel edges from `u` to `v`.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.out_edges(u)
            .iter()
            .filter(|&&e| self.target(e) == v)
            .count()
    }
}

fn check_unique(labels: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::InvalidParameter(format!(
                "duplicate {what} label {l:?}"
            )));
        }
    }
    Ok(())
}

/// Correspondence between the edges of `G` and the vertices of its line graph,
/// plus the `(e, f)` pair behind every line-graph edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineGraphMap {
    forward: Vec<VertexId>,
    backward: Vec<EdgeId>,
    pairs: Vec<(EdgeId, EdgeId)>,
    pair_index: HashMap<(EdgeId, EdgeId), EdgeId>,
}

impl LineGraphMap {
    /// Vertex of the line graph standing for edge `e` of the base graph.
    pub fn vertex_of(&self, e: EdgeId) -> VertexId {
        self.forward[e.0]
    }

    /// Edge of the base graph standing behind line-graph vertex `v`.
    pub fn edge_of(&self, v: VertexId) -> EdgeId {
        self.backward[v.0]
    }

    /// The base-graph pair `(e, f)` with `t(e) = s(f)` behind a line-graph edge.
    pub fn pair_of(&self, line_edge: EdgeId) -> (EdgeId, EdgeId) {
        self.pairs[line_edge.0]
    }

    /// The line-graph edge for the base-graph pair `(e, f)`, if `t(e) = s(f)`.
    pub fn line_edge(&self, e: EdgeId, f: EdgeId) -> Option<EdgeId> {
        self.pair_index.get(&(e, f)).copied()
    }
}

/// Directed line graph: one vertex per edge of `g`, and an edge `(e, f)` for
/// every ordered pair with `t(e) = s(f)`.
///
/// Vertex `i` of the result is edge `i` of `g`. Line-graph edges are listed by
/// `e`, then by `f` in `g`'s edge order, so for string-labeled families the
/// result carries the labels and edge order of the next family member.
pub fn line_graph(g: &DiGraph) -> (DiGraph, LineGraphMap) {
    let mut edges = Vec::new();
    let mut edge_labels = Vec::new();
    let mut pairs = Vec::new();
    for e in g.edge_ids() {
        for &f in g.out_edges(g.target(e)) {
            edges.push(Edge {
                source: VertexId(e.0),
                target: VertexId(f.0),
            });
            edge_labels.push(merge_shift_labels(g.edge_label(e), g.edge_label(f)));
            pairs.push((e, f));
        }
    }
    let pair_index = pairs
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, EdgeId(i)))
        .collect();
    let map = LineGraphMap {
        forward: (0..g.edge_count()).map(VertexId).collect(),
        backward: g.edge_ids().collect(),
        pairs,
        pair_index,
    };
    let vertex_labels = g.edge_labels.clone();
    let family = g.family.map(Family::successor);
    (
        DiGraph::assemble(vertex_labels, edges, edge_labels, family),
        map,
    )
}

/// `s0..sn` and `s1..sn+1` merge to `s0..sn+1`.
fn merge_shift_labels(e: Option<&str>, f: Option<&str>) -> Option<String> {
    let (e, f) = (e?, f?);
    let mut e_chars = e.chars();
    e_chars.next()?;
    let e_tail = e_chars.as_str();
    let f_last = f.chars().last()?;
    let f_head = &f[..f.len() - f_last.len_utf8()];
    (e_tail == f_head).then(|| format!("{e}{f_last}"))
}

/// Label isomorphism: equal vertex-label sets and equal multisets of
/// `(source label, target label)` edges. Both graphs must be fully labeled.
pub fn same_labeled(a: &DiGraph, b: &DiGraph) -> bool {
    type Signature<'a> = (Vec<&'a str>, Vec<(&'a str, &'a str)>);
    fn signature(g: &DiGraph) -> Option<Signature<'_>> {
        let mut vs = g
            .vertices()
            .map(|v| g.vertex_label(v))
            .collect::<Option<Vec<_>>>()?;
        let mut es = g
            .edge_ids()
            .map(|e| Some((g.vertex_label(g.source(e))?, g.vertex_label(g.target(e))?)))
            .collect::<Option<Vec<_>>>()?;
        vs.sort_unstable();
        es.sort_unstable();
        Some((vs, es))
    }
    match (signature(a), signature(b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycle() -> DiGraph {
        DiGraph::from_edges(None, &[(0, 1), (1, 0)]).unwrap()
    }

    #[test]
    fn build_basic_shapes() {
        let g = two_cycle();
        assert_eq!(g.vertex_count(), 2);
        for v in g.vertices() {
            assert_eq!((g.indeg(v), g.outdeg(v)), (1, 1));
        }

        let g = DiGraph::from_edges(None, &[(0, 0)]).unwrap();
        assert_eq!((g.indeg(VertexId(0)), g.outdeg(VertexId(0))), (1, 1));

        let g = DiGraph::from_edges(None, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(g.indeg(VertexId(1)), 2);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn build_errors() {
        assert_eq!(DiGraph::from_edges(None, &[]), Err(Error::EmptyGraph));
        assert_eq!(
            DiGraph::from_edges(Some(2), &[(0, 2)]),
            Err(Error::VertexOutOfRange { index: 2, count: 2 })
        );
        // isolated vertices are fine when the count is explicit
        assert!(DiGraph::from_edges(Some(3), &[]).is_ok());
        let g = two_cycle();
        assert!(g.clone().with_vertex_labels(vec!["a", "a"]).is_err());
        assert!(g.with_vertex_labels(vec!["a"]).is_err());
    }

    #[test]
    fn line_graph_of_two_cycle_is_two_cycle() {
        let (lg, map) = line_graph(&two_cycle());
        assert_eq!(lg.vertex_count(), 2);
        assert_eq!(lg.edge_count(), 2);
        assert_eq!(
            lg.edge(EdgeId(0)),
            Edge {
                source: VertexId(0),
                target: VertexId(1)
            }
        );
        assert_eq!(
            lg.edge(EdgeId(1)),
            Edge {
                source: VertexId(1),
                target: VertexId(0)
            }
        );
        assert_eq!(map.pair_of(EdgeId(0)), (EdgeId(0), EdgeId(1)));
        assert_eq!(map.line_edge(EdgeId(1), EdgeId(0)), Some(EdgeId(1)));
        assert_eq!(map.line_edge(EdgeId(0), EdgeId(0)), None);
        for e in lg.edge_ids() {
            assert_eq!(map.edge_of(map.vertex_of(e)), e);
        }
    }

    #[test]
    fn line_graph_of_loop_is_loop() {
        let g = DiGraph::from_edges(None, &[(0, 0)]).unwrap();
        let (lg, _) = line_graph(&g);
        assert_eq!(lg.vertex_count(), 1);
        assert_eq!(
            lg.edges,
            vec![Edge {
                source: VertexId(0),
                target: VertexId(0)
            }]
        );
    }

    #[test]
    fn connectivity_and_balance() {
        let path = DiGraph::from_edges(None, &[(0, 1)]).unwrap();
        assert!(!path.is_eulerian());
        assert!(!path.is_strongly_connected());
        let lp = DiGraph::from_edges(None, &[(0, 0)]).unwrap();
        assert!(lp.is_eulerian() && lp.is_strongly_connected());
        let two = DiGraph::from_edges(None, &[(0, 0), (1, 1)]).unwrap();
        assert!(two.is_eulerian());
        assert!(!two.is_strongly_connected());
        assert_eq!(two.eulerian_circuit(), Err(Error::NotStronglyConnected));
    }

    #[test]
    fn eulerian_circuit_uses_every_edge_once() {
        let g =
            DiGraph::from_edges(None, &[(0, 1), (1, 0), (0, 0), (1, 2), (2, 1), (1, 1)]).unwrap();
        let c = g.eulerian_circuit().unwrap();
        assert_eq!(c.len(), g.edge_count());
        let mut sorted = c.clone();
        sorted.sort();
        assert_eq!(sorted, g.edge_ids().collect::<Vec<_>>());
        for i in 0..c.len() {
            assert_eq!(g.target(c[i]), g.source(c[(i + 1) % c.len()]));
        }
    }

    #[test]
    fn shift_label_merge() {
        assert_eq!(
            merge_shift_labels(Some("01"), Some("10")),
            Some("010".into())
        );
        assert_eq!(merge_shift_labels(Some("01"), Some("00")), None);
        assert_eq!(merge_shift_labels(None, Some("00")), None);
    }
}
