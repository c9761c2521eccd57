//! Tree arrays of `G` and the bijection σ onto spanning trees of the line
//! graph 𝓛G, with its inverse π.
//!
//! A tree array holds one list per vertex `v` of length `indeg(v)`. Every
//! entry of `v`'s list is an out-edge of `v`, except that the root's list ends
//! with the sentinel Ω. The last entries of the non-root lists form a spanning
//! tree of `G` rooted at the root.
//!
//! σ repeatedly takes the smallest edge `f` that neither occurs in its
//! source's remaining list nor has an out-edge yet, pops the head `g` of the
//! list at `t(f)`, and adds `(f, g)` to the tree, stopping when the pop is Ω;
//! `f` is then the root. π peels leaves of a line-graph tree in edge order and
//! appends what it removes, rebuilding the array.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arborescence::{count_trees, enumerate_trees, SpanningTree};
use crate::digraph::{line_graph, DiGraph, EdgeId, LineGraphMap, VertexId};
use crate::error::{Error, Result};

/// Name of the sentinel in the JSON form.
pub const OMEGA: &str = "OMEGA";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArrayEntry {
    Edge(EdgeId),
    Omega,
}

impl fmt::Display for ArrayEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrayEntry::Edge(e) => write!(f, "{e}"),
            ArrayEntry::Omega => f.write_str("Ω"),
        }
    }
}

/// A total order on the edges of a graph, stored as each edge's rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrder {
    rank: Vec<usize>,
}

impl EdgeOrder {
    /// Edge-index order.
    pub fn natural(edge_count: usize) -> Self {
        EdgeOrder {
            rank: (0..edge_count).collect(),
        }
    }

    /// `sequence` lists every edge once, smallest first.
    pub fn from_sequence(sequence: &[EdgeId]) -> Result<Self> {
        let n = sequence.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, e) in sequence.iter().enumerate() {
            if e.0 >= n || rank[e.0] != usize::MAX {
                return Err(Error::InvalidParameter(
                    "edge order is not a permutation".into(),
                ));
            }
            rank[e.0] = pos;
        }
        Ok(EdgeOrder { rank })
    }

    /// A pseudorandom order, reproducible from `seed`.
    pub fn shuffled(edge_count: usize, seed: u64) -> Self {
        let mut seq: Vec<EdgeId> = (0..edge_count).map(EdgeId).collect();
        seq.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Self::from_sequence(&seq).expect("a shuffle is a permutation")
    }

    pub fn rank(&self, e: EdgeId) -> usize {
        self.rank[e.0]
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }
}

/// Per-vertex lists of `indeg(v) - 1` out-edges of `v`: a monomial of
/// Π_v (Σ_{s(e)=v} x_e)^{indeg(v)-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProtoLists(pub Vec<Vec<EdgeId>>);

impl ProtoLists {
    pub fn validate(&self, g: &DiGraph) -> Result<()> {
        if self.0.len() != g.vertex_count() {
            return Err(Error::InvalidTreeArray(
                "one proto list per vertex required".into(),
            ));
        }
        for v in g.vertices() {
            if g.indeg(v) == 0 {
                return Err(Error::ZeroIndegree(v.0));
            }
            let list = &self.0[v.0];
            if list.len() != g.indeg(v) - 1 {
                return Err(Error::InvalidTreeArray(format!(
                    "proto list of {} has length {}, expected {}",
                    g.vertex_name(v),
                    list.len(),
                    g.indeg(v) - 1
                )));
            }
            if let Some(&e) = list
                .iter()
                .find(|&&e| e.0 >= g.edge_count() || g.source(e) != v)
            {
                return Err(Error::InvalidTreeArray(format!(
                    "proto list of {} holds edge {} not leaving it",
                    g.vertex_name(v),
                    e.0
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeArray {
    root: VertexId,
    lists: Vec<Vec<ArrayEntry>>,
}

impl TreeArray {
    pub fn new(g: &DiGraph, root: VertexId, lists: Vec<Vec<ArrayEntry>>) -> Result<Self> {
        let a = TreeArray { root, lists };
        a.validate(g)?;
        Ok(a)
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn list(&self, v: VertexId) -> &[ArrayEntry] {
        &self.lists[v.0]
    }

    pub fn lists(&self) -> &[Vec<ArrayEntry>] {
        &self.lists
    }

    /// How often `e` occurs in the list of its source.
    pub fn count(&self, g: &DiGraph, e: EdgeId) -> usize {
        self.lists[g.source(e).0]
            .iter()
            .filter(|&&x| x == ArrayEntry::Edge(e))
            .count()
    }

    /// The tree formed by the last entries of the non-root lists.
    pub fn last_elements_tree(&self, g: &DiGraph) -> Result<SpanningTree> {
        let out_edge = g
            .vertices()
            .map(|v| match self.lists[v.0].last() {
                Some(&ArrayEntry::Edge(e)) if v != self.root => Ok(Some(e)),
                Some(ArrayEntry::Omega) if v == self.root => Ok(None),
                _ => Err(Error::InvalidTreeArray(format!(
                    "list of {} ends badly",
                    g.vertex_name(v)
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        SpanningTree::new(g, self.root, out_edge)
            .map_err(|e| Error::InvalidTreeArray(format!("last entries: {e}")))
    }

    pub fn validate(&self, g: &DiGraph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTreeArray(msg));
        if self.lists.len() != g.vertex_count() {
            return bad(format!(
                "{} lists for {} vertices",
                self.lists.len(),
                g.vertex_count()
            ));
        }
        if self.root.0 >= g.vertex_count() {
            return bad(format!("root {} out of range", self.root.0));
        }
        let mut omegas = 0;
        for v in g.vertices() {
            let list = &self.lists[v.0];
            if list.len() != g.indeg(v) {
                return bad(format!(
                    "list of {} has length {}, indegree is {}",
                    g.vertex_name(v),
                    list.len(),
                    g.indeg(v)
                ));
            }
            for (i, entry) in list.iter().enumerate() {
                match *entry {
                    ArrayEntry::Omega => {
                        omegas += 1;
                        if v != self.root || i + 1 != list.len() {
                            return bad("Ω must be the last entry of the root's list".into());
                        }
                    }
                    ArrayEntry::Edge(e) => {
                        if e.0 >= g.edge_count() || g.source(e) != v {
                            return bad(format!(
                                "list of {} holds edge {} not leaving it",
                                g.vertex_name(v),
                                e.0
                            ));
                        }
                    }
                }
            }
        }
        if omegas != 1 {
            return bad(format!("{omegas} Ω entries, expected exactly one"));
        }
        self.last_elements_tree(g).map(drop)
    }

    pub fn to_json(&self, g: &DiGraph) -> TreeArrayJson {
        TreeArrayJson {
            root: g.vertex_name(self.root),
            lists: g
                .vertices()
                .map(|v| {
                    let entries = self.lists[v.0]
                        .iter()
                        .map(|x| match *x {
                            ArrayEntry::Edge(e) => g.edge_name(e),
                            ArrayEntry::Omega => OMEGA.to_string(),
                        })
                        .collect();
                    (g.vertex_name(v), entries)
                })
                .collect(),
        }
    }
}

impl fmt::Display for TreeArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, list) in self.lists.iter().enumerate() {
            let entries: Vec<String> = list.iter().map(ToString::to_string).collect();
            writeln!(f, "v{v}: [{}]", entries.join(", "))?;
        }
        Ok(())
    }
}

/// `{"root": vertex, "lists": {vertex: [edge | "OMEGA", ..]}}`, by vertex and
/// edge names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeArrayJson {
    pub root: String,
    pub lists: BTreeMap<String, Vec<String>>,
}

impl TreeArrayJson {
    pub fn to_tree_array(&self, g: &DiGraph) -> Result<TreeArray> {
        if g.find_edge(OMEGA).is_some() {
            return Err(Error::InvalidParameter(format!("an edge is named {OMEGA}")));
        }
        let vertex = |name: &str| {
            g.find_vertex(name)
                .ok_or_else(|| Error::InvalidTreeArray(format!("unknown vertex {name:?}")))
        };
        let root = vertex(&self.root)?;
        let mut lists = vec![Vec::new(); g.vertex_count()];
        for (name, entries) in &self.lists {
            let v = vertex(name)?;
            lists[v.0] = entries
                .iter()
                .map(|x| match x.as_str() {
                    OMEGA => Ok(ArrayEntry::Omega),
                    name => g
                        .find_edge(name)
                        .map(ArrayEntry::Edge)
                        .ok_or_else(|| Error::InvalidTreeArray(format!("unknown edge {name:?}"))),
                })
                .collect::<Result<_>>()?;
        }
        TreeArray::new(g, root, lists)
    }
}

/// A spanning tree of 𝓛G written in base-graph edge names:
/// `{"root": edge, "edges": [[f, g], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineTreeJson {
    pub root: String,
    pub edges: Vec<(String, String)>,
}

/// Builds a tree array from a spanning tree of `g` and proto lists.
pub fn make_tree_array(g: &DiGraph, tree: &SpanningTree, proto: &ProtoLists) -> Result<TreeArray> {
    tree.validate(g)?;
    proto.validate(g)?;
    let lists = g
        .vertices()
        .map(|v| {
            let mut list: Vec<ArrayEntry> =
                proto.0[v.0].iter().map(|&e| ArrayEntry::Edge(e)).collect();
            list.push(tree.out_edge(v).map_or(ArrayEntry::Omega, ArrayEntry::Edge));
            list
        })
        .collect();
    TreeArray::new(g, tree.root(), lists)
}

/// σ and π for one graph and one edge order, with the line graph built once.
#[derive(Debug, Clone)]
pub struct Bijection<'g> {
    base: &'g DiGraph,
    line: DiGraph,
    map: LineGraphMap,
    order: EdgeOrder,
}

impl<'g> Bijection<'g> {
    pub fn new(g: &'g DiGraph, order: EdgeOrder) -> Result<Self> {
        if order.len() != g.edge_count() {
            return Err(Error::InvalidParameter(format!(
                "edge order covers {} edges, graph has {}",
                order.len(),
                g.edge_count()
            )));
        }
        let (line, map) = line_graph(g);
        Ok(Bijection {
            base: g,
            line,
            map,
            order,
        })
    }

    pub fn with_natural_order(g: &'g DiGraph) -> Self {
        Self::new(g, EdgeOrder::natural(g.edge_count())).expect("natural order fits")
    }

    pub fn base(&self) -> &DiGraph {
        self.base
    }

    pub fn line_graph(&self) -> &DiGraph {
        &self.line
    }

    pub fn map(&self) -> &LineGraphMap {
        &self.map
    }

    pub fn order(&self) -> &EdgeOrder {
        &self.order
    }

    /// σ: tree array of `G` → spanning tree of 𝓛G, rooted at the edge whose
    /// pop yielded Ω.
    ///
    /// Fails with [`Error::Invariant`] if the selection set or a popped list
    /// is ever empty, or if the result's indegrees differ from the array's
    /// edge counts; neither can happen for a valid array.
    pub fn sigma(&self, array: &TreeArray) -> Result<SpanningTree> {
        let g = self.base;
        array.validate(g)?;

        let initial: Vec<usize> = g.edge_ids().map(|e| array.count(g, e)).collect();
        let mut remaining = initial.clone();
        let mut head = vec![0usize; g.vertex_count()];
        let mut has_out = vec![false; g.edge_count()];
        let mut line_out: Vec<Option<EdgeId>> = vec![None; g.edge_count()];
        let mut ready: BTreeSet<(usize, EdgeId)> = g
            .edge_ids()
            .filter(|e| remaining[e.0] == 0)
            .map(|e| (self.order.rank(e), e))
            .collect();

        let root = loop {
            let (_, f) = ready
                .pop_first()
                .ok_or_else(|| Error::Invariant("σ found no selectable edge".into()))?;
            let v = g.target(f);
            let list = array.list(v);
            let entry = *list.get(head[v.0]).ok_or_else(|| {
                Error::Invariant(format!("σ popped the empty list of {}", g.vertex_name(v)))
            })?;
            head[v.0] += 1;
            let next = match entry {
                ArrayEntry::Omega => break f,
                ArrayEntry::Edge(next) => next,
            };
            let line_edge = self.map.line_edge(f, next).ok_or_else(|| {
                Error::Invariant(format!("({}, {}) is not a line-graph edge", f.0, next.0))
            })?;
            line_out[f.0] = Some(line_edge);
            has_out[f.0] = true;
            remaining[next.0] -= 1;
            if remaining[next.0] == 0 && !has_out[next.0] {
                ready.insert((self.order.rank(next), next));
            }
        };

        let popped: usize = head.iter().sum();
        if popped != g.edge_count() {
            return Err(Error::Invariant(format!(
                "σ stopped after {popped} of {} pops",
                g.edge_count()
            )));
        }
        let tree = SpanningTree::new(&self.line, self.map.vertex_of(root), line_out)
            .map_err(|e| Error::Invariant(format!("σ output is not a spanning tree: {e}")))?;
        for e in g.edge_ids() {
            let indeg = tree.indeg(&self.line, self.map.vertex_of(e));
            if indeg != initial[e.0] {
                return Err(Error::Invariant(format!(
                    "edge {} has indegree {indeg} in σ's tree but occurs {} times",
                    e.0, initial[e.0]
                )));
            }
        }
        Ok(tree)
    }

    /// π: spanning tree of 𝓛G → tree array of `G`.
    ///
    /// Leaves are the vertices with no incoming tree edge; the root is only
    /// taken once it is the last vertex left. After each removal the leaf set
    /// is recomputed.
    pub fn pi(&self, tree: &SpanningTree) -> Result<TreeArray> {
        let g = self.base;
        tree.validate(&self.line)?;

        let succ: Vec<Option<EdgeId>> = g
            .edge_ids()
            .map(|e| {
                tree.out_edge(self.map.vertex_of(e))
                    .map(|le| self.map.pair_of(le).1)
            })
            .collect();
        let root = self.map.edge_of(tree.root());
        let mut indeg = vec![0usize; g.edge_count()];
        for s in succ.iter().flatten() {
            indeg[s.0] += 1;
        }
        let mut leaves: BTreeSet<(usize, EdgeId)> = g
            .edge_ids()
            .filter(|&e| e != root && indeg[e.0] == 0)
            .map(|e| (self.order.rank(e), e))
            .collect();
        let mut lists: Vec<Vec<ArrayEntry>> = g
            .vertices()
            .map(|v| Vec::with_capacity(g.indeg(v)))
            .collect();

        while let Some((_, f)) = leaves.pop_first() {
            let next = succ[f.0].expect("non-root vertices have an out-edge");
            lists[g.target(f).0].push(ArrayEntry::Edge(next));
            indeg[next.0] -= 1;
            if indeg[next.0] == 0 && next != root {
                leaves.insert((self.order.rank(next), next));
            }
        }
        lists[g.target(root).0].push(ArrayEntry::Omega);

        TreeArray::new(g, g.target(root), lists)
            .map_err(|e| Error::Invariant(format!("π output is not a tree array: {e}")))
    }

    pub fn line_tree_to_json(&self, tree: &SpanningTree) -> LineTreeJson {
        let g = self.base;
        LineTreeJson {
            root: g.edge_name(self.map.edge_of(tree.root())),
            edges: tree
                .edges()
                .map(|le| {
                    let (f, next) = self.map.pair_of(le);
                    (g.edge_name(f), g.edge_name(next))
                })
                .collect(),
        }
    }

    pub fn line_tree_from_json(&self, json: &LineTreeJson) -> Result<SpanningTree> {
        let g = self.base;
        let edge = |name: &str| {
            g.find_edge(name)
                .ok_or_else(|| Error::InvalidTree(format!("unknown edge {name:?}")))
        };
        let root = self.map.vertex_of(edge(&json.root)?);
        let line_edges = json
            .edges
            .iter()
            .map(|(f, next)| {
                let (f, next) = (edge(f)?, edge(next)?);
                self.map.line_edge(f, next).ok_or_else(|| {
                    Error::InvalidTree(format!("({}, {}) is not a line-graph edge", f.0, next.0))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SpanningTree::from_edges(&self.line, root, line_edges)
    }
}

/// Number of tree arrays: κ(G) Π_v outdeg(v)^{indeg(v)-1}.
pub fn tree_array_count(g: &DiGraph) -> BigUint {
    let factor: BigUint = g
        .vertices()
        .map(|v| num_traits::pow(BigUint::from(g.outdeg(v)), g.indeg(v).saturating_sub(1)))
        .product();
    count_trees(g) * factor
}

/// Every tree array of `g`, ordered by spanning tree (in enumeration order)
/// and then lexicographically by proto-list choices.
pub fn enumerate_tree_arrays(g: &DiGraph, bound: u128) -> Result<TreeArrays<'_>> {
    if let Some(v) = g.vertices().find(|&v| g.indeg(v) == 0) {
        return Err(Error::ZeroIndegree(v.0));
    }
    let count = tree_array_count(g);
    if count > BigUint::from(bound) {
        let needed = u128::try_from(&count).unwrap_or(u128::MAX);
        return Err(Error::BoundExceeded { needed, bound });
    }
    let trees = enumerate_trees(g, bound)?;
    let slots: Vec<VertexId> = g
        .vertices()
        .flat_map(|v| std::iter::repeat_n(v, g.indeg(v) - 1))
        .collect();
    let done = trees.is_empty() || slots.iter().any(|&v| g.outdeg(v) == 0);
    Ok(TreeArrays {
        g,
        trees,
        tree_idx: 0,
        digits: vec![0; slots.len()],
        slots,
        done,
    })
}

pub struct TreeArrays<'g> {
    g: &'g DiGraph,
    trees: Vec<SpanningTree>,
    tree_idx: usize,
    slots: Vec<VertexId>,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for TreeArrays<'_> {
    type Item = TreeArray;

    fn next(&mut self) -> Option<TreeArray> {
        if self.done {
            return None;
        }
        let g = self.g;
        let tree = &self.trees[self.tree_idx];
        let mut lists: Vec<Vec<ArrayEntry>> = g.vertices().map(|_| Vec::new()).collect();
        for (&v, &d) in self.slots.iter().zip(&self.digits) {
            lists[v.0].push(ArrayEntry::Edge(g.out_edges(v)[d]));
        }
        for v in g.vertices() {
            lists[v.0].push(tree.out_edge(v).map_or(ArrayEntry::Omega, ArrayEntry::Edge));
        }
        let array = TreeArray {
            root: tree.root(),
            lists,
        };

        // odometer over proto choices, last slot fastest
        let mut i = self.slots.len();
        loop {
            if i == 0 {
                self.tree_idx += 1;
                self.done = self.tree_idx == self.trees.len();
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < g.outdeg(self.slots[i]) {
                break;
            }
            self.digits[i] = 0;
        }
        Some(array)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arborescence::DEFAULT_BOUND;
    use crate::digraph::{debruijn, kautz};
    use std::collections::HashSet;

    fn two_cycle() -> DiGraph {
        DiGraph::from_edges(None, &[(0, 1), (1, 0)]).unwrap()
    }

    fn e(i: usize) -> ArrayEntry {
        ArrayEntry::Edge(EdgeId(i))
    }

    #[test]
    fn make_tree_array_on_two_cycle() {
        let g = two_cycle();
        let t = SpanningTree::from_edges(&g, VertexId(0), [EdgeId(1)]).unwrap();
        let a = make_tree_array(&g, &t, &ProtoLists(vec![vec![], vec![]])).unwrap();
        assert_eq!(a.list(VertexId(0)), [ArrayEntry::Omega]);
        assert_eq!(a.list(VertexId(1)), [e(1)]);
    }

    #[test]
    fn make_tree_array_needs_positive_indegree() {
        let g = DiGraph::from_edges(None, &[(0, 1), (1, 1)]).unwrap();
        let t = SpanningTree::from_edges(&g, VertexId(1), [EdgeId(0)]).unwrap();
        let proto = ProtoLists(vec![vec![], vec![EdgeId(1)]]);
        assert_eq!(make_tree_array(&g, &t, &proto), Err(Error::ZeroIndegree(0)));
    }

    #[test]
    fn sigma_and_pi_on_two_cycle() {
        let g = two_cycle();
        let bij = Bijection::with_natural_order(&g);
        let a = TreeArray::new(&g, VertexId(0), vec![vec![ArrayEntry::Omega], vec![e(1)]]).unwrap();
        let t = bij.sigma(&a).unwrap();
        // tree {(e0, e1)} rooted at e1
        assert_eq!(t.root(), VertexId(1));
        let json = bij.line_tree_to_json(&t);
        assert_eq!(json.root, "1");
        assert_eq!(json.edges, [("0".to_string(), "1".to_string())]);
        assert_eq!(bij.pi(&t).unwrap(), a);
    }

    #[test]
    fn sigma_and_pi_on_self_loop() {
        let g = DiGraph::from_edges(None, &[(0, 0)]).unwrap();
        let bij = Bijection::with_natural_order(&g);
        let a = TreeArray::new(&g, VertexId(0), vec![vec![ArrayEntry::Omega]]).unwrap();
        let t = bij.sigma(&a).unwrap();
        assert_eq!(t.root(), VertexId(0));
        assert_eq!(t.edge_count(), 0);
        assert_eq!(bij.pi(&t).unwrap(), a);
    }

    #[test]
    fn debruijn_arrays_hit_every_line_tree_once() {
        let g = debruijn(2, 1).unwrap();
        let bij = Bijection::with_natural_order(&g);
        let arrays: Vec<_> = enumerate_tree_arrays(&g, DEFAULT_BOUND).unwrap().collect();
        assert_eq!(arrays.len(), 8);
        let trees: HashSet<_> = arrays.iter().map(|a| bij.sigma(a).unwrap()).collect();
        assert_eq!(trees.len(), 8);
        let expected: HashSet<_> = enumerate_trees(bij.line_graph(), DEFAULT_BOUND)
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(trees, expected);
        for a in &arrays {
            assert_eq!(&bij.pi(&bij.sigma(a).unwrap()).unwrap(), a);
        }
    }

    #[test]
    fn tree_array_counts() {
        assert_eq!(
            enumerate_tree_arrays(&two_cycle(), DEFAULT_BOUND)
                .unwrap()
                .count(),
            2
        );
        let k = kautz(2, 1).unwrap();
        let arrays: Vec<_> = enumerate_tree_arrays(&k, DEFAULT_BOUND).unwrap().collect();
        assert_eq!(arrays.len(), 72);
        assert_eq!(arrays.iter().collect::<HashSet<_>>().len(), 72);
        assert!(arrays.iter().all(|a| a.validate(&k).is_ok()));
        assert_eq!(tree_array_count(&k), BigUint::from(72u32));
        assert!(matches!(
            enumerate_tree_arrays(&k, 10),
            Err(Error::BoundExceeded {
                needed: 72,
                bound: 10
            })
        ));
    }

    #[test]
    fn invalid_arrays_are_rejected() {
        let g = two_cycle();
        let bij = Bijection::with_natural_order(&g);
        // Ω not at the root
        let bad = TreeArray {
            root: VertexId(0),
            lists: vec![vec![e(0)], vec![ArrayEntry::Omega]],
        };
        assert!(matches!(bij.sigma(&bad), Err(Error::InvalidTreeArray(_))));
        // wrong source
        assert!(
            TreeArray::new(&g, VertexId(0), vec![vec![ArrayEntry::Omega], vec![e(0)]]).is_err()
        );
        // two Ω
        assert!(TreeArray::new(
            &g,
            VertexId(0),
            vec![vec![ArrayEntry::Omega], vec![ArrayEntry::Omega]]
        )
        .is_err());
        // wrong length
        assert!(TreeArray::new(&g, VertexId(0), vec![vec![ArrayEntry::Omega], vec![]]).is_err());
        // last entries cycle instead of reaching the root
        let g = DiGraph::from_edges(None, &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 2)]).unwrap();
        let lists = vec![vec![e(0)], vec![e(2), ArrayEntry::Omega], vec![e(4), e(3)]];
        assert!(TreeArray::new(&g, VertexId(1), lists).is_ok());
        let lists = vec![vec![ArrayEntry::Omega], vec![e(1), e(2)], vec![e(3), e(4)]];
        assert!(TreeArray::new(&g, VertexId(0), lists).is_err());
    }

    #[test]
    fn pi_rejects_non_trees() {
        let g = two_cycle();
        let bij = Bijection::with_natural_order(&g);
        let json = LineTreeJson {
            root: "1".into(),
            edges: vec![("1".into(), "0".into())],
        };
        assert!(bij.line_tree_from_json(&json).is_err());
        let json = LineTreeJson {
            root: "1".into(),
            edges: vec![("0".into(), "1".into())],
        };
        assert!(bij.line_tree_from_json(&json).is_ok());
    }

    #[test]
    fn json_forms_round_trip() {
        let g = kautz(2, 1).unwrap();
        let bij = Bijection::with_natural_order(&g);
        for a in enumerate_tree_arrays(&g, DEFAULT_BOUND).unwrap().take(10) {
            let j = a.to_json(&g);
            let text = serde_json::to_string(&j).unwrap();
            let back: TreeArrayJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_tree_array(&g).unwrap(), a);
            let t = bij.sigma(&a).unwrap();
            assert_eq!(
                bij.line_tree_from_json(&bij.line_tree_to_json(&t)).unwrap(),
                t
            );
        }
    }

    #[test]
    fn shuffled_orders_still_invert() {
        let g = kautz(2, 1).unwrap();
        for seed in 1..=3 {
            let bij = Bijection::new(&g, EdgeOrder::shuffled(g.edge_count(), seed)).unwrap();
            for a in enumerate_tree_arrays(&g, DEFAULT_BOUND).unwrap() {
                assert_eq!(bij.pi(&bij.sigma(&a).unwrap()).unwrap(), a);
            }
        }
        assert!(Bijection::new(&g, EdgeOrder::natural(3)).is_err());
        assert!(EdgeOrder::from_sequence(&[EdgeId(0), EdgeId(0)]).is_err());
    }
}
