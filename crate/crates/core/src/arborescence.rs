//! Oriented spanning trees: brute-force enumeration, Matrix-Tree counts, and
//! the edge/vertex generating functions that the line-graph identity relates.
//!
//! A spanning tree here is an arborescence toward its root: every non-root
//! vertex has exactly one out-edge and following out-edges always ends at the
//! root. Counts and generating functions sum over all roots.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::digraph::{line_graph, DiGraph, EdgeId, VertexId};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::poly::{GenPoly, Monomial, VarFamily};

/// Default cap on the number of raw out-edge assignments an enumeration may
/// consider (summed over roots).
pub const DEFAULT_BOUND: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpanningTree {
    root: VertexId,
    out_edge: Vec<Option<EdgeId>>,
}

impl SpanningTree {
    /// `out_edge[v]` is the tree edge leaving `v`, `None` exactly at the root.
    pub fn new(g: &DiGraph, root: VertexId, out_edge: Vec<Option<EdgeId>>) -> Result<Self> {
        let t = SpanningTree { root, out_edge };
        t.validate(g)?;
        Ok(t)
    }

    /// Builds a tree from its edge set.
    pub fn from_edges(
        g: &DiGraph,
        root: VertexId,
        edges: impl IntoIterator<Item = EdgeId>,
    ) -> Result<Self> {
        let mut out_edge = vec![None; g.vertex_count()];
        for e in edges {
            if e.0 >= g.edge_count() {
                return Err(Error::EdgeOutOfRange {
                    index: e.0,
                    count: g.edge_count(),
                });
            }
            let s = g.source(e);
            if out_edge[s.0].replace(e).is_some() {
                return Err(Error::InvalidTree(format!(
                    "two out-edges at {}",
                    g.vertex_name(s)
                )));
            }
        }
        Self::new(g, root, out_edge)
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn out_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.out_edge[v.0]
    }

    /// Tree edges in order of their source vertex.
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.out_edge.iter().flatten().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.out_edge.iter().flatten().count()
    }

    /// Number of tree edges entering `v`.
    pub fn indeg(&self, g: &DiGraph, v: VertexId) -> usize {
        self.edges().filter(|&e| g.target(e) == v).count()
    }

    pub fn validate(&self, g: &DiGraph) -> Result<()> {
        let n = g.vertex_count();
        if self.out_edge.len() != n {
            return Err(Error::InvalidTree(format!(
                "{} out-edge slots for {n} vertices",
                self.out_edge.len()
            )));
        }
        if self.root.0 >= n {
            return Err(Error::VertexOutOfRange {
                index: self.root.0,
                count: n,
            });
        }
        for v in g.vertices() {
            match self.out_edge[v.0] {
                None if v == self.root => {}
                Some(_) if v == self.root => {
                    return Err(Error::InvalidTree("root has an out-edge".into()))
                }
                None => {
                    return Err(Error::InvalidTree(format!(
                        "vertex {} has no out-edge",
                        g.vertex_name(v)
                    )))
                }
                Some(e) => {
                    if e.0 >= g.edge_count() || g.source(e) != v {
                        return Err(Error::InvalidTree(format!(
                            "edge {} does not leave {}",
                            e.0,
                            g.vertex_name(v)
                        )));
                    }
                }
            }
        }
        for v in g.vertices() {
            let mut w = v;
            for _ in 0..n {
                match self.out_edge[w.0] {
                    Some(e) => w = g.target(e),
                    None => break,
                }
            }
            if w != self.root {
                return Err(Error::InvalidTree(format!(
                    "no path from {} to the root",
                    g.vertex_name(v)
                )));
            }
        }
        Ok(())
    }
}

/// Raw assignment count Σ_r Π_{v≠r} outdeg(v), saturating.
pub fn candidate_count(g: &DiGraph) -> u128 {
    g.vertices()
        .map(|r| {
            g.vertices()
                .filter(|&v| v != r)
                .fold(1u128, |acc, v| acc.saturating_mul(g.outdeg(v) as u128))
        })
        .fold(0u128, u128::saturating_add)
}

fn check_bound(g: &DiGraph, bound: u128) -> Result<()> {
    let needed = candidate_count(g);
    if needed > bound {
        return Err(Error::BoundExceeded { needed, bound });
    }
    Ok(())
}

/// Calls `visit(root, out_edge)` for every spanning tree of `g`, ordered by
/// root and then lexicographically by out-edge choice in vertex order.
///
/// Partial assignments that close a cycle are pruned, so the work is
/// proportional to the number of trees rather than to the bound.
pub fn visit_trees(
    g: &DiGraph,
    bound: u128,
    mut visit: impl FnMut(VertexId, &[Option<EdgeId>]),
) -> Result<()> {
    check_bound(g, bound)?;
    let mut assign = vec![None; g.vertex_count()];
    for root in g.vertices() {
        let order: Vec<VertexId> = g.vertices().filter(|&v| v != root).collect();
        extend(g, root, &order, 0, &mut assign, &mut visit);
    }
    Ok(())
}

fn extend(
    g: &DiGraph,
    root: VertexId,
    order: &[VertexId],
    pos: usize,
    assign: &mut [Option<EdgeId>],
    visit: &mut impl FnMut(VertexId, &[Option<EdgeId>]),
) {
    let Some(&v) = order.get(pos) else {
        visit(root, assign);
        return;
    };
    'edges: for &e in g.out_edges(v) {
        let mut w = g.target(e);
        while w != root {
            if w == v {
                continue 'edges;
            }
            match assign[w.0] {
                Some(next) => w = g.target(next),
                None => break,
            }
        }
        assign[v.0] = Some(e);
        extend(g, root, order, pos + 1, assign, visit);
        assign[v.0] = None;
    }
}

/// Every spanning tree of `g`, in [`visit_trees`] order.
pub fn enumerate_trees(g: &DiGraph, bound: u128) -> Result<Vec<SpanningTree>> {
    let mut out = Vec::new();
    visit_trees(g, bound, |root, assign| {
        out.push(SpanningTree {
            root,
            out_edge: assign.to_vec(),
        })
    })?;
    Ok(out)
}

/// Weighted out-Laplacian with row and column `r` removed; its determinant
/// is Σ over trees rooted at `r` of the product of edge weights.
fn reduced_laplacian(g: &DiGraph, r: VertexId, weight: impl Fn(EdgeId) -> BigInt) -> IntMatrix {
    let n = g.vertex_count();
    let mut l = IntMatrix::zeros(n, n);
    for e in g.edge_ids() {
        let (s, t) = (g.source(e).0, g.target(e).0);
        if s == t {
            continue;
        }
        let w = weight(e);
        l[(s, s)] += &w;
        l[(s, t)] -= w;
    }
    l.minor(r.0, r.0)
}

/// κ(G, r) by the Matrix-Tree theorem.
pub fn count_trees_rooted(g: &DiGraph, r: VertexId) -> BigUint {
    let det = reduced_laplacian(g, r, |_| BigInt::one()).determinant();
    det.abs().to_biguint().expect("absolute value")
}

/// κ(G), summed over all roots.
pub fn count_trees(g: &DiGraph) -> BigUint {
    g.vertices().map(|r| count_trees_rooted(g, r)).sum()
}

/// Σ_T Π_{e∈T} weight(e) over all trees, by determinants.
pub fn weighted_tree_sum(g: &DiGraph, weight: impl Fn(EdgeId) -> BigInt + Copy) -> BigInt {
    g.vertices()
        .map(|r| reduced_laplacian(g, r, weight).determinant())
        .sum()
}

/// κ^edge(G) = Σ_T Π_{e∈T} x_e.
pub fn kappa_edge(g: &DiGraph, bound: u128) -> Result<GenPoly> {
    let mut p = GenPoly::zero(VarFamily::Edge);
    visit_trees(g, bound, |_, assign| {
        p.add_term(
            Monomial::from_vars(assign.iter().flatten().map(|e| e.0)),
            BigUint::one(),
        )
    })?;
    Ok(p)
}

/// κ^vertex(G) = Σ_T Π_{e∈T} x_{t(e)}.
pub fn kappa_vertex(g: &DiGraph, bound: u128) -> Result<GenPoly> {
    let mut p = GenPoly::zero(VarFamily::Vertex);
    visit_trees(g, bound, |_, assign| {
        let vars = assign.iter().flatten().map(|&e| g.target(e).0);
        p.add_term(Monomial::from_vars(vars), BigUint::one())
    })?;
    Ok(p)
}

fn require_positive_indeg(g: &DiGraph) -> Result<()> {
    match g.vertices().find(|&v| g.indeg(v) == 0) {
        Some(v) => Err(Error::ZeroIndegree(v.0)),
        None => Ok(()),
    }
}

/// κ^edge(G) · Π_v (Σ_{s(e)=v} x_e)^{indeg(v)-1}, fully expanded.
pub fn rhs_product(g: &DiGraph, bound: u128) -> Result<GenPoly> {
    require_positive_indeg(g)?;
    let mut p = kappa_edge(g, bound)?;
    for v in g.vertices() {
        let out = GenPoly::sum_of_vars(VarFamily::Edge, g.out_edges(v).iter().map(|e| e.0));
        p = p.mul(&out.pow(g.indeg(v) - 1));
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Monomial over edge names, e.g. `x[01]^2*x[10]`.
    pub monomial: String,
    pub lhs_coeff: String,
    pub rhs_coeff: String,
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    /// κ^vertex(𝓛G) with variables renamed to the edges of G.
    pub lhs: GenPoly,
    pub rhs: GenPoly,
    pub holds: bool,
    pub witness: Option<Witness>,
}

/// `{lhs_terms, rhs_terms, holds, witness}`
#[derive(Debug, Clone, Serialize)]
pub struct IdentityJson {
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl IdentityReport {
    pub fn to_json(&self) -> IdentityJson {
        IdentityJson {
            lhs_terms: self.lhs.term_count(),
            rhs_terms: self.rhs.term_count(),
            holds: self.holds,
            witness: self.witness.clone(),
        }
    }
}

pub fn monomial_with_names(g: &DiGraph, m: &Monomial) -> String {
    let vars = m.vars();
    if vars.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < vars.len() {
        let power = vars[i..].iter().take_while(|&&x| x == vars[i]).count();
        let name = g.edge_name(EdgeId(vars[i]));
        parts.push(if power > 1 {
            format!("x[{name}]^{power}")
        } else {
            format!("x[{name}]")
        });
        i += power;
    }
    parts.join("*")
}

/// Exact check of κ^vertex(𝓛G) = κ^edge(G) Π_v (Σ_{s(e)=v} x_e)^{indeg(v)-1}
/// as monomial multisets, with the left side enumerated on the line graph.
pub fn verify_identity(g: &DiGraph, bound: u128) -> Result<IdentityReport> {
    require_positive_indeg(g)?;
    let (lg, map) = line_graph(g);
    let lhs = kappa_vertex(&lg, bound)?.rename(VarFamily::Edge, |v| map.edge_of(VertexId(v)).0);
    let rhs = rhs_product(g, bound)?;
    let witness = lhs.first_difference(&rhs).map(|(m, a, b)| Witness {
        monomial: monomial_with_names(g, &m),
        lhs_coeff: a.to_string(),
        rhs_coeff: b.to_string(),
    });
    Ok(IdentityReport {
        holds: witness.is_none(),
        lhs,
        rhs,
        witness,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RandomizedReport {
    pub trials: usize,
    pub holds: bool,
    /// Always true: agreement at random points is evidence, not proof.
    pub probabilistic: bool,
}

/// Evaluates both sides of the identity at random integer points using
/// weighted Matrix-Tree determinants; usable far beyond the expansion bound.
pub fn verify_identity_randomized(
    g: &DiGraph,
    seed: u64,
    trials: usize,
) -> Result<RandomizedReport> {
    require_positive_indeg(g)?;
    let (lg, map) = line_graph(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut holds = true;
    for _ in 0..trials {
        let x: Vec<BigInt> = g
            .edge_ids()
            .map(|_| BigInt::from(rng.gen_range(1u32..=1000)))
            .collect();
        // line-graph edge (e, f) contributes x_{t((e,f))} = x_f
        let lhs = weighted_tree_sum(&lg, |le| x[map.pair_of(le).1 .0].clone());
        let mut rhs = weighted_tree_sum(g, |e| x[e.0].clone());
        for v in g.vertices() {
            let s: BigInt = g.out_edges(v).iter().map(|e| &x[e.0]).sum();
            rhs *= num_traits::pow(s, g.indeg(v) - 1);
        }
        if lhs != rhs {
            holds = false;
            break;
        }
    }
    Ok(RandomizedReport {
        trials,
        holds,
        probabilistic: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnuthReport {
    /// κ(𝓛G)
    pub line_graph_trees: String,
    /// κ(G)
    pub trees: String,
    /// Π_v outdeg(v)^{indeg(v)-1}
    pub factor: String,
    pub holds: bool,
}

/// κ(𝓛G) = κ(G) Π_v outdeg(v)^{indeg(v)-1}, both sides by determinants.
pub fn knuth_check(g: &DiGraph) -> Result<KnuthReport> {
    require_positive_indeg(g)?;
    let (lg, _) = line_graph(g);
    let lhs = count_trees(&lg);
    let kappa = count_trees(g);
    let factor: BigUint = g
        .vertices()
        .map(|v| num_traits::pow(BigUint::from(g.outdeg(v)), g.indeg(v) - 1))
        .product();
    let holds = lhs == &kappa * &factor;
    Ok(KnuthReport {
        line_graph_trees: lhs.to_string(),
        trees: kappa.to_string(),
        factor: factor.to_string(),
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{debruijn, kautz};

    fn two_cycle() -> DiGraph {
        DiGraph::from_edges(None, &[(0, 1), (1, 0)]).unwrap()
    }

    fn self_loop() -> DiGraph {
        DiGraph::from_edges(None, &[(0, 0)]).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn enumerate_small_graphs() {
        let trees = enumerate_trees(&two_cycle(), DEFAULT_BOUND).unwrap();
        assert_eq!(trees.len(), 2);
        assert_eq!(trees[0].root(), VertexId(0));
        assert_eq!(trees[0].edges().collect::<Vec<_>>(), [EdgeId(1)]);

        let trees = enumerate_trees(&self_loop(), DEFAULT_BOUND).unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].edge_count(), 0);

        assert_eq!(
            enumerate_trees(&debruijn(2, 1).unwrap(), DEFAULT_BOUND)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn bound_is_enforced() {
        let g = debruijn(3, 2).unwrap();
        assert_eq!(candidate_count(&g), 9 * 3u128.pow(8));
        assert!(matches!(
            enumerate_trees(&g, 1000),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn determinant_counts() {
        let k = kautz(2, 1).unwrap();
        for r in k.vertices() {
            assert_eq!(count_trees_rooted(&k, r), big(3));
        }
        assert_eq!(count_trees(&k), big(9));
        assert_eq!(count_trees_rooted(&self_loop(), VertexId(0)), big(1));
        assert_eq!(count_trees(&debruijn(2, 2).unwrap()), big(8));
        let disconnected = DiGraph::from_edges(None, &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(count_trees(&disconnected), big(0));
    }

    #[test]
    fn determinant_agrees_with_enumeration_per_root() {
        let graphs = [
            kautz(2, 2).unwrap(),
            debruijn(2, 2).unwrap(),
            DiGraph::from_edges(None, &[(0, 1), (0, 1), (1, 2), (2, 0), (2, 2), (1, 0)]).unwrap(),
        ];
        for g in &graphs {
            let trees = enumerate_trees(g, DEFAULT_BOUND).unwrap();
            for r in g.vertices() {
                let n = trees.iter().filter(|t| t.root() == r).count();
                assert_eq!(count_trees_rooted(g, r), big(n as u64));
            }
            for t in &trees {
                t.validate(g).unwrap();
            }
        }
    }

    #[test]
    fn generating_functions() {
        let g = two_cycle();
        let ke = kappa_edge(&g, DEFAULT_BOUND).unwrap();
        assert_eq!(ke, GenPoly::sum_of_vars(VarFamily::Edge, [0, 1]));
        let kv = kappa_vertex(&g, DEFAULT_BOUND).unwrap();
        assert_eq!(kv, GenPoly::sum_of_vars(VarFamily::Vertex, [0, 1]));
        let kl = kappa_edge(&self_loop(), DEFAULT_BOUND).unwrap();
        assert_eq!(kl, GenPoly::one(VarFamily::Edge));

        let k = kautz(2, 2).unwrap();
        let ke = kappa_edge(&k, DEFAULT_BOUND).unwrap();
        assert_eq!(ke.eval_ones(), big(72));
        assert!(ke.terms().all(|(m, _)| m.degree() == k.vertex_count() - 1));
        assert_eq!(
            kappa_vertex(&k, DEFAULT_BOUND).unwrap().eval_ones(),
            big(72)
        );
    }

    #[test]
    fn rhs_product_examples() {
        let g = two_cycle();
        assert_eq!(
            rhs_product(&g, DEFAULT_BOUND).unwrap(),
            kappa_edge(&g, DEFAULT_BOUND).unwrap()
        );
        assert_eq!(
            rhs_product(&self_loop(), DEFAULT_BOUND).unwrap(),
            GenPoly::one(VarFamily::Edge)
        );
        let db = debruijn(2, 1).unwrap();
        assert_eq!(rhs_product(&db, DEFAULT_BOUND).unwrap().eval_ones(), big(8));
        let path = DiGraph::from_edges(None, &[(0, 1)]).unwrap();
        assert_eq!(
            rhs_product(&path, DEFAULT_BOUND),
            Err(Error::ZeroIndegree(0))
        );
    }

    #[test]
    fn identity_examples() {
        let r = verify_identity(&two_cycle(), DEFAULT_BOUND).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs, GenPoly::sum_of_vars(VarFamily::Edge, [0, 1]));

        let r = verify_identity(&debruijn(2, 1).unwrap(), DEFAULT_BOUND).unwrap();
        assert!(r.holds);
        assert_eq!(r.lhs.eval_ones(), big(8));

        let r = verify_identity(&kautz(2, 1).unwrap(), DEFAULT_BOUND).unwrap();
        assert!(r.holds);
        assert_eq!(r.rhs.eval_ones(), big(72));
        let json = serde_json::to_value(r.to_json()).unwrap();
        assert_eq!(json["holds"], true);
        assert!(json["witness"].is_null());

        assert!(verify_identity(
            &DiGraph::from_edges(None, &[(0, 1)]).unwrap(),
            DEFAULT_BOUND
        )
        .is_err());
    }

    #[test]
    fn randomized_identity_scales_past_the_bound() {
        let g = debruijn(3, 2).unwrap();
        let r = verify_identity_randomized(&g, 7, 3).unwrap();
        assert!(r.holds && r.probabilistic);
    }

    #[test]
    fn knuth_examples() {
        let r = knuth_check(&two_cycle()).unwrap();
        assert!(r.holds);
        assert_eq!((r.line_graph_trees.as_str(), r.trees.as_str()), ("2", "2"));
        let r = knuth_check(&debruijn(2, 1).unwrap()).unwrap();
        assert_eq!((r.line_graph_trees.as_str(), r.factor.as_str()), ("8", "4"));
        let r = knuth_check(&kautz(2, 1).unwrap()).unwrap();
        assert_eq!(
            (
                r.line_graph_trees.as_str(),
                r.trees.as_str(),
                r.factor.as_str()
            ),
            ("72", "9", "8")
        );
        assert!(r.holds);
    }

    #[test]
    fn tree_validation_rejects_bad_input() {
        let g = two_cycle();
        assert!(SpanningTree::from_edges(&g, VertexId(0), [EdgeId(1)]).is_ok());
        assert!(SpanningTree::from_edges(&g, VertexId(0), [EdgeId(0)]).is_err());
        assert!(SpanningTree::from_edges(&g, VertexId(0), []).is_err());
        assert!(SpanningTree::from_edges(&g, VertexId(0), [EdgeId(0), EdgeId(1)]).is_err());
        let lp = DiGraph::from_edges(None, &[(0, 1), (1, 1), (1, 0)]).unwrap();
        assert!(SpanningTree::from_edges(&lp, VertexId(0), [EdgeId(1)]).is_err());
    }
}
