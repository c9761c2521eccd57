//! Small multigraphs up to relabeling, and a reproducible sample of them.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::digraph::{debruijn, kautz, DiGraph};
use crate::error::Result;

pub const DEFAULT_SEED: u64 = 20_240_917;
pub const DEFAULT_SAMPLE: usize = 200;
pub const MAX_VERTICES: usize = 4;
pub const MAX_EDGES: usize = 8;

/// A multigraph on vertices `0..vertices` as a sorted edge list.
pub type EdgeList = (usize, Vec<(usize, usize)>);

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// The least relabeled sorted edge list over all vertex permutations.
fn canonical(edges: &[(usize, usize)], perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<_> = edges.iter().map(|&(s, t)| (p[s], p[t])).collect();
            e.sort_unstable();
            e
        })
        .min()
        .expect("at least one permutation")
}

/// Every multigraph with at most `max_vertices` vertices and `max_edges`
/// edges (loops allowed) in which each vertex has an in-edge, one per
/// isomorphism class, sorted by vertex count and then edge list.
pub fn small_digraphs(max_vertices: usize, max_edges: usize) -> Vec<EdgeList> {
    let mut seen: BTreeSet<EdgeList> = BTreeSet::new();
    for n in 1..=max_vertices {
        let perms = permutations(n);
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
        // nondecreasing sequences of pair indices, i.e. multisets of edges
        let mut stack: Vec<usize> = Vec::new();
        let mut indeg = vec![0usize; n];
        extend(
            &pairs, &mut stack, &mut indeg, n, max_edges, &perms, &mut seen,
        );
    }
    seen.into_iter().collect()
}

fn extend(
    pairs: &[(usize, usize)],
    stack: &mut Vec<usize>,
    indeg: &mut [usize],
    n: usize,
    max_edges: usize,
    perms: &[Vec<usize>],
    seen: &mut BTreeSet<EdgeList>,
) {
    if indeg.iter().all(|&d| d > 0) {
        let edges: Vec<_> = stack.iter().map(|&i| pairs[i]).collect();
        seen.insert((n, canonical(&edges, perms)));
    }
    if stack.len() == max_edges {
        return;
    }
    let missing = indeg.iter().filter(|&&d| d == 0).count();
    if missing > max_edges - stack.len() {
        return;
    }
    let from = stack.last().copied().unwrap_or(0);
    for i in from..pairs.len() {
        let t = pairs[i].1;
        stack.push(i);
        indeg[t] += 1;
        extend(pairs, stack, indeg, n, max_edges, perms, seen);
        indeg[t] -= 1;
        stack.pop();
    }
}

pub fn to_graph((n, edges): &EdgeList) -> DiGraph {
    DiGraph::from_edges(Some(*n), edges).expect("corpus graphs have edges")
}

/// Compact name such as `n3:0>1,1>2,2>0`.
pub fn name((n, edges): &EdgeList) -> String {
    let list: Vec<String> = edges.iter().map(|(s, t)| format!("{s}>{t}")).collect();
    format!("n{n}:{}", list.join(","))
}

/// `size` graphs drawn without replacement from [`small_digraphs`], kept in
/// their sorted order.
pub fn sample_digraphs(seed: u64, size: usize) -> Vec<EdgeList> {
    let all = small_digraphs(MAX_VERTICES, MAX_EDGES);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = sample(&mut rng, all.len(), size.min(all.len())).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|i| all[i].clone()).collect()
}

/// The sample plus `DB_1(2)`, `DB_2(2)` and `Kautz_1(2)`, with names.
pub fn acceptance_corpus(seed: u64, size: usize) -> Result<Vec<(String, DiGraph)>> {
    let mut out: Vec<(String, DiGraph)> = sample_digraphs(seed, size)
        .iter()
        .map(|g| (name(g), to_graph(g)))
        .collect();
    out.push(("DB_1(2)".into(), debruijn(2, 1)?));
    out.push(("DB_2(2)".into(), debruijn(2, 2)?));
    out.push(("Kautz_1(2)".into(), kautz(2, 1)?));
    Ok(out)
}
