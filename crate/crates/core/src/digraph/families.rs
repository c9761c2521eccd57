//! de Bruijn and Kautz graphs, their similarity classes, and the
//! class-covering cycle used to row-reduce their Laplacians.

use std::collections::{BTreeMap, HashMap};

use super::{DiGraph, Edge, VertexId};
use crate::error::{Error, Result};

/// Symbols are written as base-36 digits.
const MAX_SYMBOLS: usize = 36;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `DB_n(m)`: all length-`n` strings over `m` symbols.
    DeBruijn { m: usize, n: usize },
    /// `Kautz_n(m)`: length-`n` strings over `m + 1` symbols with no two
    /// equal adjacent characters.
    Kautz { m: usize, n: usize },
}

impl Family {
    pub fn m(self) -> usize {
        match self {
            Family::DeBruijn { m, .. } | Family::Kautz { m, .. } => m,
        }
    }

    pub fn n(self) -> usize {
        match self {
            Family::DeBruijn { n, .. } | Family::Kautz { n, .. } => n,
        }
    }

    pub fn with_n(self, n: usize) -> Family {
        match self {
            Family::DeBruijn { m, .. } => Family::DeBruijn { m, n },
            Family::Kautz { m, .. } => Family::Kautz { m, n },
        }
    }

    /// The family member one line-graph step further.
    pub fn successor(self) -> Family {
        self.with_n(self.n() + 1)
    }

    pub fn build(self) -> Result<DiGraph> {
        match self {
            Family::DeBruijn { m, n } => debruijn(m, n),
            Family::Kautz { m, n } => kautz(m, n),
        }
    }

    fn symbol_count(self) -> usize {
        match self {
            Family::DeBruijn { m, .. } => m,
            Family::Kautz { m, .. } => m + 1,
        }
    }
}

fn symbol(d: usize) -> char {
    char::from_digit(d as u32, MAX_SYMBOLS as u32).expect("symbol below 36")
}

fn check_params(m: usize, n: usize, symbols: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "need m >= 1 and n >= 1, got m = {m}, n = {n}"
        )));
    }
    if symbols > MAX_SYMBOLS {
        return Err(Error::InvalidParameter(format!(
            "at most {MAX_SYMBOLS} symbols supported"
        )));
    }
    Ok(())
}

/// de Bruijn graph `DB_n(m)`. Vertices and edges are both listed in
/// lexicographic label order; edge `s0..sn` runs from `s0..s(n-1)` to `s1..sn`.
pub fn debruijn(m: usize, n: usize) -> Result<DiGraph> {
    check_params(m, n, m)?;
    let size = |len: usize| {
        u32::try_from(len)
            .ok()
            .and_then(|len| m.checked_pow(len))
            .filter(|&s| s <= 1 << 24)
            .ok_or_else(|| Error::InvalidParameter(format!("DB_{n}({m}) is too large")))
    };
    let vertex_count = size(n)?;
    let edge_count = size(n + 1)?;
    let label = |mut x: usize, len: usize| {
        let mut digits = vec!['0'; len];
        for d in digits.iter_mut().rev() {
            *d = symbol(x % m);
            x /= m;
        }
        digits.into_iter().collect::<String>()
    };
    let vertex_labels = (0..vertex_count).map(|x| Some(label(x, n))).collect();
    let edges = (0..edge_count)
        .map(|x| Edge {
            source: VertexId(x / m),
            target: VertexId(x % vertex_count),
        })
        .collect();
    let edge_labels = (0..edge_count).map(|x| Some(label(x, n + 1))).collect();
    Ok(DiGraph::assemble(
        vertex_labels,
        edges,
        edge_labels,
        Some(Family::DeBruijn { m, n }),
    ))
}

/// Kautz strings of length `len` over `symbols` symbols, in lexicographic order.
fn kautz_strings(symbols: usize, len: usize) -> Vec<String> {
    let mut out: Vec<String> = (0..symbols).map(|d| symbol(d).to_string()).collect();
    for _ in 1..len {
        let mut next = Vec::with_capacity(out.len() * (symbols - 1));
        for s in &out {
            let last = s.chars().last().unwrap();
            for d in 0..symbols {
                let c = symbol(d);
                if c != last {
                    next.push(format!("{s}{c}"));
                }
            }
        }
        out = next;
    }
    out
}

/// Kautz graph `Kautz_n(m)`, labeled and ordered like [`debruijn`].
pub fn kautz(m: usize, n: usize) -> Result<DiGraph> {
    check_params(m, n, m + 1)?;
    let too_large = (m + 1)
        .checked_mul(m.checked_pow(n as u32).unwrap_or(usize::MAX))
        .is_none_or(|edges| edges > 1 << 24);
    if too_large {
        return Err(Error::InvalidParameter(format!(
            "Kautz_{n}({m}) is too large"
        )));
    }
    let vertices = kautz_strings(m + 1, n);
    let index: HashMap<&str, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let edge_strings = kautz_strings(m + 1, n + 1);
    let edges = edge_strings
        .iter()
        .map(|s| {
            let (head, tail) = (&s[..n], &s[1..]);
            Edge {
                source: VertexId(index[head]),
                target: VertexId(index[tail]),
            }
        })
        .collect();
    Ok(DiGraph::assemble(
        vertices.iter().cloned().map(Some).collect(),
        edges,
        edge_strings.into_iter().map(Some).collect(),
        Some(Family::Kautz { m, n }),
    ))
}

/// Partitions the vertices of a string-labeled graph by the last `n - 1`
/// characters of their labels. Classes are ordered by that shared suffix.
pub fn similarity_classes(g: &DiGraph) -> Result<Vec<Vec<VertexId>>> {
    let labels = g
        .vertices()
        .map(|v| g.vertex_label(v))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::UnsupportedGraph("vertex labels missing".into()))?;
    let len = labels[0].chars().count();
    if len < 2 || labels.iter().any(|l| l.chars().count() != len) {
        return Err(Error::UnsupportedGraph(
            "labels must share one length of at least 2".into(),
        ));
    }
    let mut classes: BTreeMap<&str, Vec<VertexId>> = BTreeMap::new();
    for (v, label) in g.vertices().zip(labels) {
        let first = label.chars().next().unwrap();
        classes
            .entry(&label[first.len_utf8()..])
            .or_default()
            .push(v);
    }
    Ok(classes.into_values().collect())
}

/// A cycle `(v1, .., vc)` with `c = |V| / m` meeting every similarity class once,
/// for `DB_n(m)` or `Kautz_n(m)` with `n >= 2`.
///
/// A Hamiltonian cycle of the predecessor graph is written as a cyclic string
/// `S` (the `i`th vertex is the length-`(n-1)` window at `i`), and `vi` is the
/// length-`n` window at `i`. The predecessor's Hamiltonian cycle is the
/// rotation `0, 1, .., k-1` of the complete graph when `n = 2`, and otherwise
/// comes from an Eulerian circuit of the graph two steps back.
pub fn class_cycle(g: &DiGraph) -> Result<Vec<VertexId>> {
    let family = g
        .family()
        .ok_or_else(|| Error::UnsupportedGraph("not a de Bruijn or Kautz graph".into()))?;
    let n = family.n();
    if n < 2 {
        return Err(Error::UnsupportedGraph(
            "class_cycle needs string length >= 2".into(),
        ));
    }

    // First characters of the predecessor's Hamiltonian cycle, read cyclically.
    let cycle_string: Vec<char> = if n == 2 {
        (0..family.symbol_count()).map(symbol).collect()
    } else {
        let grand = family.with_n(n - 2).build()?;
        grand
            .eulerian_circuit()?
            .into_iter()
            .map(|e| grand.edge_label(e).and_then(|l| l.chars().next()).unwrap())
            .collect()
    };
    let c = cycle_string.len();

    let index: HashMap<&str, VertexId> = g
        .vertices()
        .map(|v| (g.vertex_label(v).unwrap(), v))
        .collect();
    let cycle = (0..c)
        .map(|i| {
            let window: String = (0..n).map(|j| cycle_string[(i + j) % c]).collect();
            index
                .get(window.as_str())
                .copied()
                .ok_or_else(|| Error::Invariant(format!("cycle window {window} is not a vertex")))
        })
        .collect::<Result<Vec<_>>>()?;

    for i in 0..c {
        let (u, w) = (cycle[i], cycle[(i + 1) % c]);
        if g.multiplicity(u, w) == 0 {
            return Err(Error::Invariant(format!(
                "class cycle step {} -> {} is not an edge",
                g.vertex_name(u),
                g.vertex_name(w)
            )));
        }
    }
    Ok(cycle)
}
