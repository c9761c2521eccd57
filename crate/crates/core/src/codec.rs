//! A bijection between binary de Bruijn sequences of degree `n` and binary
//! strings of length `2^(n-1)`.
//!
//! A sequence is read as a Hamiltonian path in `DB_n(2)`, which is the line
//! graph of `DB_{n-1}(2)`. Applying π and then taking last-element trees walks
//! down to `DB_1(2)`, and each level contributes the first entries of its
//! tree array as bits. Decoding runs the same chain upward with σ.
//!
//! Bits are numbered `s_1 ..= s_{2^(n-1)}`; in the string form, character `j`
//! (0-based) is `s_{j+1}`.

use std::fmt;
use std::str::FromStr;

use crate::arborescence::SpanningTree;
use crate::bijection::{ArrayEntry, Bijection, TreeArray};
use crate::digraph::{debruijn, DiGraph, EdgeId, VertexId};
use crate::error::{Error, Result};

/// Largest degree accepted by [`encode`] and [`decode`].
pub const MAX_DEGREE: usize = 20;

/// Largest degree accepted by [`enumerate_db_sequences`].
pub const MAX_ENUMERATION_DEGREE: usize = 4;

fn parse_bits(text: &str) -> Result<Vec<u8>> {
    text.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(Error::InvalidParameter(format!("{c:?} is not a bit"))),
        })
        .collect()
}

fn write_bits(bits: &[u8], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    bits.iter()
        .try_for_each(|&b| f.write_str(if b == 0 { "0" } else { "1" }))
}

/// Whether every cyclic window of length `n` in `bits` is distinct.
/// Errors if `bits` does not have length `2^n`.
pub fn validate(bits: &[u8], n: usize) -> Result<bool> {
    if n == 0 || n > usize::BITS as usize - 2 || bits.len() != 1 << n {
        let expected = if (1..usize::BITS as usize - 1).contains(&n) {
            1 << n
        } else {
            0
        };
        return Err(Error::WrongLength {
            expected,
            actual: bits.len(),
        });
    }
    if bits.iter().any(|&b| b > 1) {
        return Ok(false);
    }
    let mut seen = vec![false; bits.len()];
    for w in windows(bits, n) {
        if std::mem::replace(&mut seen[w], true) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The cyclic windows of length `n` as integers, most significant bit first.
fn windows(bits: &[u8], n: usize) -> impl Iterator<Item = usize> + '_ {
    let len = bits.len();
    (0..len).map(move |i| (0..n).fold(0, |acc, j| (acc << 1) | bits[(i + j) % len] as usize))
}

/// A binary de Bruijn sequence, with its starting point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeBruijnSequence {
    degree: usize,
    bits: Vec<u8>,
}

impl DeBruijnSequence {
    pub fn new(bits: Vec<u8>, degree: usize) -> Result<Self> {
        if validate(&bits, degree)? {
            Ok(DeBruijnSequence { degree, bits })
        } else {
            Err(Error::NotDeBruijn)
        }
    }

    /// Parses an ASCII 0/1 string; the degree is inferred from its length.
    pub fn parse(text: &str) -> Result<Self> {
        let bits = parse_bits(text)?;
        let len = bits.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::WrongLength {
                expected: len.next_power_of_two().max(2),
                actual: len,
            });
        }
        Self::new(bits, len.trailing_zeros() as usize)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }
}

impl fmt::Display for DeBruijnSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(&self.bits, f)
    }
}

impl FromStr for DeBruijnSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// A plain binary string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bits: Vec<u8>,
}

impl BitString {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidParameter("bits must be 0 or 1".into()));
        }
        Ok(BitString { bits })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(BitString {
            bits: parse_bits(text)?,
        })
    }

    /// Every string of length `len`, in lexicographic order.
    pub fn all(len: usize) -> impl Iterator<Item = BitString> {
        assert!(len < 32, "too many strings");
        (0u64..1 << len).map(move |x| BitString {
            bits: (0..len).rev().map(|j| ((x >> j) & 1) as u8).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// `s_i`, counting from 1.
    pub fn s(&self, i: usize) -> u8 {
        self.bits[i - 1]
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bits(&self.bits, f)
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// A Hamiltonian path in `DB_n(2)`; vertex `i` is the window with value `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HamPath {
    degree: usize,
    vertices: Vec<VertexId>,
}

impl HamPath {
    pub fn new(vertices: Vec<VertexId>, degree: usize) -> Result<Self> {
        let size = 1usize << degree;
        if vertices.len() != size {
            return Err(Error::WrongLength {
                expected: size,
                actual: vertices.len(),
            });
        }
        let mut seen = vec![false; size];
        for v in &vertices {
            if v.0 >= size || std::mem::replace(&mut seen[v.0], true) {
                return Err(Error::InvalidParameter(format!(
                    "vertex {} repeats or is out of range",
                    v.0
                )));
            }
        }
        if let Some(w) = vertices
            .windows(2)
            .find(|w| (w[0].0 << 1) % size != w[1].0 & !1)
        {
            return Err(Error::InvalidParameter(format!(
                "no edge from {} to {}",
                w[0].0, w[1].0
            )));
        }
        Ok(HamPath { degree, vertices })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Vertex names as `degree`-character binary strings.
    pub fn labels(&self) -> Vec<String> {
        self.vertices
            .iter()
            .map(|v| format!("{:0width$b}", v.0, width = self.degree))
            .collect()
    }
}

pub fn seq_to_path(b: &DeBruijnSequence) -> HamPath {
    let vertices = windows(&b.bits, b.degree).map(VertexId).collect();
    HamPath {
        degree: b.degree,
        vertices,
    }
}

pub fn path_to_seq(p: &HamPath) -> Result<DeBruijnSequence> {
    let n = p.degree;
    let bits: Vec<u8> = p.vertices.iter().map(|v| (v.0 >> (n - 1)) as u8).collect();
    let seq = DeBruijnSequence::new(bits, n)?;
    if seq_to_path(&seq) != *p {
        return Err(Error::NotDeBruijn);
    }
    Ok(seq)
}

/// The out-edge of `w` in `DB_k(2)` that appends `bit`: its zero or one edge.
fn bit_edge(w: VertexId, bit: u8) -> EdgeId {
    EdgeId(2 * w.0 + bit as usize)
}

fn edge_bit(w: VertexId, e: EdgeId) -> Result<u8> {
    match e.0.checked_sub(2 * w.0) {
        Some(b @ 0..=1) => Ok(b as u8),
        _ => Err(Error::Invariant(format!(
            "edge {} does not leave {}",
            e.0, w.0
        ))),
    }
}

fn first_edge(a: &TreeArray, w: VertexId) -> Result<EdgeId> {
    match a.list(w).first() {
        Some(&ArrayEntry::Edge(e)) => Ok(e),
        _ => Err(Error::Invariant(format!(
            "list of {} has no leading edge",
            w.0
        ))),
    }
}

/// `DB_1(2)` through `DB_top(2)`, indexed by `k - 1`.
fn tower(top: usize) -> Result<Vec<DiGraph>> {
    (1..=top).map(|k| debruijn(2, k)).collect()
}

fn check_degree(n: usize) -> Result<()> {
    if !(2..=MAX_DEGREE).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "degree must be in 2..={MAX_DEGREE}, got {n}"
        )));
    }
    Ok(())
}

/// Which list of `A_{n-1}` supplies the final bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FinalBitVertex {
    /// The root of `A_{n-1}`, i.e. the target of the path's last vertex.
    Root,
    /// The source of the path's last vertex. Kept only to show in tests that
    /// this reading is not injective.
    #[cfg_attr(not(test), allow(dead_code))]
    LastSource,
}

pub fn encode(b: &DeBruijnSequence) -> Result<BitString> {
    encode_with(b, FinalBitVertex::Root)
}

fn encode_with(b: &DeBruijnSequence, final_bit: FinalBitVertex) -> Result<BitString> {
    let n = b.degree;
    check_degree(n)?;
    let graphs = tower(n - 1)?;
    let db = |k: usize| &graphs[k - 1];

    // A_{n-1} = π(path), with the path as a spanning tree of DB_n(2)
    let path = seq_to_path(b);
    let top = Bijection::with_natural_order(db(n - 1));
    let line_edges = path.vertices.windows(2).map(|w| {
        top.map()
            .line_edge(EdgeId(w[0].0), EdgeId(w[1].0))
            .ok_or_else(|| Error::Invariant("path step is not a line-graph edge".into()))
    });
    let last = *path.vertices.last().expect("paths are nonempty");
    let path_tree = SpanningTree::from_edges(
        top.line_graph(),
        last,
        line_edges.collect::<Result<Vec<_>>>()?,
    )?;
    let mut arrays: Vec<TreeArray> = vec![top.pi(&path_tree)?];

    let a_top = &arrays[0];
    for v in db(n - 1).vertices().filter(|&v| v != a_top.root()) {
        if a_top.list(v)[0] == a_top.list(v)[1] {
            return Err(Error::Invariant(format!("list of {} repeats an edge", v.0)));
        }
    }

    // A_k = π(T_{k+1}) for k = n-2 down to 1
    for k in (1..n - 1).rev() {
        let t = arrays
            .last()
            .expect("nonempty")
            .last_elements_tree(db(k + 1))?;
        arrays.push(Bijection::with_natural_order(db(k)).pi(&t)?);
    }
    arrays.reverse(); // arrays[k - 1] = A_k

    let mut bits = Vec::with_capacity(1 << (n - 1));
    let t1 = arrays[0].last_elements_tree(db(1))?;
    bits.push(t1.root().0 as u8);
    for k in 1..n - 1 {
        for w in db(k).vertices() {
            bits.push(edge_bit(w, first_edge(&arrays[k - 1], w)?)?);
        }
    }
    let a_top = &arrays[n - 2];
    let w = match final_bit {
        FinalBitVertex::Root => a_top.root(),
        FinalBitVertex::LastSource => db(n - 1).source(EdgeId(last.0)),
    };
    bits.push(edge_bit(w, first_edge(a_top, w)?)?);
    debug_assert_eq!(bits.len(), 1 << (n - 1));
    BitString::new(bits)
}

pub fn decode(s: &BitString, n: usize) -> Result<DeBruijnSequence> {
    check_degree(n)?;
    if s.len() != 1 << (n - 1) {
        return Err(Error::WrongLength {
            expected: 1 << (n - 1),
            actual: s.len(),
        });
    }
    let graphs = tower(n - 1)?;
    let db = |k: usize| &graphs[k - 1];

    // T_1 is rooted at s_1; the other vertex points at it
    let r = s.s(1) as usize;
    let mut tree = SpanningTree::from_edges(db(1), VertexId(r), [EdgeId(2 * (1 - r) + r)])?;
    let mut next_bit = 2;
    for k in 1..n - 1 {
        let g = db(k);
        let lists = g
            .vertices()
            .map(|w| {
                let first = ArrayEntry::Edge(bit_edge(w, s.s(next_bit + w.0)));
                let second = tree.out_edge(w).map_or(ArrayEntry::Omega, ArrayEntry::Edge);
                vec![first, second]
            })
            .collect();
        next_bit += g.vertex_count();
        let a = TreeArray::new(g, tree.root(), lists)?;
        tree = Bijection::with_natural_order(g).sigma(&a)?;
    }
    debug_assert_eq!(next_bit, 1 << (n - 1));

    let g = db(n - 1);
    let root = tree.root();
    let lists = g
        .vertices()
        .map(|v| match tree.out_edge(v) {
            Some(e) => vec![ArrayEntry::Edge(EdgeId(e.0 ^ 1)), ArrayEntry::Edge(e)],
            None => vec![
                ArrayEntry::Edge(bit_edge(v, s.s(next_bit))),
                ArrayEntry::Omega,
            ],
        })
        .collect();
    let a = TreeArray::new(g, root, lists)?;
    let top = Bijection::with_natural_order(g);
    let line_tree = top.sigma(&a)?;

    // every edge of DB_{n-1}(2) but one occurs once in the lists, so the tree is a path
    let line = top.line_graph();
    let start = line
        .vertices()
        .find(|&v| line_tree.indeg(line, v) == 0)
        .ok_or_else(|| Error::Invariant("σ's tree has no leaf".into()))?;
    let mut vertices = vec![start];
    let mut v = start;
    while let Some(e) = line_tree.out_edge(v) {
        v = line.target(e);
        vertices.push(v);
    }
    path_to_seq(&HamPath::new(vertices, n)?)
}

/// All de Bruijn sequences of degree `n`, in lexicographic order, by
/// filtering every binary string of length `2^n`.
pub fn enumerate_db_sequences(n: usize) -> Result<Vec<DeBruijnSequence>> {
    if !(1..=MAX_ENUMERATION_DEGREE).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "enumeration needs degree in 1..={MAX_ENUMERATION_DEGREE}, got {n}"
        )));
    }
    let mut out = Vec::new();
    for s in BitString::all(1 << n) {
        if validate(s.bits(), n)? {
            out.push(DeBruijnSequence {
                degree: n,
                bits: s.bits,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn seq(s: &str) -> DeBruijnSequence {
        s.parse().unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(validate(&[0, 0, 1, 1], 2), Ok(true));
        assert_eq!(validate(&[0, 1, 0, 1], 2), Ok(false));
        assert_eq!(validate(&[0, 0, 0, 1, 0, 1, 1, 1], 3), Ok(true));
        assert_eq!(
            validate(&[0, 0, 1], 2),
            Err(Error::WrongLength {
                expected: 4,
                actual: 3
            })
        );
        assert_eq!(DeBruijnSequence::parse("0101"), Err(Error::NotDeBruijn));
        assert!(DeBruijnSequence::parse("001").is_err());
        assert!(DeBruijnSequence::parse("0021").is_err());
    }

    #[test]
    fn path_of_0011() {
        let p = seq_to_path(&seq("0011"));
        assert_eq!(p.labels(), ["00", "01", "11", "10"]);
        assert_eq!(path_to_seq(&p).unwrap(), seq("0011"));
    }

    #[test]
    fn ham_path_validation() {
        assert!(HamPath::new(vec![VertexId(0), VertexId(1), VertexId(3), VertexId(2)], 2).is_ok());
        assert!(HamPath::new(vec![VertexId(0), VertexId(3), VertexId(1), VertexId(2)], 2).is_err());
        assert!(HamPath::new(vec![VertexId(0), VertexId(1), VertexId(1), VertexId(2)], 2).is_err());
        assert!(HamPath::new(vec![VertexId(0), VertexId(1)], 2).is_err());
    }

    #[test]
    fn sequence_counts() {
        assert_eq!(enumerate_db_sequences(1).unwrap().len(), 2);
        assert_eq!(enumerate_db_sequences(2).unwrap().len(), 4);
        assert_eq!(enumerate_db_sequences(3).unwrap().len(), 16);
        assert!(enumerate_db_sequences(5).is_err());
        let seqs = enumerate_db_sequences(3).unwrap();
        assert!(seqs.windows(2).all(|w| w[0] < w[1]));
        for b in &seqs {
            assert_eq!(&path_to_seq(&seq_to_path(b)).unwrap(), b);
        }
    }

    #[test]
    fn degree_two_table() {
        // worked by hand through π on DB_1(2)
        for (b, s) in [
            ("0011", "01"),
            ("0110", "00"),
            ("1001", "11"),
            ("1100", "10"),
        ] {
            assert_eq!(encode(&seq(b)).unwrap().to_string(), s, "{b}");
            assert_eq!(decode(&s.parse().unwrap(), 2).unwrap(), seq(b));
        }
    }

    #[test]
    fn exhaustive_round_trips() {
        for n in 2..=4 {
            let seqs = enumerate_db_sequences(n).unwrap();
            assert_eq!(seqs.len(), 1 << (1 << (n - 1)));
            let images: HashSet<BitString> = seqs.iter().map(|b| encode(b).unwrap()).collect();
            assert_eq!(images.len(), seqs.len());
            assert!(images.iter().all(|s| s.len() == 1 << (n - 1)));
            for s in BitString::all(1 << (n - 1)) {
                let b = decode(&s, n).unwrap();
                assert_eq!(encode(&b).unwrap(), s);
            }
            for b in &seqs {
                assert_eq!(&decode(&encode(b).unwrap(), n).unwrap(), b);
            }
        }
    }

    #[test]
    fn final_bit_from_last_source_collides() {
        let seqs = enumerate_db_sequences(3).unwrap();
        let images: HashSet<BitString> = seqs
            .iter()
            .map(|b| encode_with(b, FinalBitVertex::LastSource).unwrap())
            .collect();
        assert!(
            images.len() < seqs.len(),
            "{} distinct images",
            images.len()
        );
    }

    #[test]
    fn round_trip_at_larger_degree() {
        for n in [6, 8] {
            for s in BitString::all(3).map(|p| {
                let mut bits = vec![0; 1 << (n - 1)];
                bits[..3].copy_from_slice(p.bits());
                bits[(1 << (n - 1)) - 1] = p.bits()[0];
                BitString::new(bits).unwrap()
            }) {
                let b = decode(&s, n).unwrap();
                assert_eq!(encode(&b).unwrap(), s);
            }
        }
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(
            decode(&"010".parse().unwrap(), 3),
            Err(Error::WrongLength { .. })
        ));
        assert!(decode(&"0".parse().unwrap(), 1).is_err());
        assert!(encode(&seq("01")).is_err());
        assert!(BitString::parse("01a").is_err());
    }
}
