//! Laplacians, sandpile and critical groups, and the closed forms for de Bruijn
//! and Kautz graphs.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arborescence::count_trees_rooted;
use crate::digraph::{DiGraph, Family, VertexId};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::snf::smith_normal_form;

/// Cap on the number of cyclic summands a group may be expanded into.
pub const MAX_FACTORS: u64 = 1 << 20;

/// Cap on the bit length of closed-form orders and tree counts.
pub const MAX_ORDER_BITS: u64 = 1 << 26;

/// `A - D`: entry `(i, j)` is the number of edges `i -> j`, minus `outdeg(i)`
/// on the diagonal.
pub fn laplacian(g: &DiGraph) -> IntMatrix {
    let n = g.vertex_count();
    let mut l = IntMatrix::zeros(n, n);
    for e in g.edge_ids() {
        let (s, t) = (g.source(e).0, g.target(e).0);
        l[(s, t)] += 1;
        l[(s, s)] -= 1;
    }
    l
}

/// `D - A` with row and column `r` deleted.
pub fn reduced_laplacian(g: &DiGraph, r: VertexId) -> IntMatrix {
    let mut l = laplacian(g).minor(r.0, r.0);
    for i in 0..l.rows() {
        l.negate_row(i);
    }
    l
}

/// A finitely generated abelian group in invariant-factor form:
/// `Z_{d_1} + ... + Z_{d_k} + Z^free_rank` with `1 < d_1 | d_2 | ... | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    invariant_factors: Vec<BigUint>,
    free_rank: u64,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    /// The direct sum of `Z_d` taken `count` times for each `(d, count)`;
    /// `Z_0` is a free summand.
    ///
    /// Moduli are split over a coprime base, which avoids factoring them.
    pub fn from_cyclic(summands: impl IntoIterator<Item = (BigUint, u64)>) -> Result<Self> {
        let mut free_rank = 0u64;
        let mut finite: Vec<(BigUint, u64)> = Vec::new();
        for (d, count) in summands {
            if count == 0 || d.is_one() {
                continue;
            }
            if d.is_zero() {
                free_rank += count;
            } else {
                finite.push((d, count));
            }
        }

        let mut values: Vec<BigUint> = finite.iter().map(|(d, _)| d.clone()).collect();
        values.sort();
        values.dedup();
        let base = coprime_base(values);

        // exponent runs per base element, largest first
        let mut runs: Vec<(BigUint, Vec<(u64, u64)>)> = Vec::new();
        let mut length = 0u64;
        for b in base {
            let mut exps: Vec<(u64, u64)> = finite
                .iter()
                .map(|(d, count)| (valuation(d, &b), *count))
                .filter(|&(e, _)| e > 0)
                .collect();
            exps.sort_by_key(|&(e, _)| std::cmp::Reverse(e));
            length = length.max(exps.iter().map(|&(_, c)| c).sum());
            runs.push((b, exps));
        }
        if length > MAX_FACTORS {
            return Err(Error::InvalidParameter(format!(
                "group has {length} cyclic factors, more than {MAX_FACTORS}"
            )));
        }

        let mut factors = vec![BigUint::one(); length as usize];
        for (b, exps) in &runs {
            let mut j = 0;
            for &(e, count) in exps {
                let power = num_traits::pow(b.clone(), e as usize);
                for f in &mut factors[j..j + count as usize] {
                    *f *= &power;
                }
                j += count as usize;
            }
        }
        factors.reverse();
        Ok(AbelianGroup {
            invariant_factors: factors,
            free_rank,
        })
    }

    /// From a Smith normal form diagonal.
    pub fn from_diagonal(diagonal: &[BigInt]) -> Self {
        let mut g = AbelianGroup::trivial();
        for d in diagonal {
            let d = d.magnitude();
            if d.is_zero() {
                g.free_rank += 1;
            } else if !d.is_one() {
                g.invariant_factors.push(d.clone());
            }
        }
        debug_assert!(g
            .invariant_factors
            .windows(2)
            .all(|w| w[1].is_multiple_of(&w[0])));
        g
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> u64 {
        self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.is_finite() && self.invariant_factors.is_empty()
    }

    /// `None` for infinite groups.
    pub fn order(&self) -> Option<BigUint> {
        self.is_finite()
            .then(|| self.invariant_factors.iter().product())
    }

    /// `kK`: each `Z_d` becomes `Z_{d / gcd(d, k)}`. Free summands stay free
    /// unless `k = 0`.
    pub fn mult_by_k(&self, k: &BigUint) -> AbelianGroup {
        if k.is_zero() {
            return AbelianGroup::trivial();
        }
        let summands = self.invariant_factors.iter().map(|d| (d / d.gcd(k), 1));
        let mut out = AbelianGroup::from_cyclic(summands).expect("no more factors than before");
        out.free_rank = self.free_rank;
        out
    }

    /// The Sylow `p`-subgroup of a finite group.
    pub fn sylow(&self, p: u64) -> Result<AbelianGroup> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !self.is_finite() {
            return Err(Error::InvalidParameter(
                "Sylow subgroup of an infinite group".into(),
            ));
        }
        let p = BigUint::from(p);
        let summands = self.invariant_factors.iter().map(|d| {
            let e = valuation(d, &p);
            (num_traits::pow(p.clone(), e as usize), 1)
        });
        AbelianGroup::from_cyclic(summands)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            invariant_factors: self.invariant_factors.iter().map(number).collect(),
            free_rank: self.free_rank,
            order: self.order().map(|o| o.to_string()),
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.invariant_factors.len() {
            let d = &self.invariant_factors[i];
            let run = self.invariant_factors[i..]
                .iter()
                .take_while(|&x| x == d)
                .count();
            parts.push(if run == 1 {
                format!("Z_{d}")
            } else {
                format!("(Z_{d})^{run}")
            });
            i += run;
        }
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        f.write_str(&parts.join(" + "))
    }
}

/// JSON number when it fits in a `u64`, decimal string otherwise.
fn number(x: &BigUint) -> serde_json::Value {
    match x.to_u64() {
        Some(v) => v.into(),
        None => x.to_string().into(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupJson {
    pub invariant_factors: Vec<serde_json::Value>,
    pub free_rank: u64,
    /// Decimal; absent for infinite groups.
    pub order: Option<String>,
}

/// Pairwise coprime elements, all greater than 1, such that every input is a
/// product of their powers.
fn coprime_base(mut base: Vec<BigUint>) -> Vec<BigUint> {
    base.retain(|x| !x.is_one());
    'refine: loop {
        for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if g.is_one() {
                    continue;
                }
                let (a, b) = (&base[i] / &g, &base[j] / &g);
                base.swap_remove(j);
                base.swap_remove(i);
                base.extend([g, a, b].into_iter().filter(|x| !x.is_one()));
                base.sort();
                base.dedup();
                continue 'refine;
            }
        }
        return base;
    }
}

fn valuation(d: &BigUint, b: &BigUint) -> u64 {
    let mut d = d.clone();
    let mut e = 0;
    while !d.is_zero() && (&d % b).is_zero() {
        d /= b;
        e += 1;
    }
    e
}

pub fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|&d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// `K(G, r)`, the cokernel of the reduced Laplacian.
pub fn sandpile_group(g: &DiGraph, r: VertexId) -> Result<AbelianGroup> {
    if r.0 >= g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            index: r.0,
            count: g.vertex_count(),
        });
    }
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    Ok(AbelianGroup::from_diagonal(
        &smith_normal_form(&reduced_laplacian(g, r)).diagonal,
    ))
}

/// `K(G)` of an Eulerian, strongly connected graph, computed at vertex 0.
/// Debug builds compare against every other sink.
pub fn critical_group(g: &DiGraph) -> Result<AbelianGroup> {
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    if !g.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    let k = sandpile_group(g, VertexId(0))?;
    if cfg!(debug_assertions) && !sink_independent(g, &k)? {
        return Err(Error::Invariant(
            "sandpile groups differ between sinks".into(),
        ));
    }
    Ok(k)
}

/// Whether every sink gives the group `k`.
pub fn sink_independent(g: &DiGraph, k: &AbelianGroup) -> Result<bool> {
    for r in g.vertices() {
        if sandpile_group(g, r)? != *k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A direct sum of cyclic groups as written, `(Z_d)^count` per summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFormula {
    pub summands: Vec<(BigUint, u64)>,
}

impl GroupFormula {
    pub fn normalize(&self) -> Result<AbelianGroup> {
        AbelianGroup::from_cyclic(self.summands.iter().cloned())
    }

    pub fn order(&self) -> BigUint {
        self.summands
            .iter()
            .map(|(d, c)| num_traits::pow(d.clone(), *c as usize))
            .product()
    }
}

impl fmt::Display for GroupFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|(d, c)| format!("(Z_{d})^{c}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn check_m(m: usize, n: usize) -> Result<()> {
    if m < 2 || n < 1 {
        return Err(Error::InvalidParameter(format!(
            "need m >= 2 and n >= 1, got m = {m}, n = {n}"
        )));
    }
    Ok(())
}

fn big_pow(m: usize, e: u64) -> BigUint {
    num_traits::pow(BigUint::from(m), e as usize)
}

/// `m^e` as a count, failing if it overflows.
fn small_pow(m: usize, e: usize) -> Result<u64> {
    (m as u64)
        .checked_pow(e as u32)
        .ok_or_else(|| Error::InvalidParameter(format!("{m}^{e} overflows")))
}

fn mul_counts(xs: &[u64]) -> Result<u64> {
    xs.iter()
        .try_fold(1u64, |acc, &x| acc.checked_mul(x))
        .ok_or_else(|| Error::InvalidParameter("multiplicity overflows".into()))
}

/// `(Z_{m^n})^{m-2} + sum_{i=1}^{n-1} (Z_{m^i})^{m^{n-1-i} (m-1)^2}`
pub fn db_formula(m: usize, n: usize) -> Result<GroupFormula> {
    check_m(m, n)?;
    let mut summands = vec![(big_pow(m, n as u64), m as u64 - 2)];
    for i in 1..n {
        let count = mul_counts(&[small_pow(m, n - 1 - i)?, (m as u64 - 1).pow(2)])?;
        summands.push((big_pow(m, i as u64), count));
    }
    Ok(GroupFormula { summands })
}

/// `(Z_{m+1})^{m-1} + (Z_{m^{n-1}})^{m^2-2}
///  + sum_{i=1}^{n-2} (Z_{m^i})^{m^{n-2-i} (m-1)^2 (m+1)}`
pub fn kautz_formula(m: usize, n: usize) -> Result<GroupFormula> {
    check_m(m, n)?;
    let m64 = m as u64;
    let mut summands = vec![
        (BigUint::from(m + 1), m64 - 1),
        (big_pow(m, n as u64 - 1), m64 * m64 - 2),
    ];
    for i in 1..n.saturating_sub(1) {
        let count = mul_counts(&[small_pow(m, n - 2 - i)?, (m64 - 1).pow(2), m64 + 1])?;
        summands.push((big_pow(m, i as u64), count));
    }
    Ok(GroupFormula { summands })
}

pub fn family_formula(f: Family) -> Result<GroupFormula> {
    match f {
        Family::DeBruijn { m, n } => db_formula(m, n),
        Family::Kautz { m, n } => kautz_formula(m, n),
    }
}

/// `base^exp` for a closed form, refusing results beyond [`MAX_ORDER_BITS`].
fn closed_power(base: usize, exp: u64) -> Result<BigUint> {
    let bits = (usize::BITS - base.leading_zeros()) as u64;
    if exp.saturating_mul(bits) > MAX_ORDER_BITS {
        return Err(Error::InvalidParameter(format!(
            "{base}^{exp} is too large"
        )));
    }
    Ok(big_pow(base, exp))
}

fn exponent(m: usize, n: usize) -> Result<u64> {
    small_pow(m, n)
}

/// `|K(DB_n(m))| = m^{m^n - n - 1}`
pub fn group_order_db(m: usize, n: usize) -> Result<BigUint> {
    check_m(m, n)?;
    closed_power(m, exponent(m, n)? - n as u64 - 1)
}

/// `|K(Kautz_n(m))| = (m+1)^{m-1} m^{m^n + m^{n-1} - m - n}`
pub fn group_order_kautz(m: usize, n: usize) -> Result<BigUint> {
    check_m(m, n)?;
    let e = exponent(m, n)? + exponent(m, n - 1)? - (m + n) as u64;
    Ok(closed_power(m + 1, m as u64 - 1)? * closed_power(m, e)?)
}

pub fn family_order(f: Family) -> Result<BigUint> {
    match f {
        Family::DeBruijn { m, n } => group_order_db(m, n),
        Family::Kautz { m, n } => group_order_kautz(m, n),
    }
}

/// `κ(DB_n(m)) = m^{m^n - 1}`
pub fn kappa_db(m: usize, n: usize) -> Result<BigUint> {
    check_m(m, n)?;
    closed_power(m, exponent(m, n)? - 1)
}

/// `κ(Kautz_n(m)) = (m+1)^m m^{(m^{n-1} - 1)(m + 1)}`, i.e. the number of
/// vertices times [`group_order_kautz`].
pub fn kappa_kautz(m: usize, n: usize) -> Result<BigUint> {
    check_m(m, n)?;
    let e = (exponent(m, n - 1)? - 1) * (m as u64 + 1);
    Ok(closed_power(m + 1, m as u64)? * closed_power(m, e)?)
}

/// The variant with exponent `(m^n - 1)(m + 1)`. It overcounts: at
/// `(m, n) = (2, 2)` it gives `9 * 2^9` where the true count is 72.
pub fn kappa_kautz_alt_exponent(m: usize, n: usize) -> Result<BigUint> {
    check_m(m, n)?;
    let e = (exponent(m, n)? - 1) * (m as u64 + 1);
    Ok(closed_power(m + 1, m as u64)? * closed_power(m, e)?)
}

fn family_params(g: &DiGraph) -> Result<Family> {
    g.family()
        .ok_or_else(|| Error::UnsupportedGraph("not a de Bruijn or Kautz graph".into()))
}

/// Critical group of a family member against its closed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyGroupReport {
    pub family: Family,
    pub computed: AbelianGroup,
    pub formula: AbelianGroup,
    pub formula_order: BigUint,
    /// `κ(G, v_0)` by determinant.
    pub rooted_trees: BigUint,
}

impl FamilyGroupReport {
    pub fn matches_formula(&self) -> bool {
        self.computed == self.formula
    }

    pub fn order_matches(&self) -> bool {
        let order = self.computed.order();
        order.as_ref() == Some(&self.formula_order) && order.as_ref() == Some(&self.rooted_trees)
    }

    pub fn to_json(&self) -> FamilyGroupJson {
        let g = self.computed.to_json();
        FamilyGroupJson {
            invariant_factors: g.invariant_factors,
            order: g.order.unwrap_or_default(),
            formula: self.formula.to_string(),
            formula_order: self.formula_order.to_string(),
            matches_formula: self.matches_formula(),
            order_matches: self.order_matches(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyGroupJson {
    pub invariant_factors: Vec<serde_json::Value>,
    pub order: String,
    pub formula: String,
    pub formula_order: String,
    pub matches_formula: bool,
    pub order_matches: bool,
}

pub fn verify_family(f: Family) -> Result<FamilyGroupReport> {
    let g = f.build()?;
    Ok(FamilyGroupReport {
        family: f,
        computed: critical_group(&g)?,
        formula: family_formula(f)?.normalize()?,
        formula_order: family_order(f)?,
        rooted_trees: count_trees_rooted(&g, VertexId(0)),
    })
}

/// Full-Laplacian invariant factors split at `c = |V| / m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivByMReport {
    pub m: usize,
    pub c: usize,
    pub invariant_factors: Vec<String>,
    pub prefix_coprime: bool,
    pub suffix_divisible: bool,
}

impl DivByMReport {
    pub fn holds(&self) -> bool {
        self.prefix_coprime && self.suffix_divisible
    }
}

/// The first `|V| / m` invariant factors of `L(G)` are coprime to `m` and the
/// rest (zero included) are divisible by `m`, for `G` a de Bruijn or Kautz
/// graph on strings of length at least 2.
pub fn check_divbym(g: &DiGraph) -> Result<DivByMReport> {
    let f = family_params(g)?;
    if f.n() < 2 {
        return Err(Error::UnsupportedGraph(
            "strings of length at least 2 required".into(),
        ));
    }
    let m = f.m();
    let factors: Vec<BigUint> = smith_normal_form(&laplacian(g))
        .diagonal
        .iter()
        .map(|d| d.magnitude().clone())
        .collect();
    let c = g.vertex_count() / m;
    let big_m = BigUint::from(m);
    Ok(DivByMReport {
        m,
        c,
        invariant_factors: factors.iter().map(ToString::to_string).collect(),
        prefix_coprime: factors[..c].iter().all(|d| d.gcd(&big_m).is_one()),
        suffix_divisible: factors[c..].iter().all(|d| d.is_multiple_of(&big_m)),
    })
}

/// `m K(LG)` against `K(G)` for `G` the family member before `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomomorphismReport {
    pub line: AbelianGroup,
    pub scaled: AbelianGroup,
    pub base: AbelianGroup,
}

impl HomomorphismReport {
    pub fn holds(&self) -> bool {
        self.scaled == self.base
    }
}

pub fn check_homomorphism(f: Family) -> Result<HomomorphismReport> {
    if f.n() < 2 {
        return Err(Error::InvalidParameter(
            "the family member before n = 1 is not built".into(),
        ));
    }
    let line = critical_group(&f.build()?)?;
    let base = critical_group(&f.with_n(f.n() - 1).build()?)?;
    let scaled = line.mult_by_k(&BigUint::from(f.m()));
    Ok(HomomorphismReport { line, scaled, base })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{class_cycle, debruijn, kautz};
    use proptest::prelude::*;

    fn group(factors: &[u64]) -> AbelianGroup {
        AbelianGroup::from_cyclic(factors.iter().map(|&d| (BigUint::from(d), 1))).unwrap()
    }

    fn factors(g: &AbelianGroup) -> Vec<u64> {
        g.invariant_factors()
            .iter()
            .map(|d| d.to_u64().unwrap())
            .collect()
    }

    /// Pairwise (gcd, lcm) replacement until the list is a divisor chain.
    fn bubble(mut ds: Vec<u64>) -> Vec<u64> {
        for i in 0..ds.len() {
            for j in i + 1..ds.len() {
                let (g, l) = (ds[i].gcd(&ds[j]), ds[i].lcm(&ds[j]));
                ds[i] = g;
                ds[j] = l;
            }
        }
        ds.retain(|&d| d != 1);
        ds
    }

    #[test]
    fn laplacian_examples() {
        let one_loop = DiGraph::from_edges(None, &[(0, 0)]).unwrap();
        assert_eq!(laplacian(&one_loop), IntMatrix::from_rows(&[vec![0]]));
        let cycle = DiGraph::from_edges(None, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(
            laplacian(&cycle),
            IntMatrix::from_rows(&[vec![-1, 1], vec![1, -1]])
        );
    }

    #[test]
    fn kautz_laplacian_reduces_along_class_cycle() {
        let g = kautz(2, 2).unwrap();
        let l = laplacian(&g);
        for v in g.vertices() {
            let row = l.row(v.0);
            assert_eq!(row.iter().sum::<BigInt>(), BigInt::zero());
            assert_eq!(row[v.0], BigInt::from(-2));
        }
        // subtracting R(01) from R(21), R(12) from R(02), R(20) from R(10)
        // leaves the last three rows even
        let cycle = class_cycle(&g).unwrap();
        let name = |v: VertexId| g.vertex_name(v);
        assert_eq!(
            cycle.iter().map(|&v| name(v)).collect::<Vec<_>>(),
            ["01", "12", "20"]
        );
        let id = |s: &str| g.find_vertex(s).unwrap().0;
        let mut r = l.clone();
        for (dst, src) in [("21", "01"), ("02", "12"), ("10", "20")] {
            r.add_row_multiple(id(dst), id(src), &BigInt::from(-1));
        }
        for dst in ["21", "02", "10"] {
            assert!(r.row(id(dst)).iter().all(|x| x.is_even()), "{dst}");
        }
    }

    #[test]
    fn kautz_full_laplacian_factors() {
        let d = smith_normal_form(&laplacian(&kautz(2, 2).unwrap())).diagonal;
        let expected: Vec<BigInt> = [1, 1, 1, 2, 6, 0]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(d, expected);
    }

    #[test]
    fn sandpile_examples() {
        let k21 = kautz(2, 1).unwrap();
        for r in k21.vertices() {
            assert_eq!(factors(&sandpile_group(&k21, r).unwrap()), [3]);
        }
        let cycle = DiGraph::from_edges(None, &[(0, 1), (1, 0)]).unwrap();
        assert!(sandpile_group(&cycle, VertexId(1)).unwrap().is_trivial());
        let db22 = debruijn(2, 2).unwrap();
        for r in db22.vertices() {
            assert_eq!(factors(&sandpile_group(&db22, r).unwrap()), [2]);
        }
        let path = DiGraph::from_edges(None, &[(0, 1), (1, 1)]).unwrap();
        assert_eq!(
            sandpile_group(&path, VertexId(0)),
            Err(Error::NotStronglyConnected)
        );
        let unbalanced = DiGraph::from_edges(None, &[(0, 1), (1, 0), (0, 0), (1, 0)]).unwrap();
        assert_eq!(critical_group(&unbalanced), Err(Error::NotEulerian));
    }

    #[test]
    fn critical_group_examples() {
        assert_eq!(
            factors(&critical_group(&debruijn(2, 2).unwrap()).unwrap()),
            [2]
        );
        assert_eq!(
            factors(&critical_group(&kautz(2, 2).unwrap()).unwrap()),
            [2, 6]
        );
        assert!(critical_group(&debruijn(2, 1).unwrap())
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn formulas() {
        assert_eq!(
            factors(&db_formula(2, 2).unwrap().normalize().unwrap()),
            [2]
        );
        assert_eq!(
            factors(&kautz_formula(2, 2).unwrap().normalize().unwrap()),
            [2, 6]
        );
        let f = db_formula(3, 2).unwrap();
        assert_eq!(factors(&f.normalize().unwrap()), [3, 3, 3, 3, 9]);
        assert_eq!(f.order(), BigUint::from(729u32));
        assert_eq!(f.to_string(), "(Z_9)^1 + (Z_3)^4");
        assert!(db_formula(1, 2).is_err());
    }

    #[test]
    fn orders_and_tree_counts() {
        assert_eq!(group_order_db(2, 2).unwrap(), BigUint::from(2u32));
        assert_eq!(group_order_kautz(2, 2).unwrap(), BigUint::from(12u32));
        assert_eq!(group_order_db(2, 3).unwrap(), BigUint::from(16u32));
        assert_eq!(kappa_kautz(2, 2).unwrap(), BigUint::from(72u32));
        assert_eq!(
            kappa_kautz_alt_exponent(2, 2).unwrap(),
            BigUint::from(9u32 * 512)
        );
        assert_eq!(kappa_db(2, 2).unwrap(), BigUint::from(8u32));
        assert!(group_order_db(2, 40).is_err());
    }

    #[test]
    fn mult_by_k_and_sylow() {
        assert_eq!(
            factors(&group(&[4, 2]).mult_by_k(&BigUint::from(2u32))),
            [2]
        );
        assert_eq!(factors(&group(&[3]).mult_by_k(&BigUint::from(2u32))), [3]);
        assert!(group(&[3]).mult_by_k(&BigUint::zero()).is_trivial());
        let k = group(&[3, 2, 2]);
        assert_eq!(factors(&k), [2, 6]);
        assert_eq!(factors(&k.sylow(2).unwrap()), [2, 2]);
        assert_eq!(factors(&group(&[12]).sylow(2).unwrap()), [4]);
        assert_eq!(k.sylow(4), Err(Error::NotPrime(4)));
        let db23 = critical_group(&debruijn(2, 3).unwrap()).unwrap();
        let db22 = critical_group(&debruijn(2, 2).unwrap()).unwrap();
        assert_eq!(db23.mult_by_k(&BigUint::from(2u32)), db22);
    }

    #[test]
    fn sylow_parts_rebuild_the_group() {
        for g in [kautz(2, 2), kautz(3, 2), debruijn(3, 2), debruijn(2, 3)] {
            let k = critical_group(&g.unwrap()).unwrap();
            let order = k.order().unwrap().to_u64().unwrap();
            let primes: Vec<u64> = (2..=order)
                .filter(|&p| is_prime(p) && order.is_multiple_of(p))
                .collect();
            let mut summands = Vec::new();
            for p in primes {
                summands.extend(
                    k.sylow(p)
                        .unwrap()
                        .invariant_factors()
                        .iter()
                        .map(|d| (d.clone(), 1)),
                );
            }
            assert_eq!(AbelianGroup::from_cyclic(summands).unwrap(), k);
        }
    }

    #[test]
    fn free_part_and_display() {
        let g =
            AbelianGroup::from_cyclic([(BigUint::zero(), 2), (BigUint::from(2u32), 2)]).unwrap();
        assert_eq!(g.free_rank(), 2);
        assert_eq!(g.order(), None);
        assert_eq!(g.to_string(), "(Z_2)^2 + Z^2");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        let d: Vec<BigInt> = [1, 2, 6, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(AbelianGroup::from_diagonal(&d).to_string(), "Z_2 + Z_6 + Z");
        let json = serde_json::to_string(&group(&[2, 6]).to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"invariant_factors":[2,6],"free_rank":0,"order":"12"}"#
        );
    }

    #[test]
    fn divbym_examples() {
        let r = check_divbym(&kautz(2, 2).unwrap()).unwrap();
        assert_eq!(
            (r.c, r.invariant_factors.clone()),
            (
                3,
                vec!["1", "1", "1", "2", "6", "0"]
                    .into_iter()
                    .map(String::from)
                    .collect()
            )
        );
        assert!(r.holds());
        assert_eq!(check_divbym(&debruijn(2, 2).unwrap()).unwrap().c, 2);
        assert!(check_divbym(&debruijn(2, 2).unwrap()).unwrap().holds());
        let r = check_divbym(&debruijn(3, 2).unwrap()).unwrap();
        assert!(r.holds() && r.c == 3);
        assert!(check_divbym(&debruijn(2, 1).unwrap()).is_err());
        let plain = DiGraph::from_edges(None, &[(0, 1), (1, 0)]).unwrap();
        assert!(matches!(
            check_divbym(&plain),
            Err(Error::UnsupportedGraph(_))
        ));
    }

    proptest! {
        #[test]
        fn normalization_matches_pairwise_bubbling(ds in proptest::collection::vec(1u64..200, 0..7)) {
            prop_assert_eq!(factors(&group(&ds)), bubble(ds.clone()));
        }

        #[test]
        fn multiplicities_expand(d in 2u64..50, count in 0u64..5, e in 2u64..50) {
            let packed = AbelianGroup::from_cyclic([(BigUint::from(d), count), (BigUint::from(e), 1)]).unwrap();
            let mut flat = vec![d; count as usize];
            flat.push(e);
            prop_assert_eq!(packed, group(&flat));
        }
    }
}
