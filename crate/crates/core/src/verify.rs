//! End-to-end checks, one per acceptance criterion. Each returns a
//! [`CriterionResult`] instead of panicking so that a report can list every
//! outcome.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;

use crate::arborescence::{count_trees, enumerate_trees, knuth_check, verify_identity};
use crate::bijection::{enumerate_tree_arrays, tree_array_count, Bijection, EdgeOrder};
use crate::codec::{decode, encode, enumerate_db_sequences, BitString};
use crate::corpus::{acceptance_corpus, DEFAULT_SAMPLE, DEFAULT_SEED};
use crate::digraph::{class_cycle, similarity_classes, DiGraph, Family};
use crate::error::Result;
use crate::group::{
    check_divbym, check_homomorphism, kappa_db, kappa_kautz, kappa_kautz_alt_exponent,
    sink_independent, verify_family,
};

/// `(m, n)` for the de Bruijn critical-group checks.
pub const DB_PARAMS: [(usize, usize); 9] = [
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (3, 1),
    (3, 2),
    (3, 3),
    (4, 2),
    (5, 2),
];

/// `(m, n)` for the Kautz critical-group checks.
pub const KAUTZ_PARAMS: [(usize, usize); 7] =
    [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (4, 2)];

/// Wall-clock limits for the timed criteria.
pub const IDENTITY_TIME_LIMIT: Duration = Duration::from_secs(60);
pub const CODEC_TIME_LIMIT: Duration = Duration::from_secs(60);
pub const GROUP_TIME_LIMIT: Duration = Duration::from_secs(120);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub corpus_seed: u64,
    pub corpus_size: usize,
    /// Candidate bound for tree enumeration in the identity check.
    pub tree_bound: u128,
    /// Graphs with more tree arrays than this skip the bijection check.
    pub bijection_limit: u128,
    /// Seeds of the shuffled edge orders, used alongside the natural order.
    pub shuffle_seeds: Vec<u64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            corpus_seed: DEFAULT_SEED,
            corpus_size: DEFAULT_SAMPLE,
            tree_bound: crate::arborescence::DEFAULT_BOUND,
            bijection_limit: 10_000,
            shuffle_seeds: vec![1, 2, 3],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!(
            "[{verdict}] {}. {} ({:.2} s): {}",
            self.id, self.name, self.seconds, self.detail
        )
    }
}

/// Failures collected while a criterion runs.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn result<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checked += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }

    fn summary(&self, unit: &str) -> String {
        match self.failures.first() {
            None => format!("{} {unit}, all hold", self.checked),
            Some(first) => format!(
                "{} of {} {unit} failed; first: {first}",
                self.failures.len(),
                self.checked
            ),
        }
    }
}

fn finish(
    id: u8,
    name: &'static str,
    tally: Tally,
    unit: &str,
    start: Instant,
    limit: Option<Duration>,
) -> CriterionResult {
    let elapsed = start.elapsed();
    let mut detail = tally.summary(unit);
    let mut passed = tally.failures.is_empty();
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail.push_str(&format!("; exceeded the {} s limit", limit.as_secs()));
        }
    }
    CriterionResult {
        id,
        name,
        passed,
        detail,
        seconds: elapsed.as_secs_f64(),
    }
}

fn corpus(cfg: &VerifyConfig) -> Result<Vec<(String, DiGraph)>> {
    acceptance_corpus(cfg.corpus_seed, cfg.corpus_size)
}

pub fn line_graph_identity(cfg: &VerifyConfig) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::default();
    for (name, g) in corpus(cfg)? {
        if let Some(report) = t.result(verify_identity(&g, cfg.tree_bound), || name.clone()) {
            t.check(report.holds, || {
                let w = report
                    .witness
                    .as_ref()
                    .map(|w| w.monomial.clone())
                    .unwrap_or_default();
                format!("{name}: coefficients differ at {w}")
            });
        }
    }
    Ok(finish(
        1,
        "generating-function identity",
        t,
        "graphs",
        start,
        Some(IDENTITY_TIME_LIMIT),
    ))
}

pub fn knuth_formula(cfg: &VerifyConfig) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::default();
    for (name, g) in corpus(cfg)? {
        if let Some(report) = t.result(knuth_check(&g), || name.clone()) {
            t.check(report.holds, || {
                format!(
                    "{name}: {} != {} * {}",
                    report.line_graph_trees, report.trees, report.factor
                )
            });
        }
    }
    Ok(finish(
        2,
        "Knuth's tree-count formula",
        t,
        "graphs",
        start,
        None,
    ))
}

pub fn bijection_round_trips(cfg: &VerifyConfig) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut skipped = 0;
    let mut arrays_seen = 0usize;
    for (name, g) in corpus(cfg)? {
        if tree_array_count(&g) > BigUint::from(cfg.bijection_limit) {
            skipped += 1;
            continue;
        }
        let arrays: Vec<_> = match t.result(enumerate_tree_arrays(&g, cfg.bijection_limit), || {
            name.clone()
        }) {
            Some(it) => it.collect(),
            None => continue,
        };
        let orders = std::iter::once(EdgeOrder::natural(g.edge_count())).chain(
            cfg.shuffle_seeds
                .iter()
                .map(|&s| EdgeOrder::shuffled(g.edge_count(), s)),
        );
        for (k, order) in orders.enumerate() {
            let bij = Bijection::new(&g, order)?;
            let mut images = HashSet::new();
            let mut ok = true;
            for a in &arrays {
                match bij
                    .sigma(a)
                    .and_then(|tree| bij.pi(&tree).map(|back| (tree, back)))
                {
                    Ok((tree, back)) => {
                        ok &= back == *a;
                        images.insert(tree);
                    }
                    Err(e) => {
                        t.check(false, || format!("{name}, order {k}: {e}"));
                        ok = false;
                    }
                }
            }
            let trees = match t.result(enumerate_trees(bij.line_graph(), cfg.tree_bound), || {
                name.clone()
            }) {
                Some(trees) => trees,
                None => continue,
            };
            for tree in &trees {
                match bij.pi(tree).and_then(|a| bij.sigma(&a)) {
                    Ok(back) => ok &= back == *tree,
                    Err(e) => {
                        t.check(false, || format!("{name}, order {k}: {e}"));
                        ok = false;
                    }
                }
            }
            ok &= images.len() == arrays.len() && trees.len() == arrays.len();
            arrays_seen += arrays.len();
            t.check(ok, || format!("{name}, order {k}: round trip failed"));
        }
    }
    let mut r = finish(3, "σ/π round trips", t, "graph-order pairs", start, None);
    r.detail.push_str(&format!(
        "; {arrays_seen} tree arrays; {skipped} graphs over {} arrays skipped",
        cfg.bijection_limit
    ));
    Ok(r)
}

pub fn codec_bijection(_cfg: &VerifyConfig) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::default();
    for n in 2..=4 {
        let seqs = enumerate_db_sequences(n)?;
        t.check(seqs.len() == 1 << (1 << (n - 1)), || {
            format!("degree {n}: {} sequences", seqs.len())
        });
        let mut images = HashSet::new();
        for b in &seqs {
            let Some(s) = t.result(encode(b), || format!("encode {b}")) else {
                continue;
            };
            let back = t.result(decode(&s, n), || format!("decode {s}"));
            t.check(back.as_ref() == Some(b), || {
                format!("degree {n}: {b} -> {s} does not decode back")
            });
            images.insert(s);
        }
        let all: HashSet<BitString> = BitString::all(1 << (n - 1)).collect();
        t.check(images == all, || {
            format!("degree {n}: image has {} strings", images.len())
        });
    }
    Ok(finish(
        4,
        "de Bruijn codec",
        t,
        "checks",
        start,
        Some(CODEC_TIME_LIMIT),
    ))
}

fn families() -> impl Iterator<Item = Family> {
    DB_PARAMS
        .iter()
        .map(|&(m, n)| Family::DeBruijn { m, n })
        .chain(KAUTZ_PARAMS.iter().map(|&(m, n)| Family::Kautz { m, n }))
}

fn label(f: Family) -> String {
    match f {
        Family::DeBruijn { m, n } => format!("DB_{n}({m})"),
        Family::Kautz { m, n } => format!("Kautz_{n}({m})"),
    }
}

pub fn critical_groups(_cfg: &VerifyConfig) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::default();
    for f in families() {
        let Some(report) = t.result(verify_family(f), || label(f)) else {
            continue;
        };
        t.check(report.matches_formula(), || {
            format!(
                "{}: computed {} but formula gives {}",
                label(f),
                report.computed,
                report.formula
            )
        });
        let g = f.build()?;
        let same = t.result(sink_independent(&g, &report.computed), || label(f));
        t.check(same == Some(true), || {
            format!("{}: group depends on the sink", label(f))
        });
    }
    Ok(finish(
        5,
        "critical groups vs closed forms",
        t,
        "checks",
        start,
        Some(GROUP_TIME_LIMIT),
    ))
}

pub fn group_orders(_cfg: &VerifyConfig) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::default();
    for f in families() {
        let Some(report) = t.result(verify_family(f), || label(f)) else {
            continue;
        };
        t.check(report.order_matches(), || {
            format!(
                "{}: order {:?}, formula {}, κ(G, v0) {}",
                label(f),
                report.computed.order(),
                report.formula_order,
                report.rooted_trees
            )
        });
        let (m, n) = (f.m(), f.n());
        let closed = match f {
            Family::DeBruijn { .. } => kappa_db(m, n),
            Family::Kautz { .. } => kappa_kautz(m, n),
        };
        if let Some(closed) = t.result(closed, || label(f)) {
            let counted = count_trees(&f.build()?);
            t.check(closed == counted, || {
                format!(
                    "{}: κ closed form {closed}, determinant {counted}",
                    label(f)
                )
            });
        }
    }
    let k = Family::Kautz { m: 2, n: 2 }.build()?;
    let brute = enumerate_trees(&k, crate::arborescence::DEFAULT_BOUND)?.len();
    t.check(brute == 72, || {
        format!("κ(Kautz_2(2)) enumerates to {brute}")
    });
    let alt = kappa_kautz_alt_exponent(2, 2)?;
    t.check(alt != BigUint::from(brute), || {
        "the (m^n - 1)(m + 1) exponent matches brute force".into()
    });
    let mut r = finish(6, "group orders and tree counts", t, "checks", start, None);
    r.detail.push_str(&format!(
        "; κ(Kautz_2(2)) = {brute}, (m^n - 1)(m + 1) exponent gives {alt}"
    ));
    Ok(r)
}

pub fn divisible_by_m(_cfg: &VerifyConfig) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::default();
    for f in families().filter(|f| f.n() >= 2) {
        if let Some(r) = t.result(check_divbym(&f.build()?), || label(f)) {
            t.check(r.holds(), || {
                format!(
                    "{}: factors {:?} with c = {}",
                    label(f),
                    r.invariant_factors,
                    r.c
                )
            });
        }
    }
    Ok(finish(
        7,
        "Laplacian factors split at |V|/m",
        t,
        "graphs",
        start,
        None,
    ))
}

pub fn multiplication_by_m(_cfg: &VerifyConfig) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::default();
    for f in families().filter(|f| f.n() >= 2) {
        if let Some(r) = t.result(check_homomorphism(f), || label(f)) {
            t.check(r.holds(), || {
                format!("{}: m K(LG) = {} but K(G) = {}", label(f), r.scaled, r.base)
            });
        }
    }
    Ok(finish(
        8,
        "m K(LG) ≅ K(G)",
        t,
        "line-graph steps",
        start,
        None,
    ))
}

/// The cycle's consecutive pairs (wrapping around) are edges, its vertices
/// are distinct, and it meets every similarity class exactly once.
fn cycle_is_valid(g: &DiGraph) -> Result<bool> {
    let cycle = class_cycle(g)?;
    let classes = similarity_classes(g)?;
    let k = cycle.len();
    let edges_ok = (0..k).all(|i| g.multiplicity(cycle[i], cycle[(i + 1) % k]) > 0);
    let distinct = cycle.iter().collect::<HashSet<_>>().len() == k;
    let covers = k == classes.len()
        && classes
            .iter()
            .all(|c| c.iter().filter(|v| cycle.contains(v)).count() == 1);
    Ok(edges_ok && distinct && covers)
}

pub fn class_cycles(_cfg: &VerifyConfig) -> Result<CriterionResult> {
    let start = Instant::now();
    let mut t = Tally::default();
    for m in [2, 3] {
        for n in [2, 3] {
            for f in [Family::DeBruijn { m, n }, Family::Kautz { m, n }] {
                let ok = t.result(cycle_is_valid(&f.build()?), || label(f));
                if let Some(ok) = ok {
                    t.check(ok, || format!("{}: invalid class cycle", label(f)));
                }
            }
        }
    }
    Ok(finish(9, "class-covering cycles", t, "graphs", start, None))
}

pub type Criterion = fn(&VerifyConfig) -> Result<CriterionResult>;

pub const CRITERIA: [Criterion; 9] = [
    line_graph_identity,
    knuth_formula,
    bijection_round_trips,
    codec_bijection,
    critical_groups,
    group_orders,
    divisible_by_m,
    multiplication_by_m,
    class_cycles,
];

/// Runs every criterion; an error inside one is reported as its failure.
pub fn run_all(cfg: &VerifyConfig) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .enumerate()
        .map(|(i, c)| {
            c(cfg).unwrap_or_else(|e| CriterionResult {
                id: i as u8 + 1,
                name: "error",
                passed: false,
                detail: e.to_string(),
                seconds: 0.0,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_criteria_pass() {
        let cfg = VerifyConfig::default();
        for c in [class_cycles as Criterion, divisible_by_m] {
            let r = c(&cfg).unwrap();
            assert!(r.passed, "{}", r.line());
        }
    }

    #[test]
    fn failures_are_reported() {
        let mut t = Tally::default();
        t.check(true, String::new);
        t.check(false, || "bad".into());
        let r = finish(0, "demo", t, "items", Instant::now(), None);
        assert!(!r.passed);
        assert_eq!(r.detail, "1 of 2 items failed; first: bad");
        assert!(r.line().starts_with("[FAIL] 0. demo"));
    }
}
