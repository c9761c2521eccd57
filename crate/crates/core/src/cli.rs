//! The `linetree` command line.
//!
//! Exit status is 0 on success, 1 on domain errors (bad input data, failed
//! checks) and 2 on usage errors. `--json` switches any subcommand to JSON.
//! The enumeration bound defaults to `LINETREE_BOUND` when set.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::arborescence::{
    count_trees, count_trees_rooted, knuth_check, verify_identity, verify_identity_randomized,
    visit_trees, DEFAULT_BOUND,
};
use crate::bijection::{enumerate_tree_arrays, Bijection, EdgeOrder, LineTreeJson, TreeArrayJson};
use crate::codec::{decode, encode, enumerate_db_sequences, BitString, DeBruijnSequence};
use crate::digraph::{
    line_graph, parse_edge_list, to_dot, to_edge_list, DiGraph, Family, GraphJson,
};
use crate::error::Error;
use crate::group::{
    check_divbym, check_homomorphism, critical_group, family_formula, family_order, kappa_db,
    kappa_kautz, sandpile_group, verify_family,
};
use crate::verify::{run_all, VerifyConfig};

pub const BOUND_ENV: &str = "LINETREE_BOUND";

#[derive(Parser, Debug)]
#[command(
    name = "linetree",
    version,
    about = "Spanning trees of directed line graphs"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a de Bruijn or Kautz graph.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        /// Graphviz output.
        #[arg(long)]
        dot: bool,
    },
    /// Print the line graph of a graph.
    Linegraph {
        /// Edge-list or JSON graph file; stdin when absent or `-`.
        graph: Option<String>,
        #[arg(long)]
        dot: bool,
    },
    /// Spanning-tree counts, listings and identities.
    Trees {
        #[command(subcommand)]
        action: TreesAction,
    },
    /// Tree arrays and spanning trees of the line graph.
    Bijection {
        #[command(subcommand)]
        action: BijectionAction,
    },
    /// de Bruijn sequences and bit strings.
    Codec {
        #[command(subcommand)]
        action: CodecAction,
    },
    /// Sandpile and critical groups.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Run every acceptance check.
    VerifyAll {
        #[arg(long, default_value_t = crate::corpus::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = crate::corpus::DEFAULT_SAMPLE)]
        sample: usize,
        #[arg(long)]
        bound: Option<u128>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FamilyKind {
    Db,
    Kautz,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[arg(short)]
    m: usize,
    #[arg(short)]
    n: usize,
}

impl FamilyArgs {
    fn family(&self) -> Family {
        match self.family {
            FamilyKind::Db => Family::DeBruijn {
                m: self.m,
                n: self.n,
            },
            FamilyKind::Kautz => Family::Kautz {
                m: self.m,
                n: self.n,
            },
        }
    }
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Edge-list or JSON graph file; stdin when absent or `-`.
    graph: Option<String>,
    /// Candidate bound for enumeration.
    #[arg(long)]
    bound: Option<u128>,
}

#[derive(Subcommand, Debug)]
enum TreesAction {
    /// κ(G), or κ(G, r) with `--root`.
    Count {
        #[command(flatten)]
        input: GraphArgs,
        /// Vertex name.
        #[arg(long)]
        root: Option<String>,
    },
    /// Every spanning tree, one per line.
    Enumerate {
        #[command(flatten)]
        input: GraphArgs,
    },
    /// Compare κ^vertex(LG) with κ^edge(G) times the out-edge sums.
    IdentityCheck {
        #[command(flatten)]
        input: GraphArgs,
        /// Compare random evaluations instead of expanding.
        #[arg(long)]
        randomized: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        trials: usize,
    },
    /// κ(LG) = κ(G) Π outdeg^(indeg - 1) by determinants.
    KnuthCheck {
        #[command(flatten)]
        input: GraphArgs,
    },
}

#[derive(Args, Debug)]
struct BijectionArgs {
    /// Graph file.
    #[arg(long)]
    graph: String,
    /// JSON input file; stdin when absent or `-`.
    input: Option<String>,
    /// Shuffle the edge order with this seed instead of using edge order.
    #[arg(long)]
    order_seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum BijectionAction {
    /// Tree array JSON to line-graph tree JSON.
    Sigma(BijectionArgs),
    /// Line-graph tree JSON to tree array JSON.
    Pi(BijectionArgs),
    /// Check both round trips over every tree array.
    Roundtrip {
        #[command(flatten)]
        input: GraphArgs,
        #[arg(long)]
        order_seed: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum CodecAction {
    /// de Bruijn sequence on stdin to bit string.
    Encode {
        #[arg(long)]
        degree: usize,
    },
    /// Bit string on stdin to de Bruijn sequence.
    Decode {
        #[arg(long)]
        degree: usize,
    },
    /// Every sequence of the degree with its code.
    Enumerate {
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Args, Debug)]
struct OptionalFamily {
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    #[arg(short)]
    m: Option<usize>,
    #[arg(short)]
    n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum GroupAction {
    /// Critical group of a family member, or sandpile group of a graph file.
    Compute {
        #[command(flatten)]
        family: OptionalFamily,
        /// Graph file instead of a family.
        #[arg(long, conflicts_with = "family")]
        graph: Option<String>,
        /// Sink vertex name for `--graph`; without it the graph must be Eulerian.
        #[arg(long, requires = "graph")]
        sink: Option<String>,
    },
    /// The closed-form group.
    Formula {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Closed-form group order and spanning-tree count.
    Order {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Computed group against the closed forms and the lemmas.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
    },
}

enum Failure {
    Domain(Error),
    Io(io::Error),
    /// A check ran and did not hold.
    Check(String),
    /// Arguments that parse but do not fit together.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Domain(Error::InvalidParameter(format!("bad JSON: {e}")))
    }
}

type Outcome = std::result::Result<(), Failure>;

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    json: bool,
}

impl Io<'_> {
    fn read(&mut self, path: Option<&str>) -> Result<String, Failure> {
        match path {
            None | Some("-") => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s)?;
                Ok(s)
            }
            Some(p) => fs::read_to_string(p).map_err(|e| {
                Failure::Domain(Error::InvalidParameter(format!("cannot read {p}: {e}")))
            }),
        }
    }

    fn graph(&mut self, path: Option<&str>) -> Result<DiGraph, Failure> {
        let text = self.read(path)?;
        if text.trim_start().starts_with('{') {
            let g: GraphJson = serde_json::from_str(&text)?;
            Ok(g.to_graph()?)
        } else {
            Ok(parse_edge_list(&text)?)
        }
    }

    fn emit_json(&mut self, value: &impl Serialize) -> Outcome {
        serde_json::to_writer_pretty(&mut *self.out, value)?;
        writeln!(self.out)?;
        Ok(())
    }

    /// JSON when requested, otherwise the text.
    fn emit(&mut self, value: &impl Serialize, text: impl FnOnce() -> String) -> Outcome {
        if self.json {
            self.emit_json(value)
        } else {
            let t = text();
            write!(self.out, "{t}")?;
            if !t.ends_with('\n') {
                writeln!(self.out)?;
            }
            Ok(())
        }
    }

    fn print_graph(&mut self, g: &DiGraph, dot: bool) -> Outcome {
        if dot && !self.json {
            write!(self.out, "{}", to_dot(g))?;
            return Ok(());
        }
        self.emit(&GraphJson::from_graph(g), || to_edge_list(g))
    }
}

fn bound(flag: Option<u128>) -> Result<u128, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BOUND_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Domain(Error::InvalidParameter(format!(
                "{BOUND_ENV} is not a number: {v:?}"
            )))
        }),
        Err(_) => Ok(DEFAULT_BOUND),
    }
}

fn vertex(g: &DiGraph, name: &str) -> Result<crate::VertexId, Failure> {
    g.find_vertex(name).ok_or_else(|| {
        Failure::Domain(Error::InvalidParameter(format!("no vertex named {name:?}")))
    })
}

fn order(g: &DiGraph, seed: Option<u64>) -> EdgeOrder {
    match seed {
        Some(s) => EdgeOrder::shuffled(g.edge_count(), s),
        None => EdgeOrder::natural(g.edge_count()),
    }
}

fn check(holds: bool, what: &str) -> Outcome {
    if holds {
        Ok(())
    } else {
        Err(Failure::Check(format!("{what} does not hold")))
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit status.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    let mut io = Io {
        stdin,
        out: stdout,
        json: cli.json,
    };
    match dispatch(cli.command, &mut io) {
        Ok(()) => 0,
        Err(Failure::Domain(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(stderr, "check failed: {msg}");
            1
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command, io: &mut Io) -> Outcome {
    match command {
        Command::Gen { family, dot } => {
            let g = family.family().build()?;
            io.print_graph(&g, dot)
        }
        Command::Linegraph { graph, dot } => {
            let g = io.graph(graph.as_deref())?;
            io.print_graph(&line_graph(&g).0, dot)
        }
        Command::Trees { action } => trees(action, io),
        Command::Bijection { action } => bijection(action, io),
        Command::Codec { action } => codec(action, io),
        Command::Group { action } => group(action, io),
        Command::VerifyAll {
            seed,
            sample,
            bound: b,
        } => {
            let cfg = VerifyConfig {
                corpus_seed: seed,
                corpus_size: sample,
                tree_bound: bound(b)?,
                ..VerifyConfig::default()
            };
            let results = run_all(&cfg);
            let all = results.iter().all(|r| r.passed);
            io.emit(&results, || {
                results.iter().map(|r| r.line() + "\n").collect()
            })?;
            check(all, "every acceptance criterion")
        }
    }
}

fn trees(action: TreesAction, io: &mut Io) -> Outcome {
    match action {
        TreesAction::Count { input, root } => {
            let g = io.graph(input.graph.as_deref())?;
            let count = match &root {
                Some(r) => count_trees_rooted(&g, vertex(&g, r)?),
                None => count_trees(&g),
            };
            io.emit(&json!({ "root": root, "trees": count.to_string() }), || {
                count.to_string()
            })
        }
        TreesAction::Enumerate { input } => {
            let g = io.graph(input.graph.as_deref())?;
            let mut listed = Vec::new();
            visit_trees(&g, bound(input.bound)?, |r, assign| {
                let edges: Vec<String> = assign.iter().flatten().map(|&e| g.edge_name(e)).collect();
                listed.push((g.vertex_name(r), edges));
            })?;
            let value: Vec<_> = listed
                .iter()
                .map(|(r, edges)| json!({ "root": r, "edges": edges }))
                .collect();
            io.emit(&value, || {
                listed
                    .iter()
                    .map(|(r, edges)| format!("root {r}: {}\n", edges.join(" ")))
                    .collect()
            })
        }
        TreesAction::IdentityCheck {
            input,
            randomized,
            seed,
            trials,
        } => {
            let g = io.graph(input.graph.as_deref())?;
            if randomized {
                let r = verify_identity_randomized(&g, seed, trials)?;
                io.emit(&r, || {
                    format!(
                        "holds: {} ({} random evaluations, probabilistic)",
                        r.holds, r.trials
                    )
                })?;
                return check(r.holds, "the identity");
            }
            let r = verify_identity(&g, bound(input.bound)?)?;
            let j = r.to_json();
            io.emit(&j, || {
                let mut s = format!("holds: {} ({} terms each side)", r.holds, j.lhs_terms);
                if let Some(w) = &r.witness {
                    s += &format!(
                        "\nwitness {}: {} vs {}",
                        w.monomial, w.lhs_coeff, w.rhs_coeff
                    );
                }
                s
            })?;
            check(r.holds, "the identity")
        }
        TreesAction::KnuthCheck { input } => {
            let g = io.graph(input.graph.as_deref())?;
            let r = knuth_check(&g)?;
            io.emit(&r, || {
                format!(
                    "holds: {}\nκ(LG) = {}\nκ(G) = {}\nfactor = {}",
                    r.holds, r.line_graph_trees, r.trees, r.factor
                )
            })?;
            check(r.holds, "the tree-count formula")
        }
    }
}

fn bijection(action: BijectionAction, io: &mut Io) -> Outcome {
    match action {
        BijectionAction::Sigma(args) => {
            let g = io.graph(Some(&args.graph))?;
            let bij = Bijection::new(&g, order(&g, args.order_seed))?;
            let array: TreeArrayJson = serde_json::from_str(&io.read(args.input.as_deref())?)?;
            let tree = bij.sigma(&array.to_tree_array(&g)?)?;
            let out = bij.line_tree_to_json(&tree);
            io.emit(&out, || {
                let edges: Vec<String> =
                    out.edges.iter().map(|(f, h)| format!("{f}->{h}")).collect();
                format!("root {}: {}", out.root, edges.join(" "))
            })
        }
        BijectionAction::Pi(args) => {
            let g = io.graph(Some(&args.graph))?;
            let bij = Bijection::new(&g, order(&g, args.order_seed))?;
            let tree: LineTreeJson = serde_json::from_str(&io.read(args.input.as_deref())?)?;
            let array = bij.pi(&bij.line_tree_from_json(&tree)?)?;
            let out = array.to_json(&g);
            io.emit(&out, || {
                let mut s = format!("root {}\n", out.root);
                for (v, list) in &out.lists {
                    s += &format!("{v}: [{}]\n", list.join(", "));
                }
                s
            })
        }
        BijectionAction::Roundtrip { input, order_seed } => {
            let g = io.graph(input.graph.as_deref())?;
            let b = bound(input.bound)?;
            let bij = Bijection::new(&g, order(&g, order_seed))?;
            let mut arrays = 0usize;
            let mut ok = true;
            let mut images = std::collections::HashSet::new();
            for a in enumerate_tree_arrays(&g, b)? {
                let t = bij.sigma(&a)?;
                ok &= bij.pi(&t)? == a;
                images.insert(t);
                arrays += 1;
            }
            let trees = crate::arborescence::enumerate_trees(bij.line_graph(), b)?;
            for t in &trees {
                ok &= bij.sigma(&bij.pi(t)?)? == *t;
            }
            ok &= images.len() == arrays && trees.len() == arrays;
            let value =
                json!({ "tree_arrays": arrays, "line_graph_trees": trees.len(), "holds": ok });
            io.emit(&value, || {
                format!(
                    "holds: {ok} ({arrays} tree arrays, {} line-graph trees)",
                    trees.len()
                )
            })?;
            check(ok, "the round trip")
        }
    }
}

fn codec(action: CodecAction, io: &mut Io) -> Outcome {
    match action {
        CodecAction::Encode { degree } => {
            let bits = BitString::parse(&io.read(None)?)?;
            let expected = 1usize.checked_shl(degree as u32).unwrap_or(0);
            if bits.len() != expected {
                return Err(Error::WrongLength {
                    expected,
                    actual: bits.len(),
                }
                .into());
            }
            let b = DeBruijnSequence::new(bits.bits().to_vec(), degree)?;
            let s = encode(&b)?;
            io.emit(
                &json!({ "degree": degree, "sequence": b.to_string(), "bits": s.to_string(), "valid": true }),
                || s.to_string(),
            )
        }
        CodecAction::Decode { degree } => {
            let s = BitString::parse(&io.read(None)?)?;
            let b = decode(&s, degree)?;
            io.emit(
                &json!({ "degree": degree, "bits": s.to_string(), "sequence": b.to_string(), "valid": true }),
                || b.to_string(),
            )
        }
        CodecAction::Enumerate { degree } => {
            let seqs = enumerate_db_sequences(degree)?;
            let mut rows = Vec::with_capacity(seqs.len());
            for b in &seqs {
                let code = if degree >= 2 {
                    Some(encode(b)?.to_string())
                } else {
                    None
                };
                rows.push((b.to_string(), code));
            }
            let value: Vec<_> = rows
                .iter()
                .map(|(b, s)| json!({ "sequence": b, "bits": s }))
                .collect();
            io.emit(
                &json!({ "degree": degree, "count": rows.len(), "sequences": value }),
                || {
                    rows.iter()
                        .map(|(b, s)| match s {
                            Some(s) => format!("{b} {s}\n"),
                            None => format!("{b}\n"),
                        })
                        .collect()
                },
            )
        }
    }
}

fn required_family(f: &OptionalFamily) -> Result<Family, Failure> {
    match (f.family, f.m, f.n) {
        (Some(kind), Some(m), Some(n)) => Ok(FamilyArgs { family: kind, m, n }.family()),
        _ => Err(Failure::Usage(
            "give --family with -m and -n, or --graph".into(),
        )),
    }
}

fn group(action: GroupAction, io: &mut Io) -> Outcome {
    match action {
        GroupAction::Compute {
            graph: Some(path),
            sink,
            ..
        } => {
            let g = io.graph(Some(&path))?;
            let k = match sink {
                Some(s) => sandpile_group(&g, vertex(&g, &s)?)?,
                None => critical_group(&g)?,
            };
            io.emit(&k.to_json(), || k.to_string())
        }
        GroupAction::Compute {
            family,
            graph: None,
            ..
        } => {
            let f = required_family(&family)?;
            let r = verify_family(f)?;
            io.emit(&r.to_json(), || r.computed.to_string())
        }
        GroupAction::Formula { family } => {
            let f = family.family();
            let formula = family_formula(f)?;
            let k = formula.normalize()?;
            let mut value = serde_json::to_value(k.to_json())?;
            value["formula"] = formula.to_string().into();
            io.emit(&value, || format!("{formula}\n= {k}"))
        }
        GroupAction::Order { family } => {
            let f = family.family();
            let order = family_order(f)?;
            let kappa = match f {
                Family::DeBruijn { m, n } => kappa_db(m, n)?,
                Family::Kautz { m, n } => kappa_kautz(m, n)?,
            };
            io.emit(
                &json!({ "order": order.to_string(), "trees": kappa.to_string() }),
                || format!("order {order}\ntrees {kappa}"),
            )
        }
        GroupAction::Verify { family } => {
            let f = family.family();
            let r = verify_family(f)?;
            let divbym = (f.n() >= 2)
                .then(|| check_divbym(&f.build()?))
                .transpose()?;
            let homo = (f.n() >= 2).then(|| check_homomorphism(f)).transpose()?;
            let holds = r.matches_formula()
                && r.order_matches()
                && divbym.as_ref().is_none_or(|d| d.holds())
                && homo.as_ref().is_none_or(|h| h.holds());
            let mut value = serde_json::to_value(r.to_json())?;
            value["divbym"] = divbym.as_ref().map(|d| d.holds()).into();
            value["scaled_line_group_matches"] = homo.as_ref().map(|h| h.holds()).into();
            value["holds"] = holds.into();
            io.emit(&value, || {
                let mut s = format!(
                    "group {}\nformula {}\nmatches formula: {}\norder matches: {}",
                    r.computed,
                    r.formula,
                    r.matches_formula(),
                    r.order_matches()
                );
                if let Some(d) = &divbym {
                    s += &format!("\nLaplacian factors split at {}: {}", d.c, d.holds());
                }
                if let Some(h) = &homo {
                    s += &format!("\nm K(LG) = K(G): {}", h.holds());
                }
                s
            })?;
            check(holds, "the group checks")
        }
    }
}
