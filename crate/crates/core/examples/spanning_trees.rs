//! Enumerating oriented spanning trees and checking both tree-count identities.

use linetree::arborescence::{count_trees, enumerate_trees, knuth_check, verify_identity};
use linetree::digraph::{kautz, parse_edge_list};

fn main() -> linetree::Result<()> {
    let g = parse_edge_list("0 1\n1 2\n2 0\n0 2\n2 2\n")?;
    let trees = enumerate_trees(&g, 1_000_000)?;
    println!(
        "{} trees by enumeration, {} by determinants",
        trees.len(),
        count_trees(&g)
    );
    for t in &trees {
        let edges: Vec<String> = t.edges().map(|e| g.edge_name(e)).collect();
        println!("  root {}: {}", g.vertex_name(t.root()), edges.join(" "));
    }

    for (name, g) in [("small", g), ("Kautz_1(2)", kautz(2, 1)?)] {
        let report = verify_identity(&g, 1_000_000)?;
        let knuth = knuth_check(&g)?;
        println!(
            "{name}: identity {} ({} terms), κ(LG) = {} = {} * {}",
            report.holds,
            report.lhs.terms().count(),
            knuth.line_graph_trees,
            knuth.trees,
            knuth.factor
        );
    }
    Ok(())
}
