//! σ and π between tree arrays of G and spanning trees of its line graph.

use linetree::bijection::{enumerate_tree_arrays, tree_array_count, Bijection, EdgeOrder};
use linetree::digraph::{debruijn, parse_edge_list};

fn main() -> linetree::Result<()> {
    let g = parse_edge_list("a b e1\nb a e2\na a x\n")?;
    let bij = Bijection::with_natural_order(&g);
    let lg = bij.line_graph();
    for array in enumerate_tree_arrays(&g, 1_000_000)? {
        let tree = bij.sigma(&array)?;
        let edges: Vec<String> = tree
            .edges()
            .map(|le| {
                let (e, f) = bij.map().pair_of(le);
                format!("{}->{}", g.edge_name(e), g.edge_name(f))
            })
            .collect();
        let root = g.edge_name(bij.map().edge_of(tree.root()));
        let json = serde_json::to_string(&array.to_json(&g)).expect("serializable");
        println!("{json}\n  σ: root {root}: {}", edges.join(" "));
        assert_eq!(bij.pi(&tree)?, array);
    }
    println!(
        "{} arrays, line graph has {} vertices",
        tree_array_count(&g),
        lg.vertex_count()
    );

    // any edge order gives a bijection, usually a different one
    let g = debruijn(2, 2)?;
    let arrays: Vec<_> = enumerate_tree_arrays(&g, 1_000_000)?.collect();
    let natural = Bijection::with_natural_order(&g);
    for seed in 1..=3 {
        let shuffled = Bijection::new(&g, EdgeOrder::shuffled(g.edge_count(), seed))?;
        let mut differ = 0;
        for a in &arrays {
            let t = shuffled.sigma(a)?;
            assert_eq!(&shuffled.pi(&t)?, a);
            differ += usize::from(t != natural.sigma(a)?);
        }
        println!(
            "seed {seed}: {} arrays round-trip, {differ} map differently",
            arrays.len()
        );
    }
    Ok(())
}
