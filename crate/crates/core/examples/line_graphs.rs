//! Line graphs of small multigraphs and of the de Bruijn and Kautz families.

use linetree::digraph::{debruijn, kautz, line_graph, parse_edge_list, same_labeled, to_edge_list};

fn main() -> linetree::Result<()> {
    let g = parse_edge_list("a b e1\nb a e2\nb b loop\n")?;
    let (lg, map) = line_graph(&g);
    println!("G:\n{}", to_edge_list(&g));
    println!("LG:\n{}", to_edge_list(&lg));
    for le in lg.edge_ids() {
        let (e, f) = map.pair_of(le);
        println!(
            "  line edge {} joins {} then {}",
            le.index(),
            g.edge_name(e),
            g.edge_name(f)
        );
    }

    // taking line graphs walks up each family
    for (name, build) in [("DB", debruijn as fn(usize, usize) -> _), ("Kautz", kautz)] {
        for n in 1..4 {
            let g = build(2, n)?;
            let (lg, _) = line_graph(&g);
            let next = build(2, n + 1)?;
            println!(
                "{name}_{n}(2): {} vertices, {} edges; line graph is {name}_{}(2): {}",
                g.vertex_count(),
                g.edge_count(),
                n + 1,
                same_labeled(&lg, &next)
            );
        }
    }
    Ok(())
}
