//! Similarity classes, class-covering cycles, and the row reduction they give
//! on the Laplacian.

use linetree::digraph::{class_cycle, debruijn, kautz, similarity_classes};
use linetree::group::laplacian;
use num_bigint::BigInt;
use num_integer::Integer;

fn main() -> linetree::Result<()> {
    for g in [kautz(2, 2)?, debruijn(3, 2)?] {
        let classes = similarity_classes(&g)?;
        let cycle = class_cycle(&g)?;
        let names: Vec<String> = cycle.iter().map(|&v| g.vertex_name(v)).collect();
        println!("{} classes, cycle {}", classes.len(), names.join(" -> "));

        // rows in a class agree off the diagonal, so subtracting the cycle
        // vertex's row from the rest of its class leaves differences of -m and m
        let m = g.outdeg(cycle[0]);
        let mut l = laplacian(&g);
        println!("Laplacian:\n{l}");
        for &c in &cycle {
            let class = classes.iter().find(|k| k.contains(&c)).unwrap();
            for &w in class.iter().filter(|&&w| w != c) {
                l.add_row_multiple(w.index(), c.index(), &BigInt::from(-1));
            }
        }
        println!("after subtracting cycle rows:\n{l}");
        let reduced = g.vertices().filter(|v| !cycle.contains(v)).all(|v| {
            l.row(v.index())
                .iter()
                .all(|x| x.is_multiple_of(&BigInt::from(m)))
        });
        println!("non-cycle rows divisible by {m}: {reduced}\n");
    }
    Ok(())
}
