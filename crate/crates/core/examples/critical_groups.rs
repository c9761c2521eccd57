//! Smith normal form, sandpile groups, and the closed forms for the families.

use linetree::digraph::{parse_edge_list, Family};
use linetree::group::{
    check_homomorphism, critical_group, kappa_kautz, kappa_kautz_alt_exponent, laplacian,
    sandpile_group, verify_family,
};
use linetree::matrix::IntMatrix;
use linetree::snf::smith_normal_form_with_transforms;

fn main() -> linetree::Result<()> {
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let smith = smith_normal_form_with_transforms(&m);
    let (u, v) = smith.transforms.as_ref().expect("requested");
    println!(
        "M =\n{m}diag = {:?}",
        smith
            .diagonal
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    assert_eq!(u.mul(&m).mul(v), smith.diagonal_matrix(3, 3));

    // a non-Eulerian graph: the sandpile group depends on the sink
    let g = parse_edge_list("0 1\n1 2\n2 0\n0 2\n2 2\n")?;
    println!("Laplacian A - D =\n{}", laplacian(&g));
    for r in g.vertices() {
        println!("K(G, {}) = {}", r.index(), sandpile_group(&g, r)?);
    }
    let cycle = parse_edge_list("0 1\n1 2\n2 0\n")?;
    println!("K(3-cycle) = {}", critical_group(&cycle)?);

    for f in [
        Family::DeBruijn { m: 2, n: 3 },
        Family::DeBruijn { m: 3, n: 2 },
        Family::Kautz { m: 2, n: 2 },
        Family::Kautz { m: 3, n: 2 },
    ] {
        let report = verify_family(f)?;
        let hom = check_homomorphism(f)?;
        println!(
            "{f:?}: {} (formula {}), m K(LG) = K(G): {}",
            report.computed,
            report.formula,
            hom.holds()
        );
    }
    println!(
        "κ(Kautz_2(2)) = {}; the exponent (m^n - 1)(m + 1) would give {}",
        kappa_kautz(2, 2)?,
        kappa_kautz_alt_exponent(2, 2)?
    );
    Ok(())
}
