//! Acceptance criteria, one test and one PASS/FAIL line each. Run with
//! `--nocapture` to see the lines of passing criteria.

use linetree::verify::{self, Criterion, VerifyConfig};

fn run(c: Criterion) {
    let r = c(&VerifyConfig::default()).expect("criterion ran");
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn c1_generating_function_identity() {
    run(verify::line_graph_identity);
}

#[test]
fn c2_knuth_formula() {
    run(verify::knuth_formula);
}

#[test]
fn c3_bijection_round_trips() {
    run(verify::bijection_round_trips);
}

#[test]
fn c4_codec_bijection() {
    run(verify::codec_bijection);
}

#[test]
fn c5_critical_groups() {
    run(verify::critical_groups);
}

#[test]
fn c6_group_orders_and_tree_counts() {
    run(verify::group_orders);
}

#[test]
fn c7_laplacian_factors_divisible_by_m() {
    run(verify::divisible_by_m);
}

#[test]
fn c8_multiplication_by_m() {
    run(verify::multiplication_by_m);
}

#[test]
fn c9_class_cycles() {
    run(verify::class_cycles);
}
