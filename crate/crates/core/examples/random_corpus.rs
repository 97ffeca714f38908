//! Seeded graph generators, checked against the oracle.
//!
//! Run with `cargo run --example random_corpus`.

use branchwise::corpus::{
    all_connected_graphs, random_cograph, random_connected, random_weights, rng,
};
use branchwise::reference::{oracle_b, oracle_w};
use branchwise::{solve_cbv, solve_mbv, SolverConfig};

fn main() {
    let config = SolverConfig::default();
    let mut r = rng(7);

    let five = all_connected_graphs(5);
    let agree = five
        .iter()
        .all(|g| solve_mbv(g, &config).unwrap().b == oracle_b(g).unwrap().0);
    println!(
        "{} connected graphs on 5 labelled vertices, all agree: {agree}",
        five.len()
    );
    assert!(agree);

    for _ in 0..5 {
        let g = random_connected(9, 0.1, &mut r);
        let wg = random_weights(g, 1, 9, &mut r);
        let cost = solve_cbv(&wg, &config).unwrap().cost;
        println!("{} edges, cost {cost}", wg.graph().edge_count());
        assert_eq!(cost, oracle_w(&wg).unwrap().0);
    }

    // Cographs can be disconnected; keep drawing until one is not.
    let co = std::iter::repeat_with(|| random_cograph(30, &mut r))
        .find(|g| g.is_connected())
        .unwrap();
    let b = solve_mbv(&co, &config).unwrap().b;
    println!("connected cograph with {} edges: b = {b}", co.edge_count());
}

#[test]
fn example_runs() {
    main();
}
