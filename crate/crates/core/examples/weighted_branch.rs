//! Cheapest branch set when vertices carry costs.
//!
//! Run with `cargo run --example weighted_branch`.

use branchwise::reference::{oracle_w, verify_weighted_tree};
use branchwise::{solve_cbv, type_partition, Graph, SolverConfig, WeightedGraph};

fn main() {
    // Two adjacent hubs 0 and 1, each with three pendants, so both hubs
    // branch in every spanning tree.
    let mut edges = vec![(0, 1)];
    edges.extend((2..5).map(|v| (0, v)));
    edges.extend((5..8).map(|v| (1, v)));
    let g = Graph::from_edge_list(8, edges).unwrap();
    let costs = vec![2, 9, 1, 1, 1, 1, 1, 1];
    let wg = WeightedGraph::new(g.clone(), costs).unwrap();

    let tp = type_partition(&g).unwrap();
    println!("{} vertex types", tp.len());

    let answer = solve_cbv(&wg, &SolverConfig::default()).unwrap();
    verify_weighted_tree(&wg, &answer.tree).unwrap();
    println!("cost = {} branch {:?}", answer.cost, answer.tree.branch);
    assert_eq!(answer.cost, 11);
    assert_eq!(answer.cost, oracle_w(&wg).unwrap().0);
}

#[test]
fn example_runs() {
    main();
}
