//! Fewest branch vertices over all spanning trees of a connected graph.
//!
//! Run with `cargo run --example min_branch`.

use branchwise::reference::verify_spanning_tree;
use branchwise::{solve_mbv, Graph, SolverConfig};

fn main() {
    // Two triangles joined by a bridge, each with a pendant vertex.
    let g = Graph::from_edge_list(
        8,
        [
            (0, 1),
            (1, 2),
            (0, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (3, 5),
            (0, 6),
            (5, 7),
        ],
    )
    .unwrap();
    let answer = solve_mbv(&g, &SolverConfig::default()).unwrap();
    verify_spanning_tree(&g, &answer.tree).unwrap();
    println!("b = {}", answer.b);
    println!("root {} branch {:?}", answer.tree.root, answer.tree.branch);
    for (child, parent) in answer.tree.edges() {
        println!("  {child} -> {parent}");
    }
    assert_eq!(answer.b, 0);

    // A star cannot avoid its center.
    let star = solve_mbv(&Graph::star(5), &SolverConfig::default()).unwrap();
    println!("star: b = {} at {:?}", star.b, star.tree.branch);
    assert_eq!(star.tree.branch, vec![0]);
}

#[test]
fn example_runs() {
    main();
}
