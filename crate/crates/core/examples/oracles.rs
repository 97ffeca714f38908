//! Brute-force reference answers for small graphs, used to check the solver.
//!
//! Run with `cargo run --example oracles`.

use branchwise::reference::{verify_spanning_tree, Oracle};
use branchwise::{solve_mbv, Graph, SolverConfig};

fn main() {
    let oracle = Oracle::default();
    let petersen = Graph::from_edge_list(
        10,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
        ],
    )
    .unwrap();
    // Ten vertices is above the default cap.
    println!("petersen: {}", oracle.report(&petersen).unwrap_err());

    let bull = Graph::from_edge_list(5, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)]).unwrap();
    let report = oracle.report(&bull).unwrap();
    println!("bull: {report:?}");
    let answer = solve_mbv(&bull, &SolverConfig::default()).unwrap();
    verify_spanning_tree(&bull, &answer.tree).unwrap();
    assert_eq!(Some(answer.b), report.b);

    // The cap can be raised when the wait is acceptable.
    let (b, tree) = Oracle::with_cap(10).b(&petersen).unwrap();
    verify_spanning_tree(&petersen, &tree).unwrap();
    println!("petersen: b = {b}");
    assert_eq!(b, solve_mbv(&petersen, &SolverConfig::default()).unwrap().b);
}

#[test]
fn example_runs() {
    main();
}
