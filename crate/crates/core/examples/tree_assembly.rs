//! Turning a feasible load assignment and per-module covers into a tree.
//!
//! Run with `cargo run --example tree_assembly`.

use branchwise::cover::trim_cover;
use branchwise::ilp::{build_mbv_instance, solve_feasibility, SearchBudget};
use branchwise::reference::verify_spanning_tree;
use branchwise::tree::build_tree;
use branchwise::{Graph, PathPiece};

fn main() {
    // Modules {0}, {1, 2}, {3}, {4}; the quotient is a star centered at the
    // independent pair {1, 2}.
    let g = Graph::from_edge_list(5, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)]).unwrap();
    let quotient = Graph::from_edge_list(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
    let members = [vec![0], vec![1, 2], vec![3], vec![4]];
    let cap = [1, 2, 1, 1];
    let ham = [1, 2, 1, 1];
    let inst = build_mbv_instance(&quotient, &[], 0, &cap, &ham, &ham).unwrap();
    let la = solve_feasibility(&inst, SearchBudget::default())
        .unwrap()
        .unwrap();

    // Each module gets as many pieces as its inflow.
    let modules: Vec<Vec<PathPiece>> = members
        .iter()
        .enumerate()
        .map(|(i, vs)| {
            let base: Vec<PathPiece> = vs.iter().map(|&v| PathPiece::Path(vec![v])).collect();
            trim_cover(&base, inst.inflow(&la.x, i) as usize).unwrap()
        })
        .collect();
    let tree = build_tree(g.vertex_count(), &modules, &inst, &la).unwrap();
    verify_spanning_tree(&g, &tree).unwrap();
    println!("root {} parents {:?}", tree.root, tree.parent);
    assert!(tree.branch.is_empty());
}

#[test]
fn example_runs() {
    main();
}
