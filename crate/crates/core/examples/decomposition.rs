//! Modular decomposition: the parse tree and its quotient graphs.
//!
//! Run with `cargo run --example decomposition`.

use branchwise::decomp::{evaluate, maximal_modules, width};
use branchwise::{decompose, Graph, ParseNode};

fn print(node: &ParseNode, depth: usize) {
    let pad = "  ".repeat(depth);
    match node {
        ParseNode::Leaf(v) => println!("{pad}{v}"),
        ParseNode::Internal {
            kind,
            quotient,
            children,
            ..
        } => {
            let edges: Vec<_> = quotient.edges().collect();
            println!(
                "{pad}{} {:?} quotient {edges:?}",
                kind.name(),
                node.vertices()
            );
            for child in children {
                print(child, depth + 1);
            }
        }
    }
}

fn main() {
    // A P4 whose two inner vertices are blown up into a clique and an
    // independent pair.
    let g = Graph::from_edge_list(
        6,
        [
            (0, 1),
            (0, 2),
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 4),
            (3, 5),
            (4, 5),
        ],
    )
    .unwrap();
    let tree = decompose(&g).unwrap();
    print(&tree, 0);
    println!("maximal modules {:?}", maximal_modules(&g).unwrap());
    println!("width {} over {} nodes", width(&tree), tree.node_count());
    assert_eq!(evaluate(&tree).unwrap(), g);
    assert_eq!(tree.prime_count(), 1);
}

#[test]
fn example_runs() {
    main();
}
