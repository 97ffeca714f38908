//! Neighborhood diversity: vertices with equal neighborhoods form one type.
//!
//! Run with `cargo run --example type_partition`.

use branchwise::nd::same_type;
use branchwise::{type_partition, ClassKind, Graph};

fn main() {
    // Complete split graph: clique {0, 1, 2} joined to independent {3, 4, 5, 6}.
    let mut edges = vec![(0, 1), (0, 2), (1, 2)];
    edges.extend((0..3).flat_map(|a| (3..7).map(move |b| (a, b))));
    let g = Graph::from_edge_list(7, edges).unwrap();
    let tp = type_partition(&g).unwrap();
    for (i, class) in tp.classes.iter().enumerate() {
        let kind = match tp.kinds[i] {
            ClassKind::Clique => "clique",
            ClassKind::Independent => "independent",
        };
        println!("type {i}: {kind} {class:?} rep {}", tp.representatives[i]);
    }
    println!(
        "type graph edges {:?}",
        tp.type_graph.edges().collect::<Vec<_>>()
    );
    assert_eq!(tp.len(), 2);
    assert!(same_type(&g, 3, 6));
    assert!(!same_type(&g, 0, 3));
}

#[test]
fn example_runs() {
    main();
}
