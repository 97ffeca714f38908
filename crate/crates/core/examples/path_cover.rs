//! Covering a graph with few vertex-disjoint paths, or one spider plus paths.
//!
//! Run with `cargo run --example path_cover`.

use branchwise::reference::{oracle_ham, oracle_spi, verify_cover, CoverKind};
use branchwise::{solve_pp, solve_psc, Graph, PathPiece, SolverConfig};

fn show(label: &str, cover: &[PathPiece]) {
    println!("{label}:");
    for piece in cover {
        match piece {
            PathPiece::Path(vs) => println!("  path {vs:?}"),
            PathPiece::Spider { center, legs } => println!("  spider at {center} legs {legs:?}"),
        }
    }
}

fn main() {
    // K_{2,4} with vertices 0 and 1 on the small side.
    let edges = [0, 1].into_iter().flat_map(|a| (2..6).map(move |b| (a, b)));
    let g = Graph::from_edge_list(6, edges).unwrap();
    let config = SolverConfig::default();

    let (ham, paths) = solve_pp(&g, &config).unwrap();
    verify_cover(&g, &paths, CoverKind::Paths).unwrap();
    show(&format!("{ham} paths"), &paths);

    let (spi, spider) = solve_psc(&g, &config).unwrap();
    verify_cover(&g, &spider, CoverKind::PathSpider).unwrap();
    show(&format!("{spi} pieces with one spider"), &spider);

    assert_eq!(ham, oracle_ham(&g).unwrap());
    assert_eq!(spi, oracle_spi(&g).unwrap());
}

#[test]
fn example_runs() {
    main();
}
