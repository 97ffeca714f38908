//! Reading edge lists and DIMACS text, and writing JSON certificates.
//!
//! Run with `cargo run --example file_formats`.

use branchwise::io::{parse_graph, to_json, CoverJson, Format, TreeJson};
use branchwise::{solve_cbv, solve_mbv, solve_psc, SolverConfig};

const EDGELIST: &str = "\
# vertex and edge counts, one edge per line, then optional costs
4 3
0 1
1 2
1 3
w 1 5
";

const DIMACS: &str = "\
c costs on vertex lines
p edge 4 3
n 2 5
e 1 2
e 2 3
e 2 4
";

fn main() {
    let config = SolverConfig::default();
    let plain = parse_graph(EDGELIST, Format::Auto).unwrap();
    let answer = solve_mbv(&plain.graph, &config).unwrap();
    print!("{}", to_json(&TreeJson::from_mbv(&answer)));

    let (spi, cover) = solve_psc(&plain.graph, &config).unwrap();
    print!("{}", to_json(&CoverJson::psc(spi, &cover)));

    let weighted = parse_graph(DIMACS, Format::Dimacs)
        .unwrap()
        .weighted()
        .unwrap();
    let answer = solve_cbv(&weighted, &config).unwrap();
    print!("{}", to_json(&TreeJson::from_cbv(&answer)));
    assert_eq!(answer.cost, 5);

    let err = parse_graph("3 1\n0 7\n", Format::Edgelist).unwrap_err();
    println!("error: {err}");
}

#[test]
fn example_runs() {
    main();
}
