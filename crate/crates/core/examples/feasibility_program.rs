//! The integer program over a quotient: loads on arcs and a flow that
//! proves every module is reached from the root.
//!
//! Run with `cargo run --example feasibility_program`.

use branchwise::ilp::{build_mbv_instance, solve_feasibility, QuotientDigraph, SearchBudget};
use branchwise::reference::ExhaustiveIlp;
use branchwise::Graph;

fn main() {
    // Quotient C4; module 0 is the root and each module holds two vertices
    // that need two paths, or one spider when the module may branch.
    let quotient = Graph::cycle(4);
    let cap = [2, 2, 2, 2];
    let ham = [2, 2, 2, 2];
    let spi = [1, 1, 1, 1];
    let budget = SearchBudget::default();
    let digraph = QuotientDigraph::new(&quotient, 0).unwrap();
    let oracle = ExhaustiveIlp::new(&digraph, 2);

    for branch in [vec![], vec![0], vec![0, 2]] {
        let inst = build_mbv_instance(&quotient, &branch, 0, &cap, &spi, &ham).unwrap();
        let found = solve_feasibility(&inst, budget).unwrap();
        match &found {
            Some(la) => {
                inst.check(la).unwrap();
                let arcs = inst.digraph().arcs();
                let loads: Vec<_> = arcs
                    .iter()
                    .zip(&la.x)
                    .filter(|(_, &x)| x > 0)
                    .map(|(a, x)| match a.tail {
                        Some(t) => format!("{t}->{}:{x}", a.head),
                        None => format!("s->{}:{x}", a.head),
                    })
                    .collect();
                println!("branch {branch:?}: feasible, loads {}", loads.join(" "));
            }
            None => println!("branch {branch:?}: infeasible"),
        }
        assert_eq!(found.is_some(), oracle.solve(&inst).is_some());
    }
}

#[test]
fn example_runs() {
    main();
}
