use proptest::prelude::*;

use branchwise::cli::write_edgelist;
use branchwise::cover::{compute_record, trim_cover};
use branchwise::decomp::{evaluate, width};
use branchwise::ilp::{build_mbv_instance, solve_feasibility, SearchBudget};
use branchwise::io::{parse_graph, Format};
use branchwise::mbv::child_records;
use branchwise::reference::{oracle_b, verify_cover, verify_spanning_tree, CoverKind};
use branchwise::{decompose, solve_mbv, type_partition, ClassKind, Graph, PathPiece, SolverConfig};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges = all.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e);
            Graph::from_edge_list(n, edges).unwrap()
        })
    })
}

fn connected(max_n: usize) -> impl Strategy<Value = Graph> {
    graph(max_n).prop_filter("connected", Graph::is_connected)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn decomposition_evaluates_back(g in graph(10)) {
        let t = decompose(&g).unwrap();
        prop_assert_eq!(evaluate(&t).unwrap(), g.clone());
        prop_assert!(width(&t) <= g.vertex_count());
    }

    #[test]
    fn cover_numbers_are_ordered_and_witnessed(g in graph(8)) {
        let r = compute_record(&decompose(&g).unwrap(), SearchBudget::default()).unwrap();
        prop_assert!(r.spi <= r.ham && r.ham as usize <= r.size);
        prop_assert_eq!(r.size, g.vertex_count());
        prop_assert_eq!(verify_cover(&g, &r.ham_cover, CoverKind::Paths), Ok(()));
        prop_assert_eq!(verify_cover(&g, &r.spi_cover, CoverKind::PathSpider), Ok(()));
        prop_assert!(r.spi_cover[0].is_spider());
    }

    #[test]
    fn mbv_matches_the_oracle(g in connected(8)) {
        let a = solve_mbv(&g, &SolverConfig::default()).unwrap();
        prop_assert_eq!(verify_spanning_tree(&g, &a.tree), Ok(()));
        prop_assert_eq!(a.b, oracle_b(&g).unwrap().0);
    }

    #[test]
    fn type_classes_are_homogeneous(g in graph(9)) {
        let tp = type_partition(&g).unwrap();
        for (c, kind) in tp.classes.iter().zip(&tp.kinds) {
            for &u in c {
                for &v in c {
                    if u < v {
                        prop_assert_eq!(g.has_edge(u, v), *kind == ClassKind::Clique);
                    }
                }
            }
        }
        for i in 0..tp.len() {
            for j in i + 1..tp.len() {
                let joined = tp.type_graph.has_edge(i, j);
                for &u in &tp.classes[i] {
                    for &v in &tp.classes[j] {
                        prop_assert_eq!(g.has_edge(u, v), joined);
                    }
                }
            }
        }
    }

    #[test]
    fn trimming_keeps_vertices_and_edges(
        legs in prop::collection::vec(1usize..4, 0..4),
        paths in prop::collection::vec(1usize..5, 0..3),
        extra in 0usize..12,
    ) {
        let mut next = 1;
        let mut take = |k: usize| {
            let out: Vec<usize> = (next..next + k).collect();
            next += k;
            out
        };
        let mut cover = vec![PathPiece::Spider { center: 0, legs: legs.iter().map(|&k| take(k)).collect() }];
        for &k in &paths {
            cover.push(PathPiece::Path(take(k)));
        }
        let total: usize = cover.iter().map(PathPiece::len).sum();
        let target = (cover.len() + extra).min(total);
        let out = trim_cover(&cover, target).unwrap();
        prop_assert_eq!(out.len(), target);
        prop_assert!(out[0].is_spider());
        let mut before: Vec<usize> = cover.iter().flat_map(PathPiece::vertices).collect();
        let mut after: Vec<usize> = out.iter().flat_map(PathPiece::vertices).collect();
        before.sort_unstable();
        after.sort_unstable();
        prop_assert_eq!(before, after);
        let old: Vec<(usize, usize)> = cover.iter().flat_map(PathPiece::edges).collect();
        prop_assert!(out.iter().flat_map(PathPiece::edges).all(|e| old.contains(&e)));
    }

    #[test]
    fn edgelist_round_trip(g in graph(12)) {
        let text = write_edgelist(&g, None);
        prop_assert_eq!(parse_graph(&text, Format::Auto).unwrap().graph, g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// Adding universal vertices never breaks feasibility, so stopping at the
    /// first feasible count is sound.
    #[test]
    fn ham_search_is_monotone(g in graph(7)) {
        let root = decompose(&g).unwrap();
        let Some(q) = root.quotient() else { return Ok(()) };
        let records = child_records(&root, SearchBudget::default()).unwrap();
        let k = q.vertex_count();
        let aug = q.augment_join(1).0;
        let mut seen_feasible = false;
        for l in 1..=g.vertex_count() as u32 {
            let mut cap: Vec<u32> = records.iter().map(|r| r.size as u32).collect();
            cap.push(l);
            let mut lb: Vec<u32> = records.iter().map(|r| r.ham).collect();
            lb.push(l);
            let inst = build_mbv_instance(&aug, &[], k, &cap, &lb, &lb).unwrap();
            let feasible = solve_feasibility(&inst, SearchBudget::default()).unwrap().is_some();
            prop_assert!(feasible || !seen_feasible, "l = {} infeasible after a feasible count", l);
            seen_feasible |= feasible;
        }
        prop_assert!(seen_feasible);
    }
}
