//! Minimum-cost branch vertices over the neighborhood-diversity partition.
//!
//! Each type class holds at most one branch vertex in some optimal tree, and
//! that vertex can be taken to be the cheapest member of its class. So the
//! solver walks class subsets in ascending total representative cost and
//! stops at the first one whose program is feasible.

use log::debug;

use crate::cover::{realize, PathPiece};
use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::ilp::{build_cbv_instance, solve_feasibility, IlpInstance, LoadAssignment};
use crate::mbv::SolverConfig;
use crate::nd::{min_cost_representatives, type_partition, ClassKind, TypePartition};
use crate::tree::SpanningTreeResult;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CbvAnswer {
    pub cost: u64,
    pub tree: SpanningTreeResult,
    /// Classes allowed to hold a branch vertex in the winning program.
    pub branch_classes: Vec<usize>,
}

/// Path and spider covers of one class, built directly.
struct ClassCovers {
    ham: Vec<PathPiece>,
    spi: Vec<PathPiece>,
}

fn class_covers(class: &[VertexId], kind: ClassKind, rep: VertexId) -> ClassCovers {
    let others: Vec<VertexId> = class.iter().copied().filter(|&v| v != rep).collect();
    match kind {
        ClassKind::Clique => {
            let mut path = others.clone();
            path.push(rep);
            ClassCovers {
                ham: vec![PathPiece::Path(path)],
                spi: vec![PathPiece::Spider {
                    center: rep,
                    legs: others.iter().map(|&v| vec![v]).collect(),
                }],
            }
        }
        ClassKind::Independent => ClassCovers {
            ham: class.iter().map(|&v| PathPiece::Path(vec![v])).collect(),
            spi: std::iter::once(PathPiece::single_spider(rep))
                .chain(others.iter().map(|&v| PathPiece::Path(vec![v])))
                .collect(),
        },
    }
}

/// Class subsets ordered by total representative cost, then size, then
/// lexicographically.
fn candidate_subsets(rep_cost: &[u64]) -> Vec<Vec<usize>> {
    let k = rep_cost.len();
    let mut subsets: Vec<(u64, Vec<usize>)> = (0u64..1 << k)
        .map(|mask| {
            let s: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
            (s.iter().map(|&i| rep_cost[i]).sum(), s)
        })
        .collect();
    subsets.sort_by(|(ca, a), (cb, b)| (ca, a.len(), a).cmp(&(cb, b.len(), b)));
    subsets.into_iter().map(|(_, s)| s).collect()
}

/// Largest type partition the subset enumeration accepts.
pub const MAX_CLASSES: usize = 20;

/// A spanning tree of `wg` whose branch vertices have the least total cost.
pub fn solve_cbv(wg: &WeightedGraph, config: &SolverConfig) -> Result<CbvAnswer> {
    let g = wg.graph();
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if n == 1 {
        return Ok(CbvAnswer {
            cost: 0,
            tree: SpanningTreeResult {
                cost: Some(0),
                ..SpanningTreeResult::single_vertex()
            },
            branch_classes: Vec::new(),
        });
    }
    let tp = type_partition(g)?;
    if tp.len() > MAX_CLASSES {
        return Err(Error::TooLarge {
            n: tp.len(),
            cap: MAX_CLASSES,
        });
    }
    let reps = min_cost_representatives(&tp, wg);
    let covers: Vec<ClassCovers> = (0..tp.len())
        .map(|i| class_covers(&tp.classes[i], tp.kinds[i], reps[i]))
        .collect();
    let rep_cost: Vec<u64> = reps.iter().map(|&v| wg.cost(v)).collect();
    let sizes: Vec<u32> = tp.classes.iter().map(|c| c.len() as u32).collect();

    for subset in candidate_subsets(&rep_cost) {
        let roots: Vec<usize> = match subset.first() {
            Some(&r) => vec![r],
            None => (0..tp.len()).collect(),
        };
        for r in roots {
            let inst = build_cbv_instance(&tp.type_graph, &tp.kinds, &sizes, &subset, r)?;
            let Some(la) = solve_feasibility(&inst, config.budget)? else {
                continue;
            };
            debug!("branch classes {subset:?} with root class {r} feasible");
            let mut tree = assemble(&tp, &covers, &inst, &la)?;
            let cost = tree.branch.iter().map(|&v| wg.cost(v)).sum();
            tree.cost = Some(cost);
            return Ok(CbvAnswer {
                cost,
                tree,
                branch_classes: subset,
            });
        }
    }
    Err(Error::Internal("no class subset was feasible".into()))
}

fn assemble(
    tp: &TypePartition,
    covers: &[ClassCovers],
    inst: &IlpInstance,
    la: &LoadAssignment,
) -> Result<SpanningTreeResult> {
    let chosen: Vec<&[PathPiece]> = (0..tp.len())
        .map(|i| {
            if inst.is_branch(i) {
                covers[i].spi.as_slice()
            } else {
                covers[i].ham.as_slice()
            }
        })
        .collect();
    Ok(realize(inst, la, &chosen, 0)?.tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn subset_order() {
        let s = candidate_subsets(&[3, 1, 2]);
        assert_eq!(s[0], Vec::<usize>::new());
        assert_eq!(s[1], vec![1]);
        assert_eq!(s[2], vec![2]);
        // {0} and {1,2} both cost 3; the smaller set wins
        assert_eq!(s[3], vec![0]);
        assert_eq!(s[4], vec![1, 2]);
        assert_eq!(s.len(), 8);
    }

    #[test]
    fn class_cover_shapes() {
        let c = class_covers(&[1, 4, 6], ClassKind::Clique, 4);
        assert_eq!(c.ham, vec![PathPiece::Path(vec![1, 6, 4])]);
        assert_eq!(c.spi[0].first(), 4);
        let c = class_covers(&[1, 4, 6], ClassKind::Independent, 6);
        assert_eq!(c.ham.len(), 3);
        assert_eq!(c.spi[0], PathPiece::single_spider(6));
        assert_eq!(c.spi.len(), 3);
    }

    #[test]
    fn paths_cost_nothing() {
        let wg = WeightedGraph::new(Graph::path(5), vec![3, 1, 4, 1, 5]).unwrap();
        assert_eq!(solve_cbv(&wg, &cfg()).unwrap().cost, 0);
    }

    #[test]
    fn star_pays_for_its_center() {
        let wg = WeightedGraph::new(Graph::star(3), vec![5, 1, 1, 1]).unwrap();
        let a = solve_cbv(&wg, &cfg()).unwrap();
        assert_eq!(a.cost, 5);
        assert_eq!(a.tree.branch, vec![0]);
    }

    #[test]
    fn double_star_pays_both_hubs() {
        // hubs 0 and 4, each with three leaves
        let g = Graph::from_edge_list(8, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (4, 6), (4, 7)])
            .unwrap();
        let mut cost = vec![1; 8];
        cost[0] = 2;
        cost[4] = 9;
        let a = solve_cbv(&WeightedGraph::new(g, cost).unwrap(), &cfg()).unwrap();
        assert_eq!(a.cost, 11);
    }

    #[test]
    fn disconnected_is_rejected() {
        let wg = WeightedGraph::uniform(Graph::empty(3));
        assert_eq!(solve_cbv(&wg, &cfg()), Err(Error::Disconnected));
    }
}
