//! Minimum branch vertices, path-spider cover and partition into paths.

use log::debug;

use crate::cover::{compute_ham, compute_record, realize, CoverRecord, PathPiece};
use crate::decomp::{decompose, ParseNode};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::ilp::{build_mbv_instance, solve_feasibility, SearchBudget};
use crate::tree::SpanningTreeResult;

/// Knobs shared by every solver.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverConfig {
    /// Node budget for each integer feasibility search.
    pub budget: SearchBudget,
}

impl SolverConfig {
    pub fn with_budget(budget: u64) -> Self {
        SolverConfig {
            budget: SearchBudget(budget),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MbvAnswer {
    pub b: usize,
    pub tree: SpanningTreeResult,
    /// Root modules allowed to hold a branch vertex in the winning program.
    pub branch_modules: Vec<usize>,
}

/// Records of the root's children, in child order.
pub fn child_records(root: &ParseNode, budget: SearchBudget) -> Result<Vec<CoverRecord>> {
    root.children()
        .iter()
        .map(|c| compute_record(c, budget))
        .collect()
}

/// A spanning tree of `g` with the fewest branch vertices.
pub fn solve_mbv(g: &Graph, config: &SolverConfig) -> Result<MbvAnswer> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if n == 1 {
        return Ok(MbvAnswer {
            b: 0,
            tree: SpanningTreeResult::single_vertex(),
            branch_modules: Vec::new(),
        });
    }
    let root = decompose(g)?;
    let quotient = root.quotient().expect("two or more vertices");
    let records = child_records(&root, config.budget)?;

    let (ham, cover) = compute_ham(quotient, &records, config.budget)?;
    if ham == 1 {
        let PathPiece::Path(vs) = &cover[0] else {
            return Err(Error::Internal("path cover holds a spider".into()));
        };
        let mut parent = vec![None; n];
        for w in vs.windows(2) {
            parent[w[1]] = Some(w[0]);
        }
        return Ok(MbvAnswer {
            b: 0,
            tree: SpanningTreeResult::from_parents(parent)?,
            branch_modules: Vec::new(),
        });
    }

    let k = quotient.vertex_count();
    let capacity: Vec<u32> = records.iter().map(|r| r.size as u32).collect();
    let spi_lb: Vec<u32> = records.iter().map(|r| r.spi).collect();
    let ham_lb: Vec<u32> = records.iter().map(|r| r.ham).collect();
    for size in 1..=k {
        for subset in Combinations::new(k, size) {
            let inst =
                build_mbv_instance(quotient, &subset, subset[0], &capacity, &spi_lb, &ham_lb)?;
            let Some(la) = solve_feasibility(&inst, config.budget)? else {
                continue;
            };
            debug!("branch modules {subset:?} feasible");
            let covers: Vec<&[PathPiece]> = records
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    if inst.is_branch(i) {
                        r.spi_cover.as_slice()
                    } else {
                        r.ham_cover.as_slice()
                    }
                })
                .collect();
            let realized = realize(&inst, &la, &covers, 0)?;
            // every vertex is real and ids are already 0..n
            let tree = realized.tree;
            if tree.branch.len() > size {
                return Err(Error::Internal(format!(
                    "tree has {} branch vertices for {size} branch modules",
                    tree.branch.len()
                )));
            }
            return Ok(MbvAnswer {
                b: tree.branch.len(),
                tree,
                branch_modules: subset,
            });
        }
    }
    Err(Error::Internal("no branch set was feasible".into()))
}

/// `spi(g)` and a cover by one spider followed by `spi - 1` paths.
pub fn solve_psc(g: &Graph, config: &SolverConfig) -> Result<(u32, Vec<PathPiece>)> {
    let r = compute_record(&decompose(g)?, config.budget)?;
    Ok((r.spi, r.spi_cover))
}

/// `ham(g)` and a partition of the vertices into that many paths.
pub fn solve_pp(g: &Graph, config: &SolverConfig) -> Result<(u32, Vec<PathPiece>)> {
    let root = decompose(g)?;
    if let ParseNode::Leaf(v) = root {
        return Ok((1, vec![PathPiece::Path(vec![v])]));
    }
    let records = child_records(&root, config.budget)?;
    compute_ham(root.quotient().expect("internal"), &records, config.budget)
}

/// `size`-subsets of `0..n` in lexicographic order.
pub(crate) struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub(crate) fn new(n: usize, size: usize) -> Self {
        Combinations {
            n,
            current: (size <= n).then(|| (0..size).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<VertexId>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn paths_and_stars() {
        assert_eq!(solve_mbv(&Graph::path(5), &cfg()).unwrap().b, 0);
        let star = solve_mbv(&Graph::star(4), &cfg()).unwrap();
        assert_eq!(star.b, 1);
        assert_eq!(star.tree.branch, vec![0]);
    }

    #[test]
    fn spider_with_long_legs() {
        let g = Graph::from_edge_list(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert_eq!(solve_mbv(&g, &cfg()).unwrap().b, 1);
    }

    #[test]
    fn trivial_and_invalid_inputs() {
        let one = solve_mbv(&Graph::empty(1), &cfg()).unwrap();
        assert_eq!((one.b, one.tree.parent.clone()), (0, vec![None]));
        assert_eq!(
            solve_mbv(&Graph::empty(2), &cfg()),
            Err(Error::Disconnected)
        );
        assert_eq!(solve_mbv(&Graph::empty(0), &cfg()), Err(Error::EmptyGraph));
    }

    #[test]
    fn cover_numbers() {
        assert_eq!(solve_psc(&Graph::star(3), &cfg()).unwrap().0, 1);
        assert_eq!(solve_psc(&Graph::empty(5), &cfg()).unwrap().0, 5);
        assert_eq!(solve_pp(&Graph::complete(4), &cfg()).unwrap().0, 1);
        assert_eq!(solve_pp(&Graph::star(3), &cfg()).unwrap().0, 2);
        assert_eq!(solve_pp(&Graph::empty(5), &cfg()).unwrap().0, 5);
        let triangles =
            Graph::from_edge_list(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(solve_psc(&triangles, &cfg()).unwrap().0, 2);
        assert_eq!(solve_pp(&triangles, &cfg()).unwrap().0, 2);
    }
}
