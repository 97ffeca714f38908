//! Spanning-tree construction from a feasible load assignment.
//!
//! Every module `i` comes with a cover cut into exactly `alpha_i` pieces,
//! where `alpha_i` is the load entering `i`. The first endpoint `f(P)` of each
//! piece is the one vertex of the piece whose parent lies outside the module;
//! its second endpoint `s(P)` is the one vertex that may adopt vertices of
//! other modules. In a branch module the first piece is a spider whose center
//! adopts every first endpoint owed along the module's outgoing arcs at once;
//! in any other module each second endpoint adopts at most one vertex.
//!
//! Exploration runs breadth-first from the root piece. When it stalls, a
//! module holding both an explored and an unexplored first endpoint hands the
//! parent of the explored one (`w`) to the unexplored one (`u`); `w` and its
//! subtree wait in the pending set until some second endpoint adopts `w` again.
//!
//! Adoption consumes a per-arc budget initialised from `x`, so the load on
//! every arc is honoured exactly.

use std::collections::VecDeque;

use crate::cover::PathPiece;
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::ilp::{IlpInstance, LoadAssignment};

/// A rooted spanning tree given by parent pointers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTreeResult {
    pub parent: Vec<Option<VertexId>>,
    pub root: VertexId,
    /// Vertices of tree degree at least 3, sorted.
    pub branch: Vec<VertexId>,
    /// Total branch cost, for weighted instances.
    pub cost: Option<u64>,
}

impl SpanningTreeResult {
    /// Builds the result from parent pointers, recomputing the branch set.
    /// Fails unless exactly one vertex has no parent.
    pub fn from_parents(parent: Vec<Option<VertexId>>) -> Result<Self> {
        let roots: Vec<VertexId> = (0..parent.len()).filter(|&v| parent[v].is_none()).collect();
        let [root] = roots[..] else {
            return Err(Error::Internal(format!(
                "parent map has {} roots",
                roots.len()
            )));
        };
        let branch = branch_vertices(&parent);
        Ok(SpanningTreeResult {
            parent,
            root,
            branch,
            cost: None,
        })
    }

    /// The trivial tree on one vertex.
    pub fn single_vertex() -> Self {
        SpanningTreeResult {
            parent: vec![None],
            root: 0,
            branch: Vec::new(),
            cost: None,
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        tree_degrees(&self.parent)
    }

    /// Tree edges as `(child, parent)`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (v, p)))
    }
}

pub fn tree_degrees(parent: &[Option<VertexId>]) -> Vec<usize> {
    let mut deg = vec![0; parent.len()];
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            deg[v] += 1;
            if p < deg.len() {
                deg[p] += 1;
            }
        }
    }
    deg
}

/// Vertices with degree at least 3 under the given parent pointers.
pub fn branch_vertices(parent: &[Option<VertexId>]) -> Vec<VertexId> {
    tree_degrees(parent)
        .into_iter()
        .enumerate()
        .filter(|&(_, d)| d >= 3)
        .map(|(v, _)| v)
        .collect()
}

/// Assembles a spanning tree over `vertex_count` vertices.
///
/// `modules[i]` must hold exactly `alpha_i` pieces covering module `i`, with
/// the spider first when `i` is a branch module. The root is `f` of the first
/// piece of the root module.
pub fn build_tree(
    vertex_count: usize,
    modules: &[Vec<PathPiece>],
    inst: &IlpInstance,
    la: &LoadAssignment,
) -> Result<SpanningTreeResult> {
    let mut builder = Builder::new(vertex_count, modules, inst, la)?;
    builder.run()?;
    let parent = builder.parent;
    let tree = SpanningTreeResult::from_parents(parent)?;
    if tree.root != builder.main_root {
        return Err(Error::Internal("main root lost during construction".into()));
    }
    Ok(tree)
}

#[derive(Debug, Clone, Copy)]
struct Slot {
    module: usize,
    piece: usize,
}

struct Builder<'a> {
    modules: &'a [Vec<PathPiece>],
    inst: &'a IlpInstance,
    x: &'a [u32],
    first_of: Vec<Option<Slot>>,
    second_of: Vec<Vec<Slot>>,
    parent: Vec<Option<VertexId>>,
    explored: Vec<bool>,
    explored_count: usize,
    pending: Vec<bool>,
    alpha: Vec<u64>,
    beta: Vec<u64>,
    arc_left: Vec<u32>,
    out_arcs: Vec<Vec<usize>>,
    main_root: VertexId,
}

impl<'a> Builder<'a> {
    fn new(
        vertex_count: usize,
        modules: &'a [Vec<PathPiece>],
        inst: &'a IlpInstance,
        la: &'a LoadAssignment,
    ) -> Result<Self> {
        let n = inst.module_count();
        if modules.len() != n {
            return Err(Error::Internal(format!(
                "{} module covers for {n} modules",
                modules.len()
            )));
        }
        let mut first_of = vec![None; vertex_count];
        let mut second_of = vec![Vec::new(); vertex_count];
        let mut owner = vec![false; vertex_count];
        for (module, pieces) in modules.iter().enumerate() {
            let alpha = inst.inflow(&la.x, module);
            if pieces.len() as u64 != alpha {
                return Err(Error::Internal(format!(
                    "module {module} has {} pieces but inflow {alpha}",
                    pieces.len()
                )));
            }
            if inst.is_branch(module) && !pieces.first().is_some_and(PathPiece::is_spider) {
                return Err(Error::Internal(format!(
                    "branch module {module} does not lead with a spider"
                )));
            }
            for (piece, p) in pieces.iter().enumerate() {
                for v in p.vertices() {
                    if v >= vertex_count || owner[v] {
                        return Err(Error::Internal(format!("vertex {v} misplaced in covers")));
                    }
                    owner[v] = true;
                }
                first_of[p.first()] = Some(Slot { module, piece });
                second_of[p.second()].push(Slot { module, piece });
            }
        }
        if let Some(v) = owner.iter().position(|&o| !o) {
            return Err(Error::Internal(format!("vertex {v} not covered")));
        }
        let arcs = inst.digraph().arcs();
        let mut out_arcs = vec![Vec::new(); n];
        for (k, a) in arcs.iter().enumerate().skip(1) {
            if la.x[k] >= 1 {
                out_arcs[a.tail.expect("module arc")].push(k);
            }
        }
        let alpha = (0..n).map(|i| inst.inflow(&la.x, i)).collect();
        let beta = (0..n)
            .map(|i| {
                if inst.is_branch(i) {
                    1
                } else {
                    inst.outflow(&la.x, i)
                }
            })
            .collect();
        let root_piece = &modules[inst.root()][0];
        Ok(Builder {
            modules,
            inst,
            x: &la.x,
            first_of,
            second_of,
            parent: vec![None; vertex_count],
            explored: vec![false; vertex_count],
            explored_count: 0,
            pending: vec![false; vertex_count],
            alpha,
            beta,
            arc_left: la.x.clone(),
            out_arcs,
            main_root: root_piece.first(),
        })
    }

    fn run(&mut self) -> Result<()> {
        let root = self.main_root;
        self.alpha[self.inst.root()] -= 1;
        self.arc_left[0] = 0;
        self.explore(root)?;
        let total = self.parent.len();
        let mut rounds = 0;
        while self.explored_count < total {
            rounds += 1;
            if rounds > total {
                return Err(Error::StuckExploration(total - self.explored_count));
            }
            let Some((w, u)) = self.pick_restart() else {
                return Err(Error::StuckExploration(total - self.explored_count));
            };
            self.parent[u] = self.parent[w];
            self.parent[w] = None;
            self.explored[w] = false;
            self.explored_count -= 1;
            self.pending[w] = true;
            if w == self.main_root {
                self.main_root = u;
            }
            self.explore(u)?;
        }
        debug_assert!(self.pending.iter().all(|&p| !p));
        Ok(())
    }

    /// Module with an explored first endpoint `w`, an untouched first endpoint
    /// `u`, and remaining adoption duty. Prefers `w` inside the main tree.
    fn pick_restart(&self) -> Option<(VertexId, VertexId)> {
        for (j, pieces) in self.modules.iter().enumerate() {
            if self.beta[j] == 0 {
                continue;
            }
            let firsts = || pieces.iter().map(PathPiece::first);
            let Some(u) = firsts().find(|&v| !self.explored[v] && !self.pending[v]) else {
                continue;
            };
            let mut explored = firsts().filter(|&v| self.explored[v]);
            let Some(fallback) = explored.clone().next() else {
                continue;
            };
            let w = explored
                .find(|&v| self.tree_root(v) == self.main_root)
                .unwrap_or(fallback);
            return Some((w, u));
        }
        None
    }

    fn tree_root(&self, mut v: VertexId) -> VertexId {
        while let Some(p) = self.parent[v] {
            v = p;
        }
        v
    }

    fn explore(&mut self, u: VertexId) -> Result<()> {
        let slot = self.first_of[u].ok_or_else(|| {
            Error::Internal(format!("exploration started at {u}, not a first endpoint"))
        })?;
        let mut queue = VecDeque::new();
        self.open_piece(slot, &mut queue);
        while let Some(v) = queue.pop_front() {
            for slot in self.second_of[v].clone() {
                self.dequeue(v, slot, &mut queue)?;
            }
        }
        debug_assert!(self.forest_is_consistent());
        Ok(())
    }

    fn dequeue(&mut self, v: VertexId, slot: Slot, queue: &mut VecDeque<VertexId>) -> Result<()> {
        let i = slot.module;
        if !self.inst.is_branch(i) && self.beta[i] >= 1 {
            let (arc, target) = self.out_arcs[i]
                .iter()
                .filter(|&&k| self.arc_left[k] >= 1)
                .find_map(|&k| {
                    let head = self.inst.digraph().arcs()[k].head;
                    self.adoptable(v, head).next().map(|h| {
                        (
                            k,
                            Slot {
                                module: head,
                                piece: h,
                            },
                        )
                    })
                })
                .ok_or(Error::NoAdoptableEndpoint { vertex: v })?;
            self.adopt(v, target, queue);
            self.arc_left[arc] -= 1;
            self.beta[i] -= 1;
        } else if self.inst.is_branch(i) && self.beta[i] == 1 && slot.piece == 0 {
            for arc in self.out_arcs[i].clone() {
                let head = self.inst.digraph().arcs()[arc].head;
                let wanted = self.x[arc] as usize;
                let chosen: Vec<usize> = self.adoptable(v, head).take(wanted).collect();
                if chosen.len() < wanted {
                    return Err(Error::NoAdoptableEndpoint { vertex: v });
                }
                for piece in chosen {
                    self.adopt(
                        v,
                        Slot {
                            module: head,
                            piece,
                        },
                        queue,
                    );
                }
                self.arc_left[arc] = 0;
            }
            self.beta[i] = 0;
        }
        Ok(())
    }

    /// Piece indices of module `module` whose first endpoint `v` may adopt:
    /// not explored, and not the pending root of `v`'s own tree.
    fn adoptable(&self, v: VertexId, module: usize) -> impl Iterator<Item = usize> + '_ {
        let own_root = self.tree_root(v);
        self.modules[module]
            .iter()
            .enumerate()
            .filter(move |(_, p)| {
                let f = p.first();
                !self.explored[f] && !(self.pending[f] && f == own_root)
            })
            .map(|(h, _)| h)
    }

    fn adopt(&mut self, v: VertexId, target: Slot, queue: &mut VecDeque<VertexId>) {
        let f = self.modules[target.module][target.piece].first();
        self.parent[f] = Some(v);
        self.alpha[target.module] -= 1;
        if self.pending[f] {
            self.pending[f] = false;
            self.explored[f] = true;
            self.explored_count += 1;
        } else {
            self.open_piece(target, queue);
        }
    }

    /// Marks a whole piece explored, links it internally and enqueues `s(P)`.
    fn open_piece(&mut self, slot: Slot, queue: &mut VecDeque<VertexId>) {
        let piece = &self.modules[slot.module][slot.piece];
        match piece {
            PathPiece::Path(vs) => {
                for w in vs.windows(2) {
                    self.parent[w[1]] = Some(w[0]);
                }
            }
            PathPiece::Spider { center, legs } => {
                for leg in legs {
                    let mut prev = *center;
                    for &v in leg {
                        self.parent[v] = Some(prev);
                        prev = v;
                    }
                }
            }
        }
        for v in piece.vertices() {
            if !self.explored[v] {
                self.explored[v] = true;
                self.explored_count += 1;
            }
        }
        queue.push_back(piece.second());
    }

    /// Parent pointers over explored and pending vertices form a forest whose
    /// roots are the main root and the pending vertices.
    fn forest_is_consistent(&self) -> bool {
        let n = self.parent.len();
        (0..n)
            .filter(|&v| self.explored[v] || self.pending[v])
            .all(|v| {
                let mut cur = v;
                for _ in 0..=n {
                    match self.parent[cur] {
                        None => return cur == self.main_root || self.pending[cur],
                        Some(p) => cur = p,
                    }
                }
                false
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::ilp::{build_cbv_instance, build_mbv_instance, solve_feasibility, SearchBudget};
    use crate::nd::ClassKind;

    fn path(vs: &[usize]) -> PathPiece {
        PathPiece::Path(vs.to_vec())
    }

    #[test]
    fn star_from_two_classes() {
        let inst = build_cbv_instance(
            &Graph::path(2),
            &[ClassKind::Clique, ClassKind::Independent],
            &[1, 3],
            &[0],
            0,
        )
        .unwrap();
        let la = solve_feasibility(&inst, SearchBudget::default())
            .unwrap()
            .unwrap();
        let modules = vec![
            vec![PathPiece::single_spider(0)],
            vec![path(&[1]), path(&[2]), path(&[3])],
        ];
        let t = build_tree(4, &modules, &inst, &la).unwrap();
        assert_eq!(t.root, 0);
        assert_eq!(t.branch, vec![0]);
        assert_eq!(t.parent, vec![None, Some(0), Some(0), Some(0)]);
    }

    #[test]
    fn single_edge() {
        let inst = build_mbv_instance(&Graph::path(2), &[], 0, &[1, 1], &[1, 1], &[1, 1]).unwrap();
        let la = solve_feasibility(&inst, SearchBudget::default())
            .unwrap()
            .unwrap();
        let t = build_tree(2, &[vec![path(&[0])], vec![path(&[1])]], &inst, &la).unwrap();
        assert_eq!(t.parent, vec![None, Some(0)]);
        assert!(t.branch.is_empty());
    }

    fn manual(inst: &IlpInstance, loads: &[((usize, usize), u32)]) -> LoadAssignment {
        let mut x = vec![0; inst.digraph().arcs().len()];
        x[0] = 1;
        for &((i, j), v) in loads {
            x[inst.digraph().arc_index(i, j).unwrap()] = v;
        }
        let y = crate::ilp::extract_flow(&x, inst).unwrap();
        let la = LoadAssignment { x, y };
        assert_eq!(inst.check(&la), Ok(()));
        la
    }

    #[test]
    fn reattachment_hands_over_a_parent() {
        // Modules: R = {0}, A = {1, 2}, C = {3}, B = {4}; quotient is a star
        // centered at A. The first explored endpoint of A spends its duty on
        // C, so B and the second endpoint of A wait on each other until the
        // restart step moves vertex 1 to the pending set.
        let quotient = Graph::from_edge_list(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let inst =
            build_mbv_instance(&quotient, &[], 0, &[1, 2, 1, 1], &[1; 4], &[1, 2, 1, 1]).unwrap();
        let la = manual(&inst, &[((0, 1), 1), ((1, 2), 1), ((1, 3), 1), ((3, 1), 1)]);
        let modules = vec![
            vec![path(&[0])],
            vec![path(&[1]), path(&[2])],
            vec![path(&[3])],
            vec![path(&[4])],
        ];
        let t = build_tree(5, &modules, &inst, &la).unwrap();
        assert_eq!(t.parent, vec![None, Some(4), Some(0), Some(1), Some(2)]);
        assert_eq!(t.root, 0);
        assert!(t.branch.is_empty());
    }

    #[test]
    fn piece_count_must_match_inflow() {
        let inst = build_mbv_instance(&Graph::path(2), &[], 0, &[1, 2], &[1, 1], &[1, 1]).unwrap();
        let la = manual(&inst, &[((0, 1), 1)]);
        let err = build_tree(
            3,
            &[vec![path(&[0])], vec![path(&[1]), path(&[2])]],
            &inst,
            &la,
        );
        assert!(matches!(err, Err(Error::Internal(_))));
    }
}
