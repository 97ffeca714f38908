//! Arc-load feasibility programs over a quotient digraph.
//!
//! Every undirected quotient edge `{i, j}` becomes the arcs `(i, j)` and
//! `(j, i)`, and a source `s` feeds the root module `r` through the single arc
//! `(s, r)`. A load assignment `x` puts a non-negative integer on every arc:
//!
//! * `x(s, r) = 1`;
//! * the inflow of module `i` stays within `[lower_i, capacity_i]` (in the
//!   weighted program an independent class needs inflow exactly `|V_i|` and a
//!   clique only the upper bound);
//! * a module outside the branch set sends out no more load than it receives;
//! * a flow `y` of `n` units leaves `s`, every module keeps one unit, and
//!   `y <= n * x` arc by arc.
//!
//! The flow part only says that every module is reachable from `r` through
//! arcs with positive load, and conversely a BFS tree of that support yields a
//! valid `y` from subtree sizes. The solver therefore searches over `x` alone,
//! checks reachability, and rebuilds `y` afterwards with [`extract_flow`].
//!
//! The search branches on whether an arc leaving the explored part of the
//! support carries load, and prunes with an exact integral circulation
//! relaxation of the load constraints.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::flow::Circulation;
use crate::graph::Graph;
use crate::nd::ClassKind;

/// Default cap on search nodes.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// Environment variable overriding the search budget.
pub const BUDGET_ENV: &str = "BRANCHWISE_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget(pub u64);

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget(DEFAULT_SEARCH_BUDGET)
    }
}

impl SearchBudget {
    /// Reads `BRANCHWISE_BUDGET`, falling back to the default when unset or
    /// unparsable.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(SearchBudget)
            .unwrap_or_default()
    }
}

/// Arc of the quotient digraph. `tail == None` is the source `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub tail: Option<usize>,
    pub head: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientDigraph {
    module_count: usize,
    root: usize,
    /// `(s, r)` first, then module arcs in lexicographic `(tail, head)` order.
    arcs: Vec<Arc>,
}

impl QuotientDigraph {
    pub fn new(quotient: &Graph, root: usize) -> Result<Self> {
        let n = quotient.vertex_count();
        if root >= n {
            return Err(Error::InvalidRoot {
                root,
                reason: "not a module index",
            });
        }
        let mut arcs = vec![Arc {
            tail: None,
            head: root,
        }];
        for i in 0..n {
            arcs.extend(quotient.neighbors(i).iter().map(|&j| Arc {
                tail: Some(i),
                head: j,
            }));
        }
        Ok(QuotientDigraph {
            module_count: n,
            root,
            arcs,
        })
    }

    pub fn module_count(&self) -> usize {
        self.module_count
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Index of the module arc `(i, j)`, if present.
    pub fn arc_index(&self, i: usize, j: usize) -> Option<usize> {
        self.arcs[1..]
            .binary_search(&Arc {
                tail: Some(i),
                head: j,
            })
            .ok()
            .map(|k| k + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IlpMode {
    /// Unweighted program: lower bounds from `spi` / `ham`.
    Mbv,
    /// Weighted program over a type partition.
    Cbv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpInstance {
    digraph: QuotientDigraph,
    branch: Vec<bool>,
    capacity: Vec<u32>,
    lower: Vec<u32>,
    mode: IlpMode,
    class_kinds: Option<Vec<ClassKind>>,
}

/// Program for the unweighted problem. Modules in `branch` use `spi_lb` as
/// their inflow lower bound, the others `ham_lb`.
pub fn build_mbv_instance(
    quotient: &Graph,
    branch: &[usize],
    root: usize,
    capacity: &[u32],
    spi_lb: &[u32],
    ham_lb: &[u32],
) -> Result<IlpInstance> {
    let n = quotient.vertex_count();
    let flags = branch_flags(n, branch, root)?;
    if capacity.len() != n || spi_lb.len() != n || ham_lb.len() != n {
        return Err(Error::Internal(format!(
            "bound vectors do not match {n} modules"
        )));
    }
    let lower: Vec<u32> = (0..n)
        .map(|i| if flags[i] { spi_lb[i] } else { ham_lb[i] })
        .collect();
    IlpInstance::new(
        QuotientDigraph::new(quotient, root)?,
        flags,
        capacity.to_vec(),
        lower,
        IlpMode::Mbv,
        None,
    )
}

/// Program for the weighted problem over a type graph: independent classes
/// must receive exactly `|V_i|`, cliques at most `|V_i|`.
pub fn build_cbv_instance(
    type_graph: &Graph,
    kinds: &[ClassKind],
    sizes: &[u32],
    branch: &[usize],
    root: usize,
) -> Result<IlpInstance> {
    let n = type_graph.vertex_count();
    let flags = branch_flags(n, branch, root)?;
    if kinds.len() != n || sizes.len() != n {
        return Err(Error::Internal(format!(
            "class vectors do not match {n} classes"
        )));
    }
    let lower = kinds
        .iter()
        .zip(sizes)
        .map(|(k, &size)| match k {
            ClassKind::Clique => 1,
            ClassKind::Independent => size,
        })
        .collect();
    IlpInstance::new(
        QuotientDigraph::new(type_graph, root)?,
        flags,
        sizes.to_vec(),
        lower,
        IlpMode::Cbv,
        Some(kinds.to_vec()),
    )
}

fn branch_flags(n: usize, branch: &[usize], root: usize) -> Result<Vec<bool>> {
    let mut flags = vec![false; n];
    for &b in branch {
        if b >= n {
            return Err(Error::OutOfRange { vertex: b, n });
        }
        flags[b] = true;
    }
    if root < n && !branch.is_empty() && !flags[root] {
        return Err(Error::InvalidRoot {
            root,
            reason: "the root must belong to a non-empty branch set",
        });
    }
    Ok(flags)
}

impl IlpInstance {
    fn new(
        digraph: QuotientDigraph,
        branch: Vec<bool>,
        capacity: Vec<u32>,
        lower: Vec<u32>,
        mode: IlpMode,
        class_kinds: Option<Vec<ClassKind>>,
    ) -> Result<Self> {
        for (module, (&capacity, &lower)) in capacity.iter().zip(&lower).enumerate() {
            if capacity < lower {
                return Err(Error::InconsistentBounds {
                    module,
                    capacity,
                    lower,
                });
            }
        }
        Ok(IlpInstance {
            digraph,
            branch,
            capacity,
            lower,
            mode,
            class_kinds,
        })
    }

    pub fn digraph(&self) -> &QuotientDigraph {
        &self.digraph
    }

    pub fn module_count(&self) -> usize {
        self.digraph.module_count
    }

    pub fn root(&self) -> usize {
        self.digraph.root
    }

    pub fn is_branch(&self, i: usize) -> bool {
        self.branch[i]
    }

    pub fn branch_modules(&self) -> Vec<usize> {
        (0..self.module_count())
            .filter(|&i| self.branch[i])
            .collect()
    }

    pub fn capacity(&self, i: usize) -> u32 {
        self.capacity[i]
    }

    /// Inflow lower bound used by the search (1 for weighted cliques).
    pub fn lower(&self, i: usize) -> u32 {
        self.lower[i]
    }

    pub fn mode(&self) -> IlpMode {
        self.mode
    }

    pub fn class_kinds(&self) -> Option<&[ClassKind]> {
        self.class_kinds.as_deref()
    }

    /// Total load entering module `i`, the source arc included.
    pub fn inflow(&self, load: &[u32], i: usize) -> u64 {
        self.digraph
            .arcs
            .iter()
            .zip(load)
            .filter(|(a, _)| a.head == i)
            .map(|(_, &v)| u64::from(v))
            .sum()
    }

    pub fn outflow(&self, load: &[u32], i: usize) -> u64 {
        self.digraph
            .arcs
            .iter()
            .zip(load)
            .filter(|(a, _)| a.tail == Some(i))
            .map(|(_, &v)| u64::from(v))
            .sum()
    }

    /// Evaluates every constraint of the instance's program literally and
    /// reports the first one violated.
    pub fn check(&self, la: &LoadAssignment) -> std::result::Result<(), Violation> {
        let arcs = &self.digraph.arcs;
        let n = self.module_count() as u64;
        if la.x.len() != arcs.len() || la.y.len() != arcs.len() {
            return Err(Violation::Shape);
        }
        if la.x[0] != 1 {
            return Err(Violation::SourceLoad);
        }
        for i in 0..self.module_count() {
            let inflow = self.inflow(&la.x, i);
            let size = u64::from(self.capacity[i]);
            match (self.mode, self.class_kinds.as_ref().map(|k| k[i])) {
                (IlpMode::Cbv, Some(ClassKind::Independent)) => {
                    if inflow != size {
                        return Err(Violation::IndependentEquality { module: i });
                    }
                }
                (IlpMode::Cbv, _) => {
                    if inflow > size {
                        return Err(Violation::Capacity { module: i });
                    }
                }
                (IlpMode::Mbv, _) => {
                    if inflow > size {
                        return Err(Violation::Capacity { module: i });
                    }
                    if inflow < u64::from(self.lower[i]) {
                        return Err(Violation::LowerBound { module: i });
                    }
                }
            }
            if !self.branch[i] && self.outflow(&la.x, i) > inflow {
                return Err(Violation::Outflow { module: i });
            }
        }
        if u64::from(la.y[0]) != n {
            return Err(Violation::SourceFlow);
        }
        for i in 0..self.module_count() {
            let net = self.inflow(&la.y, i) as i64 - self.outflow(&la.y, i) as i64;
            if net != 1 {
                return Err(Violation::Conservation { module: i });
            }
        }
        for (arc, (&x, &y)) in la.x.iter().zip(&la.y).enumerate() {
            if u64::from(y) > n * u64::from(x) {
                return Err(Violation::Coupling { arc });
            }
        }
        Ok(())
    }
}

/// Per-arc loads `x` and flows `y`, aligned with [`QuotientDigraph::arcs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadAssignment {
    pub x: Vec<u32>,
    pub y: Vec<u32>,
}

/// A constraint of the program that an assignment breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    Shape,
    SourceLoad,
    Capacity { module: usize },
    LowerBound { module: usize },
    IndependentEquality { module: usize },
    Outflow { module: usize },
    SourceFlow,
    Conservation { module: usize },
    Coupling { arc: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape => write!(f, "assignment length does not match the arc list"),
            Violation::SourceLoad => write!(f, "x(s, r) must be 1"),
            Violation::Capacity { module } => {
                write!(f, "inflow of module {module} exceeds its size")
            }
            Violation::LowerBound { module } => {
                write!(f, "inflow of module {module} is below its lower bound")
            }
            Violation::IndependentEquality { module } => {
                write!(
                    f,
                    "inflow of independent class {module} differs from its size"
                )
            }
            Violation::Outflow { module } => {
                write!(f, "non-branch module {module} sends more than it receives")
            }
            Violation::SourceFlow => write!(f, "y(s, r) must equal the module count"),
            Violation::Conservation { module } => {
                write!(f, "module {module} does not keep exactly one unit of flow")
            }
            Violation::Coupling { arc } => write!(f, "y exceeds n * x on arc {arc}"),
        }
    }
}

/// Decides feasibility of `inst`. Returns a full `(x, y)` certificate when
/// feasible, `None` when not, and an error when the budget runs out.
pub fn solve_feasibility(
    inst: &IlpInstance,
    budget: SearchBudget,
) -> Result<Option<LoadAssignment>> {
    let mut search = Search::new(inst, budget.0);
    let Some(x) = search.run()? else {
        return Ok(None);
    };
    let y = extract_flow(&x, inst)?;
    let la = LoadAssignment { x, y };
    debug_assert_eq!(inst.check(&la), Ok(()));
    Ok(Some(la))
}

/// Flow `y` from a BFS tree of the support of `x`: each tree arc carries the
/// size of the subtree below it and `y(s, r) = n`.
pub fn extract_flow(x: &[u32], inst: &IlpInstance) -> Result<Vec<u32>> {
    let arcs = &inst.digraph.arcs;
    let n = inst.module_count();
    let r = inst.root();
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, a) in arcs.iter().enumerate().skip(1) {
        if x[k] >= 1 {
            out_arcs[a.tail.expect("module arc")].push(k);
        }
    }
    let mut parent_arc = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[r] = true;
    parent_arc[r] = 0;
    let mut order = vec![r];
    let mut queue = VecDeque::from([r]);
    while let Some(i) = queue.pop_front() {
        for &k in &out_arcs[i] {
            let j = arcs[k].head;
            if !seen[j] {
                seen[j] = true;
                parent_arc[j] = k;
                order.push(j);
                queue.push_back(j);
            }
        }
    }
    if let Some(missing) = (0..n).find(|&i| !seen[i]) {
        return Err(Error::Unreachable(missing));
    }
    let mut subtree = vec![1u32; n];
    let mut y = vec![0u32; arcs.len()];
    for &j in order.iter().rev() {
        if j == r {
            continue;
        }
        let k = parent_arc[j];
        y[k] = subtree[j];
        subtree[arcs[k].tail.expect("module arc")] += subtree[j];
    }
    y[0] = n as u32;
    Ok(y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ArcStatus {
    Open,
    Forced,
    Excluded,
}

struct Search<'a> {
    inst: &'a IlpInstance,
    status: Vec<ArcStatus>,
    reached: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(inst: &'a IlpInstance, budget: u64) -> Self {
        let mut reached = vec![false; inst.module_count()];
        reached[inst.root()] = true;
        let mut status = vec![ArcStatus::Open; inst.digraph.arcs.len()];
        status[0] = ArcStatus::Forced;
        Search {
            inst,
            status,
            reached,
            nodes: 0,
            budget,
        }
    }

    fn run(&mut self) -> Result<Option<Vec<u32>>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded(self.budget));
        }
        let Some(x) = self.relax() else {
            return Ok(None);
        };
        if self.support_reaches_all(&x) {
            return Ok(Some(x));
        }
        let arcs = &self.inst.digraph.arcs;
        let pick = (1..arcs.len())
            .filter(|&k| {
                self.status[k] == ArcStatus::Open
                    && self.reached[arcs[k].tail.expect("module arc")]
                    && !self.reached[arcs[k].head]
            })
            .min_by_key(|&k| (arcs[k].head, arcs[k].tail));
        let Some(k) = pick else {
            return Ok(None);
        };
        let head = arcs[k].head;

        self.status[k] = ArcStatus::Forced;
        self.reached[head] = true;
        let found = self.run()?;
        self.reached[head] = false;
        if found.is_some() {
            self.status[k] = ArcStatus::Open;
            return Ok(found);
        }

        self.status[k] = ArcStatus::Excluded;
        let found = self.run()?;
        self.status[k] = ArcStatus::Open;
        Ok(found)
    }

    /// Integral loads satisfying every constraint except reachability, with
    /// forced arcs carrying at least 1 and excluded arcs 0.
    fn relax(&self) -> Option<Vec<u32>> {
        let inst = self.inst;
        let n = inst.module_count();
        let arcs = &inst.digraph.arcs;
        // node layout: source, sink, then (in_i, out_i) per module
        let (source, sink) = (0, 1);
        let inn = |i: usize| 2 + 2 * i;
        let out = |i: usize| 3 + 2 * i;
        let unbounded: u64 = inst.capacity.iter().map(|&c| u64::from(c)).sum::<u64>() + 1;
        let mut circ = Circulation::new(2 + 2 * n);
        let mut arc_edge = vec![usize::MAX; arcs.len()];
        arc_edge[0] = circ.add_edge(source, inn(inst.root()), 1, 1);
        for (k, a) in arcs.iter().enumerate().skip(1) {
            let cap = u64::from(inst.capacity[a.head]);
            let (lo, hi) = match self.status[k] {
                ArcStatus::Excluded => continue,
                ArcStatus::Forced => (1, cap),
                ArcStatus::Open => (0, cap),
            };
            if lo > hi {
                return None;
            }
            arc_edge[k] = circ.add_edge(out(a.tail.expect("module arc")), inn(a.head), lo, hi);
        }
        for i in 0..n {
            circ.add_edge(
                inn(i),
                out(i),
                u64::from(inst.lower[i]),
                u64::from(inst.capacity[i]),
            );
            circ.add_edge(out(i), sink, 0, unbounded);
            if inst.branch[i] {
                circ.add_edge(source, out(i), 0, unbounded);
            }
        }
        circ.add_edge(sink, source, 0, unbounded * 2);
        let flow = circ.solve()?;
        Some(
            arc_edge
                .iter()
                .map(|&e| if e == usize::MAX { 0 } else { flow[e] as u32 })
                .collect(),
        )
    }

    fn support_reaches_all(&self, x: &[u32]) -> bool {
        let arcs = &self.inst.digraph.arcs;
        let n = self.inst.module_count();
        let mut seen = vec![false; n];
        seen[self.inst.root()] = true;
        let mut stack = vec![self.inst.root()];
        while let Some(i) = stack.pop() {
            for (k, a) in arcs.iter().enumerate().skip(1) {
                if a.tail == Some(i) && x[k] >= 1 && !seen[a.head] {
                    seen[a.head] = true;
                    stack.push(a.head);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(inst: &IlpInstance) -> Option<LoadAssignment> {
        solve_feasibility(inst, SearchBudget::default()).unwrap()
    }

    #[test]
    fn k2_hamiltonian_pattern() {
        let inst = build_mbv_instance(&Graph::path(2), &[], 0, &[1, 1], &[1, 1], &[1, 1]).unwrap();
        assert_eq!(inst.digraph().arcs().len(), 3);
        let la = solve(&inst).unwrap();
        let a01 = inst.digraph().arc_index(0, 1).unwrap();
        let a10 = inst.digraph().arc_index(1, 0).unwrap();
        assert_eq!((la.x[0], la.x[a01], la.x[a10]), (1, 1, 0));
        assert_eq!(inst.check(&la), Ok(()));
    }

    #[test]
    fn bound_contradiction_is_rejected() {
        let err =
            build_mbv_instance(&Graph::path(2), &[], 0, &[1, 1], &[1, 1], &[2, 1]).unwrap_err();
        assert_eq!(
            err,
            Error::InconsistentBounds {
                module: 0,
                capacity: 1,
                lower: 2
            }
        );
    }

    #[test]
    fn lower_bound_follows_branch_set() {
        let inst = build_mbv_instance(&Graph::path(3), &[1], 1, &[3, 3, 3], &[1, 2, 1], &[3, 3, 2])
            .unwrap();
        assert_eq!((inst.lower(0), inst.lower(1), inst.lower(2)), (3, 2, 2));
        assert!(build_mbv_instance(&Graph::path(3), &[1], 0, &[3; 3], &[1; 3], &[1; 3]).is_err());
    }

    #[test]
    fn middle_module_cannot_feed_both_ends() {
        let inst = build_mbv_instance(&Graph::path(3), &[], 1, &[1, 1, 1], &[1, 1, 1], &[1, 1, 1])
            .unwrap();
        assert!(solve(&inst).is_none());
    }

    #[test]
    fn star_independent_class_needs_full_inflow() {
        let inst = build_cbv_instance(
            &Graph::path(2),
            &[ClassKind::Clique, ClassKind::Independent],
            &[1, 3],
            &[0],
            0,
        )
        .unwrap();
        assert_eq!(inst.lower(1), 3);
        let la = solve(&inst).unwrap();
        assert_eq!(inst.inflow(&la.x, 1), 3);
        assert_eq!(inst.check(&la), Ok(()));
    }

    #[test]
    fn single_clique_class() {
        let inst =
            build_cbv_instance(&Graph::empty(1), &[ClassKind::Clique], &[4], &[], 0).unwrap();
        assert_eq!(inst.digraph().arcs().len(), 1);
        let la = solve(&inst).unwrap();
        assert_eq!(la.x, vec![1]);
        assert_eq!(la.y, vec![1]);
    }

    #[test]
    fn c4_classes_load_both_directions() {
        let kinds = [ClassKind::Independent, ClassKind::Independent];
        let inst = build_cbv_instance(&Graph::path(2), &kinds, &[2, 2], &[], 0).unwrap();
        let la = solve(&inst).unwrap();
        let a01 = inst.digraph().arc_index(0, 1).unwrap();
        let a10 = inst.digraph().arc_index(1, 0).unwrap();
        assert_eq!((la.x[a01], la.x[a10]), (2, 1));
        assert_eq!(inst.check(&la), Ok(()));
    }

    #[test]
    fn flow_from_subtree_sizes() {
        // star quotient, center 0
        let star = Graph::star(3);
        let inst = build_mbv_instance(&star, &[0], 0, &[1; 4], &[1; 4], &[1; 4]).unwrap();
        let mut x = vec![0; inst.digraph().arcs().len()];
        x[0] = 1;
        for leaf in 1..4 {
            x[inst.digraph().arc_index(0, leaf).unwrap()] = 1;
        }
        let y = extract_flow(&x, &inst).unwrap();
        assert_eq!(y[0], 4);
        for leaf in 1..4 {
            assert_eq!(y[inst.digraph().arc_index(0, leaf).unwrap()], 1);
        }

        let chain = build_mbv_instance(&Graph::path(3), &[], 0, &[1; 3], &[1; 3], &[1; 3]).unwrap();
        let mut x = vec![0; chain.digraph().arcs().len()];
        x[0] = 1;
        x[chain.digraph().arc_index(0, 1).unwrap()] = 1;
        x[chain.digraph().arc_index(1, 2).unwrap()] = 1;
        let y = extract_flow(&x, &chain).unwrap();
        assert_eq!(y[chain.digraph().arc_index(0, 1).unwrap()], 2);
        assert_eq!(y[chain.digraph().arc_index(1, 2).unwrap()], 1);

        x[chain.digraph().arc_index(1, 2).unwrap()] = 0;
        assert_eq!(extract_flow(&x, &chain), Err(Error::Unreachable(2)));
    }

    #[test]
    fn budget_exhaustion_is_loud() {
        let inst =
            build_mbv_instance(&Graph::path(3), &[], 1, &[1, 1, 1], &[1; 3], &[1; 3]).unwrap();
        assert_eq!(
            solve_feasibility(&inst, SearchBudget(0)),
            Err(Error::SearchBudgetExceeded(0))
        );
    }

    #[test]
    fn disconnected_quotient_is_infeasible() {
        let inst =
            build_mbv_instance(&Graph::empty(2), &[0], 0, &[2, 2], &[1, 1], &[1, 1]).unwrap();
        assert!(solve(&inst).is_none());
    }
}
