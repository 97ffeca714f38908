//! Brute-force oracles and certificate checkers.
//!
//! Nothing here shares code with the solvers beyond the graph type. The
//! oracles enumerate spanning trees, vertex subsets, or load vectors directly
//! and are meant to be slow and obviously right.

use std::collections::{HashMap, HashSet};

use log::warn;
use serde::Serialize;
use thiserror::Error as ThisError;

use crate::cover::PathPiece;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, WeightedGraph};
use crate::ilp::{IlpInstance, IlpMode, LoadAssignment, QuotientDigraph};
use crate::nd::ClassKind;
use crate::tree::{branch_vertices, SpanningTreeResult};

/// Default largest input the oracles accept.
pub const DEFAULT_ORACLE_CAP: usize = 9;

/// Exact optima for one instance; absent fields were not asked for.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub b: Option<usize>,
    pub w: Option<u64>,
    pub ham: Option<u32>,
    pub spi: Option<u32>,
    /// Edges of an optimal spanning tree, as `(child, parent)`.
    pub witness: Option<Vec<(VertexId, VertexId)>>,
}

/// Oracle entry points with a size cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            cap: DEFAULT_ORACLE_CAP,
        }
    }
}

impl Oracle {
    /// Raising the cap above the default is allowed but can take very long.
    pub fn with_cap(cap: usize) -> Self {
        if cap > DEFAULT_ORACLE_CAP {
            warn!("oracle cap raised to {cap}; exhaustive search may be slow");
        }
        Oracle { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn admit(&self, g: &Graph) -> Result<()> {
        let n = g.vertex_count();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > self.cap {
            return Err(Error::TooLarge { n, cap: self.cap });
        }
        Ok(())
    }

    /// Fewest branch vertices over all spanning trees, with a witness.
    pub fn b(&self, g: &Graph) -> Result<(usize, SpanningTreeResult)> {
        let (cost, tree) = self.min_tree(g, &vec![1; g.vertex_count()])?;
        Ok((cost as usize, tree))
    }

    /// Least total branch cost over all spanning trees, with a witness.
    pub fn w(&self, wg: &WeightedGraph) -> Result<(u64, SpanningTreeResult)> {
        let (cost, mut tree) = self.min_tree(wg.graph(), wg.costs())?;
        tree.cost = Some(cost);
        Ok((cost, tree))
    }

    fn min_tree(&self, g: &Graph, cost: &[u64]) -> Result<(u64, SpanningTreeResult)> {
        self.admit(g)?;
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut search = TreeSearch::new(g, cost, u64::MAX);
        let mut best = None;
        search.run(0, &mut |edges, c| {
            best = Some((c, edges.to_vec()));
            TreeVisit::Tighten
        });
        let (c, edges) = best.expect("connected graphs have spanning trees");
        Ok((c, tree_from_edges(g.vertex_count(), &edges)?))
    }

    /// Some spanning tree with at most `limit` branch vertices that satisfies
    /// `accept`, if one exists.
    pub fn tree_where(
        &self,
        g: &Graph,
        limit: usize,
        mut accept: impl FnMut(&SpanningTreeResult) -> bool,
    ) -> Result<Option<SpanningTreeResult>> {
        self.admit(g)?;
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let n = g.vertex_count();
        let unit = vec![1; n];
        let mut search = TreeSearch::new(g, &unit, limit as u64);
        let mut found = None;
        let mut failure = None;
        search.run(0, &mut |edges, _| match tree_from_edges(n, edges) {
            Ok(t) if accept(&t) => {
                found = Some(t);
                TreeVisit::Stop
            }
            Ok(_) => TreeVisit::Continue,
            Err(e) => {
                failure = Some(e);
                TreeVisit::Stop
            }
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(found),
        }
    }

    /// Fewest vertex-disjoint paths covering `g`.
    pub fn ham(&self, g: &Graph) -> Result<u32> {
        self.admit(g)?;
        let t = SubsetTables::new(g);
        Ok(t.partition[t.full])
    }

    /// Fewest pieces in a cover by one spider and paths.
    pub fn spi(&self, g: &Graph) -> Result<u32> {
        self.admit(g)?;
        let t = SubsetTables::new(g);
        let spiders = t.spider_sets(g);
        let best = (1..=t.full)
            .filter(|&s| spiders[s])
            .map(|s| 1 + t.partition[t.full & !s])
            .min()
            .expect("a single vertex is a spider");
        Ok(best)
    }

    /// Every quantity that applies to an unweighted graph.
    pub fn report(&self, g: &Graph) -> Result<OracleReport> {
        let mut r = OracleReport {
            ham: Some(self.ham(g)?),
            spi: Some(self.spi(g)?),
            ..OracleReport::default()
        };
        if g.is_connected() {
            let (b, tree) = self.b(g)?;
            r.b = Some(b);
            r.witness = Some(tree.edges().collect());
        }
        Ok(r)
    }

    pub fn report_weighted(&self, wg: &WeightedGraph) -> Result<OracleReport> {
        let mut r = self.report(wg.graph())?;
        if wg.graph().is_connected() {
            let (w, tree) = self.w(wg)?;
            r.w = Some(w);
            r.witness = Some(tree.edges().collect());
        }
        Ok(r)
    }
}

pub fn oracle_b(g: &Graph) -> Result<(usize, SpanningTreeResult)> {
    Oracle::default().b(g)
}

pub fn oracle_w(wg: &WeightedGraph) -> Result<(u64, SpanningTreeResult)> {
    Oracle::default().w(wg)
}

pub fn oracle_ham(g: &Graph) -> Result<u32> {
    Oracle::default().ham(g)
}

pub fn oracle_spi(g: &Graph) -> Result<u32> {
    Oracle::default().spi(g)
}

fn tree_from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<SpanningTreeResult> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                stack.push(v);
            }
        }
    }
    SpanningTreeResult::from_parents(parent)
}

enum TreeVisit {
    Continue,
    /// Only look for strictly cheaper trees from now on.
    Tighten,
    Stop,
}

/// Called with the edges of each complete tree and its branch cost.
type TreeVisitor<'a> = dyn FnMut(&[(VertexId, VertexId)], u64) -> TreeVisit + 'a;

/// Include/exclude enumeration of spanning trees, pruned by cost: a vertex
/// costs `cost[v]` once its chosen degree reaches three.
struct TreeSearch<'a> {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    cost: &'a [u64],
    limit: u64,
    chosen: Vec<(VertexId, VertexId)>,
    excluded: Vec<bool>,
    degree: Vec<usize>,
    partial: u64,
    uf: RollbackUnionFind,
    stopped: bool,
}

impl<'a> TreeSearch<'a> {
    fn new(g: &Graph, cost: &'a [u64], limit: u64) -> Self {
        let edges: Vec<_> = g.edges().collect();
        TreeSearch {
            n: g.vertex_count(),
            excluded: vec![false; edges.len()],
            edges,
            cost,
            limit,
            chosen: Vec::new(),
            degree: vec![0; g.vertex_count()],
            partial: 0,
            uf: RollbackUnionFind::new(g.vertex_count()),
            stopped: false,
        }
    }

    fn run(&mut self, k: usize, visit: &mut TreeVisitor) {
        if self.stopped || self.partial > self.limit {
            return;
        }
        if self.chosen.len() + 1 == self.n {
            match visit(&self.chosen, self.partial) {
                TreeVisit::Continue => {}
                TreeVisit::Tighten => {
                    if self.partial == 0 {
                        self.stopped = true;
                    } else {
                        self.limit = self.partial - 1;
                    }
                }
                TreeVisit::Stop => self.stopped = true,
            }
            return;
        }
        if k == self.edges.len() {
            return;
        }
        let (u, v) = self.edges[k];
        if self.uf.union(u, v) {
            self.chosen.push((u, v));
            let before = self.partial;
            for w in [u, v] {
                self.degree[w] += 1;
                if self.degree[w] == 3 {
                    self.partial += self.cost[w];
                }
            }
            self.run(k + 1, visit);
            for w in [u, v] {
                self.degree[w] -= 1;
            }
            self.partial = before;
            self.chosen.pop();
            self.uf.rollback();
        }
        self.excluded[k] = true;
        if self.still_connected(k) {
            self.run(k + 1, visit);
        }
        self.excluded[k] = false;
    }

    /// Chosen plus undecided edges still span a connected graph.
    fn still_connected(&self, decided: usize) -> bool {
        let mut uf = RollbackUnionFind::new(self.n);
        let mut parts = self.n;
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            if (k > decided || !self.excluded[k]) && uf.union(u, v) {
                parts -= 1;
            }
        }
        parts == 1
    }
}

/// Union-find with undo, by size and without path compression.
struct RollbackUnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<usize>>,
}

impl RollbackUnionFind {
    fn new(n: usize) -> Self {
        RollbackUnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// Joins the two sets; false (and nothing recorded) when already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.history.push(Some(b));
        true
    }

    fn rollback(&mut self) {
        if let Some(Some(b)) = self.history.pop() {
            let a = self.parent[b];
            self.size[a] -= self.size[b];
            self.parent[b] = b;
        }
    }
}

/// Subset dynamic programs over vertex bitmasks.
struct SubsetTables {
    n: usize,
    full: usize,
    /// `ends[mask]`: bitmask of vertices that end some path covering exactly `mask`.
    ends: Vec<u32>,
    /// Fewest paths partitioning each mask.
    partition: Vec<u32>,
}

impl SubsetTables {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let full = (1usize << n) - 1;
        let mut ends = vec![0u32; full + 1];
        for v in 0..n {
            ends[1 << v] = 1 << v;
        }
        for mask in 1..=full {
            let e = ends[mask];
            if e == 0 {
                continue;
            }
            for v in 0..n {
                if e >> v & 1 == 0 {
                    continue;
                }
                for &w in g.neighbors(v) {
                    if mask >> w & 1 == 0 {
                        ends[mask | 1 << w] |= 1 << w;
                    }
                }
            }
        }
        let mut partition = vec![u32::MAX; full + 1];
        partition[0] = 0;
        for mask in 1..=full {
            let low = mask & mask.wrapping_neg();
            let rest = mask ^ low;
            // submasks of `rest`, each joined with the lowest vertex
            let mut sub = rest;
            loop {
                let piece = sub | low;
                if ends[piece] != 0 && partition[mask ^ piece] != u32::MAX {
                    partition[mask] = partition[mask].min(1 + partition[mask ^ piece]);
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        SubsetTables {
            n,
            full,
            ends,
            partition,
        }
    }

    /// `spider[mask]`: some spider covers exactly `mask`. A spider is a
    /// center plus disjoint paths, each starting at a neighbor of the center.
    fn spider_sets(&self, g: &Graph) -> Vec<bool> {
        let mut spider = vec![false; self.full + 1];
        for c in 0..self.n {
            let near: u32 = g.neighbors(c).iter().map(|&w| 1u32 << w).sum();
            let others = self.full & !(1 << c);
            // legs[mask]: mask splits into paths that each end next to c
            let mut legs = vec![false; self.full + 1];
            legs[0] = true;
            let mut sub = others;
            let mut masks = Vec::new();
            loop {
                masks.push(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & others;
            }
            masks.reverse();
            for &mask in &masks[1..] {
                let low = mask & mask.wrapping_neg();
                let rest = mask ^ low;
                let mut s = rest;
                loop {
                    let piece = s | low;
                    if self.ends[piece] & near != 0 && legs[mask ^ piece] {
                        legs[mask] = true;
                        break;
                    }
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & rest;
                }
            }
            for mask in masks {
                if legs[mask] {
                    spider[mask | 1 << c] = true;
                }
            }
        }
        spider
    }
}

/// First problem found in a claimed spanning tree.
#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum TreeDefect {
    #[error("parent map has {found} entries for {expected} vertices")]
    VertexCount { expected: usize, found: usize },
    #[error("{0} roots instead of one")]
    RootCount(usize),
    #[error("root recorded as {claimed} but vertex {actual} has no parent")]
    RootMismatch { claimed: VertexId, actual: VertexId },
    #[error("parent of {vertex} is out of range")]
    ParentOutOfRange { vertex: VertexId },
    #[error("edge {child}-{parent} is not in the graph")]
    EdgeNotInGraph { child: VertexId, parent: VertexId },
    #[error("vertex {vertex} lies on a cycle or below one")]
    Cycle { vertex: VertexId },
    #[error("branch set {claimed:?} differs from recomputed {actual:?}")]
    BranchMismatch {
        claimed: Vec<VertexId>,
        actual: Vec<VertexId>,
    },
    #[error("cost {claimed:?} differs from recomputed {actual}")]
    CostMismatch { claimed: Option<u64>, actual: u64 },
}

/// Checks parent edges, the single root, acyclicity and spanning, and that
/// the branch set matches the tree.
pub fn verify_spanning_tree(
    g: &Graph,
    t: &SpanningTreeResult,
) -> std::result::Result<(), TreeDefect> {
    let n = g.vertex_count();
    if t.parent.len() != n {
        return Err(TreeDefect::VertexCount {
            expected: n,
            found: t.parent.len(),
        });
    }
    let roots: Vec<VertexId> = (0..n).filter(|&v| t.parent[v].is_none()).collect();
    if roots.len() != 1 {
        return Err(TreeDefect::RootCount(roots.len()));
    }
    if roots[0] != t.root {
        return Err(TreeDefect::RootMismatch {
            claimed: t.root,
            actual: roots[0],
        });
    }
    for (v, p) in t.parent.iter().enumerate() {
        if let Some(p) = *p {
            if p >= n {
                return Err(TreeDefect::ParentOutOfRange { vertex: v });
            }
            if !g.has_edge(v, p) {
                return Err(TreeDefect::EdgeNotInGraph {
                    child: v,
                    parent: p,
                });
            }
        }
    }
    // with one root, reaching it from every vertex means acyclic and spanning
    for v in 0..n {
        let mut cur = v;
        let mut steps = 0;
        while let Some(p) = t.parent[cur] {
            cur = p;
            steps += 1;
            if steps > n {
                return Err(TreeDefect::Cycle { vertex: v });
            }
        }
    }
    let actual = branch_vertices(&t.parent);
    if actual != t.branch {
        return Err(TreeDefect::BranchMismatch {
            claimed: t.branch.clone(),
            actual,
        });
    }
    Ok(())
}

/// [`verify_spanning_tree`] plus the recorded branch cost.
pub fn verify_weighted_tree(
    wg: &WeightedGraph,
    t: &SpanningTreeResult,
) -> std::result::Result<(), TreeDefect> {
    verify_spanning_tree(wg.graph(), t)?;
    let actual = t.branch.iter().map(|&v| wg.cost(v)).sum();
    if t.cost != Some(actual) {
        return Err(TreeDefect::CostMismatch {
            claimed: t.cost,
            actual,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoverKind {
    /// Exactly one spider, the rest paths.
    PathSpider,
    /// Paths only.
    Paths,
}

/// First problem found in a claimed cover.
#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum CoverDefect {
    #[error("piece {piece} is empty")]
    EmptyPiece { piece: usize },
    #[error("vertex {vertex} is out of range")]
    OutOfRange { vertex: VertexId },
    #[error("vertex {vertex} appears twice")]
    Overlap { vertex: VertexId },
    #[error("vertex {vertex} is not covered")]
    Missing { vertex: VertexId },
    #[error("consecutive vertices {u} and {v} are not adjacent")]
    NotAdjacent { u: VertexId, v: VertexId },
    #[error("{found} spiders where {expected} expected")]
    SpiderCount { found: usize, expected: usize },
}

/// Checks disjointness, coverage, adjacency along every piece and the
/// number of spiders.
pub fn verify_cover(
    g: &Graph,
    cover: &[PathPiece],
    kind: CoverKind,
) -> std::result::Result<(), CoverDefect> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    for (i, piece) in cover.iter().enumerate() {
        if let PathPiece::Path(vs) = piece {
            if vs.is_empty() {
                return Err(CoverDefect::EmptyPiece { piece: i });
            }
        }
        for v in piece.vertices() {
            if v >= n {
                return Err(CoverDefect::OutOfRange { vertex: v });
            }
            if seen[v] {
                return Err(CoverDefect::Overlap { vertex: v });
            }
            seen[v] = true;
        }
        for (u, v) in piece.edges() {
            if !g.has_edge(u, v) {
                return Err(CoverDefect::NotAdjacent { u, v });
            }
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(CoverDefect::Missing { vertex: v });
    }
    let found = cover.iter().filter(|p| p.is_spider()).count();
    let expected = match kind {
        CoverKind::PathSpider => 1,
        CoverKind::Paths => 0,
    };
    if found != expected {
        return Err(CoverDefect::SpiderCount { found, expected });
    }
    Ok(())
}

/// Literal `(x, y)` enumeration for one quotient digraph.
///
/// Every `x` with inflow at most `max_capacity` into every module is listed,
/// and for each support a flow `y` is searched exhaustively with values in
/// `[0, n]`. (Any feasible `y` minus its circulations is still feasible and
/// carries at most `n` per arc, so the range loses nothing.) Feasibility of a
/// concrete instance then reduces to matching one of the recorded outcomes.
pub struct ExhaustiveIlp {
    digraph: QuotientDigraph,
    /// Inflow vector -> (set of modules sending more than they receive,
    /// witness) for every `x` whose support admits a flow.
    outcomes: HashMap<Vec<u32>, Vec<(u64, LoadAssignment)>>,
}

impl ExhaustiveIlp {
    pub fn new(digraph: &QuotientDigraph, max_capacity: u32) -> Self {
        let arcs = digraph.arcs();
        let k = digraph.module_count();
        let mut outcomes: HashMap<Vec<u32>, Vec<(u64, LoadAssignment)>> = HashMap::new();
        let mut seen_outcome: HashSet<(Vec<u32>, u64)> = HashSet::new();
        let mut flows: HashMap<u64, Option<Vec<u32>>> = HashMap::new();
        let mut x = vec![0u32; arcs.len()];
        x[0] = 1;
        let mut inflow = vec![0u32; k];
        inflow[digraph.root()] = 1;
        if inflow[digraph.root()] > max_capacity {
            return ExhaustiveIlp {
                digraph: digraph.clone(),
                outcomes,
            };
        }
        let mut visit = |x: &[u32], inflow: &[u32]| {
            let support: u64 = x
                .iter()
                .enumerate()
                .filter(|(_, &v)| v > 0)
                .map(|(a, _)| 1u64 << a)
                .sum();
            let y = flows
                .entry(support)
                .or_insert_with(|| find_flow(digraph, support))
                .clone();
            let Some(y) = y else {
                return;
            };
            let mut excess = 0u64;
            for i in 0..k {
                let out: u32 = arcs
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| a.tail == Some(i))
                    .map(|(_, &v)| v)
                    .sum();
                if out > inflow[i] {
                    excess |= 1 << i;
                }
            }
            if seen_outcome.insert((inflow.to_vec(), excess)) {
                outcomes
                    .entry(inflow.to_vec())
                    .or_default()
                    .push((excess, LoadAssignment { x: x.to_vec(), y }));
            }
        };
        enumerate_loads(arcs, 1, max_capacity, &mut x, &mut inflow, &mut visit);
        ExhaustiveIlp {
            digraph: digraph.clone(),
            outcomes,
        }
    }

    /// Feasibility of `inst`, which must live on this digraph, with a
    /// witness when feasible.
    pub fn solve(&self, inst: &IlpInstance) -> Option<LoadAssignment> {
        debug_assert_eq!(inst.digraph(), &self.digraph);
        let k = inst.module_count();
        let branch: u64 = (0..k).filter(|&i| inst.is_branch(i)).map(|i| 1 << i).sum();
        for (inflow, list) in &self.outcomes {
            let fits = (0..k).all(|i| {
                let cap = inst.capacity(i);
                match (inst.mode(), inst.class_kinds().map(|c| c[i])) {
                    (IlpMode::Cbv, Some(ClassKind::Independent)) => inflow[i] == cap,
                    (IlpMode::Cbv, _) => inflow[i] <= cap,
                    (IlpMode::Mbv, _) => inst.lower(i) <= inflow[i] && inflow[i] <= cap,
                }
            });
            if !fits {
                continue;
            }
            if let Some((_, la)) = list.iter().find(|(excess, _)| excess & !branch == 0) {
                return Some(la.clone());
            }
        }
        None
    }
}

fn enumerate_loads(
    arcs: &[crate::ilp::Arc],
    k: usize,
    max_capacity: u32,
    x: &mut Vec<u32>,
    inflow: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32], &[u32]),
) {
    if k == arcs.len() {
        visit(x, inflow);
        return;
    }
    let head = arcs[k].head;
    let room = max_capacity - inflow[head];
    for v in 0..=room {
        x[k] = v;
        inflow[head] += v;
        enumerate_loads(arcs, k + 1, max_capacity, x, inflow, visit);
        inflow[head] -= v;
    }
    x[k] = 0;
}

/// A flow `y` on the arcs in `support`: `n` units leave the source, every
/// module keeps one, values in `[0, n]`. Exhaustive search with interval
/// pruning on each module's balance.
fn find_flow(digraph: &QuotientDigraph, support: u64) -> Option<Vec<u32>> {
    let arcs = digraph.arcs();
    let k = digraph.module_count();
    let n = k as i64;
    let usable: Vec<usize> = (1..arcs.len()).filter(|&a| support >> a & 1 == 1).collect();
    let mut y = vec![0u32; arcs.len()];
    if support & 1 == 0 {
        return None;
    }
    y[0] = n as u32;
    let mut search = FlowSearch {
        arcs,
        usable: &usable,
        n,
        y,
        balance: vec![0; k],
        open_in: vec![0; k],
        open_out: vec![0; k],
    };
    search.balance[digraph.root()] = n;
    for &a in &usable {
        search.open_in[arcs[a].head] += 1;
        search.open_out[arcs[a].tail.expect("module arc")] += 1;
    }
    search.go(0).then_some(search.y)
}

/// State of [`find_flow`]: `balance` is inflow minus outflow so far,
/// `open_in` and `open_out` count undecided arcs per module.
struct FlowSearch<'a> {
    arcs: &'a [crate::ilp::Arc],
    usable: &'a [usize],
    n: i64,
    y: Vec<u32>,
    balance: Vec<i64>,
    open_in: Vec<i64>,
    open_out: Vec<i64>,
}

impl FlowSearch<'_> {
    fn possible(&self, i: usize) -> bool {
        let lo = self.balance[i] - self.n * self.open_out[i];
        let hi = self.balance[i] + self.n * self.open_in[i];
        lo <= 1 && 1 <= hi
    }

    fn go(&mut self, idx: usize) -> bool {
        if idx == self.usable.len() {
            return self.balance.iter().all(|&b| b == 1);
        }
        let a = self.usable[idx];
        let (t, h) = (self.arcs[a].tail.expect("module arc"), self.arcs[a].head);
        self.open_in[h] -= 1;
        self.open_out[t] -= 1;
        for v in 0..=self.n {
            self.balance[h] += v;
            self.balance[t] -= v;
            if self.possible(h) && self.possible(t) {
                self.y[a] = v as u32;
                if self.go(idx + 1) {
                    return true;
                }
            }
            self.balance[h] -= v;
            self.balance[t] += v;
        }
        self.y[a] = 0;
        self.open_in[h] += 1;
        self.open_out[t] += 1;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ilp::build_mbv_instance;

    #[test]
    fn oracle_b_on_small_graphs() {
        assert_eq!(oracle_b(&Graph::cycle(6)).unwrap().0, 0);
        assert_eq!(oracle_b(&Graph::star(4)).unwrap().0, 1);
        let spider =
            Graph::from_edge_list(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        let (b, tree) = oracle_b(&spider).unwrap();
        assert_eq!(b, 1);
        assert_eq!(verify_spanning_tree(&spider, &tree), Ok(()));
        assert!(matches!(
            oracle_b(&Graph::empty(2)),
            Err(Error::Disconnected)
        ));
        assert!(matches!(
            oracle_b(&Graph::path(10)),
            Err(Error::TooLarge { n: 10, cap: 9 })
        ));
    }

    #[test]
    fn two_hubs_each_need_to_branch() {
        // two K_{1,3} joined hub to hub
        let g = Graph::from_edge_list(8, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (4, 6), (4, 7)])
            .unwrap();
        assert_eq!(oracle_b(&g).unwrap().0, 2);
        let mut cost = vec![1; 8];
        cost[0] = 2;
        cost[4] = 9;
        let (w, t) = oracle_w(&WeightedGraph::new(g.clone(), cost.clone()).unwrap()).unwrap();
        assert_eq!(w, 11);
        assert_eq!(
            verify_weighted_tree(&WeightedGraph::new(g, cost).unwrap(), &t),
            Ok(())
        );
    }

    #[test]
    fn oracle_w_basic() {
        let wg = WeightedGraph::new(Graph::star(3), vec![4, 1, 1, 1]).unwrap();
        assert_eq!(oracle_w(&wg).unwrap().0, 4);
        let wg = WeightedGraph::new(Graph::path(4), vec![9, 9, 9, 9]).unwrap();
        assert_eq!(oracle_w(&wg).unwrap().0, 0);
    }

    #[test]
    fn cover_oracles() {
        assert_eq!(oracle_ham(&Graph::complete(5)).unwrap(), 1);
        assert_eq!(oracle_spi(&Graph::complete(5)).unwrap(), 1);
        assert_eq!(oracle_ham(&Graph::empty(4)).unwrap(), 4);
        assert_eq!(oracle_spi(&Graph::empty(4)).unwrap(), 4);
        assert_eq!(oracle_ham(&Graph::star(5)).unwrap(), 4);
        assert_eq!(oracle_spi(&Graph::star(5)).unwrap(), 1);
        assert_eq!(oracle_ham(&Graph::star(3)).unwrap(), 2);
        let triangles =
            Graph::from_edge_list(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(oracle_ham(&triangles).unwrap(), 2);
        assert_eq!(oracle_spi(&triangles).unwrap(), 2);
    }

    #[test]
    fn tree_defects_are_named() {
        let p = Graph::path(4);
        let good = SpanningTreeResult::from_parents(vec![None, Some(0), Some(1), Some(2)]).unwrap();
        assert_eq!(verify_spanning_tree(&p, &good), Ok(()));
        let fake = SpanningTreeResult::from_parents(vec![None, Some(0), Some(0), Some(2)]).unwrap();
        assert_eq!(
            verify_spanning_tree(&p, &fake),
            Err(TreeDefect::EdgeNotInGraph {
                child: 2,
                parent: 0
            })
        );
        let s = Graph::star(3);
        let mut understated =
            SpanningTreeResult::from_parents(vec![None, Some(0), Some(0), Some(0)]).unwrap();
        understated.branch.clear();
        assert!(matches!(
            verify_spanning_tree(&s, &understated),
            Err(TreeDefect::BranchMismatch { .. })
        ));
        let cyclic = SpanningTreeResult {
            parent: vec![None, Some(2), Some(1), Some(2)],
            root: 0,
            branch: vec![],
            cost: None,
        };
        assert_eq!(
            verify_spanning_tree(&Graph::complete(4), &cyclic),
            Err(TreeDefect::Cycle { vertex: 1 })
        );
    }

    #[test]
    fn cover_defects_are_named() {
        let k4 = Graph::complete(4);
        let path = |v: &[usize]| PathPiece::Path(v.to_vec());
        assert_eq!(
            verify_cover(&k4, &[path(&[0, 1, 2, 3])], CoverKind::Paths),
            Ok(())
        );
        assert_eq!(
            verify_cover(&k4, &[path(&[0, 1]), path(&[1, 2, 3])], CoverKind::Paths),
            Err(CoverDefect::Overlap { vertex: 1 })
        );
        assert_eq!(
            verify_cover(
                &k4,
                &[
                    PathPiece::single_spider(0),
                    PathPiece::single_spider(1),
                    path(&[2, 3])
                ],
                CoverKind::PathSpider
            ),
            Err(CoverDefect::SpiderCount {
                found: 2,
                expected: 1
            })
        );
        assert_eq!(
            verify_cover(&Graph::path(3), &[path(&[0, 2, 1])], CoverKind::Paths),
            Err(CoverDefect::NotAdjacent { u: 0, v: 2 })
        );
        assert_eq!(
            verify_cover(&k4, &[path(&[0, 1, 2])], CoverKind::Paths),
            Err(CoverDefect::Missing { vertex: 3 })
        );
    }

    #[test]
    fn exhaustive_ilp_matches_hand_instances() {
        // K2 with both modules of size 1
        let k2 = Graph::path(2);
        let inst = build_mbv_instance(&k2, &[], 0, &[1, 1], &[1, 1], &[1, 1]).unwrap();
        let ex = ExhaustiveIlp::new(inst.digraph(), 3);
        let la = ex.solve(&inst).unwrap();
        assert_eq!(inst.check(&la), Ok(()));
        // P3 quotient where the middle module must feed both ends but has
        // one vertex and no branch permission
        let p3 = Graph::path(3);
        let inst = build_mbv_instance(&p3, &[], 0, &[1, 1, 1], &[1, 1, 1], &[1, 1, 1]).unwrap();
        assert!(ExhaustiveIlp::new(inst.digraph(), 3).solve(&inst).is_some());
        let inst = build_mbv_instance(&p3, &[], 1, &[1, 1, 1], &[1, 1, 1], &[1, 1, 1]).unwrap();
        assert!(ExhaustiveIlp::new(inst.digraph(), 3).solve(&inst).is_none());
    }
}
