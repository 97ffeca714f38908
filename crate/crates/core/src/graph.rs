//! Undirected simple graphs over dense vertex ids `0..n`.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type VertexId = usize;

/// An undirected simple graph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    edge_count: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edge_list(n, pairs).expect("complete graph edges are valid")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edge_list(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        let mut pairs: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            pairs.push((n - 1, 0));
        }
        Graph::from_edge_list(n, pairs).expect("cycle edges are valid")
    }

    /// The star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edge_list(leaves + 1, (1..=leaves).map(|v| (0, v)))
            .expect("star edges are valid")
    }

    /// Builds a graph from unordered pairs. Repeated pairs are merged.
    pub fn from_edge_list<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut twice = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Ok(Graph {
            adj,
            edge_count: twice / 2,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// True iff one traversal from vertex 0 reaches every vertex. The empty
    /// graph and the single vertex are connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        n <= 1 || self.components().len() == 1
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let pairs = (0..n).flat_map(|u| {
            (u + 1..n)
                .filter(move |&v| !self.has_edge(u, v))
                .map(move |v| (u, v))
        });
        Graph::from_edge_list(n, pairs).expect("complement edges are valid")
    }

    /// Adds `extra` pairwise non-adjacent vertices, each joined to every
    /// original vertex. New ids are `n..n + extra`, returned in order.
    pub fn augment_join(&self, extra: usize) -> (Graph, Vec<VertexId>) {
        let n = self.vertex_count();
        let added: Vec<VertexId> = (n..n + extra).collect();
        if extra == 0 {
            return (self.clone(), added);
        }
        let pairs = self
            .edges()
            .chain(added.iter().flat_map(|&a| (0..n).map(move |v| (v, a))));
        let g = Graph::from_edge_list(n + extra, pairs).expect("join edges are valid");
        (g, added)
    }

    /// Subgraph induced by `vs`, relabeled `0..vs.len()` in the given order.
    /// The returned vector maps new ids back to the original ones.
    pub fn induced_subgraph(&self, vs: &[VertexId]) -> Result<(Graph, Vec<VertexId>)> {
        let n = self.vertex_count();
        let mut local = vec![usize::MAX; n];
        for (i, &v) in vs.iter().enumerate() {
            if v >= n {
                return Err(Error::OutOfRange { vertex: v, n });
            }
            if local[v] != usize::MAX {
                return Err(Error::DuplicateVertex(v));
            }
            local[v] = i;
        }
        let pairs = vs.iter().enumerate().flat_map(|(i, &v)| {
            let local = &local;
            self.adj[v].iter().filter_map(move |&w| {
                (local[w] != usize::MAX && local[w] > i).then_some((i, local[w]))
            })
        });
        let g = Graph::from_edge_list(vs.len(), pairs.collect::<Vec<_>>())?;
        Ok((g, vs.to_vec()))
    }
}

/// A graph with a positive integer cost on every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    cost: Vec<u64>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, cost: Vec<u64>) -> Result<Self> {
        let n = graph.vertex_count();
        if cost.len() != n {
            return Err(Error::OutOfRange {
                vertex: cost.len().max(n),
                n,
            });
        }
        if let Some((vertex, &cost)) = cost.iter().enumerate().find(|(_, &c)| c == 0) {
            return Err(Error::InvalidCost { vertex, cost });
        }
        Ok(WeightedGraph { graph, cost })
    }

    /// Every vertex costs 1.
    pub fn uniform(graph: Graph) -> Self {
        let cost = vec![1; graph.vertex_count()];
        WeightedGraph { graph, cost }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cost(&self, v: VertexId) -> u64 {
        self.cost[v]
    }

    pub fn costs(&self) -> &[u64] {
        &self.cost
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_and_dedups() {
        let g = Graph::from_edge_list(2, [(0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        let g = Graph::from_edge_list(3, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        let p4 = Graph::from_edge_list(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4, Graph::path(4));
        assert_eq!(p4.neighbors(1), &[0, 2]);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert_eq!(
            Graph::from_edge_list(2, [(0, 2)]),
            Err(Error::OutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(Graph::from_edge_list(2, [(1, 1)]), Err(Error::SelfLoop(1)));
    }

    #[test]
    fn connectivity() {
        assert!(Graph::path(4).is_connected());
        assert!(!Graph::from_edge_list(4, [(0, 1), (2, 3)])
            .unwrap()
            .is_connected());
        assert!(Graph::empty(1).is_connected());
        assert!(Graph::empty(0).is_connected());
    }

    #[test]
    fn join_gadget() {
        let (k3, added) = Graph::path(2).augment_join(1);
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(added, vec![2]);

        let (p3, _) = Graph::empty(2).augment_join(1);
        assert_eq!(p3.neighbors(2), &[0, 1]);
        assert_eq!(p3.edge_count(), 2);

        let (g, added) = Graph::path(4).augment_join(2);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edge_count(), 11);
        assert!(!g.has_edge(added[0], added[1]));

        let (same, none) = Graph::path(4).augment_join(0);
        assert_eq!(same, Graph::path(4));
        assert!(none.is_empty());
    }

    #[test]
    fn induced() {
        let (g, map) = Graph::path(4).induced_subgraph(&[1, 2]).unwrap();
        assert_eq!(g, Graph::path(2));
        assert_eq!(map, vec![1, 2]);
        let (k3, _) = Graph::complete(4).induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        let c5 = Graph::cycle(5);
        let all: Vec<_> = (0..5).collect();
        assert_eq!(c5.induced_subgraph(&all).unwrap().0, c5);
        assert!(matches!(
            c5.induced_subgraph(&[0, 9]),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn weights_must_be_positive() {
        assert!(WeightedGraph::new(Graph::path(2), vec![1, 0]).is_err());
        let wg = WeightedGraph::new(Graph::path(2), vec![3, 4]).unwrap();
        assert_eq!(wg.cost(1), 4);
    }
}
