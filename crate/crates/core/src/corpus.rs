//! Test corpora: exhaustive small graphs and seeded random families.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexId, WeightedGraph};

/// Deterministic generator for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every connected labelled graph on `n` vertices, by filtering all edge
/// subsets in increasing bitmask order.
pub fn all_connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(VertexId, VertexId)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 32, "too many vertices to enumerate");
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            Graph::from_edge_list(n, edges).expect("pairs are valid")
        })
        .filter(Graph::is_connected)
        .collect()
}

/// Every connected labelled graph with 1 to `max_n` vertices.
pub fn exhaustive_corpus(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(all_connected_graphs).collect()
}

/// Each pair becomes an edge with probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.random_bool(p))
        .collect();
    Graph::from_edge_list(n, edges).expect("pairs are valid")
}

/// A random spanning tree (each vertex joins a random earlier one, under a
/// random relabelling) plus every other pair with probability `p`.
pub fn random_connected(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut label: Vec<VertexId> = (0..n).collect();
    label.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.random_range(0..i);
        edges.push((label[i], label[j]));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, edges).expect("pairs are valid")
}

/// A random cograph: recursively split the vertex set and take the disjoint
/// union or the join of the parts.
pub fn random_cograph(n: usize, rng: &mut impl Rng) -> Graph {
    let mut vs: Vec<VertexId> = (0..n).collect();
    vs.shuffle(rng);
    let mut edges = Vec::new();
    build_cograph(&vs, rng, &mut edges);
    Graph::from_edge_list(n, edges).expect("pairs are valid")
}

fn build_cograph(vs: &[VertexId], rng: &mut impl Rng, edges: &mut Vec<(VertexId, VertexId)>) {
    if vs.len() < 2 {
        return;
    }
    let cut = rng.random_range(1..vs.len());
    let (a, b) = vs.split_at(cut);
    build_cograph(a, rng, edges);
    build_cograph(b, rng, edges);
    if rng.random_bool(0.5) {
        for &u in a {
            for &v in b {
                edges.push((u, v));
            }
        }
    }
}

/// Independent costs drawn uniformly from `lo..=hi`.
pub fn random_weights(g: Graph, lo: u64, hi: u64, rng: &mut impl Rng) -> WeightedGraph {
    let cost = (0..g.vertex_count())
        .map(|_| rng.random_range(lo..=hi))
        .collect();
    WeightedGraph::new(g, cost).expect("costs are positive when lo >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        // OEIS A001187
        let counts: Vec<usize> = (1..=5).map(|n| all_connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn generators_are_seeded() {
        let a = random_connected(9, 0.3, &mut rng(7));
        let b = random_connected(9, 0.3, &mut rng(7));
        assert_eq!(a, b);
        assert!(a.is_connected());
        let c = random_cograph(10, &mut rng(3));
        assert_eq!(c, random_cograph(10, &mut rng(3)));
    }
}
