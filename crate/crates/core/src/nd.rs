//! Neighborhood-diversity type partition.
//!
//! Two vertices have the same type when `N(u) \ {v} = N(v) \ {u}`. The
//! relation is an equivalence; its classes are cliques (true twins) or
//! independent sets (false twins), and any two classes are either completely
//! joined or completely non-adjacent.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, WeightedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Clique,
    Independent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypePartition {
    /// Sorted classes, ordered by smallest member.
    pub classes: Vec<Vec<VertexId>>,
    /// Singletons are tagged `Clique`.
    pub kinds: Vec<ClassKind>,
    /// Graph on class indices; an edge means the two classes are fully joined.
    pub type_graph: Graph,
    /// Smallest member of each class.
    pub representatives: Vec<VertexId>,
}

impl TypePartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class containing each vertex.
    pub fn class_of(&self) -> Vec<usize> {
        let n = self.classes.iter().map(Vec::len).sum();
        let mut out = vec![0; n];
        for (i, class) in self.classes.iter().enumerate() {
            for &v in class {
                out[v] = i;
            }
        }
        out
    }
}

/// Coarsest same-type partition of `g`.
pub fn type_partition(g: &Graph) -> Result<TypePartition> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    // false twins share the open neighborhood, true twins the closed one;
    // no vertex can have both kinds of twin
    let mut open: HashMap<&[VertexId], usize> = HashMap::new();
    let mut closed: HashMap<Vec<VertexId>, usize> = HashMap::new();
    let mut classes: Vec<Vec<VertexId>> = Vec::new();
    for v in 0..n {
        let open_key = g.neighbors(v);
        let mut closed_key = open_key.to_vec();
        let at = closed_key.partition_point(|&w| w < v);
        closed_key.insert(at, v);
        let class = match (open.get(open_key), closed.get(&closed_key)) {
            (Some(&c), _) | (None, Some(&c)) => c,
            (None, None) => {
                classes.push(Vec::new());
                classes.len() - 1
            }
        };
        classes[class].push(v);
        open.entry(open_key).or_insert(class);
        closed.entry(closed_key).or_insert(class);
    }
    // vertices are visited in increasing order, so classes are already sorted
    // and ordered by their first member
    let kinds: Vec<ClassKind> = classes
        .iter()
        .map(|c| {
            if c.len() == 1 || g.has_edge(c[0], c[1]) {
                ClassKind::Clique
            } else {
                ClassKind::Independent
            }
        })
        .collect();
    let representatives: Vec<VertexId> = classes.iter().map(|c| c[0]).collect();
    let type_graph = g.induced_subgraph(&representatives)?.0;
    let tp = TypePartition {
        classes,
        kinds,
        type_graph,
        representatives,
    };
    debug_assert!(same_type_holds(g, &tp));
    Ok(tp)
}

fn same_type_holds(g: &Graph, tp: &TypePartition) -> bool {
    tp.classes.iter().all(|c| {
        c.iter()
            .all(|&u| c.iter().all(|&v| u == v || same_type(g, u, v)))
    })
}

/// `N(u) \ {v} = N(v) \ {u}`.
pub fn same_type(g: &Graph, u: VertexId, v: VertexId) -> bool {
    let a = g.neighbors(u).iter().filter(|&&w| w != v);
    let b = g.neighbors(v).iter().filter(|&&w| w != u);
    a.eq(b)
}

/// Cheapest vertex of each class, ties broken by smallest id.
pub fn min_cost_representatives(tp: &TypePartition, wg: &WeightedGraph) -> Vec<VertexId> {
    tp.classes
        .iter()
        .map(|class| {
            *class
                .iter()
                .min_by_key(|&&v| (wg.cost(v), v))
                .expect("classes are non-empty")
        })
        .collect()
}
