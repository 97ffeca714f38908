//! Modular decomposition.
//!
//! A module is a vertex set `M` such that every vertex outside `M` is adjacent
//! to all of `M` or to none of it. The decomposition is computed recursively:
//! a disconnected graph splits into its components (edgeless quotient), a graph
//! with disconnected complement splits into its co-components (complete
//! quotient), and otherwise the maximal strong modules partition the vertex set
//! and the quotient over them is prime. This is a simple polynomial scheme, not
//! the linear-time algorithm.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Shape of the quotient graph stored at an internal node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuotientKind {
    /// Edgeless quotient: disjoint union of the children.
    Parallel,
    /// Complete quotient: join of the children.
    Series,
    /// Quotient with no non-trivial module.
    Prime,
}

impl QuotientKind {
    pub fn name(self) -> &'static str {
        match self {
            QuotientKind::Parallel => "parallel",
            QuotientKind::Series => "series",
            QuotientKind::Prime => "prime",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseNode {
    Leaf(VertexId),
    Internal {
        kind: QuotientKind,
        /// Vertex `i` of the quotient stands for `children[i]`.
        quotient: Graph,
        children: Vec<ParseNode>,
        /// Sorted original ids covered by this node.
        vertices: Vec<VertexId>,
    },
}

impl ParseNode {
    /// Sorted original vertex ids covered by this node.
    pub fn vertices(&self) -> &[VertexId] {
        match self {
            ParseNode::Leaf(v) => std::slice::from_ref(v),
            ParseNode::Internal { vertices, .. } => vertices,
        }
    }

    pub fn size(&self) -> usize {
        self.vertices().len()
    }

    pub fn children(&self) -> &[ParseNode] {
        match self {
            ParseNode::Leaf(_) => &[],
            ParseNode::Internal { children, .. } => children,
        }
    }

    pub fn kind(&self) -> Option<QuotientKind> {
        match self {
            ParseNode::Leaf(_) => None,
            ParseNode::Internal { kind, .. } => Some(*kind),
        }
    }

    pub fn quotient(&self) -> Option<&Graph> {
        match self {
            ParseNode::Leaf(_) => None,
            ParseNode::Internal { quotient, .. } => Some(quotient),
        }
    }

    /// Number of nodes in the tree, leaves included.
    pub fn node_count(&self) -> usize {
        1 + self
            .children()
            .iter()
            .map(ParseNode::node_count)
            .sum::<usize>()
    }

    /// Number of internal nodes with a prime quotient.
    pub fn prime_count(&self) -> usize {
        let own = usize::from(self.kind() == Some(QuotientKind::Prime));
        own + self
            .children()
            .iter()
            .map(ParseNode::prime_count)
            .sum::<usize>()
    }
}

/// Parse tree of `g`. Children are ordered by their smallest vertex id.
pub fn decompose(g: &Graph) -> Result<ParseNode> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let all: Vec<VertexId> = (0..g.vertex_count()).collect();
    Ok(decompose_set(g, all))
}

fn decompose_set(g: &Graph, vertices: Vec<VertexId>) -> ParseNode {
    if vertices.len() == 1 {
        return ParseNode::Leaf(vertices[0]);
    }
    let (kind, classes) = split(g, &vertices);
    let reps: Vec<VertexId> = classes.iter().map(|c| c[0]).collect();
    let quotient = match kind {
        QuotientKind::Parallel => Graph::empty(classes.len()),
        QuotientKind::Series => Graph::complete(classes.len()),
        QuotientKind::Prime => {
            g.induced_subgraph(&reps)
                .expect("class representatives are distinct")
                .0
        }
    };
    let children = classes
        .into_iter()
        .map(|class| decompose_set(g, class))
        .collect();
    ParseNode::Internal {
        kind,
        quotient,
        children,
        vertices,
    }
}

/// Top-level split of a vertex set (|vertices| >= 2) into the children of its
/// parse node. Classes come back sorted internally and ordered by minimum.
fn split(g: &Graph, vertices: &[VertexId]) -> (QuotientKind, Vec<Vec<VertexId>>) {
    let (sub, map) = g
        .induced_subgraph(vertices)
        .expect("vertex set drawn from g");
    let lift = |classes: Vec<Vec<VertexId>>| -> Vec<Vec<VertexId>> {
        let mut out: Vec<Vec<VertexId>> = classes
            .into_iter()
            .map(|c| {
                let mut c: Vec<VertexId> = c.into_iter().map(|v| map[v]).collect();
                c.sort_unstable();
                c
            })
            .collect();
        out.sort_by_key(|c| c[0]);
        out
    };

    let comps = sub.components();
    if comps.len() > 1 {
        return (QuotientKind::Parallel, lift(comps));
    }
    let co_comps = sub.complement().components();
    if co_comps.len() > 1 {
        return (QuotientKind::Series, lift(co_comps));
    }
    (QuotientKind::Prime, lift(prime_partition(&sub)))
}

/// Maximal strong modules of a graph that is connected and co-connected.
///
/// In that case the maximal proper modules are disjoint, so `u` and `v` share
/// a class exactly when the smallest module containing both is proper.
fn prime_partition(g: &Graph) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let matrix = adjacency_matrix(g);
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<VertexId>> = Vec::new();
    for v in 0..n {
        if class_of[v] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[v] = id;
        let mut class = vec![v];
        for u in v + 1..n {
            if class_of[u] == usize::MAX && module_closure(&matrix, &[u, v]).len() < n {
                class_of[u] = id;
                class.push(u);
            }
        }
        classes.push(class);
    }
    classes
}

fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut m = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Smallest module containing `seed`: keep absorbing any outside vertex that
/// sees part, but not all, of the current set.
fn module_closure(matrix: &[Vec<bool>], seed: &[VertexId]) -> Vec<VertexId> {
    let n = matrix.len();
    let mut inside = vec![false; n];
    let mut seen_count = vec![0usize; n];
    let mut members = Vec::new();
    let mut pending: Vec<VertexId> = seed.to_vec();
    while let Some(m) = pending.pop() {
        if inside[m] {
            continue;
        }
        inside[m] = true;
        members.push(m);
        for x in 0..n {
            if matrix[x][m] {
                seen_count[x] += 1;
            }
        }
        if pending.is_empty() {
            let size = members.len();
            pending.extend(
                (0..n).filter(|&x| !inside[x] && seen_count[x] > 0 && seen_count[x] < size),
            );
        }
    }
    members.sort_unstable();
    members
}

/// True iff every vertex outside `set` is adjacent to all of `set` or none.
pub fn is_module(g: &Graph, set: &[VertexId]) -> bool {
    let mut inside = vec![false; g.vertex_count()];
    for &v in set {
        inside[v] = true;
    }
    (0..g.vertex_count()).filter(|&x| !inside[x]).all(|x| {
        let seen = set.iter().filter(|&&v| g.has_edge(x, v)).count();
        seen == 0 || seen == set.len()
    })
}

/// Partition of `V(g)` into the children of the root parse node: components,
/// co-components, or maximal strong modules, whichever applies first.
pub fn maximal_modules(g: &Graph) -> Result<Vec<Vec<VertexId>>> {
    match g.vertex_count() {
        0 => Err(Error::EmptyGraph),
        1 => Ok(vec![vec![0]]),
        n => Ok(split(g, &(0..n).collect::<Vec<_>>()).1),
    }
}

/// Largest number of children of a prime node, or 0 when there is none.
pub fn width(t: &ParseNode) -> usize {
    let own = match t {
        ParseNode::Internal {
            kind: QuotientKind::Prime,
            children,
            ..
        } => children.len(),
        _ => 0,
    };
    t.children().iter().map(width).fold(own, usize::max)
}

/// Rebuilds the graph a parse tree describes. The leaves must carry exactly
/// the ids `0..n`.
pub fn evaluate(t: &ParseNode) -> Result<Graph> {
    let mut leaves = Vec::new();
    collect_leaves(t, &mut leaves);
    let n = leaves.len();
    let mut seen = vec![false; n];
    for &v in &leaves {
        if v >= n || seen[v] {
            return Err(Error::MalformedTree(format!(
                "leaf ids are not a permutation of 0..{n} (offending id {v})"
            )));
        }
        seen[v] = true;
    }
    let mut edges = Vec::new();
    collect_edges(t, &mut edges)?;
    Graph::from_edge_list(n, edges)
}

fn collect_leaves(t: &ParseNode, out: &mut Vec<VertexId>) {
    match t {
        ParseNode::Leaf(v) => out.push(*v),
        ParseNode::Internal { children, .. } => {
            children.iter().for_each(|c| collect_leaves(c, out))
        }
    }
}

fn collect_edges(t: &ParseNode, out: &mut Vec<(VertexId, VertexId)>) -> Result<()> {
    let ParseNode::Internal {
        kind,
        quotient,
        children,
        vertices,
    } = t
    else {
        return Ok(());
    };
    let k = children.len();
    if k < 2 {
        return Err(Error::MalformedTree(format!(
            "internal node with {k} children"
        )));
    }
    if quotient.vertex_count() != k {
        return Err(Error::MalformedTree(format!(
            "quotient has {} vertices for {k} children",
            quotient.vertex_count()
        )));
    }
    let full = k * (k - 1) / 2;
    let shape_ok = match kind {
        QuotientKind::Parallel => quotient.edge_count() == 0,
        QuotientKind::Series => quotient.edge_count() == full,
        QuotientKind::Prime => {
            k >= 4 && quotient.edge_count() != 0 && quotient.edge_count() != full
        }
    };
    if !shape_ok {
        return Err(Error::MalformedTree(format!(
            "{} node has a quotient with {} edges on {k} vertices",
            kind.name(),
            quotient.edge_count()
        )));
    }
    let mut union: Vec<VertexId> = children
        .iter()
        .flat_map(|c| c.vertices().iter().copied())
        .collect();
    union.sort_unstable();
    if &union != vertices {
        return Err(Error::MalformedTree(
            "children do not partition the node's vertex set".into(),
        ));
    }
    for (i, j) in quotient.edges() {
        for &a in children[i].vertices() {
            for &b in children[j].vertices() {
                out.push((a, b));
            }
        }
    }
    children.iter().try_for_each(|c| collect_edges(c, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_nontrivial_module(g: &Graph) -> bool {
        let n = g.vertex_count();
        (1u32..(1 << n) - 1).any(|mask| {
            let set: Vec<_> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            set.len() >= 2 && is_module(g, &set)
        })
    }

    #[test]
    fn single_vertex_is_leaf() {
        let t = decompose(&Graph::empty(1)).unwrap();
        assert_eq!(t, ParseNode::Leaf(0));
        assert_eq!(width(&t), 0);
        assert_eq!(evaluate(&t).unwrap(), Graph::empty(1));
    }

    #[test]
    fn clique_is_series() {
        let t = decompose(&Graph::complete(3)).unwrap();
        assert_eq!(t.kind(), Some(QuotientKind::Series));
        assert_eq!(t.children().len(), 3);
        assert!(t.children().iter().all(|c| matches!(c, ParseNode::Leaf(_))));
        let k4 = Graph::complete(4);
        assert_eq!(evaluate(&decompose(&k4).unwrap()).unwrap(), k4);
    }

    #[test]
    fn p4_is_prime() {
        let p4 = Graph::path(4);
        assert!(!has_nontrivial_module(&p4));
        let t = decompose(&p4).unwrap();
        assert_eq!(t.kind(), Some(QuotientKind::Prime));
        assert_eq!(t.quotient(), Some(&p4));
        assert_eq!(width(&t), 4);
        assert_eq!(
            maximal_modules(&p4).unwrap(),
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
    }

    #[test]
    fn cograph_has_width_zero() {
        // two triangles joined completely
        let mut edges = Vec::new();
        for (a, b) in [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)] {
            edges.push((a, b));
        }
        for a in 0..3 {
            for b in 3..6 {
                edges.push((a, b));
            }
        }
        let g = Graph::from_edge_list(6, edges).unwrap();
        let t = decompose(&g).unwrap();
        assert_eq!(width(&t), 0);
        assert_eq!(t.prime_count(), 0);
        assert_eq!(evaluate(&t).unwrap(), g);
    }

    #[test]
    fn star_splits_as_join() {
        let star = Graph::star(3);
        let mods = maximal_modules(&star).unwrap();
        assert_eq!(mods, vec![vec![0], vec![1, 2, 3]]);
        assert!(is_module(&star, &[1, 2, 3]));
        let t = decompose(&star).unwrap();
        assert_eq!(t.kind(), Some(QuotientKind::Series));
        assert_eq!(t.children()[1].kind(), Some(QuotientKind::Parallel));
    }

    #[test]
    fn twins_share_a_class() {
        // P4 with vertex 4 a true twin of vertex 1
        let g = Graph::from_edge_list(5, [(0, 1), (1, 2), (2, 3), (0, 4), (2, 4), (1, 4)]).unwrap();
        let mods = maximal_modules(&g).unwrap();
        assert!(mods.contains(&vec![1, 4]));
        for m in &mods {
            assert!(is_module(&g, m));
        }
    }

    #[test]
    fn evaluate_rejects_bad_trees() {
        let bad = ParseNode::Internal {
            kind: QuotientKind::Series,
            quotient: Graph::complete(2),
            children: vec![ParseNode::Leaf(0)],
            vertices: vec![0],
        };
        assert!(matches!(evaluate(&bad), Err(Error::MalformedTree(_))));
        let dup = ParseNode::Internal {
            kind: QuotientKind::Parallel,
            quotient: Graph::empty(2),
            children: vec![ParseNode::Leaf(0), ParseNode::Leaf(0)],
            vertices: vec![0, 0],
        };
        assert!(matches!(evaluate(&dup), Err(Error::MalformedTree(_))));
    }

    #[test]
    fn disconnected_input_is_parallel() {
        let g = Graph::from_edge_list(4, [(0, 2), (1, 3)]).unwrap();
        let t = decompose(&g).unwrap();
        assert_eq!(t.kind(), Some(QuotientKind::Parallel));
        assert_eq!(t.children()[0].vertices(), &[0, 2]);
        assert_eq!(evaluate(&t).unwrap(), g);
    }
}
