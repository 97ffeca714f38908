//! Path and path-spider covers of every parse-tree node.
//!
//! For each node `M` the record keeps `ham(M)`, the fewest vertex-disjoint
//! paths covering `G[M]`, and `spi(M)`, the fewest pieces when one of them
//! may be a spider. Internal nodes are solved bottom-up: an extra universal
//! module of `l` synthetic vertices is joined to the quotient, a spanning tree
//! of the augmented graph is built, and deleting the synthetic vertices leaves
//! the cover.

use crate::decomp::ParseNode;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::ilp::{build_mbv_instance, solve_feasibility, IlpInstance, SearchBudget};
use crate::tree::{build_tree, SpanningTreeResult};

/// A path, or a spider: a center with legs hanging off it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PathPiece {
    Path(Vec<VertexId>),
    Spider {
        center: VertexId,
        legs: Vec<Vec<VertexId>>,
    },
}

impl PathPiece {
    pub fn single_spider(center: VertexId) -> Self {
        PathPiece::Spider {
            center,
            legs: Vec::new(),
        }
    }

    pub fn is_spider(&self) -> bool {
        matches!(self, PathPiece::Spider { .. })
    }

    /// `f(P)`: the start of a path, the center of a spider.
    pub fn first(&self) -> VertexId {
        match self {
            PathPiece::Path(vs) => vs[0],
            PathPiece::Spider { center, .. } => *center,
        }
    }

    /// `s(P)`: the end of a path, the center of a spider.
    pub fn second(&self) -> VertexId {
        match self {
            PathPiece::Path(vs) => *vs.last().expect("paths are non-empty"),
            PathPiece::Spider { center, .. } => *center,
        }
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        match self {
            PathPiece::Path(vs) => vs.clone(),
            PathPiece::Spider { center, legs } => std::iter::once(*center)
                .chain(legs.iter().flatten().copied())
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            PathPiece::Path(vs) => vs.len(),
            PathPiece::Spider { legs, .. } => 1 + legs.iter().map(Vec::len).sum::<usize>(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Consecutive pairs along the piece.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        match self {
            PathPiece::Path(vs) => vs.windows(2).map(|w| (w[0], w[1])).collect(),
            PathPiece::Spider { center, legs } => legs
                .iter()
                .flat_map(|leg| {
                    std::iter::once(*center)
                        .chain(leg.iter().copied())
                        .zip(leg.iter().copied())
                })
                .collect(),
        }
    }

    pub fn map(&self, f: impl Fn(VertexId) -> VertexId) -> PathPiece {
        match self {
            PathPiece::Path(vs) => PathPiece::Path(vs.iter().map(|&v| f(v)).collect()),
            PathPiece::Spider { center, legs } => PathPiece::Spider {
                center: f(*center),
                legs: legs
                    .iter()
                    .map(|leg| leg.iter().map(|&v| f(v)).collect())
                    .collect(),
            },
        }
    }

    /// A path read as a spider centered at its first vertex.
    fn into_spider(self) -> PathPiece {
        match self {
            PathPiece::Path(mut vs) => {
                let center = vs.remove(0);
                let legs = if vs.is_empty() { Vec::new() } else { vec![vs] };
                PathPiece::Spider { center, legs }
            }
            spider => spider,
        }
    }

    /// Edges on the longest cuttable stretch: path length, or longest leg.
    fn cut_length(&self) -> usize {
        match self {
            PathPiece::Path(vs) => vs.len() - 1,
            PathPiece::Spider { legs, .. } => legs.iter().map(Vec::len).max().unwrap_or(0),
        }
    }

    fn cut_last(&mut self) -> VertexId {
        match self {
            PathPiece::Path(vs) => vs.pop().expect("cut_length checked"),
            PathPiece::Spider { legs, .. } => {
                let longest = legs.iter().map(Vec::len).max().expect("cut_length checked");
                let at = legs
                    .iter()
                    .position(|l| l.len() == longest)
                    .expect("exists");
                let v = legs[at].pop().expect("non-empty leg");
                if legs[at].is_empty() {
                    legs.remove(at);
                }
                v
            }
        }
    }
}

/// Cover numbers of one parse-tree node, with witnesses in original ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverRecord {
    pub size: usize,
    pub ham: u32,
    pub spi: u32,
    pub ham_cover: Vec<PathPiece>,
    /// The spider comes first.
    pub spi_cover: Vec<PathPiece>,
}

impl CoverRecord {
    pub fn leaf(v: VertexId) -> Self {
        CoverRecord {
            size: 1,
            ham: 1,
            spi: 1,
            ham_cover: vec![PathPiece::Path(vec![v])],
            spi_cover: vec![PathPiece::single_spider(v)],
        }
    }
}

/// Splits pieces until there are exactly `target` of them, always cutting
/// the last edge of the longest stretch. A spider stays in front.
pub fn trim_cover(cover: &[PathPiece], target: usize) -> Result<Vec<PathPiece>> {
    if target < cover.len() {
        return Err(Error::TooManyPieces {
            pieces: cover.len(),
            wanted: target,
        });
    }
    let vertices: usize = cover.iter().map(PathPiece::len).sum();
    if target > vertices {
        return Err(Error::TooFewVertices {
            vertices,
            wanted: target,
        });
    }
    let mut out = cover.to_vec();
    while out.len() < target {
        let longest = out.iter().map(PathPiece::cut_length).max().unwrap_or(0);
        let at = out
            .iter()
            .position(|p| p.cut_length() == longest)
            .expect("cover is non-empty");
        let v = out[at].cut_last();
        out.push(PathPiece::Path(vec![v]));
    }
    Ok(out)
}

/// Cover record of every node, computed bottom-up. Returns the root's.
pub fn compute_record(node: &ParseNode, budget: SearchBudget) -> Result<CoverRecord> {
    match node {
        ParseNode::Leaf(v) => Ok(CoverRecord::leaf(*v)),
        ParseNode::Internal {
            quotient, children, ..
        } => {
            let records = children
                .iter()
                .map(|c| compute_record(c, budget))
                .collect::<Result<Vec<_>>>()?;
            let (ham, ham_cover) = compute_ham(quotient, &records, budget)?;
            let (spi, spi_cover) = compute_spi(quotient, &records, ham, &ham_cover, budget)?;
            Ok(CoverRecord {
                size: node.size(),
                ham,
                spi,
                ham_cover,
                spi_cover,
            })
        }
    }
}

fn sizes_of(records: &[CoverRecord]) -> Vec<u32> {
    records.iter().map(|r| r.size as u32).collect()
}

/// Smallest `l` such that joining `l` universal vertices to the node gives a
/// graph with a Hamiltonian path, together with the resulting path cover.
pub fn compute_ham(
    quotient: &Graph,
    records: &[CoverRecord],
    budget: SearchBudget,
) -> Result<(u32, Vec<PathPiece>)> {
    let total: usize = records.iter().map(|r| r.size).sum();
    let k = quotient.vertex_count();
    let augmented = quotient.augment_join(1).0;
    for l in 1..=total as u32 {
        let mut capacity = sizes_of(records);
        capacity.push(l);
        let mut ham_lb: Vec<u32> = records.iter().map(|r| r.ham).collect();
        ham_lb.push(l);
        let inst = build_mbv_instance(&augmented, &[], k, &capacity, &ham_lb, &ham_lb)?;
        let Some(la) = solve_feasibility(&inst, budget)? else {
            continue;
        };
        let covers: Vec<&[PathPiece]> = records.iter().map(|r| r.ham_cover.as_slice()).collect();
        let realized = realize(&inst, &la, &covers, l as usize)?;
        let pieces = realized.pieces_without_synthetic()?;
        if pieces.iter().any(PathPiece::is_spider) || pieces.len() != l as usize {
            return Err(Error::Internal(format!(
                "augmented tree left {} pieces, expected {l} paths",
                pieces.len()
            )));
        }
        return Ok((l, pieces));
    }
    Err(Error::NoCover(total))
}

/// Smallest `l` such that the node has a cover by one spider and `l - 1`
/// paths. `ham` bounds the search from above, since a path is a spider.
pub fn compute_spi(
    quotient: &Graph,
    records: &[CoverRecord],
    ham: u32,
    ham_cover: &[PathPiece],
    budget: SearchBudget,
) -> Result<(u32, Vec<PathPiece>)> {
    let k = quotient.vertex_count();
    let augmented = quotient.augment_join(1).0;
    for l in 1..ham {
        for j in 0..k {
            let (graph, extra) = if l == 1 {
                (quotient, 0)
            } else {
                (&augmented, l - 1)
            };
            let mut capacity = sizes_of(records);
            let mut spi_lb: Vec<u32> = records.iter().map(|r| r.spi).collect();
            let mut ham_lb: Vec<u32> = records.iter().map(|r| r.ham).collect();
            if extra > 0 {
                capacity.push(extra);
                spi_lb.push(extra);
                ham_lb.push(extra);
            }
            let inst = match build_mbv_instance(graph, &[j], j, &capacity, &spi_lb, &ham_lb) {
                Ok(inst) => inst,
                Err(Error::InconsistentBounds { .. }) => continue,
                Err(e) => return Err(e),
            };
            let Some(la) = solve_feasibility(&inst, budget)? else {
                continue;
            };
            let covers: Vec<&[PathPiece]> = records
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    if i == j {
                        r.spi_cover.as_slice()
                    } else {
                        r.ham_cover.as_slice()
                    }
                })
                .collect();
            let realized = realize(&inst, &la, &covers, extra as usize)?;
            let pieces = realized.pieces_without_synthetic()?;
            let spiders = pieces.iter().filter(|p| p.is_spider()).count();
            if spiders != 1 || !pieces[0].is_spider() || pieces.len() != l as usize {
                return Err(Error::Internal(format!(
                    "augmented tree left {} pieces with {spiders} spiders, expected {l}",
                    pieces.len()
                )));
            }
            return Ok((l, pieces));
        }
    }
    let mut cover = ham_cover.to_vec();
    if cover.is_empty() {
        return Err(Error::NoCover(0));
    }
    cover[0] = cover[0].clone().into_spider();
    Ok((ham, cover))
}

/// A spanning tree built in local ids: real vertices first, then synthetic.
pub(crate) struct Realized {
    pub tree: SpanningTreeResult,
    pub to_orig: Vec<VertexId>,
    pub real: usize,
}

/// Trims each module cover to its inflow and builds the spanning tree. The
/// last `synthetic` modules of the instance beyond `covers` are filled with
/// single synthetic vertices.
pub(crate) fn realize(
    inst: &IlpInstance,
    la: &crate::ilp::LoadAssignment,
    covers: &[&[PathPiece]],
    synthetic: usize,
) -> Result<Realized> {
    let mut to_orig: Vec<VertexId> = covers
        .iter()
        .flat_map(|c| c.iter().flat_map(PathPiece::vertices))
        .collect();
    to_orig.sort_unstable();
    let real = to_orig.len();
    let max = to_orig.last().map_or(0, |&v| v + 1);
    let mut to_local = vec![usize::MAX; max];
    for (local, &v) in to_orig.iter().enumerate() {
        to_local[v] = local;
    }
    let mut modules = Vec::with_capacity(inst.module_count());
    for (i, cover) in covers.iter().enumerate() {
        let alpha = inst.inflow(&la.x, i) as usize;
        let trimmed = trim_cover(cover, alpha)?;
        modules.push(trimmed.iter().map(|p| p.map(|v| to_local[v])).collect());
    }
    if modules.len() + usize::from(synthetic > 0) != inst.module_count() {
        return Err(Error::Internal(
            "module covers do not match the instance".into(),
        ));
    }
    if synthetic > 0 {
        modules.push(
            (real..real + synthetic)
                .map(|v| PathPiece::Path(vec![v]))
                .collect(),
        );
    }
    let tree = build_tree(real + synthetic, &modules, inst, la)?;
    to_orig.extend(std::iter::repeat_n(usize::MAX, synthetic));
    Ok(Realized {
        tree,
        to_orig,
        real,
    })
}

impl Realized {
    /// Components after deleting synthetic vertices, as pieces in original ids.
    /// Each component hangs from its topmost vertex; one with a branching top
    /// becomes a spider. The tree root's component comes first as a spider.
    fn pieces_without_synthetic(&self) -> Result<Vec<PathPiece>> {
        let n = self.tree.parent.len();
        let mut kids = vec![Vec::new(); n];
        for (v, p) in self.tree.parent.iter().enumerate() {
            if let Some(p) = *p {
                if v < self.real && p < self.real {
                    kids[p].push(v);
                }
            }
        }
        let chain = |mut v: VertexId| -> Result<Vec<VertexId>> {
            let mut out = vec![v];
            loop {
                match kids[v].as_slice() {
                    [] => return Ok(out),
                    [w] => {
                        out.push(*w);
                        v = *w;
                    }
                    _ => {
                        return Err(Error::Internal(format!(
                            "vertex {v} branches away from its component's top"
                        )))
                    }
                }
            }
        };
        let root = self.tree.root;
        let mut lead = None;
        let mut rest = Vec::new();
        for v in 0..self.real {
            let top = self.tree.parent[v].is_none_or(|p| p >= self.real);
            if !top {
                continue;
            }
            let piece = if v == root || kids[v].len() >= 2 {
                let legs = kids[v].iter().map(|&w| chain(w)).collect::<Result<_>>()?;
                PathPiece::Spider { center: v, legs }
            } else {
                PathPiece::Path(chain(v)?)
            };
            if v == root {
                lead = Some(piece);
            } else {
                rest.push(piece);
            }
        }
        let mut pieces: Vec<PathPiece> = lead.into_iter().collect();
        rest.sort_by_key(PathPiece::first);
        pieces.extend(rest);
        Ok(pieces.iter().map(|p| p.map(|v| self.to_orig[v])).collect())
    }
}
