//! Graph file formats and JSON certificates.
//!
//! Edge lists start with `n m`, then `m` lines `u v` with 0-based ids, then
//! optional weight lines `w v c`. DIMACS files use a `p edge n m` header,
//! `e u v` lines with 1-based ids and `n v c` weight lines. Vertices without a
//! weight line cost 1. Blank lines and comments (`#` in edge lists, `c` in
//! DIMACS) are skipped.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cbv::CbvAnswer;
use crate::cover::PathPiece;
use crate::decomp::ParseNode;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, WeightedGraph};
use crate::mbv::MbvAnswer;
use crate::tree::SpanningTreeResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    /// DIMACS when a `p` line is present, edge list otherwise.
    #[default]
    Auto,
    Edgelist,
    Dimacs,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Format::Auto),
            "edgelist" => Ok(Format::Edgelist),
            "dimacs" => Ok(Format::Dimacs),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

/// A parsed file. `costs` is `None` when the file has no weight lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub costs: Option<Vec<u64>>,
}

impl ParsedGraph {
    /// The graph with its costs, every vertex costing 1 when none were given.
    pub fn weighted(&self) -> Result<WeightedGraph> {
        match &self.costs {
            Some(c) => WeightedGraph::new(self.graph.clone(), c.clone()),
            None => Ok(WeightedGraph::uniform(self.graph.clone())),
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn numbers<const K: usize>(line: usize, fields: &[&str]) -> Result<[u64; K]> {
    if fields.len() != K {
        return Err(parse_err(
            line,
            format!("expected {K} numbers, found {}", fields.len()),
        ));
    }
    let mut out = [0; K];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f
            .parse()
            .map_err(|_| parse_err(line, format!("{f:?} is not a non-negative integer")))?;
    }
    Ok(out)
}

pub fn parse_graph(text: &str, format: Format) -> Result<ParsedGraph> {
    let format = match format {
        Format::Auto => {
            let dimacs = text
                .lines()
                .any(|l| l.trim_start().starts_with("p ") || l.trim() == "p");
            if dimacs {
                Format::Dimacs
            } else {
                Format::Edgelist
            }
        }
        f => f,
    };
    let lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match format {
        Format::Dimacs => parse_dimacs(lines),
        _ => parse_edgelist(lines),
    }
}

struct Builder {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    costs: Option<Vec<u64>>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder {
            n,
            edges: Vec::new(),
            costs: None,
        }
    }

    fn vertex(&self, line: usize, v: u64) -> Result<VertexId> {
        let v = usize::try_from(v).map_err(|_| parse_err(line, "vertex id too large"))?;
        if v >= self.n {
            return Err(Error::OutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(v)
    }

    fn edge(&mut self, line: usize, u: u64, v: u64) -> Result<()> {
        let (u, v) = (self.vertex(line, u)?, self.vertex(line, v)?);
        if u == v {
            return Err(parse_err(line, format!("self-loop at vertex {u}")));
        }
        self.edges.push((u, v));
        Ok(())
    }

    fn cost(&mut self, line: usize, v: u64, c: u64) -> Result<()> {
        let v = self.vertex(line, v)?;
        if c == 0 {
            return Err(Error::InvalidCost { vertex: v, cost: 0 });
        }
        let n = self.n;
        self.costs.get_or_insert_with(|| vec![1; n])[v] = c;
        Ok(())
    }

    fn finish(self, declared_edges: u64, line: usize) -> Result<ParsedGraph> {
        if self.edges.len() as u64 != declared_edges {
            return Err(parse_err(
                line,
                format!(
                    "header declares {declared_edges} edges but {} were given",
                    self.edges.len()
                ),
            ));
        }
        Ok(ParsedGraph {
            graph: Graph::from_edge_list(self.n, self.edges)?,
            costs: self.costs,
        })
    }
}

fn parse_edgelist<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<ParsedGraph> {
    let mut header: Option<(Builder, u64)> = None;
    let mut last = 0;
    for (no, line) in lines {
        last = no;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match &mut header {
            None => {
                let [n, m] = numbers::<2>(no, &fields)?;
                let n = usize::try_from(n).map_err(|_| parse_err(no, "vertex count too large"))?;
                header = Some((Builder::new(n), m));
            }
            Some((b, _)) if fields[0] == "w" => {
                let [v, c] = numbers::<2>(no, &fields[1..])?;
                b.cost(no, v, c)?;
            }
            Some((b, _)) => {
                let [u, v] = numbers::<2>(no, &fields)?;
                b.edge(no, u, v)?;
            }
        }
    }
    let (b, m) = header.ok_or_else(|| parse_err(last.max(1), "missing \"n m\" header"))?;
    b.finish(m, last)
}

fn parse_dimacs<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<ParsedGraph> {
    let mut header: Option<(Builder, u64)> = None;
    let mut last = 0;
    let one_based = |no: usize, v: u64| {
        v.checked_sub(1)
            .ok_or_else(|| parse_err(no, "DIMACS vertex ids start at 1"))
    };
    for (no, line) in lines {
        last = no;
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match (fields[0], &mut header) {
            ("p", None) => {
                if fields.get(1) != Some(&"edge") && fields.get(1) != Some(&"col") {
                    return Err(parse_err(no, "expected \"p edge n m\""));
                }
                let [n, m] = numbers::<2>(no, &fields[2..])?;
                let n = usize::try_from(n).map_err(|_| parse_err(no, "vertex count too large"))?;
                header = Some((Builder::new(n), m));
            }
            ("p", Some(_)) => return Err(parse_err(no, "second problem line")),
            (_, None) => return Err(parse_err(no, "data before the \"p\" line")),
            ("e", Some((b, _))) => {
                let [u, v] = numbers::<2>(no, &fields[1..])?;
                b.edge(no, one_based(no, u)?, one_based(no, v)?)?;
            }
            ("n", Some((b, _))) => {
                let [v, c] = numbers::<2>(no, &fields[1..])?;
                b.cost(no, one_based(no, v)?, c)?;
            }
            (other, _) => return Err(parse_err(no, format!("unknown line type {other:?}"))),
        }
    }
    let (b, m) = header.ok_or_else(|| parse_err(last.max(1), "missing \"p edge n m\" line"))?;
    b.finish(m, last)
}

/// Serialized form of a piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PieceJson {
    Path {
        vertices: Vec<VertexId>,
    },
    Spider {
        center: VertexId,
        legs: Vec<Vec<VertexId>>,
    },
}

impl From<&PathPiece> for PieceJson {
    fn from(p: &PathPiece) -> Self {
        match p {
            PathPiece::Path(vs) => PieceJson::Path {
                vertices: vs.clone(),
            },
            PathPiece::Spider { center, legs } => PieceJson::Spider {
                center: *center,
                legs: legs.clone(),
            },
        }
    }
}

impl From<PieceJson> for PathPiece {
    fn from(p: PieceJson) -> Self {
        match p {
            PieceJson::Path { vertices } => PathPiece::Path(vertices),
            PieceJson::Spider { center, legs } => PathPiece::Spider { center, legs },
        }
    }
}

/// Certificate written by the `mbv` and `cbv` commands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cost: Option<u64>,
    pub root: VertexId,
    pub parent: Vec<Option<VertexId>>,
    pub branch: Vec<VertexId>,
    /// Root modules (mbv) or type classes (cbv) allowed to branch.
    #[serde(default)]
    pub branch_sets: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_agrees: Option<bool>,
}

impl TreeJson {
    pub fn from_mbv(a: &MbvAnswer) -> Self {
        TreeJson {
            b: Some(a.b),
            cost: None,
            root: a.tree.root,
            parent: a.tree.parent.clone(),
            branch: a.tree.branch.clone(),
            branch_sets: a.branch_modules.clone(),
            oracle_agrees: None,
        }
    }

    pub fn from_cbv(a: &CbvAnswer) -> Self {
        TreeJson {
            b: None,
            cost: Some(a.cost),
            root: a.tree.root,
            parent: a.tree.parent.clone(),
            branch: a.tree.branch.clone(),
            branch_sets: a.branch_classes.clone(),
            oracle_agrees: None,
        }
    }

    pub fn tree(&self) -> SpanningTreeResult {
        SpanningTreeResult {
            parent: self.parent.clone(),
            root: self.root,
            branch: self.branch.clone(),
            cost: self.cost,
        }
    }
}

/// Certificate written by the `psc` and `pp` commands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spi: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ham: Option<u32>,
    pub pieces: Vec<PieceJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_agrees: Option<bool>,
}

impl CoverJson {
    pub fn psc(spi: u32, cover: &[PathPiece]) -> Self {
        CoverJson {
            spi: Some(spi),
            ham: None,
            pieces: cover.iter().map(PieceJson::from).collect(),
            oracle_agrees: None,
        }
    }

    pub fn pp(ham: u32, cover: &[PathPiece]) -> Self {
        CoverJson {
            spi: None,
            ham: Some(ham),
            pieces: cover.iter().map(PieceJson::from).collect(),
            oracle_agrees: None,
        }
    }

    pub fn pieces(&self) -> Vec<PathPiece> {
        self.pieces.iter().cloned().map(PathPiece::from).collect()
    }
}

/// Either certificate, as read back by `verify`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Certificate {
    Tree(TreeJson),
    Cover(CoverJson),
}

/// Parse tree as nested objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseNodeJson {
    pub kind: &'static str,
    pub vertices: Vec<VertexId>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub quotient_edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<ParseNodeJson>,
}

impl From<&ParseNode> for ParseNodeJson {
    fn from(node: &ParseNode) -> Self {
        match node {
            ParseNode::Leaf(v) => ParseNodeJson {
                kind: "leaf",
                vertices: vec![*v],
                quotient_edges: Vec::new(),
                children: Vec::new(),
            },
            ParseNode::Internal {
                kind,
                quotient,
                children,
                vertices,
            } => ParseNodeJson {
                kind: kind.name(),
                vertices: vertices.clone(),
                quotient_edges: quotient.edges().collect(),
                children: children.iter().map(ParseNodeJson::from).collect(),
            },
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("certificates serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgelist_basics() {
        let p = parse_graph("2 1\n0 1\n", Format::Edgelist).unwrap();
        assert_eq!(p.graph, Graph::path(2));
        assert_eq!(p.costs, None);
        let p = parse_graph("# weighted\n3 2\n0 1\n1 2\nw 0 5\n", Format::Auto).unwrap();
        let wg = p.weighted().unwrap();
        assert_eq!(wg.costs(), &[5, 1, 1]);
    }

    #[test]
    fn dimacs_basics() {
        let p = parse_graph("c tiny\np edge 3 2\ne 1 2\ne 2 3\nn 3 7\n", Format::Auto).unwrap();
        assert_eq!(p.graph, Graph::path(3));
        assert_eq!(p.costs, Some(vec![1, 1, 7]));
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert!(matches!(
            parse_graph("2 1\n0 x\n", Format::Edgelist),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("2 2\n0 1\n", Format::Edgelist),
            Err(Error::Parse { .. })
        ));
        assert_eq!(
            parse_graph("2 1\n0 2\n", Format::Edgelist),
            Err(Error::OutOfRange { vertex: 2, n: 2 })
        );
        assert!(matches!(
            parse_graph("p edge 2 1\ne 0 1\n", Format::Dimacs),
            Err(Error::Parse { line: 2, .. })
        ));
        assert_eq!(
            parse_graph("2 1\n0 1\nw 1 0\n", Format::Edgelist),
            Err(Error::InvalidCost { vertex: 1, cost: 0 })
        );
    }

    #[test]
    fn certificates_round_trip() {
        let cover = vec![
            PathPiece::Spider {
                center: 0,
                legs: vec![vec![1], vec![2]],
            },
            PathPiece::Path(vec![3, 4]),
        ];
        let text = to_json(&CoverJson::psc(2, &cover));
        assert!(text.contains("\"kind\": \"spider\""));
        let Certificate::Cover(back) = serde_json::from_str(&text).unwrap() else {
            panic!("read back as a tree");
        };
        assert_eq!(back.pieces(), cover);

        let tree = TreeJson {
            b: Some(0),
            cost: None,
            root: 0,
            parent: vec![None, Some(0)],
            branch: vec![],
            branch_sets: vec![],
            oracle_agrees: None,
        };
        let text = to_json(&tree);
        assert!(text.contains("\"branch\": []"));
        assert_eq!(
            serde_json::from_str::<Certificate>(&text).unwrap(),
            Certificate::Tree(tree)
        );
    }
}
