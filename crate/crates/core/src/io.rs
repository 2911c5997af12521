//! The versioned JSON graph file, and a read-only DIMACS importer.
//!
//! ```json
//! {"format": "frugal-graph", "version": 1,
//!  "vertices": ["a", "b"], "edges": [{"id": "e0", "u": "a", "v": "b"}],
//!  "rotation": {"a": ["e0"], "b": ["e0"]},
//!  "lists": {"target": "vertices", "lists": {"a": [1, 2], "b": [2, 3]}},
//!  "colouring": {"target": "vertices", "colours": {"a": 1, "b": 2}}}
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colouring::{Colour, ListAssignment, ListTarget};
use crate::embedding::RotationSystem;
use crate::error::{EmbeddingError, GraphError};
use crate::graph::MultiGraph;

pub const FORMAT: &str = "frugal-graph";
pub const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unsupported format {format:?} version {version}")]
    Format { format: String, version: u32 },
    #[error("{field}: unknown item {id:?}")]
    UnknownItem { field: String, id: String },
    #[error("{field}: no entry for item {id:?}")]
    MissingItem { field: String, id: String },
    #[error("DIMACS line {line}: {message}")]
    Dimacs { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: String,
    pub u: String,
    pub v: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListsRecord {
    pub target: ListTarget,
    pub lists: BTreeMap<String, Vec<Colour>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColouringRecord {
    pub target: ListTarget,
    pub colours: BTreeMap<String, Colour>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub format: String,
    pub version: u32,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lists: Option<ListsRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colouring: Option<ColouringRecord>,
}

/// A parsed graph file with every optional section resolved to indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Loaded {
    pub graph: MultiGraph,
    pub rotation: Option<RotationSystem>,
    pub lists: Option<ListAssignment>,
    pub colouring: Option<(ListTarget, Vec<Colour>)>,
}

impl Loaded {
    pub fn plain(graph: MultiGraph) -> Self {
        Loaded { graph, rotation: None, lists: None, colouring: None }
    }
}

fn item_index(g: &MultiGraph, target: ListTarget, field: &str, id: &str) -> Result<usize, ParseError> {
    let found = match target {
        ListTarget::Vertices => g.vertex_index(id),
        ListTarget::Edges => g.edge_index(id),
    };
    found.ok_or_else(|| ParseError::UnknownItem { field: field.into(), id: id.into() })
}

fn item_names(g: &MultiGraph, target: ListTarget) -> Vec<String> {
    match target {
        ListTarget::Vertices => g.vertices().map(|v| g.vertex_name(v).to_string()).collect(),
        ListTarget::Edges => g.edges().map(|e| g.edge_name(e).to_string()).collect(),
    }
}

/// Resolves names to a total per-item table, rejecting unknown or missing items.
fn resolve<T: Clone>(
    g: &MultiGraph,
    target: ListTarget,
    field: &str,
    map: &BTreeMap<String, T>,
) -> Result<Vec<T>, ParseError> {
    let names = item_names(g, target);
    let mut out: Vec<Option<T>> = vec![None; names.len()];
    for (id, value) in map {
        out[item_index(g, target, field, id)?] = Some(value.clone());
    }
    out.into_iter()
        .zip(names)
        .map(|(x, id)| x.ok_or(ParseError::MissingItem { field: field.into(), id }))
        .collect()
}

impl GraphFile {
    pub fn into_loaded(self) -> Result<Loaded, ParseError> {
        if self.format != FORMAT || self.version != VERSION {
            return Err(ParseError::Format { format: self.format, version: self.version });
        }
        let edges: Vec<(String, String, String)> =
            self.edges.iter().map(|e| (e.id.clone(), e.u.clone(), e.v.clone())).collect();
        let graph = MultiGraph::build(&self.vertices, &edges)?;
        let rotation = match &self.rotation {
            None => None,
            Some(map) => {
                let by_name = resolve(&graph, ListTarget::Vertices, "rotation", map)?;
                let mut order = Vec::with_capacity(by_name.len());
                for ids in by_name {
                    let edges = ids
                        .iter()
                        .map(|id| item_index(&graph, ListTarget::Edges, "rotation", id))
                        .collect::<Result<Vec<_>, _>>()?;
                    order.push(edges);
                }
                Some(RotationSystem::new(&graph, order)?)
            }
        };
        let lists = match &self.lists {
            None => None,
            Some(rec) => {
                let lists = resolve(&graph, rec.target, "lists", &rec.lists)?;
                Some(ListAssignment::new(rec.target, lists.into_iter().map(BTreeSet::from_iter).collect()))
            }
        };
        let colouring = match &self.colouring {
            None => None,
            Some(rec) => Some((rec.target, resolve(&graph, rec.target, "colouring", &rec.colours)?)),
        };
        Ok(Loaded { graph, rotation, lists, colouring })
    }

    pub fn from_loaded(loaded: &Loaded) -> Self {
        let g = &loaded.graph;
        let named = |target, values: &mut dyn Iterator<Item = (usize, Colour)>| {
            let names = item_names(g, target);
            values.map(|(i, c)| (names[i].clone(), c)).collect::<BTreeMap<_, _>>()
        };
        GraphFile {
            format: FORMAT.into(),
            version: VERSION,
            vertices: g.vertex_names().to_vec(),
            edges: g
                .edges()
                .map(|e| {
                    let (u, v) = g.endpoints(e);
                    EdgeRecord {
                        id: g.edge_name(e).into(),
                        u: g.vertex_name(u).into(),
                        v: g.vertex_name(v).into(),
                    }
                })
                .collect(),
            rotation: loaded.rotation.as_ref().map(|rot| {
                g.vertices()
                    .map(|v| {
                        let ids = rot.around(v).iter().map(|&e| g.edge_name(e).to_string()).collect();
                        (g.vertex_name(v).to_string(), ids)
                    })
                    .collect()
            }),
            lists: loaded.lists.as_ref().map(|l| {
                let names = item_names(g, l.target);
                ListsRecord {
                    target: l.target,
                    lists: l.lists.iter().enumerate().map(|(i, s)| (names[i].clone(), s.iter().copied().collect())).collect(),
                }
            }),
            colouring: loaded.colouring.as_ref().map(|(target, c)| ColouringRecord {
                target: *target,
                colours: named(*target, &mut c.iter().copied().enumerate()),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph files serialize")
    }
}

/// Parses the JSON format, or DIMACS when the text does not start with `{`.
pub fn parse_graph_str(text: &str) -> Result<Loaded, ParseError> {
    if !text.trim_start().starts_with('{') {
        return parse_dimacs(text).map(Loaded::plain);
    }
    let file: GraphFile = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.into_loaded()
}

pub fn read_graph_file(path: &Path) -> Result<Loaded, ParseError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ParseError::Read { path: path.display().to_string(), source })?;
    parse_graph_str(&text)
}

pub fn emit_graph_json(loaded: &Loaded) -> String {
    GraphFile::from_loaded(loaded).to_json()
}

/// Simple graph from DIMACS `p edge n m` / `e u v` lines. Repeated edges
/// (including both directions) are merged.
pub fn parse_dimacs(text: &str) -> Result<MultiGraph, ParseError> {
    let mut graph: Option<MultiGraph> = None;
    let mut seen = BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        let err = |message: &str| ParseError::Dimacs { line: i + 1, message: message.into() };
        let mut words = line.split_whitespace();
        match words.next() {
            None | Some("c") => {}
            Some("p") => {
                let _kind = words.next().ok_or_else(|| err("missing problem kind"))?;
                let n: usize = words.next().and_then(|w| w.parse().ok()).ok_or_else(|| err("bad vertex count"))?;
                let mut g = MultiGraph::new(n);
                for v in 0..n {
                    g.set_vertex_name(v, (v + 1).to_string());
                }
                graph = Some(g);
            }
            Some("e") => {
                let g = graph.as_mut().ok_or_else(|| err("edge before problem line"))?;
                let mut end = || -> Result<usize, ParseError> {
                    let x: usize = words.next().and_then(|w| w.parse().ok()).ok_or_else(|| err("bad endpoint"))?;
                    if x == 0 || x > g.vertex_count() {
                        return Err(err("endpoint out of range"));
                    }
                    Ok(x - 1)
                };
                let (u, v) = (end()?, end()?);
                if u == v {
                    return Err(GraphError::LoopEdge(format!("line {}", i + 1)).into());
                }
                if seen.insert((u.min(v), u.max(v))) {
                    g.add_edge(u, v)?;
                }
            }
            Some(_) => return Err(err("unknown line type")),
        }
    }
    graph.ok_or(ParseError::Dimacs { line: 0, message: "no problem line".into() })
}
