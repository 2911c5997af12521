//! Loopless multigraphs and the derived graphs used throughout the crate.
//!
//! Vertices and edges are dense indices (`0..n`, `0..m`). Each carries an
//! external name so that graphs read from files keep their identifiers, and
//! index order is the total order used for every deterministic tie-break.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::error::GraphError;

pub type Vertex = usize;
pub type Edge = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    endpoints: Vec<(Vertex, Vertex)>,
    incidence: Vec<Vec<Edge>>,
}

impl MultiGraph {
    /// An edgeless graph on `n` vertices named `0..n`.
    pub fn new(n: usize) -> Self {
        MultiGraph {
            vertex_names: (0..n).map(|v| v.to_string()).collect(),
            edge_names: Vec::new(),
            endpoints: Vec::new(),
            incidence: vec![Vec::new(); n],
        }
    }

    /// Builds a graph on `n` vertices from index pairs. Edge `i` is `edges[i]`.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = MultiGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Validating constructor over named vertices and `(edge-id, u, v)` triples.
    pub fn build<S: AsRef<str>>(
        vertex_ids: &[S],
        edges: &[(S, S, S)],
    ) -> Result<Self, GraphError> {
        let mut index = BTreeMap::new();
        for (i, id) in vertex_ids.iter().enumerate() {
            if index.insert(id.as_ref().to_string(), i).is_some() {
                return Err(GraphError::DuplicateId(id.as_ref().to_string()));
            }
        }
        let mut g = MultiGraph::new(vertex_ids.len());
        g.vertex_names = vertex_ids.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for (id, u, v) in edges {
            let id = id.as_ref();
            if !seen.insert(id.to_string()) {
                return Err(GraphError::DuplicateId(id.to_string()));
            }
            let resolve = |name: &str| {
                index.get(name).copied().ok_or_else(|| GraphError::DanglingEndpoint {
                    edge: id.to_string(),
                    vertex: name.to_string(),
                })
            };
            let (a, b) = (resolve(u.as_ref())?, resolve(v.as_ref())?);
            if a == b {
                return Err(GraphError::LoopEdge(id.to_string()));
            }
            let e = g.add_edge(a, b)?;
            g.edge_names[e] = id.to_string();
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> Vertex {
        let v = self.incidence.len();
        self.vertex_names.push(v.to_string());
        self.incidence.push(Vec::new());
        v
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<Edge, GraphError> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(GraphError::DanglingEndpoint {
                edge: self.endpoints.len().to_string(),
                vertex: u.max(v).to_string(),
            });
        }
        if u == v {
            return Err(GraphError::LoopEdge(self.endpoints.len().to_string()));
        }
        let e = self.endpoints.len();
        self.endpoints.push((u, v));
        self.edge_names.push(format!("e{e}"));
        self.incidence[u].push(e);
        self.incidence[v].push(e);
        Ok(e)
    }

    pub fn set_vertex_name(&mut self, v: Vertex, name: impl Into<String>) {
        self.vertex_names[v] = name.into();
    }

    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    pub fn edges(&self) -> std::ops::Range<Edge> {
        0..self.edge_count()
    }

    pub fn endpoints(&self, e: Edge) -> (Vertex, Vertex) {
        self.endpoints[e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: Edge, v: Vertex) -> Vertex {
        let (a, b) = self.endpoints[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.vertex_names[v]
    }

    pub fn edge_name(&self, e: Edge) -> &str {
        &self.edge_names[e]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_index(&self, name: &str) -> Option<Vertex> {
        self.vertex_names.iter().position(|n| n == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<Edge> {
        self.edge_names.iter().position(|n| n == name)
    }

    /// Incident edge ids of `v` in insertion order.
    pub fn incident(&self, v: Vertex) -> &[Edge] {
        &self.incidence[v]
    }

    /// Number of incident edges; parallel edges count separately.
    pub fn degree(&self, v: Vertex) -> usize {
        self.incidence[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Distinct neighbours of `v`, ascending.
    pub fn neighbours(&self, v: Vertex) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> = self.incidence[v].iter().map(|&e| self.opposite(e, v)).collect();
        set.into_iter().collect()
    }

    pub fn adjacency_sets(&self) -> Vec<BTreeSet<Vertex>> {
        self.vertices()
            .map(|v| self.incidence[v].iter().map(|&e| self.opposite(e, v)).collect())
            .collect()
    }

    pub fn are_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.incidence[u].iter().any(|&e| self.opposite(e, u) == v)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::new();
        self.endpoints.iter().all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    /// Same vertices, one edge per adjacent pair (lowest edge id kept, in id order).
    pub fn simplify(&self) -> MultiGraph {
        let mut g = self.edgeless_copy();
        let mut seen = HashSet::new();
        for e in self.edges() {
            let (u, v) = self.endpoints[e];
            if seen.insert((u.min(v), u.max(v))) {
                let f = g.add_edge(u, v).expect("valid endpoints");
                g.edge_names[f] = self.edge_names[e].clone();
            }
        }
        g
    }

    /// Same vertex set and names, no edges.
    pub fn edgeless_copy(&self) -> MultiGraph {
        let mut g = MultiGraph::new(self.vertex_count());
        g.vertex_names = self.vertex_names.clone();
        g
    }

    /// Spanning subgraph keeping the listed edges; edge `i` of the result is `keep[i]`.
    pub fn edge_subgraph(&self, keep: &[Edge]) -> MultiGraph {
        let mut g = self.edgeless_copy();
        for &e in keep {
            let (u, v) = self.endpoints[e];
            let f = g.add_edge(u, v).expect("valid endpoints");
            g.edge_names[f] = self.edge_names[e].clone();
        }
        g
    }

    /// Graph with `v` deleted. Returns the graph and the old-to-new vertex map.
    pub fn remove_vertex(&self, v: Vertex) -> (MultiGraph, Vec<Option<Vertex>>) {
        let map: Vec<Option<Vertex>> = self
            .vertices()
            .map(|u| match u.cmp(&v) {
                std::cmp::Ordering::Less => Some(u),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(u - 1),
            })
            .collect();
        let mut g = MultiGraph::new(self.vertex_count() - 1);
        for u in self.vertices() {
            if let Some(nu) = map[u] {
                g.vertex_names[nu] = self.vertex_names[u].clone();
            }
        }
        for e in self.edges() {
            let (a, b) = self.endpoints[e];
            if let (Some(na), Some(nb)) = (map[a], map[b]) {
                let f = g.add_edge(na, nb).expect("valid endpoints");
                g.edge_names[f] = self.edge_names[e].clone();
            }
        }
        (g, map)
    }

    /// BFS distances from `s` (`None` = unreachable).
    pub fn distances_from(&self, s: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &e in &self.incidence[u] {
                let w = self.opposite(e, u);
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Vertices at distance one or two from `v`, ascending.
    pub fn second_neighbourhood(&self, v: Vertex) -> Vec<Vertex> {
        let mut set = BTreeSet::new();
        for u in self.neighbours(v) {
            set.insert(u);
            for w in self.neighbours(u) {
                if w != v {
                    set.insert(w);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Connected component label per vertex and the component count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.vertex_count()];
        let mut count = 0;
        for s in self.vertices() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &e in &self.incidence[u] {
                    let w = self.opposite(e, u);
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }
}

/// The square: a simple graph joining distinct vertices at distance one or two.
pub fn square(g: &MultiGraph) -> MultiGraph {
    let mut sq = g.edgeless_copy();
    for u in g.vertices() {
        for w in g.second_neighbourhood(u) {
            if u < w {
                sq.add_edge(u, w).expect("valid endpoints");
            }
        }
    }
    sq
}

/// The line graph: vertex `e` for each edge `e`; edges sharing an endpoint are
/// adjacent, parallel edges included. The result is simple.
pub fn line_graph(g: &MultiGraph) -> MultiGraph {
    let mut lg = MultiGraph::new(g.edge_count());
    for e in g.edges() {
        lg.set_vertex_name(e, g.edge_name(e).to_string());
    }
    for e in g.edges() {
        let (a, b) = g.endpoints(e);
        let mut others: BTreeSet<Edge> = g.incident(a).iter().copied().collect();
        others.extend(g.incident(b).iter().copied());
        for f in others {
            if f > e {
                lg.add_edge(e, f).expect("valid endpoints");
            }
        }
    }
    lg
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= bound,
            Girth::Infinite => true,
        }
    }
}

impl std::fmt::Display for Girth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metrics {
    pub max_degree: usize,
    pub degrees: Vec<usize>,
    pub girth: Girth,
    pub components: usize,
}

pub fn metrics(g: &MultiGraph) -> Metrics {
    Metrics {
        max_degree: g.max_degree(),
        degrees: g.vertices().map(|v| g.degree(v)).collect(),
        girth: girth(g),
        components: g.components().1,
    }
}

/// Shortest cycle length. Two parallel edges form a cycle of length two.
pub fn girth(g: &MultiGraph) -> Girth {
    if !g.is_simple() {
        return Girth::Finite(2);
    }
    let mut best: Option<usize> = None;
    for s in g.vertices() {
        // BFS tree rooted at s; any non-tree edge closes a walk through s
        // whose length bounds a cycle, and the minimum over all roots is exact.
        let mut dist = vec![usize::MAX; g.vertex_count()];
        let mut via = vec![usize::MAX; g.vertex_count()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in g.incident(u) {
                if e == via[u] {
                    continue;
                }
                let w = g.opposite(e, u);
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    via[w] = e;
                    queue.push_back(w);
                } else {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best.map_or(Girth::Infinite, Girth::Finite)
}

/// Result of contracting an edge: `merge[old]` is the new index of each old vertex.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: MultiGraph,
    pub merged: Vertex,
    pub merge: Vec<Vertex>,
}

/// Contracts `e` into a fresh vertex (the last index), dropping the loops this
/// creates and merging parallel edges so the result is simple.
pub fn contract_edge_simplify(g: &MultiGraph, e: Edge) -> Result<Contraction, GraphError> {
    if e >= g.edge_count() {
        return Err(GraphError::MissingEdge(e.to_string()));
    }
    let (a, b) = g.endpoints(e);
    let n = g.vertex_count();
    let merged = n - 2;
    let mut merge = vec![0; n];
    let mut next = 0;
    for v in g.vertices() {
        if v == a || v == b {
            merge[v] = merged;
        } else {
            merge[v] = next;
            next += 1;
        }
    }
    let mut out = MultiGraph::new(n - 1);
    for v in g.vertices() {
        if v != a && v != b {
            out.set_vertex_name(merge[v], g.vertex_name(v).to_string());
        }
    }
    out.set_vertex_name(merged, format!("{}+{}", g.vertex_name(a), g.vertex_name(b)));
    let mut seen = HashSet::new();
    for f in g.edges() {
        let (u, v) = g.endpoints(f);
        let (nu, nv) = (merge[u], merge[v]);
        if nu != nv && seen.insert((nu.min(nv), nu.max(nv))) {
            let id = out.add_edge(nu, nv)?;
            out.edge_names[id] = g.edge_name(f).to_string();
        }
    }
    Ok(Contraction { graph: out, merged, merge })
}

/// Two-colouring of the vertices if the graph is bipartite (`true` = first side).
pub fn bipartition(g: &MultiGraph) -> Option<Vec<bool>> {
    let mut side: Vec<Option<bool>> = vec![None; g.vertex_count()];
    for s in g.vertices() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(true);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let su = side[u].unwrap();
            for &e in g.incident(u) {
                let w = g.opposite(e, u);
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        stack.push(w);
                    }
                    Some(sw) if sw == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(side.into_iter().map(|s| s.unwrap()).collect())
}

/// True when the graph is connected, has at least three vertices and no cut vertex.
pub fn is_two_connected(g: &MultiGraph) -> bool {
    let n = g.vertex_count();
    if n < 3 || g.components().1 != 1 {
        return false;
    }
    (0..n).all(|v| g.remove_vertex(v).0.components().1 == 1)
}
