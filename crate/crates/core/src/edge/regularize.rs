use crate::error::ColouringError;
use crate::graph::{Edge, MultiGraph, Vertex};

/// `g` embedded in a regular multigraph: vertices `0..n` and edges `0..m` are
/// the originals, `n..2n` and `m..2m` their mirror copies, then join edges.
#[derive(Debug, Clone)]
pub struct Regularized {
    pub graph: MultiGraph,
    pub degree: usize,
    pub original_vertices: usize,
    pub original_edges: usize,
    /// Parallel edges joining `v` to its mirror.
    pub joins: Vec<Vec<Edge>>,
}

impl Regularized {
    pub fn mirror(&self, v: Vertex) -> Vertex {
        v + self.original_vertices
    }

    pub fn is_original(&self, e: Edge) -> bool {
        e < self.original_edges
    }
}

/// Two copies of `g` with `target − deg(v)` parallel edges from each `v` to its
/// mirror, giving a `target`-regular loopless multigraph.
pub fn regularize_to_degree(g: &MultiGraph, target: usize) -> Result<Regularized, ColouringError> {
    if target < g.max_degree() {
        return Err(ColouringError::DegreeTooSmall { required: g.max_degree(), found: target });
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut h = MultiGraph::new(2 * n);
    for v in g.vertices() {
        h.set_vertex_name(v, g.vertex_name(v));
        h.set_vertex_name(v + n, format!("{}'", g.vertex_name(v)));
    }
    for shift in [0, n] {
        for e in g.edges() {
            let (a, b) = g.endpoints(e);
            h.add_edge(a + shift, b + shift)?;
        }
    }
    let mut joins = vec![Vec::new(); n];
    for v in g.vertices() {
        for _ in g.degree(v)..target {
            joins[v].push(h.add_edge(v, v + n)?);
        }
    }
    Ok(Regularized { graph: h, degree: target, original_vertices: n, original_edges: m, joins })
}
