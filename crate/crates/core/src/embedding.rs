//! Rotation systems and face tracing for plane multigraphs.

use std::collections::BTreeSet;

use crate::error::EmbeddingError;
use crate::graph::{Edge, MultiGraph, Vertex};

/// Cyclic order of the incident edges around each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    order: Vec<Vec<Edge>>,
}

/// A face boundary walk. `walk[i]` is the tail of `edges[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub walk: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl Face {
    /// Length of the boundary walk.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Distinct boundary vertices in order of first appearance.
    pub fn boundary(&self) -> Vec<Vertex> {
        let mut seen = BTreeSet::new();
        self.walk.iter().copied().filter(|v| seen.insert(*v)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    /// Largest number of distinct vertices on one face boundary.
    pub max_face_size: usize,
}

impl RotationSystem {
    /// Validates that each vertex lists exactly its incident edges.
    pub fn new(g: &MultiGraph, order: Vec<Vec<Edge>>) -> Result<Self, EmbeddingError> {
        if order.len() != g.vertex_count() {
            return Err(EmbeddingError::WrongVertexCount {
                expected: g.vertex_count(),
                found: order.len(),
            });
        }
        for v in g.vertices() {
            let mut given = order[v].clone();
            let mut actual = g.incident(v).to_vec();
            given.sort_unstable();
            actual.sort_unstable();
            if given != actual {
                return Err(EmbeddingError::InvalidRotation { vertex: v });
            }
        }
        Ok(RotationSystem { order })
    }

    /// Rotation of a straight-line drawing: incident edges sorted
    /// counter-clockwise by angle. Parallel edges keep their id order.
    pub fn from_positions(g: &MultiGraph, positions: &[(f64, f64)]) -> Self {
        let order = g
            .vertices()
            .map(|v| {
                let (x, y) = positions[v];
                let mut inc = g.incident(v).to_vec();
                inc.sort_by(|&a, &b| {
                    let angle = |e: Edge| {
                        let (wx, wy) = positions[g.opposite(e, v)];
                        (wy - y).atan2(wx - x)
                    };
                    angle(a).total_cmp(&angle(b)).then(a.cmp(&b))
                });
                inc
            })
            .collect();
        RotationSystem { order }
    }

    pub fn around(&self, v: Vertex) -> &[Edge] {
        &self.order[v]
    }

    pub fn orders(&self) -> &[Vec<Edge>] {
        &self.order
    }

    fn successor(&self, v: Vertex, e: Edge) -> Edge {
        let around = &self.order[v];
        let i = around.iter().position(|&f| f == e).expect("edge incident to vertex");
        around[(i + 1) % around.len()]
    }
}

/// Traces every face of `g` under `rot`, then checks Euler's formula on each
/// component that has an edge.
pub fn faces(g: &MultiGraph, rot: &RotationSystem) -> Result<FaceSet, EmbeddingError> {
    if rot.order.len() != g.vertex_count() {
        return Err(EmbeddingError::WrongVertexCount {
            expected: g.vertex_count(),
            found: rot.order.len(),
        });
    }
    for v in g.vertices() {
        let mut given = rot.order[v].clone();
        let mut actual = g.incident(v).to_vec();
        given.sort_unstable();
        actual.sort_unstable();
        if given != actual {
            return Err(EmbeddingError::InvalidRotation { vertex: v });
        }
    }
    // dart index 2e is e traversed from its first endpoint, 2e+1 the reverse
    let dart_tail = |d: usize| {
        let (a, b) = g.endpoints(d / 2);
        if d.is_multiple_of(2) {
            a
        } else {
            b
        }
    };
    let mut used = vec![false; 2 * g.edge_count()];
    let mut out = Vec::new();
    for start in 0..used.len() {
        if used[start] {
            continue;
        }
        let mut face = Face { walk: Vec::new(), edges: Vec::new() };
        let mut d = start;
        while !used[d] {
            used[d] = true;
            let e = d / 2;
            let tail = dart_tail(d);
            let head = g.opposite(e, tail);
            face.walk.push(tail);
            face.edges.push(e);
            let next = rot.successor(head, e);
            let (a, _) = g.endpoints(next);
            d = 2 * next + usize::from(a != head);
        }
        out.push(face);
    }

    let (label, count) = g.components();
    let mut v_count = vec![0i64; count];
    let mut e_count = vec![0i64; count];
    let mut f_count = vec![0i64; count];
    for v in g.vertices() {
        v_count[label[v]] += 1;
    }
    for e in g.edges() {
        e_count[label[g.endpoints(e).0]] += 1;
    }
    for f in &out {
        f_count[label[f.walk[0]]] += 1;
    }
    for c in 0..count {
        if e_count[c] > 0 {
            let euler = v_count[c] - e_count[c] + f_count[c];
            if euler != 2 {
                let vertex = g.vertices().find(|&v| label[v] == c).unwrap();
                return Err(EmbeddingError::NonPlanarEmbedding { vertex, euler });
            }
        }
    }
    let max_face_size = out.iter().map(|f| f.boundary().len()).max().unwrap_or(0);
    Ok(FaceSet { faces: out, max_face_size })
}
