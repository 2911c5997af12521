use crate::error::ColouringError;
use crate::graph::{MultiGraph, Vertex};

/// Direction of every edge: `arcs[e] = (tail, head)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub arcs: Vec<(Vertex, Vertex)>,
}

impl Orientation {
    pub fn out_degree(&self, v: Vertex) -> usize {
        self.arcs.iter().filter(|a| a.0 == v).count()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.arcs.iter().filter(|a| a.1 == v).count()
    }
}

/// Bipartite graph on tails `0..n` and heads `n..2n`; edge `e` is arc `e`.
#[derive(Debug, Clone)]
pub struct BipartiteLift {
    pub graph: MultiGraph,
    pub base_vertices: usize,
}

impl BipartiteLift {
    pub fn is_tail_side(&self, x: Vertex) -> bool {
        x < self.base_vertices
    }
}

/// Orients each component along an Euler circuit (Hierholzer).
pub fn euler_orientation(g: &MultiGraph) -> Result<Orientation, ColouringError> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) % 2 == 1) {
        return Err(ColouringError::OddDegree(v));
    }
    let mut arcs = vec![(0, 0); g.edge_count()];
    let mut used = vec![false; g.edge_count()];
    let mut next = vec![0; g.vertex_count()];
    for start in g.vertices() {
        let mut stack = vec![start];
        while let Some(&v) = stack.last() {
            let inc = g.incident(v);
            while next[v] < inc.len() && used[inc[next[v]]] {
                next[v] += 1;
            }
            if next[v] == inc.len() {
                stack.pop();
                continue;
            }
            let e = inc[next[v]];
            used[e] = true;
            let w = g.opposite(e, v);
            arcs[e] = (v, w);
            stack.push(w);
        }
    }
    Ok(Orientation { arcs })
}

/// Euler orientation of an even-degree multigraph, and its bipartite lift.
pub fn bipartite_lift(g: &MultiGraph) -> Result<(Orientation, BipartiteLift), ColouringError> {
    let orientation = euler_orientation(g)?;
    let n = g.vertex_count();
    let mut h = MultiGraph::new(2 * n);
    for v in g.vertices() {
        h.set_vertex_name(v, format!("{}+", g.vertex_name(v)));
        h.set_vertex_name(v + n, format!("{}-", g.vertex_name(v)));
    }
    for &(a, b) in &orientation.arcs {
        h.add_edge(a, b + n)?;
    }
    Ok((orientation, BipartiteLift { graph: h, base_vertices: n }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lift_examples() {
        let c4 = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let (o, l) = bipartite_lift(&c4).unwrap();
        assert!(c4.vertices().all(|v| o.in_degree(v) == 1 && o.out_degree(v) == 1));
        assert_eq!(l.graph.vertex_count(), 8);
        assert!(l.graph.vertices().all(|x| l.graph.degree(x) == 1));

        let digon = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let (o, l) = bipartite_lift(&digon).unwrap();
        assert_eq!(o.arcs, vec![(0, 1), (1, 0)]);
        assert_eq!((l.graph.endpoints(0), l.graph.endpoints(1)), ((0, 3), (1, 2)));

        let t2 = MultiGraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)]).unwrap();
        let (_, l) = bipartite_lift(&t2).unwrap();
        assert_eq!(l.graph.vertex_count(), 6);
        assert!(l.graph.vertices().all(|x| l.graph.degree(x) == 2));

        let p3 = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(bipartite_lift(&p3).unwrap_err(), ColouringError::OddDegree(0));
    }
}
