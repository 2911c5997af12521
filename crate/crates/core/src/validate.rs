//! Independent checkers for every colouring notion in the crate.
//!
//! Each checker returns the first violation in a fixed scan order (edges by id,
//! then vertices by index, colours ascending), so diagnostics are reproducible.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::colouring::{Colour, ListAssignment, ListTarget};
use crate::graph::{Edge, MultiGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// Colouring does not cover the graph.
    Shape,
    Adjacency,
    Frugality,
    Separation,
    FaceRainbow,
    ListMembership,
}

/// A counterexample to a colouring property.
///
/// * `Adjacency`: `vertices = [u, v]` adjacent via `edges = [e]`, same colour.
/// * `Frugality` (vertex): `vertices = [v, w1, .., wk+1]`, neighbours of `v` sharing `colours[0]`.
/// * `Frugality` (edge): `vertices = [v]`, `edges` = the k+1 incident edges of `colours[0]`.
/// * `Separation`: `vertices = [u, v]`, `colours = [f(u), f(v), required gap, distance]`.
/// * `FaceRainbow`: `vertices = [u, v]` in constraint set `edges = [set index]`.
/// * `ListMembership`: the item in `vertices` or `edges`, its colour in `colours`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub colours: Vec<Colour>,
}

impl Violation {
    fn new(kind: ViolationKind, vertices: Vec<Vertex>, edges: Vec<Edge>, colours: Vec<Colour>) -> Self {
        Violation { kind, vertices, edges, colours }
    }

    fn shape(expected: usize, found: usize) -> Self {
        Violation::new(ViolationKind::Shape, vec![], vec![], vec![expected as Colour, found as Colour])
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{:?} violation: vertices {:?}, edges {:?}, colours {:?}",
            self.kind, self.vertices, self.edges, self.colours
        )
    }
}

pub type Verdict = Result<(), Violation>;

fn check_shape(items: usize, colouring: &[Colour]) -> Verdict {
    if colouring.len() == items {
        Ok(())
    } else {
        Err(Violation::shape(items, colouring.len()))
    }
}

/// Proper on the underlying simple graph.
pub fn validate_proper(g: &MultiGraph, c: &[Colour]) -> Verdict {
    check_shape(g.vertex_count(), c)?;
    for e in g.edges() {
        let (u, v) = g.endpoints(e);
        if c[u] == c[v] {
            return Err(Violation::new(ViolationKind::Adjacency, vec![u, v], vec![e], vec![c[u]]));
        }
    }
    Ok(())
}

/// Proper, and no colour on more than `k` distinct neighbours of any vertex.
pub fn validate_frugal_vertex(g: &MultiGraph, k: usize, c: &[Colour]) -> Verdict {
    validate_proper(g, c)?;
    for v in g.vertices() {
        let mut by_colour: BTreeMap<Colour, Vec<Vertex>> = BTreeMap::new();
        for w in g.neighbours(v) {
            by_colour.entry(c[w]).or_default().push(w);
        }
        if let Some((&colour, ws)) = by_colour.iter().find(|(_, ws)| ws.len() > k) {
            let mut vertices = vec![v];
            vertices.extend(ws.iter().take(k + 1));
            return Err(Violation::new(ViolationKind::Frugality, vertices, vec![], vec![colour]));
        }
    }
    Ok(())
}

/// No colour on more than `k` edge incidences at any vertex. Parallel edges
/// count separately; properness is not required.
pub fn validate_frugal_edge(g: &MultiGraph, k: usize, ec: &[Colour]) -> Verdict {
    check_shape(g.edge_count(), ec)?;
    for v in g.vertices() {
        let mut by_colour: BTreeMap<Colour, Vec<Edge>> = BTreeMap::new();
        for &e in g.incident(v) {
            by_colour.entry(ec[e]).or_default().push(e);
        }
        if let Some((&colour, es)) = by_colour.iter().find(|(_, es)| es.len() > k) {
            let edges = es.iter().take(k + 1).copied().collect();
            return Err(Violation::new(ViolationKind::Frugality, vec![v], edges, vec![colour]));
        }
    }
    Ok(())
}

/// Checks an L(p,q)-labelling; on success returns the span, i.e. the largest
/// label (labels are meant to start at 1).
pub fn validate_lpq(g: &MultiGraph, p: u64, q: u64, f: &[Colour]) -> Result<Colour, Violation> {
    check_shape(g.vertex_count(), f)?;
    for u in g.vertices() {
        let dist = g.distances_from(u);
        for v in (u + 1)..g.vertex_count() {
            let (gap, d) = match dist[v] {
                Some(1) => (p, 1),
                Some(2) => (q, 2),
                _ => continue,
            };
            if f[u].abs_diff(f[v]) < gap {
                return Err(Violation::new(
                    ViolationKind::Separation,
                    vec![u, v],
                    vec![],
                    vec![f[u], f[v], gap as Colour, d],
                ));
            }
        }
    }
    Ok(f.iter().copied().max().unwrap_or(0))
}

/// Proper on `g`, and every constraint set rainbow.
pub fn validate_face_rainbow(g: &MultiGraph, sets: &[Vec<Vertex>], c: &[Colour]) -> Verdict {
    validate_proper(g, c)?;
    for (i, set) in sets.iter().enumerate() {
        let mut first: BTreeMap<Colour, Vertex> = BTreeMap::new();
        for &v in set {
            if let Some(&u) = first.get(&c[v]) {
                if u != v {
                    return Err(Violation::new(ViolationKind::FaceRainbow, vec![u, v], vec![i], vec![c[v]]));
                }
            } else {
                first.insert(c[v], v);
            }
        }
    }
    Ok(())
}

/// Every item's colour lies in its own list.
pub fn validate_lists(colouring: &[Colour], lists: &ListAssignment) -> Verdict {
    check_shape(lists.len(), colouring)?;
    for (item, colour) in colouring.iter().enumerate() {
        if !lists.list(item).contains(colour) {
            let (vertices, edges) = match lists.target {
                ListTarget::Vertices => (vec![item], vec![]),
                ListTarget::Edges => (vec![], vec![item]),
            };
            return Err(Violation::new(ViolationKind::ListMembership, vertices, edges, vec![*colour]));
        }
    }
    Ok(())
}
