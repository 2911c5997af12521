//! List k-frugal colouring of outerplanar graphs by removing reducible
//! vertices one at a time and colouring them back greedily.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::colouring::{Colour, ListAssignment, ListTarget, VertexColouring};
use crate::error::ColouringError;
use crate::graph::{is_two_connected, MultiGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reducible {
    /// Degree at most one.
    Leaf,
    /// Degree two with a degree-two neighbour.
    DegreeTwoPair,
    /// Degree two, neighbours `v`, `w` adjacent, and `v` of degree three, or of
    /// degree four with its two other neighbours adjacent.
    DegreeTwoTriangle,
    /// Degree two with few vertices at distance exactly two.
    DegreeTwoSparse,
}

/// `support` is `[t]` for a leaf (empty when isolated), `[t, partner]` for a
/// degree-two pair, and `[v, w]` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducibleWitness {
    pub vertex: Vertex,
    pub property: Reducible,
    pub support: Vec<Vertex>,
}

/// Adjacency of the alive part of a graph that shrinks and regrows.
struct Shrinking {
    adj: Vec<BTreeSet<Vertex>>,
    alive: Vec<bool>,
}

impl Shrinking {
    fn new(g: &MultiGraph) -> Self {
        Shrinking { adj: g.adjacency_sets(), alive: vec![true; g.vertex_count()] }
    }

    fn deg(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    fn alive(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.adj.len()).filter(|&v| self.alive[v])
    }

    fn remove(&mut self, v: Vertex) -> Vec<Vertex> {
        let nbrs: Vec<Vertex> = std::mem::take(&mut self.adj[v]).into_iter().collect();
        for &u in &nbrs {
            self.adj[u].remove(&v);
        }
        self.alive[v] = false;
        nbrs
    }

    fn restore(&mut self, v: Vertex, nbrs: &[Vertex]) {
        for &u in nbrs {
            self.adj[u].insert(v);
        }
        self.adj[v] = nbrs.iter().copied().collect();
        self.alive[v] = true;
    }

    fn second_ring(&self, u: Vertex) -> usize {
        let ring: BTreeSet<Vertex> = self.adj[u]
            .iter()
            .flat_map(|&v| self.adj[v].iter().copied())
            .filter(|&x| x != u && !self.adj[u].contains(&x))
            .collect();
        ring.len()
    }

    fn reducible(&self) -> Option<ReducibleWitness> {
        let witness = |vertex, property, support| Some(ReducibleWitness { vertex, property, support });
        for u in self.alive() {
            if self.deg(u) <= 1 {
                return witness(u, Reducible::Leaf, self.adj[u].iter().copied().collect());
            }
        }
        for u in self.alive().filter(|&u| self.deg(u) == 2) {
            let ns: Vec<Vertex> = self.adj[u].iter().copied().collect();
            for (a, b) in [(ns[0], ns[1]), (ns[1], ns[0])] {
                if self.deg(a) == 2 {
                    return witness(u, Reducible::DegreeTwoPair, vec![b, a]);
                }
            }
        }
        for u in self.alive().filter(|&u| self.deg(u) == 2) {
            let ns: Vec<Vertex> = self.adj[u].iter().copied().collect();
            if !self.adj[ns[0]].contains(&ns[1]) {
                continue;
            }
            for (v, w) in [(ns[0], ns[1]), (ns[1], ns[0])] {
                let ok = match self.deg(v) {
                    3 => true,
                    4 => {
                        let others: Vec<Vertex> =
                            self.adj[v].iter().copied().filter(|&x| x != u && x != w).collect();
                        self.adj[others[0]].contains(&others[1])
                    }
                    _ => false,
                };
                if ok {
                    return witness(u, Reducible::DegreeTwoTriangle, vec![v, w]);
                }
            }
        }
        None
    }

    fn sparse_degree2(&self, bound: usize) -> Option<ReducibleWitness> {
        self.alive().find(|&u| self.deg(u) == 2 && self.second_ring(u) <= bound).map(|u| {
            ReducibleWitness {
                vertex: u,
                property: Reducible::DegreeTwoSparse,
                support: self.adj[u].iter().copied().collect(),
            }
        })
    }

    /// Smallest list colour avoiding neighbour colours and colours already
    /// used `k` times around a neighbour.
    fn extend(&self, colour: &[Option<Colour>], v: Vertex, k: usize, list: &BTreeSet<Colour>) -> Option<Colour> {
        let mut forbidden = BTreeSet::new();
        for &u in &self.adj[v] {
            forbidden.extend(colour[u]);
            let mut seen = std::collections::BTreeMap::new();
            for c in self.adj[u].iter().filter(|&&w| w != v).filter_map(|&w| colour[w]) {
                *seen.entry(c).or_insert(0) += 1;
            }
            forbidden.extend(seen.into_iter().filter(|&(_, n)| n >= k).map(|(c, _)| c));
        }
        list.iter().copied().find(|c| !forbidden.contains(c))
    }
}

/// First reducible vertex: lowest property, then lowest index. Every
/// outerplanar graph has one.
pub fn find_reducible_vertex(g: &MultiGraph) -> Result<ReducibleWitness, ColouringError> {
    if !g.is_simple() {
        return Err(ColouringError::NotSimple);
    }
    Shrinking::new(g).reducible().ok_or(ColouringError::NotReducible)
}

/// Lowest-index degree-two vertex with at most `bound` vertices at distance two.
pub fn find_light_degree2(g: &MultiGraph, bound: usize) -> Result<ReducibleWitness, ColouringError> {
    if !g.is_simple() {
        return Err(ColouringError::NotSimple);
    }
    Shrinking::new(g).sparse_degree2(bound).ok_or(ColouringError::NoLightDegree2 { bound })
}

fn check_lists(g: &MultiGraph, lists: &ListAssignment, required: usize) -> Result<(), ColouringError> {
    if lists.target != ListTarget::Vertices || lists.len() != g.vertex_count() {
        return Err(ColouringError::ListShape);
    }
    match (0..lists.len()).find(|&v| lists.list(v).len() < required) {
        Some(item) => Err(ColouringError::ListTooSmall { item, size: lists.list(item).len(), required }),
        None => Ok(()),
    }
}

/// Guaranteed list size for outerplanar graphs: `⌊(Δ−1)/k⌋ + 3`.
pub fn outerplanar_list_size(max_degree: usize, k: usize) -> usize {
    max_degree.saturating_sub(1) / k + 3
}

/// Guaranteed list size for 2-connected outerplanar graphs: `⌊(Δ−2)/k⌋ + 3`.
pub fn outerplanar_2connected_list_size(max_degree: usize, k: usize) -> usize {
    max_degree.saturating_sub(2) / k + 3
}

/// k-frugal list colouring of an outerplanar graph, for `k ≥ 2` and `Δ ≥ 3`.
pub fn colour_outerplanar(
    g: &MultiGraph,
    k: usize,
    lists: &ListAssignment,
) -> Result<VertexColouring, ColouringError> {
    if k < 2 {
        return Err(ColouringError::BadFrugality { k, min: 2 });
    }
    if !g.is_simple() {
        return Err(ColouringError::NotSimple);
    }
    if g.max_degree() < 3 {
        return Err(ColouringError::DegreeTooSmall { required: 3, found: g.max_degree() });
    }
    check_lists(g, lists, outerplanar_list_size(g.max_degree(), k))?;

    let n = g.vertex_count();
    let mut h = Shrinking::new(g);
    let mut removed = Vec::with_capacity(n);
    for _ in 0..n {
        let w = h.reducible().ok_or(ColouringError::NotReducible)?;
        let nbrs = h.remove(w.vertex);
        removed.push((w.vertex, nbrs));
    }
    let mut colour = vec![None; n];
    for (u, nbrs) in removed.into_iter().rev() {
        h.restore(u, &nbrs);
        colour[u] = Some(h.extend(&colour, u, k, lists.list(u)).ok_or(ColouringError::ExtensionFailed(u))?);
    }
    Ok(colour.into_iter().map(Option::unwrap).collect())
}

/// k-frugal list colouring of a 2-connected outerplanar graph with `Δ ≥ 7`.
///
/// Removes a degree-two vertex `u` with at most `Δ−2` vertices at distance two,
/// joining its neighbours if they are not adjacent, until two vertices remain.
pub fn colour_outerplanar_2connected(
    g: &MultiGraph,
    k: usize,
    lists: &ListAssignment,
) -> Result<VertexColouring, ColouringError> {
    if k < 1 {
        return Err(ColouringError::BadFrugality { k, min: 1 });
    }
    if !g.is_simple() {
        return Err(ColouringError::NotSimple);
    }
    let delta = g.max_degree();
    if delta < 7 {
        return Err(ColouringError::DegreeTooSmall { required: 7, found: delta });
    }
    if !is_two_connected(g) {
        return Err(ColouringError::NotTwoConnected);
    }
    check_lists(g, lists, outerplanar_2connected_list_size(delta, k))?;

    let n = g.vertex_count();
    let bound = delta - 2;
    let mut h = Shrinking::new(g);
    let mut removed = Vec::new();
    for _ in 2..n {
        let w = h.sparse_degree2(bound).ok_or(ColouringError::NoLightDegree2 { bound })?;
        let (v, x) = (w.support[0], w.support[1]);
        let joined = h.adj[v].insert(x);
        h.adj[x].insert(v);
        let nbrs = h.remove(w.vertex);
        removed.push((w.vertex, nbrs, joined.then_some((v, x))));
    }
    let mut colour = vec![None; n];
    let base: Vec<Vertex> = h.alive().collect();
    for &u in &base {
        colour[u] = Some(h.extend(&colour, u, k, lists.list(u)).ok_or(ColouringError::ExtensionFailed(u))?);
    }
    for (u, nbrs, joined) in removed.into_iter().rev() {
        if let Some((v, x)) = joined {
            h.adj[v].remove(&x);
            h.adj[x].remove(&v);
        }
        h.restore(u, &nbrs);
        colour[u] = Some(h.extend(&colour, u, k, lists.list(u)).ok_or(ColouringError::ExtensionFailed(u))?);
    }
    Ok(colour.into_iter().map(Option::unwrap).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::colour_count;
    use crate::validate::{validate_frugal_vertex, validate_lists};

    fn fan(path: usize) -> MultiGraph {
        let apex = path;
        let mut edges: Vec<_> = (0..path - 1).map(|i| (i, i + 1)).collect();
        edges.extend((0..path).map(|i| (i, apex)));
        MultiGraph::from_edges(path + 1, &edges).unwrap()
    }

    fn cycle(n: usize) -> MultiGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        MultiGraph::from_edges(n, &edges).unwrap()
    }

    fn uniform(g: &MultiGraph, size: usize) -> ListAssignment {
        ListAssignment::uniform(ListTarget::Vertices, g.vertex_count(), 1, size)
    }

    #[test]
    fn reducible_examples() {
        let p3 = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let w = find_reducible_vertex(&p3).unwrap();
        assert_eq!((w.vertex, w.property, w.support), (0, Reducible::Leaf, vec![1]));
        let w = find_reducible_vertex(&cycle(5)).unwrap();
        assert_eq!((w.vertex, w.property), (0, Reducible::DegreeTwoPair));
        let w = find_reducible_vertex(&fan(4)).unwrap();
        assert_eq!((w.vertex, w.property, w.support), (0, Reducible::DegreeTwoTriangle, vec![1, 4]));
        let k4 = MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(find_reducible_vertex(&k4), Err(ColouringError::NotReducible));
    }

    #[test]
    fn outerplanar_examples() {
        let star = MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let lists = uniform(&star, 4);
        let c = colour_outerplanar(&star, 2, &lists).unwrap();
        assert!(validate_frugal_vertex(&star, 2, &c).is_ok() && validate_lists(&c, &lists).is_ok());

        let g = fan(9);
        let size = outerplanar_list_size(g.max_degree(), 2);
        let lists = uniform(&g, size);
        let c = colour_outerplanar(&g, 2, &lists).unwrap();
        assert!(validate_frugal_vertex(&g, 2, &c).is_ok());
        assert!(colour_count(&c) <= size);

        assert!(matches!(
            colour_outerplanar(&cycle(3), 2, &uniform(&cycle(3), 5)),
            Err(ColouringError::DegreeTooSmall { required: 3, found: 2 })
        ));
        assert!(matches!(colour_outerplanar(&g, 1, &lists), Err(ColouringError::BadFrugality { .. })));
        assert!(matches!(colour_outerplanar(&g, 2, &uniform(&g, 2)), Err(ColouringError::ListTooSmall { .. })));
    }

    #[test]
    fn two_connected_examples() {
        // C8 with chords from vertex 0 to every vertex: a fan, degree 7 at 0
        let mut edges: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        edges.extend((2..7).map(|i| (0, i)));
        let g = MultiGraph::from_edges(8, &edges).unwrap();
        assert_eq!(g.max_degree(), 7);
        let lists = uniform(&g, outerplanar_2connected_list_size(7, 3));
        assert_eq!(lists.min_size(), 4);
        let c = colour_outerplanar_2connected(&g, 3, &lists).unwrap();
        assert!(validate_frugal_vertex(&g, 3, &c).is_ok() && validate_lists(&c, &lists).is_ok());

        let lists = uniform(&g, outerplanar_2connected_list_size(7, 1));
        let c = colour_outerplanar_2connected(&g, 1, &lists).unwrap();
        assert!(validate_frugal_vertex(&g, 1, &c).is_ok());

        let mut cut = fan(8);
        let extra = cut.add_vertex();
        cut.add_edge(0, extra).unwrap();
        let lists = uniform(&cut, 10);
        assert_eq!(colour_outerplanar_2connected(&cut, 1, &lists), Err(ColouringError::NotTwoConnected));
    }
}
