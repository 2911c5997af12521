//! Colouring the square of a plane graph class by class, starting from a
//! k-frugal colouring.
//!
//! Inside one colour class `C`, two vertices are at distance two in the square
//! exactly when they share a neighbour outside `C`. Each outside vertex with
//! two neighbours in `C` contributes an edge; one with three or more
//! contributes a special set, listed in rotation order around it, whose members
//! must all get different colours. Frugality caps every special set at `k`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::colouring::{colour_classes, colour_count, Colour, VertexColouring};
use crate::embedding::RotationSystem;
use crate::error::ColouringError;
use crate::exact::exact_rainbow_face_chromatic;
use crate::graph::{MultiGraph, Vertex};
use crate::validate::validate_frugal_vertex;

#[derive(Debug, Clone)]
pub struct ClassConstraintGraph {
    pub class: Colour,
    /// Members of the class; local vertex `i` is `members[i]`.
    pub members: Vec<Vertex>,
    /// Simple graph on local indices.
    pub graph: MultiGraph,
    /// Special sets on local indices, each in cyclic order, of size 3..=k.
    pub special: Vec<Vec<Vertex>>,
}

fn check_rotation(g: &MultiGraph, rot: &RotationSystem) -> Result<(), ColouringError> {
    RotationSystem::new(g, rot.orders().to_vec())?;
    Ok(())
}

fn build_unchecked(g: &MultiGraph, rot: &RotationSystem, c: &[Colour], class: Colour) -> ClassConstraintGraph {
    let members: Vec<Vertex> = g.vertices().filter(|&v| c[v] == class).collect();
    let mut local = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in members.iter().enumerate() {
        local[v] = i;
    }
    let mut pairs: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let mut special: Vec<Vec<Vertex>> = Vec::new();
    let mut seen_sets: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    let mut add_pair = |a: Vertex, b: Vertex| {
        pairs.insert((a.min(b), a.max(b)));
    };
    for e in g.edges() {
        let (a, b) = g.endpoints(e);
        if c[a] == class && c[b] == class {
            add_pair(local[a], local[b]);
        }
    }
    for v in g.vertices().filter(|&v| c[v] != class) {
        let mut ring: Vec<Vertex> = Vec::new();
        for &e in rot.around(v) {
            let x = g.opposite(e, v);
            if c[x] == class && !ring.contains(&local[x]) {
                ring.push(local[x]);
            }
        }
        match ring.len() {
            0 | 1 => {}
            2 => add_pair(ring[0], ring[1]),
            len => {
                for i in 0..len {
                    add_pair(ring[i], ring[(i + 1) % len]);
                }
                let mut key = ring.clone();
                key.sort_unstable();
                if seen_sets.insert(key) {
                    special.push(ring);
                }
            }
        }
    }
    let edges: Vec<(Vertex, Vertex)> = pairs.into_iter().collect();
    let graph = MultiGraph::from_edges(members.len(), &edges).expect("distinct local endpoints");
    ClassConstraintGraph { class, members, graph, special }
}

/// Constraint graph of colour class `class` of a k-frugal colouring.
pub fn build_class_constraint_graph(
    g: &MultiGraph,
    rot: &RotationSystem,
    c: &[Colour],
    class: Colour,
    k: usize,
) -> Result<ClassConstraintGraph, ColouringError> {
    validate_frugal_vertex(g, k, c).map_err(|_| ColouringError::InvalidColouring { k })?;
    check_rotation(g, rot)?;
    Ok(build_unchecked(g, rot, c, class))
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassReport {
    pub class: Colour,
    pub size: usize,
    pub special_sets: usize,
    pub largest_special_set: usize,
    pub colours: usize,
    /// Colours beyond `⌈3k/2⌉` were needed.
    pub over_budget: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SquareColouring {
    pub colouring: VertexColouring,
    pub classes: Vec<ClassReport>,
    pub total_colours: usize,
    pub frugal_colours: usize,
    /// `(3/2)·k·t` for `t` frugal colours.
    pub product_bound: usize,
}

/// Proper colouring of the square of `g`: each class is coloured optimally
/// (proper on its constraint graph, special sets rainbow) from its own palette.
pub fn colour_square_via_classes(
    g: &MultiGraph,
    rot: &RotationSystem,
    k: usize,
    frugal: &[Colour],
    node_budget: u64,
) -> Result<SquareColouring, ColouringError> {
    if k < 4 {
        return Err(ColouringError::BadFrugality { k, min: 4 });
    }
    if k % 2 == 1 {
        return Err(ColouringError::OddK(k));
    }
    validate_frugal_vertex(g, k, frugal).map_err(|_| ColouringError::InvalidColouring { k })?;
    check_rotation(g, rot)?;
    let budget = (3 * k).div_ceil(2);
    let mut colouring: VertexColouring = vec![0; g.vertex_count()];
    let mut offset: Colour = 0;
    let mut classes = Vec::new();
    for (class, _) in colour_classes(frugal) {
        let ccg = build_unchecked(g, rot, frugal, class);
        let size = ccg.members.len();
        let result = exact_rainbow_face_chromatic(&ccg.graph, &ccg.special, size, node_budget)
            .map_err(|source| ColouringError::ClassColouringBudgetExhausted { class, source })?;
        for (i, &v) in ccg.members.iter().enumerate() {
            colouring[v] = offset + result.witness[i];
        }
        offset += result.optimum as Colour;
        classes.push(ClassReport {
            class,
            size,
            special_sets: ccg.special.len(),
            largest_special_set: ccg.special.iter().map(Vec::len).max().unwrap_or(0),
            colours: result.optimum,
            over_budget: result.optimum > budget,
        });
    }
    let t = colour_count(frugal);
    Ok(SquareColouring {
        total_colours: colour_count(&colouring),
        colouring,
        classes,
        frugal_colours: t,
        product_bound: 3 * k * t / 2,
    })
}
