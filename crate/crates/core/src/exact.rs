//! Exact optimisation by backtracking, for small instances.
//!
//! Every problem is phrased as assigning a colour index to each item (vertex or
//! edge) under local constraints. The search picks the unassigned item with the
//! fewest admissible colours (ties: higher degree, then lower index) and tries
//! colours in ascending order. When the palette is interchangeable, only one
//! unused colour is ever tried. Optima are found by deciding `c = lb, lb+1, ..`
//! so each reported optimum comes with an exhaustive refutation of `optimum - 1`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::colouring::{Colour, ListAssignment};
use crate::error::ExactError;
use crate::graph::{square, MultiGraph, Vertex};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub optimum: usize,
    pub witness: Vec<Colour>,
    pub nodes: u64,
}

trait Model {
    fn items(&self) -> usize;
    /// Admissible colour indices for `item`, before constraint checks.
    fn domain(&self, item: usize) -> &[usize];
    fn allowed(&self, item: usize, colour: usize) -> bool;
    fn assign(&mut self, item: usize, colour: usize);
    fn unassign(&mut self, item: usize, colour: usize);
    fn priority(&self, item: usize) -> usize;
    /// Cheap global infeasibility test on the current partial assignment.
    fn dead_end(&self) -> bool {
        false
    }
}

enum Outcome {
    Found(Vec<usize>),
    Refuted,
    OutOfBudget,
}

struct Search<'a, M: Model> {
    model: &'a mut M,
    symmetric: bool,
    assigned: Vec<Option<usize>>,
    nodes: &'a mut u64,
    budget: u64,
}

impl<M: Model> Search<'_, M> {
    fn candidates(&self, item: usize, used: usize) -> Vec<usize> {
        self.model
            .domain(item)
            .iter()
            .copied()
            .filter(|&c| !self.symmetric || c <= used)
            .filter(|&c| self.model.allowed(item, c))
            .collect()
    }

    /// `used` = number of distinct colours in use (symmetric palettes only).
    fn run(&mut self, remaining: usize, used: usize) -> Outcome {
        if remaining == 0 {
            return Outcome::Found(self.assigned.iter().map(|c| c.unwrap()).collect());
        }
        if self.model.dead_end() {
            return Outcome::Refuted;
        }
        let mut best: Option<(usize, Vec<usize>)> = None;
        for item in 0..self.model.items() {
            if self.assigned[item].is_some() {
                continue;
            }
            let cands = self.candidates(item, used);
            if cands.is_empty() {
                return Outcome::Refuted;
            }
            let better = match &best {
                None => true,
                Some((b, bc)) => {
                    cands.len() < bc.len()
                        || (cands.len() == bc.len()
                            && self.model.priority(item) > self.model.priority(*b))
                }
            };
            if better {
                best = Some((item, cands));
            }
        }
        let (item, cands) = best.expect("an unassigned item exists");
        for c in cands {
            *self.nodes += 1;
            if *self.nodes > self.budget {
                return Outcome::OutOfBudget;
            }
            self.assigned[item] = Some(c);
            self.model.assign(item, c);
            let outcome = self.run(remaining - 1, used.max(c + 1));
            self.model.unassign(item, c);
            self.assigned[item] = None;
            match outcome {
                Outcome::Refuted => {}
                other => return other,
            }
        }
        Outcome::Refuted
    }
}

fn solve<M: Model>(model: &mut M, symmetric: bool, budget: u64, nodes: &mut u64) -> Outcome {
    let items = model.items();
    let mut search = Search { model, symmetric, assigned: vec![None; items], nodes, budget };
    search.run(items, 0)
}

/// Decides `lower, lower+1, ..., max` in turn.
fn minimise<M: Model>(
    lower: usize,
    max: usize,
    budget: u64,
    symmetric: bool,
    mut build: impl FnMut(usize) -> M,
    to_colour: impl Fn(usize) -> Colour,
) -> Result<ExactResult, ExactError> {
    let mut nodes = 0;
    for c in lower..=max {
        let mut model = build(c);
        match solve(&mut model, symmetric, budget, &mut nodes) {
            Outcome::Found(w) => {
                return Ok(ExactResult {
                    optimum: c,
                    witness: w.into_iter().map(&to_colour).collect(),
                    nodes,
                })
            }
            Outcome::Refuted => {}
            Outcome::OutOfBudget => {
                return Err(ExactError::BudgetExhausted { budget, lower_bound: c })
            }
        }
    }
    Err(ExactError::Infeasible { max })
}

/// Vertex colouring with per-vertex neighbour frugality.
struct VertexFrugal {
    neighbours: Vec<Vec<Vertex>>,
    k: usize,
    domains: Vec<Vec<usize>>,
    colour: Vec<Option<usize>>,
    // count[v][c] = coloured neighbours of v with colour c
    count: Vec<Vec<usize>>,
}

impl VertexFrugal {
    fn new(g: &MultiGraph, k: usize, domains: Vec<Vec<usize>>, palette: usize) -> Self {
        let n = g.vertex_count();
        VertexFrugal {
            neighbours: g.vertices().map(|v| g.neighbours(v)).collect(),
            k,
            domains,
            colour: vec![None; n],
            count: vec![vec![0; palette]; n],
        }
    }
}

impl Model for VertexFrugal {
    fn items(&self) -> usize {
        self.neighbours.len()
    }
    fn domain(&self, item: usize) -> &[usize] {
        &self.domains[item]
    }
    fn allowed(&self, v: usize, c: usize) -> bool {
        self.neighbours[v]
            .iter()
            .all(|&w| self.colour[w] != Some(c) && self.count[w][c] < self.k)
    }
    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = Some(c);
        for &w in &self.neighbours[v] {
            self.count[w][c] += 1;
        }
    }
    fn unassign(&mut self, v: usize, c: usize) {
        self.colour[v] = None;
        for &w in &self.neighbours[v] {
            self.count[w][c] -= 1;
        }
    }
    fn priority(&self, v: usize) -> usize {
        self.neighbours[v].len()
    }
}

/// Edge colouring with per-vertex incidence frugality.
struct EdgeFrugal {
    ends: Vec<(Vertex, Vertex)>,
    k: usize,
    domains: Vec<Vec<usize>>,
    palette: usize,
    // count[v][c] = incident edges of v coloured c; open[v] = uncoloured incident edges
    count: Vec<Vec<usize>>,
    open: Vec<usize>,
    open_edges: usize,
    degree: Vec<usize>,
}

impl EdgeFrugal {
    fn new(g: &MultiGraph, k: usize, domains: Vec<Vec<usize>>, palette: usize) -> Self {
        let n = g.vertex_count();
        let degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        EdgeFrugal {
            ends: g.edges().map(|e| g.endpoints(e)).collect(),
            k,
            domains,
            palette,
            count: vec![vec![0; palette]; n],
            open: degree.clone(),
            open_edges: g.edge_count(),
            degree,
        }
    }
}

impl Model for EdgeFrugal {
    fn items(&self) -> usize {
        self.ends.len()
    }
    fn domain(&self, item: usize) -> &[usize] {
        &self.domains[item]
    }
    fn allowed(&self, e: usize, c: usize) -> bool {
        let (u, v) = self.ends[e];
        self.count[u][c] < self.k && self.count[v][c] < self.k
    }
    fn assign(&mut self, e: usize, c: usize) {
        let (u, v) = self.ends[e];
        self.count[u][c] += 1;
        self.count[v][c] += 1;
        self.open[u] -= 1;
        self.open[v] -= 1;
        self.open_edges -= 1;
    }
    fn unassign(&mut self, e: usize, c: usize) {
        let (u, v) = self.ends[e];
        self.count[u][c] -= 1;
        self.count[v][c] -= 1;
        self.open[u] += 1;
        self.open[v] += 1;
        self.open_edges += 1;
    }
    fn priority(&self, e: usize) -> usize {
        let (u, v) = self.ends[e];
        self.degree[u] + self.degree[v]
    }
    fn dead_end(&self) -> bool {
        // each further edge of colour c uses two units of spare capacity
        // at vertices that still have open edges
        let mut fit = 0;
        for c in 0..self.palette {
            let spare: usize = (0..self.open.len())
                .map(|v| (self.k - self.count[v][c]).min(self.open[v]))
                .sum();
            fit += spare / 2;
        }
        fit < self.open_edges
    }
}

/// Labels `1..=t` with separation constraints at distance one and two.
struct Separation {
    near: Vec<Vec<Vertex>>,
    far: Vec<Vec<Vertex>>,
    p: usize,
    q: usize,
    domain: Vec<usize>,
    label: Vec<Option<usize>>,
}

impl Model for Separation {
    fn items(&self) -> usize {
        self.near.len()
    }
    fn domain(&self, _: usize) -> &[usize] {
        &self.domain
    }
    fn allowed(&self, v: usize, c: usize) -> bool {
        let ok = |ws: &[Vertex], gap: usize| {
            ws.iter().all(|&w| self.label[w].is_none_or(|l| l.abs_diff(c) >= gap))
        };
        ok(&self.near[v], self.p) && ok(&self.far[v], self.q)
    }
    fn assign(&mut self, v: usize, c: usize) {
        self.label[v] = Some(c);
    }
    fn unassign(&mut self, v: usize, _: usize) {
        self.label[v] = None;
    }
    fn priority(&self, v: usize) -> usize {
        self.near[v].len() + self.far[v].len()
    }
}

/// Proper colouring of a conflict graph given as adjacency lists.
struct Conflict {
    adjacent: Vec<Vec<Vertex>>,
    domain: Vec<usize>,
    colour: Vec<Option<usize>>,
}

impl Model for Conflict {
    fn items(&self) -> usize {
        self.adjacent.len()
    }
    fn domain(&self, _: usize) -> &[usize] {
        &self.domain
    }
    fn allowed(&self, v: usize, c: usize) -> bool {
        self.adjacent[v].iter().all(|&w| self.colour[w] != Some(c))
    }
    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = Some(c);
    }
    fn unassign(&mut self, v: usize, _: usize) {
        self.colour[v] = None;
    }
    fn priority(&self, v: usize) -> usize {
        self.adjacent[v].len()
    }
}

/// Size of a greedily grown clique, trying every vertex as a seed.
fn greedy_clique(adjacent: &[BTreeSet<Vertex>]) -> usize {
    let mut best = usize::from(!adjacent.is_empty());
    for s in 0..adjacent.len() {
        let mut cands: Vec<Vertex> = adjacent[s].iter().copied().collect();
        cands.sort_by_key(|&v| std::cmp::Reverse(adjacent[v].len()));
        let mut clique = vec![s];
        for v in cands {
            if clique.iter().all(|u| adjacent[v].contains(u)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

fn frugal_lower_bound(g: &MultiGraph, k: usize) -> usize {
    if g.vertex_count() == 0 {
        return 0;
    }
    let max_nbrs = g.vertices().map(|v| g.neighbours(v).len()).max().unwrap_or(0);
    let mut lb = 1;
    if max_nbrs > 0 {
        lb = lb.max(max_nbrs.div_ceil(k) + 1);
    }
    if k == 1 {
        lb = lb.max(greedy_clique(&square(g).adjacency_sets()));
    }
    lb
}

/// The k-frugal chromatic number, searched up to `max_colours`.
pub fn exact_frugal_chromatic(
    g: &MultiGraph,
    k: usize,
    max_colours: usize,
    node_budget: u64,
) -> Result<ExactResult, ExactError> {
    assert!(k >= 1, "frugality must be positive");
    let lb = frugal_lower_bound(g, k);
    minimise(
        lb,
        max_colours,
        node_budget,
        true,
        |c| VertexFrugal::new(g, k, vec![(0..c).collect(); g.vertex_count()], c),
        |c| c as Colour + 1,
    )
}

/// The k-frugal chromatic index, searched up to `max_colours`.
pub fn exact_frugal_chromatic_index(
    g: &MultiGraph,
    k: usize,
    max_colours: usize,
    node_budget: u64,
) -> Result<ExactResult, ExactError> {
    assert!(k >= 1, "frugality must be positive");
    let lb = g.max_degree().div_ceil(k);
    minimise(
        lb,
        max_colours,
        node_budget,
        true,
        |c| EdgeFrugal::new(g, k, vec![(0..c).collect(); g.edge_count()], c),
        |c| c as Colour + 1,
    )
}

/// Smallest `t` admitting an L(p,q)-labelling with labels `1..=t`.
pub fn exact_lambda(
    g: &MultiGraph,
    p: usize,
    q: usize,
    max_label: usize,
    node_budget: u64,
) -> Result<ExactResult, ExactError> {
    let n = g.vertex_count();
    let mut near = vec![Vec::new(); n];
    let mut far = vec![Vec::new(); n];
    for u in g.vertices() {
        for (v, d) in g.distances_from(u).into_iter().enumerate() {
            match d {
                Some(1) => near[u].push(v),
                Some(2) => far[u].push(v),
                _ => {}
            }
        }
    }
    let mut lb = usize::from(n > 0);
    if g.edge_count() > 0 && p >= 1 {
        lb = lb.max(p + 1);
    }
    if p >= 1 && q >= 1 {
        lb = lb.max(g.vertices().map(|v| near[v].len() + 1).max().unwrap_or(0));
    }
    minimise(
        lb,
        max_label,
        node_budget,
        false,
        |t| Separation {
            near: near.clone(),
            far: far.clone(),
            p,
            q,
            domain: (0..t).collect(),
            label: vec![None; n],
        },
        |c| c as Colour + 1,
    )
}

/// Fewest colours for a colouring that is proper on `g` and rainbow on every set.
pub fn exact_rainbow_face_chromatic(
    g: &MultiGraph,
    sets: &[Vec<Vertex>],
    max_colours: usize,
    node_budget: u64,
) -> Result<ExactResult, ExactError> {
    let mut adjacent = g.adjacency_sets();
    for set in sets {
        for &u in set {
            for &v in set {
                if u != v {
                    adjacent[u].insert(v);
                }
            }
        }
    }
    let n = g.vertex_count();
    let mut lb = greedy_clique(&adjacent);
    if n == 0 {
        lb = 0;
    }
    let lists: Vec<Vec<Vertex>> = adjacent.iter().map(|s| s.iter().copied().collect()).collect();
    minimise(
        lb,
        max_colours,
        node_budget,
        true,
        |c| Conflict { adjacent: lists.clone(), domain: (0..c).collect(), colour: vec![None; n] },
        |c| c as Colour + 1,
    )
}

/// Dense indices for the colours appearing in a list assignment.
fn dense_lists(lists: &ListAssignment) -> (Vec<Colour>, Vec<Vec<usize>>) {
    let universe: Vec<Colour> =
        lists.lists.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<Colour, usize> = universe.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let domains = lists.lists.iter().map(|l| l.iter().map(|c| index[c]).collect()).collect();
    (universe, domains)
}

fn decide<M: Model>(mut model: M, universe: &[Colour], budget: u64) -> Result<Vec<Colour>, ExactError> {
    let mut nodes = 0;
    match solve(&mut model, false, budget, &mut nodes) {
        Outcome::Found(w) => Ok(w.into_iter().map(|i| universe[i]).collect()),
        Outcome::Refuted => Err(ExactError::Infeasible { max: universe.len() }),
        Outcome::OutOfBudget => Err(ExactError::BudgetExhausted { budget, lower_bound: 0 }),
    }
}

/// A k-frugal vertex colouring from the given lists, or an exhaustive refutation.
pub fn exact_list_frugal_decision(
    g: &MultiGraph,
    k: usize,
    lists: &ListAssignment,
    node_budget: u64,
) -> Result<Vec<Colour>, ExactError> {
    assert_eq!(lists.len(), g.vertex_count(), "one list per vertex");
    let (universe, domains) = dense_lists(lists);
    decide(VertexFrugal::new(g, k, domains, universe.len()), &universe, node_budget)
}

/// A k-frugal edge colouring from the given edge lists, or an exhaustive refutation.
pub fn exact_list_frugal_edge_decision(
    g: &MultiGraph,
    k: usize,
    lists: &ListAssignment,
    node_budget: u64,
) -> Result<Vec<Colour>, ExactError> {
    assert_eq!(lists.len(), g.edge_count(), "one list per edge");
    let (universe, domains) = dense_lists(lists);
    decide(EdgeFrugal::new(g, k, domains, universe.len()), &universe, node_budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::ListTarget;
    use crate::validate::{validate_frugal_edge, validate_frugal_vertex, validate_lpq};

    fn cycle(n: usize) -> MultiGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        MultiGraph::from_edges(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> MultiGraph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        MultiGraph::from_edges(leaves + 1, &edges).unwrap()
    }

    /// Every colouring of `n` items with colours `1..=c`.
    fn all_colourings(n: usize, c: usize) -> impl Iterator<Item = Vec<Colour>> {
        (0..(c as u64).pow(n as u32)).map(move |mut code| {
            (0..n)
                .map(|_| {
                    let x = (code % c as u64) as Colour + 1;
                    code /= c as u64;
                    x
                })
                .collect()
        })
    }

    fn brute_force_chi_k(g: &MultiGraph, k: usize) -> usize {
        (1..=g.vertex_count())
            .find(|&c| {
                all_colourings(g.vertex_count(), c).any(|col| validate_frugal_vertex(g, k, &col).is_ok())
            })
            .unwrap()
    }

    #[test]
    fn frugal_chromatic_anchors() {
        let r = exact_frugal_chromatic(&cycle(5), 1, 10, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.optimum, 5);
        assert!(validate_frugal_vertex(&cycle(5), 1, &r.witness).is_ok());
        let r = exact_frugal_chromatic(&star(6), 3, 10, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.optimum, 3);
        assert_eq!(brute_force_chi_k(&star(6), 3), 3);
    }

    #[test]
    fn frugal_chromatic_matches_brute_force() {
        let graphs = [
            cycle(6),
            star(5),
            MultiGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap(),
            MultiGraph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (4, 5)]).unwrap(),
        ];
        for g in &graphs {
            for k in 1..=3 {
                let r = exact_frugal_chromatic(g, k, 10, DEFAULT_NODE_BUDGET).unwrap();
                assert_eq!(r.optimum, brute_force_chi_k(g, k), "k={k}");
            }
        }
    }

    #[test]
    fn frugal_index_examples() {
        let t4 = MultiGraph::from_edges(
            3,
            &[(0, 1), (0, 1), (0, 1), (0, 1), (1, 2), (1, 2), (1, 2), (1, 2), (0, 2), (0, 2), (0, 2), (0, 2)],
        )
        .unwrap();
        let r = exact_frugal_chromatic_index(&t4, 3, 20, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.optimum, 3);
        assert!(validate_frugal_edge(&t4, 3, &r.witness).is_ok());
        assert_eq!(exact_frugal_chromatic_index(&cycle(5), 2, 5, DEFAULT_NODE_BUDGET).unwrap().optimum, 1);
        let t2 = MultiGraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)]).unwrap();
        // all six edges pairwise share an endpoint, so a proper colouring needs six colours
        let brute = (1..=6)
            .find(|&c| all_colourings(6, c).any(|col| validate_frugal_edge(&t2, 1, &col).is_ok()))
            .unwrap();
        assert_eq!(brute, 6);
        assert_eq!(exact_frugal_chromatic_index(&t2, 1, 10, DEFAULT_NODE_BUDGET).unwrap().optimum, 6);
    }

    #[test]
    fn lambda_examples() {
        let k2 = MultiGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(exact_lambda(&k2, 2, 1, 10, DEFAULT_NODE_BUDGET).unwrap().optimum, 3);
        assert_eq!(exact_lambda(&cycle(5), 1, 1, 10, DEFAULT_NODE_BUDGET).unwrap().optimum, 5);
        let p3 = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = exact_lambda(&p3, 2, 1, 10, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.optimum, 4);
        assert_eq!(validate_lpq(&p3, 2, 1, &r.witness), Ok(4));
        let brute = (1..=6)
            .find(|&t| all_colourings(3, t).any(|f| validate_lpq(&p3, 2, 1, &f).is_ok()))
            .unwrap();
        assert_eq!(brute, 4);
    }

    #[test]
    fn rainbow_examples() {
        assert_eq!(exact_rainbow_face_chromatic(&cycle(3), &[vec![0, 1, 2]], 5, 1000).unwrap().optimum, 3);
        assert_eq!(exact_rainbow_face_chromatic(&cycle(4), &[vec![0, 1, 2, 3]], 5, 1000).unwrap().optimum, 4);
        assert_eq!(exact_rainbow_face_chromatic(&cycle(4), &[], 5, 1000).unwrap().optimum, 2);
    }

    #[test]
    fn list_decisions() {
        let k2 = MultiGraph::from_edges(2, &[(0, 1)]).unwrap();
        let lists = ListAssignment::uniform(ListTarget::Vertices, 2, 1, 2);
        assert_eq!(exact_list_frugal_decision(&k2, 1, &lists, 1000).unwrap(), vec![1, 2]);
        let ones = ListAssignment::uniform(ListTarget::Vertices, 2, 1, 1);
        assert!(matches!(exact_list_frugal_decision(&k2, 1, &ones, 1000), Err(ExactError::Infeasible { .. })));
        let lists = ListAssignment::uniform(ListTarget::Vertices, 5, 1, 3);
        let w = exact_list_frugal_decision(&star(4), 2, &lists, 1000).unwrap();
        assert!(validate_frugal_vertex(&star(4), 2, &w).is_ok());
    }

    #[test]
    fn budget_and_cap_are_reported() {
        let r = exact_frugal_chromatic(&cycle(5), 1, 4, DEFAULT_NODE_BUDGET);
        assert_eq!(r, Err(ExactError::Infeasible { max: 4 }));
        let petersen_like = cycle(9);
        assert!(matches!(
            exact_frugal_chromatic(&petersen_like, 1, 9, 1),
            Err(ExactError::BudgetExhausted { budget: 1, .. })
        ));
    }
}
