//! k-frugal edge colouring of multigraphs.
//!
//! Both pipelines pad the multigraph to an even regular one, orient it along
//! Euler circuits, and split the bipartite lift into perfect matchings. A lift
//! matching pulls back to a 2-factor, which meets every vertex exactly twice.

mod galvin;
mod lift;
mod matching;
mod regularize;

use std::collections::{BTreeSet, HashMap};

use petgraph::algo::matching::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};

pub use galvin::{galvin_list_edge_colour, konig_edge_colouring};
pub use lift::{bipartite_lift, euler_orientation, BipartiteLift, Orientation};
pub use matching::{perfect_matching_decomposition, MatchingDecomposition};
pub use regularize::{regularize_to_degree, Regularized};

use crate::colouring::{Colour, EdgeColouring, ListAssignment, ListTarget};
use crate::error::ColouringError;
use crate::graph::{Edge, MultiGraph};
use crate::validate::validate_frugal_edge;

/// Colours needed for even `k`: `⌈Δ/k⌉`.
pub fn even_k_colours(max_degree: usize, k: usize) -> usize {
    max_degree.div_ceil(k)
}

/// Upper bound for odd `k`: `⌈3Δ/(3k−1)⌉`.
pub fn odd_k_colours(max_degree: usize, k: usize) -> usize {
    (3 * max_degree).div_ceil(3 * k - 1)
}

/// 2-factors of an even-regular multigraph together with the Euler orientation
/// they were cut from; each factor is a union of directed cycles.
fn factorize(g: &MultiGraph) -> Result<(Orientation, Vec<Vec<Edge>>), ColouringError> {
    let r = g.vertices().next().map_or(0, |v| g.degree(v));
    if r % 2 == 1 || g.vertices().any(|v| g.degree(v) != r) {
        return Err(ColouringError::NotEvenRegular);
    }
    let (orientation, lift) = bipartite_lift(g)?;
    let decomposition = perfect_matching_decomposition(&lift.graph)?;
    Ok((orientation, decomposition.matchings))
}

/// Partition of an even-regular multigraph into spanning 2-regular subgraphs.
pub fn two_factor_decomposition(g: &MultiGraph) -> Result<Vec<Vec<Edge>>, ColouringError> {
    Ok(factorize(g)?.1)
}

fn self_check(g: &MultiGraph, k: usize, colouring: EdgeColouring) -> Result<EdgeColouring, ColouringError> {
    match validate_frugal_edge(g, k, &colouring) {
        Ok(()) => Ok(colouring),
        Err(_) => Err(ColouringError::InvalidColouring { k }),
    }
}

/// k-frugal edge colouring for even `k` with colours `1..=⌈Δ/k⌉`, or from the
/// given edge lists of at least that size.
pub fn colour_edges_even_k(
    g: &MultiGraph,
    k: usize,
    lists: Option<&ListAssignment>,
) -> Result<EdgeColouring, ColouringError> {
    if k == 0 {
        return Err(ColouringError::BadFrugality { k, min: 2 });
    }
    if k % 2 == 1 {
        return Err(ColouringError::OddK(k));
    }
    let t = even_k_colours(g.max_degree(), k);
    if let Some(lists) = lists {
        if lists.target != ListTarget::Edges || lists.len() != g.edge_count() {
            return Err(ColouringError::ListShape);
        }
        if let Some(item) = (0..lists.len()).find(|&e| lists.list(e).len() < t) {
            return Err(ColouringError::ListTooSmall { item, size: lists.list(item).len(), required: t });
        }
    }
    if g.edge_count() == 0 {
        return Ok(Vec::new());
    }
    let reg = regularize_to_degree(g, k * t)?;
    let (_, lift) = bipartite_lift(&reg.graph)?;
    let matchings = perfect_matching_decomposition(&lift.graph)?.matchings;
    let mut colour: Vec<Colour> = vec![0; reg.graph.edge_count()];
    // k/2 groups of t matchings; a colour class meets a vertex at most twice per group
    for group in matchings.chunks(t) {
        match lists {
            None => {
                for (j, m) in group.iter().enumerate() {
                    for &e in m {
                        colour[e] = j as Colour + 1;
                    }
                }
            }
            Some(lists) => {
                let edges: Vec<Edge> = group.concat();
                let seed: Vec<usize> =
                    group.iter().enumerate().flat_map(|(j, m)| std::iter::repeat_n(j, m.len())).collect();
                let sub = lift.graph.edge_subgraph(&edges);
                let left: Vec<bool> = sub.vertices().map(|x| lift.is_tail_side(x)).collect();
                let padding: BTreeSet<Colour> = (1..=t as Colour).collect();
                let sub_lists: Vec<BTreeSet<Colour>> = edges
                    .iter()
                    .map(|&e| if reg.is_original(e) { lists.list(e).clone() } else { padding.clone() })
                    .collect();
                let c = galvin::galvin_with_seed(&sub, &left, &seed, &sub_lists)?;
                for (i, &e) in edges.iter().enumerate() {
                    colour[e] = c[i];
                }
            }
        }
    }
    colour.truncate(g.edge_count());
    self_check(g, k, colour)
}

/// A perfect matching of the regularized graph minus one join edge per
/// vertex, if there is one.
fn matching_avoiding(reg: &Regularized, skip: &BTreeSet<Edge>) -> Option<Vec<Edge>> {
    let h = &reg.graph;
    let mut pg: UnGraph<(), ()> = UnGraph::with_capacity(h.vertex_count(), h.edge_count());
    for _ in h.vertices() {
        pg.add_node(());
    }
    let mut by_pair: HashMap<(usize, usize), Edge> = HashMap::new();
    for e in h.edges().filter(|e| !skip.contains(e)) {
        let (a, b) = h.endpoints(e);
        let key = (a.min(b), a.max(b));
        if let std::collections::hash_map::Entry::Vacant(slot) = by_pair.entry(key) {
            slot.insert(e);
            pg.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
        }
    }
    let m = maximum_matching(&pg);
    if !m.is_perfect() {
        return None;
    }
    Some(
        m.edges()
            .map(|(a, b)| {
                let (a, b) = (a.index(), b.index());
                by_pair[&(a.min(b), a.max(b))]
            })
            .collect(),
    )
}

/// k-frugal edge colouring for odd `k` with at most `⌈3Δ/(3k−1)⌉` colours.
///
/// With `t` that bound, `k = 2ℓ+1` and `q = ⌊t/3⌋`, the multigraph is padded to
/// degree `2⌈Δ/2⌉` and split into 2-factors. Up to `ℓt` factors form groups of
/// `t`, coloured by position within the group as in the even case (at most
/// `2ℓ` per colour at a vertex). The remaining factors (at most `q`) are
/// properly coloured, factor `j` with its own slice `3j+1..=3j+3`. When
/// `t ≡ 2 (mod 3)` and `Δ` is odd this is one factor short, so a perfect
/// matching avoiding one join edge per vertex is split off first; its real
/// edges form a matching and take colour `3q+1`.
pub fn colour_edges_odd_k(g: &MultiGraph, k: usize) -> Result<EdgeColouring, ColouringError> {
    if k.is_multiple_of(2) {
        return Err(ColouringError::EvenK(k));
    }
    if g.edge_count() == 0 {
        return Ok(Vec::new());
    }
    let delta = g.max_degree();
    let t = odd_k_colours(delta, k);
    let half = (k - 1) / 2;
    let q = t / 3;
    let reg = regularize_to_degree(g, 2 * delta.div_ceil(2))?;
    let mut colour: Vec<Colour> = vec![0; reg.graph.edge_count()];
    let mut taken: BTreeSet<Edge> = BTreeSet::new();
    if t % 3 == 2 && delta % 2 == 1 {
        let joins: BTreeSet<Edge> = reg.joins.iter().map(|js| js[0]).collect();
        if let Some(matching) = matching_avoiding(&reg, &joins) {
            for &e in &matching {
                colour[e] = 3 * q as Colour + 1;
            }
            taken.extend(joins);
            taken.extend(matching);
        }
    }
    let rest: Vec<Edge> = reg.graph.edges().filter(|e| !taken.contains(e)).collect();
    let sub = reg.graph.edge_subgraph(&rest);
    let (orientation, factors) = factorize(&sub)?;
    let grouped = factors.len().min(half * t);
    for (j, factor) in factors[..grouped].iter().enumerate() {
        for &e in factor {
            colour[rest[e]] = (j % t) as Colour + 1;
        }
    }
    for (j, factor) in factors[grouped..].iter().enumerate() {
        let base = 3 * j as Colour;
        let mut out = vec![usize::MAX; sub.vertex_count()];
        for &e in factor {
            out[orientation.arcs[e].0] = e;
        }
        let mut seen = vec![false; sub.edge_count()];
        for &start in factor {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                cycle.push(e);
                e = out[orientation.arcs[e].1];
            }
            let len = cycle.len();
            for (p, &e) in cycle.iter().enumerate() {
                let c = if len % 2 == 1 && p == len - 1 { 3 } else { 1 + (p % 2) as Colour };
                colour[rest[e]] = base + c;
            }
        }
    }
    colour.truncate(g.edge_count());
    self_check(g, k, colour)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::colour_count;

    fn triple(m: usize) -> MultiGraph {
        let mut edges = Vec::new();
        for _ in 0..m {
            edges.extend([(0, 1), (1, 2), (0, 2)]);
        }
        MultiGraph::from_edges(3, &edges).unwrap()
    }

    fn cycle(n: usize) -> MultiGraph {
        MultiGraph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn check_factors(g: &MultiGraph, factors: &[Vec<Edge>]) {
        let mut all = factors.concat();
        all.sort_unstable();
        assert_eq!(all, g.edges().collect::<Vec<_>>());
        for f in factors {
            let mut deg = vec![0; g.vertex_count()];
            for &e in f {
                let (a, b) = g.endpoints(e);
                deg[a] += 1;
                deg[b] += 1;
            }
            assert!(deg.iter().all(|&d| d == 2));
        }
    }

    #[test]
    fn two_factor_examples() {
        let f = two_factor_decomposition(&cycle(6)).unwrap();
        assert_eq!(f, vec![(0..6).collect::<Vec<_>>()]);
        let t2 = triple(2);
        let f = two_factor_decomposition(&t2).unwrap();
        assert_eq!(f.len(), 2);
        check_factors(&t2, &f);
        let edges: Vec<_> = (0..5).flat_map(|u| ((u + 1)..5).map(move |v| (u, v))).collect();
        let k5 = MultiGraph::from_edges(5, &edges).unwrap();
        check_factors(&k5, &two_factor_decomposition(&k5).unwrap());
        assert_eq!(
            two_factor_decomposition(&MultiGraph::from_edges(2, &[(0, 1)]).unwrap()),
            Err(ColouringError::NotEvenRegular)
        );
    }

    #[test]
    fn even_k_examples() {
        let c = colour_edges_even_k(&cycle(5), 2, None).unwrap();
        assert_eq!(colour_count(&c), 1);
        let t4 = triple(4);
        let c = colour_edges_even_k(&t4, 2, None).unwrap();
        assert_eq!(colour_count(&c), 4);
        assert!(validate_frugal_edge(&t4, 2, &c).is_ok());
        assert_eq!(colour_edges_even_k(&t4, 3, None), Err(ColouringError::OddK(3)));
    }

    #[test]
    fn even_k_with_lists() {
        let t4 = triple(4);
        let lists = ListAssignment::new(
            ListTarget::Edges,
            (0..12).map(|e| (e as Colour..e as Colour + 4).collect()).collect(),
        );
        let c = colour_edges_even_k(&t4, 2, Some(&lists)).unwrap();
        assert!(crate::validate::validate_lists(&c, &lists).is_ok());
        let short = ListAssignment::uniform(ListTarget::Edges, 12, 1, 3);
        assert!(matches!(colour_edges_even_k(&t4, 2, Some(&short)), Err(ColouringError::ListTooSmall { .. })));
    }

    #[test]
    fn odd_k_examples() {
        let t4 = triple(4);
        assert_eq!(colour_count(&colour_edges_odd_k(&t4, 3).unwrap()), 3);
        assert_eq!(colour_count(&colour_edges_odd_k(&cycle(7), 3).unwrap()), 1);
        for m in 1..=6 {
            let g = triple(m);
            let c = colour_edges_odd_k(&g, 1).unwrap();
            assert!(colour_count(&c) <= 3 * g.max_degree() / 2, "m={m}");
        }
        assert_eq!(colour_edges_odd_k(&t4, 2), Err(ColouringError::EvenK(2)));
    }
}
