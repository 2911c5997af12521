use std::collections::{BTreeSet, VecDeque};

use crate::colouring::{Colour, EdgeColouring, ListAssignment, ListTarget};
use crate::error::ColouringError;
use crate::graph::{bipartition, Edge, MultiGraph};

/// Proper edge colouring of a bipartite multigraph with `Δ` colours
/// (`0..Δ`), by alternating-path swaps.
pub fn konig_edge_colouring(h: &MultiGraph) -> Result<Vec<usize>, ColouringError> {
    bipartition(h).ok_or(ColouringError::NotBipartite)?;
    let delta = h.max_degree();
    let mut at: Vec<Vec<Option<Edge>>> = vec![vec![None; delta]; h.vertex_count()];
    let mut colour = vec![usize::MAX; h.edge_count()];
    let free = |at: &[Vec<Option<Edge>>], v: usize| at[v].iter().position(Option::is_none).unwrap();
    for e in h.edges() {
        let (u, v) = h.endpoints(e);
        let a = free(&at, u);
        if at[v][a].is_some() {
            // swap a and b along the a/b path starting at v; it cannot reach u
            let b = free(&at, v);
            let mut path = Vec::new();
            let (mut cur, mut c) = (v, a);
            while let Some(f) = at[cur][c] {
                path.push(f);
                cur = h.opposite(f, cur);
                c = if c == a { b } else { a };
            }
            for &f in &path {
                let (x, y) = h.endpoints(f);
                at[x][colour[f]] = None;
                at[y][colour[f]] = None;
            }
            for &f in &path {
                let (x, y) = h.endpoints(f);
                colour[f] = if colour[f] == a { b } else { a };
                at[x][colour[f]] = Some(f);
                at[y][colour[f]] = Some(f);
            }
        }
        colour[e] = a;
        at[u][a] = Some(e);
        at[v][a] = Some(e);
    }
    Ok(colour)
}

/// Stable matching among `candidates`: left vertices prefer a larger seed
/// colour, right vertices a smaller one. Every unmatched candidate shares a
/// vertex with a matched edge it loses to.
fn kernel(h: &MultiGraph, left: &[bool], seed: &[usize], candidates: &[Edge]) -> Vec<Edge> {
    let n = h.vertex_count();
    let tail = |e: Edge| {
        let (a, b) = h.endpoints(e);
        if left[a] {
            (a, b)
        } else {
            (b, a)
        }
    };
    let mut proposals: Vec<Vec<Edge>> = vec![Vec::new(); n];
    for &e in candidates {
        proposals[tail(e).0].push(e);
    }
    for p in &mut proposals {
        // popped from the back: smallest seed last
        p.sort_by_key(|&e| seed[e]);
    }
    let mut held: Vec<Option<Edge>> = vec![None; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&x| !proposals[x].is_empty()).collect();
    while let Some(x) = queue.pop_front() {
        let Some(e) = proposals[x].pop() else { continue };
        let y = tail(e).1;
        match held[y] {
            None => held[y] = Some(e),
            Some(f) if seed[e] < seed[f] => {
                held[y] = Some(e);
                queue.push_back(tail(f).0);
            }
            Some(_) => queue.push_back(x),
        }
    }
    held.into_iter().flatten().collect()
}

/// Colours rounds in ascending colour order: each round's kernel takes the
/// colour and every other candidate loses it from its list.
pub(crate) fn galvin_with_seed(
    h: &MultiGraph,
    left: &[bool],
    seed: &[usize],
    lists: &[BTreeSet<Colour>],
) -> Result<EdgeColouring, ColouringError> {
    let mut lists = lists.to_vec();
    let palette: BTreeSet<Colour> = lists.iter().flatten().copied().collect();
    let mut colour: Vec<Option<Colour>> = vec![None; h.edge_count()];
    for gamma in palette {
        let candidates: Vec<Edge> =
            h.edges().filter(|&e| colour[e].is_none() && lists[e].contains(&gamma)).collect();
        if candidates.is_empty() {
            continue;
        }
        let chosen = kernel(h, left, seed, &candidates);
        for &e in &chosen {
            colour[e] = Some(gamma);
        }
        for e in candidates {
            if colour[e].is_none() {
                lists[e].remove(&gamma);
            }
        }
    }
    colour
        .iter()
        .enumerate()
        .map(|(e, c)| c.ok_or(ColouringError::GalvinFailed(e)))
        .collect()
}

/// Proper list edge colouring of a bipartite multigraph from lists of size at
/// least `Δ`.
pub fn galvin_list_edge_colour(h: &MultiGraph, lists: &ListAssignment) -> Result<EdgeColouring, ColouringError> {
    let left = bipartition(h).ok_or(ColouringError::NotBipartite)?;
    if lists.target != ListTarget::Edges || lists.len() != h.edge_count() {
        return Err(ColouringError::ListShape);
    }
    let required = h.max_degree();
    if let Some(item) = (0..lists.len()).find(|&e| lists.list(e).len() < required) {
        return Err(ColouringError::ListTooSmall { item, size: lists.list(item).len(), required });
    }
    let seed = konig_edge_colouring(h)?;
    galvin_with_seed(h, &left, &seed, &lists.lists)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::validate_lists;

    fn proper(h: &MultiGraph, c: &[Colour]) -> bool {
        h.vertices().all(|v| {
            let cs: BTreeSet<Colour> = h.incident(v).iter().map(|&e| c[e]).collect();
            cs.len() == h.degree(v)
        })
    }

    fn k33() -> MultiGraph {
        let edges: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        MultiGraph::from_edges(6, &edges).unwrap()
    }

    #[test]
    fn konig_is_proper_with_delta_colours() {
        let g = MultiGraph::from_edges(4, &[(0, 2), (0, 2), (0, 3), (1, 2), (1, 3), (1, 3)]).unwrap();
        let c = konig_edge_colouring(&g).unwrap();
        assert!(c.iter().all(|&x| x < 3));
        assert!(proper(&g, &c.iter().map(|&x| x as Colour).collect::<Vec<_>>()));
    }

    #[test]
    fn galvin_examples() {
        let k22 = MultiGraph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let lists = ListAssignment::uniform(ListTarget::Edges, 4, 1, 2);
        let c = galvin_list_edge_colour(&k22, &lists).unwrap();
        assert!(proper(&k22, &c) && validate_lists(&c, &lists).is_ok());

        let single = MultiGraph::from_edges(2, &[(0, 1)]).unwrap();
        let lists = ListAssignment::new(ListTarget::Edges, vec![BTreeSet::from([9])]);
        assert_eq!(galvin_list_edge_colour(&single, &lists).unwrap(), vec![9]);

        let g = k33();
        let lists = ListAssignment::new(
            ListTarget::Edges,
            (0..9).map(|e| BTreeSet::from([e as Colour, e as Colour + 1, e as Colour + 4])).collect(),
        );
        let c = galvin_list_edge_colour(&g, &lists).unwrap();
        assert!(proper(&g, &c) && validate_lists(&c, &lists).is_ok());
    }

    #[test]
    fn galvin_errors() {
        let g = k33();
        let short = ListAssignment::uniform(ListTarget::Edges, 9, 1, 2);
        assert!(matches!(galvin_list_edge_colour(&g, &short), Err(ColouringError::ListTooSmall { .. })));
        let tri = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let lists = ListAssignment::uniform(ListTarget::Edges, 3, 1, 3);
        assert_eq!(galvin_list_edge_colour(&tri, &lists), Err(ColouringError::NotBipartite));
    }
}
