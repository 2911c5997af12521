use crate::error::ColouringError;
use crate::graph::{bipartition, Edge, MultiGraph, Vertex};

/// Perfect matchings partitioning the edges of a regular bipartite multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingDecomposition {
    pub matchings: Vec<Vec<Edge>>,
}

/// Maximum matching by augmenting paths over the edges marked `alive`.
/// Returns the matched edge of every left vertex.
fn maximum_matching(g: &MultiGraph, left: &[bool], alive: &[bool]) -> Vec<Option<Edge>> {
    let n = g.vertex_count();
    let mut mate: Vec<Option<Edge>> = vec![None; n];

    fn augment(
        g: &MultiGraph,
        alive: &[bool],
        mate: &mut [Option<Edge>],
        seen: &mut [bool],
        x: Vertex,
    ) -> bool {
        for &e in g.incident(x) {
            if !alive[e] {
                continue;
            }
            let y = g.opposite(e, x);
            if seen[y] {
                continue;
            }
            seen[y] = true;
            let free = match mate[y] {
                None => true,
                Some(f) => augment(g, alive, mate, seen, g.opposite(f, y)),
            };
            if free {
                mate[y] = Some(e);
                mate[x] = Some(e);
                return true;
            }
        }
        false
    }

    // greedy start, then augment from each left vertex still free
    for x in (0..n).filter(|&x| left[x]) {
        if let Some(&e) = g.incident(x).iter().find(|&&e| alive[e] && mate[g.opposite(e, x)].is_none()) {
            mate[x] = Some(e);
            mate[g.opposite(e, x)] = Some(e);
        }
    }
    for x in (0..n).filter(|&x| left[x]) {
        if mate[x].is_none() {
            let mut seen = vec![false; n];
            augment(g, alive, &mut mate, &mut seen, x);
        }
    }
    (0..n).map(|x| if left[x] { mate[x] } else { None }).collect()
}

/// Splits an r-regular bipartite multigraph into r perfect matchings, removing
/// one maximum matching at a time.
pub fn perfect_matching_decomposition(h: &MultiGraph) -> Result<MatchingDecomposition, ColouringError> {
    let left = bipartition(h).ok_or(ColouringError::NotBipartite)?;
    let r = h.vertices().next().map_or(0, |v| h.degree(v));
    if h.vertices().any(|v| h.degree(v) != r) {
        return Err(ColouringError::NotRegular);
    }
    let mut alive = vec![true; h.edge_count()];
    let mut matchings = Vec::with_capacity(r);
    for _ in 0..r {
        let mate = maximum_matching(h, &left, &alive);
        let mut m: Vec<Edge> = Vec::new();
        for x in h.vertices().filter(|&x| left[x]) {
            m.push(mate[x].ok_or(ColouringError::MatchingFailed)?);
        }
        m.sort_unstable();
        for &e in &m {
            alive[e] = false;
        }
        matchings.push(m);
    }
    Ok(MatchingDecomposition { matchings })
}
