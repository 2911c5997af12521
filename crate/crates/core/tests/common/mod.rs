//! Seeded corpora and naive reference checkers shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use frugal::colouring::{Colour, ListAssignment, ListTarget};
use frugal::generators::{random_lists, random_multigraph};
use frugal::graph::MultiGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

/// Random multigraphs with `n ≤ 40`, `Δ ≤ 20` and multiplicity at most 4.
pub fn multigraph_corpus(seed: u64, count: usize) -> Vec<MultiGraph> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let n = r.random_range(2..=40);
            random_multigraph(n, r.random_range(1..=20), r.random_range(1..=4), r.random()).unwrap().graph
        })
        .collect()
}

pub fn lists(target: ListTarget, items: usize, size: usize, palette: usize, seed: u64) -> ListAssignment {
    let raw = random_lists(items, size, palette.max(size), seed);
    ListAssignment::new(target, raw.into_iter().map(BTreeSet::from_iter).collect())
}

pub fn distinct(c: &[Colour]) -> usize {
    c.iter().collect::<BTreeSet<_>>().len()
}

/// All-pairs distances by repeated relaxation over an adjacency matrix.
pub fn distance_matrix(g: &MultiGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for e in g.edges() {
        let (u, v) = g.endpoints(e);
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][m] + d[m][j] < d[i][j] {
                    d[i][j] = d[i][m] + d[m][j];
                }
            }
        }
    }
    d
}

pub fn naive_proper(g: &MultiGraph, c: &[Colour]) -> bool {
    let d = distance_matrix(g);
    c.len() == g.vertex_count()
        && (0..c.len()).all(|u| (0..c.len()).all(|v| d[u][v] != 1 || c[u] != c[v]))
}

pub fn naive_frugal_vertex(g: &MultiGraph, k: usize, c: &[Colour]) -> bool {
    let d = distance_matrix(g);
    naive_proper(g, c)
        && (0..c.len()).all(|v| {
            let mut count: BTreeMap<Colour, usize> = BTreeMap::new();
            for w in 0..c.len() {
                if d[v][w] == 1 {
                    *count.entry(c[w]).or_default() += 1;
                }
            }
            count.values().all(|&x| x <= k)
        })
}

pub fn naive_frugal_edge(g: &MultiGraph, k: usize, ec: &[Colour]) -> bool {
    ec.len() == g.edge_count()
        && g.vertices().all(|v| {
            let mut count: BTreeMap<Colour, usize> = BTreeMap::new();
            for e in g.edges() {
                let (a, b) = g.endpoints(e);
                if a == v || b == v {
                    *count.entry(ec[e]).or_default() += 1;
                }
            }
            count.values().all(|&x| x <= k)
        })
}

pub fn naive_lpq(g: &MultiGraph, p: u64, q: u64, f: &[Colour]) -> bool {
    let d = distance_matrix(g);
    f.len() == g.vertex_count()
        && (0..f.len()).all(|u| {
            (0..f.len()).all(|v| match d[u][v] {
                1 => f[u].abs_diff(f[v]) >= p,
                2 => f[u].abs_diff(f[v]) >= q,
                _ => true,
            })
        })
}

pub fn naive_rainbow(g: &MultiGraph, sets: &[Vec<usize>], c: &[Colour]) -> bool {
    naive_proper(g, c)
        && sets.iter().all(|s| {
            let members: BTreeSet<usize> = s.iter().copied().collect();
            distinct(&members.iter().map(|&v| c[v]).collect::<Vec<_>>()) == members.len()
        })
}

pub fn naive_lists(c: &[Colour], lists: &ListAssignment) -> bool {
    c.len() == lists.len() && c.iter().zip(&lists.lists).all(|(x, l)| l.contains(x))
}

/// Brute-force k-frugal chromatic number over all colourings with at most
/// `max` colours. Exponential; only for tiny graphs.
pub fn brute_frugal_chromatic(g: &MultiGraph, k: usize, max: usize) -> Option<usize> {
    let n = g.vertex_count();
    (1..=max).find(|&c| {
        let mut col = vec![0 as Colour; n];
        loop {
            if naive_frugal_vertex(g, k, &col) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                col[i] += 1;
                if col[i] < c as Colour {
                    break;
                }
                col[i] = 0;
                i += 1;
            }
        }
    })
}

/// Colour edges in index order with the smallest list colour not already on
/// an adjacent edge.
pub fn naive_greedy_list_edge(g: &MultiGraph, lists: &ListAssignment) -> Option<Vec<Colour>> {
    let mut c: Vec<Colour> = Vec::new();
    for e in g.edges() {
        let (u, v) = g.endpoints(e);
        let used: BTreeSet<Colour> = (0..e)
            .filter(|&f| {
                let (a, b) = g.endpoints(f);
                a == u || a == v || b == u || b == v
            })
            .map(|f| c[f])
            .collect();
        c.push(*lists.list(e).iter().find(|x| !used.contains(x))?);
    }
    Some(c)
}

pub fn uniform(target: ListTarget, items: usize, size: usize) -> ListAssignment {
    ListAssignment::uniform(target, items, 1, size)
}
