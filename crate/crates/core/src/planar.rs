//! List k-frugal colouring of planar graphs by light-vertex contraction,
//! the labelling-to-colouring conversion, and closed-form bound calculators.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::colouring::{Colour, Labelling, ListAssignment, ListTarget, VertexColouring};
use crate::error::ColouringError;
use crate::graph::{Girth, MultiGraph, Vertex};

/// Which of the four light configurations a vertex matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LightCase {
    /// At most two neighbours.
    AtMostTwo,
    /// Three neighbours, the lightest of degree at most 11.
    Three,
    /// Four neighbours with degrees at most 7 and 11 for the two lightest.
    Four,
    /// Five neighbours with degrees at most 6, 7 and 11 for the three lightest.
    Five,
}

impl LightCase {
    fn all() -> [LightCase; 4] {
        [LightCase::AtMostTwo, LightCase::Three, LightCase::Four, LightCase::Five]
    }

    /// Whether neighbour degrees `d` (ascending) satisfy this case.
    pub fn holds(self, d: &[usize]) -> bool {
        match self {
            LightCase::AtMostTwo => d.len() <= 2,
            LightCase::Three => d.len() == 3 && d[0] <= 11,
            LightCase::Four => d.len() == 4 && d[0] <= 7 && d[1] <= 11,
            LightCase::Five => d.len() == 5 && d[0] <= 6 && d[1] <= 7 && d[2] <= 11,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LightVertexWitness {
    pub vertex: Vertex,
    /// Neighbours sorted by degree, ties by index.
    pub neighbours: Vec<Vertex>,
    pub degrees: Vec<usize>,
    pub case: LightCase,
}

fn light_vertex_in(adj: &[BTreeSet<Vertex>], alive: &[bool]) -> Option<LightVertexWitness> {
    let sorted = |v: Vertex| {
        let mut ns: Vec<Vertex> = adj[v].iter().copied().collect();
        ns.sort_by_key(|&u| (adj[u].len(), u));
        ns
    };
    for case in LightCase::all() {
        for v in (0..adj.len()).filter(|&v| alive[v]) {
            if adj[v].len() > 5 {
                continue;
            }
            let neighbours = sorted(v);
            let degrees: Vec<usize> = neighbours.iter().map(|&u| adj[u].len()).collect();
            if case.holds(&degrees) {
                return Some(LightVertexWitness { vertex: v, neighbours, degrees, case });
            }
        }
    }
    None
}

/// A vertex matching the lowest-numbered light configuration, lowest index first.
/// Every simple planar graph has one.
pub fn find_light_vertex(g: &MultiGraph) -> Result<LightVertexWitness, ColouringError> {
    if !g.is_simple() {
        return Err(ColouringError::NotSimple);
    }
    light_vertex_in(&g.adjacency_sets(), &vec![true; g.vertex_count()])
        .ok_or(ColouringError::NoLightVertex)
}

/// Colours `γ` that `v` may not take: colours on its neighbours, and colours
/// already seen `k` times around some neighbour (not counting `v`).
fn forbidden_in(
    adj: &[BTreeSet<Vertex>],
    colour: &[Option<Colour>],
    v: Vertex,
    k: usize,
) -> BTreeSet<Colour> {
    let mut forbidden = BTreeSet::new();
    for &u in &adj[v] {
        if let Some(c) = colour[u] {
            forbidden.insert(c);
        }
        let mut seen: std::collections::BTreeMap<Colour, usize> = Default::default();
        for &w in adj[u].iter().filter(|&&w| w != v) {
            if let Some(c) = colour[w] {
                *seen.entry(c).or_default() += 1;
            }
        }
        forbidden.extend(seen.into_iter().filter(|&(_, n)| n >= k).map(|(c, _)| c));
    }
    forbidden
}

/// The set of colours forbidden at `v` by the current partial colouring.
pub fn forbidden_colours(g: &MultiGraph, partial: &[Option<Colour>], v: Vertex, k: usize) -> BTreeSet<Colour> {
    forbidden_in(&g.adjacency_sets(), partial, v, k)
}

/// Smallest colour in `list` not forbidden at `v`.
pub fn extend_colour_at_vertex(
    g: &MultiGraph,
    partial: &[Option<Colour>],
    v: Vertex,
    k: usize,
    list: &BTreeSet<Colour>,
) -> Result<Colour, ColouringError> {
    let forbidden = forbidden_colours(g, partial, v, k);
    list.iter().copied().find(|c| !forbidden.contains(c)).ok_or(ColouringError::ExtensionFailed(v))
}

/// List size that guarantees success: `⌊(2C+19)/k⌋ + 6` with `C = max(Δ, 12)`.
pub fn planar_list_size(max_degree: usize, k: usize) -> usize {
    (2 * max_degree.max(12) + 19) / k + 6
}

/// How to treat lists shorter than the guaranteed size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ListPolicy {
    /// Reject with `ListTooSmall`.
    #[default]
    Require,
    /// Run anyway; a shortfall surfaces as `ExtensionFailed`.
    Attempt,
}

struct Step {
    v: Vertex,
    nbrs: Vec<Vertex>,
    partner: Option<Vertex>,
    added: Vec<Vertex>,
}

/// k-frugal colouring of a simple planar graph from the given vertex lists.
pub fn colour_planar_frugal(
    g: &MultiGraph,
    k: usize,
    lists: &ListAssignment,
) -> Result<VertexColouring, ColouringError> {
    colour_planar_frugal_with(g, k, lists, ListPolicy::Require)
}

/// As [`colour_planar_frugal`], with an explicit policy for short lists.
///
/// Repeatedly contracts a light vertex `v` into its lightest neighbour `v1`
/// (the merged vertex keeps `v1`'s id and list), colours the last vertex, then
/// undoes the contractions in reverse, colouring each `v` greedily.
pub fn colour_planar_frugal_with(
    g: &MultiGraph,
    k: usize,
    lists: &ListAssignment,
    policy: ListPolicy,
) -> Result<VertexColouring, ColouringError> {
    if k < 1 {
        return Err(ColouringError::BadFrugality { k, min: 1 });
    }
    if !g.is_simple() {
        return Err(ColouringError::NotSimple);
    }
    let n = g.vertex_count();
    if lists.target != ListTarget::Vertices || lists.len() != n {
        return Err(ColouringError::ListShape);
    }
    let cap = g.max_degree().max(12);
    let required = planar_list_size(g.max_degree(), k);
    if policy == ListPolicy::Require {
        if let Some(item) = (0..n).find(|&v| lists.list(v).len() < required) {
            return Err(ColouringError::ListTooSmall { item, size: lists.list(item).len(), required });
        }
    }

    let mut adj = g.adjacency_sets();
    let mut alive = vec![true; n];
    let mut steps = Vec::new();
    for _ in 1..n {
        let w = light_vertex_in(&adj, &alive).ok_or(ColouringError::NoLightVertex)?;
        let v = w.vertex;
        let nbrs = w.neighbours.clone();
        for &u in &nbrs {
            adj[u].remove(&v);
        }
        adj[v].clear();
        alive[v] = false;
        let partner = nbrs.first().copied();
        let mut added = Vec::new();
        if let Some(v1) = partner {
            for &u in &nbrs[1..] {
                if adj[v1].insert(u) {
                    adj[u].insert(v1);
                    added.push(u);
                }
            }
            if adj[v1].len() > cap {
                return Err(ColouringError::ContractionDegree { found: adj[v1].len(), bound: cap });
            }
        }
        steps.push(Step { v, nbrs, partner, added });
    }

    let mut colour: Vec<Option<Colour>> = vec![None; n];
    if let Some(last) = (0..n).find(|&v| alive[v]) {
        let c = lists.list(last).first().copied().ok_or(ColouringError::ExtensionFailed(last))?;
        colour[last] = Some(c);
    }
    for step in steps.into_iter().rev() {
        if let Some(v1) = step.partner {
            for &u in &step.added {
                adj[v1].remove(&u);
                adj[u].remove(&v1);
            }
        }
        for &u in &step.nbrs {
            adj[u].insert(step.v);
        }
        adj[step.v] = step.nbrs.into_iter().collect();
        alive[step.v] = true;
        let forbidden = forbidden_in(&adj, &colour, step.v, k);
        let c = lists
            .list(step.v)
            .iter()
            .copied()
            .find(|c| !forbidden.contains(c))
            .ok_or(ColouringError::ExtensionFailed(step.v))?;
        colour[step.v] = Some(c);
    }
    Ok(colour.into_iter().map(|c| c.expect("every vertex coloured")).collect())
}

/// `c(v) = ⌈f(v)/k⌉`. Turns an L(k,1)-labelling into a k-frugal colouring;
/// labels `1..=t` map onto colours `1..=⌈t/k⌉`.
pub fn label_to_frugal(labels: &[Colour], k: usize) -> VertexColouring {
    labels.iter().map(|&l| (l - 1).div_euclid(k as Colour) + 1).collect()
}

/// Greedy L(k,1)-labelling in breadth-first order: each vertex takes the
/// smallest label at least 1 that is `k` away from labelled neighbours and
/// distinct from labelled vertices at distance two.
#[allow(non_snake_case)]
pub fn greedy_L_k1(g: &MultiGraph, k: usize) -> Labelling {
    let n = g.vertex_count();
    let adj: Vec<Vec<Vertex>> = g.vertices().map(|v| g.neighbours(v)).collect();
    let mut label: Vec<Option<Colour>> = vec![None; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    for v in order {
        let near: Vec<Colour> = adj[v].iter().filter_map(|&w| label[w]).collect();
        let far: BTreeSet<Colour> = adj[v]
            .iter()
            .flat_map(|&w| adj[w].iter())
            .filter(|&&x| x != v && !adj[v].contains(&x))
            .filter_map(|&x| label[x])
            .collect();
        let fits = |l: Colour| near.iter().all(|&m| l.abs_diff(m) >= k as u64) && !far.contains(&l);
        label[v] = (1..).find(|&l| fits(l));
    }
    label.into_iter().map(Option::unwrap).collect()
}

/// Upper-bound families for planar k-frugal colouring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundFamily {
    /// Conjectured tight bound, split by the parity of k.
    PlanarConjectured,
    /// List bound from light-vertex contraction.
    PlanarList,
    /// Bound through L(k,1)-labellings of planar graphs.
    PlanarLabelling,
    /// Large-degree planar graphs of girth at least 7.
    Girth7,
    Girth6,
    Girth5,
}

impl BoundFamily {
    pub const ALL: [BoundFamily; 6] = [
        BoundFamily::PlanarConjectured,
        BoundFamily::PlanarList,
        BoundFamily::PlanarLabelling,
        BoundFamily::Girth7,
        BoundFamily::Girth6,
        BoundFamily::Girth5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundFamily::PlanarConjectured => "planar-conjectured",
            BoundFamily::PlanarList => "planar-list",
            BoundFamily::PlanarLabelling => "planar-labelling",
            BoundFamily::Girth7 => "girth-7",
            BoundFamily::Girth6 => "girth-6",
            BoundFamily::Girth5 => "girth-5",
        }
    }
}

impl std::str::FromStr for BoundFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown bound family {s}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundSpec {
    pub family: BoundFamily,
    pub max_degree: usize,
    pub k: usize,
    pub girth: Option<String>,
    pub value: i64,
    /// Whether the family's hypotheses hold for these parameters.
    pub applicable: bool,
    pub reason: String,
    /// Unproven bound.
    pub conjectural: bool,
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

/// Evaluates a bound family. The value is computed even when the hypotheses
/// fail; `applicable` and `reason` say why.
pub fn bound_value(family: BoundFamily, max_degree: usize, k: usize, girth: Option<Girth>) -> BoundSpec {
    assert!(k >= 1, "frugality must be positive");
    let d = max_degree as i64;
    let ki = k as i64;
    let girth_ok = |need: usize| girth.is_some_and(|g| g.at_least(need));
    let girth_reason = |need: usize| match girth {
        None => "girth not given".to_string(),
        Some(g) if !g.at_least(need) => format!("girth {g} below {need}"),
        Some(_) => String::new(),
    };
    let (value, applicable, reason) = match family {
        BoundFamily::PlanarConjectured => {
            let value = if k.is_multiple_of(2) {
                floor_div(d - 1, ki) + 3
            } else {
                floor_div(3 * d - 2, 3 * ki - 1) + 3
            };
            let need = (2 * k).max(8);
            let ok = max_degree >= need;
            (value, ok, if ok { String::new() } else { format!("needs max degree at least {need}") })
        }
        BoundFamily::PlanarList => {
            let ok = max_degree >= 12;
            let reason = if ok { String::new() } else { "needs max degree at least 12".into() };
            (floor_div(2 * d + 19, ki) + 6, ok, reason)
        }
        BoundFamily::PlanarLabelling => (ceil_div(5 * d + 180, 3 * ki) + 18, true, String::new()),
        BoundFamily::Girth7 => {
            let need = 190 + 2 * k;
            let mut reason = girth_reason(7);
            if max_degree < need {
                if !reason.is_empty() {
                    reason.push_str("; ");
                }
                reason.push_str(&format!("needs max degree at least {need}"));
            }
            (ceil_div(d - 1, ki) + 2, girth_ok(7) && max_degree >= need, reason)
        }
        BoundFamily::Girth6 => (ceil_div(d + 4, ki) + 6, girth_ok(6), girth_reason(6)),
        BoundFamily::Girth5 => (ceil_div(d + 10, ki) + 6, girth_ok(5), girth_reason(5)),
    };
    BoundSpec {
        family,
        max_degree,
        k,
        girth: girth.map(|g| g.to_string()),
        value,
        applicable,
        reason,
        conjectural: family == BoundFamily::PlanarConjectured,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{exact_lambda, DEFAULT_NODE_BUDGET};
    use crate::validate::{validate_frugal_vertex, validate_lists, validate_lpq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn k4() -> MultiGraph {
        MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn star(leaves: usize) -> MultiGraph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        MultiGraph::from_edges(leaves + 1, &edges).unwrap()
    }

    fn cycle(n: usize) -> MultiGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        MultiGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn light_vertex_cases() {
        let w = find_light_vertex(&k4()).unwrap();
        assert_eq!((w.vertex, w.case, w.degrees[0]), (0, LightCase::Three, 3));
        let w = find_light_vertex(&star(9)).unwrap();
        assert_eq!((w.vertex, w.case, w.neighbours.clone()), (1, LightCase::AtMostTwo, vec![0]));
        let multi = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(find_light_vertex(&multi), Err(ColouringError::NotSimple));
    }

    #[test]
    fn dense_nonplanar_graph_has_no_light_vertex() {
        // K7: every vertex has six neighbours
        let edges: Vec<_> = (0..7).flat_map(|u| ((u + 1)..7).map(move |v| (u, v))).collect();
        let g = MultiGraph::from_edges(7, &edges).unwrap();
        assert_eq!(find_light_vertex(&g), Err(ColouringError::NoLightVertex));
    }

    #[test]
    fn planar_colouring_small_cases() {
        let g = k4();
        let lists = ListAssignment::uniform(ListTarget::Vertices, 4, 1, 9);
        assert!(matches!(
            colour_planar_frugal(&g, 2, &lists),
            Err(ColouringError::ListTooSmall { required: 27, .. })
        ));
        let c = colour_planar_frugal_with(&g, 2, &lists, ListPolicy::Attempt).unwrap();
        assert!(validate_frugal_vertex(&g, 2, &c).is_ok());
        assert!(validate_lists(&c, &lists).is_ok());

        let single = MultiGraph::new(1);
        let lists = ListAssignment::new(ListTarget::Vertices, vec![BTreeSet::from([7])]);
        assert_eq!(colour_planar_frugal_with(&single, 3, &lists, ListPolicy::Attempt).unwrap(), vec![7]);
    }

    #[test]
    fn planar_colouring_respects_odd_lists() {
        let g = cycle(7);
        let size = planar_list_size(2, 1);
        let lists = ListAssignment::new(
            ListTarget::Vertices,
            (0..7).map(|v| ((v * 10)..(v * 10 + size as Colour)).collect()).collect(),
        );
        let c = colour_planar_frugal(&g, 1, &lists).unwrap();
        assert!(validate_frugal_vertex(&g, 1, &c).is_ok());
        assert!(validate_lists(&c, &lists).is_ok());
    }

    #[test]
    fn extension_examples() {
        let p = MultiGraph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let got = extend_colour_at_vertex(&p, &[None, Some(1), Some(2)], 0, 2, &BTreeSet::from([1, 2, 3]));
        assert_eq!(got, Ok(3));
        // v=0 adjacent to u=1; u's other neighbours 2 and 3 are both coloured 5
        let g = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let partial = [None, Some(9), Some(5), Some(5)];
        assert_eq!(extend_colour_at_vertex(&g, &partial, 0, 2, &BTreeSet::from([5, 6])), Ok(6));
        assert_eq!(
            extend_colour_at_vertex(&g, &partial, 0, 2, &BTreeSet::from([5, 9])),
            Err(ColouringError::ExtensionFailed(0))
        );
    }

    #[test]
    fn forbidden_set_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 200 {
            let mut edges = Vec::new();
            for u in 0..8 {
                for v in (u + 1)..8 {
                    if rng.random_bool(0.35) {
                        edges.push((u, v));
                    }
                }
            }
            let g = MultiGraph::from_edges(8, &edges).unwrap();
            let k = rng.random_range(1..=3);
            let v = rng.random_range(0..8);
            let mut full: Vec<Colour> = (0..8).map(|_| rng.random_range(1..=5)).collect();
            // the rest must already be valid when v carries an unused colour
            full[v] = 99;
            if validate_frugal_vertex(&g, k, &full).is_err() {
                continue;
            }
            checked += 1;
            let partial: Vec<Option<Colour>> =
                (0..8).map(|u| if u == v { None } else { Some(full[u]) }).collect();
            let forbidden = forbidden_colours(&g, &partial, v, k);
            for gamma in 1..=6 {
                full[v] = gamma;
                let ok = validate_frugal_vertex(&g, k, &full).is_ok();
                assert_eq!(ok, !forbidden.contains(&gamma), "gamma {gamma} k {k} v {v}");
            }
        }
    }

    #[test]
    fn labelling_conversion() {
        let k2 = MultiGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(label_to_frugal(&[1, 4], 3), vec![1, 2]);
        assert_eq!(label_to_frugal(&[-1, 5], 1), vec![-1, 5]);
        assert_eq!(label_to_frugal(&[-1, 2, 3, 4], 2), vec![0, 1, 2, 2]);
        // labels up to 14 need at most 7 classes for k = 2
        assert_eq!(label_to_frugal(&(1..=14).collect::<Vec<_>>(), 2).into_iter().max(), Some(7));
        let f = exact_lambda(&cycle(5), 2, 1, 20, DEFAULT_NODE_BUDGET).unwrap().witness;
        let c = label_to_frugal(&f, 2);
        assert!(validate_frugal_vertex(&cycle(5), 2, &c).is_ok());
        assert_eq!(greedy_L_k1(&k2, 3), vec![1, 4]);
        assert_eq!(greedy_L_k1(&MultiGraph::new(3), 2), vec![1, 1, 1]);
        let f = greedy_L_k1(&cycle(5), 1);
        assert_eq!(validate_lpq(&cycle(5), 1, 1, &f), Ok(5));
    }

    #[test]
    fn bound_examples() {
        assert_eq!(bound_value(BoundFamily::PlanarConjectured, 10, 2, None).value, 7);
        let b = bound_value(BoundFamily::PlanarConjectured, 10, 3, None);
        assert_eq!((b.value, b.applicable, b.conjectural), (6, true, true));
        let b = bound_value(BoundFamily::Girth7, 200, 5, Some(Girth::Finite(7)));
        assert_eq!((b.value, b.applicable), (42, true));
        let b = bound_value(BoundFamily::Girth7, 200, 5, Some(Girth::Finite(6)));
        assert!(!b.applicable);
        assert_eq!(bound_value(BoundFamily::PlanarList, 12, 2, None).value, 27);
        assert_eq!(bound_value(BoundFamily::PlanarLabelling, 6, 3, None).value, 42);
        assert_eq!(bound_value(BoundFamily::Girth6, 6, 2, Some(Girth::Infinite)).value, 11);
        assert!(!bound_value(BoundFamily::Girth5, 6, 4, None).applicable);
        assert_eq!("girth-5".parse::<BoundFamily>(), Ok(BoundFamily::Girth5));
    }
}
