//! Deterministic graph families and seeded random corpora.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::embedding::RotationSystem;
use crate::graph::{MultiGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("{family} needs {constraint}")]
    BadParameter { family: String, constraint: String },
    #[error("unknown family {0}")]
    UnknownFamily(String),
}

fn bad(family: &str, constraint: &str) -> GeneratorError {
    GeneratorError::BadParameter { family: family.into(), constraint: constraint.into() }
}

#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub graph: MultiGraph,
    pub rotation: Option<RotationSystem>,
    pub family: String,
    pub params: Value,
    /// Outer cycle of an outerplanar instance.
    pub outer_cycle: Option<Vec<Vertex>>,
}

impl GeneratedInstance {
    fn new(graph: MultiGraph, family: &str, params: Value) -> Self {
        GeneratedInstance { graph, rotation: None, family: family.into(), params, outer_cycle: None }
    }

    fn drawn(mut self, positions: &[(f64, f64)]) -> Self {
        self.rotation = Some(RotationSystem::from_positions(&self.graph, positions));
        self
    }
}

fn named(n: usize, edges: &[(Vertex, Vertex)], names: impl Fn(Vertex) -> String) -> MultiGraph {
    let mut g = MultiGraph::from_edges(n, edges).expect("generator edges are valid");
    for v in 0..n {
        g.set_vertex_name(v, names(v));
    }
    g
}

/// Plane graph with hubs `x`, `y`, `z`, the edge `xy`, `m−1` vertices joined to
/// `x` and `y`, `m` joined to `x` and `z`, and `m` joined to `y` and `z`.
/// Every hub has degree `2m`.
///
/// Vertex order: `x, y, z`, then `a1..a(m−1)`, `b1..bm`, `c1..cm`. The drawing
/// puts the `a`s left of `xy`, the `b`s above and the `c`s below the line to `z`.
pub fn planar_tight(m: usize) -> Result<GeneratedInstance, GeneratorError> {
    if m < 2 {
        return Err(bad("planar-tight", "m >= 2"));
    }
    let (x, y, z) = (0, 1, 2);
    let a = |i: usize| 2 + i;
    let b = |j: usize| 2 + (m - 1) + j;
    let c = |j: usize| 2 + (m - 1) + m + j;
    let n = 3 * m + 2;
    let mut edges = vec![(x, y)];
    let mut pos = vec![(0.0, 1.0), (0.0, -1.0), (3.0, 0.0)];
    for i in 1..m {
        edges.extend([(x, a(i)), (y, a(i))]);
        pos.push((-(i as f64), 0.0));
    }
    for j in 1..=m {
        edges.extend([(x, b(j)), (z, b(j))]);
        pos.push((1.5, 1.0 + 0.5 * j as f64));
    }
    for j in 1..=m {
        edges.extend([(y, c(j)), (z, c(j))]);
        pos.push((1.5, -1.0 - 0.5 * j as f64));
    }
    let g = named(n, &edges, |v| match v {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        v if v < b(1) => format!("a{}", v - 2),
        v if v < c(1) => format!("b{}", v - b(0)),
        v => format!("c{}", v - c(0)),
    });
    Ok(GeneratedInstance::new(g, "planar-tight", json!({ "m": m })).drawn(&pos))
}

/// Three vertices with `m` parallel edges between each pair.
pub fn fat_triangle(m: usize) -> Result<GeneratedInstance, GeneratorError> {
    if m < 1 {
        return Err(bad("fat-triangle", "m >= 1"));
    }
    let mut edges = Vec::new();
    for _ in 0..m {
        edges.extend([(0, 1), (1, 2), (0, 2)]);
    }
    let g = named(3, &edges, |v| ["a", "b", "c"][v].into());
    Ok(GeneratedInstance::new(g, "fat-triangle", json!({ "m": m })))
}

fn circle(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect()
}

/// Rotation of a convex polyhedron: neighbours sorted by angle in the tangent
/// plane, seen from outside.
fn polyhedron_rotation(g: &MultiGraph, p: &[[f64; 3]]) -> RotationSystem {
    let sub = |a: [f64; 3], b: [f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let cross = |a: [f64; 3], b: [f64; 3]| {
        [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    };
    let order = g
        .vertices()
        .map(|v| {
            let normal = p[v];
            let first = g.opposite(g.incident(v)[0], v);
            let u = sub(p[first], p[v]);
            let w = cross(normal, u);
            let mut inc = g.incident(v).to_vec();
            inc.sort_by(|&e, &f| {
                let angle = |e| {
                    let d = sub(p[g.opposite(e, v)], p[v]);
                    dot(d, w).atan2(dot(d, u))
                };
                angle(e).total_cmp(&angle(f)).then(e.cmp(&f))
            });
            inc
        })
        .collect();
    RotationSystem::new(g, order).expect("sorted incident edges")
}

fn icosahedron() -> GeneratedInstance {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut p = Vec::new();
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            p.push([0.0, s1, s2 * phi]);
            p.push([s1, s2 * phi, 0.0]);
            p.push([s2 * phi, 0.0, s1]);
        }
    }
    let mut edges = Vec::new();
    for u in 0..12 {
        for v in (u + 1)..12 {
            let d: f64 = (0..3).map(|i| (p[u][i] - p[v][i]).powi(2)).sum();
            if (d - 4.0).abs() < 1e-9 {
                edges.push((u, v));
            }
        }
    }
    let g = named(12, &edges, |v| v.to_string());
    let rot = polyhedron_rotation(&g, &p);
    let mut inst = GeneratedInstance::new(g, "icosahedron", json!({}));
    inst.rotation = Some(rot);
    inst
}

/// Named graphs: `cycle`, `path`, `star` (with `n` leaves), `wheel` (with `n`
/// rim vertices), `k4`, `petersen`, `icosahedron`. Plane drawings are attached
/// for all but the Petersen graph.
pub fn named_graph(name: &str, n: Option<usize>) -> Result<GeneratedInstance, GeneratorError> {
    let need = |min: usize| n.filter(|&n| n >= min).ok_or_else(|| bad(name, &format!("n >= {min}")));
    let plain = |v: Vertex| v.to_string();
    let inst = match name {
        "cycle" => {
            let n = need(3)?;
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            GeneratedInstance::new(named(n, &edges, plain), name, json!({ "n": n })).drawn(&circle(n))
        }
        "path" => {
            let n = need(1)?;
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            let pos: Vec<_> = (0..n).map(|i| (i as f64, 0.0)).collect();
            GeneratedInstance::new(named(n, &edges, plain), name, json!({ "n": n })).drawn(&pos)
        }
        "star" => {
            let n = need(1)?;
            let edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
            let mut pos = vec![(0.0, 0.0)];
            pos.extend(circle(n));
            GeneratedInstance::new(named(n + 1, &edges, plain), name, json!({ "n": n })).drawn(&pos)
        }
        "wheel" => {
            let n = need(3)?;
            let mut edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
            edges.extend((1..=n).map(|i| (i, i % n + 1)));
            let mut pos = vec![(0.0, 0.0)];
            pos.extend(circle(n));
            GeneratedInstance::new(named(n + 1, &edges, plain), name, json!({ "n": n })).drawn(&pos)
        }
        "k4" => {
            let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let pos = [(0.0, 0.0), (4.0, 0.0), (2.0, 3.0), (2.0, 1.0)];
            GeneratedInstance::new(named(4, &edges, plain), name, json!({})).drawn(&pos)
        }
        "petersen" => {
            let mut edges: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
            edges.extend((0..5).map(|i| (i, i + 5)));
            edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
            GeneratedInstance::new(named(10, &edges, plain), name, json!({}))
        }
        "icosahedron" => icosahedron(),
        other => return Err(GeneratorError::UnknownFamily(other.into())),
    };
    Ok(inst)
}

/// Triangulated polygon grown by seeded ear insertion: each new vertex is
/// glued onto a random edge of the current outer cycle.
pub fn random_maximal_outerplanar(n: usize, seed: u64) -> Result<GeneratedInstance, GeneratorError> {
    if n < 3 {
        return Err(bad("maximal-outerplanar", "n >= 3"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![(0, 1), (1, 2), (2, 0)];
    let mut outer = vec![0, 1, 2];
    for v in 3..n {
        let i = rng.random_range(0..outer.len());
        let (a, b) = (outer[i], outer[(i + 1) % outer.len()]);
        edges.extend([(a, v), (b, v)]);
        outer.insert(i + 1, v);
    }
    let g = named(n, &edges, |v| v.to_string());
    let ring = circle(n);
    let mut pos = vec![(0.0, 0.0); n];
    for (slot, &v) in outer.iter().enumerate() {
        pos[v] = ring[slot];
    }
    let mut inst = GeneratedInstance::new(g, "maximal-outerplanar", json!({ "n": n, "seed": seed })).drawn(&pos);
    inst.outer_cycle = Some(outer);
    Ok(inst)
}

/// Seeded loopless multigraph with maximum degree at most `max_degree` and
/// edge multiplicity at most `max_multiplicity`.
pub fn random_multigraph(
    n: usize,
    max_degree: usize,
    max_multiplicity: usize,
    seed: u64,
) -> Result<GeneratedInstance, GeneratorError> {
    let params = json!({ "n": n, "max_degree": max_degree, "max_multiplicity": max_multiplicity, "seed": seed });
    let g = random_pairs(n, 0..n, 0..n, max_degree, max_multiplicity, seed);
    Ok(GeneratedInstance::new(g, "random-multigraph", params))
}

/// Seeded bipartite multigraph between `0..left` and `left..left+right`.
pub fn random_bipartite_multigraph(
    left: usize,
    right: usize,
    max_degree: usize,
    max_multiplicity: usize,
    seed: u64,
) -> Result<GeneratedInstance, GeneratorError> {
    let params = json!({
        "left": left, "right": right, "max_degree": max_degree,
        "max_multiplicity": max_multiplicity, "seed": seed
    });
    let n = left + right;
    let g = random_pairs(n, 0..left, left..n, max_degree, max_multiplicity, seed);
    Ok(GeneratedInstance::new(g, "random-bipartite", params))
}

fn random_pairs(
    n: usize,
    from: std::ops::Range<usize>,
    to: std::ops::Range<usize>,
    max_degree: usize,
    max_multiplicity: usize,
    seed: u64,
) -> MultiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = MultiGraph::new(n);
    if from.is_empty() || to.is_empty() || max_multiplicity == 0 {
        return g;
    }
    let mut mult = std::collections::HashMap::new();
    for _ in 0..(n * max_degree * 2) {
        let u = rng.random_range(from.clone());
        let v = rng.random_range(to.clone());
        let key = (u.min(v), u.max(v));
        let count = mult.entry(key).or_insert(0);
        if u == v || *count >= max_multiplicity || g.degree(u) >= max_degree || g.degree(v) >= max_degree {
            continue;
        }
        *count += 1;
        g.add_edge(u, v).expect("distinct endpoints");
    }
    g
}

/// Random list of `size` colours drawn from `1..=palette` for each of `items`.
pub fn random_lists(items: usize, size: usize, palette: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let colours: Vec<i64> = (1..=palette as i64).collect();
    (0..items)
        .map(|_| {
            let mut l: Vec<i64> = colours.choose_multiple(&mut rng, size).copied().collect();
            l.sort_unstable();
            l
        })
        .collect()
}
