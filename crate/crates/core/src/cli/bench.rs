use std::collections::BTreeSet;

use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::{CliError, Outcome};
use crate::colouring::{colour_count, Colour, ListAssignment, ListTarget};
use crate::edge::{colour_edges_even_k, colour_edges_odd_k, even_k_colours, galvin_list_edge_colour, odd_k_colours};
use crate::generators::{
    named_graph, planar_tight, random_bipartite_multigraph, random_lists, random_maximal_outerplanar, random_multigraph,
};
use crate::graph::MultiGraph;
use crate::outerplanar::{
    colour_outerplanar, colour_outerplanar_2connected, outerplanar_2connected_list_size, outerplanar_list_size,
};
use crate::planar::{colour_planar_frugal, planar_list_size};
use crate::validate::{validate_frugal_edge, validate_frugal_vertex, validate_lists, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Corpus {
    Edge,
    Outerplanar,
    Planar,
    Galvin,
    All,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub corpus: Corpus,
    #[arg(long)]
    pub seed: u64,
    /// Instances per corpus.
    #[arg(long, default_value_t = 50)]
    pub count: usize,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Serialize)]
struct InstanceResult {
    corpus: &'static str,
    index: usize,
    algorithm: &'static str,
    vertices: usize,
    edges: usize,
    max_degree: usize,
    k: usize,
    lists: bool,
    colours: Option<usize>,
    bound: usize,
    within_bound: bool,
    valid: bool,
    error: Option<String>,
}

fn instance_rng(seed: u64, corpus: usize, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ ((corpus as u64) << 56) ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn lists_of(target: ListTarget, items: usize, size: usize, seed: u64) -> ListAssignment {
    let raw = random_lists(items, size, 2 * size.max(1), seed);
    ListAssignment::new(target, raw.into_iter().map(BTreeSet::from_iter).collect())
}

struct Run<'a> {
    corpus: &'static str,
    index: usize,
    algorithm: &'static str,
    g: &'a MultiGraph,
    k: usize,
    lists: Option<&'a ListAssignment>,
    bound: usize,
    /// The bound is an equality rather than an upper bound.
    exact: bool,
}

impl Run<'_> {
    fn finish(self, result: Result<Vec<Colour>, String>, check: impl Fn(&[Colour]) -> Verdict) -> InstanceResult {
        let (colours, valid, error) = match result {
            Ok(c) => {
                let verdict = check(&c).and_then(|()| match self.lists {
                    Some(l) => validate_lists(&c, l),
                    None => Ok(()),
                });
                (Some(colour_count(&c)), verdict.is_ok(), verdict.err().map(|v| v.to_string()))
            }
            Err(e) => (None, false, Some(e)),
        };
        let within_bound = colours.is_some_and(|c| if self.exact { c == self.bound } else { c <= self.bound });
        InstanceResult {
            corpus: self.corpus,
            index: self.index,
            algorithm: self.algorithm,
            vertices: self.g.vertex_count(),
            edges: self.g.edge_count(),
            max_degree: self.g.max_degree(),
            k: self.k,
            lists: self.lists.is_some(),
            colours,
            bound: self.bound,
            within_bound,
            valid,
            error,
        }
    }
}

fn edge_instance(seed: u64, index: usize) -> Vec<InstanceResult> {
    let mut rng = instance_rng(seed, 0, index);
    let n = rng.random_range(2..=40);
    let g = random_multigraph(n, rng.random_range(1..=20), rng.random_range(1..=4), rng.random())
        .expect("valid parameters")
        .graph;
    let k = rng.random_range(1..=6);
    let delta = g.max_degree();
    let check = |c: &[Colour]| validate_frugal_edge(&g, k, c);
    if k % 2 == 1 {
        let run = Run { corpus: "edge", index, algorithm: "edge-odd", g: &g, k, lists: None, bound: odd_k_colours(delta, k), exact: false };
        return vec![run.finish(colour_edges_odd_k(&g, k).map_err(|e| e.to_string()), check)];
    }
    let bound = even_k_colours(delta, k);
    let lists = lists_of(ListTarget::Edges, g.edge_count(), bound, rng.random());
    let plain = Run { corpus: "edge", index, algorithm: "edge-even", g: &g, k, lists: None, bound, exact: true };
    let listed = Run { corpus: "edge", index, algorithm: "edge-even-lists", g: &g, k, lists: Some(&lists), bound: 2 * bound, exact: false };
    vec![
        plain.finish(colour_edges_even_k(&g, k, None).map_err(|e| e.to_string()), check),
        listed.finish(colour_edges_even_k(&g, k, Some(&lists)).map_err(|e| e.to_string()), check),
    ]
}

fn outerplanar_instance(seed: u64, index: usize) -> Vec<InstanceResult> {
    let mut rng = instance_rng(seed, 1, index);
    let g = random_maximal_outerplanar(rng.random_range(3..=60), rng.random()).expect("n >= 3").graph;
    let k = rng.random_range(2..=4);
    let delta = g.max_degree();
    let check = |c: &[Colour]| validate_frugal_vertex(&g, k, c);
    let mut out = Vec::new();
    if delta >= 3 {
        let size = outerplanar_list_size(delta, k);
        let lists = lists_of(ListTarget::Vertices, g.vertex_count(), size, rng.random());
        let run = Run { corpus: "outerplanar", index, algorithm: "outerplanar", g: &g, k, lists: Some(&lists), bound: 2 * size, exact: false };
        out.push(run.finish(colour_outerplanar(&g, k, &lists).map_err(|e| e.to_string()), check));
    }
    if delta >= 7 {
        let size = outerplanar_2connected_list_size(delta, k);
        let lists = lists_of(ListTarget::Vertices, g.vertex_count(), size, rng.random());
        let run = Run { corpus: "outerplanar", index, algorithm: "outerplanar2", g: &g, k, lists: Some(&lists), bound: 2 * size, exact: false };
        out.push(run.finish(colour_outerplanar_2connected(&g, k, &lists).map_err(|e| e.to_string()), check));
    }
    out
}

fn planar_instance(seed: u64, index: usize) -> Vec<InstanceResult> {
    let mut rng = instance_rng(seed, 2, index);
    let g = if index % 8 == 7 {
        named_graph("icosahedron", None).expect("named graph").graph
    } else {
        planar_tight(rng.random_range(2..=8)).expect("m >= 2").graph
    };
    let k = rng.random_range(1..=3);
    let size = planar_list_size(g.max_degree(), k);
    let lists = lists_of(ListTarget::Vertices, g.vertex_count(), size, rng.random());
    let check = |c: &[Colour]| validate_frugal_vertex(&g, k, c);
    let run = Run { corpus: "planar", index, algorithm: "planar", g: &g, k, lists: Some(&lists), bound: 2 * size, exact: false };
    vec![run.finish(colour_planar_frugal(&g, k, &lists).map_err(|e| e.to_string()), check)]
}

fn galvin_instance(seed: u64, index: usize) -> Vec<InstanceResult> {
    let mut rng = instance_rng(seed, 3, index);
    let (left, right) = (rng.random_range(1..=10), rng.random_range(1..=10));
    let g = random_bipartite_multigraph(left, right, rng.random_range(1..=8), rng.random_range(1..=3), rng.random())
        .expect("valid parameters")
        .graph;
    let delta = g.max_degree();
    let lists = lists_of(ListTarget::Edges, g.edge_count(), delta, rng.random());
    let check = |c: &[Colour]| validate_frugal_edge(&g, 1, c);
    let run = Run { corpus: "galvin", index, algorithm: "galvin", g: &g, k: 1, lists: Some(&lists), bound: 2 * delta, exact: false };
    vec![run.finish(galvin_list_edge_colour(&g, &lists).map_err(|e| e.to_string()), check)]
}

type Instance = fn(u64, usize) -> Vec<InstanceResult>;

pub(super) fn run(a: BenchArgs) -> Result<Outcome, CliError> {
    let corpora: Vec<Instance> = match a.corpus {
        Corpus::Edge => vec![edge_instance],
        Corpus::Outerplanar => vec![outerplanar_instance],
        Corpus::Planar => vec![planar_instance],
        Corpus::Galvin => vec![galvin_instance],
        Corpus::All => vec![edge_instance, outerplanar_instance, planar_instance, galvin_instance],
    };
    let tasks: Vec<(Instance, usize)> =
        corpora.iter().flat_map(|&f| (0..a.count).map(move |i| (f, i))).collect();
    let jobs = a.jobs.max(1);
    let mut slots: Vec<Vec<InstanceResult>> = vec![Vec::new(); tasks.len()];
    std::thread::scope(|scope| {
        for (w, chunk) in slots.chunks_mut(tasks.len().div_ceil(jobs).max(1)).enumerate() {
            let tasks = &tasks;
            let seed = a.seed;
            scope.spawn(move || {
                let start = w * tasks.len().div_ceil(jobs).max(1);
                for (j, slot) in chunk.iter_mut().enumerate() {
                    let (f, i) = tasks[start + j];
                    *slot = f(seed, i);
                }
            });
        }
    });
    let results: Vec<InstanceResult> = slots.into_iter().flatten().collect();
    let failed = results.iter().filter(|r| !r.valid).count();
    let off_bound = results.iter().filter(|r| !r.within_bound).count();
    let outcome = json!({
        "summary": { "runs": results.len(), "valid": results.len() - failed, "failed": failed, "off_bound": off_bound },
        "instances": results,
    });
    let parameters = json!({ "corpus": format!("{:?}", a.corpus).to_lowercase(), "count": a.count });
    let exit = if failed + off_bound > 0 { 1 } else { 0 };
    Ok(Outcome { exit, seed: Some(a.seed), ..Outcome::new(parameters, outcome) })
}
